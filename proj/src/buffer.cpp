#include "haldane/buffer.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "haldane/aklt.hpp"

namespace haldane {

namespace {

// Postselect a set of (spin-1 index, target) pairs, highest index first so
// earlier indices stay valid while the layout shrinks. Returns the joint
// probability, or nullopt if any branch is impossible.
std::optional<std::pair<double, StateVector>> postselect_block(
    const StateVector& state, std::vector<std::pair<int, Vector>> targets) {
    std::sort(targets.begin(), targets.end(),
              [](const auto& a, const auto& b) { return a.first > b.first; });
    StateVector current = state;
    double prob = 1.0;
    for (const auto& [idx, vec] : targets) {
        auto sel = postselect(current, current.layout.spin1_site(idx), vec);
        if (!sel) return std::nullopt;
        prob *= sel->probability;
        current = std::move(sel->post_state);
    }
    return std::make_pair(prob, std::move(current));
}

void check_block(const StateVector& state, int block_start, int blocklength) {
    if (blocklength < 1 || blocklength % 2 == 0)
        throw std::invalid_argument("blocklength must be odd and >= 1");
    if (block_start < 0 ||
        block_start + blocklength > state.layout.n_spin1)
        throw std::invalid_argument("block does not fit the unmeasured spin-1 range");
}

}  // namespace

std::optional<BufferedGateResult> buffered_rotation(const StateVector& state,
                                                    int block_start, int blocklength,
                                                    double theta) {
    check_block(state, block_start, blocklength);
    const CartesianTriple& c = cartesian_states();
    const int center = block_start + blocklength / 2;

    // Outer |z> padding first: its probability is the buffering statistic.
    std::vector<std::pair<int, Vector>> outer;
    for (int i = 0; i < blocklength; ++i)
        if (block_start + i != center)
            outer.emplace_back(block_start + i, c.z_state);

    BufferedGateResult res;
    res.blocklength = blocklength;
    for (int i = 0; i < blocklength; ++i) res.block_sites.push_back(block_start + i);

    StateVector buffered = state;
    res.buffer_probability = 1.0;
    if (!outer.empty()) {
        auto sel = postselect_block(state, std::move(outer));
        if (!sel) return std::nullopt;
        res.buffer_probability = sel->first;
        buffered = std::move(sel->second);
    }
    // The center has moved left by the removed sites before it.
    const int center_now = center - blocklength / 2;
    auto sel = postselect(buffered, buffered.layout.spin1_site(center_now),
                          theta_state(theta));
    if (!sel) return std::nullopt;
    res.success_probability = res.buffer_probability * sel->probability;
    res.post_state = std::move(sel->post_state);

    // (L-1) z byproducts and one rotated outcome; frame composition order
    // is irrelevant mod phase.
    PauliFrame frame;
    const MeasurementBasis basis = z_rotated_basis(theta);
    for (int i = 1; i < blocklength; ++i)
        frame = update_frame(frame, Outcome::Z, basis);
    frame = update_frame(frame, Outcome::Rotated, basis);
    res.byproduct = frame;
    return res;
}

std::optional<BufferedGateResult> buffered_rotation_concatenated(
    const StateVector& state, int block_start, double theta) {
    check_block(state, block_start, 9);
    const CartesianTriple& c = cartesian_states();

    BufferedGateResult res;
    res.blocklength = 9;
    for (int i = 0; i < 9; ++i) res.block_sites.push_back(block_start + i);

    // Stage 1 and 2: the outer L=3 blocks are buffered standard-basis
    // measurements postselected entirely onto |z>.
    StateVector current = state;
    double outer_prob = 1.0;
    std::vector<std::pair<int, Vector>> outer;
    for (int i : {0, 1, 2, 6, 7, 8}) outer.emplace_back(block_start + i, c.z_state);
    auto sel = postselect_block(current, std::move(outer));
    if (!sel) return std::nullopt;
    outer_prob = sel->first;
    current = std::move(sel->second);

    // Stage 3: the central L=3 block carries the rotation. Its sites are
    // now the three at the original block_start position.
    auto central = buffered_rotation(current, block_start, 3, theta);
    if (!central) return std::nullopt;

    res.buffer_probability = outer_prob * central->buffer_probability;
    res.success_probability = outer_prob * central->success_probability;
    res.post_state = std::move(central->post_state);
    PauliFrame frame;
    const MeasurementBasis basis = z_rotated_basis(theta);
    for (int i = 0; i < 8; ++i) frame = update_frame(frame, Outcome::Z, basis);
    frame = update_frame(frame, Outcome::Rotated, basis);
    res.byproduct = frame;
    return res;
}

double normalized_success(const StateVector& ground, int blocklength,
                          double theta, int block_start) {
    auto res = buffered_rotation(ground, block_start, blocklength, theta);
    if (!res) return 0.0;
    return res->success_probability * std::pow(3.0, blocklength);
}

double normalized_success(double beta, int n_spin1, int blocklength,
                          double theta, const GroundOptions& opts) {
    LocalOperatorSum h = build_hamiltonian(build_layout(n_spin1, true, true), beta);
    GroundResult g = ground_state(h, opts);
    if (!g.converged)
        throw std::runtime_error("normalized_success: ground-state solve did not converge");
    return normalized_success(g.state, blocklength, theta);
}

}  // namespace haldane
