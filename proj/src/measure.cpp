#include "haldane/measure.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace haldane {

namespace {

ChainLayout layout_without(const ChainLayout& layout, int site) {
    ChainLayout out = layout;
    out.site_dims.erase(out.site_dims.begin() + site);
    out.n_spin1 -= 1;
    return out;
}

// new_amp[l, r] = sum_m conj(target[m]) amp[l, m, r]
Vector project_out_site(const StateVector& state, int site,
                        const Vector& target) {
    const std::int64_t right = state.layout.stride(site);
    const std::int64_t dim = state.layout.total_dim();
    const std::int64_t left = dim / (3 * right);
    Vector out(dim / 3);
    const Vector& amps = state.amplitudes;
    for (std::int64_t l = 0; l < left; ++l) {
        const std::int64_t src = l * 3 * right;
        const std::int64_t dst = l * right;
        for (std::int64_t r = 0; r < right; ++r)
            out(dst + r) = std::conj(target(0)) * amps(src + r) +
                           std::conj(target(1)) * amps(src + right + r) +
                           std::conj(target(2)) * amps(src + 2 * right + r);
    }
    return out;
}

void require_spin1_site(const ChainLayout& layout, int site) {
    if (site < 0 || site >= layout.n_sites())
        throw std::out_of_range("measurement site out of range");
    if (layout.site_dims[site] != 3)
        throw std::invalid_argument("measurement site is not a spin-1 site");
}

}  // namespace

MeasurementBasis standard_basis() {
    const CartesianTriple& c = cartesian_states();
    MeasurementBasis b;
    b.kind = BasisKind::Standard;
    b.vectors = {c.x_state, c.y_state, c.z_state};
    return b;
}

MeasurementBasis z_rotated_basis(double theta) {
    const CartesianTriple& c = cartesian_states();
    MeasurementBasis b;
    b.kind = BasisKind::ZRotated;
    b.theta = theta;
    b.vectors = {theta_state(theta), theta_state(theta + M_PI), c.z_state};
    return b;
}

Matrix PauliFrame::matrix() const {
    const QubitOperatorSet& q = qubit_operators();
    Matrix m = Matrix::Identity(2, 2);
    if (x) m = q.sigma_x * m;
    if (z) m = m * q.sigma_z;
    return m;
}

std::array<Branch, 3> measure_site(const StateVector& state, int site,
                                   const MeasurementBasis& basis) {
    require_spin1_site(state.layout, site);
    std::array<Branch, 3> branches;
    const ChainLayout post_layout = layout_without(state.layout, site);
    for (int k = 0; k < 3; ++k) {
        Branch& br = branches[k];
        br.outcome = k;
        br.post_state.layout = post_layout;
        br.post_state.amplitudes = project_out_site(state, site, basis.vectors[k]);
        const double norm = br.post_state.amplitudes.norm();
        br.probability = norm * norm;
        if (norm > 1e-14) br.post_state.amplitudes /= norm;
        br.logical_byproduct =
            logical_map(static_cast<Outcome>(k),
                        basis.kind == BasisKind::ZRotated ? basis.theta : 0.0);
    }
    return branches;
}

std::optional<Postselection> postselect(const StateVector& state, int site,
                                        const Vector& target_vector,
                                        double zero_tol) {
    require_spin1_site(state.layout, site);
    Postselection sel;
    sel.post_state.layout = layout_without(state.layout, site);
    sel.post_state.amplitudes = project_out_site(state, site, target_vector);
    const double norm = sel.post_state.amplitudes.norm();
    sel.probability = norm * norm;
    if (norm <= zero_tol) return std::nullopt;
    sel.post_state.amplitudes /= norm;
    return sel;
}

PauliFrame update_frame(const PauliFrame& frame, Outcome outcome,
                        const MeasurementBasis& /*basis*/) {
    // Pauli parts: |theta> or |x> -> X; |theta+pi> or |y> -> XZ; |z> -> Z.
    switch (outcome) {
        case Outcome::Rotated: return frame.composed_with({true, false});
        case Outcome::RotatedPi: return frame.composed_with({true, true});
        case Outcome::Z: return frame.composed_with({false, true});
    }
    return frame;
}

std::uint64_t trajectory_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

Trajectory sample_trajectory(const StateVector& state,
                             const std::vector<int>& site_order,
                             const std::vector<MeasurementBasis>& bases,
                             std::uint64_t seed) {
    if (site_order.size() != bases.size())
        throw std::invalid_argument("sample_trajectory: sites/bases size mismatch");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    Trajectory traj;
    traj.final_state = state;
    // Track how each original site index maps into the shrinking layout.
    std::vector<bool> removed(state.layout.n_sites(), false);
    for (std::size_t step = 0; step < site_order.size(); ++step) {
        int original = site_order[step];
        if (original < 0 || original >= static_cast<int>(removed.size()) ||
            removed[original])
            throw std::invalid_argument("sample_trajectory: invalid or repeated site");
        int current = original;
        for (int s = 0; s < original; ++s)
            if (removed[s]) --current;
        auto branches = measure_site(traj.final_state, current, bases[step]);
        const double u = unit(rng);
        double acc = 0.0;
        int pick = 2;
        for (int k = 0; k < 3; ++k) {
            acc += branches[k].probability;
            if (u < acc) {
                pick = k;
                break;
            }
        }
        traj.outcomes.push_back(pick);
        traj.final_state = std::move(branches[pick].post_state);
        traj.final_frame = update_frame(traj.final_frame,
                                        static_cast<Outcome>(pick), bases[step]);
        removed[original] = true;
    }
    return traj;
}

}  // namespace haldane
