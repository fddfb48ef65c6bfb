#include "haldane/fidelity.hpp"

#include <cmath>
#include <stdexcept>

#include "haldane/aklt.hpp"
#include "haldane/measure.hpp"

namespace haldane {

namespace {

Matrix qubit_axis_pauli(double angle) {
    const QubitOperatorSet& q = qubit_operators();
    return std::cos(angle) * q.sigma_x + std::sin(angle) * q.sigma_y_std;
}

Matrix cartesian_columns3() {
    const CartesianTriple& c = cartesian_states();
    Matrix u(3, 3);
    u.col(0) = c.x_state;
    u.col(1) = c.y_state;
    u.col(2) = c.z_state;
    return u;
}

}  // namespace

StringOperator string_operator(StringAxis axis, double axis_angle,
                               const Matrix& right_pauli) {
    const QubitOperatorSet& q = qubit_operators();
    StringOperator op;
    op.right_factor = right_pauli;
    switch (axis) {
        case StringAxis::X:
            op.left_factor = q.sigma_x;
            op.site_factor = pi_rotation(0);
            break;
        case StringAxis::Y:
            op.left_factor = q.sigma_y_std;
            op.site_factor = pi_rotation(1);
            break;
        case StringAxis::Z:
            op.left_factor = q.sigma_z;
            op.site_factor = pi_rotation(2);
            break;
        case StringAxis::XYPlane:
            op.left_factor = qubit_axis_pauli(axis_angle);
            op.site_factor = pi_rotation_xy(axis_angle);
            break;
    }
    return op;
}

Complex string_expectation(const StateVector& state, const StringOperator& op) {
    const ChainLayout& layout = state.layout;
    if (!layout.left_terminated || !layout.right_terminated)
        throw std::invalid_argument("string_expectation: chain must be doubly terminated");
    std::vector<int> sites;
    std::vector<Matrix> ops;
    sites.push_back(0);
    ops.push_back(op.left_factor);
    for (int i = 0; i < layout.n_spin1; ++i) {
        sites.push_back(layout.spin1_site(i));
        ops.push_back(op.site_factor);
    }
    sites.push_back(layout.n_sites() - 1);
    ops.push_back(op.right_factor);
    return product_expectation(state, sites, ops);
}

FidelityRecord rotation_fidelity(const StateVector& ground, double beta,
                                 int blocklength, double theta,
                                 int block_start) {
    auto gate = buffered_rotation(ground, block_start, blocklength, theta);
    if (!gate)
        throw std::runtime_error("rotation_fidelity: zero-probability success branch");

    // Encoded stabilizer of the rotated output: the x axis of the left edge
    // qubit turns by the gate angle (the x byproduct flips its sign) while
    // the site factors stay at e^{i pi S_x}; the right termination reads
    // plain sigma_x. The global minus comes from the singlet pairing of the
    // two edge qubits; a residual z byproduct would negate it once more.
    const PauliFrame frame = gate->byproduct;
    const double axis_angle = (frame.x ? 1.0 : -1.0) * theta;
    const int sign = frame.z ? +1 : -1;

    StringOperator op;
    op.left_factor = qubit_axis_pauli(axis_angle);
    op.site_factor = pi_rotation(0);
    op.right_factor = qubit_operators().sigma_x;
    const double expect =
        sign * string_expectation(gate->post_state, op).real();

    FidelityRecord rec;
    rec.beta = beta;
    rec.n_spin1 = ground.layout.n_spin1;
    rec.blocklength = blocklength;
    rec.theta = theta;
    rec.success_probability = gate->success_probability;
    rec.byproduct_sign = sign;
    rec.string_expect = expect;
    rec.fidelity = std::sqrt(std::min(1.0, std::max(0.0, 0.5 * (1.0 + expect))));
    return rec;
}

FidelityRecord rotation_fidelity(double beta, int n_spin1, int blocklength,
                                 double theta, const GroundOptions& opts) {
    LocalOperatorSum h = build_hamiltonian(build_layout(n_spin1, true, true), beta);
    GroundResult g = ground_state(h, opts);
    if (!g.converged)
        throw std::runtime_error("rotation_fidelity: ground-state solve did not converge");
    return rotation_fidelity(g.state, beta, blocklength, theta);
}

namespace {

// 2x2 matrices attached to Cartesian outcomes, MPS convention.
const std::array<Matrix, 3>& mps_paulis() {
    static const std::array<Matrix, 3> p = {
        qubit_operators().sigma_x, qubit_operators().sigma_y_mps,
        qubit_operators().sigma_z};
    return p;
}

Matrix bond_epsilon() {
    Matrix e = Matrix::Zero(2, 2);
    e(0, 1) = 1.0;
    e(1, 0) = -1.0;
    return e;
}

}  // namespace

double oracle_fidelity(double beta, int n_spin1, int blocklength, double theta,
                       int block_start) {
    if (n_spin1 > 8)
        throw std::invalid_argument("oracle_fidelity: chain too large for the dense oracle");
    LocalOperatorSum h = build_hamiltonian(build_layout(n_spin1, true, true), beta);
    StateVector ground = dense_spectrum(h, 1).states[0];
    return oracle_fidelity(ground, blocklength, theta, block_start);
}

double oracle_fidelity(const StateVector& ground, int blocklength, double theta,
                       int block_start) {
    if (ground.layout.n_spin1 > 8)
        throw std::invalid_argument("oracle_fidelity: chain too large for the dense oracle");
    const int n_spin1 = ground.layout.n_spin1;
    auto gate = buffered_rotation(ground, block_start, blocklength, theta);
    if (!gate)
        throw std::runtime_error("oracle_fidelity: zero-probability success branch");
    StateVector psi = gate->post_state;
    const int m = psi.layout.n_spin1;

    // Rotate every residual spin-1 index to the Cartesian label basis so
    // the standard-basis decode branches can be read off directly.
    const Matrix u_dag = cartesian_columns3().adjoint();
    for (int i = 0; i < m; ++i)
        apply_site_operator(psi, psi.layout.spin1_site(i), u_dag);

    // Ideal per-branch two-qubit images from the matrix-product calculus:
    // the logical factor of site j is its outcome map, taken in site order.
    const Matrix eps = bond_epsilon();
    Matrix center_map = logical_map(Outcome::Rotated, theta).matrix;
    const Matrix sz = qubit_operators().sigma_z;

    std::int64_t pow3m = 1;
    for (int i = 0; i < m; ++i) pow3m *= 3;

    double fid_sq = 0.0;
    const int center = block_start + blocklength / 2;
    for (std::int64_t c = 0; c < pow3m; ++c) {
        // Residual outcome labels, site-major like the amplitude layout.
        std::vector<int> labels(m);
        std::int64_t rem = c;
        for (int i = m - 1; i >= 0; --i) {
            labels[i] = static_cast<int>(rem % 3);
            rem /= 3;
        }
        // Full product over original site order: block sites contribute
        // their measurement maps, residual sites their Cartesian Paulis.
        Matrix a = eps;
        int residual_idx = 0;
        for (int j = 0; j < n_spin1; ++j) {
            if (j >= block_start && j < block_start + blocklength)
                a = a * (j == center ? center_map : sz);
            else
                a = a * mps_paulis()[labels[residual_idx++]];
        }
        // Actual decoded branch amplitude on the two termination qubits.
        Eigen::Vector4cd phi;
        for (int q = 0; q < 2; ++q)
            for (int qr = 0; qr < 2; ++qr)
                phi(2 * q + qr) = psi.amplitudes((q * pow3m + c) * 2 + qr);

        Eigen::Vector4cd target;
        target << a(0, 0), a(0, 1), a(1, 0), a(1, 1);
        const double tn = target.norm();
        if (tn < 1e-14) continue;
        target /= tn;
        fid_sq += std::norm(target.dot(phi));
    }
    return std::sqrt(std::min(1.0, fid_sq));
}

WorstCase worst_case_scan(const StateVector& ground, double beta,
                          int blocklength, const std::vector<double>& theta_grid) {
    if (theta_grid.empty())
        throw std::invalid_argument("worst_case_scan: empty theta grid");
    WorstCase out;
    out.fidelity_min = 2.0;
    for (double theta : theta_grid) {
        FidelityRecord rec = rotation_fidelity(ground, beta, blocklength, theta);
        if (rec.fidelity < out.fidelity_min) {
            out.fidelity_min = rec.fidelity;
            out.theta_min = theta;
        }
    }
    return out;
}

}  // namespace haldane
