#include "haldane/aklt.hpp"

#include <cmath>
#include <stdexcept>

namespace haldane {

namespace {

const Complex I_UNIT(0.0, 1.0);

// 2x2 matrices attached to the Cartesian outcomes, MPS convention.
const std::array<Matrix, 3>& mps_paulis() {
    static const std::array<Matrix, 3> p = {
        qubit_operators().sigma_x, qubit_operators().sigma_y_mps,
        qubit_operators().sigma_z};
    return p;
}

// Antisymmetric bond tensor; contracts the physical left qubit with the
// matrix-product virtual index so that each termination bond sits in its
// j = 1/2 sector.
Matrix epsilon() {
    Matrix e = Matrix::Zero(2, 2);
    e(0, 1) = 1.0;
    e(1, 0) = -1.0;
    return e;
}

// Cartesian-basis vectors as columns of a 3x3 matrix U: |b> = U.col(b).
Matrix cartesian_columns() {
    const CartesianTriple& c = cartesian_states();
    Matrix u(3, 3);
    u.col(0) = c.x_state;
    u.col(1) = c.y_state;
    u.col(2) = c.z_state;
    return u;
}

// Depth-first walk over Cartesian strings b_1..b_n, accumulating the matrix
// product prefix * sigma_{b_1} * ... * sigma_{b_site}. The leaf writes
// close(product) into amps[offset .. offset + tail_dim).
// The walk indexes sites in the Cartesian label basis; the caller rotates
// each site index to the m-basis afterwards.
template <typename Close>
void mps_walk(int site, int n, const Matrix& product, std::int64_t offset,
              std::int64_t tail_dim, const Close& close) {
    if (site == n) {
        close(product, offset);
        return;
    }
    for (int b = 0; b < 3; ++b)
        mps_walk(site + 1, n, Matrix(product * mps_paulis()[b]),
                 offset + b * (tail_dim / 3), tail_dim / 3, close);
}

// Rotate one site's index from the Cartesian labels to the m-basis.
void cartesian_to_m_inplace(Vector& amps, std::int64_t left, std::int64_t right,
                            const Matrix& u) {
    Vector scratch(3);
    for (std::int64_t l = 0; l < left; ++l) {
        const std::int64_t base = l * 3 * right;
        for (std::int64_t r = 0; r < right; ++r) {
            for (int b = 0; b < 3; ++b) scratch(b) = amps(base + b * right + r);
            for (int i = 0; i < 3; ++i) {
                Complex acc(0, 0);
                for (int b = 0; b < 3; ++b) acc += u(i, b) * scratch(b);
                amps(base + i * right + r) = acc;
            }
        }
    }
}

}  // namespace

StateVector aklt_state(const AkltChainSpec& spec) {
    if (spec.n_spin1 < 1)
        throw std::invalid_argument("aklt_state: n_spin1 must be >= 1");
    const int n = spec.n_spin1;
    StateVector out;
    out.layout = build_layout(n, true, spec.right_terminated);
    check_memory_cap(out.layout);
    out.amplitudes = Vector::Zero(out.layout.total_dim());

    std::int64_t pow3 = 1;
    for (int i = 0; i < n; ++i) pow3 *= 3;
    const Matrix u = cartesian_columns();
    const Matrix eps = epsilon();

    if (!spec.right_terminated) {
        Vector phi = spec.phi;
        if (phi.norm() < 1e-14)
            throw std::invalid_argument("aklt_state: phi must be nonzero");
        phi /= phi.norm();
        // amp(q, b_1..b_n) = [eps sigma_{b_1} ... sigma_{b_n} phi]_q
        auto close = [&](const Matrix& prod, std::int64_t offset) {
            Vector v = prod * phi;
            out.amplitudes(offset) = v(0);               // q = 0
            out.amplitudes(pow3 + offset) = v(1);        // q = 1
        };
        mps_walk(0, n, eps, 0, pow3, close);
    } else {
        // amp(q, b_1..b_n, qR) = [eps sigma_{b_1} ... sigma_{b_n}]_{q,qR};
        // the right termination qubit is the open right virtual index itself.
        auto close = [&](const Matrix& prod, std::int64_t offset) {
            const Matrix& m = prod;
            for (int q = 0; q < 2; ++q)
                for (int qr = 0; qr < 2; ++qr)
                    out.amplitudes((q * pow3 + offset) * 2 + qr) = m(q, qr);
        };
        mps_walk(0, n, eps, 0, pow3, close);
    }

    // Rotate every spin-1 index from Cartesian labels to the m-basis.
    for (int i = 0; i < n; ++i) {
        const int site = out.layout.spin1_site(i);
        const std::int64_t right = out.layout.stride(site);
        const std::int64_t left = out.layout.total_dim() / (3 * right);
        cartesian_to_m_inplace(out.amplitudes, left, right, u);
    }
    out.normalize();
    out.fix_phase();
    return out;
}

StateVector aklt_state_doubly_terminated(int n_spin1) {
    AkltChainSpec spec;
    spec.n_spin1 = n_spin1;
    spec.phi = Vector::Zero(2);
    spec.phi(0) = 1.0;
    spec.right_terminated = true;
    return aklt_state(spec);
}

LogicalMap logical_map(Outcome outcome, double basis_theta) {
    const QubitOperatorSet& q = qubit_operators();
    Matrix diag = Matrix::Zero(2, 2);
    diag(0, 0) = 1.0;
    diag(1, 1) = std::exp(I_UNIT * basis_theta);
    LogicalMap m;
    m.outcome_label = outcome;
    switch (outcome) {
        case Outcome::Rotated:
            m.matrix = q.sigma_x * diag;  // = e^{i theta/2} sigma_x R_z(theta)
            break;
        case Outcome::RotatedPi:
            m.matrix = q.sigma_y_mps * diag;
            break;
        case Outcome::Z:
            m.matrix = q.sigma_z;
            break;
    }
    return m;
}

Matrix logical_map_from_vector(const Vector& outcome_vec) {
    const CartesianTriple& c = cartesian_states();
    const std::array<const Vector*, 3> basis = {&c.x_state, &c.y_state,
                                                &c.z_state};
    Matrix a = Matrix::Zero(2, 2);
    for (int b = 0; b < 3; ++b)
        a += outcome_vec.dot(*basis[b]) * mps_paulis()[b];
    return a;
}

double phase_free_overlap(const Matrix& a, const Matrix& b) {
    Complex inner = (a.adjoint() * b).trace();
    return std::abs(inner) / (a.norm() * b.norm());
}

}  // namespace haldane
