#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "haldane/rg.hpp"
#include "haldane/aklt.hpp"

using namespace haldane;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("symmetric sector basis is orthonormal, exchange-fixed, spin 2") {
    const J1SymmetricBasis& basis = j1_basis();
    Matrix gram = basis.vectors * basis.vectors.adjoint();
    CHECK((gram - Matrix::Identity(6, 6)).cwiseAbs().maxCoeff() < 1e-12);

    // 1 <-> 3 site exchange
    for (int row = 0; row < 6; ++row) {
        Vector v = basis.vectors.row(row).transpose();
        Vector swapped(27);
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b)
                for (int c = 0; c < 3; ++c)
                    swapped(c * 9 + b * 3 + a) = v(a * 9 + b * 3 + c);
        CHECK((swapped - v).norm() < 1e-12);
    }

    // total block spin J = 1: S_tot^2 eigenvalue 2
    const SpinOperatorSet& s = spin1_operators();
    const Matrix id = Matrix::Identity(3, 3);
    std::array<Matrix, 3> ops = {s.sx, s.sy, s.sz};
    Matrix j2 = Matrix::Zero(27, 27);
    for (const Matrix& o : ops) {
        Matrix t = kron(kron(o, id), id) + kron(kron(id, o), id) +
                   kron(kron(id, id), o);
        j2 += t * t;
    }
    for (int row = 0; row < 6; ++row) {
        Vector v = basis.vectors.row(row).transpose();
        CHECK((j2 * v - 2.0 * v).norm() < 1e-11);
    }
}

TEST_CASE("block isometry") {
    const Matrix& w = block_isometry();
    CHECK((w * w.adjoint() - Matrix::Identity(6, 6)).cwiseAbs().maxCoeff() <
          1e-12);
    Matrix p = w.adjoint() * w;
    CHECK((p * p - p).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(std::abs(p.trace().real() - 6.0) < 1e-10);
}

TEST_CASE("block map on reference inputs") {
    // maximally mixed block
    Matrix mixed = Matrix::Identity(27, 27) / 27.0;
    auto [weight, label] = rg_block_map(mixed);
    CHECK(weight == doctest::Approx(6.0 / 27).epsilon(1e-12));
    BlochPoint p = bloch_point(label);
    CHECK(std::abs(p.v_chi) < 1e-12);
    CHECK(std::abs(p.v_plus) < 1e-12);

    // pure |z z z>
    const CartesianTriple& c = cartesian_states();
    Vector zzz = kron(kron(c.z_state, c.z_state), c.z_state);
    Matrix rho = zzz * zzz.adjoint();
    auto [w2, label2] = rg_block_map(rho);
    CHECK(w2 == doctest::Approx(3.0 / 5).epsilon(1e-12));
    // label state proportional to |0><0|
    CHECK(label2.rho_label(0, 0).real() == doctest::Approx(3.0 / 5).epsilon(1e-12));
    CHECK(std::abs(label2.rho_label(1, 1)) < 1e-12);
}

TEST_CASE("bare three-site coefficients") {
    for (double theta : {0.0, kPi / 3, kPi / 2}) {
        auto [c_chi, c_z0] = bare_state_decomposition(theta);
        CHECK(c_chi == doctest::Approx(std::sqrt(2.0 / 5)).epsilon(1e-12));
        CHECK(c_z0 == doctest::Approx(std::sqrt(3.0 / 5)).epsilon(1e-12));
    }
    CHECK(std::abs(bare_zzz_label1_coefficient()) < 1e-13);
}

TEST_CASE("fixed point of the coarse-graining map") {
    StateVector psi9 = aklt_state_doubly_terminated(9);
    Matrix coarse = renormalize_chain(psi9);
    CHECK(std::abs(coarse.trace().real() - 1.0) < 1e-12);

    StateVector psi3 = aklt_state_doubly_terminated(3);
    Matrix target = reduced_density(psi3, 1, 3);
    CHECK(uhlmann_fidelity(coarse, target) == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("weight consistency between the two computation paths") {
    StateVector psi = aklt_state_doubly_terminated(5);
    Matrix rho = block_density(psi, 1);
    auto [weight, label] = rg_block_map(rho);
    const Matrix& w = block_isometry();
    CHECK(std::abs((w * rho * w.adjoint()).trace().real() - weight) < 1e-12);
    BlochPoint p = bloch_point(label);
    CHECK(std::hypot(p.v_chi, p.v_plus) <= weight + 1e-10);
}

TEST_CASE("flow moves toward the fixed point at beta = 0") {
    // small chain keeps the test cheap; direction is the tested property
    LocalOperatorSum h = build_hamiltonian(build_layout(9, true, true), 0.0);
    GroundResult g = ground_state(h);
    REQUIRE(g.converged);
    BlochFlow flow = bloch_flow(g.state);

    StateVector aklt = aklt_state_doubly_terminated(9);
    BlochFlow ref = bloch_flow(aklt);
    auto dist = [&](const BlochPoint& a, const BlochPoint& b) {
        return std::hypot(a.v_chi / a.weight - b.v_chi / b.weight,
                          a.v_plus / a.weight - b.v_plus / b.weight);
    };
    CHECK(dist(flow.post, ref.pre) < dist(flow.pre, ref.pre));
    CHECK(std::abs(flow.pre.v_y / flow.pre.weight) < 1e-8);
    CHECK(std::abs(ref.pre.v_y / ref.pre.weight) < 1e-10);
}
