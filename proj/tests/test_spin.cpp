#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "haldane/spin.hpp"

using namespace haldane;

namespace {
constexpr double kPi = 3.14159265358979323846;

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }
}  // namespace

TEST_CASE("spin-1 operators satisfy the defining algebra") {
    const SpinOperatorSet& s = spin1_operators();
    Matrix sz_expected = Matrix::Zero(3, 3);
    sz_expected(0, 0) = 1.0;
    sz_expected(2, 2) = -1.0;
    CHECK(max_abs(s.sz - sz_expected) == 0.0);

    const Complex i(0.0, 1.0);
    CHECK(max_abs(s.sx * s.sy - s.sy * s.sx - i * s.sz) < 1e-15);
    CHECK(max_abs(s.sx * s.sx + s.sy * s.sy + s.sz * s.sz -
                  2.0 * Matrix::Identity(3, 3)) < 1e-15);
    CHECK(max_abs(s.sx - s.sx.adjoint()) == 0.0);
    CHECK(max_abs(s.sy - s.sy.adjoint()) == 0.0);
}

TEST_CASE("cartesian states are real null vectors of their spin component") {
    const SpinOperatorSet& s = spin1_operators();
    const CartesianTriple& c = cartesian_states();
    CHECK((s.sx * c.x_state).norm() == 0.0);
    CHECK((s.sy * c.y_state).norm() < 1e-15);
    CHECK((s.sz * c.z_state).norm() == 0.0);
    CHECK(std::abs(c.x_state.dot(c.y_state)) == 0.0);
    CHECK(std::abs(c.x_state.dot(c.z_state)) == 0.0);
    CHECK(c.x_state.imag().norm() == 0.0);
    CHECK(c.y_state.imag().norm() == 0.0);
    CHECK(c.z_state.imag().norm() == 0.0);
}

TEST_CASE("two-site singlet is annihilated by the total spin") {
    const SpinOperatorSet& s = spin1_operators();
    const Vector psi0 = singlet_state();
    const Matrix id = Matrix::Identity(3, 3);
    std::array<Matrix, 3> total = {kron(s.sx, id) + kron(id, s.sx),
                                   kron(s.sy, id) + kron(id, s.sy),
                                   kron(s.sz, id) + kron(id, s.sz)};
    Matrix j2 = Matrix::Zero(9, 9);
    for (const Matrix& t : total) j2 += t * t;
    CHECK((j2 * psi0).norm() < 1e-14);
    CHECK(psi0.norm() == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("theta_state interpolates x to y and sits on the tilted axis") {
    const CartesianTriple& c = cartesian_states();
    CHECK((theta_state(0.0) - c.x_state).norm() < 1e-15);
    CHECK((theta_state(kPi) - c.y_state).norm() < 1e-15);

    const SpinOperatorSet& s = spin1_operators();
    const Matrix s_diag = (s.sx + s.sy) / std::sqrt(2.0);
    CHECK((s_diag * theta_state(kPi / 2)).norm() < 1e-12);

    CHECK((theta_state(0.7 + 2 * kPi) - theta_state(0.7)).norm() < 1e-14);
    CHECK(theta_state(0.3).norm() == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("pi rotations square to identity and fix their own axis") {
    Matrix rz_expected = Matrix::Zero(3, 3);
    rz_expected(0, 0) = -1.0;
    rz_expected(1, 1) = 1.0;
    rz_expected(2, 2) = -1.0;
    CHECK(max_abs(pi_rotation(2) - rz_expected) < 1e-15);

    const CartesianTriple& c = cartesian_states();
    CHECK((pi_rotation(0) * c.x_state - c.x_state).norm() < 1e-15);
    for (int axis : {0, 1, 2}) {
        Matrix r = pi_rotation(axis);
        CHECK(max_abs(r * r - Matrix::Identity(3, 3)) < 1e-14);
        CHECK(max_abs(r * r.adjoint() - Matrix::Identity(3, 3)) < 1e-14);
    }
    CHECK(max_abs(pi_rotation_xy(0.0) - pi_rotation(0)) < 1e-14);
    Matrix rxy = pi_rotation_xy(0.37);
    CHECK(max_abs(rxy * rxy - Matrix::Identity(3, 3)) < 1e-14);
    CHECK((rxy * xy_axis_state(0.37) - xy_axis_state(0.37)).norm() < 1e-13);
}

TEST_CASE("swap_operator equals the index permutation") {
    Matrix p = Matrix::Zero(9, 9);
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) p(b * 3 + a, a * 3 + b) = 1.0;
    Matrix s = swap_operator();
    CHECK(max_abs(s - p) < 1e-14);
    CHECK(max_abs(s * s - Matrix::Identity(9, 9)) < 1e-14);
    CHECK((s * singlet_state() - singlet_state()).norm() < 1e-14);
}

TEST_CASE("qubit operators and rz") {
    const QubitOperatorSet& q = qubit_operators();
    CHECK(max_abs(q.sigma_y_mps - q.sigma_x * q.sigma_z) == 0.0);
    CHECK(max_abs(q.sigma_y_mps - Complex(0, -1) * q.sigma_y_std) < 1e-15);
    Matrix rz = qubit_rz(0.8);
    CHECK(max_abs(rz * rz.adjoint() - Matrix::Identity(2, 2)) < 1e-14);
    CHECK(max_abs(rz * q.sigma_z - q.sigma_z * rz) < 1e-14);
}

TEST_CASE("spin_dot builds the heteronuclear coupling") {
    Matrix d = spin_dot(spin_half_vector(), spin1_vector());
    CHECK(d.rows() == 6);
    CHECK(max_abs(d - d.adjoint()) < 1e-14);
    Eigen::SelfAdjointEigenSolver<Matrix> es(d);
    // j = 1/2 doublet at -1, j = 3/2 quadruplet at +1/2.
    CHECK(es.eigenvalues()(0) == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(es.eigenvalues()(1) == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(es.eigenvalues()(2) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(es.eigenvalues()(5) == doctest::Approx(0.5).epsilon(1e-12));
}
