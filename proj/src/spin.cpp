#include "haldane/spin.hpp"

#include <cmath>
#include <stdexcept>

namespace haldane {

namespace {

const Complex I_UNIT(0.0, 1.0);

SpinOperatorSet make_spin1() {
    const double r2 = std::sqrt(2.0);
    SpinOperatorSet s;
    s.sx = Matrix::Zero(3, 3);
    s.sy = Matrix::Zero(3, 3);
    s.sz = Matrix::Zero(3, 3);
    // m ordering (+1, 0, -1); S+ has sqrt(2) on the superdiagonal.
    s.sx(0, 1) = s.sx(1, 0) = s.sx(1, 2) = s.sx(2, 1) = 1.0 / r2;
    s.sy(0, 1) = -I_UNIT / r2;
    s.sy(1, 0) = I_UNIT / r2;
    s.sy(1, 2) = -I_UNIT / r2;
    s.sy(2, 1) = I_UNIT / r2;
    s.sz(0, 0) = 1.0;
    s.sz(2, 2) = -1.0;
    return s;
}

QubitOperatorSet make_qubits() {
    QubitOperatorSet q;
    q.sigma_x = Matrix::Zero(2, 2);
    q.sigma_y_std = Matrix::Zero(2, 2);
    q.sigma_z = Matrix::Zero(2, 2);
    q.sigma_x(0, 1) = q.sigma_x(1, 0) = 1.0;
    q.sigma_y_std(0, 1) = -I_UNIT;
    q.sigma_y_std(1, 0) = I_UNIT;
    q.sigma_z(0, 0) = 1.0;
    q.sigma_z(1, 1) = -1.0;
    q.sigma_y_mps = q.sigma_x * q.sigma_z;
    return q;
}

CartesianTriple make_cartesian() {
    const double r2 = std::sqrt(2.0);
    CartesianTriple c;
    c.x_state = Vector::Zero(3);
    c.y_state = Vector::Zero(3);
    c.z_state = Vector::Zero(3);
    c.x_state(0) = -1.0 / r2;
    c.x_state(2) = 1.0 / r2;
    c.y_state(0) = 1.0 / r2;
    c.y_state(2) = 1.0 / r2;
    c.z_state(1) = 1.0;
    return c;
}

}  // namespace

const SpinOperatorSet& spin1_operators() {
    static const SpinOperatorSet s = make_spin1();
    return s;
}

const QubitOperatorSet& qubit_operators() {
    static const QubitOperatorSet q = make_qubits();
    return q;
}

const CartesianTriple& cartesian_states() {
    static const CartesianTriple c = make_cartesian();
    return c;
}

Vector theta_state(double theta) {
    const CartesianTriple& c = cartesian_states();
    const Complex phase = std::exp(-I_UNIT * theta);
    Vector v = 0.5 * ((1.0 + phase) * c.x_state + (1.0 - phase) * c.y_state);
    return v / v.norm();
}

Matrix pi_rotation(int axis) {
    const CartesianTriple& c = cartesian_states();
    const Vector* k = nullptr;
    switch (axis) {
        case 0: k = &c.x_state; break;
        case 1: k = &c.y_state; break;
        case 2: k = &c.z_state; break;
        default: throw std::invalid_argument("pi_rotation: axis must be 0, 1 or 2");
    }
    return 2.0 * (*k) * k->adjoint() - Matrix::Identity(3, 3);
}

Matrix pi_rotation_xy(double axis_angle) {
    Vector k = xy_axis_state(axis_angle);
    return 2.0 * k * k.adjoint() - Matrix::Identity(3, 3);
}

Vector xy_axis_state(double axis_angle) {
    // Null state of S_n, n = (cos a, sin a, 0): rotate |x> by a about z,
    // i.e. multiply the m component by e^{-i a m}.
    const CartesianTriple& c = cartesian_states();
    Vector v(3);
    v(0) = std::exp(-I_UNIT * axis_angle) * c.x_state(0);
    v(1) = c.x_state(1);
    v(2) = std::exp(I_UNIT * axis_angle) * c.x_state(2);
    return v;
}

Vector singlet_state() {
    const CartesianTriple& c = cartesian_states();
    Vector psi = Vector::Zero(9);
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            psi(3 * a + b) = (c.x_state(a) * c.x_state(b) -
                              c.y_state(a) * c.y_state(b) +
                              c.z_state(a) * c.z_state(b)) /
                             std::sqrt(3.0);
    return psi;
}

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

Matrix spin_dot(const std::array<Matrix, 3>& a, const std::array<Matrix, 3>& b) {
    Matrix out = kron(a[0], b[0]);
    out += kron(a[1], b[1]);
    out += kron(a[2], b[2]);
    return out;
}

std::array<Matrix, 3> spin1_vector() {
    const SpinOperatorSet& s = spin1_operators();
    return {s.sx, s.sy, s.sz};
}

std::array<Matrix, 3> spin_half_vector() {
    const QubitOperatorSet& q = qubit_operators();
    return {0.5 * q.sigma_x, 0.5 * q.sigma_y_std, 0.5 * q.sigma_z};
}

Matrix swap_operator() {
    Matrix ss = spin_dot(spin1_vector(), spin1_vector());
    return ss + ss * ss - Matrix::Identity(9, 9);
}

Matrix qubit_rz(double theta) {
    Matrix r = Matrix::Zero(2, 2);
    r(0, 0) = std::exp(-I_UNIT * (theta / 2.0));
    r(1, 1) = std::exp(I_UNIT * (theta / 2.0));
    return r;
}

}  // namespace haldane
