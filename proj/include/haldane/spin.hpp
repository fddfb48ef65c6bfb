#pragma once

#include <array>
#include <complex>

#include <Eigen/Dense>

// Exact finite-dimensional spin-1 and spin-1/2 operators, the real Cartesian
// single-spin basis, and the algebraic identities consumed everywhere else.
//
// Conventions fixed once, here:
//   * spin-1 m-basis ordering is (+1, 0, -1) for every matrix and tensor index
//   * |x> = (|-1> - |+1>)/sqrt2, |y> = (|+1> + |-1>)/sqrt2, |z> = |0>
//     (no i on |y>, so all Cartesian components are real and
//     (|xx> - |yy> + |zz>)/sqrt3 is exactly the two-spin singlet)
//   * sigma_y_mps = sigma_x * sigma_z = -i * sigma_y

namespace haldane {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

struct SpinOperatorSet {
    Matrix sx, sy, sz;  // 3x3, Hermitian, [Sa,Sb] = i eps_abc Sc
};

struct QubitOperatorSet {
    Matrix sigma_x, sigma_y_std, sigma_z;
    Matrix sigma_y_mps;  // sigma_x * sigma_z, the MPS convention
};

struct CartesianTriple {
    Vector x_state, y_state, z_state;  // real in the m-basis, orthonormal
};

// Spin-1 operators in the m = (+1, 0, -1) ordering.
const SpinOperatorSet& spin1_operators();

// Pauli matrices plus the MPS-convention sigma_y.
const QubitOperatorSet& qubit_operators();

// The standard Cartesian basis {|x>,|y>,|z>}, each annihilated by the
// matching spin component.
const CartesianTriple& cartesian_states();

// |theta> = 1/2 [(1+e^{-i theta})|x> + (1-e^{-i theta})|y>], normalized.
Vector theta_state(double theta);

// e^{i pi S_axis} for axis in {0:x, 1:y, 2:z}; computed as 2|k><k| - I
// from the spectral decomposition (eigenvalues e^{+-i pi} = -1, e^0 = 1).
Matrix pi_rotation(int axis);

// e^{i pi S_n} for n = (cos a, sin a, 0) in the x-y plane.
Matrix pi_rotation_xy(double axis_angle);

// Null state of S_n for n = (cos a, sin a, 0): the "Cartesian" state along n.
Vector xy_axis_state(double axis_angle);

// Two-spin-1 singlet (1/sqrt3)(|xx> - |yy> + |zz>), 9 components,
// site-1-major ordering.
Vector singlet_state();

// S_{j,j+1} = S.S + (S.S)^2 - 1, the physical swap of two spin-1 sites.
Matrix swap_operator();

// S1.S2 = sum_a kron(a[a], b[a]) for two vector operators (dims may differ).
Matrix spin_dot(const std::array<Matrix, 3>& a, const std::array<Matrix, 3>& b);

// Components of the spin-1 (dim 3) and spin-1/2 (sigma/2, dim 2) vector
// operators as {x, y, z} arrays.
std::array<Matrix, 3> spin1_vector();
std::array<Matrix, 3> spin_half_vector();

// Kronecker product, site-1-major (first factor is the slow index).
Matrix kron(const Matrix& a, const Matrix& b);

// R_z(theta) = e^{-i theta sigma_z / 2} on a qubit.
Matrix qubit_rz(double theta);

}  // namespace haldane
