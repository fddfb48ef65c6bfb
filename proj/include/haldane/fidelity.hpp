#pragma once

#include <vector>

#include "haldane/buffer.hpp"
#include "haldane/solver.hpp"

// Encoded-Pauli string operators on doubly-terminated chains and the gate
// fidelity F^2 = (1 + <Sigma_x' (x) sigma_x>)/2, with an independent
// logical-extraction oracle for small chains.

namespace haldane {

enum class StringAxis { X, Y, Z, XYPlane };

struct StringOperator {
    Matrix left_factor;    // 2x2 on the left termination
    Matrix site_factor;    // 3x3 pi rotation on every spin-1 site
    Matrix right_factor;   // 2x2 on the right termination
};

// sigma_axis (x) e^{i pi S_axis} (x) ... (x) right_pauli. For XYPlane the
// axis is (cos a, sin a, 0) with a = axis_angle.
StringOperator string_operator(StringAxis axis, double axis_angle,
                               const Matrix& right_pauli);

// <psi| string |psi> on a doubly-terminated chain state.
Complex string_expectation(const StateVector& state, const StringOperator& op);

struct FidelityRecord {
    double beta = 0.0;
    int n_spin1 = 0;
    int blocklength = 0;
    double theta = 0.0;
    double fidelity = 0.0;
    double success_probability = 0.0;
    int byproduct_sign = +1;
    double string_expect = 0.0;  // s * <Sigma_x' (x) sigma_x>
};

// Run the success branch of the buffered rotation on a precomputed
// doubly-terminated ground state and evaluate the string-operator formula.
FidelityRecord rotation_fidelity(const StateVector& ground, double beta,
                                 int blocklength, double theta,
                                 int block_start = 0);

// Convenience: solve the ground state first.
FidelityRecord rotation_fidelity(double beta, int n_spin1, int blocklength,
                                 double theta, const GroundOptions& opts = {});

// Independent oracle (small chains): after the success branch, decode the
// residual wire by enumerating every standard-basis outcome string on the
// remaining spin-1 sites and compare each decoded two-termination-qubit
// state against its ideal matrix-product image. No string operators.
double oracle_fidelity(double beta, int n_spin1, int blocklength, double theta,
                       int block_start = 0);
// Same on a precomputed doubly-terminated ground state.
double oracle_fidelity(const StateVector& ground, int blocklength, double theta,
                       int block_start = 0);

struct WorstCase {
    double theta_min = 0.0;
    double fidelity_min = 1.0;
};
WorstCase worst_case_scan(const StateVector& ground, double beta,
                          int blocklength, const std::vector<double>& theta_grid);

}  // namespace haldane
