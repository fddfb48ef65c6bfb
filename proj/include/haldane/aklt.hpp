#pragma once

#include "haldane/chain.hpp"

// Exact AKLT state construction from the 2x2 matrix-product form and the
// per-site logical (edge-qubit) maps.

namespace haldane {

struct AkltChainSpec {
    int n_spin1 = 1;
    Vector phi = Vector::Zero(2);  // free edge-qubit state, normalized
    bool right_terminated = false; // singlet-close phi against a right qubit
};

// Dense AKLT state. Left-terminated layout [2, 3^n] when
// right_terminated is false; doubly-terminated layout [2, 3^n, 2] otherwise
// (phi is then singlet-contracted against the right qubit and ignored as a
// parameter).
StateVector aklt_state(const AkltChainSpec& spec);

// Convenience: doubly-terminated AKLT ground state of n spin-1 sites.
StateVector aklt_state_doubly_terminated(int n_spin1);

enum class Outcome { Rotated = 0, RotatedPi = 1, Z = 2 };

struct LogicalMap {
    Matrix matrix;  // 2x2, proportional to a unitary
    Outcome outcome_label = Outcome::Z;
};

// Logical action of a single-site measurement outcome in the z-rotated basis
// {|theta>, |theta+pi>, |z>}:
//   A(|theta>)    = sigma_x R_z(theta)          (up to global phase)
//   A(|theta+pi>) = sigma_x sigma_z R_z(theta)  (up to global phase)
//   A(|z>)        = sigma_z
LogicalMap logical_map(Outcome outcome, double basis_theta);

// MPS contraction sum_b <outcome|b> sigma_b (sigma_y = sigma_x sigma_z);
// the generic logical action of projecting one site onto `outcome_vec`.
Matrix logical_map_from_vector(const Vector& outcome_vec);

// |<a,b>| / (||a|| ||b||): 1 iff equal up to global phase and scale.
double phase_free_overlap(const Matrix& a, const Matrix& b);

}  // namespace haldane
