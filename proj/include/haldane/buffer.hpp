#pragma once

#include <optional>
#include <vector>

#include "haldane/measure.hpp"
#include "haldane/solver.hpp"

// Buffered rotation gates: the rotation measurement padded by postselected
// |z> outcomes on the surrounding block sites, direct at odd blocklength L
// and concatenated 3 -> 9.

namespace haldane {

struct BufferedGateResult {
    double success_probability = 0.0;  // all outer |z> AND central |theta>
    double buffer_probability = 0.0;   // outer |z> sites only
    StateVector post_state;            // block sites removed
    PauliFrame byproduct;              // X for every odd L
    int blocklength = 0;
    std::vector<int> block_sites;      // spin-1 indices consumed
};

// Postselect the L-site block starting at spin-1 index `block_start` onto
// (|z>^(L-1)/2, |theta>, |z>^(L-1)/2). Returns nullopt on a zero-probability
// branch. L odd >= 1.
std::optional<BufferedGateResult> buffered_rotation(const StateVector& state,
                                                    int block_start, int blocklength,
                                                    double theta);

// Three staged L=3 buffered measurements (outer blocks all-|z>, central
// block rotated) over 9 contiguous sites; equivalent to blocklength 9.
std::optional<BufferedGateResult> buffered_rotation_concatenated(
    const StateVector& state, int block_start, double theta);

// success_probability * 3^L on a precomputed doubly-terminated ground state.
double normalized_success(const StateVector& ground, int blocklength,
                          double theta, int block_start = 0);

// Convenience: solve the ground state at (beta, n_spin1) first.
double normalized_success(double beta, int n_spin1, int blocklength,
                          double theta, const GroundOptions& opts = {});

}  // namespace haldane
