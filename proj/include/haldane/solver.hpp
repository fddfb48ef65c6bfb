#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "haldane/chain.hpp"

namespace haldane {

struct GroundOptions {
    double tol = 1e-9;        // residual norm target, ||(H - E)psi||
    int max_iter = 100000;    // matvec budget across all restarts
    int k = 1;                // number of lowest eigenpairs
    std::uint64_t seed = 20100910;
    int krylov_dim = 0;       // 0: choose from the problem size
    int workers = 0;          // 0: default_workers()
    // Optional deterministic starting vector (must match the layout).
    std::optional<StateVector> initial_guess;
};

struct GroundResult {
    double energy = 0.0;
    StateVector state;
    double residual_norm = 0.0;
    std::vector<double> low_spectrum;      // k lowest, ascending
    std::vector<StateVector> eigenstates;  // matching low_spectrum
    bool converged = false;
    int matvecs = 0;

    // Eigenvalues within 1e-7 * max(|E0|, 1) of each other are one multiplet.
    int ground_multiplicity() const;
    bool unique_ground() const { return ground_multiplicity() == 1; }
};

// k lowest eigenpairs of H by restarted Lanczos with full
// reorthogonalization and deflation. Deterministic for fixed options.
// Non-convergence is reported via `converged` and the best residual.
GroundResult ground_state(const LocalOperatorSum& h, const GroundOptions& opts = {});

// Dense-diagonalization oracle path; requires a small total dimension.
struct DenseSpectrum {
    std::vector<double> eigenvalues;  // all, ascending
    std::vector<StateVector> states;  // the lowest n_states
};
DenseSpectrum dense_spectrum(const LocalOperatorSum& h, int n_states = 1);

// Uhlmann fidelity F(rho, sigma) = tr sqrt(sqrt(rho) sigma sqrt(rho)) for
// Hermitian PSD matrices (small dimensions).
double uhlmann_fidelity(const Matrix& rho, const Matrix& sigma);

}  // namespace haldane
