#pragma once

#include <cstdint>
#include <vector>

#include "haldane/spin.hpp"

// Chain layout, the H(beta) Hamiltonian as a sum of adjacent-pair terms,
// and the matrix-free apply kernel.

namespace haldane {

struct ChainLayout {
    std::vector<int> site_dims;  // left-to-right local dimensions
    bool left_terminated = false;
    bool right_terminated = false;
    int n_spin1 = 0;

    int n_sites() const { return static_cast<int>(site_dims.size()); }
    std::int64_t total_dim() const;
    // Row-major strides: site 0 is the slowest index.
    std::int64_t stride(int site) const;
    // Layout index of the i-th spin-1 site (0-based among spin-1 sites).
    int spin1_site(int i) const { return left_terminated ? i + 1 : i; }

    bool operator==(const ChainLayout&) const = default;
};

// n_spin1 >= 1 contiguous spin-1 sites, optionally a dim-2 site at each end.
ChainLayout build_layout(int n_spin1, bool left, bool right);

struct StateVector {
    ChainLayout layout;
    Vector amplitudes;

    void normalize() { amplitudes /= amplitudes.norm(); }
    // Global phase convention: largest-magnitude amplitude real positive.
    void fix_phase();
};

StateVector random_state(const ChainLayout& layout, std::uint64_t seed);

struct PairTerm {
    int first_site;  // acts on (first_site, first_site + 1)
    Matrix op;       // dense (d1*d2) x (d1*d2), Hermitian
};

struct LocalOperatorSum {
    ChainLayout layout;
    double coupling_j = 1.0;
    double beta = 0.0;
    std::vector<PairTerm> terms;

    void apply_to(const Vector& in, Vector& out, int workers = 1) const;
    Vector apply(const Vector& in, int workers = 1) const;
    StateVector apply(const StateVector& in, int workers = 1) const;

    // Materialized dense matrix; only valid for small layouts.
    Matrix dense() const;
};

// H(beta) = J sum_j [S.S - beta (S.S)^2] on spin-1 bonds plus J (s.S) on
// each termination bond.
LocalOperatorSum build_hamiltonian(const ChainLayout& layout, double beta,
                                   double j = 1.0);

// <psi|O|psi>.
Complex expectation(const StateVector& state, const LocalOperatorSum& op);

// Apply a single-site operator (dim x dim) at the given layout site.
void apply_site_operator(StateVector& state, int site, const Matrix& op);

// <psi| (product of single-site operators) |psi>; ops[i] acts on sites[i].
Complex product_expectation(const StateVector& state,
                            const std::vector<int>& sites,
                            const std::vector<Matrix>& ops);

// Reduced density matrix of a contiguous site range [first, last].
Matrix reduced_density(const StateVector& state, int first, int last);

// Default worker count: HALDANE_WORKERS env var, else 1.
int default_workers();

// Memory-cap guard: throws if the layout's state vector would exceed
// HALDANE_MEM_CAP_MB (no cap when unset).
void check_memory_cap(const ChainLayout& layout);

}  // namespace haldane
