#pragma once

#include <utility>

#include "haldane/chain.hpp"
#include "haldane/solver.hpp"

// Three-spin-to-one renormalization: the symmetric J=1 sector basis, the
// block isometry, label-space partial trace, Bloch-vector coordinates, and
// one coarse-graining pass over a chain state.

namespace haldane {

struct J1SymmetricBasis {
    // Six 27-component vectors |k>_J |l>_L, row index k*2 + l for
    // k in {x,y,z}, l in {0,1}.
    Matrix vectors;  // 6 x 27, rows are the basis vectors
};

const J1SymmetricBasis& j1_basis();

// W: 27 -> 6 isometry onto the exchange-symmetric J=1 sector, W W^dag = I6.
const Matrix& block_isometry();

struct LabelState {
    Matrix rho_label;  // 2x2, Hermitian PSD, unnormalized
    double weight = 0.0;  // trace of the J=1-sector block state
};

struct BlochPoint {
    double v_chi = 0.0;   // vertical axis, |chi_s> direction
    double v_plus = 0.0;  // horizontal axis, |+> direction
    double v_y = 0.0;     // diagnostic, expected ~0
    double weight = 0.0;
};

// sigma = W rho W^dag; weight = tr sigma; label state = tr_J sigma.
std::pair<double, LabelState> rg_block_map(const Matrix& rho_block);

// Bloch coordinates of the unnormalized label state in the
// {|chi_s>, |chi_s_bar>} frame; the Bloch norm carries the sector weight.
BlochPoint bloch_point(const LabelState& label);

// |chi_s> = (|0> - sqrt5 |1>)/sqrt6 and its orthogonal complement.
Vector chi_s();
Vector chi_s_bar();

// Overlap magnitudes of the bare block states with the indicated product
// vectors: (|<chi_s x theta_J | z,theta,z>|, |<0_L x z_J | z,z,z>|).
std::pair<double, double> bare_state_decomposition(double theta);
// Signed third coefficient <1_L x z_J | z,z,z> (identically zero).
Complex bare_zzz_label1_coefficient();

// One RG pass: apply W to each 3-site block of spin-1 sites, trace the
// terminations and every label factor, renormalize to unit trace. The
// n_spin1 must be divisible by 3; output is a density matrix over
// n_spin1/3 renormalized spin-1 sites in the |x>,|y>,|z> row ordering of
// H_J (converted to the m-basis).
Matrix renormalize_chain(const StateVector& state);

// Reduced 27x27 density matrix of spin-1 sites [first, first+2] (0-based
// spin-1 indices) of a chain state.
Matrix block_density(const StateVector& state, int first);

// Reduced 27x27 density of sites [first, first+2] of a density matrix over
// n_sites dim-3 sites.
Matrix reduced_density_of_sites(const Matrix& rho, int n_sites, int first);

struct BlochFlow {
    BlochPoint pre;   // central physical 3-block of the input state
    BlochPoint post;  // central 3 renormalized sites after one RG pass
};

// Pre/post Bloch points for a chain state with n_spin1 divisible by 3
// (and >= 12 for a meaningful post block). The pre block is the central
// 3-block; the post block is renormalized sites 1..3 of the coarse chain.
BlochFlow bloch_flow(const StateVector& state);

// Same but averaged over all blocks (pre) and all renormalized 3-windows
// (post); both single-block and averaged variants are exposed.
BlochFlow bloch_flow_averaged(const StateVector& state);

}  // namespace haldane
