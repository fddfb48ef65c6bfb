#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "haldane/aklt.hpp"
#include "haldane/chain.hpp"

// Single-site projective measurements, branch bookkeeping, Pauli-frame
// tracking, and trajectory sampling.

namespace haldane {

enum class BasisKind { Standard, ZRotated };

struct MeasurementBasis {
    BasisKind kind = BasisKind::Standard;
    double theta = 0.0;
    // Outcome ordering: standard = {|x>,|y>,|z>},
    // z_rotated(theta) = {|theta>, |theta+pi>, |z>}.
    std::array<Vector, 3> vectors;
};

MeasurementBasis standard_basis();
MeasurementBasis z_rotated_basis(double theta);

// Single-qubit Pauli group mod phase: sigma_x^x sigma_z^z.
struct PauliFrame {
    bool x = false;
    bool z = false;

    PauliFrame composed_with(const PauliFrame& other) const {
        return {x != other.x, z != other.z};
    }
    Matrix matrix() const;
    bool operator==(const PauliFrame&) const = default;
};

struct Branch {
    double probability = 0.0;
    StateVector post_state;  // measured site removed from the layout
    int outcome = 0;
    LogicalMap logical_byproduct;
};

// Project out `site` (a spin-1 site) in the given basis; three branches,
// probabilities summing to one. Zero-probability branches carry an
// unnormalized (zero) post_state.
std::array<Branch, 3> measure_site(const StateVector& state, int site,
                                   const MeasurementBasis& basis);

// Single-branch projection onto target_vector at `site`. Returns nullopt
// when the branch probability is below `zero_tol` (impossible branch);
// otherwise (probability, normalized post-state with the site removed).
struct Postselection {
    double probability = 0.0;
    StateVector post_state;
};
std::optional<Postselection> postselect(const StateVector& state, int site,
                                        const Vector& target_vector,
                                        double zero_tol = 1e-14);

// Compose the Pauli part of the outcome's byproduct into the frame.
PauliFrame update_frame(const PauliFrame& frame, Outcome outcome,
                        const MeasurementBasis& basis);

struct Trajectory {
    std::vector<int> outcomes;
    StateVector final_state;
    PauliFrame final_frame;
};

// Sample one trajectory measuring the listed sites (indices into the
// *initial* layout, strictly increasing not required) in the given bases.
// Deterministic for a fixed seed; independent trajectories should derive
// their streams as trajectory_seed(seed, index).
Trajectory sample_trajectory(const StateVector& state,
                             const std::vector<int>& site_order,
                             const std::vector<MeasurementBasis>& bases,
                             std::uint64_t seed);

// Stream-splitting rule for parallel trajectories (splitmix64 of the pair).
std::uint64_t trajectory_seed(std::uint64_t seed, std::uint64_t index);

}  // namespace haldane
