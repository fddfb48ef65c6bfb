#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "haldane/fidelity.hpp"
#include "haldane/measure.hpp"
#include "haldane/rg.hpp"

// Parameter sweeps behind the CLI: flat JSON configuration, deterministic
// worker-pool execution, CSV/JSON emission with byte-stable formatting.

namespace haldane {

struct SweepConfig {
    int n_spin1 = 12;
    double beta_min = -0.9;
    double beta_max = 0.9;
    int beta_steps = 19;
    bool inject_aklt = true;          // always add the exact -1/3 grid point
    std::vector<int> l_list = {1, 3, 9};
    double theta = 1.5707963267948966;
    std::uint64_t seed = 20100910;
    int workers = 0;                  // 0: HALDANE_WORKERS or 1
    std::string out_path;

    // ground
    double beta = 0.0;
    int k = 1;
    std::string terminations = "both";  // both | open | left | right

    // sample
    int trials = 1000;
    int blocklength = 3;
    int record_limit = 1000;          // per-trial records kept in the log
};

// Flat JSON, explicit keys, unknown keys rejected. Missing keys keep
// defaults.
SweepConfig load_config(const std::string& path);
void apply_config_json(SweepConfig& cfg, const std::string& json_text);

// Throws on invalid configs (empty grids, |beta| > 0.99, memory cap).
void validate_config(const SweepConfig& cfg);

// Inclusive linspace plus the injected AKLT point, sorted, deduplicated.
std::vector<double> beta_grid(const SweepConfig& cfg);

// FNV-1a over the canonical serialized config.
std::uint64_t config_hash(const SweepConfig& cfg);
std::string canonical_config(const SweepConfig& cfg);
std::string version_string();

// Dispatch [0, n_tasks) over a fixed-size thread pool; results must be
// written to preassigned slots so the outcome is order-independent.
void parallel_for(std::int64_t n_tasks, int workers,
                  const std::function<void(std::int64_t)>& fn);

// Measure-until-success over consecutive blocklength-site blocks: every
// block site is read in the z-rotated basis, success means all outer
// outcomes z and the central outcome the unflipped rotation.
struct AttemptRecord {
    int block_start = 0;
    std::vector<int> outcomes;
    bool success = false;
};
struct ProtocolRun {
    std::vector<AttemptRecord> attempts;
    bool success = false;
    PauliFrame final_frame;
};
ProtocolRun run_protocol(const StateVector& state, int blocklength,
                         double theta, std::uint64_t seed);

// Subcommand bodies; progress notes go to `log`, data to cfg.out_path.
int cmd_sweep_fidelity(const SweepConfig& cfg, std::ostream& log);
int cmd_rg_bloch(const SweepConfig& cfg, std::ostream& log);
int cmd_ground(const SweepConfig& cfg, std::ostream& log);
int cmd_sample(const SweepConfig& cfg, std::ostream& log);

}  // namespace haldane
