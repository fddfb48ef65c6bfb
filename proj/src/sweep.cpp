#include "haldane/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <mutex>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "haldane/aklt.hpp"
#include "haldane/buffer.hpp"

namespace haldane {

namespace {

constexpr double kAkltBeta = -1.0 / 3.0;

std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::ofstream open_out(const std::string& path_in, const char* fallback) {
    const std::string path = path_in.empty() ? fallback : path_in;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    return out;
}

GroundOptions solver_options(const SweepConfig& cfg) {
    GroundOptions opts;
    opts.seed = cfg.seed;
    opts.workers = cfg.workers;
    return opts;
}

}  // namespace

std::string version_string() { return "haldane 0.1.0"; }

void apply_config_json(SweepConfig& cfg, const std::string& json_text) {
    nlohmann::json j = nlohmann::json::parse(json_text);
    if (!j.is_object()) throw std::runtime_error("config must be a JSON object");
    for (const auto& [key, value] : j.items()) {
        if (key == "n") cfg.n_spin1 = value.get<int>();
        else if (key == "beta_min") cfg.beta_min = value.get<double>();
        else if (key == "beta_max") cfg.beta_max = value.get<double>();
        else if (key == "beta_steps") cfg.beta_steps = value.get<int>();
        else if (key == "inject_aklt") cfg.inject_aklt = value.get<bool>();
        else if (key == "L") {
            cfg.l_list.clear();
            if (value.is_array())
                for (const auto& v : value) cfg.l_list.push_back(v.get<int>());
            else
                cfg.l_list.push_back(value.get<int>());
        } else if (key == "theta") cfg.theta = value.get<double>();
        else if (key == "seed") cfg.seed = value.get<std::uint64_t>();
        else if (key == "workers") cfg.workers = value.get<int>();
        else if (key == "out") cfg.out_path = value.get<std::string>();
        else if (key == "beta") cfg.beta = value.get<double>();
        else if (key == "k") cfg.k = value.get<int>();
        else if (key == "terminations") cfg.terminations = value.get<std::string>();
        else if (key == "trials") cfg.trials = value.get<int>();
        else if (key == "blocklength") cfg.blocklength = value.get<int>();
        else if (key == "record_limit") cfg.record_limit = value.get<int>();
        else throw std::runtime_error("unknown config key: " + key);
    }
}

SweepConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    SweepConfig cfg;
    apply_config_json(cfg, ss.str());
    return cfg;
}

void validate_config(const SweepConfig& cfg) {
    if (cfg.n_spin1 < 1) throw std::runtime_error("n must be >= 1");
    if (cfg.beta_steps < 1) throw std::runtime_error("beta_steps must be >= 1");
    if (cfg.beta_min > cfg.beta_max) throw std::runtime_error("beta_min > beta_max");
    if (cfg.beta_min < -0.99 || cfg.beta_max > 0.99 ||
        cfg.beta < -0.99 || cfg.beta > 0.99)
        throw std::runtime_error("beta values must lie in [-0.99, 0.99]");
    if (cfg.l_list.empty()) throw std::runtime_error("L list must be nonempty");
    for (int l : cfg.l_list)
        if (l < 1 || l % 2 == 0) throw std::runtime_error("L values must be odd and >= 1");
    if (cfg.k < 1) throw std::runtime_error("k must be >= 1");
    if (cfg.trials < 1) throw std::runtime_error("trials must be >= 1");
    if (cfg.terminations != "both" && cfg.terminations != "open" &&
        cfg.terminations != "left" && cfg.terminations != "right")
        throw std::runtime_error("terminations must be both|open|left|right");
    check_memory_cap(build_layout(cfg.n_spin1, true, true));
}

std::vector<double> beta_grid(const SweepConfig& cfg) {
    std::vector<double> grid;
    if (cfg.beta_steps == 1) {
        grid.push_back(cfg.beta_min);
    } else {
        const double step = (cfg.beta_max - cfg.beta_min) / (cfg.beta_steps - 1);
        for (int i = 0; i < cfg.beta_steps; ++i)
            grid.push_back(cfg.beta_min + step * i);
    }
    if (cfg.inject_aklt && kAkltBeta >= cfg.beta_min && kAkltBeta <= cfg.beta_max)
        grid.push_back(kAkltBeta);
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end(),
                           [](double a, double b) { return std::abs(a - b) < 1e-12; }),
               grid.end());
    return grid;
}

std::string canonical_config(const SweepConfig& cfg) {
    nlohmann::json j;
    j["n"] = cfg.n_spin1;
    j["beta_min"] = fmt17(cfg.beta_min);
    j["beta_max"] = fmt17(cfg.beta_max);
    j["beta_steps"] = cfg.beta_steps;
    j["inject_aklt"] = cfg.inject_aklt;
    j["L"] = cfg.l_list;
    j["theta"] = fmt17(cfg.theta);
    j["seed"] = cfg.seed;
    j["beta"] = fmt17(cfg.beta);
    j["k"] = cfg.k;
    j["terminations"] = cfg.terminations;
    j["trials"] = cfg.trials;
    j["blocklength"] = cfg.blocklength;
    j["record_limit"] = cfg.record_limit;
    // workers and out are execution details, not part of the result identity
    return j.dump();
}

std::uint64_t config_hash(const SweepConfig& cfg) {
    const std::string s = canonical_config(cfg);
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

void parallel_for(std::int64_t n_tasks, int workers,
                  const std::function<void(std::int64_t)>& fn) {
    if (workers <= 0) workers = default_workers();
    if (workers <= 1 || n_tasks <= 1) {
        for (std::int64_t i = 0; i < n_tasks; ++i) fn(i);
        return;
    }
    std::atomic<std::int64_t> next{0};
    std::vector<std::thread> pool;
    std::exception_ptr err;
    std::mutex err_mutex;
    const int n_threads = static_cast<int>(std::min<std::int64_t>(workers, n_tasks));
    for (int t = 0; t < n_threads; ++t) {
        pool.emplace_back([&] {
            for (;;) {
                const std::int64_t i = next.fetch_add(1);
                if (i >= n_tasks) return;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(err_mutex);
                    if (!err) err = std::current_exception();
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (err) std::rethrow_exception(err);
}

namespace {

void write_header(std::ofstream& out, const SweepConfig& cfg,
                  const std::string& units) {
    char hash[32];
    std::snprintf(hash, sizeof(hash), "%016llx",
                  static_cast<unsigned long long>(config_hash(cfg)));
    out << "# config_hash=" << hash << "\n";
    out << "# version=" << version_string() << "\n";
    out << "# units=" << units << "\n";
}

}  // namespace

int cmd_sweep_fidelity(const SweepConfig& cfg, std::ostream& log) {
    validate_config(cfg);
    const std::vector<double> betas = beta_grid(cfg);
    std::vector<int> ls = cfg.l_list;
    std::sort(ls.begin(), ls.end());

    struct Row {
        double beta = 0, theta = 0, f = 0, success = 0, normalized = 0,
               e0 = 0, residual = 0;
        int l = 0;
        bool ok = false;
    };
    std::vector<Row> rows(betas.size() * ls.size());

    parallel_for(static_cast<std::int64_t>(betas.size()), cfg.workers,
                 [&](std::int64_t bi) {
        const double beta = betas[bi];
        LocalOperatorSum h =
            build_hamiltonian(build_layout(cfg.n_spin1, true, true), beta);
        GroundResult g = ground_state(h, solver_options(cfg));
        for (std::size_t li = 0; li < ls.size(); ++li) {
            Row& row = rows[bi * ls.size() + li];
            row.beta = beta;
            row.l = ls[li];
            row.theta = cfg.theta;
            row.e0 = g.energy;
            row.residual = g.residual_norm;
            row.ok = g.converged;
            if (!g.converged) continue;
            FidelityRecord rec = rotation_fidelity(g.state, beta, ls[li], cfg.theta);
            row.f = rec.fidelity;
            row.success = rec.success_probability;
            row.normalized = rec.success_probability * std::pow(3.0, ls[li]);
        }
        {
            static std::mutex log_mutex;
            std::lock_guard<std::mutex> lock(log_mutex);
            log << "beta=" << fmt17(beta) << " E0=" << fmt17(g.energy)
                << (g.converged ? "" : " NOT CONVERGED") << "\n";
        }
    });

    std::ofstream out = open_out(cfg.out_path, "sweep_fidelity.csv");
    write_header(out, cfg,
                 "beta:1,L:sites,theta:rad,F:1,success_prob:1,"
                 "normalized_success:1,E0:J,residual:J");
    out << "beta,L,theta,F,success_prob,normalized_success,E0,residual,status\n";
    for (const Row& r : rows) {
        out << fmt17(r.beta) << ',' << r.l << ',' << fmt17(r.theta) << ','
            << fmt17(r.f) << ',' << fmt17(r.success) << ','
            << fmt17(r.normalized) << ',' << fmt17(r.e0) << ','
            << fmt17(r.residual) << ',' << (r.ok ? "ok" : "noconv") << "\n";
    }
    return 0;
}

int cmd_rg_bloch(const SweepConfig& cfg, std::ostream& log) {
    validate_config(cfg);
    if (cfg.n_spin1 % 3 != 0 || cfg.n_spin1 < 9)
        throw std::runtime_error("rg-bloch requires n divisible by 3 and >= 9");
    const std::vector<double> betas = beta_grid(cfg);

    // Reference point: the exact fixed-point state of the same length.
    StateVector aklt = aklt_state_doubly_terminated(cfg.n_spin1);
    const BlochFlow ref = bloch_flow(aklt);
    const double ref_plus = ref.pre.v_plus / ref.pre.weight;
    const double ref_chi = ref.pre.v_chi / ref.pre.weight;

    struct Row {
        double beta = 0;
        BlochFlow flow;
        double dist_pre = 0, dist_post = 0;
        bool ok = false;
    };
    std::vector<Row> rows(betas.size());

    parallel_for(static_cast<std::int64_t>(betas.size()), cfg.workers,
                 [&](std::int64_t bi) {
        Row& row = rows[bi];
        row.beta = betas[bi];
        LocalOperatorSum h =
            build_hamiltonian(build_layout(cfg.n_spin1, true, true), betas[bi]);
        GroundResult g = ground_state(h, solver_options(cfg));
        row.ok = g.converged;
        if (!g.converged) return;
        row.flow = bloch_flow(g.state);
        auto dist = [&](const BlochPoint& p) {
            const double dp = p.v_plus / p.weight - ref_plus;
            const double dc = p.v_chi / p.weight - ref_chi;
            return std::sqrt(dp * dp + dc * dc);
        };
        row.dist_pre = dist(row.flow.pre);
        row.dist_post = dist(row.flow.post);
        {
            static std::mutex log_mutex;
            std::lock_guard<std::mutex> lock(log_mutex);
            log << "beta=" << fmt17(betas[bi])
                << " v_y pre=" << fmt17(row.flow.pre.v_y / row.flow.pre.weight)
                << " post=" << fmt17(row.flow.post.v_y / row.flow.post.weight)
                << "\n";
        }
    });

    std::ofstream out = open_out(cfg.out_path, "rg_bloch.csv");
    write_header(out, cfg,
                 "beta:1,v_plus:1,v_chi:1,weight:1,dist:1");
    out << "beta,pre_v_plus,pre_v_chi,pre_weight,post_v_plus,post_v_chi,"
           "post_weight,dist_pre,dist_post,status\n";
    for (const Row& r : rows) {
        const BlochPoint& a = r.flow.pre;
        const BlochPoint& b = r.flow.post;
        out << fmt17(r.beta) << ',' << fmt17(a.v_plus / a.weight) << ','
            << fmt17(a.v_chi / a.weight) << ',' << fmt17(a.weight) << ','
            << fmt17(b.v_plus / b.weight) << ',' << fmt17(b.v_chi / b.weight)
            << ',' << fmt17(b.weight) << ',' << fmt17(r.dist_pre) << ','
            << fmt17(r.dist_post) << ',' << (r.ok ? "ok" : "noconv") << "\n";
    }
    return 0;
}

int cmd_ground(const SweepConfig& cfg, std::ostream& log) {
    validate_config(cfg);
    const bool left = cfg.terminations == "both" || cfg.terminations == "left";
    const bool right = cfg.terminations == "both" || cfg.terminations == "right";
    LocalOperatorSum h =
        build_hamiltonian(build_layout(cfg.n_spin1, left, right), cfg.beta);
    GroundOptions opts = solver_options(cfg);
    opts.k = cfg.k;

    const auto t0 = std::chrono::steady_clock::now();
    GroundResult g = ground_state(h, opts);
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    nlohmann::json j;
    j["version"] = version_string();
    j["config_hash"] = config_hash(cfg);
    j["beta"] = cfg.beta;
    j["n"] = cfg.n_spin1;
    j["terminations"] = cfg.terminations;
    j["k"] = cfg.k;
    j["dim"] = h.layout.total_dim();
    j["energies"] = g.low_spectrum;
    j["E0"] = g.energy;
    j["residual"] = g.residual_norm;
    j["converged"] = g.converged;
    j["ground_multiplicity"] = g.ground_multiplicity();
    j["unique_ground"] = g.unique_ground();
    j["matvecs"] = g.matvecs;
    j["seconds"] = seconds;
    std::ofstream out = open_out(cfg.out_path, "ground.json");
    out << j.dump(2) << "\n";
    log << "E0=" << fmt17(g.energy) << " residual=" << fmt17(g.residual_norm)
        << (g.converged ? "" : " NOT CONVERGED") << "\n";
    return g.converged ? 0 : 1;
}

ProtocolRun run_protocol(const StateVector& state, int blocklength,
                         double theta, std::uint64_t seed) {
    if (blocklength < 1 || blocklength % 2 == 0)
        throw std::invalid_argument("blocklength must be odd and >= 1");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const MeasurementBasis basis = z_rotated_basis(theta);

    ProtocolRun run;
    StateVector current = state;
    int removed = 0;  // measured sites always leave from the front
    for (int block_start = 0;
         block_start + blocklength <= state.layout.n_spin1 && !run.success;
         block_start += blocklength) {
        AttemptRecord attempt;
        attempt.block_start = block_start;
        for (int i = 0; i < blocklength; ++i) {
            const int site_now = block_start + i - removed;
            auto branches =
                measure_site(current, current.layout.spin1_site(site_now), basis);
            const double r = unif(rng);
            int pick = 2;
            double acc = 0.0;
            for (int b = 0; b < 3; ++b) {
                acc += branches[b].probability;
                if (r < acc) {
                    pick = b;
                    break;
                }
            }
            attempt.outcomes.push_back(pick);
            run.final_frame = update_frame(run.final_frame,
                                           static_cast<Outcome>(pick), basis);
            current = std::move(branches[pick].post_state);
            ++removed;
        }
        attempt.success = true;
        for (int i = 0; i < blocklength; ++i) {
            const bool center = i == blocklength / 2;
            const Outcome want = center ? Outcome::Rotated : Outcome::Z;
            if (attempt.outcomes[i] != static_cast<int>(want))
                attempt.success = false;
        }
        run.success = attempt.success;
        run.attempts.push_back(std::move(attempt));
    }
    return run;
}

int cmd_sample(const SweepConfig& cfg, std::ostream& log) {
    validate_config(cfg);
    LocalOperatorSum h =
        build_hamiltonian(build_layout(cfg.n_spin1, true, true), cfg.beta);
    GroundResult g = ground_state(h, solver_options(cfg));
    if (!g.converged) throw std::runtime_error("ground-state solve did not converge");

    int successes = 0;
    int first_attempt_successes = 0;
    nlohmann::json records = nlohmann::json::array();
    for (int t = 0; t < cfg.trials; ++t) {
        ProtocolRun run = run_protocol(g.state, cfg.blocklength, cfg.theta,
                                       trajectory_seed(cfg.seed, t));
        if (run.success) ++successes;
        if (!run.attempts.empty() && run.attempts.front().success)
            ++first_attempt_successes;
        if (t < cfg.record_limit) {
            nlohmann::json rec;
            rec["trial"] = t;
            rec["success"] = run.success;
            rec["frame_x"] = run.final_frame.x;
            rec["frame_z"] = run.final_frame.z;
            nlohmann::json attempts = nlohmann::json::array();
            for (const AttemptRecord& a : run.attempts) {
                nlohmann::json aj;
                aj["block_start"] = a.block_start;
                aj["outcomes"] = a.outcomes;
                aj["success"] = a.success;
                attempts.push_back(aj);
            }
            rec["attempts"] = attempts;
            records.push_back(rec);
        }
    }

    nlohmann::json j;
    j["version"] = version_string();
    j["config_hash"] = config_hash(cfg);
    j["beta"] = cfg.beta;
    j["n"] = cfg.n_spin1;
    j["blocklength"] = cfg.blocklength;
    j["theta"] = cfg.theta;
    j["seed"] = cfg.seed;
    j["trials"] = cfg.trials;
    j["successes"] = successes;
    j["first_attempt_successes"] = first_attempt_successes;
    j["success_rate"] = static_cast<double>(successes) / cfg.trials;
    j["first_attempt_rate"] =
        static_cast<double>(first_attempt_successes) / cfg.trials;
    j["trajectories"] = records;
    std::ofstream out = open_out(cfg.out_path, "sample.json");
    out << j.dump(2) << "\n";
    log << "success rate " << fmt17(static_cast<double>(successes) / cfg.trials)
        << " over " << cfg.trials << " trials\n";
    return 0;
}

}  // namespace haldane
