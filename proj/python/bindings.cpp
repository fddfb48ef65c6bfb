#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "haldane/fidelity.hpp"
#include "haldane/rg.hpp"
#include "haldane/sweep.hpp"

namespace py = pybind11;
using namespace haldane;

namespace {

ChainLayout layout_for(int n, const std::string& terminations) {
    const bool left = terminations == "both" || terminations == "left";
    const bool right = terminations == "both" || terminations == "right";
    return build_layout(n, left, right);
}

py::dict ground(double beta, int n, int k, const std::string& terminations) {
    LocalOperatorSum h = build_hamiltonian(layout_for(n, terminations), beta);
    GroundOptions opts;
    opts.k = k;
    GroundResult g = ground_state(h, opts);
    py::dict out;
    out["E0"] = g.energy;
    out["energies"] = g.low_spectrum;
    out["residual"] = g.residual_norm;
    out["converged"] = g.converged;
    out["ground_multiplicity"] = g.ground_multiplicity();
    out["matvecs"] = g.matvecs;
    return out;
}

py::dict fidelity(double beta, int n, int blocklength, double theta) {
    FidelityRecord rec = rotation_fidelity(beta, n, blocklength, theta);
    py::dict out;
    out["fidelity"] = rec.fidelity;
    out["success_probability"] = rec.success_probability;
    out["string_expect"] = rec.string_expect;
    out["byproduct_sign"] = rec.byproduct_sign;
    return out;
}

py::dict point_dict(const BlochPoint& p) {
    py::dict out;
    out["v_chi"] = p.v_chi;
    out["v_plus"] = p.v_plus;
    out["v_y"] = p.v_y;
    out["weight"] = p.weight;
    return out;
}

py::dict flow(double beta, int n) {
    LocalOperatorSum h = build_hamiltonian(build_layout(n, true, true), beta);
    GroundResult g = ground_state(h);
    if (!g.converged) throw std::runtime_error("ground-state solve did not converge");
    BlochFlow f = bloch_flow(g.state);
    py::dict out;
    out["pre"] = point_dict(f.pre);
    out["post"] = point_dict(f.post);
    return out;
}

py::dict sample(double beta, int n, int blocklength, double theta, int trials,
                std::uint64_t seed) {
    LocalOperatorSum h = build_hamiltonian(build_layout(n, true, true), beta);
    GroundResult g = ground_state(h);
    if (!g.converged) throw std::runtime_error("ground-state solve did not converge");
    int successes = 0;
    for (int t = 0; t < trials; ++t)
        successes +=
            run_protocol(g.state, blocklength, theta, trajectory_seed(seed, t))
                .success;
    py::dict out;
    out["trials"] = trials;
    out["successes"] = successes;
    out["success_rate"] = static_cast<double>(successes) / trials;
    return out;
}

}  // namespace

PYBIND11_MODULE(_haldane, m) {
    m.doc() = "spin-1 chain measurement protocol simulator";
    m.def("version", &version_string);
    m.def("ground", &ground, py::arg("beta"), py::arg("n"), py::arg("k") = 1,
          py::arg("terminations") = "both",
          "lowest eigenpairs of the doubly/singly terminated or open chain");
    m.def("rotation_fidelity", &fidelity, py::arg("beta"), py::arg("n"),
          py::arg("blocklength"), py::arg("theta"),
          "buffered-rotation gate fidelity from the string-operator formula");
    m.def(
        "oracle_fidelity",
        [](double beta, int n, int blocklength, double theta) {
            return oracle_fidelity(beta, n, blocklength, theta);
        },
        py::arg("beta"), py::arg("n"), py::arg("blocklength"), py::arg("theta"),
        "small-chain decoding oracle for the same gate fidelity");
    m.def(
        "normalized_success",
        [](double beta, int n, int blocklength, double theta) {
            return normalized_success(beta, n, blocklength, theta);
        },
        py::arg("beta"), py::arg("n"), py::arg("blocklength"), py::arg("theta"),
        "success probability of the buffered block times 3^L");
    m.def("bloch_flow", &flow, py::arg("beta"), py::arg("n"),
          "pre/post coarse-graining Bloch coordinates of the central block");
    m.def(
        "bare_state_decomposition",
        [](double theta) { return bare_state_decomposition(theta); },
        py::arg("theta"),
        "overlap magnitudes of the bare 3-site block states");
    m.def("sample_protocol", &sample, py::arg("beta"), py::arg("n"),
          py::arg("blocklength"), py::arg("theta"), py::arg("trials") = 1000,
          py::arg("seed") = 20100910,
          "Monte Carlo repeat-until-success statistics");
    m.def("aklt_energy",
          [](int n) { return -(2.0 / 3.0) * (n - 1) - 2.0; }, py::arg("n"),
          "closed-form doubly-terminated ground energy at beta = -1/3");
}
