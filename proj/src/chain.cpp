#include "haldane/chain.hpp"

#include <cstdlib>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>

namespace haldane {

std::int64_t ChainLayout::total_dim() const {
    std::int64_t d = 1;
    for (int s : site_dims) d *= s;
    return d;
}

std::int64_t ChainLayout::stride(int site) const {
    std::int64_t d = 1;
    for (int s = site + 1; s < n_sites(); ++s) d *= site_dims[s];
    return d;
}

ChainLayout build_layout(int n_spin1, bool left, bool right) {
    if (n_spin1 < 1)
        throw std::invalid_argument("build_layout: n_spin1 must be >= 1");
    ChainLayout layout;
    layout.left_terminated = left;
    layout.right_terminated = right;
    layout.n_spin1 = n_spin1;
    if (left) layout.site_dims.push_back(2);
    for (int i = 0; i < n_spin1; ++i) layout.site_dims.push_back(3);
    if (right) layout.site_dims.push_back(2);
    return layout;
}

void StateVector::fix_phase() {
    Eigen::Index imax = 0;
    double best = 0.0;
    for (Eigen::Index i = 0; i < amplitudes.size(); ++i) {
        double m = std::norm(amplitudes(i));
        if (m > best) {
            best = m;
            imax = i;
        }
    }
    Complex a = amplitudes(imax);
    if (std::abs(a) > 0.0) amplitudes *= std::conj(a) / std::abs(a);
}

StateVector random_state(const ChainLayout& layout, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    StateVector s;
    s.layout = layout;
    s.amplitudes.resize(layout.total_dim());
    for (Eigen::Index i = 0; i < s.amplitudes.size(); ++i) {
        double re = gauss(rng);
        double im = gauss(rng);
        s.amplitudes(i) = Complex(re, im);
    }
    s.normalize();
    return s;
}

namespace {

// out[(l*D + a)*right + r] += M(a,b) * in[(l*D + b)*right + r]
// for the pair block at `first_site`; the r range may be restricted so
// threads can split the contiguous inner index without changing any
// per-element accumulation order.
void apply_pair_term(const PairTerm& term, const ChainLayout& layout,
                     const Vector& in, Vector& out, std::int64_t r0,
                     std::int64_t r1, std::int64_t l0, std::int64_t l1) {
    const int d1 = layout.site_dims[term.first_site];
    const int d2 = layout.site_dims[term.first_site + 1];
    const int D = d1 * d2;
    const std::int64_t right = layout.stride(term.first_site + 1);
    const Matrix& m = term.op;
    for (std::int64_t l = l0; l < l1; ++l) {
        const std::int64_t base = l * D * right;
        for (int a = 0; a < D; ++a) {
            auto dst = out.segment(base + a * right + r0, r1 - r0);
            for (int b = 0; b < D; ++b) {
                const Complex c = m(a, b);
                if (c == Complex(0.0, 0.0)) continue;
                dst += c * in.segment(base + b * right + r0, r1 - r0);
            }
        }
    }
}

}  // namespace

void LocalOperatorSum::apply_to(const Vector& in, Vector& out,
                                int workers) const {
    const std::int64_t dim = layout.total_dim();
    if (in.size() != dim)
        throw std::invalid_argument("apply: state dimension mismatch");
    out.setZero(dim);
    for (const PairTerm& term : terms) {
        const std::int64_t right = layout.stride(term.first_site + 1);
        const int D = layout.site_dims[term.first_site] *
                      layout.site_dims[term.first_site + 1];
        const std::int64_t left = dim / (D * right);
        if (workers <= 1) {
            apply_pair_term(term, layout, in, out, 0, right, 0, left);
            continue;
        }
        // Split the larger of the two outer loops across threads; every
        // output element keeps its single-writer accumulation order.
        std::vector<std::thread> pool;
        const int nw = workers;
        if (right >= left) {
            for (int w = 0; w < nw; ++w) {
                std::int64_t r0 = right * w / nw;
                std::int64_t r1 = right * (w + 1) / nw;
                if (r0 == r1) continue;
                pool.emplace_back(apply_pair_term, std::cref(term),
                                  std::cref(layout), std::cref(in),
                                  std::ref(out), r0, r1, std::int64_t(0), left);
            }
        } else {
            for (int w = 0; w < nw; ++w) {
                std::int64_t l0 = left * w / nw;
                std::int64_t l1 = left * (w + 1) / nw;
                if (l0 == l1) continue;
                pool.emplace_back(apply_pair_term, std::cref(term),
                                  std::cref(layout), std::cref(in),
                                  std::ref(out), std::int64_t(0), right, l0, l1);
            }
        }
        for (auto& t : pool) t.join();
    }
}

Vector LocalOperatorSum::apply(const Vector& in, int workers) const {
    Vector out;
    apply_to(in, out, workers);
    return out;
}

StateVector LocalOperatorSum::apply(const StateVector& in, int workers) const {
    if (!(in.layout == layout))
        throw std::invalid_argument("apply: layout mismatch");
    StateVector out;
    out.layout = layout;
    apply_to(in.amplitudes, out.amplitudes, workers);
    return out;
}

Matrix LocalOperatorSum::dense() const {
    const std::int64_t dim = layout.total_dim();
    Matrix h = Matrix::Zero(dim, dim);
    Vector e = Vector::Zero(dim), col;
    for (std::int64_t j = 0; j < dim; ++j) {
        e(j) = 1.0;
        apply_to(e, col);
        h.col(j) = col;
        e(j) = 0.0;
    }
    return h;
}

LocalOperatorSum build_hamiltonian(const ChainLayout& layout, double beta,
                                   double j) {
    if (layout.n_spin1 < 1)
        throw std::invalid_argument("build_hamiltonian: no spin-1 sites");
    if (j == 0.0) throw std::invalid_argument("build_hamiltonian: J must be nonzero");
    LocalOperatorSum h;
    h.layout = layout;
    h.coupling_j = j;
    h.beta = beta;

    const auto s1 = spin1_vector();
    const auto sh = spin_half_vector();
    Matrix ss = spin_dot(s1, s1);
    Matrix bulk = j * (ss - beta * ss * ss);
    for (int i = 0; i + 1 < layout.n_spin1; ++i)
        h.terms.push_back({layout.spin1_site(i), bulk});
    if (layout.left_terminated)
        h.terms.push_back({0, j * spin_dot(sh, s1)});
    if (layout.right_terminated)
        h.terms.push_back({layout.spin1_site(layout.n_spin1 - 1),
                           j * spin_dot(s1, sh)});
    return h;
}

Complex expectation(const StateVector& state, const LocalOperatorSum& op) {
    Vector hv;
    op.apply_to(state.amplitudes, hv, default_workers());
    return state.amplitudes.dot(hv);
}

void apply_site_operator(StateVector& state, int site, const Matrix& op) {
    const int d = state.layout.site_dims[site];
    if (op.rows() != d || op.cols() != d)
        throw std::invalid_argument("apply_site_operator: dimension mismatch");
    const std::int64_t right = state.layout.stride(site);
    const std::int64_t left = state.layout.total_dim() / (d * right);
    Vector scratch(d);
    Vector& amps = state.amplitudes;
    for (std::int64_t l = 0; l < left; ++l) {
        const std::int64_t base = l * d * right;
        for (std::int64_t r = 0; r < right; ++r) {
            for (int a = 0; a < d; ++a) scratch(a) = amps(base + a * right + r);
            for (int a = 0; a < d; ++a) {
                Complex acc(0.0, 0.0);
                for (int b = 0; b < d; ++b) acc += op(a, b) * scratch(b);
                amps(base + a * right + r) = acc;
            }
        }
    }
}

Complex product_expectation(const StateVector& state,
                            const std::vector<int>& sites,
                            const std::vector<Matrix>& ops) {
    StateVector work = state;
    for (std::size_t i = 0; i < sites.size(); ++i)
        apply_site_operator(work, sites[i], ops[i]);
    return state.amplitudes.dot(work.amplitudes);
}

Matrix reduced_density(const StateVector& state, int first, int last) {
    const ChainLayout& layout = state.layout;
    std::int64_t block = 1;
    for (int s = first; s <= last; ++s) block *= layout.site_dims[s];
    const std::int64_t right = layout.stride(last);
    const std::int64_t left = layout.total_dim() / (block * right);
    Matrix rho = Matrix::Zero(block, block);
    const Vector& amps = state.amplitudes;
    for (std::int64_t l = 0; l < left; ++l)
        for (std::int64_t a = 0; a < block; ++a)
            for (std::int64_t b = 0; b < block; ++b) {
                Complex acc(0.0, 0.0);
                const std::int64_t ia = (l * block + a) * right;
                const std::int64_t ib = (l * block + b) * right;
                for (std::int64_t r = 0; r < right; ++r)
                    acc += amps(ia + r) * std::conj(amps(ib + r));
                rho(a, b) += acc;
            }
    return rho;
}

int default_workers() {
    if (const char* env = std::getenv("HALDANE_WORKERS")) {
        int n = std::atoi(env);
        if (n >= 1) return n;
    }
    return 1;
}

void check_memory_cap(const ChainLayout& layout) {
    const char* env = std::getenv("HALDANE_MEM_CAP_MB");
    if (!env) return;
    const double cap_mb = std::atof(env);
    const double need_mb =
        static_cast<double>(layout.total_dim()) * sizeof(Complex) / (1024.0 * 1024.0);
    if (need_mb > cap_mb)
        throw std::runtime_error(
            "layout state vector needs " + std::to_string(need_mb) +
            " MB, exceeding HALDANE_MEM_CAP_MB=" + std::string(env));
}

}  // namespace haldane
