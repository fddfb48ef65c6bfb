#include "haldane/solver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace haldane {

namespace {

// Twice-is-enough Gram-Schmidt of v against the columns in basis[0..n).
void orthogonalize(Vector& v, const std::vector<Vector>& basis, std::size_t n) {
    for (int pass = 0; pass < 2; ++pass)
        for (std::size_t i = 0; i < n; ++i) v -= basis[i].dot(v) * basis[i];
}

void orthogonalize(Vector& v, const std::vector<StateVector>& states) {
    for (int pass = 0; pass < 2; ++pass)
        for (const StateVector& s : states)
            v -= s.amplitudes.dot(v) * s.amplitudes;
}

struct LanczosOne {
    double energy = 0.0;
    Vector vec;
    double residual = 0.0;
    bool converged = false;
    int matvecs = 0;
};

// Lowest eigenpair of H restricted to the orthogonal complement of
// `deflated`, by restarted Lanczos with full reorthogonalization.
LanczosOne lanczos_lowest(const LocalOperatorSum& h, Vector start, int m,
                          double tol, int max_iter, int workers,
                          const std::vector<StateVector>& deflated) {
    LanczosOne out;
    const std::int64_t dim = h.layout.total_dim();
    // The basis cannot exceed the deflated complement's dimension.
    m = static_cast<int>(std::min<std::int64_t>(
        m, dim - static_cast<std::int64_t>(deflated.size())));
    if (m < 1)
        throw std::runtime_error("lanczos: deflated space exhausts the problem");

    orthogonalize(start, deflated);
    if (start.norm() < 1e-14)
        throw std::runtime_error("lanczos: starting vector lies in the deflated space");
    start /= start.norm();

    std::vector<Vector> basis;
    basis.reserve(m);
    Vector w, ritz;
    // Rayleigh-Ritz on the explicitly projected matrix rather than the
    // textbook alpha/beta tridiagonal: restarts and deflation leave small
    // couplings beyond the tridiagonal band that otherwise stall
    // convergence near the target residual.
    Matrix t(m, m);
    while (out.matvecs < max_iter) {
        basis.clear();
        basis.push_back(start);
        t.setZero();
        int n = 0;
        for (int j = 0; j < m && out.matvecs < max_iter; ++j) {
            h.apply_to(basis[j], w, workers);
            ++out.matvecs;
            const double raw_norm = w.norm();
            for (std::size_t i = 0; i < basis.size(); ++i)
                t(static_cast<int>(i), j) = basis[i].dot(w);
            n = j + 1;
            if (j + 1 == m) break;
            // DGKS re-orthogonalization: repeat while the norm keeps
            // collapsing; a vector that never stabilizes is numerically
            // inside the span and must not be normalized into the basis.
            double before = raw_norm;
            double nb = 0.0;
            bool dependent = true;
            for (int pass = 0; pass < 4 && dependent; ++pass) {
                for (const StateVector& s : deflated)
                    w -= s.amplitudes.dot(w) * s.amplitudes;
                for (std::size_t i = 0; i < basis.size(); ++i)
                    w -= basis[i].dot(w) * basis[i];
                nb = w.norm();
                if (nb > 0.5 * before) dependent = false;
                before = nb;
            }
            if (dependent || nb < 1e-13 * std::max(1.0, raw_norm))
                break;  // Krylov closure
            basis.push_back(w / nb);
            t(j + 1, j) = nb;  // subdiagonal coupling to the new vector
        }
        Matrix tn = (t.topLeftCorner(n, n) +
                     t.topLeftCorner(n, n).adjoint()) / 2.0;
        Eigen::SelfAdjointEigenSolver<Matrix> es(tn);
        // Within a numerically degenerate lowest cluster the Ritz rotation
        // is arbitrary; stay continuous with the restart vector (= basis[0])
        // so refinement is monotone instead of hopping around the multiplet.
        const double e_min = es.eigenvalues()(0);
        const double cluster = 1e-7 * std::max(std::abs(e_min), 1.0);
        int pick = 0;
        for (int c = 1; c < n && es.eigenvalues()(c) - e_min < cluster; ++c)
            if (std::abs(es.eigenvectors()(0, c)) >
                std::abs(es.eigenvectors()(0, pick)))
                pick = c;
        const Vector y = es.eigenvectors().col(pick);
        ritz = Vector::Zero(dim);
        for (int i = 0; i < n; ++i) ritz += y(i) * basis[i];
        orthogonalize(ritz, deflated);
        ritz /= ritz.norm();
        h.apply_to(ritz, w, workers);
        ++out.matvecs;
        // Residual of the deflated operator PHP: leakage through the
        // finite-precision deflated eigenvectors must not stall convergence.
        for (const StateVector& s : deflated)
            w -= s.amplitudes.dot(w) * s.amplitudes;
        out.energy = ritz.dot(w).real();
        out.residual = (w - out.energy * ritz).norm();
        out.vec = ritz;
        if (out.residual <= tol) {
            out.converged = true;
            return out;
        }
        start = ritz;  // restart from the current best Ritz vector
    }
    return out;
}

}  // namespace

int GroundResult::ground_multiplicity() const {
    if (low_spectrum.empty()) return 0;
    const double thresh = 1e-7 * std::max(std::abs(low_spectrum[0]), 1.0);
    int mult = 1;
    while (mult < static_cast<int>(low_spectrum.size()) &&
           low_spectrum[mult] - low_spectrum[0] < thresh)
        ++mult;
    return mult;
}

GroundResult ground_state(const LocalOperatorSum& h, const GroundOptions& opts) {
    if (opts.k < 1) throw std::invalid_argument("ground_state: k must be >= 1");
    check_memory_cap(h.layout);
    const std::int64_t dim = h.layout.total_dim();
    const int workers = opts.workers > 0 ? opts.workers : default_workers();
    int m = opts.krylov_dim;
    if (m <= 0) m = dim > 500000 ? 40 : 80;

    GroundResult res;
    res.converged = true;
    for (int j = 0; j < opts.k; ++j) {
        Vector start;
        if (j == 0 && opts.initial_guess) {
            if (!(opts.initial_guess->layout == h.layout))
                throw std::invalid_argument("ground_state: initial guess layout mismatch");
            start = opts.initial_guess->amplitudes;
        } else {
            start = random_state(h.layout, opts.seed + 7919 * j).amplitudes;
        }
        LanczosOne one = lanczos_lowest(h, std::move(start), m, opts.tol,
                                        opts.max_iter - res.matvecs, workers,
                                        res.eigenstates);
        res.matvecs += one.matvecs;
        res.converged = res.converged && one.converged;
        if (one.vec.size() == 0) {  // matvec budget exhausted before any sweep
            res.converged = false;
            one.vec = Vector::Zero(dim);
            one.vec(0) = 1.0;
        }
        StateVector sv;
        sv.layout = h.layout;
        sv.amplitudes = std::move(one.vec);
        sv.fix_phase();
        res.low_spectrum.push_back(one.energy);
        res.eigenstates.push_back(std::move(sv));
        if (j == 0) res.residual_norm = one.residual;
    }
    // Deflated sweeps produce ascending eigenvalues up to solver accuracy;
    // sort jointly to be safe.
    std::vector<int> order(opts.k);
    for (int i = 0; i < opts.k; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return res.low_spectrum[a] < res.low_spectrum[b];
    });
    std::vector<double> ev;
    std::vector<StateVector> st;
    for (int i : order) {
        ev.push_back(res.low_spectrum[i]);
        st.push_back(std::move(res.eigenstates[i]));
    }
    res.low_spectrum = std::move(ev);
    res.eigenstates = std::move(st);
    res.energy = res.low_spectrum[0];
    res.state = res.eigenstates[0];
    return res;
}

DenseSpectrum dense_spectrum(const LocalOperatorSum& h, int n_states) {
    const std::int64_t dim = h.layout.total_dim();
    if (dim > 20000)
        throw std::invalid_argument("dense_spectrum: dimension too large for the dense path");
    Matrix hd = h.dense();
    Eigen::SelfAdjointEigenSolver<Matrix> es(hd);
    DenseSpectrum out;
    out.eigenvalues.assign(es.eigenvalues().data(),
                           es.eigenvalues().data() + dim);
    for (int i = 0; i < n_states && i < dim; ++i) {
        StateVector sv;
        sv.layout = h.layout;
        sv.amplitudes = es.eigenvectors().col(i);
        sv.fix_phase();
        out.states.push_back(std::move(sv));
    }
    return out;
}

double uhlmann_fidelity(const Matrix& rho, const Matrix& sigma) {
    // Rank-deficient inputs have true zero eigenvalues that come back from
    // the eigensolver as O(eps) noise; sqrt would amplify each to O(1e-8),
    // so clip below a noise floor first.
    Eigen::SelfAdjointEigenSolver<Matrix> es(rho);
    const double floor1 = 1e-13 * std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
    Eigen::VectorXd ev = es.eigenvalues();
    for (Eigen::Index i = 0; i < ev.size(); ++i)
        ev(i) = ev(i) > floor1 ? std::sqrt(ev(i)) : 0.0;
    Matrix sqrt_rho =
        es.eigenvectors() * ev.asDiagonal().toDenseMatrix().cast<Complex>() *
        es.eigenvectors().adjoint();
    Matrix inner = sqrt_rho * sigma * sqrt_rho;
    Eigen::SelfAdjointEigenSolver<Matrix> es2(inner);
    const double floor2 =
        1e-13 * std::max(1.0, es2.eigenvalues().cwiseAbs().maxCoeff());
    double f = 0.0;
    for (Eigen::Index i = 0; i < es2.eigenvalues().size(); ++i)
        if (es2.eigenvalues()(i) > floor2) f += std::sqrt(es2.eigenvalues()(i));
    return f;
}

}  // namespace haldane
