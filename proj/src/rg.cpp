#include "haldane/rg.hpp"

#include <cmath>
#include <stdexcept>

namespace haldane {

namespace {

// Embed |k> at block position `pos` with the two-spin singlet on the other
// two sites (site-1-major 27-component indexing).
Vector embed_with_singlet(const Vector& k, int pos) {
    const Vector psi0 = singlet_state();
    Vector out = Vector::Zero(27);
    for (int i1 = 0; i1 < 3; ++i1)
        for (int i2 = 0; i2 < 3; ++i2)
            for (int i3 = 0; i3 < 3; ++i3) {
                Complex v;
                if (pos == 0) v = k(i1) * psi0(3 * i2 + i3);
                else if (pos == 1) v = k(i2) * psi0(3 * i1 + i3);
                else v = k(i3) * psi0(3 * i1 + i2);
                out(9 * i1 + 3 * i2 + i3) = v;
            }
    return out;
}

J1SymmetricBasis make_j1_basis() {
    const CartesianTriple& c = cartesian_states();
    const std::array<const Vector*, 3> ks = {&c.x_state, &c.y_state, &c.z_state};
    J1SymmetricBasis b;
    b.vectors = Matrix::Zero(6, 27);
    for (int k = 0; k < 3; ++k) {
        Vector e1 = embed_with_singlet(*ks[k], 0);
        Vector e2 = embed_with_singlet(*ks[k], 1);
        Vector e3 = embed_with_singlet(*ks[k], 2);
        b.vectors.row(2 * k) = ((e1 + e2 + e3) / std::sqrt(5.0)).transpose();
        b.vectors.row(2 * k + 1) = (0.5 * (e1 - 2.0 * e2 + e3)).transpose();
    }
    return b;
}

Matrix cartesian_columns3() {
    const CartesianTriple& c = cartesian_states();
    Matrix u(3, 3);
    u.col(0) = c.x_state;
    u.col(1) = c.y_state;
    u.col(2) = c.z_state;
    return u;
}

}  // namespace

const J1SymmetricBasis& j1_basis() {
    static const J1SymmetricBasis b = make_j1_basis();
    return b;
}

const Matrix& block_isometry() {
    static const Matrix w = j1_basis().vectors;
    return w;
}

Vector chi_s() {
    Vector v(2);
    v(0) = 1.0 / std::sqrt(6.0);
    v(1) = -std::sqrt(5.0) / std::sqrt(6.0);
    return v;
}

Vector chi_s_bar() {
    Vector v(2);
    v(0) = std::sqrt(5.0) / std::sqrt(6.0);
    v(1) = 1.0 / std::sqrt(6.0);
    return v;
}

std::pair<double, LabelState> rg_block_map(const Matrix& rho_block) {
    if (rho_block.rows() != 27 || rho_block.cols() != 27)
        throw std::invalid_argument("rg_block_map: expected a 27x27 block density");
    Eigen::SelfAdjointEigenSolver<Matrix> es(rho_block);
    if (es.eigenvalues().minCoeff() < -1e-9)
        throw std::invalid_argument("rg_block_map: block density is not PSD");
    const Matrix& w = block_isometry();
    Matrix sigma = w * rho_block * w.adjoint();  // 6x6 on H_J (x) H_L
    LabelState label;
    label.rho_label = Matrix::Zero(2, 2);
    for (int k = 0; k < 3; ++k)
        label.rho_label += sigma.block(2 * k, 2 * k, 2, 2);
    label.weight = sigma.trace().real();
    return {label.weight, label};
}

BlochPoint bloch_point(const LabelState& label) {
    Matrix u(2, 2);
    u.row(0) = chi_s().adjoint();
    u.row(1) = chi_s_bar().adjoint();
    Matrix r = u * label.rho_label * u.adjoint();
    BlochPoint p;
    p.v_chi = (r(0, 0) - r(1, 1)).real();
    p.v_plus = 2.0 * r(0, 1).real();
    p.v_y = -2.0 * r(0, 1).imag();
    p.weight = label.weight;
    return p;
}

std::pair<double, double> bare_state_decomposition(double theta) {
    const CartesianTriple& c = cartesian_states();
    const Vector th = theta_state(theta);
    Vector z_th_z = Vector::Zero(27);
    Vector zzz = Vector::Zero(27);
    for (int i1 = 0; i1 < 3; ++i1)
        for (int i2 = 0; i2 < 3; ++i2)
            for (int i3 = 0; i3 < 3; ++i3) {
                z_th_z(9 * i1 + 3 * i2 + i3) = c.z_state(i1) * th(i2) * c.z_state(i3);
                zzz(9 * i1 + 3 * i2 + i3) =
                    c.z_state(i1) * c.z_state(i2) * c.z_state(i3);
            }
    const Matrix& basis = j1_basis().vectors;
    // |theta>_J |chi_s>_L and |z>_J |0>_L as 27-vectors.
    const Vector chi = chi_s();
    Vector theta_j(3);
    for (int k = 0; k < 3; ++k) {
        const Vector& kv = k == 0 ? c.x_state : (k == 1 ? c.y_state : c.z_state);
        theta_j(k) = kv.dot(th);  // <k|theta>
    }
    Vector target_rot = Vector::Zero(27);
    for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 2; ++l)
            target_rot += theta_j(k) * chi(l) * basis.row(2 * k + l).transpose();
    Vector target_z = basis.row(2 * 2 + 0).transpose();  // |z>_J |0>_L
    return {std::abs(target_rot.dot(z_th_z)), std::abs(target_z.dot(zzz))};
}

Complex bare_zzz_label1_coefficient() {
    const CartesianTriple& c = cartesian_states();
    Vector zzz = Vector::Zero(27);
    for (int i1 = 0; i1 < 3; ++i1)
        for (int i2 = 0; i2 < 3; ++i2)
            for (int i3 = 0; i3 < 3; ++i3)
                zzz(9 * i1 + 3 * i2 + i3) =
                    c.z_state(i1) * c.z_state(i2) * c.z_state(i3);
    return Vector(j1_basis().vectors.row(2 * 2 + 1)).dot(zzz);
}

Matrix block_density(const StateVector& state, int first) {
    const int s0 = state.layout.spin1_site(first);
    return reduced_density(state, s0, s0 + 2);
}

Matrix reduced_density_of_sites(const Matrix& rho, int n_sites, int first) {
    std::int64_t left = 1, right = 1;
    for (int s = 0; s < first; ++s) left *= 3;
    for (int s = first + 3; s < n_sites; ++s) right *= 3;
    Matrix out = Matrix::Zero(27, 27);
    for (std::int64_t l = 0; l < left; ++l)
        for (int a = 0; a < 27; ++a)
            for (int b = 0; b < 27; ++b) {
                Complex acc(0, 0);
                for (std::int64_t r = 0; r < right; ++r)
                    acc += rho((l * 27 + a) * right + r, (l * 27 + b) * right + r);
                out(a, b) += acc;
            }
    return out;
}

Matrix renormalize_chain(const StateVector& state) {
    const int n = state.layout.n_spin1;
    if (n % 3 != 0)
        throw std::invalid_argument("renormalize_chain: n_spin1 must be divisible by 3");
    const int m = n / 3;
    const Matrix& w = block_isometry();

    // Apply W to each 3-site block of the pure state; terminations and the
    // label factors are traced only afterwards (the operations commute).
    std::vector<std::int64_t> dims;
    for (int d : state.layout.site_dims) dims.push_back(d);
    Vector amps = state.amplitudes;
    const int head = state.layout.left_terminated ? 1 : 0;
    for (int b = 0; b < m; ++b) {
        const std::size_t pos = head + b;  // processed blocks occupy one slot each
        std::int64_t left = 1, right = 1;
        for (std::size_t s = 0; s < pos; ++s) left *= dims[s];
        for (std::size_t s = pos + 3; s < dims.size(); ++s) right *= dims[s];
        Vector next(left * 6 * right);
        for (std::int64_t l = 0; l < left; ++l)
            for (int a = 0; a < 6; ++a)
                for (std::int64_t r = 0; r < right; ++r) {
                    Complex acc(0, 0);
                    for (int cidx = 0; cidx < 27; ++cidx)
                        acc += w(a, cidx) * amps((l * 27 + cidx) * right + r);
                    next((l * 6 + a) * right + r) = acc;
                }
        amps = std::move(next);
        dims.erase(dims.begin() + pos, dims.begin() + pos + 3);
        dims.insert(dims.begin() + pos, 6);
    }

    // Trace terminations and each block's label factor (slot index k*2 + l).
    const std::int64_t t_left = state.layout.left_terminated ? 2 : 1;
    const std::int64_t t_right = state.layout.right_terminated ? 2 : 1;
    std::int64_t out_dim = 1;
    for (int b = 0; b < m; ++b) out_dim *= 3;
    Matrix rho = Matrix::Zero(out_dim, out_dim);
    const std::int64_t full = amps.size();
    auto decompose = [&](std::int64_t idx, std::int64_t& tl, std::int64_t& tr,
                         std::int64_t& kpart, std::int64_t& lpart) {
        tr = idx % t_right;
        idx /= t_right;
        kpart = 0;
        lpart = 0;
        std::int64_t blocks[16];
        for (int b = m - 1; b >= 0; --b) {
            blocks[b] = idx % 6;
            idx /= 6;
        }
        for (int b = 0; b < m; ++b) {
            kpart = kpart * 3 + blocks[b] / 2;
            lpart = lpart * 2 + blocks[b] % 2;
        }
        tl = idx;
    };
    for (std::int64_t i = 0; i < full; ++i) {
        std::int64_t tl_i, tr_i, k_i, l_i;
        decompose(i, tl_i, tr_i, k_i, l_i);
        for (std::int64_t j = 0; j < full; ++j) {
            std::int64_t tl_j, tr_j, k_j, l_j;
            decompose(j, tl_j, tr_j, k_j, l_j);
            if (tl_i != tl_j || tr_i != tr_j || l_i != l_j) continue;
            rho(k_i, k_j) += amps(i) * std::conj(amps(j));
        }
    }
    const double tr = rho.trace().real();
    if (tr <= 0.0)
        throw std::runtime_error("renormalize_chain: zero total weight");
    rho /= tr;

    // Convert each renormalized site from Cartesian labels to the m-basis.
    Matrix u_full = Matrix::Identity(1, 1);
    const Matrix u = cartesian_columns3();
    for (int b = 0; b < m; ++b) u_full = kron(u_full, u);
    return u_full * rho * u_full.adjoint();
}

BlochFlow bloch_flow(const StateVector& state) {
    const int n = state.layout.n_spin1;
    BlochFlow flow;
    flow.pre = bloch_point(rg_block_map(block_density(state, (n - 3) / 2)).second);

    Matrix coarse = renormalize_chain(state);
    const int m = n / 3;
    const int first = m >= 4 ? 1 : 0;
    flow.post = bloch_point(rg_block_map(
        reduced_density_of_sites(coarse, m, first)).second);
    return flow;
}

BlochFlow bloch_flow_averaged(const StateVector& state) {
    const int n = state.layout.n_spin1;
    const int m = n / 3;
    BlochFlow flow{};
    int cnt = 0;
    for (int b = 0; b + 3 <= n; b += 3, ++cnt) {
        BlochPoint p = bloch_point(rg_block_map(block_density(state, b)).second);
        flow.pre.v_chi += p.v_chi;
        flow.pre.v_plus += p.v_plus;
        flow.pre.v_y += p.v_y;
        flow.pre.weight += p.weight;
    }
    flow.pre.v_chi /= cnt;
    flow.pre.v_plus /= cnt;
    flow.pre.v_y /= cnt;
    flow.pre.weight /= cnt;

    Matrix coarse = renormalize_chain(state);
    cnt = 0;
    for (int first = 0; first + 3 <= m; ++first, ++cnt) {
        BlochPoint p = bloch_point(
            rg_block_map(reduced_density_of_sites(coarse, m, first)).second);
        flow.post.v_chi += p.v_chi;
        flow.post.v_plus += p.v_plus;
        flow.post.v_y += p.v_y;
        flow.post.weight += p.weight;
    }
    flow.post.v_chi /= cnt;
    flow.post.v_plus /= cnt;
    flow.post.v_y /= cnt;
    flow.post.weight /= cnt;
    return flow;
}

}  // namespace haldane
