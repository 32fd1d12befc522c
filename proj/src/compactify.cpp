#include "isograss/compactify.hpp"

#include <cmath>

namespace isograss {

Subspace embed_graph(const MatK& g, const FormSpec& b, double tol) {
    if (g.rows() != b.dim() || !g.is_square())
        throw std::invalid_argument("embed_graph: matrix size does not match the form");
    if (b.automorphism_residual(g) > tol * 100)
        throw std::invalid_argument("embed_graph: not an automorphism of the form");
    return embed_graph_gl(g);
}

Subspace embed_graph_gl(const MatK& g) {
    MatK stacked = MatK::identity(g.tag(), g.rows()).vcat(g);
    return Subspace::from_span(stacked);
}

MatK unembed_gl(const Subspace& w, double tol) {
    if (w.ambient() % 2 || w.dim() != w.ambient() / 2)
        throw std::invalid_argument("unembed expects an N-dimensional subspace of V + V");
    int n = w.ambient() / 2;
    MatK top = w.basis().topRows(n), bot = w.basis().bottomRows(n);
    auto sv = singular_values(top);
    if (sv.empty() || sv.back() <= 100 * tol)
        throw std::domain_error("unembed: top block singular (boundary point)");
    return bot * top.inverse();
}

MatK unembed(const Subspace& w, const FormSpec& b, double tol) {
    MatK g = unembed_gl(w, tol);
    if (b.automorphism_residual(g) > 1e-6)
        throw std::domain_error("unembed: recovered matrix left the group");
    return g;
}

Subspace act(const MatK& g1, const MatK& g2, const Subspace& w) {
    if (g1.rows() + g2.rows() != w.ambient())
        throw std::invalid_argument("act: dimension mismatch");
    return Subspace::from_span(MatK::block_diag(g1, g2) * w.basis());
}

namespace {

int checked_dim(const RankDecision& dec, const char* what) {
    if (dec.ambiguous)
        throw AmbiguousRank(std::string("ambiguous rank in ") + what);
    return dec.rank;
}

}  // namespace

int stratum_index(const Subspace& w, const FormSpec& b, double tol, double* margin) {
    if (w.ambient() != 2 * b.dim())
        throw std::invalid_argument("stratum_index: ambient is not V + V");
    RankDecision d1, d2;
    auto [f1, f2] = pi_project(w, &d1, &d2, tol);
    int i = checked_dim(d1, "stratum_index (first factor)");
    int j = checked_dim(d2, "stratum_index (second factor)");
    if (i != j)
        throw std::runtime_error("stratum_index: factor dimensions disagree; "
                                 "input is not maximal isotropic");
    if (margin) *margin = std::min(d1.margin, d2.margin);
    return i;
}

std::pair<int, int> stratum_index_gl(const Subspace& w, double tol, double* margin) {
    RankDecision d1, d2;
    pi_project(w, &d1, &d2, tol);
    int i = checked_dim(d1, "stratum_index_gl (first factor)");
    int j = checked_dim(d2, "stratum_index_gl (second factor)");
    if (margin) *margin = std::min(d1.margin, d2.margin);
    return {i, j};
}

int stratum_dimension(const FormSpec& b, int i) {
    if (i < 0 || i > b.rank()) throw std::invalid_argument("stratum index out of range");
    return b.group_dim_real() - i * i * dim_r(b.tag());
}

int stratum_dimension_gl(const GLGroup& g, int i, int j) {
    if (i < 0 || j < 0 || i + j > g.N)
        throw std::invalid_argument("GL stratum index out of range");
    return g.N * g.N - i * i - j * j;
}

long stratum_count_gl(int n) {
    if (n < 1) throw std::invalid_argument("stratum_count_gl needs N >= 1");
    return static_cast<long>(n + 1) * (n + 2) / 2;
}

Subspace fiber_point(const FormSpec& b, const Subspace& v_i, const MatK& h, double tol) {
    InducedForm ind = induced_form(b, v_i, tol);
    int m = b.dim() - 2 * v_i.dim();
    if (h.rows() != m || h.cols() != m)
        throw std::invalid_argument("fiber_point: h does not act on the complement model");
    if (m > 0 && ind.form.automorphism_residual(h) > 1e-6)
        throw std::invalid_argument("fiber_point: h is not an automorphism of the induced form");

    int n = b.dim(), i = v_i.dim();
    MatK zero_block = MatK::zero(b.tag(), n, i);
    MatK cols = v_i.basis().vcat(zero_block);             // V_i + 0
    cols = cols.hcat(zero_block.vcat(v_i.basis()));       // 0 + V_i
    if (m > 0) {
        MatK graph_cols = (ind.complement_basis).vcat(ind.complement_basis * h);
        cols = cols.hcat(graph_cols);
    }
    return Subspace::from_span(cols, tol);
}

MatK fiber_automorphism(const Subspace& w, const FormSpec& b, const Subspace& v_i,
                        double tol) {
    InducedForm ind = induced_form(b, v_i, tol);
    int m = b.dim() - 2 * v_i.dim();
    if (m == 0) return MatK::zero(b.tag(), 0, 0);
    int n = b.dim();
    // Quotient coordinates of W in (complement model) + (complement model).
    MatK top = ind.complement_basis.dagger() * w.basis().topRows(n);
    MatK bot = ind.complement_basis.dagger() * w.basis().bottomRows(n);
    // The image is the graph of h: solve h . top = bot on the row space.
    MatK tt = top * top.dagger();
    auto sv = singular_values(tt);
    if (sv.back() <= tol * std::max(1.0, sv.front()))
        throw std::domain_error("fiber_automorphism: quotient image is not a graph");
    MatK h = bot * top.dagger() * tt.inverse();
    if (ind.form.automorphism_residual(h) > 1e-6)
        throw std::runtime_error("fiber_automorphism: extracted map left the group");
    return h;
}

namespace {

// Extend an automorphism h of the induced-form model over V_i to an
// automorphism of b acting as identity on the b-orthocomplement of the model.
MatK extend_complement_automorphism(const FormSpec& b, const InducedForm& ind,
                                    const MatK& h, double tol) {
    int n = b.dim();
    if (ind.complement_basis.cols() == 0) return MatK::identity(b.tag(), n);
    MatK rows = is_bilinear(b.kind()) ? ind.complement_basis.transpose() * b.gram()
                                      : ind.complement_basis.dagger() * b.gram();
    MatK rest = nullspace(rows, tol);  // b-orthocomplement of the model
    MatK frame = ind.complement_basis.hcat(rest);
    MatK mapped = (ind.complement_basis * h).hcat(rest);
    MatK g = mapped * frame.inverse();
    if (b.automorphism_residual(g) > 1e-6)
        throw std::runtime_error("complement extension left the group");
    return g;
}

}  // namespace

std::pair<MatK, MatK> connect_same_stratum(const FormSpec& b, const Subspace& from,
                                           const Subspace& to, double tol) {
    int i = stratum_index(from, b, tol);
    if (i != stratum_index(to, b, tol))
        throw std::invalid_argument("connect_same_stratum: different strata");
    Subspace v_std = standard_isotropic(b, i);

    auto [a1, a2] = pi_project(from);
    auto [b1, b2] = pi_project(to);
    MatK f1 = isotropic_transporter(b, a1, v_std, tol);
    MatK f2 = isotropic_transporter(b, a2, v_std, tol);
    MatK e1 = isotropic_transporter(b, b1, v_std, tol);
    MatK e2 = isotropic_transporter(b, b2, v_std, tol);

    Subspace w_from = act(f1, f2, from);
    Subspace w_to = act(e1, e2, to);

    InducedForm ind = induced_form(b, v_std, tol);
    MatK ext = MatK::identity(b.tag(), b.dim());
    if (b.dim() - 2 * i > 0) {
        MatK h_from = fiber_automorphism(w_from, b, v_std, tol);
        MatK h_to = fiber_automorphism(w_to, b, v_std, tol);
        ext = extend_complement_automorphism(b, ind, h_to * h_from.inverse(), tol);
    }
    // act(e1^-1, e2^-1 ext, act(f1, f2, from)) = to
    return {e1.inverse() * f1, e2.inverse() * ext * f2};
}

// ---------------------------------------------------------------------------
// Orbit-map differential rank
// ---------------------------------------------------------------------------

namespace {

Eigen::VectorXd flatten_projector(const Subspace& w) {
    Eigen::MatrixXcd p = w.projector().complexified();
    Eigen::VectorXd v(2 * p.size());
    for (Eigen::Index k = 0; k < p.size(); ++k) {
        v(2 * k) = p.data()[k].real();
        v(2 * k + 1) = p.data()[k].imag();
    }
    return v;
}

DimensionReport differential_rank(const std::vector<MatK>& lie_basis, const Subspace& w0,
                                  int expected_real, double fd_step, const std::string& family) {
    const int n_dirs = 2 * static_cast<int>(lie_basis.size());
    const int n_half = w0.ambient() / 2;
    Eigen::MatrixXd rows(n_dirs, flatten_projector(w0).size());
    MatK eye = MatK::identity(w0.tag(), n_half);
    int r = 0;
    for (int side = 0; side < 2; ++side) {
        for (const auto& x : lie_basis) {
            MatK gp = mat_exp(x * fd_step), gm = mat_exp(x * -fd_step);
            Subspace wp = (side == 0) ? act(gp, eye, w0) : act(eye, gp, w0);
            Subspace wm = (side == 0) ? act(gm, eye, w0) : act(eye, gm, w0);
            rows.row(r++) = (flatten_projector(wp) - flatten_projector(wm)) / (2 * fd_step);
        }
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(rows);
    const auto& sv = svd.singularValues();
    double thr = 1e3 * tol::rank * std::max(sv(0), 1e-300);
    DimensionReport rep;
    rep.family = family;
    rep.expected_rank = expected_real;
    for (Eigen::Index k = 0; k < sv.size(); ++k)
        if (sv(k) > thr) ++rep.computed_rank;
    rep.margin = std::numeric_limits<double>::infinity();
    if (rep.computed_rank >= 1 && rep.computed_rank < sv.size() &&
        sv(rep.computed_rank) > 0)
        rep.margin = sv(rep.computed_rank - 1) / sv(rep.computed_rank);
    return rep;
}

}  // namespace

DimensionReport verify_stratum_dimension(const FormSpec& b, int i, uint64_t seed,
                                         double fd_step) {
    Subspace v_std = standard_isotropic(b, i);
    InducedForm ind = induced_form(b, v_std);
    std::mt19937_64 rng(seed);
    int m = b.dim() - 2 * i;
    MatK h = (m > 0) ? ind.form.random_automorphism(rng, 0.4) : MatK::zero(b.tag(), 0, 0);
    Subspace w0 = fiber_point(b, v_std, h);

    DimensionReport rep = differential_rank(b.lie_algebra_basis(), w0,
                                            stratum_dimension(b, i), fd_step,
                                            b.family_name());
    rep.index_i = i;
    return rep;
}

DimensionReport verify_stratum_dimension_gl(const GLGroup& g, int i, int j, double fd_step) {
    if (i + j > g.N) throw std::invalid_argument("GL stratum out of range");
    // Fiber point over (span(e_1..e_i), span(e_{N-j+1}..e_N)): the two pinned
    // subspaces plus the diagonal graph over the middle block.
    int n = g.N;
    MatK cols = MatK::zero(g.tag, 2 * n, n);
    int c = 0;
    for (int t = 0; t < i; ++t, ++c) cols.set(t, c, {1, 0, 0, 0});
    for (int t = 0; t < j; ++t, ++c) cols.set(n + (n - j + t), c, {1, 0, 0, 0});
    for (int t = i; t < n - j; ++t, ++c) {
        cols.set(t, c, {1, 0, 0, 0});
        cols.set(n + t, c, {1, 0, 0, 0});
    }
    Subspace w0 = Subspace::from_span(cols);

    std::vector<MatK> basis;
    for (int idx = 0; idx < n * n * dim_r(g.tag); ++idx) {
        MatK e = MatK::zero(g.tag, n, n);
        int per = dim_r(g.tag);
        int entry = idx / per, comp = idx % per;
        Quaternion q;
        (comp == 0 ? q.w : comp == 1 ? q.x : comp == 2 ? q.y : q.z) = 1.0;
        e.set(entry / n, entry % n, q);
        basis.push_back(e);
    }
    int expected_real = dim_r(g.tag) * stratum_dimension_gl(g, i, j);
    DimensionReport rep = differential_rank(basis, w0, expected_real, fd_step,
                                            g.family_name());
    rep.index_i = i;
    rep.index_j = j;
    return rep;
}

}  // namespace isograss
