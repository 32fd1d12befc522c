#include "isograss/subspaces.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace isograss {

namespace {

double column_norm(const MatK& col) { return col.norm(); }

Quaternion scalar_of(const MatK& one_by_one) { return one_by_one.at(0, 0); }

MatK col_of(const MatK& m, int j) { return m.block(0, j, m.rows(), 1); }

// Fill a RankDecision from descending singular values and an absolute
// threshold; entries <= thr are "null".
void fill_decision(RankDecision* dec, const std::vector<double>& sv_desc, double thr,
                   int kept_above) {
    if (!dec) return;
    dec->sv = sv_desc;
    dec->rank = kept_above;
    double smallest_kept = std::numeric_limits<double>::infinity();
    double largest_dropped = 0.0;
    for (double s : sv_desc) (s > thr ? smallest_kept = std::min(smallest_kept, s)
                                      : largest_dropped = std::max(largest_dropped, s));
    dec->margin = (largest_dropped > 0.0 && smallest_kept < std::numeric_limits<double>::infinity())
                      ? smallest_kept / largest_dropped
                      : std::numeric_limits<double>::infinity();
    dec->ambiguous = false;
    for (double s : sv_desc)
        if (s > thr / 10.0 && s < thr * 10.0) dec->ambiguous = true;
}

}  // namespace

MatK orthonormalize(const MatK& raw, double tol, RankDecision* dec) {
    int n = raw.rows(), k = raw.cols();
    std::vector<MatK> work;
    work.reserve(k);
    for (int j = 0; j < k; ++j) work.push_back(col_of(raw, j));

    double scale = 0.0;
    for (const auto& c : work) scale = std::max(scale, column_norm(c));
    double thr = tol * std::max(scale, 1e-300);

    std::vector<MatK> basis;
    std::vector<bool> used(k, false);
    std::vector<double> pivot_norms;
    for (int step = 0; step < k; ++step) {
        int best = -1;
        double best_norm = 0.0;
        for (int j = 0; j < k; ++j) {
            if (used[j]) continue;
            double nj = column_norm(work[j]);
            if (nj > best_norm) { best_norm = nj; best = j; }
        }
        if (best < 0 || best_norm <= thr) {
            for (int j = 0; j < k; ++j)
                if (!used[j]) pivot_norms.push_back(column_norm(work[j]));
            break;
        }
        used[best] = true;
        pivot_norms.push_back(best_norm);
        MatK u = work[best] * (1.0 / best_norm);
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto& v : basis) u = u - v * (v.dagger() * u);
            double nu = column_norm(u);
            if (nu <= 1e-300) { u = MatK::zero(raw.tag(), n, 1); break; }
            u = u * (1.0 / nu);
        }
        basis.push_back(u);
        for (int j = 0; j < k; ++j)
            if (!used[j]) work[j] = work[j] - u * (u.dagger() * work[j]);
    }

    std::sort(pivot_norms.begin(), pivot_norms.end(), std::greater<double>());
    fill_decision(dec, pivot_norms, thr, static_cast<int>(basis.size()));

    MatK out = MatK::zero(raw.tag(), n, static_cast<int>(basis.size()));
    for (size_t j = 0; j < basis.size(); ++j)
        for (int r = 0; r < n; ++r) out.set(r, static_cast<int>(j), basis[j].at(r, 0));
    return out;
}

MatK orthonormalize_rank(const MatK& raw, int rank) {
    int n = raw.rows(), k = raw.cols();
    std::vector<MatK> work;
    for (int j = 0; j < k; ++j) work.push_back(col_of(raw, j));
    std::vector<MatK> basis;
    std::vector<bool> used(k, false);
    while (static_cast<int>(basis.size()) < rank) {
        int best = -1;
        double best_norm = 0.0;
        for (int j = 0; j < k; ++j) {
            if (used[j]) continue;
            double nj = column_norm(work[j]);
            if (nj > best_norm) { best_norm = nj; best = j; }
        }
        if (best < 0 || best_norm < 1e-10)
            throw std::runtime_error("projector pull-back lost rank");
        used[best] = true;
        MatK u = work[best] * (1.0 / best_norm);
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto& v : basis) u = u - v * (v.dagger() * u);
            u = u * (1.0 / column_norm(u));
        }
        basis.push_back(u);
        for (int j = 0; j < k; ++j)
            if (!used[j]) work[j] = work[j] - u * (u.dagger() * work[j]);
    }
    MatK out = MatK::zero(raw.tag(), n, rank);
    for (size_t j = 0; j < basis.size(); ++j)
        for (int r = 0; r < n; ++r) out.set(r, static_cast<int>(j), basis[j].at(r, 0));
    return out;
}

MatK nullspace(const MatK& m, double tol, RankDecision* dec) {
    const int c = m.cols();
    if (m.rows() == 0 || c == 0) {
        fill_decision(dec, {}, tol, c);
        return MatK::identity(m.tag(), c);
    }
    Eigen::MatrixXcd mc = m.complexified();
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(mc, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    std::vector<double> sv_desc(sv.data(), sv.data() + sv.size());
    double thr = tol * (sv.size() ? sv(0) : 0.0);

    int total_cols = static_cast<int>(mc.cols());
    int nullity_c = total_cols - static_cast<int>(sv.size());  // columns beyond min(r,c)
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) <= thr) ++nullity_c;
    fill_decision(dec, sv_desc, thr,
                  m.tag() == Scalar::H ? nullity_c / 2 : nullity_c);

    if (nullity_c == 0) return MatK::zero(m.tag(), c, 0);
    Eigen::MatrixXcd vnull = svd.matrixV().rightCols(nullity_c);

    if (m.tag() != Scalar::H) {
        MatK out = MatK::zero(m.tag(), c, nullity_c);
        if (m.tag() == Scalar::R) {
            // phase-align: a real kernel has a real orthonormal basis; recover
            // it from the projector to stay in tag R.
            Eigen::MatrixXd proj = (vnull * vnull.adjoint()).real();
            return orthonormalize_rank(MatK::from_real(proj), nullity_c);
        }
        for (int j = 0; j < nullity_c; ++j)
            for (int r = 0; r < c; ++r)
                out.set(r, j, Quaternion::from_parts(vnull(r, j), 0));
        return out;
    }

    // Quaternionic: the kernel of the complex adjoint is j-invariant, so its
    // projector carries the quaternionic block structure and pulls back.
    if (nullity_c % 2)
        throw std::runtime_error("quaternionic kernel has odd complex dimension");
    Eigen::MatrixXcd proj = vnull * vnull.adjoint();
    MatK proj_h = MatK::from_complexified(Scalar::H, proj, 1e-6);
    return orthonormalize_rank(proj_h, nullity_c / 2);
}

// ---------------------------------------------------------------------------
// Subspace
// ---------------------------------------------------------------------------

Subspace Subspace::zero(Scalar tag, int ambient) {
    Subspace s;
    s.ambient_ = ambient;
    s.basis_ = MatK::zero(tag, ambient, 0);
    return s;
}

Subspace Subspace::from_span(const MatK& raw, double tol) {
    Subspace s;
    s.ambient_ = raw.rows();
    s.basis_ = orthonormalize(raw, tol);
    return s;
}

Subspace Subspace::from_orthonormal(const MatK& basis) {
    Subspace s;
    s.ambient_ = basis.rows();
    s.basis_ = basis;
    return s;
}

MatK Subspace::projector() const { return basis_ * basis_.dagger(); }

double Subspace::distance(const Subspace& other) const {
    if (ambient_ != other.ambient_ || tag() != other.tag())
        throw std::invalid_argument("subspace distance: ambient mismatch");
    return (projector() - other.projector()).op_norm();
}

double Subspace::containment_residual(const Subspace& inner) const {
    if (ambient_ != inner.ambient_ || tag() != inner.tag())
        throw std::invalid_argument("containment: ambient mismatch");
    if (inner.dim() == 0) return 0.0;
    MatK resid = inner.basis_ - basis_ * (basis_.dagger() * inner.basis_);
    return resid.op_norm();
}

bool Subspace::contains(const Subspace& inner, double tol) const {
    return containment_residual(inner) <= tol;
}

Subspace Subspace::reference_complement() const {
    MatK ker = nullspace(basis_.dagger());
    return from_orthonormal(ker);
}

bool FlagPoint::nested(double tol) const {
    for (size_t i = 0; i + 1 < parts.size(); ++i)
        if (!parts[i + 1].contains(parts[i], tol)) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Isotropy, intersections, pi
// ---------------------------------------------------------------------------

double isotropy_residual(const Subspace& w, const FormSpec& b) {
    if (w.ambient() != b.dim())
        throw std::invalid_argument("isotropy: ambient mismatch");
    if (w.dim() == 0) return 0.0;
    return b.evaluate(w.basis(), w.basis()).norm() / b.gram().norm();
}

bool is_isotropic(const Subspace& w, const FormSpec& b, double tol) {
    return isotropy_residual(w, b) <= tol;
}

Subspace intersect(const Subspace& a, const Subspace& b, double tol, RankDecision* dec) {
    if (a.ambient() != b.ambient() || a.tag() != b.tag())
        throw std::invalid_argument("intersect: ambient mismatch");
    MatK eye = MatK::identity(a.tag(), a.ambient());
    MatK stacked = (eye - a.projector()).vcat(eye - b.projector());
    MatK ker = nullspace(stacked, tol, dec);
    return Subspace::from_orthonormal(ker);
}

std::pair<Subspace, Subspace> pi_project(const Subspace& w, RankDecision* dec_first,
                                         RankDecision* dec_second, double tol) {
    if (w.ambient() % 2)
        throw std::invalid_argument("pi_project expects a subspace of V + V");
    int n = w.ambient() / 2;
    const MatK& b = w.basis();
    MatK top = b.topRows(n), bot = b.bottomRows(n);

    MatK ker_bot = nullspace(bot, tol, dec_first);
    Subspace first = (ker_bot.cols() == 0)
                         ? Subspace::zero(w.tag(), n)
                         : Subspace::from_span((b * ker_bot).topRows(n), tol);

    MatK ker_top = nullspace(top, tol, dec_second);
    Subspace second = (ker_top.cols() == 0)
                          ? Subspace::zero(w.tag(), n)
                          : Subspace::from_span((b * ker_top).bottomRows(n), tol);
    return {first, second};
}

// ---------------------------------------------------------------------------
// Standard and random isotropic planes
// ---------------------------------------------------------------------------

namespace {

bool gram_is_standard(const FormSpec& b) {
    FormSpec ref = [&] {
        auto [p, q] = b.signature();
        switch (b.kind()) {
            case FormKind::Symmetric:
            case FormKind::Hermitian:
                return FormSpec::signature_form(b.tag(), b.kind(), p, q);
            case FormKind::Symplectic:
                return FormSpec::symplectic_form(b.tag(), b.dim() / 2);
            case FormKind::AntiHermitian:
                return FormSpec::o_star_form(b.dim());
        }
        throw std::logic_error("unreachable");
    }();
    return (ref.gram() - b.gram()).norm() <= 1e-12 * std::max(1.0, b.gram().norm());
}

}  // namespace

Subspace standard_isotropic(const FormSpec& b, int i) {
    if (i < 0 || i > b.rank())
        throw std::invalid_argument("isotropic dimension out of range 0..n");
    if (i == 0) return Subspace::zero(b.tag(), b.dim());
    if (!gram_is_standard(b)) {
        // Reduce to the standard Gram basis by congruence and map the plane
        // back; the image stays isotropic because the congruence is a form
        // isometry onto the standard model.
        Congruence c = congruence_to_standard(b);
        FormSpec std_form = [&] {
            switch (b.kind()) {
                case FormKind::Symmetric:
                case FormKind::Hermitian: {
                    int p = static_cast<int>(std::count(c.signs.begin(), c.signs.end(), 1));
                    return FormSpec::signature_form(b.tag(), b.kind(), p,
                                                    b.dim() - p);
                }
                case FormKind::Symplectic:
                    return FormSpec::symplectic_form(b.tag(), b.dim() / 2);
                case FormKind::AntiHermitian:
                    return FormSpec::o_star_form(b.dim());
            }
            throw std::logic_error("unreachable");
        }();
        Subspace plane = standard_isotropic(std_form, i);
        return Subspace::from_span(c.t * plane.basis());
    }

    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    MatK cols = MatK::zero(b.tag(), b.dim(), i);
    switch (b.kind()) {
        case FormKind::Symplectic:
            for (int j = 0; j < i; ++j) cols.set(j, j, {1, 0, 0, 0});
            break;
        case FormKind::AntiHermitian:
            for (int j = 0; j < i; ++j) {
                cols.set(2 * j, j, {inv_sqrt2, 0, 0, 0});
                cols.set(2 * j + 1, j, {0, inv_sqrt2, 0, 0});
            }
            break;
        case FormKind::Symmetric:
        case FormKind::Hermitian: {
            auto [p, q] = b.signature();
            int hyper = std::min({i, p, q});
            for (int j = 0; j < hyper; ++j) {
                cols.set(j, j, {inv_sqrt2, 0, 0, 0});
                cols.set(p + j, j, {inv_sqrt2, 0, 0, 0});
            }
            // Complex symmetric forms continue with same-sign pairs e_a + i e_b.
            int placed = hyper;
            int pos_next = hyper, neg_next = p + hyper;
            while (placed < i) {
                int a, c;
                if (pos_next + 1 < p) { a = pos_next; c = pos_next + 1; pos_next += 2; }
                else if (neg_next + 1 < b.dim()) { a = neg_next; c = neg_next + 1; neg_next += 2; }
                else throw std::invalid_argument("no isotropic plane of this dimension");
                cols.set(a, placed, {inv_sqrt2, 0, 0, 0});
                cols.set(c, placed, {0, inv_sqrt2, 0, 0});
                ++placed;
            }
            break;
        }
    }
    Subspace s = Subspace::from_span(cols);
    if (s.dim() != i) throw std::runtime_error("standard isotropic plane lost rank");
    return s;
}

Subspace random_isotropic(const FormSpec& b, int i, uint64_t seed) {
    Subspace std_plane = standard_isotropic(b, i);
    if (i == 0) return std_plane;
    std::mt19937_64 rng(seed);
    MatK g = b.random_automorphism(rng, 0.8);
    return Subspace::from_span(g * std_plane.basis());
}

// ---------------------------------------------------------------------------
// Induced forms
// ---------------------------------------------------------------------------

InducedForm induced_form(const FormSpec& b, const Subspace& v_i, double tol) {
    if (v_i.ambient() != b.dim())
        throw std::invalid_argument("induced_form: ambient mismatch");
    if (!is_isotropic(v_i, b, 10 * tol))
        throw std::invalid_argument("induced_form requires an isotropic subspace");
    int i = v_i.dim();
    int m = b.dim() - 2 * i;
    if (m < 0) throw std::invalid_argument("subspace too large to be isotropic");

    if (i == 0)
        return {b, MatK::identity(b.tag(), b.dim())};
    if (m == 0)
        return {FormSpec::from_gram(b.tag(), b.kind(), MatK::zero(b.tag(), 0, 0)),
                MatK::zero(b.tag(), b.dim(), 0)};

    // V_i^{perp_b}: kernel of the pairing rows against V_i.
    MatK rows = is_bilinear(b.kind()) ? v_i.basis().transpose() * b.gram()
                                      : v_i.basis().dagger() * b.gram();
    MatK perp = nullspace(rows, tol);
    // A complement of V_i inside the perp, for the reference product.
    MatK resid = perp - v_i.basis() * (v_i.basis().dagger() * perp);
    MatK comp = orthonormalize(resid, tol);
    if (comp.cols() != m)
        throw std::runtime_error("induced_form: complement has unexpected dimension");
    MatK gram_c = is_bilinear(b.kind()) ? comp.transpose() * b.gram() * comp
                                        : comp.dagger() * b.gram() * comp;
    return {FormSpec::from_gram(b.tag(), b.kind(), gram_c, tol), comp};
}

// ---------------------------------------------------------------------------
// Witt frames, congruence, transporter
// ---------------------------------------------------------------------------

namespace {

// Sign of b(v, u) when b(u, v) = 1.
double pairing_flip_sign(FormKind kind) {
    return (kind == FormKind::Symmetric || kind == FormKind::Hermitian) ? 1.0 : -1.0;
}

MatK quat_scalar(Scalar tag, const Quaternion& q) {
    MatK m = MatK::zero(tag, 1, 1);
    m.set(0, 0, q);
    return m;
}

// v minus its components in the hyperbolic planes span{u_t, w_t}.
MatK project_off_planes(const FormSpec& b, const std::vector<MatK>& us,
                        const std::vector<MatK>& ws, const MatK& v) {
    double eps = pairing_flip_sign(b.kind());
    MatK out = v;
    for (size_t t = 0; t < us.size(); ++t) {
        Quaternion x = scalar_of(b.evaluate(ws[t], out)) * eps;
        Quaternion y = scalar_of(b.evaluate(us[t], out));
        out = out - us[t] * quat_scalar(b.tag(), x) - ws[t] * quat_scalar(b.tag(), y);
    }
    return out;
}

}  // namespace

WittFrame witt_frame(const FormSpec& b, const Subspace& s, double tol) {
    if (!is_isotropic(s, b, 10 * tol))
        throw std::invalid_argument("witt_frame requires an isotropic subspace");
    int i = s.dim(), n = b.dim();
    std::vector<MatK> cols;
    for (int j = 0; j < i; ++j) cols.push_back(col_of(s.basis(), j));

    std::vector<MatK> us, ws;
    for (int a = 0; a < i; ++a) {
        MatK u = project_off_planes(b, us, ws, cols[a]);
        double nu = u.norm();
        if (nu <= tol) throw std::runtime_error("witt_frame: degenerate isotropic basis");
        u = u * (1.0 / nu);

        // Dual search over the projected coordinate axes.
        MatK best;
        Quaternion best_val;
        double best_mag = 0.0;
        for (int r = 0; r < n; ++r) {
            MatK e = MatK::zero(b.tag(), n, 1);
            e.set(r, 0, {1, 0, 0, 0});
            MatK w = project_off_planes(b, us, ws, e);
            Quaternion val = scalar_of(b.evaluate(u, w));
            if (val.norm() > best_mag) { best_mag = val.norm(); best = w; best_val = val; }
        }
        if (best_mag <= tol * b.gram().norm())
            throw std::runtime_error("witt_frame: no dual direction found");
        MatK w = best * quat_scalar(b.tag(), best_val.inv());  // b(u, w) = 1

        Quaternion bww = scalar_of(b.evaluate(w, w));
        Quaternion corr;
        switch (b.kind()) {
            case FormKind::Symmetric:
            case FormKind::Hermitian: corr = bww * 0.5; break;
            case FormKind::Symplectic: corr = {0, 0, 0, 0}; break;
            case FormKind::AntiHermitian: corr = bww * -0.5; break;
        }
        w = w - u * quat_scalar(b.tag(), corr);

        us.push_back(u);
        ws.push_back(w);
        for (int t = a + 1; t < i; ++t)
            cols[t] = project_off_planes(b, {us.back()}, {ws.back()}, cols[t]);
    }

    WittFrame frame;
    frame.u = MatK::zero(b.tag(), n, i);
    frame.v = MatK::zero(b.tag(), n, i);
    for (int a = 0; a < i; ++a)
        for (int r = 0; r < n; ++r) {
            frame.u.set(r, a, us[a].at(r, 0));
            frame.v.set(r, a, ws[a].at(r, 0));
        }

    int m = n - 2 * i;
    if (m > 0) {
        MatK pair_block = frame.u.hcat(frame.v);
        MatK rows = is_bilinear(b.kind()) ? pair_block.transpose() * b.gram()
                                          : pair_block.dagger() * b.gram();
        frame.c = nullspace(rows, tol);
        if (frame.c.cols() != m)
            throw std::runtime_error("witt_frame: orthocomplement has wrong dimension");
        frame.gram_c = is_bilinear(b.kind()) ? frame.c.transpose() * b.gram() * frame.c
                                             : frame.c.dagger() * b.gram() * frame.c;
    } else {
        frame.c = MatK::zero(b.tag(), n, 0);
        frame.gram_c = MatK::zero(b.tag(), 0, 0);
    }
    return frame;
}

namespace {

// Unit quaternion q with q u conj(q) = j for a unit imaginary u.
Quaternion rotate_imag_to_j(const Quaternion& u) {
    Quaternion j{0, 0, 1, 0};
    Quaternion vu = j * u;  // = -v cross/dot structure; 1 - j u below
    Quaternion q{1 - vu.w, -vu.x, -vu.y, -vu.z};
    double nq = q.norm();
    if (nq < 1e-8) {
        // u = -j: rotate by pi around i.
        return {0, 1, 0, 0};
    }
    return q * (1.0 / nq);
}

}  // namespace

Congruence congruence_to_standard(const FormSpec& b, double tol) {
    int n = b.dim();
    Scalar tag = b.tag();
    Congruence out;
    if (n == 0) { out.t = MatK::zero(tag, 0, 0); return out; }

    if (b.kind() == FormKind::Symplectic) {
        // Darboux basis: s(T) G T = [[0, I], [-I, 0]].
        std::vector<MatK> us, ws;
        int m = n / 2;
        for (int a = 0; a < m; ++a) {
            MatK u;
            double best = -1.0;
            for (int r = 0; r < n; ++r) {
                MatK e = MatK::zero(tag, n, 1);
                e.set(r, 0, {1, 0, 0, 0});
                MatK cand = project_off_planes(b, us, ws, e);
                if (cand.norm() > best) { best = cand.norm(); u = cand; }
            }
            if (best <= tol) throw std::runtime_error("darboux: degenerate form");
            u = u * (1.0 / best);
            MatK w;
            Quaternion val;
            double mag = 0.0;
            for (int r = 0; r < n; ++r) {
                MatK e = MatK::zero(tag, n, 1);
                e.set(r, 0, {1, 0, 0, 0});
                MatK cand = project_off_planes(b, us, ws, e);
                Quaternion v = scalar_of(b.evaluate(u, cand));
                if (v.norm() > mag) { mag = v.norm(); w = cand; val = v; }
            }
            if (mag <= tol) throw std::runtime_error("darboux: no symplectic partner");
            w = w * quat_scalar(tag, val.inv());
            us.push_back(u);
            ws.push_back(w);
        }
        out.t = MatK::zero(tag, n, n);
        for (int a = 0; a < m; ++a)
            for (int r = 0; r < n; ++r) {
                out.t.set(r, a, us[a].at(r, 0));
                out.t.set(r, m + a, ws[a].at(r, 0));
            }
        return out;
    }

    // Symmetric / Hermitian / AntiHermitian: pivoted b-Gram-Schmidt.
    std::vector<MatK> basis;   // b-orthogonal, b(w,w) normalized
    std::vector<Quaternion> diag_vals;
    std::vector<int> signs;
    auto project = [&](MatK v) {
        for (size_t j = 0; j < basis.size(); ++j) {
            Quaternion coef = diag_vals[j].inv() * scalar_of(b.evaluate(basis[j], v));
            // b(w_j, v') = 0 requires subtracting w_j * (b(w_j,w_j)^{-1} b(w_j,v))
            v = v - basis[j] * quat_scalar(tag, coef);
        }
        return v;
    };

    for (int step = 0; step < n; ++step) {
        // Candidates: projected axes, then pairwise combinations to escape
        // zero diagonals (hyperbolic blocks).
        MatK best;
        Quaternion best_val;
        double best_mag = -1.0;
        std::vector<MatK> axes;
        for (int r = 0; r < n; ++r) {
            MatK e = MatK::zero(tag, n, 1);
            e.set(r, 0, {1, 0, 0, 0});
            axes.push_back(project(e));
        }
        auto consider = [&](const MatK& v) {
            if (v.norm() < 1e-12) return;
            Quaternion c = scalar_of(b.evaluate(v, v));
            double mag = c.norm() / (v.norm() * v.norm());
            if (mag > best_mag) { best_mag = mag; best = v; best_val = c; }
        };
        for (const auto& v : axes) consider(v);
        if (best_mag < tol) {
            std::vector<Quaternion> units = {{1, 0, 0, 0}};
            if (tag != Scalar::R) units.push_back({0, 1, 0, 0});
            if (tag == Scalar::H) {
                units.push_back({0, 0, 1, 0});
                units.push_back({0, 0, 0, 1});
            }
            for (size_t r = 0; r < axes.size() && best_mag < tol; ++r)
                for (size_t s2 = r + 1; s2 < axes.size(); ++s2)
                    for (const auto& q : units)
                        consider(axes[r] + axes[s2] * quat_scalar(tag, q));
        }
        if (best_mag < tol)
            throw std::runtime_error("congruence: no anisotropic direction (degenerate form)");

        MatK w = best;
        Quaternion c = best_val;
        if (b.kind() == FormKind::AntiHermitian) {
            // c is purely imaginary; rotate it onto j and scale to unit.
            Quaternion u = c * (1.0 / c.norm());
            Quaternion q = rotate_imag_to_j(u);
            w = w * quat_scalar(tag, q.conj() * (1.0 / std::sqrt(c.norm())));
            basis.push_back(w);
            diag_vals.push_back({0, 0, 1, 0});
        } else if (b.kind() == FormKind::Symmetric && tag == Scalar::C) {
            cplx cc = c.part_a();
            cplx root = std::sqrt(cc);
            w = w * quat_scalar(tag, Quaternion::from_parts(1.0 / root, 0));
            basis.push_back(w);
            diag_vals.push_back({1, 0, 0, 0});
            signs.push_back(1);
        } else {
            // real diagonal (symmetric over R, Hermitian over C/H)
            double cr = c.w;
            int sign = (cr >= 0) ? 1 : -1;
            w = w * (1.0 / std::sqrt(std::abs(cr)));
            basis.push_back(w);
            diag_vals.push_back({double(sign), 0, 0, 0});
            signs.push_back(sign);
        }
    }

    // Sort so positive diagonal entries come first.
    std::vector<int> order(n);
    for (int k = 0; k < n; ++k) order[k] = k;
    if (!signs.empty())
        std::stable_sort(order.begin(), order.end(),
                         [&](int a, int c2) { return signs[a] > signs[c2]; });
    out.t = MatK::zero(tag, n, n);
    for (int k = 0; k < n; ++k) {
        for (int r = 0; r < n; ++r) out.t.set(r, k, basis[order[k]].at(r, 0));
        if (!signs.empty()) out.signs.push_back(signs[order[k]]);
    }
    return out;
}

MatK isotropic_transporter(const FormSpec& b, const Subspace& from, const Subspace& to,
                           double tol) {
    if (from.dim() != to.dim())
        throw std::invalid_argument("transporter requires equal dimensions");
    if (from.dim() == 0) return MatK::identity(b.tag(), b.dim());

    WittFrame f = witt_frame(b, from, tol);
    WittFrame g = witt_frame(b, to, tol);

    MatK from_mat = f.u.hcat(f.v);
    MatK to_mat = g.u.hcat(g.v);
    if (f.c.cols() > 0) {
        FormSpec bf = FormSpec::from_gram(b.tag(), b.kind(), f.gram_c, tol);
        FormSpec bg = FormSpec::from_gram(b.tag(), b.kind(), g.gram_c, tol);
        Congruence cf = congruence_to_standard(bf, tol);
        Congruence cg = congruence_to_standard(bg, tol);
        if (cf.signs != cg.signs)
            throw std::runtime_error("transporter: complements are not isometric");
        from_mat = from_mat.hcat(f.c * cf.t);
        to_mat = to_mat.hcat(g.c * cg.t);
    }
    MatK t = to_mat * from_mat.inverse();
    if (b.automorphism_residual(t) > 1e-6)
        throw std::runtime_error("transporter drifted off the group");
    return t;
}

}  // namespace isograss
