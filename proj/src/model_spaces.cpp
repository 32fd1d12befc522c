#include "isograss/model_spaces.hpp"

#include <cmath>

namespace isograss {

namespace {

FormKind signature_kind(Scalar tag) {
    return tag == Scalar::R ? FormKind::Symmetric : FormKind::Hermitian;
}

}  // namespace

FormSpec pseudo_hyperbolic_model_form(Scalar tag, int p, int q) {
    if (p <= q || q < 0)
        throw std::invalid_argument("pseudo-hyperbolic model needs p > q >= 0");
    return FormSpec::signature_form(tag, signature_kind(tag), p, q + 1);
}

FormSpec pseudo_hyperbolic_ambient_form(Scalar tag, int p, int q) {
    int n = p + q + 2;
    MatK gram = MatK::zero(tag, n, n);
    gram.set(0, 0, {1, 0, 0, 0});
    for (int r = 0; r < p; ++r) gram.set(1 + r, 1 + r, {1, 0, 0, 0});
    for (int r = 0; r < q + 1; ++r) gram.set(1 + p + r, 1 + p + r, {-1, 0, 0, 0});
    return FormSpec::from_gram(tag, signature_kind(tag), gram);
}

Subspace embed_hpq(const MatK& x, Scalar tag, int p, int q, double tol) {
    int n = p + q + 1;
    if (x.rows() != n || x.cols() != 1 || x.tag() != tag)
        throw std::invalid_argument("embed_hpq: point has wrong shape");
    FormSpec model = pseudo_hyperbolic_model_form(tag, p, q);
    Quaternion val = model.evaluate(x, x).at(0, 0);
    if (std::abs(val.w + 1.0) + std::abs(val.x) + std::abs(val.y) + std::abs(val.z) > tol)
        throw std::invalid_argument("embed_hpq: point is off the hypersurface b(x,x) = -1");
    MatK v = MatK::zero(tag, n + 1, 1);
    v.set(0, 0, {1, 0, 0, 0});
    for (int r = 0; r < n; ++r) v.set(1 + r, 0, x.at(r, 0));
    return Subspace::from_span(v);
}

bool is_boundary(const Subspace& line, Scalar tag, int p, int q, double tol) {
    int n = p + q + 2;
    if (line.ambient() != n || line.dim() != 1)
        throw std::invalid_argument("is_boundary expects a line of the ambient space");
    FormSpec ambient = pseudo_hyperbolic_ambient_form(tag, p, q);
    if (isotropy_residual(line, ambient) > 100 * tol)
        throw std::invalid_argument("is_boundary expects an isotropic line");
    return line.basis().at(0, 0).norm() <= tol;
}

MatK unembed_hpq(const Subspace& line, Scalar tag, int p, int q, double tol) {
    if (is_boundary(line, tag, p, q))
        throw std::domain_error("unembed_hpq: boundary line has no hypersurface point");
    int n = p + q + 1;
    Quaternion lead = line.basis().at(0, 0);
    MatK scaled = line.basis() * [&] {
        MatK s = MatK::zero(tag, 1, 1);
        s.set(0, 0, lead.inv());
        return s;
    }();
    MatK x = scaled.block(1, 0, n, 1);
    Quaternion val = pseudo_hyperbolic_model_form(tag, p, q).evaluate(x, x).at(0, 0);
    if (std::abs(val.w + 1.0) + std::abs(val.x) + std::abs(val.y) + std::abs(val.z) > tol)
        throw std::runtime_error("unembed_hpq: recovered point left the hypersurface");
    return x;
}

// ---------------------------------------------------------------------------
// Orbit representatives
// ---------------------------------------------------------------------------

namespace {

// Real-linear stabilizer dimension: basis elements X of a real Lie algebra
// acting complex-linearly on the ambient, constrained by (I - P) X B = 0.
std::pair<int, double> stabilizer_dimension(const std::vector<MatK>& lie_basis,
                                            const Subspace& w) {
    Eigen::MatrixXcd b = w.basis().complexified();
    Eigen::MatrixXcd p = w.projector().complexified();
    Eigen::MatrixXcd residual_op =
        Eigen::MatrixXcd::Identity(p.rows(), p.cols()) - p;
    Eigen::MatrixXd op(2 * residual_op.rows() * b.cols(),
                       static_cast<int>(lie_basis.size()));
    for (size_t j = 0; j < lie_basis.size(); ++j) {
        Eigen::MatrixXcd xc = lie_basis[j].complexified();
        Eigen::MatrixXcd r = residual_op * (xc * b);
        for (Eigen::Index k = 0; k < r.size(); ++k) {
            op(2 * k, static_cast<int>(j)) = r.data()[k].real();
            op(2 * k + 1, static_cast<int>(j)) = r.data()[k].imag();
        }
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(op);
    const auto& sv = svd.singularValues();
    double thr = 1e-8 * std::max(sv(0), 1e-300);
    int rank = 0;
    for (Eigen::Index k = 0; k < sv.size(); ++k)
        if (sv(k) > thr) ++rank;
    int nullity = static_cast<int>(lie_basis.size()) - rank;
    double margin = std::numeric_limits<double>::infinity();
    if (rank >= 1 && rank < sv.size() && sv(rank) > 0) margin = sv(rank - 1) / sv(rank);
    return {nullity, margin};
}

// dim_R of the real points of a complex subspace: realify and intersect with
// the real axis subspace of C^n = R^{2n}.
int real_intersection_dim(const Subspace& w) {
    int n = w.ambient(), k = w.dim();
    Eigen::MatrixXcd b = w.basis().complex();
    // columns B_j and i B_j, realified as (Re; Im)
    Eigen::MatrixXd real_basis(2 * n, 2 * k);
    real_basis.topLeftCorner(n, k) = b.real();
    real_basis.bottomLeftCorner(n, k) = b.imag();
    real_basis.topRightCorner(n, k) = -b.imag();
    real_basis.bottomRightCorner(n, k) = b.real();
    Subspace w_real = Subspace::from_span(MatK::from_real(real_basis));
    Eigen::MatrixXd axis = Eigen::MatrixXd::Zero(2 * n, n);
    axis.topRows(n) = Eigen::MatrixXd::Identity(n, n);
    Subspace real_axis = Subspace::from_orthonormal(MatK::from_real(axis));
    return intersect(w_real, real_axis).dim();
}

}  // namespace

OrbitRepReport orbit_rep_case_iv(int p, int q) {
    if (p < 1 || q < 1) throw std::invalid_argument("case (iv) needs p, q >= 1");
    int n = 2 * (p + q);
    // Complex structure on R^{2p+2q} preserving b^{2p,2q}: rotation blocks
    // inside each sign block.
    Eigen::MatrixXd i_mat = Eigen::MatrixXd::Zero(n, n);
    for (int t = 0; t < p + q; ++t) {
        i_mat(2 * t, 2 * t + 1) = -1;
        i_mat(2 * t + 1, 2 * t) = 1;
    }
    FormSpec ambient = FormSpec::signature_form(Scalar::C, FormKind::Symmetric, 2 * p, 2 * q);
    FormSpec real_group = FormSpec::signature_form(Scalar::R, FormKind::Symmetric, 2 * p, 2 * q);

    Eigen::MatrixXcd span = Eigen::MatrixXcd::Identity(n, n) +
                            cplx(0, 1) * i_mat.cast<cplx>();
    OrbitRepReport report;
    report.point = Subspace::from_span(MatK::from_complex(span));
    if (report.point.dim() != p + q)
        throw std::runtime_error("case (iv) representative has wrong dimension");
    report.isotropy_residual = isotropy_residual(report.point, ambient);
    report.real_intersection_dim = real_intersection_dim(report.point);

    std::vector<MatK> basis_c;
    for (const auto& x : real_group.lie_algebra_basis())
        basis_c.push_back(MatK::from_complex(x.real().cast<cplx>()));
    auto [dim, margin] = stabilizer_dimension(basis_c, report.point);
    report.stabilizer_dim = dim;
    report.stabilizer_margin = margin;
    report.expected_stabilizer_dim = (p + q) * (p + q);  // dim_R U(p,q)
    return report;
}

OrbitRepReport orbit_rep_case_vi(int m, int p) {
    if (m < 1 || p < 0 || p > m) throw std::invalid_argument("case (vi) needs 0 <= p <= m");
    FormSpec ambient = FormSpec::symplectic_form(Scalar::C, m);
    FormSpec real_group = FormSpec::symplectic_form(Scalar::R, m);

    Eigen::MatrixXcd span = Eigen::MatrixXcd::Zero(2 * m, m);
    for (int k = 0; k < m; ++k) {
        span(k, k) = 1;
        span(m + k, k) = (k < p) ? cplx(0, -1) : cplx(0, 1);
    }
    OrbitRepReport report;
    report.point = Subspace::from_span(MatK::from_complex(span));
    if (report.point.dim() != m)
        throw std::runtime_error("case (vi) representative is not Lagrangian-dimensional");
    report.isotropy_residual = isotropy_residual(report.point, ambient);
    report.real_intersection_dim = real_intersection_dim(report.point);

    // Hermitian form h(v, w) = i omega(conj(v), w) restricted to the point.
    Eigen::MatrixXcd b = report.point.basis().complex();
    Eigen::MatrixXcd h = cplx(0, 1) * (b.conjugate().transpose() *
                                       ambient.gram().complex() * b);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (h + h.adjoint()));
    int pos = 0, neg = 0;
    double top = es.eigenvalues().cwiseAbs().maxCoeff();
    for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
        if (es.eigenvalues()(k) > tol::rank * top) ++pos;
        else if (es.eigenvalues()(k) < -tol::rank * top) ++neg;
        else throw std::runtime_error("case (vi): restricted form is degenerate");
    }
    report.restricted_signature = {pos, neg};

    std::vector<MatK> basis_c;
    for (const auto& x : real_group.lie_algebra_basis())
        basis_c.push_back(MatK::from_complex(x.real().cast<cplx>()));
    auto [dim, margin] = stabilizer_dimension(basis_c, report.point);
    report.stabilizer_dim = dim;
    report.stabilizer_margin = margin;
    report.expected_stabilizer_dim = m * m;  // dim_R U(p, m-p)
    return report;
}

}  // namespace isograss
