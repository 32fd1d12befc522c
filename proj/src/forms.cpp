#include "isograss/forms.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace isograss {

std::string form_kind_name(FormKind k) {
    switch (k) {
        case FormKind::Symmetric: return "symmetric";
        case FormKind::Hermitian: return "hermitian";
        case FormKind::Symplectic: return "symplectic";
        case FormKind::AntiHermitian: return "anti_hermitian";
    }
    return "?";
}

FormKind form_kind_from_name(const std::string& name) {
    if (name == "symmetric") return FormKind::Symmetric;
    if (name == "hermitian") return FormKind::Hermitian;
    if (name == "symplectic") return FormKind::Symplectic;
    if (name == "anti_hermitian") return FormKind::AntiHermitian;
    throw std::invalid_argument("unknown form kind: " + name);
}

std::string root_type_name(RootType t) {
    switch (t) {
        case RootType::A: return "A";
        case RootType::B: return "B";
        case RootType::C: return "C";
        case RootType::BC: return "BC";
        case RootType::D: return "D";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// RootData
// ---------------------------------------------------------------------------

int RootData::num_simple() const {
    if (type == RootType::A) return rank - 1;
    if (type == RootType::D && rank < 2) return 0;  // O(1,1) is abelian
    return rank;
}

static void check_root_index(const RootData& rd, int index, const WeylVec& v) {
    if (index < 1 || index > rd.num_simple())
        throw std::out_of_range("simple-root index out of range");
    if (v.size() != rd.rank)
        throw std::invalid_argument("Weyl vector has wrong length");
}

double RootData::eval_root(int index, const WeylVec& v) const {
    check_root_index(*this, index, v);
    int n = rank;
    // alpha_i = eps_i - eps_{i+1} below the last node; for type A that is all
    // of them (num_simple = n - 1).
    if (index < n) return v(index - 1) - v(index);
    switch (type) {
        case RootType::A: throw std::logic_error("unreachable");
        case RootType::B:
        case RootType::BC: return v(n - 1);
        case RootType::C: return 2.0 * v(n - 1);
        case RootType::D: return v(n - 2) + v(n - 1);
    }
    throw std::logic_error("unreachable");
}

double RootData::eval_weight(int index, const WeylVec& v) const {
    check_root_index(*this, index, v);
    int n = rank;
    double partial = 0;
    for (int j = 0; j < index; ++j) partial += v(j);
    switch (type) {
        case RootType::A: {
            double mean = v.sum() / n;
            return partial - index * mean;
        }
        case RootType::C:
            return partial;
        case RootType::B:
        case RootType::BC:
            return (index < n) ? partial : 0.5 * v.sum();
        case RootType::D:
            if (index <= n - 2) return partial;
            if (index == n - 1) return 0.5 * (v.head(n - 1).sum() - v(n - 1));
            return 0.5 * v.sum();
    }
    throw std::logic_error("unreachable");
}

WeylVec RootData::opposition(const WeylVec& v) const {
    if (v.size() != rank) throw std::invalid_argument("Weyl vector has wrong length");
    if (type == RootType::A) {
        WeylVec w(rank);
        for (int i = 0; i < rank; ++i) w(i) = -v(rank - 1 - i);
        return w;
    }
    return v;
}

int RootData::opposition_index(int index) const {
    if (index < 1 || index > num_simple())
        throw std::out_of_range("simple-root index out of range");
    if (type == RootType::A) return num_simple() + 1 - index;
    if (type == RootType::D && rank % 2 == 1 && rank >= 2) {
        if (index == rank - 1) return rank;
        if (index == rank) return rank - 1;
    }
    return index;
}

bool RootData::in_chamber(const WeylVec& v, double tol) const {
    if (v.size() != rank) return false;
    for (int i = 1; i <= num_simple(); ++i)
        if (eval_root(i, v) < -tol) return false;
    return true;
}

// ---------------------------------------------------------------------------
// FormSpec
// ---------------------------------------------------------------------------

void FormSpec::classify() {
    switch (kind_) {
        case FormKind::Symmetric:
            if (tag_ == Scalar::R) {
                n_ = std::min(p_, q_);
                root_ = (p_ == q_) ? RootType::D : RootType::B;
            } else {  // O(N, C): every complex symmetric form is equivalent
                n_ = N_ / 2;
                root_ = (N_ % 2 == 0) ? RootType::D : RootType::B;
            }
            break;
        case FormKind::Hermitian:
            n_ = std::min(p_, q_);
            root_ = (p_ == q_) ? RootType::C : RootType::BC;
            break;
        case FormKind::Symplectic:
            n_ = N_ / 2;
            root_ = RootType::C;
            break;
        case FormKind::AntiHermitian:  // O*(2m) on H^m
            n_ = N_ / 2;
            root_ = (N_ % 2 == 0) ? RootType::C : RootType::BC;
            break;
    }
}

FormSpec FormSpec::signature_form(Scalar tag, FormKind kind, int p, int q) {
    if (p < 0 || q < 0 || p + q < 1)
        throw std::invalid_argument("signature form needs p + q >= 1");
    if (kind == FormKind::Hermitian && tag == Scalar::R)
        kind = FormKind::Symmetric;  // coincide over R
    if (kind == FormKind::Symmetric && tag == Scalar::H)
        throw std::invalid_argument("symmetric bilinear forms over H are out of scope");
    if (kind != FormKind::Symmetric && kind != FormKind::Hermitian)
        throw std::invalid_argument("signature_form expects symmetric or hermitian kind");

    FormSpec f;
    f.tag_ = tag;
    f.kind_ = kind;
    f.N_ = p + q;
    f.p_ = p;
    f.q_ = q;
    Eigen::MatrixXd g = Eigen::MatrixXd::Identity(f.N_, f.N_);
    for (int i = p; i < f.N_; ++i) g(i, i) = -1.0;
    switch (tag) {
        case Scalar::R: f.gram_ = MatK::from_real(g); break;
        case Scalar::C: f.gram_ = MatK::from_complex(g.cast<cplx>()); break;
        case Scalar::H:
            f.gram_ = MatK::from_quat_parts(g.cast<cplx>(),
                                            Eigen::MatrixXcd::Zero(f.N_, f.N_));
            break;
    }
    f.classify();
    return f;
}

FormSpec FormSpec::symplectic_form(Scalar tag, int m) {
    if (m < 1) throw std::invalid_argument("symplectic form needs m >= 1");
    if (tag == Scalar::H)
        throw std::invalid_argument(
            "symplectic kind over H is not one of the standard presentations");
    FormSpec f;
    f.tag_ = tag;
    f.kind_ = FormKind::Symplectic;
    f.N_ = 2 * m;
    Eigen::MatrixXd g = Eigen::MatrixXd::Zero(f.N_, f.N_);
    g.topRightCorner(m, m) = Eigen::MatrixXd::Identity(m, m);
    g.bottomLeftCorner(m, m) = -Eigen::MatrixXd::Identity(m, m);
    f.gram_ = (tag == Scalar::R) ? MatK::from_real(g) : MatK::from_complex(g.cast<cplx>());
    f.classify();
    return f;
}

FormSpec FormSpec::o_star_form(int m) {
    if (m < 1) throw std::invalid_argument("o_star form needs m >= 1");
    FormSpec f;
    f.tag_ = Scalar::H;
    f.kind_ = FormKind::AntiHermitian;
    f.N_ = m;
    // Gram = j I_m: part_a = 0, part_b = I.
    f.gram_ = MatK::from_quat_parts(Eigen::MatrixXcd::Zero(m, m),
                                    Eigen::MatrixXcd::Identity(m, m));
    f.classify();
    return f;
}

FormSpec FormSpec::make(Scalar tag, FormKind kind, int p_or_m, int q) {
    if (kind == FormKind::Symplectic) return symplectic_form(tag, p_or_m);
    if (kind == FormKind::AntiHermitian) {
        if (tag != Scalar::H)
            throw std::invalid_argument("anti_hermitian kind is the O*(2m) family over H");
        return o_star_form(p_or_m);
    }
    return signature_form(tag, kind, p_or_m, q);
}

namespace {

// Signature of a Hermitian matrix given over K; quaternionic multiplicities
// are halved.
std::pair<int, int> hermitian_signature(const MatK& g, double tol) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(
        0.5 * (g.complexified() + g.complexified().adjoint()));
    const auto& ev = es.eigenvalues();
    double top = std::max(ev.cwiseAbs().maxCoeff(), 1e-300);
    int pos = 0, neg = 0;
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
        if (ev(i) > tol * top) ++pos;
        else if (ev(i) < -tol * top) ++neg;
        else throw std::invalid_argument("degenerate Gram matrix (eigenvalue near zero)");
    }
    if (g.tag() == Scalar::H) { pos /= 2; neg /= 2; }
    return {pos, neg};
}

}  // namespace

FormSpec FormSpec::from_gram(Scalar tag, FormKind kind, const MatK& gram, double rank_tol) {
    if (!gram.is_square()) throw std::invalid_argument("Gram matrix must be square");
    FormSpec f;
    f.tag_ = tag;
    f.kind_ = kind;
    f.gram_ = gram;
    f.N_ = gram.rows();
    if (f.N_ == 0) {  // induced form of a maximal isotropic subspace
        f.p_ = f.q_ = 0;
        f.classify();
        return f;
    }

    MatK flipped = is_bilinear(kind) ? gram.transpose() : gram.dagger();
    double sym_sign = (kind == FormKind::Symmetric || kind == FormKind::Hermitian) ? 1.0 : -1.0;
    double resid = (gram - flipped * sym_sign).norm();
    if (resid > rank_tol * std::max(1.0, gram.norm()))
        throw std::invalid_argument("Gram matrix does not match the declared kind");

    auto sv = singular_values(gram);
    if (sv.back() <= rank_tol * sv.front())
        throw std::invalid_argument("Gram matrix is numerically degenerate");

    if (kind == FormKind::Hermitian || (kind == FormKind::Symmetric && tag == Scalar::R)) {
        auto [p, q] = hermitian_signature(gram, rank_tol);
        f.p_ = p;
        f.q_ = q;
    }
    f.classify();
    return f;
}

bool FormSpec::has_unitary_gram(double tol) const {
    MatK ggd = gram_.dagger() * gram_;
    return (ggd - MatK::identity(tag_, N_)).norm() <= tol * std::sqrt(double(N_));
}

std::string FormSpec::family_name() const {
    std::ostringstream s;
    switch (kind_) {
        case FormKind::Symmetric:
            if (tag_ == Scalar::R) s << "O(" << p_ << "," << q_ << ")";
            else s << "O(" << N_ << ",C)";
            break;
        case FormKind::Hermitian:
            s << (tag_ == Scalar::C ? "U(" : "Sp(") << p_ << "," << q_ << ")";
            break;
        case FormKind::Symplectic:
            s << "Sp(" << N_ << "," << (tag_ == Scalar::R ? "R" : "C") << ")";
            break;
        case FormKind::AntiHermitian:
            s << "O*(" << 2 * N_ << ")";
            break;
    }
    return s.str();
}

MatK FormSpec::evaluate(const MatK& x, const MatK& y) const {
    if (x.rows() != N_ || y.rows() != N_)
        throw std::invalid_argument("form arguments have wrong ambient dimension");
    MatK left = is_bilinear(kind_) ? x.transpose() : x.dagger();
    return left * gram_ * y;
}

double FormSpec::automorphism_residual(const MatK& g) const {
    if (g.rows() != N_ || g.cols() != N_)
        throw std::invalid_argument("matrix size does not match the form");
    MatK left = is_bilinear(kind_) ? g.transpose() : g.dagger();
    return (left * gram_ * g - gram_).norm() / gram_.norm();
}

bool FormSpec::is_automorphism(const MatK& g, double tol) const {
    return automorphism_residual(g) <= tol;
}

FormSpec FormSpec::direct_sum_minus() const {
    FormSpec f;
    f.tag_ = tag_;
    f.kind_ = kind_;
    f.N_ = 2 * N_;
    f.gram_ = MatK::block_diag(gram_, -gram_);
    if (p_ >= 0) { f.p_ = p_ + q_; f.q_ = q_ + p_; }
    if (kind_ == FormKind::Symmetric && tag_ == Scalar::C) { f.p_ = f.N_; f.q_ = 0; }
    f.classify();
    return f;
}

int FormSpec::group_dim_real() const {
    int d = N_;
    switch (kind_) {
        case FormKind::Symmetric:
            return (tag_ == Scalar::R) ? d * (d - 1) / 2 : d * (d - 1);
        case FormKind::Hermitian:
            return (tag_ == Scalar::C) ? d * d : d * (2 * d + 1);
        case FormKind::Symplectic:
            return (tag_ == Scalar::R) ? d * (d + 1) / 2 : d * (d + 1);
        case FormKind::AntiHermitian:
            return d * (2 * d - 1);
    }
    return 0;
}

// --- Lie algebra as a real nullspace ---------------------------------------

namespace {

int real_coords(Scalar tag, int n) { return n * n * dim_r(tag); }

MatK coord_to_matk(Scalar tag, int n, int idx) {
    MatK m = MatK::zero(tag, n, n);
    int per = dim_r(tag);
    int entry = idx / per, comp = idx % per;
    int r = entry / n, c = entry % n;
    Quaternion q;
    (comp == 0 ? q.w : comp == 1 ? q.x : comp == 2 ? q.y : q.z) = 1.0;
    m.set(r, c, q);
    return m;
}

Eigen::VectorXd matk_to_realvec(const MatK& m) {
    int n = m.rows(), per = dim_r(m.tag());
    Eigen::VectorXd v(n * m.cols() * per);
    int k = 0;
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < m.cols(); ++c) {
            Quaternion q = m.at(r, c);
            v(k++) = q.w;
            if (per > 1) v(k++) = q.x;
            if (per > 2) { v(k++) = q.y; v(k++) = q.z; }
        }
    return v;
}

}  // namespace

const std::vector<MatK>& FormSpec::lie_algebra_basis() const {
    if (!lie_basis_.empty()) return lie_basis_;
    int d = real_coords(tag_, N_);
    Eigen::MatrixXd op(d, d);
    for (int idx = 0; idx < d; ++idx) {
        MatK e = coord_to_matk(tag_, N_, idx);
        MatK left = is_bilinear(kind_) ? e.transpose() : e.dagger();
        op.col(idx) = matk_to_realvec(left * gram_ + gram_ * e);
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(op, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    double thr = 1e-10 * std::max(sv(0), 1.0);
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
        if (sv(i) > thr) continue;
        MatK x = MatK::zero(tag_, N_, N_);
        for (int idx = 0; idx < d; ++idx) {
            double c = svd.matrixV()(idx, i);
            if (c == 0.0) continue;
            x = x + coord_to_matk(tag_, N_, idx) * c;
        }
        lie_basis_.push_back(x);
    }
    return lie_basis_;
}

MatK FormSpec::random_lie_element(std::mt19937_64& rng, double scale_sym,
                                  double scale_skew) const {
    const auto& basis = lie_algebra_basis();
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    MatK x = MatK::zero(tag_, N_, N_);
    for (const auto& e : basis) x = x + e * u(rng);
    MatK sym = (x + x.dagger()) * 0.5;
    MatK skew = (x - x.dagger()) * 0.5;
    MatK out = MatK::zero(tag_, N_, N_);
    if (sym.norm() > 1e-14 && scale_sym > 0) out = out + sym * (scale_sym / sym.norm());
    if (skew.norm() > 1e-14 && scale_skew > 0) out = out + skew * (scale_skew / skew.norm());
    return out;
}

MatK FormSpec::random_automorphism(std::mt19937_64& rng, double scale) const {
    const auto& basis = lie_algebra_basis();
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    MatK x = MatK::zero(tag_, N_, N_);
    for (const auto& e : basis) x = x + e * u(rng);
    double n = x.norm();
    if (n > 1e-14) x = x * (scale / n);
    return mat_exp(x);
}

MatK FormSpec::random_compact(std::mt19937_64& rng, double scale) const {
    if (!has_unitary_gram())
        throw std::invalid_argument("compact sampling requires a unitary Gram matrix");
    for (int attempts = 0; attempts < 16; ++attempts) {
        MatK x = random_lie_element(rng, 0.0, scale);
        if (x.norm() > 1e-10) return mat_exp(x);
    }
    return MatK::identity(tag_, N_);
}

std::string GLGroup::family_name() const {
    std::ostringstream s;
    s << "GL(" << N << "," << scalar_name(tag) << ")";
    return s.str();
}

}  // namespace isograss
