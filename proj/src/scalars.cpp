#include "isograss/scalars.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>

namespace isograss {

std::string scalar_name(Scalar s) {
    switch (s) {
        case Scalar::R: return "R";
        case Scalar::C: return "C";
        case Scalar::H: return "H";
    }
    return "?";
}

Scalar scalar_from_name(const std::string& name) {
    if (name == "R") return Scalar::R;
    if (name == "C") return Scalar::C;
    if (name == "H") return Scalar::H;
    throw std::invalid_argument("unknown scalar tag: " + name);
}

double Quaternion::norm() const { return std::sqrt(w * w + x * x + y * y + z * z); }

Quaternion Quaternion::inv() const {
    double n2 = w * w + x * x + y * y + z * z;
    if (n2 == 0.0) throw std::domain_error("inverse of zero quaternion");
    Quaternion c = conj();
    return {c.w / n2, c.x / n2, c.y / n2, c.z / n2};
}

Quaternion Quaternion::operator*(const Quaternion& o) const {
    // (a + b j)(c + d j) = (ac - b conj(d)) + (ad + b conj(c)) j
    cplx a = part_a(), b = part_b(), c = o.part_a(), d = o.part_b();
    return from_parts(a * c - b * std::conj(d), a * d + b * std::conj(c));
}

Quaternion quaternion_mul(const Quaternion& a, const Quaternion& b) { return a * b; }

namespace {

void check_same_shape(const MatK& a, const MatK& b, const char* op) {
    if (a.tag() != b.tag() || a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument(std::string("shape/tag mismatch in ") + op);
}

}  // namespace

MatK MatK::zero(Scalar tag, int rows, int cols) {
    MatK m;
    m.tag_ = tag;
    m.a_ = Eigen::MatrixXcd::Zero(rows, cols);
    if (tag == Scalar::H) m.b_ = Eigen::MatrixXcd::Zero(rows, cols);
    return m;
}

MatK MatK::identity(Scalar tag, int n) {
    MatK m = zero(tag, n, n);
    m.a_ = Eigen::MatrixXcd::Identity(n, n);
    return m;
}

MatK MatK::from_real(const Eigen::MatrixXd& m) {
    MatK r;
    r.tag_ = Scalar::R;
    r.a_ = m.cast<cplx>();
    return r;
}

MatK MatK::from_complex(const Eigen::MatrixXcd& m) {
    MatK r;
    r.tag_ = Scalar::C;
    r.a_ = m;
    return r;
}

MatK MatK::from_quat_parts(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("quaternion parts must have equal shapes");
    MatK r;
    r.tag_ = Scalar::H;
    r.a_ = a;
    r.b_ = b;
    return r;
}

Quaternion MatK::at(int r, int c) const {
    cplx a = a_(r, c);
    cplx b = (tag_ == Scalar::H) ? b_(r, c) : cplx(0, 0);
    return Quaternion::from_parts(a, b);
}

void MatK::set(int r, int c, const Quaternion& q) {
    switch (tag_) {
        case Scalar::R:
            if (std::abs(q.x) + std::abs(q.y) + std::abs(q.z) > 0)
                throw std::invalid_argument("non-real entry assigned to a real matrix");
            a_(r, c) = q.w;
            break;
        case Scalar::C:
            if (std::abs(q.y) + std::abs(q.z) > 0)
                throw std::invalid_argument("non-complex entry assigned to a complex matrix");
            a_(r, c) = q.part_a();
            break;
        case Scalar::H:
            a_(r, c) = q.part_a();
            b_(r, c) = q.part_b();
            break;
    }
}

Eigen::MatrixXd MatK::real() const {
    if (tag_ != Scalar::R) throw std::invalid_argument("real() requires tag R");
    return a_.real();
}

const Eigen::MatrixXcd& MatK::complex() const {
    if (tag_ == Scalar::H) throw std::invalid_argument("complex() requires tag R or C");
    return a_;
}

MatK MatK::operator+(const MatK& o) const {
    check_same_shape(*this, o, "operator+");
    MatK r = *this;
    r.a_ += o.a_;
    if (tag_ == Scalar::H) r.b_ += o.b_;
    return r;
}

MatK MatK::operator-(const MatK& o) const {
    check_same_shape(*this, o, "operator-");
    MatK r = *this;
    r.a_ -= o.a_;
    if (tag_ == Scalar::H) r.b_ -= o.b_;
    return r;
}

MatK MatK::operator*(const MatK& o) const {
    if (tag_ != o.tag_ || cols() != o.rows())
        throw std::invalid_argument("shape/tag mismatch in operator*");
    MatK r;
    r.tag_ = tag_;
    if (tag_ == Scalar::H) {
        // (A1 + A2 j)(B1 + B2 j) = (A1 B1 - A2 conj(B2)) + (A1 B2 + A2 conj(B1)) j
        r.a_ = a_ * o.a_ - b_ * o.b_.conjugate();
        r.b_ = a_ * o.b_ + b_ * o.a_.conjugate();
    } else {
        r.a_ = a_ * o.a_;
    }
    return r;
}

MatK MatK::operator*(double s) const {
    MatK r = *this;
    r.a_ *= s;
    if (tag_ == Scalar::H) r.b_ *= s;
    return r;
}

MatK MatK::dagger() const {
    MatK r;
    r.tag_ = tag_;
    r.a_ = a_.adjoint();
    if (tag_ == Scalar::H) r.b_ = -b_.transpose();  // conj(a + b j) = conj(a) - b j
    return r;
}

MatK MatK::conjugate() const {
    MatK r;
    r.tag_ = tag_;
    r.a_ = a_.conjugate();
    if (tag_ == Scalar::H) r.b_ = -b_;
    return r;
}

MatK MatK::transpose() const {
    if (tag_ == Scalar::H)
        throw std::invalid_argument("plain transpose is not defined over H; use dagger()");
    MatK r;
    r.tag_ = tag_;
    r.a_ = a_.transpose();
    return r;
}

MatK MatK::inverse() const {
    if (!is_square()) throw std::invalid_argument("inverse of non-square matrix");
    if (tag_ == Scalar::H)
        return from_complexified(Scalar::H, complexified().inverse());
    MatK r;
    r.tag_ = tag_;
    r.a_ = a_.inverse();
    return r;
}

MatK MatK::block(int r0, int c0, int nr, int nc) const {
    MatK r;
    r.tag_ = tag_;
    r.a_ = a_.block(r0, c0, nr, nc);
    if (tag_ == Scalar::H) r.b_ = b_.block(r0, c0, nr, nc);
    return r;
}

MatK MatK::hcat(const MatK& o) const {
    if (tag_ != o.tag_ || rows() != o.rows())
        throw std::invalid_argument("hcat mismatch");
    MatK r;
    r.tag_ = tag_;
    r.a_.resize(rows(), cols() + o.cols());
    r.a_ << a_, o.a_;
    if (tag_ == Scalar::H) {
        r.b_.resize(rows(), cols() + o.cols());
        r.b_ << b_, o.b_;
    }
    return r;
}

MatK MatK::vcat(const MatK& o) const {
    if (tag_ != o.tag_ || cols() != o.cols())
        throw std::invalid_argument("vcat mismatch");
    MatK r;
    r.tag_ = tag_;
    r.a_.resize(rows() + o.rows(), cols());
    r.a_ << a_, o.a_;
    if (tag_ == Scalar::H) {
        r.b_.resize(rows() + o.rows(), cols());
        r.b_ << b_, o.b_;
    }
    return r;
}

MatK MatK::block_diag(const MatK& a, const MatK& b) {
    if (a.tag() != b.tag()) throw std::invalid_argument("block_diag tag mismatch");
    MatK r = zero(a.tag(), a.rows() + b.rows(), a.cols() + b.cols());
    r.a_.topLeftCorner(a.rows(), a.cols()) = a.a_;
    r.a_.bottomRightCorner(b.rows(), b.cols()) = b.a_;
    if (a.tag() == Scalar::H) {
        r.b_.topLeftCorner(a.rows(), a.cols()) = a.b_;
        r.b_.bottomRightCorner(b.rows(), b.cols()) = b.b_;
    }
    return r;
}

double MatK::norm() const {
    double n2 = a_.squaredNorm();
    if (tag_ == Scalar::H) n2 += b_.squaredNorm();
    return std::sqrt(n2);
}

double MatK::op_norm() const {
    if (rows() == 0 || cols() == 0) return 0.0;
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(complexified());
    return svd.singularValues()(0);
}

Eigen::MatrixXcd MatK::complexified() const {
    if (tag_ != Scalar::H) return a_;
    Eigen::MatrixXcd m(2 * rows(), 2 * cols());
    m.topLeftCorner(rows(), cols()) = a_;
    m.topRightCorner(rows(), cols()) = b_;
    m.bottomLeftCorner(rows(), cols()) = -b_.conjugate();
    m.bottomRightCorner(rows(), cols()) = a_.conjugate();
    return m;
}

MatK MatK::from_complexified(Scalar tag, const Eigen::MatrixXcd& m, double tol) {
    if (tag != Scalar::H) {
        MatK r;
        r.tag_ = tag;
        r.a_ = m;
        if (tag == Scalar::R && m.imag().norm() > tol * std::max(1.0, m.norm()))
            throw std::invalid_argument("complex residue in a matrix claiming tag R");
        return r;
    }
    int r2 = static_cast<int>(m.rows()), c2 = static_cast<int>(m.cols());
    if (r2 % 2 || c2 % 2)
        throw std::invalid_argument("complexified quaternionic matrix must have even shape");
    int r = r2 / 2, c = c2 / 2;
    Eigen::MatrixXcd a = m.topLeftCorner(r, c), b = m.topRightCorner(r, c);
    double resid = (m.bottomLeftCorner(r, c) + b.conjugate()).norm() +
                   (m.bottomRightCorner(r, c) - a.conjugate()).norm();
    if (resid > tol * std::max(1.0, m.norm()))
        throw std::invalid_argument("matrix lacks the quaternionic block structure");
    return from_quat_parts(a, b);
}

Eigen::MatrixXcd complex_adjoint(const MatK& m) {
    if (m.tag() != Scalar::H)
        throw std::invalid_argument("complex_adjoint requires tag H");
    return m.complexified();
}

namespace {

// Sorted-descending moduli; for H collapse adjacent duplicates.
std::vector<double> collapse_pairs(std::vector<double> v, bool quaternionic) {
    std::sort(v.begin(), v.end(), std::greater<double>());
    if (!quaternionic) return v;
    std::vector<double> out;
    out.reserve(v.size() / 2);
    for (size_t i = 0; i + 1 < v.size(); i += 2) out.push_back(0.5 * (v[i] + v[i + 1]));
    return out;
}

}  // namespace

std::vector<double> spectrum(const MatK& m) {
    if (!m.is_square()) throw std::invalid_argument("spectrum of non-square matrix");
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(m.complexified(), false);
    std::vector<double> mods;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
        mods.push_back(std::abs(es.eigenvalues()(i)));
    return collapse_pairs(std::move(mods), m.tag() == Scalar::H);
}

std::vector<double> singular_values(const MatK& m) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m.complexified());
    std::vector<double> sv(svd.singularValues().data(),
                           svd.singularValues().data() + svd.singularValues().size());
    return collapse_pairs(std::move(sv), m.tag() == Scalar::H);
}

MatK mat_exp(const MatK& m) {
    if (!m.is_square()) throw std::invalid_argument("exp of non-square matrix");
    Eigen::MatrixXcd e = m.complexified().exp();
    return MatK::from_complexified(m.tag(), e);
}

}  // namespace isograss
