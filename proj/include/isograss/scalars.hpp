#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace isograss {

using cplx = std::complex<double>;

/// Ground scalar of a matrix or form: the reals, the complex numbers,
/// or the quaternions.
enum class Scalar { R, C, H };

inline int dim_r(Scalar s) {
    switch (s) {
        case Scalar::R: return 1;
        case Scalar::C: return 2;
        case Scalar::H: return 4;
    }
    return 0;
}

std::string scalar_name(Scalar s);
Scalar scalar_from_name(const std::string& name);

/// Hamilton quaternion w + x i + y j + z k, with i^2 = j^2 = -1 and ij = k.
struct Quaternion {
    double w = 0, x = 0, y = 0, z = 0;

    Quaternion() = default;
    Quaternion(double w_, double x_, double y_, double z_) : w(w_), x(x_), y(y_), z(z_) {}

    /// Split as a + b j with complex a, b.
    cplx part_a() const { return {w, x}; }
    cplx part_b() const { return {y, z}; }
    static Quaternion from_parts(cplx a, cplx b) {
        return {a.real(), a.imag(), b.real(), b.imag()};
    }

    Quaternion conj() const { return {w, -x, -y, -z}; }
    double norm() const;
    Quaternion inv() const;

    Quaternion operator+(const Quaternion& o) const { return {w + o.w, x + o.x, y + o.y, z + o.z}; }
    Quaternion operator-(const Quaternion& o) const { return {w - o.w, x - o.x, y - o.y, z - o.z}; }
    Quaternion operator*(double s) const { return {w * s, x * s, y * s, z * s}; }
    Quaternion operator*(const Quaternion& o) const;
};

Quaternion quaternion_mul(const Quaternion& a, const Quaternion& b);

/// Dense matrix over R, C, or H with value semantics.
///
/// Real and complex matrices are held as a single complex block (real
/// matrices keep a zero imaginary part).  A quaternionic matrix A is held
/// as the complex pair (A1, A2) with A = A1 + A2 j; this makes the complex
/// adjoint realization, which carries all spectral work, a pure reshuffle.
class MatK {
public:
    MatK() : tag_(Scalar::R) {}

    static MatK zero(Scalar tag, int rows, int cols);
    static MatK identity(Scalar tag, int n);
    static MatK from_real(const Eigen::MatrixXd& m);
    static MatK from_complex(const Eigen::MatrixXcd& m);
    static MatK from_quat_parts(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

    Scalar tag() const { return tag_; }
    int rows() const { return static_cast<int>(a_.rows()); }
    int cols() const { return static_cast<int>(a_.cols()); }

    Quaternion at(int r, int c) const;
    void set(int r, int c, const Quaternion& q);

    const Eigen::MatrixXcd& part_a() const { return a_; }
    const Eigen::MatrixXcd& part_b() const { return b_; }

    /// Real part as a real matrix; requires tag R.
    Eigen::MatrixXd real() const;
    /// Complex block; requires tag R or C.
    const Eigen::MatrixXcd& complex() const;

    MatK operator+(const MatK& o) const;
    MatK operator-(const MatK& o) const;
    MatK operator*(const MatK& o) const;
    MatK operator*(double s) const;
    MatK operator-() const { return *this * -1.0; }

    /// Conjugate transpose (entrywise quaternion conjugation for H).
    MatK dagger() const;
    /// Entrywise conjugation.
    MatK conjugate() const;
    /// Plain transpose; not defined over H (use dagger there).
    MatK transpose() const;

    MatK inverse() const;
    MatK block(int r0, int c0, int nr, int nc) const;
    MatK topRows(int n) const { return block(0, 0, n, cols()); }
    MatK bottomRows(int n) const { return block(rows() - n, 0, n, cols()); }
    MatK hcat(const MatK& o) const;
    MatK vcat(const MatK& o) const;
    static MatK block_diag(const MatK& a, const MatK& b);

    double norm() const;     // Frobenius
    double op_norm() const;  // largest singular value

    /// The matrix as a complex matrix: the block itself for R/C, the
    /// complex adjoint [[A1, A2], [-conj(A2), conj(A1)]] for H.
    Eigen::MatrixXcd complexified() const;
    /// Inverse of complexified(); for H asserts the block structure.
    static MatK from_complexified(Scalar tag, const Eigen::MatrixXcd& m, double tol = 1e-9);

    /// Distance to the fixed-point set of the structure maps: zero imaginary
    /// part for R, magnitude of the j-part for matrices claiming tag R/C.
    bool is_square() const { return rows() == cols(); }
};

/// Complex adjoint of a quaternionic matrix (tag H required): the 2r x 2c
/// complex matrix [[A1, A2], [-conj(A2), conj(A1)]].  Multiplicative.
Eigen::MatrixXcd complex_adjoint(const MatK& m);

/// Eigenvalue moduli, sorted descending; length = rows.  Quaternionic input
/// goes through the complex adjoint and each duplicated pair is reported once.
std::vector<double> spectrum(const MatK& m);

/// Singular values over K, sorted descending; length = min(rows, cols).
/// Quaternionic pairs are reported once, like spectrum().
std::vector<double> singular_values(const MatK& m);

/// Matrix exponential over K (complexified route for H).
MatK mat_exp(const MatK& m);

}  // namespace isograss
