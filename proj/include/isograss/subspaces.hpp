#pragma once

#include "isograss/forms.hpp"

namespace isograss {

namespace tol {
inline constexpr double rank = 1e-8;      // numerical rank decisions, relative
inline constexpr double spec = 1e-9;      // scalar comparisons
inline constexpr double grp = 1e-8;       // group membership
inline constexpr double chamber = 1e-8;   // Weyl chamber test
inline constexpr double contain = 1e-6;   // limit-set containment
inline constexpr double pos = 1e-10;      // domination denominators
inline constexpr double dedup = 1e-5;     // limit-set deduplication
inline constexpr double model = 1e-8;     // pseudo-hyperbolic hypersurface residual
}  // namespace tol

/// Outcome of a numerical rank decision: the integer rank, the singular
/// values, and the gap between the smallest kept and the largest dropped
/// value (their ratio; +inf when nothing was dropped or kept).
struct RankDecision {
    int rank = 0;
    double margin = std::numeric_limits<double>::infinity();
    std::vector<double> sv;  // descending
    /// True when some singular value sits within a factor `window` of the
    /// threshold on either side.
    bool ambiguous = false;
};

/// Column-pivoted orthonormalization (modified Gram-Schmidt with
/// re-orthogonalization) over K.  Columns whose residual norm falls below
/// tol * (largest original column norm) are dropped.
MatK orthonormalize(const MatK& raw, double tol = tol::rank, RankDecision* dec = nullptr);

/// MGS keeping exactly `rank` pivots; for extracting orthonormal bases from
/// projectors of known rank.
MatK orthonormalize_rank(const MatK& raw, int rank);

/// Right null space over K: { x : m x = 0 }, threshold tol * sigma_max.
/// For H the kernel of the complex adjoint is pulled back to a quaternionic
/// basis (it is j-invariant; the residual is asserted).
MatK nullspace(const MatK& m, double tol = tol::rank, RankDecision* dec = nullptr);

/// A point of a Grassmannian of K^N: an orthonormal basis with respect to
/// the standard positive-definite reference product.  Equality of subspaces
/// is projector distance, never basis comparison.
class Subspace {
public:
    Subspace() = default;

    static Subspace zero(Scalar tag, int ambient);
    static Subspace from_span(const MatK& raw, double tol = tol::rank);
    /// Trusted constructor; the caller guarantees orthonormal columns.
    static Subspace from_orthonormal(const MatK& basis);

    Scalar tag() const { return basis_.tag(); }
    int ambient() const { return ambient_; }
    int dim() const { return basis_.cols(); }
    const MatK& basis() const { return basis_; }

    MatK projector() const;  // B B^dagger, N x N
    /// Operator norm of the projector difference.
    double distance(const Subspace& other) const;
    /// Largest sine of a principal angle of `inner` against this subspace:
    /// ||(I - P) B_inner||_2.  Zero dimensional inner spaces give 0.
    double containment_residual(const Subspace& inner) const;
    bool contains(const Subspace& inner, double tol) const;
    /// Orthogonal complement for the reference product.
    Subspace reference_complement() const;

private:
    int ambient_ = 0;
    MatK basis_;
};

/// Nested chain of subspaces.  Only single-subspace flags are exercised in
/// this artifact; kept for the partial-flag spaces of the quaternionic
/// tensor constructions.
struct FlagPoint {
    std::vector<Subspace> parts;
    bool nested(double tol) const;
};

double isotropy_residual(const Subspace& w, const FormSpec& b);
bool is_isotropic(const Subspace& w, const FormSpec& b, double tol = tol::rank);

/// Numerical intersection of two subspaces of the same ambient space.
Subspace intersect(const Subspace& a, const Subspace& b, double tol = tol::rank,
                   RankDecision* dec = nullptr);

/// The projection of a subspace W of V + V to its intersections with the
/// two factors, each viewed inside V.
std::pair<Subspace, Subspace> pi_project(const Subspace& w, RankDecision* dec_first = nullptr,
                                         RankDecision* dec_second = nullptr,
                                         double tol = tol::rank);

/// The standard i-dimensional isotropic plane of each family's standard
/// Gram basis (hyperbolic pairs, symplectic coordinate planes, ...).
Subspace standard_isotropic(const FormSpec& b, int i);

/// Pushforward of the standard plane by a seeded random automorphism.
Subspace random_isotropic(const FormSpec& b, int i, uint64_t seed);

/// The form induced on (a complement model of) V_i^{perp_b} / V_i, together
/// with the N x (N - 2i) matrix embedding the model into V.
struct InducedForm {
    FormSpec form;
    MatK complement_basis;
};
InducedForm induced_form(const FormSpec& b, const Subspace& v_i, double tol = tol::rank);

/// Witt frame of an isotropic subspace: an isotropic basis U, dual isotropic
/// vectors V with b(u_a, v_b) = delta_ab, and a basis C of the common
/// b-orthocomplement carrying the induced Gram matrix.
struct WittFrame {
    MatK u, v, c;
    MatK gram_c;
};
WittFrame witt_frame(const FormSpec& b, const Subspace& s, double tol = tol::rank);

/// A basis change T with s(T) gram T = standard diagonal/symplectic Gram of
/// the same congruence class; `signs` records the diagonal for the
/// symmetric/Hermitian kinds.
struct Congruence {
    MatK t;
    std::vector<int> signs;
};
Congruence congruence_to_standard(const FormSpec& b, double tol = tol::rank);

/// An automorphism g of b with g . from = to (constructive Witt extension).
MatK isotropic_transporter(const FormSpec& b, const Subspace& from, const Subspace& to,
                           double tol = tol::rank);

}  // namespace isograss
