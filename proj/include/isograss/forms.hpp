#pragma once

#include "isograss/scalars.hpp"

#include <optional>
#include <random>

namespace isograss {

enum class FormKind { Symmetric, Hermitian, Symplectic, AntiHermitian };

std::string form_kind_name(FormKind k);
FormKind form_kind_from_name(const std::string& name);

/// Bilinear kinds pair without conjugating the first argument; sesquilinear
/// kinds conjugate it.
inline bool is_bilinear(FormKind k) {
    return k == FormKind::Symmetric || k == FormKind::Symplectic;
}

enum class RootType { A, B, C, BC, D };

std::string root_type_name(RootType t);

using WeylVec = Eigen::VectorXd;

/// Restricted-root data of one classical family, stored as closed-form
/// functionals in epsilon-coordinates (the log-singular-value basis).
struct RootData {
    RootType type;
    int rank;  // length of Weyl vectors

    int num_simple() const;
    double eval_root(int index, const WeylVec& v) const;    // 1-based index
    double eval_weight(int index, const WeylVec& v) const;  // 1-based index
    /// Chamber-preserving involution -w0 on Weyl vectors.  Identity for
    /// B/C/BC; identity for D as well (the chamber is folded by the full
    /// automorphism group); reverse-and-negate for A.
    WeylVec opposition(const WeylVec& v) const;
    /// Involution on simple-root indices: swaps the last two for odd-rank D,
    /// reverses for A, identity otherwise.
    int opposition_index(int index) const;
    bool in_chamber(const WeylVec& v, double tol) const;
};

/// A nondegenerate form on K^N together with the root-system data of its
/// automorphism group.  Factories produce the standard Gram matrices; forms
/// with arbitrary Gram matrices arise internally (induced forms).
class FormSpec {
public:
    /// diag(I_p, -I_q).  Symmetric over R gives O(p,q); Hermitian over C/H
    /// gives U(p,q)/Sp(p,q); Symmetric over C gives O(p+q, C).
    static FormSpec signature_form(Scalar tag, FormKind kind, int p, int q);
    /// Standard symplectic Gram [[0, I_m], [-I_m, 0]] over R or C.
    static FormSpec symplectic_form(Scalar tag, int m);
    /// Anti-Hermitian quaternionic form with Gram j * I_m.
    static FormSpec o_star_form(int m);
    /// Uniform entry point matching the JSON schema.
    static FormSpec make(Scalar tag, FormKind kind, int p_or_m, int q = 0);
    /// A form with the given Gram matrix; metadata recomputed from kind and
    /// the Gram's signature.  Used for induced forms.
    static FormSpec from_gram(Scalar tag, FormKind kind, const MatK& gram,
                              double rank_tol = 1e-8);

    Scalar tag() const { return tag_; }
    FormKind kind() const { return kind_; }
    const MatK& gram() const { return gram_; }
    int dim() const { return N_; }       // N, dimension over K
    int rank() const { return n_; }      // real rank n of Aut_K(b)
    RootType root_type() const { return root_; }
    RootData root_data() const { return {root_, n_}; }
    /// Signature (p, q) for signature kinds; (−1, −1) otherwise.
    std::pair<int, int> signature() const { return {p_, q_}; }
    /// True when the Gram matrix is unitary (all standard factories).
    bool has_unitary_gram(double tol = 1e-9) const;

    std::string family_name() const;  // "O(2,1)", "Sp(4,R)", ...

    /// b(x, y) columnwise: conj(x)^T gram y for sesquilinear kinds,
    /// x^T gram y for bilinear.  x, y are N x k / N x l blocks.
    MatK evaluate(const MatK& x, const MatK& y) const;

    /// ||s(g) gram g - gram|| <= tol * ||gram||, s = transpose or dagger.
    bool is_automorphism(const MatK& g, double tol = 1e-8) const;
    double automorphism_residual(const MatK& g) const;  // relative

    /// The 2N-dimensional form b + (-b) on V + V.
    FormSpec direct_sum_minus() const;

    /// Closed-form real dimension of Aut_K(b).
    int group_dim_real() const;

    /// Real basis of the Lie algebra {X : s(X) gram + gram X = 0},
    /// computed as an SVD nullspace.  Cached after first call.
    const std::vector<MatK>& lie_algebra_basis() const;

    /// exp of a random Lie-algebra element with coefficients U(-1,1),
    /// rescaled so the element has Frobenius norm `scale`.
    MatK random_automorphism(std::mt19937_64& rng, double scale = 0.8) const;
    /// Same but the element is projected to the maximal compact part
    /// (X - X^dagger)/2 before exponentiating.  Requires a unitary Gram.
    MatK random_compact(std::mt19937_64& rng, double scale = 0.8) const;
    /// Random Lie-algebra element with independently scaled symmetric and
    /// skew parts (hyperbolic- vs compact-dominant sampling).
    MatK random_lie_element(std::mt19937_64& rng, double scale_sym,
                            double scale_skew) const;

private:
    Scalar tag_ = Scalar::R;
    FormKind kind_ = FormKind::Symmetric;
    MatK gram_;
    int N_ = 0;
    int p_ = -1, q_ = -1;
    int n_ = 0;
    RootType root_ = RootType::B;
    mutable std::vector<MatK> lie_basis_;  // lazily filled

    void classify();
};

/// General linear group GL_N(K): the stratification and Cartan machinery have
/// a GL variant that carries no form.
struct GLGroup {
    Scalar tag;
    int N;
    RootData root_data() const { return {RootType::A, N}; }
    int group_dim_real() const { return N * N * dim_r(tag); }
    std::string family_name() const;
};

}  // namespace isograss
