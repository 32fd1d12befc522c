#pragma once

#include "isograss/subspaces.hpp"

namespace isograss {

/// The form b^{p,q+1} on K^{p+q+1} that cuts out the model hypersurface
/// b(x, x) = -1.
FormSpec pseudo_hyperbolic_model_form(Scalar tag, int p, int q);

/// The ambient form on K + K^{p+q+1}: positive-definite extra coordinate
/// first, then b^{p,q+1}; signature (p+1, q+1) with permuted diagonal.
FormSpec pseudo_hyperbolic_ambient_form(Scalar tag, int p, int q);

/// The isotropic line through (1, x) for a hypersurface point x.
Subspace embed_hpq(const MatK& x, Scalar tag, int p, int q, double tol = tol::model);

/// True iff the isotropic line has vanishing extra coordinate.
bool is_boundary(const Subspace& line, Scalar tag, int p, int q, double tol = tol::rank);

/// Inverse of embed_hpq on non-boundary lines: normalize the extra
/// coordinate to 1 and return the tail.
MatK unembed_hpq(const Subspace& line, Scalar tag, int p, int q, double tol = tol::model);

struct OrbitRepReport {
    Subspace point;
    double isotropy_residual = 0;
    int real_intersection_dim = 0;  // with the fixed real/realified subspace
    int stabilizer_dim = 0;
    int expected_stabilizer_dim = 0;
    double stabilizer_margin = 0;   // singular-value gap at the cut
    std::pair<int, int> restricted_signature{-1, -1};  // case (vi) only
    bool ok() const {
        return stabilizer_dim == expected_stabilizer_dim && real_intersection_dim == 0;
    }
};

/// Orbit representative {x + i I(x)} inside the complexified quadric: the
/// open-orbit base point whose stabilizer in O(2p,2q) is U(p,q).
OrbitRepReport orbit_rep_case_iv(int p, int q);

/// Lagrangian orbit representative spanned by e_k -/+ i e_{m+k} inside the
/// complex symplectic space; stabilizer in Sp(2m,R) is U(p, m-p), and the
/// induced Hermitian form has signature (p, m-p).
OrbitRepReport orbit_rep_case_vi(int m, int p);

}  // namespace isograss
