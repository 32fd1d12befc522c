#pragma once

#include "isograss/subspaces.hpp"

namespace isograss {

/// Raised when a rank decision that feeds an integer output is numerically
/// ambiguous (singular values too close to the threshold window).
struct AmbiguousRank : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The graph {(v, g v)} of a group element as a subspace of V + V.  In the
/// Aut case this is a maximal (b + -b)-isotropic subspace; in the GL case an
/// N-dimensional one.
Subspace embed_graph(const MatK& g, const FormSpec& b, double tol = tol::grp);
Subspace embed_graph_gl(const MatK& g);

/// Inverse of embed_graph on the open stratum: the unique g with
/// W = graph(g).  Throws std::domain_error off the open stratum.
MatK unembed(const Subspace& w, const FormSpec& b, double tol = tol::grp);
MatK unembed_gl(const Subspace& w, double tol = tol::grp);

/// Left-right action: span of blockdiag(g1, g2) basis(W).
Subspace act(const MatK& g1, const MatK& g2, const Subspace& w);

/// Index i of the stratum containing a maximal isotropic W: the dimension of
/// W with either factor (the two agree; the equality is asserted).
int stratum_index(const Subspace& w, const FormSpec& b, double tol = tol::rank,
                  double* margin = nullptr);
/// GL variant: the pair (i, j) of factor-intersection dimensions.
std::pair<int, int> stratum_index_gl(const Subspace& w, double tol = tol::rank,
                                     double* margin = nullptr);

/// Closed-form real dimension of the stratum: dim_R Aut_K(b) - i^2 dim_R K.
int stratum_dimension(const FormSpec& b, int i);
/// GL variant, in K-dimensions: N^2 - i^2 - j^2.
int stratum_dimension_gl(const GLGroup& g, int i, int j);
/// Number of GL strata: (N+1)(N+2)/2.
long stratum_count_gl(int n);

/// A point of stratum i over the standard base pair: V_std + V_std plus the
/// graph of an automorphism h of the induced form on the complement model.
Subspace fiber_point(const FormSpec& b, const Subspace& v_i, const MatK& h,
                     double tol = tol::rank);

/// Recover the quotient-graph automorphism of a fiber point over
/// (V_i, V_i); inverse of fiber_point up to the complement model.
MatK fiber_automorphism(const Subspace& w, const FormSpec& b, const Subspace& v_i,
                        double tol = tol::rank);

/// A connecting pair (g1, g2) with act(g1, g2, from) = to, for two points of
/// the same stratum: transporters move both pi-images onto the standard
/// plane, and the residual fiber motion extends an automorphism of the
/// induced form.
std::pair<MatK, MatK> connect_same_stratum(const FormSpec& b, const Subspace& from,
                                           const Subspace& to, double tol = tol::rank);

/// Finite-difference rank of the orbit-map differential at a constructed
/// stratum point, against the closed form.
struct DimensionReport {
    std::string family;
    int index_i = 0, index_j = -1;  // j used by the GL variant
    int expected_rank = 0;          // real dimension of the stratum
    int computed_rank = 0;
    double margin = 0;              // sigma_r / sigma_{r+1}
    bool matches() const { return expected_rank == computed_rank; }
};
DimensionReport verify_stratum_dimension(const FormSpec& b, int i, uint64_t seed,
                                         double fd_step = 1e-5);
DimensionReport verify_stratum_dimension_gl(const GLGroup& g, int i, int j,
                                            double fd_step = 1e-5);

}  // namespace isograss
