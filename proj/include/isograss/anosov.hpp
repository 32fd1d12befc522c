#pragma once

#include "isograss/cartan.hpp"
#include "isograss/subspaces.hpp"

#include <functional>
#include <optional>

namespace isograss {

/// A word in a free group F_k: letters are +g / -g for the g-th generator
/// and its inverse, 1-based.
using Word = std::vector<int>;

std::string word_to_string(const Word& w);  // "a b' a" style: ' marks inverses
Word free_reduce(Word w);
Word cyclic_reduce(Word w);
bool is_cyclically_reduced(const Word& w);
/// Lexicographically least rotation of a cyclically reduced word; conjugacy
/// class representative.
Word canonical_rotation(const Word& w);

/// All freely reduced words of length <= radius, ordered by (length, lex).
struct WordBall {
    int k = 0;
    int radius = 0;
    std::vector<Word> words;  // excludes the empty word
};
WordBall word_ball(int k, int radius, std::size_t cap = 1'000'000);

/// One representative per conjugacy class met in the ball: canonical
/// rotations of the cyclically reduced words, deduplicated.
std::vector<Word> conjugacy_class_reps(int k, int radius, std::size_t cap = 1'000'000);

/// Images of the free generators in Aut_K(b) or GL_N(K).
struct RepSpec {
    std::optional<FormSpec> form;  // empty = GL
    GLGroup gl{Scalar::R, 0};
    std::vector<MatK> generators;

    int rank_free() const { return static_cast<int>(generators.size()); }
    int ambient_dim() const { return form ? form->dim() : gl.N; }
    RootData root_data() const { return form ? form->root_data() : gl.root_data(); }
    void validate(double tol = tol::grp) const;
    MatK evaluate(const Word& w) const;
    WeylVec mu(const MatK& g) const;
    WeylVec lambda(const MatK& g) const;

    static RepSpec in_form(FormSpec b, std::vector<MatK> gens);
    static RepSpec in_gl(GLGroup g, std::vector<MatK> gens);
};

/// Simple blocking worker pool; results are written by index, so the merged
/// output is deterministic regardless of the worker count.
void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)>& fn);

struct DivergenceProfile {
    std::vector<double> min_by_length;  // index 0 = length 1
    double slope = 0;
    double intercept = 0;
    bool nondecreasing = true;
    bool verdict = false;
    double s_min = 0;
};
/// Per-length minima of alpha_{root_index}(mu(rho(w))) over the word ball,
/// with a least-squares line; "divergence-consistent" needs slope >= s_min
/// and nondecreasing minima from length 2 on.
DivergenceProfile divergence_profile(const RepSpec& rep, int root_index, int radius,
                                     double s_min = 0.05, int workers = 1);

struct DominationReport {
    double c_hat = 0;
    Word witness;
    std::vector<Word> violations;  // denominator below tau_pos
    bool dominates = false;
    int radius = 0;
};
/// max over nontrivial conjugacy-class representatives of
/// omega(lambda(rep_r)) / omega(lambda(rep_l)).
DominationReport domination_constant(const RepSpec& rep_l, const RepSpec& rep_r,
                                     int weight_index, int radius,
                                     double tau_pos = tol::pos, int workers = 1);

/// The product representation into Aut(b + -b), generator-wise blockdiag.
RepSpec product_representation(const RepSpec& rep_l, const RepSpec& rep_r);

struct AnosovParams {
    double gap_min = 18.0;   // natural-log singular gap required of the power
    long m_max = 1024;       // power cap in the doubling loop
    double dedup = tol::dedup;
    double isotropy_accept = 1e-3;  // projection attempted below this residual
    int workers = 1;
};

struct GapError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct BoundaryPoint {
    Word word;
    Subspace space;               // attracting d-plane
    double gap_eigen = 0;         // log |lambda_d / lambda_{d+1}| of rho(w)
    double gap_achieved = 0;      // singular gap of the final power
    long power = 1;
    double isotropy_residual = 0;
    bool projected = false;       // true when snapped onto the isotropic cone
};
/// Attracting d-dimensional singular subspace of rho(w)^m, m doubling until
/// the singular gap reaches gap_min.  Throws GapError when it never does
/// (elliptic or trivial directions).
BoundaryPoint boundary_point(const RepSpec& rep, const Word& w, int d,
                             const AnosovParams& params = {});

struct LimitSetSample {
    int d = 1;
    std::vector<BoundaryPoint> points;
    std::vector<std::string> warnings;
};
/// boundary_point over all conjugacy-class representatives up to the radius,
/// deduplicated at projector distance params.dedup; deterministic order.
LimitSetSample limit_set(const RepSpec& rep, int radius, int d = 1,
                         const AnosovParams& params = {});

}  // namespace isograss
