#pragma once

#include "isograss/anosov.hpp"
#include "isograss/compactify.hpp"

namespace isograss {

/// True iff some sampled boundary line is contained in W within tol.
/// `margin` receives the smallest containment residual over the sample
/// (+inf for empty samples).
bool in_K_xi(const Subspace& w, const std::vector<Subspace>& sample, double tol = tol::contain,
             double* margin = nullptr);

/// Dual membership: does the line sit inside some sample plane?  Refused for
/// forms with restricted root system D_n (split even orthogonal case).
bool in_K_xi_dual(const Subspace& line, const std::vector<Subspace>& sample,
                  const FormSpec& b, double tol = tol::contain, double* margin = nullptr);

struct StratumMembership {
    int index = 0;
    bool in_omega = true;
    double margin = std::numeric_limits<double>::infinity();
};
/// Stratum index of W plus membership in the domain: W is outside exactly
/// when its first pi-component contains a sampled boundary line.
StratumMembership stratum_membership(const Subspace& w, const FormSpec& b,
                                     const std::vector<Subspace>& sample,
                                     double tol = tol::contain);

struct RecurrenceReport {
    long returners = 0;        // words moving W0 less than delta (incl. empty)
    int max_returner_length = 0;
    std::vector<long> per_length;  // index 0 = empty word
    double delta = 0;
    int radius = 0;
};
/// Counts ball words w with d(act(rho_l(w), rho_r(w), W0), W0) < delta.
RecurrenceReport orbit_recurrence_probe(const RepSpec& rep_l, const RepSpec& rep_r,
                                        const Subspace& w0, int radius, double delta,
                                        int workers = 1);

}  // namespace isograss
