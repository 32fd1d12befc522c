#include "isograss/domains.hpp"

namespace isograss {

bool in_K_xi(const Subspace& w, const std::vector<Subspace>& sample, double tol,
             double* margin) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& line : sample) {
        if (line.ambient() != w.ambient())
            throw std::invalid_argument("in_K_xi: ambient mismatch");
        best = std::min(best, w.containment_residual(line));
    }
    if (margin) *margin = best;
    return best <= tol;
}

bool in_K_xi_dual(const Subspace& line, const std::vector<Subspace>& sample,
                  const FormSpec& b, double tol, double* margin) {
    if (b.root_type() == RootType::D)
        throw std::invalid_argument(
            "dual membership is not defined for split D_n families");
    double best = std::numeric_limits<double>::infinity();
    for (const auto& plane : sample) {
        if (plane.ambient() != line.ambient())
            throw std::invalid_argument("in_K_xi_dual: ambient mismatch");
        best = std::min(best, plane.containment_residual(line));
    }
    if (margin) *margin = best;
    return best <= tol;
}

StratumMembership stratum_membership(const Subspace& w, const FormSpec& b,
                                     const std::vector<Subspace>& sample, double tol) {
    StratumMembership out;
    out.index = stratum_index(w, b);
    auto [first, second] = pi_project(w);
    (void)second;
    if (first.dim() == 0) return out;  // graph points: nothing to contain
    double best = std::numeric_limits<double>::infinity();
    for (const auto& line : sample)
        best = std::min(best, first.containment_residual(line));
    out.margin = best;
    out.in_omega = best > tol;
    return out;
}

RecurrenceReport orbit_recurrence_probe(const RepSpec& rep_l, const RepSpec& rep_r,
                                        const Subspace& w0, int radius, double delta,
                                        int workers) {
    if (rep_l.rank_free() != rep_r.rank_free())
        throw std::invalid_argument("recurrence probe: free ranks differ");
    RecurrenceReport report;
    report.delta = delta;
    report.radius = radius;
    report.per_length.assign(radius + 1, 0);
    report.per_length[0] = 1;  // the empty word fixes W0
    report.returners = 1;
    if (radius < 1) return report;

    WordBall ball = word_ball(rep_l.rank_free(), radius);
    std::vector<char> returns(ball.words.size(), 0);
    parallel_for(ball.words.size(), workers, [&](std::size_t i) {
        MatK gl = rep_l.evaluate(ball.words[i]);
        MatK gr = rep_r.evaluate(ball.words[i]);
        returns[i] = act(gl, gr, w0).distance(w0) < delta;
    });
    for (std::size_t i = 0; i < ball.words.size(); ++i) {
        if (!returns[i]) continue;
        int l = static_cast<int>(ball.words[i].size());
        ++report.per_length[l];
        ++report.returners;
        report.max_returner_length = std::max(report.max_returner_length, l);
    }
    return report;
}

}  // namespace isograss
