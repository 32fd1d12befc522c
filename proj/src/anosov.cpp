#include "isograss/anosov.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <thread>

namespace isograss {

// ---------------------------------------------------------------------------
// Words
// ---------------------------------------------------------------------------

std::string word_to_string(const Word& w) {
    if (w.empty()) return "e";
    std::ostringstream s;
    for (size_t i = 0; i < w.size(); ++i) {
        if (i) s << ' ';
        int g = std::abs(w[i]);
        if (g <= 26) s << static_cast<char>('a' + g - 1);
        else s << 'g' << g;
        if (w[i] < 0) s << '\'';
    }
    return s.str();
}

Word free_reduce(Word w) {
    Word out;
    for (int letter : w) {
        if (letter == 0) throw std::invalid_argument("zero letter in word");
        if (!out.empty() && out.back() == -letter) out.pop_back();
        else out.push_back(letter);
    }
    return out;
}

Word cyclic_reduce(Word w) {
    w = free_reduce(std::move(w));
    while (w.size() >= 2 && w.front() == -w.back()) {
        w.erase(w.begin());
        w.pop_back();
    }
    return w;
}

bool is_cyclically_reduced(const Word& w) {
    Word r = free_reduce(w);
    if (r.size() != w.size()) return false;
    return w.size() < 2 || w.front() != -w.back();
}

namespace {

// Letter order used everywhere: a < a' < b < b' < ...
int letter_rank(int letter) {
    int g = std::abs(letter);
    return 2 * g + (letter < 0 ? 1 : 0);
}

bool word_lex_less(const Word& a, const Word& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return letter_rank(a[i]) < letter_rank(b[i]);
    return false;
}

}  // namespace

Word canonical_rotation(const Word& w) {
    if (!is_cyclically_reduced(w))
        throw std::invalid_argument("canonical_rotation expects a cyclically reduced word");
    Word best = w;
    Word rot = w;
    for (size_t t = 1; t < w.size(); ++t) {
        std::rotate(rot.begin(), rot.begin() + 1, rot.end());
        if (word_lex_less(rot, best)) best = rot;
    }
    return best;
}

WordBall word_ball(int k, int radius, std::size_t cap) {
    if (k < 1 || radius < 1) throw std::invalid_argument("word_ball needs k, radius >= 1");
    // count = sum 2k (2k-1)^{l-1}
    double count = 0;
    for (int l = 1; l <= radius; ++l)
        count += 2.0 * k * std::pow(2.0 * k - 1, l - 1);
    if (count > static_cast<double>(cap))
        throw std::invalid_argument("word ball exceeds the configured cap");

    std::vector<int> letters;
    for (int g = 1; g <= k; ++g) { letters.push_back(g); letters.push_back(-g); }

    WordBall ball{k, radius, {}};
    std::vector<Word> frontier{Word{}};
    for (int l = 1; l <= radius; ++l) {
        std::vector<Word> next;
        next.reserve(frontier.size() * (2 * k - 1) + 2);
        for (const auto& w : frontier)
            for (int letter : letters) {
                if (!w.empty() && w.back() == -letter) continue;
                Word ext = w;
                ext.push_back(letter);
                next.push_back(std::move(ext));
            }
        for (const auto& w : next) ball.words.push_back(w);
        frontier = std::move(next);
    }
    return ball;
}

std::vector<Word> conjugacy_class_reps(int k, int radius, std::size_t cap) {
    WordBall ball = word_ball(k, radius, cap);
    std::set<Word> seen;
    std::vector<Word> reps;
    for (const auto& w : ball.words) {
        if (!is_cyclically_reduced(w)) continue;
        Word rep = canonical_rotation(w);
        if (seen.insert(rep).second) reps.push_back(rep);
    }
    std::sort(reps.begin(), reps.end(), word_lex_less);
    return reps;
}

// ---------------------------------------------------------------------------
// RepSpec
// ---------------------------------------------------------------------------

RepSpec RepSpec::in_form(FormSpec b, std::vector<MatK> gens) {
    RepSpec r;
    r.form = std::move(b);
    r.generators = std::move(gens);
    r.validate();
    return r;
}

RepSpec RepSpec::in_gl(GLGroup g, std::vector<MatK> gens) {
    RepSpec r;
    r.gl = g;
    r.generators = std::move(gens);
    r.validate();
    return r;
}

void RepSpec::validate(double tol) const {
    if (generators.empty()) throw std::invalid_argument("representation needs generators");
    int n = ambient_dim();
    for (const auto& g : generators) {
        if (!g.is_square() || g.rows() != n)
            throw std::invalid_argument("generator size mismatch");
        auto sv = singular_values(g);
        if (sv.back() <= 1e-12 * sv.front())
            throw std::invalid_argument("generator is not invertible");
        if (form && form->automorphism_residual(g) > tol * 100)
            throw std::invalid_argument("generator is not an automorphism of the form");
    }
}

MatK RepSpec::evaluate(const Word& w) const {
    int n = ambient_dim();
    Scalar tag = form ? form->tag() : gl.tag;
    MatK out = MatK::identity(tag, n);
    for (int letter : w) {
        int g = std::abs(letter);
        if (g < 1 || g > rank_free()) throw std::invalid_argument("letter outside alphabet");
        const MatK& m = generators[g - 1];
        out = out * (letter > 0 ? m : m.inverse());
    }
    return out;
}

WeylVec RepSpec::mu(const MatK& g) const {
    return form ? cartan_mu(g, *form) : cartan_mu(g, gl);
}

WeylVec RepSpec::lambda(const MatK& g) const {
    return form ? lyapunov_lambda(g, *form) : lyapunov_lambda(g, gl);
}

void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)>& fn) {
    workers = std::max(1, workers);
    if (workers == 1 || count < 2) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    std::size_t chunk = (count + workers - 1) / workers;
    for (int t = 0; t < workers; ++t) {
        std::size_t lo = t * chunk, hi = std::min(count, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&, lo, hi] { for (std::size_t i = lo; i < hi; ++i) fn(i); });
    }
    for (auto& th : pool) th.join();
}

// ---------------------------------------------------------------------------
// Divergence and domination
// ---------------------------------------------------------------------------

DivergenceProfile divergence_profile(const RepSpec& rep, int root_index, int radius,
                                     double s_min, int workers) {
    WordBall ball = word_ball(rep.rank_free(), radius);
    if (ball.words.empty()) throw std::invalid_argument("empty word ball");
    RootData rd = rep.root_data();

    std::vector<double> value(ball.words.size());
    parallel_for(ball.words.size(), workers, [&](std::size_t i) {
        value[i] = rd.eval_root(root_index, rep.mu(rep.evaluate(ball.words[i])));
    });

    DivergenceProfile prof;
    prof.s_min = s_min;
    prof.min_by_length.assign(radius, std::numeric_limits<double>::infinity());
    for (std::size_t i = 0; i < ball.words.size(); ++i) {
        int l = static_cast<int>(ball.words[i].size());
        prof.min_by_length[l - 1] = std::min(prof.min_by_length[l - 1], value[i]);
    }

    // least squares on (l, min_l)
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int l = 1; l <= radius; ++l) {
        sx += l;
        sy += prof.min_by_length[l - 1];
        sxx += double(l) * l;
        sxy += l * prof.min_by_length[l - 1];
    }
    double denom = radius * sxx - sx * sx;
    prof.slope = (denom != 0) ? (radius * sxy - sx * sy) / denom : 0.0;
    prof.intercept = (sy - prof.slope * sx) / radius;

    for (int l = 2; l < radius; ++l)
        if (prof.min_by_length[l] < prof.min_by_length[l - 1] - 1e-12)
            prof.nondecreasing = false;
    prof.verdict = prof.nondecreasing && prof.slope >= s_min;
    return prof;
}

DominationReport domination_constant(const RepSpec& rep_l, const RepSpec& rep_r,
                                     int weight_index, int radius, double tau_pos,
                                     int workers) {
    if (rep_l.rank_free() != rep_r.rank_free())
        throw std::invalid_argument("representations have different free rank");
    auto reps = conjugacy_class_reps(rep_l.rank_free(), radius);
    if (reps.empty()) throw std::invalid_argument("no nontrivial words in the ball");

    RootData rd_l = rep_l.root_data(), rd_r = rep_r.root_data();
    std::vector<double> num(reps.size()), den(reps.size());
    parallel_for(reps.size(), workers, [&](std::size_t i) {
        num[i] = rd_r.eval_weight(weight_index, rep_r.lambda(rep_r.evaluate(reps[i])));
        den[i] = rd_l.eval_weight(weight_index, rep_l.lambda(rep_l.evaluate(reps[i])));
    });

    DominationReport report;
    report.radius = radius;
    bool have_ratio = false;
    for (std::size_t i = 0; i < reps.size(); ++i) {
        if (den[i] < tau_pos) {
            report.violations.push_back(reps[i]);
            continue;
        }
        double ratio = num[i] / den[i];
        if (!have_ratio || ratio > report.c_hat) {
            report.c_hat = ratio;
            report.witness = reps[i];
            have_ratio = true;
        }
    }
    if (!have_ratio) report.c_hat = 0.0;
    report.dominates = report.violations.empty() && report.c_hat < 1.0;
    return report;
}

RepSpec product_representation(const RepSpec& rep_l, const RepSpec& rep_r) {
    if (!rep_l.form || !rep_r.form)
        throw std::invalid_argument("product representation needs form-preserving factors");
    if (rep_l.rank_free() != rep_r.rank_free())
        throw std::invalid_argument("free ranks differ");
    FormSpec sum = rep_l.form->direct_sum_minus();
    if ((rep_r.form->gram() - rep_l.form->gram()).norm() > 1e-12 * rep_l.form->gram().norm())
        throw std::invalid_argument("factors live in different forms");
    std::vector<MatK> gens;
    for (int i = 0; i < rep_l.rank_free(); ++i)
        gens.push_back(MatK::block_diag(rep_l.generators[i], rep_r.generators[i]));
    return RepSpec::in_form(sum, gens);
}

// ---------------------------------------------------------------------------
// Boundary points and limit sets
// ---------------------------------------------------------------------------

namespace {

// One Newton step moving a unit line basis onto the isotropic cone of b.
MatK isotropic_newton_step(const FormSpec& b, const MatK& v) {
    MatK c = b.evaluate(v, v);  // 1x1
    MatK y = is_bilinear(b.kind()) ? b.gram().inverse() * v.conjugate()
                                   : b.gram().inverse() * v;
    return v - y * (c * 0.5);
}

}  // namespace

BoundaryPoint boundary_point(const RepSpec& rep, const Word& w, int d,
                             const AnosovParams& params) {
    Word cw = cyclic_reduce(w);
    if (cw.empty()) throw std::invalid_argument("boundary_point needs a nontrivial word");
    if (cw.size() != w.size())
        throw std::invalid_argument("boundary_point expects a cyclically reduced word");
    int n = rep.ambient_dim();
    if (d < 1 || d >= n) throw std::invalid_argument("boundary dimension out of range");

    MatK m = rep.evaluate(w);
    BoundaryPoint pt;
    pt.word = w;

    // Eigenvalue gap of rho(w) itself, for the report.
    auto mods = spectrum(m);
    pt.gap_eigen = (mods[d - 1] > 0 && mods[d] > 0) ? std::log(mods[d - 1] / mods[d])
                                                    : 0.0;

    MatK a = m * (1.0 / std::max(m.norm(), 1e-300));
    long power = 1;
    double gap = 0;
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd;
    while (true) {
        svd.compute(a.complexified(), Eigen::ComputeThinU);
        const auto& sv = svd.singularValues();
        int dc = (rep.form && rep.form->tag() == Scalar::H) ? 2 * d : d;
        if (!rep.form && rep.gl.tag == Scalar::H) dc = 2 * d;
        if (sv(dc - 1) <= 0 || sv(dc) <= 0)
            throw GapError("power collapsed before reaching the gap");
        gap = std::log(sv(dc - 1) / sv(dc));
        if (gap >= params.gap_min || power > params.m_max) break;
        a = a * a;
        double nrm = a.norm();
        if (nrm <= 0) throw GapError("power collapsed to zero");
        a = a * (1.0 / nrm);
        power *= 2;
    }
    pt.power = power;
    pt.gap_achieved = gap;
    if (gap < params.gap_min)
        throw GapError("singular gap never reached gap_min (elliptic or unipotent word)");

    // Extract through the projector: phase and j-pairing freedom of the
    // singular vectors cancels there, so the pull-back stays in tag K.
    int dc = (a.tag() == Scalar::H) ? 2 * d : d;
    Eigen::MatrixXcd u = svd.matrixU().leftCols(dc);
    MatK proj = MatK::from_complexified(a.tag(), u * u.adjoint(), 1e-6);
    Subspace space = Subspace::from_orthonormal(orthonormalize_rank(proj, d));

    if (rep.form) {
        pt.isotropy_residual = isotropy_residual(space, *rep.form);
        if (pt.isotropy_residual > tol::rank && pt.isotropy_residual <= params.isotropy_accept &&
            d == 1) {
            MatK v = space.basis();
            for (int it = 0; it < 3; ++it) {
                v = isotropic_newton_step(*rep.form, v);
                v = v * (1.0 / v.norm());
            }
            Subspace snapped = Subspace::from_orthonormal(v);
            double res = isotropy_residual(snapped, *rep.form);
            if (res < pt.isotropy_residual) {
                space = snapped;
                pt.isotropy_residual = res;
                pt.projected = true;
            }
        }
    }
    pt.space = space;
    return pt;
}

LimitSetSample limit_set(const RepSpec& rep, int radius, int d, const AnosovParams& params) {
    auto reps = conjugacy_class_reps(rep.rank_free(), radius);
    LimitSetSample sample;
    sample.d = d;

    std::vector<std::optional<BoundaryPoint>> points(reps.size());
    std::vector<std::string> errors(reps.size());
    parallel_for(reps.size(), params.workers, [&](std::size_t i) {
        try {
            points[i] = boundary_point(rep, reps[i], d, params);
        } catch (const std::exception& e) {
            errors[i] = std::string(e.what()) + " [" + word_to_string(reps[i]) + "]";
        }
    });

    for (std::size_t i = 0; i < reps.size(); ++i) {
        if (!points[i]) {
            sample.warnings.push_back(errors[i]);
            continue;
        }
        bool fresh = true;
        for (const auto& kept : sample.points)
            if (kept.space.distance(points[i]->space) < params.dedup) { fresh = false; break; }
        if (fresh) sample.points.push_back(std::move(*points[i]));
    }
    return sample;
}

}  // namespace isograss
