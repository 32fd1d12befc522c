#include "isograss/cartan.hpp"

#include <algorithm>
#include <cmath>

namespace isograss {

namespace {

std::vector<double> log_values(const std::vector<double>& vals) {
    std::vector<double> logs;
    logs.reserve(vals.size());
    for (double v : vals) {
        if (v <= 0) throw PairingError("nonpositive singular value or modulus");
        logs.push_back(std::log(v));
    }
    std::sort(logs.begin(), logs.end(), std::greater<double>());
    return logs;
}

// Logs of an Aut element pair as (t, -t) around an overall shift (zero for a
// plain element, nonzero for scale-tracked powers).
void check_pairing(const std::vector<double>& logs, double shift, double tol) {
    size_t n = logs.size();
    double scale = std::max(1.0, std::abs(logs.front() - shift));
    for (size_t k = 0; k < n; ++k) {
        double resid = std::abs(logs[k] + logs[n - 1 - k] - 2 * shift);
        if (resid > tol * scale)
            throw PairingError("log singular values fail the (s, -s) pairing");
    }
}

WeylVec truncate_to_rank(const std::vector<double>& logs, double shift, int rank) {
    WeylVec mu(rank);
    for (int k = 0; k < rank; ++k) mu(k) = std::max(logs[k] - shift, 0.0);
    return mu;
}

WeylVec full_vector(const std::vector<double>& logs, double shift) {
    WeylVec mu(logs.size());
    for (size_t k = 0; k < logs.size(); ++k) mu(k) = logs[k] - shift;
    return mu;
}

void check_group_shape(const MatK& g, int n) {
    if (!g.is_square() || g.rows() != n)
        throw std::invalid_argument("element size does not match the group");
}

}  // namespace

WeylVec cartan_mu(const MatK& g, const FormSpec& b) {
    check_group_shape(g, b.dim());
    if (!b.has_unitary_gram())
        throw std::invalid_argument(
            "cartan_mu needs the standard (unitary) Gram basis of the family");
    auto logs = log_values(singular_values(g));
    check_pairing(logs, 0.0, 1e-6);
    return truncate_to_rank(logs, 0.0, b.rank());
}

WeylVec cartan_mu(const MatK& g, const GLGroup& gl) {
    check_group_shape(g, gl.N);
    return full_vector(log_values(singular_values(g)), 0.0);
}

WeylVec lyapunov_lambda(const MatK& g, const FormSpec& b) {
    check_group_shape(g, b.dim());
    auto logs = log_values(spectrum(g));
    check_pairing(logs, 0.0, 1e-6);
    return truncate_to_rank(logs, 0.0, b.rank());
}

WeylVec lyapunov_lambda(const MatK& g, const GLGroup& gl) {
    check_group_shape(g, gl.N);
    return full_vector(log_values(spectrum(g)), 0.0);
}

namespace {

// logs of singular values of g^(2^k), scale-tracked; also returns the
// accumulated log-scale shift.
std::pair<std::vector<double>, double> power_logs(const MatK& g, int log2_k) {
    MatK a = g;
    double shift = 0.0;
    for (int t = 0; t < log2_k; ++t) {
        a = a * a;
        double nrm = a.norm();
        if (nrm <= 0) throw PairingError("matrix power collapsed to zero");
        a = a * (1.0 / nrm);
        shift = 2 * shift + std::log(nrm);
    }
    auto logs = log_values(singular_values(a));
    for (double& l : logs) l += shift;
    return {logs, shift};
}

}  // namespace

WeylVec mu_of_power(const MatK& g, const FormSpec& b, int log2_k) {
    check_group_shape(g, b.dim());
    auto [logs, shift] = power_logs(g, log2_k);
    (void)shift;
    check_pairing(logs, 0.0, 1e-6);
    return truncate_to_rank(logs, 0.0, b.rank()) / std::pow(2.0, log2_k);
}

WeylVec mu_of_power(const MatK& g, const GLGroup& gl, int log2_k) {
    check_group_shape(g, gl.N);
    auto [logs, shift] = power_logs(g, log2_k);
    (void)shift;
    return full_vector(logs, 0.0) / std::pow(2.0, log2_k);
}

double lyapunov_crosscheck(const MatK& g, const FormSpec& b, int log2_k) {
    WeylVec lam = lyapunov_lambda(g, b);
    WeylVec est = mu_of_power(g, b, log2_k);
    return (lam - est).cwiseAbs().maxCoeff();
}

WeylVec opposition_apply(const RootData& rd, const WeylVec& v) { return rd.opposition(v); }

}  // namespace isograss
