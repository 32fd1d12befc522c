#pragma once

#include "isograss/forms.hpp"

namespace isograss {

/// Raised when the (sigma, 1/sigma) pairing of singular or eigenvalue moduli
/// fails, signalling that the element drifted off the group numerically.
struct PairingError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Cartan projection in epsilon-coordinates: for GL_N(K) the N log singular
/// values descending; for Aut_K(b) in a unitary Gram basis the n largest log
/// singular values, clamped at zero (the paired reciprocals are checked and
/// dropped).
WeylVec cartan_mu(const MatK& g, const FormSpec& b);
WeylVec cartan_mu(const MatK& g, const GLGroup& gl);

/// Lyapunov projection from eigenvalue moduli, mapped through the same
/// truncation rule as mu.
WeylVec lyapunov_lambda(const MatK& g, const FormSpec& b);
WeylVec lyapunov_lambda(const MatK& g, const GLGroup& gl);

/// (1/2^log2_k) mu(g^(2^log2_k)), computed with scale-tracked repeated
/// squaring; the finite-power estimate of lambda.
WeylVec mu_of_power(const MatK& g, const FormSpec& b, int log2_k = 6);
WeylVec mu_of_power(const MatK& g, const GLGroup& gl, int log2_k = 6);

/// Max-abs difference between lyapunov_lambda and the power estimate.
double lyapunov_crosscheck(const MatK& g, const FormSpec& b, int log2_k = 6);

/// Chamber involution -w0 applied to a Weyl vector.
WeylVec opposition_apply(const RootData& rd, const WeylVec& v);

}  // namespace isograss
