#pragma once

#include "params.hpp"

namespace ccfv {

/// Chemotactic sensitivity S(u) = chi * u * (u+1)^(beta-1).
/// S(0) = 0 and S(u) <= chi * u for beta < 1.
/// Negative u is a domain error.
double sensitivity_value(double u, const Parameters& p);

/// Derivative of the energy density: integral of 1/S(sigma) from r/mu to s,
/// by adaptive Simpson at relative tolerance quad_tol. Sign matches s - r/mu.
/// s <= 0 is a domain error (the integrand is singular at 0).
double g_prime(double s, const Parameters& p);

/// Energy density G(s): nested integral of 1/S from r/mu, evaluated as the
/// equivalent single integral of (s - sigma)/S(sigma) over [r/mu, s] by
/// adaptive Simpson (depth cap 30, relative tolerance quad_tol).
/// G >= 0 with equality iff s = r/mu; s <= 0 is a domain error.
double big_g(double s, const Parameters& p);

namespace detail {
// Specialized evaluation kinds shared with the flux kernels so every code
// path computes S(u) with the identical floating-point expression.
enum class SensKind { beta_zero, beta_half, general };
SensKind sens_kind(double beta);
} // namespace detail

} // namespace ccfv
