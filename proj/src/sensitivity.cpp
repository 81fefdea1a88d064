#include "sensitivity.hpp"

#include "quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace ccfv {

namespace detail {

SensKind sens_kind(double beta) {
    if (beta == 0.0) return SensKind::beta_zero;
    if (beta == 0.5) return SensKind::beta_half;
    return SensKind::general;
}

} // namespace detail

double sensitivity_value(double u, const Parameters& p) {
    if (u < 0.0) throw std::domain_error("sensitivity_value: u must be >= 0");
    switch (detail::sens_kind(p.beta)) {
        case detail::SensKind::beta_zero: return p.chi * u / (u + 1.0);
        case detail::SensKind::beta_half: return p.chi * u / std::sqrt(u + 1.0);
        case detail::SensKind::general: break;
    }
    return p.chi * u * std::pow(u + 1.0, p.beta - 1.0);
}

double g_prime(double s, const Parameters& p) {
    if (!(s > 0.0)) throw std::domain_error("g_prime: s must be > 0");
    const double a = p.r / p.mu;
    if (s == a) return 0.0;
    return adaptive_simpson([&](double sigma) { return 1.0 / sensitivity_value(sigma, p); },
                            a, s, p.quad_tol);
}

double big_g(double s, const Parameters& p) {
    if (!(s > 0.0)) throw std::domain_error("big_g: s must be > 0");
    const double a = p.r / p.mu;
    if (s == a) return 0.0;
    // Nested integral collapsed to one pass: G(s) = int_a^s (s - sigma)/S(sigma).
    const double g = adaptive_simpson(
        [&](double sigma) { return (s - sigma) / sensitivity_value(sigma, p); }, a, s,
        p.quad_tol);
    // Exact value is strictly positive away from a; clip quadrature noise.
    return g < 0.0 ? 0.0 : g;
}

} // namespace ccfv
