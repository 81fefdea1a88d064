#pragma once

#include <utility>

namespace ccfv {

/// Model coefficients and numerical controls; the single source of truth
/// for a run. The sensitivity is S(u) = chi * u * (u+1)^(beta-1) and the
/// reaction is the logistic source r*u - mu*u^2.
struct Parameters {
    double r = 1.0;          // growth rate, > 0
    double mu = 1.0;         // logistic damping, > 0
    double beta = 0.0;       // sensitivity exponent, < 1
    double chi = 1.0;        // sensitivity amplitude, > 0
    double cfl_safety = 0.8; // in (0, 1]
    double t_end = 1.0;
    double quad_tol = 1e-8;  // relative tolerance for the energy-density quadrature

    /// Throws std::invalid_argument naming the offending field.
    void validate() const;

    double carrying_capacity() const { return r / mu; }
};

/// Spatially homogeneous attractor of the system: (r/mu, 0).
std::pair<double, double> steady_state(const Parameters& p);

} // namespace ccfv
