#pragma once

#include "discrete_ops.hpp"
#include "params.hpp"
#include "state.hpp"

#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace ccfv {

/// One time sample of every tracked functional.
struct DiagnosticsRecord {
    double t = 0.0;
    double mass_u = 0.0;
    double l2_u = 0.0;
    double linf_u = 0.0;
    double min_u = 0.0;
    double mass_ode_residual = 0.0;
    double linf_U = 0.0; // U = u - r/mu
    double l2_U = 0.0;
    double linf_v = 0.0;
    double min_v = 0.0;
    double l2_grad_w = 0.0;
    double l4_grad_w = 0.0;
    double linf_grad_w = 0.0;
    double linf_grad_v_over_v = 0.0;
    double energy_F = 0.0;
    double energy_identity_residual = 0.0;
    double gn1_ratio = 0.0; // 0 marks a degenerate (constant-w) sample
    double gn2_ratio = 0.0;
    std::optional<double> upvq;
    double dt_last = 0.0;
};

/// Transformed signal w = -ln(v / v0_sup) >= 0. Warns-by-throw when the
/// monotone bound v <= v0_sup was violated upstream.
ScalarField w_from_v(const ScalarField& v, double v0_sup);

/// Energy functional: integral of G(u) plus half the face-based Dirichlet
/// energy of w. Cells with u below the diagnostic floor evaluate G at the
/// floor (G extends continuously to 0; the floor keeps file-based initial
/// data with zeros measurable).
double energy(const State& s, const Parameters& p);

/// Density floor below which 1/S-weighted integrands are excluded.
double diagnostic_u_floor(const Parameters& p);

struct EnergyIdentity {
    double residual = 0.0;  // |dF/dt - rhs|
    double dF_dt = 0.0;     // forward difference aligned with the solver step
    double rhs = 0.0;       // discrete dissipation terms at the earlier state
    long low_u_cells = 0;   // cells excluded from the 1/S integrals
};

/// Exact-identity residual between two states one Euler step apart.
/// Contract: O(dt + h^2) under simultaneous refinement.
EnergyIdentity energy_identity_residual(const State& prev, const State& next,
                                        const Parameters& p);

struct OdiSample {
    double t, y, h, g;
};

struct OdiReport {
    bool hypothesis_ok = false; // y(t0) < chi/(2 eta)
    bool monotone_ok = false;   // finite differences of y <= tol
    bool budget_ok = false;     // y + 1/2 int h + int g < y(t0) + tol
    double worst_violation = 0.0;
};

/// Differential-inequality check: monotonicity and integral budget of the
/// dissipation estimate, trapezoid quadrature over the samples.
OdiReport odi_verify(std::span<const OdiSample> series, double chi, double eta, double tol);

/// Interpolation-constant witness 2 ||grad w||_4^4 / (||lap w||_2^2 ||grad w||_2^2).
/// Throws on constant w (degenerate input).
double gn1_ratio(const ScalarField& w);

/// Witness ||f||_3^3 / (||f||_W12^2 ||f||_1 + ||f||_1^3); throws on the zero field.
double gn2_ratio(const ScalarField& f);

struct ConvergenceMetrics {
    double linf_U, linf_v, linf_grad_v_over_v;
};

/// The triple whose simultaneous decay marks convergence to (r/mu, 0, 0).
ConvergenceMetrics convergence_metrics(const State& s, const Parameters& p);

struct DecayFit {
    double rate = 0.0;      // fitted decay exponent (positive = decaying)
    double prefactor = 0.0;
    double r_squared = 0.0;
    double t_lo = 0.0, t_hi = 0.0;
    int samples = 0;
};

/// Least-squares line on (t, ln y) over the window; rate = -slope.
/// Requires y > 0 on the window and at least 5 samples.
DecayFit fit_decay_rate(std::span<const std::pair<double, double>> series, double t_lo,
                        double t_hi);

/// h^2 sum of u^p v^-q. Requires v > 0, p > 1 and 0 < q < p - 1 (the mu*p
/// part of the admissibility window is checked where mu is known).
double up_vq_integral(const State& s, double p_exp, double q_exp);

/// Earliest record time after which pred holds for every remaining record;
/// nullopt if that never happens.
std::optional<double> transient_time(std::span<const DiagnosticsRecord> records,
                                     const std::function<bool(const DiagnosticsRecord&)>& pred);

/// Assembles the per-record sample. mass_ode_residual, the identity residual
/// and dt_last are owned by the caller (the time loop) and patched afterwards.
DiagnosticsRecord make_record(const State& s, const Parameters& p,
                              std::optional<std::pair<double, double>> upvq_exponents);

} // namespace ccfv
