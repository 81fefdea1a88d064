#include "diagnostics.hpp"

#include "sensitivity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ccfv {

namespace {

double comp_sum_vec(const std::vector<double>& v) {
    return detail::comp_sum(v.data(), v.size());
}

} // namespace

ScalarField w_from_v(const ScalarField& v, double v0_sup) {
    if (!(v0_sup > 0.0)) throw std::domain_error("w_from_v: v0_sup must be > 0");
    ScalarField w(v.grid);
    for (std::size_t c = 0; c < v.values.size(); ++c) {
        const double x = v.values[c];
        if (!(x > 0.0)) throw std::domain_error("w_from_v: v must be > 0");
        if (x > v0_sup * (1.0 + 1e-12))
            throw std::domain_error("w_from_v: v exceeds v0_sup (monotone bound violated)");
        w.values[c] = -std::log(x / v0_sup);
    }
    return w;
}

double diagnostic_u_floor(const Parameters& p) { return 1e-12 * (p.r / p.mu); }

double energy(const State& s, const Parameters& p) {
    const double floor = diagnostic_u_floor(p);
    const ScalarField w = w_from_v(s.v, s.v0_sup);
    std::vector<double> gvals(s.u.values.size());
    for (std::size_t c = 0; c < s.u.values.size(); ++c)
        gvals[c] = big_g(std::max(s.u.values[c], floor), p);
    const double h2 = s.u.grid.h * s.u.grid.h;
    const double int_g = h2 * detail::comp_sum(gvals.data(), gvals.size());
    const double dirichlet = grad_norm_lp(w, 2);
    return int_g + 0.5 * dirichlet * dirichlet;
}

EnergyIdentity energy_identity_residual(const State& prev, const State& next,
                                        const Parameters& p) {
    const double dt = next.t - prev.t;
    if (!(dt > 0.0))
        throw std::invalid_argument("energy_identity_residual: states must be one step apart");

    EnergyIdentity out;
    const double floor = diagnostic_u_floor(p);
    const Grid2D& g = prev.u.grid;
    const double h2 = g.h * g.h;

    const ScalarField w = w_from_v(prev.v, prev.v0_sup);
    const ScalarField lap_w = laplacian(w);
    const ScalarField gsq_w = cell_grad_sq(w);
    const ScalarField gsq_u = cell_grad_sq(prev.u);

    // rhs = -int |grad u|^2 / S(u) - int |lap w|^2 - int lap w * |grad w|^2
    //       - mu * int u (u - r/mu) g'(u), with the u-floor exclusion.
    const double a = p.r / p.mu;
    std::vector<double> t1(g.cell_count()), t23(g.cell_count()), t4(g.cell_count());
    for (std::size_t c = 0; c < g.cell_count(); ++c) {
        const double u = prev.u.values[c];
        if (u < floor) {
            ++out.low_u_cells;
            t1[c] = 0.0;
            t4[c] = 0.0;
        } else {
            t1[c] = gsq_u.values[c] / sensitivity_value(u, p);
            t4[c] = p.mu * u * (u - a) * g_prime(u, p);
        }
        const double lw = lap_w.values[c];
        t23[c] = lw * lw + lw * gsq_w.values[c];
    }
    out.rhs = -h2 * (comp_sum_vec(t1) + comp_sum_vec(t23) + comp_sum_vec(t4));
    out.dF_dt = (energy(next, p) - energy(prev, p)) / dt;
    out.residual = std::abs(out.dF_dt - out.rhs);
    return out;
}

OdiReport odi_verify(std::span<const OdiSample> series, double chi, double eta, double tol) {
    if (series.empty()) throw std::invalid_argument("odi_verify: empty series");
    for (std::size_t k = 1; k < series.size(); ++k)
        if (!(series[k].t > series[k - 1].t))
            throw std::invalid_argument("odi_verify: t must be strictly increasing");
    for (const OdiSample& s : series)
        if (s.h < 0.0 || s.g < 0.0)
            throw std::invalid_argument("odi_verify: h and g must be nonnegative");

    OdiReport rep;
    const double y0 = series[0].y;
    rep.hypothesis_ok = eta > 0.0 && y0 < chi / (2.0 * eta);

    rep.monotone_ok = true;
    for (std::size_t k = 1; k < series.size(); ++k)
        if (series[k].y - series[k - 1].y > tol) rep.monotone_ok = false;

    rep.budget_ok = true;
    rep.worst_violation = series[0].y - y0; // == 0
    double int_h = 0.0, int_g = 0.0;
    for (std::size_t k = 1; k < series.size(); ++k) {
        const double dt = series[k].t - series[k - 1].t;
        int_h += 0.5 * dt * (series[k].h + series[k - 1].h);
        int_g += 0.5 * dt * (series[k].g + series[k - 1].g);
        const double excess = (series[k].y + 0.5 * int_h + int_g) - y0;
        rep.worst_violation = std::max(rep.worst_violation, excess);
        if (!(excess < tol)) rep.budget_ok = false;
    }
    return rep;
}

double gn1_ratio(const ScalarField& w) {
    const double g4 = grad_norm_lp(w, 4);
    const double g2 = grad_norm_lp(w, 2);
    const double lap2 = norm_lp(laplacian(w), 2);
    const double denom = (lap2 * lap2) * (g2 * g2);
    if (denom == 0.0) throw std::domain_error("gn1_ratio: constant field is degenerate");
    const double g44 = g4 * g4 * g4 * g4;
    return 2.0 * g44 / denom;
}

double gn2_ratio(const ScalarField& f) {
    const double l3 = norm_lp(f, 3);
    const double l1 = norm_lp(f, 1);
    const double l2 = norm_lp(f, 2);
    const double g2 = grad_norm_lp(f, 2);
    const double w12_sq = l2 * l2 + g2 * g2;
    const double denom = w12_sq * l1 + l1 * l1 * l1;
    if (denom == 0.0) throw std::domain_error("gn2_ratio: zero field is degenerate");
    return l3 * l3 * l3 / denom;
}

namespace {

/// Cell magnitude of grad(v)/v from face speeds, combined like cell_grad_sq.
double linf_grad_v_over_v_impl(const ScalarField& v) {
    const Grid2D& g = v.grid;
    const double inv_h = 1.0 / g.h;
    auto speed_x = [&](int i, int j) { // face between (i-1,j) and (i,j); 0 on boundary
        if (i <= 0 || i >= g.nx) return 0.0;
        const double vl = v.at(i - 1, j), vr = v.at(i, j);
        return ((vr - vl) * inv_h) / (0.5 * (vl + vr));
    };
    auto speed_y = [&](int i, int j) {
        if (j <= 0 || j >= g.ny) return 0.0;
        const double vl = v.at(i, j - 1), vr = v.at(i, j);
        return ((vr - vl) * inv_h) / (0.5 * (vl + vr));
    };
    double m = 0.0;
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            const double axl = speed_x(i, j), axr = speed_x(i + 1, j);
            const double ays = speed_y(i, j), ayn = speed_y(i, j + 1);
            const double cell =
                std::sqrt(0.5 * (axl * axl + axr * axr) + 0.5 * (ays * ays + ayn * ayn));
            m = std::max(m, cell);
        }
    }
    return m;
}

} // namespace

ConvergenceMetrics convergence_metrics(const State& s, const Parameters& p) {
    const double a = p.r / p.mu;
    double linf_U = 0.0;
    for (double x : s.u.values) linf_U = std::max(linf_U, std::abs(x - a));
    return {linf_U, norm_linf(s.v), linf_grad_v_over_v_impl(s.v)};
}

DecayFit fit_decay_rate(std::span<const std::pair<double, double>> series, double t_lo,
                        double t_hi) {
    std::vector<std::pair<double, double>> pts;
    for (const auto& [t, y] : series) {
        if (t < t_lo || t > t_hi) continue;
        if (!(y > 0.0))
            throw std::domain_error("fit_decay_rate: y must be > 0 on the window");
        pts.emplace_back(t, std::log(y));
    }
    if (pts.size() < 5)
        throw std::invalid_argument("fit_decay_rate: need at least 5 samples in the window");

    const double n = static_cast<double>(pts.size());
    double st = 0.0, sy = 0.0;
    for (auto& [t, ly] : pts) { st += t; sy += ly; }
    const double tbar = st / n, ybar = sy / n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (auto& [t, ly] : pts) {
        sxx += (t - tbar) * (t - tbar);
        sxy += (t - tbar) * (ly - ybar);
        syy += (ly - ybar) * (ly - ybar);
    }
    if (sxx == 0.0) throw std::invalid_argument("fit_decay_rate: window has no time spread");
    const double slope = sxy / sxx;
    const double ss_res = syy - slope * sxy;

    DecayFit fit;
    fit.rate = -slope;
    fit.prefactor = std::exp(ybar - slope * tbar);
    fit.r_squared = syy > 0.0 ? std::clamp(1.0 - ss_res / syy, 0.0, 1.0) : 1.0;
    fit.t_lo = t_lo;
    fit.t_hi = t_hi;
    fit.samples = static_cast<int>(pts.size());
    return fit;
}

double up_vq_integral(const State& s, double p_exp, double q_exp) {
    if (!(p_exp > 1.0)) throw std::invalid_argument("up_vq_integral: need p > 1");
    if (!(q_exp > 0.0 && q_exp < p_exp - 1.0))
        throw std::invalid_argument("up_vq_integral: need 0 < q < p - 1");
    std::vector<double> vals(s.u.values.size());
    for (std::size_t c = 0; c < vals.size(); ++c) {
        const double v = s.v.values[c];
        if (!(v > 0.0)) throw std::domain_error("up_vq_integral: v must be > 0");
        vals[c] = std::pow(s.u.values[c], p_exp) * std::pow(v, -q_exp);
    }
    const double h2 = s.u.grid.h * s.u.grid.h;
    return h2 * detail::comp_sum(vals.data(), vals.size());
}

std::optional<double> transient_time(std::span<const DiagnosticsRecord> records,
                                     const std::function<bool(const DiagnosticsRecord&)>& pred) {
    if (records.empty()) return std::nullopt;
    // Walk backwards: the answer is the first record after the last failure.
    std::ptrdiff_t first_ok = static_cast<std::ptrdiff_t>(records.size());
    for (std::ptrdiff_t k = static_cast<std::ptrdiff_t>(records.size()) - 1; k >= 0; --k) {
        if (!pred(records[k])) break;
        first_ok = k;
    }
    if (first_ok == static_cast<std::ptrdiff_t>(records.size())) return std::nullopt;
    return records[first_ok].t;
}

DiagnosticsRecord make_record(const State& s, const Parameters& p,
                              std::optional<std::pair<double, double>> upvq_exponents) {
    DiagnosticsRecord r;
    r.t = s.t;
    r.mass_u = integral(s.u);
    r.l2_u = norm_lp(s.u, 2);
    r.linf_u = norm_linf(s.u);
    r.min_u = min_value(s.u);
    r.linf_v = norm_linf(s.v);
    r.min_v = min_value(s.v);

    const ConvergenceMetrics cm = convergence_metrics(s, p);
    r.linf_U = cm.linf_U;
    r.linf_grad_v_over_v = cm.linf_grad_v_over_v;
    {
        const double a = p.r / p.mu;
        std::vector<double> usq(s.u.values.size());
        for (std::size_t c = 0; c < usq.size(); ++c) {
            const double d = s.u.values[c] - a;
            usq[c] = d * d;
        }
        const double h2 = s.u.grid.h * s.u.grid.h;
        r.l2_U = std::sqrt(h2 * detail::comp_sum(usq.data(), usq.size()));
    }

    const ScalarField w = w_from_v(s.v, s.v0_sup);
    r.l2_grad_w = grad_norm_lp(w, 2);
    r.l4_grad_w = grad_norm_lp(w, 4);
    {
        const FaceField gw = gradient_faces(w);
        double m = 0.0;
        for (double x : gw.x_faces) m = std::max(m, std::abs(x));
        for (double x : gw.y_faces) m = std::max(m, std::abs(x));
        r.linf_grad_w = m;
    }
    r.energy_F = energy(s, p);

    // Degenerate (constant) fields record 0 rather than failing the run.
    try {
        r.gn1_ratio = gn1_ratio(w);
    } catch (const std::domain_error&) {
        r.gn1_ratio = 0.0;
    }
    try {
        r.gn2_ratio = gn2_ratio(cell_grad_sq(w));
    } catch (const std::domain_error&) {
        r.gn2_ratio = 0.0;
    }

    if (upvq_exponents)
        r.upvq = up_vq_integral(s, upvq_exponents->first, upvq_exponents->second);
    return r;
}

} // namespace ccfv
