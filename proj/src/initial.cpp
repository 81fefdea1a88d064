#include "initial.hpp"

#include "io.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace ccfv {

IcMode ic_mode_from_string(const std::string& s) {
    if (s == "constant") return IcMode::constant;
    if (s == "bump") return IcMode::bump;
    if (s == "random_fourier") return IcMode::random_fourier;
    if (s == "file") return IcMode::file;
    throw std::invalid_argument("ic_mode: unknown mode '" + s + "'");
}

std::string to_string(IcMode m) {
    switch (m) {
        case IcMode::constant: return "constant";
        case IcMode::bump: return "bump";
        case IcMode::random_fourier: return "random_fourier";
        case IcMode::file: return "file";
    }
    return "?";
}

void InitialCondition::validate() const {
    if (!(u_base > 0.0)) throw std::invalid_argument("InitialCondition: u_base must be > 0");
    if (!(v_base > 0.0)) throw std::invalid_argument("InitialCondition: v_base must be > 0");
    if (!(amplitude >= 0.0 && amplitude < 1.0))
        throw std::invalid_argument("InitialCondition: amplitude must be in [0, 1)");
    if (mode == IcMode::random_fourier && modes_k < 1)
        throw std::invalid_argument("InitialCondition: modes_k must be >= 1");
    if (mode == IcMode::file && (u_file.empty() || v_file.empty()))
        throw std::invalid_argument("InitialCondition: file mode needs u0_file and v0_file");
}

namespace {

double uniform01(std::mt19937_64& rng) {
    // Portable: top 53 bits, identical across standard libraries.
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Seeded cosine series, normalized so sup over cell centers is exactly 1.
/// Returns an all-zero field in the (measure-zero) degenerate draw.
std::vector<double> fourier_profile(const Grid2D& g, int modes_k, std::mt19937_64& rng) {
    const double pi = std::numbers::pi;
    std::vector<double> coef;
    coef.reserve(static_cast<std::size_t>(modes_k + 1) * (modes_k + 1));
    for (int k = 0; k <= modes_k; ++k)
        for (int m = 0; m <= modes_k; ++m)
            coef.push_back(k == 0 && m == 0 ? 0.0 : 2.0 * uniform01(rng) - 1.0);

    std::vector<double> prof(g.cell_count(), 0.0);
    double sup = 0.0;
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            const double x = g.x_center(i), y = g.y_center(j);
            double s = 0.0;
            std::size_t c = 0;
            for (int k = 0; k <= modes_k; ++k)
                for (int m = 0; m <= modes_k; ++m, ++c)
                    if (coef[c] != 0.0)
                        s += coef[c] * std::cos(k * pi * x / g.lx) * std::cos(m * pi * y / g.ly);
            prof[static_cast<std::size_t>(j) * g.nx + i] = s;
            sup = std::max(sup, std::abs(s));
        }
    }
    if (sup > 0.0)
        for (double& s : prof) s /= sup;
    return prof;
}

/// Radial cos^4 bump, 1 at the domain center, 0 outside the inscribed disk.
double bump_profile(const Grid2D& g, double x, double y) {
    const double pi = std::numbers::pi;
    const double cx = 0.5 * g.lx, cy = 0.5 * g.ly;
    const double rad = 0.5 * std::min(g.lx, g.ly);
    const double rho = std::hypot(x - cx, y - cy) / rad;
    if (rho >= 1.0) return 0.0;
    const double c = std::cos(0.5 * pi * rho);
    return (c * c) * (c * c);
}

void apply_perturbation(ScalarField& f, double base, double amplitude,
                        const std::vector<double>& profile, double sign) {
    if (amplitude == 0.0) return;
    for (std::size_t c = 0; c < f.values.size(); ++c)
        f.values[c] = base * (1.0 + sign * amplitude * profile[c]);
}

ScalarField load_field(const std::string& path, const Grid2D& g, const char* what) {
    const io::RawField raw = io::read_field_snapshot(path);
    if (raw.nx != g.nx || raw.ny != g.ny)
        throw std::invalid_argument(std::string("make_initial: ") + what + " snapshot " +
                                    path + " does not match the grid");
    ScalarField f(g);
    f.values = raw.values;
    return f;
}

} // namespace

State make_initial(const InitialCondition& ic, const Grid2D& g, const Parameters& p) {
    ic.validate();
    p.validate();
    if (!(ic.v_base * (1.0 - ic.amplitude) > 0.0))
        throw std::invalid_argument("make_initial: v_base*(1-amplitude) must be > 0");

    State s;
    s.t = 0.0;
    s.u = ScalarField(g, ic.u_base);
    s.v = ScalarField(g, ic.v_base);

    switch (ic.mode) {
        case IcMode::constant:
            break;
        case IcMode::bump: {
            std::vector<double> prof(g.cell_count());
            for (int j = 0; j < g.ny; ++j)
                for (int i = 0; i < g.nx; ++i)
                    prof[static_cast<std::size_t>(j) * g.nx + i] =
                        bump_profile(g, g.x_center(i), g.y_center(j));
            apply_perturbation(s.u, ic.u_base, ic.amplitude, prof, +1.0);
            apply_perturbation(s.v, ic.v_base, ic.amplitude, prof, -1.0);
            break;
        }
        case IcMode::random_fourier: {
            std::mt19937_64 rng(ic.seed);
            const std::vector<double> pu = fourier_profile(g, ic.modes_k, rng);
            const std::vector<double> pv = fourier_profile(g, ic.modes_k, rng);
            apply_perturbation(s.u, ic.u_base, ic.amplitude, pu, +1.0);
            apply_perturbation(s.v, ic.v_base, ic.amplitude, pv, +1.0);
            break;
        }
        case IcMode::file: {
            s.u = load_field(ic.u_file, g, "u0");
            s.v = load_field(ic.v_file, g, "v0");
            break;
        }
    }

    double umax = 0.0, vmin = s.v.values[0];
    for (double x : s.u.values) {
        if (x < 0.0) throw std::invalid_argument("make_initial: u0 must be >= 0");
        umax = std::max(umax, x);
    }
    if (umax == 0.0) throw std::invalid_argument("make_initial: u0 must not be identically 0");
    double vmax = s.v.values[0];
    for (double x : s.v.values) {
        vmin = std::min(vmin, x);
        vmax = std::max(vmax, x);
    }
    if (!(vmin > 0.0)) throw std::invalid_argument("make_initial: v0 must be > 0");
    s.v0_sup = vmax;
    return s;
}

} // namespace ccfv
