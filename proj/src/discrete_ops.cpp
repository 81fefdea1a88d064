#include "discrete_ops.hpp"

#include "kernels/kernels.hpp"

#include <cmath>
#include <stdexcept>

namespace ccfv {

namespace detail {

double comp_sum(const double* x, std::size_t n) {
    double s = 0.0, comp = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double t = s + x[i];
        if (std::abs(s) >= std::abs(x[i]))
            comp += (s - t) + x[i];
        else
            comp += (x[i] - t) + s;
        s = t;
    }
    return s + comp;
}

} // namespace detail

namespace {

template <class F>
double comp_sum_of(const std::vector<double>& v, F f) {
    double s = 0.0, comp = 0.0;
    for (double x : v) {
        const double y = f(x);
        const double t = s + y;
        if (std::abs(s) >= std::abs(y))
            comp += (s - t) + y;
        else
            comp += (y - t) + s;
        s = t;
    }
    return s + comp;
}

} // namespace

ScalarField laplacian(const ScalarField& f) {
    ScalarField out(f.grid);
    const double inv_h2 = 1.0 / (f.grid.h * f.grid.h);
    kernels::active_ops().laplacian(f.values.data(), f.grid.nx, f.grid.ny, inv_h2,
                                    out.values.data());
    return out;
}

FaceField gradient_faces(const ScalarField& f) {
    FaceField out(f.grid);
    kernels::active_ops().gradient_faces(f.values.data(), f.grid.nx, f.grid.ny,
                                         1.0 / f.grid.h, out.x_faces.data(),
                                         out.y_faces.data());
    return out;
}

ScalarField divergence(const FaceField& flux) {
    if (!flux.boundary_is_zero())
        throw std::invalid_argument("divergence: boundary faces must carry zero flux");
    ScalarField out(flux.grid);
    kernels::active_ops().divergence(flux.x_faces.data(), flux.y_faces.data(),
                                     flux.grid.nx, flux.grid.ny, 1.0 / flux.grid.h,
                                     out.values.data());
    return out;
}

FaceField chemotaxis_flux(const ScalarField& u, const ScalarField& v, const Parameters& p) {
    if (u.grid != v.grid)
        throw std::invalid_argument("chemotaxis_flux: u and v live on different grids");
    // v > 0 cellwise implies every arithmetic-mean face value is positive.
    for (double x : v.values)
        if (!(x > 0.0)) throw std::domain_error("chemotaxis_flux: v must be > 0 everywhere");
    FaceField out(u.grid);
    kernels::active_ops().upwind_flux(u.values.data(), v.values.data(), u.grid.nx,
                                      u.grid.ny, 1.0 / u.grid.h, p.chi, p.beta,
                                      out.x_faces.data(), out.y_faces.data());
    return out;
}

ScalarField cell_grad_sq(const ScalarField& f) {
    const FaceField g = gradient_faces(f);
    ScalarField out(f.grid);
    kernels::active_ops().cell_grad_sq(g.x_faces.data(), g.y_faces.data(), f.grid.nx,
                                       f.grid.ny, out.values.data());
    return out;
}

double integral(const ScalarField& f) {
    const double h2 = f.grid.h * f.grid.h;
    return h2 * detail::comp_sum(f.values.data(), f.values.size());
}

double norm_lp(const ScalarField& f, int p) {
    const double h2 = f.grid.h * f.grid.h;
    switch (p) {
        case 1: return h2 * comp_sum_of(f.values, [](double x) { return std::abs(x); });
        case 2: return std::sqrt(h2 * comp_sum_of(f.values, [](double x) { return x * x; }));
        case 3:
            return std::cbrt(h2 * comp_sum_of(f.values, [](double x) {
                                 return std::abs(x) * x * x;
                             }));
        case 4:
            return std::pow(h2 * comp_sum_of(f.values, [](double x) {
                                const double x2 = x * x;
                                return x2 * x2;
                            }),
                            0.25);
        default: throw std::invalid_argument("norm_lp: p must be in {1,2,3,4}");
    }
}

double norm_linf(const ScalarField& f) {
    double m = 0.0;
    for (double x : f.values) m = std::max(m, std::abs(x));
    return m;
}

double grad_norm_lp(const ScalarField& f, int p) {
    if (p != 2 && p != 4) throw std::invalid_argument("grad_norm_lp: p must be 2 or 4");
    const FaceField g = gradient_faces(f);
    const double h2 = f.grid.h * f.grid.h;
    auto pw = [p](double x) {
        const double x2 = x * x;
        return p == 2 ? x2 : x2 * x2;
    };
    const double s = comp_sum_of(g.x_faces, pw) + comp_sum_of(g.y_faces, pw);
    return p == 2 ? std::sqrt(h2 * s) : std::pow(h2 * s, 0.25);
}

double min_value(const ScalarField& f) {
    double m = f.values.empty() ? 0.0 : f.values[0];
    for (double x : f.values) m = std::min(m, x);
    return m;
}

double max_value(const ScalarField& f) {
    double m = f.values.empty() ? 0.0 : f.values[0];
    for (double x : f.values) m = std::max(m, x);
    return m;
}

double max_face_speed(const ScalarField& v) {
    const int nx = v.grid.nx, ny = v.grid.ny;
    const double inv_h = 1.0 / v.grid.h;
    double amax = 0.0;
    for (int j = 0; j < ny; ++j) {
        for (int i = 1; i < nx; ++i) {
            const double vl = v.at(i - 1, j), vr = v.at(i, j);
            const double a = ((vr - vl) * inv_h) / (0.5 * (vl + vr));
            amax = std::max(amax, std::abs(a));
        }
    }
    for (int j = 1; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            const double vl = v.at(i, j - 1), vr = v.at(i, j);
            const double a = ((vr - vl) * inv_h) / (0.5 * (vl + vr));
            amax = std::max(amax, std::abs(a));
        }
    }
    return amax;
}

} // namespace ccfv
