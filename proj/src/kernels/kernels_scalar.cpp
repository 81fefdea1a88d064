#include "kernels.hpp"

#include <cmath>

// Reference lane. Each element is computed with a fixed operation order; the
// AVX2 lane mirrors these expressions exactly.

namespace ccfv::kernels {
namespace {

inline long idx(int i, int j, int nx) { return static_cast<long>(j) * nx + i; }

void laplacian_scalar(const double* f, int nx, int ny, double inv_h2, double* out) {
    for (int j = 0; j < ny; ++j) {
        const double* row = f + idx(0, j, nx);
        const double* rs = (j > 0) ? row - nx : row;      // mirrored ghost below
        const double* rn = (j < ny - 1) ? row + nx : row; // mirrored ghost above
        double* o = out + idx(0, j, nx);
        for (int i = 0; i < nx; ++i) {
            const double fc = row[i];
            const double fw = (i > 0) ? row[i - 1] : fc;
            const double fe = (i < nx - 1) ? row[i + 1] : fc;
            const double sx = fw + fe;
            const double sy = rs[i] + rn[i];
            o[i] = ((sx + sy) - 4.0 * fc) * inv_h2;
        }
    }
}

void gradient_faces_scalar(const double* f, int nx, int ny, double inv_h,
                           double* gx, double* gy) {
    const int sx = nx + 1;
    for (int j = 0; j < ny; ++j) {
        const double* row = f + idx(0, j, nx);
        double* g = gx + static_cast<long>(j) * sx;
        g[0] = 0.0;
        for (int i = 1; i < nx; ++i) g[i] = (row[i] - row[i - 1]) * inv_h;
        g[nx] = 0.0;
    }
    for (int i = 0; i < nx; ++i) gy[i] = 0.0;
    for (int j = 1; j < ny; ++j) {
        const double* lo = f + idx(0, j - 1, nx);
        const double* hi = f + idx(0, j, nx);
        double* g = gy + static_cast<long>(j) * nx;
        for (int i = 0; i < nx; ++i) g[i] = (hi[i] - lo[i]) * inv_h;
    }
    double* gtop = gy + static_cast<long>(ny) * nx;
    for (int i = 0; i < nx; ++i) gtop[i] = 0.0;
}

void divergence_scalar(const double* gx, const double* gy, int nx, int ny,
                       double inv_h, double* out) {
    const int sx = nx + 1;
    for (int j = 0; j < ny; ++j) {
        const double* gxr = gx + static_cast<long>(j) * sx;
        const double* gys = gy + static_cast<long>(j) * nx;
        const double* gyn = gys + nx;
        double* o = out + idx(0, j, nx);
        for (int i = 0; i < nx; ++i)
            o[i] = ((gxr[i + 1] - gxr[i]) + (gyn[i] - gys[i])) * inv_h;
    }
}

void cell_grad_sq_scalar(const double* gx, const double* gy, int nx, int ny,
                         double* out) {
    const int sx = nx + 1;
    for (int j = 0; j < ny; ++j) {
        const double* gxr = gx + static_cast<long>(j) * sx;
        const double* gys = gy + static_cast<long>(j) * nx;
        const double* gyn = gys + nx;
        double* o = out + idx(0, j, nx);
        for (int i = 0; i < nx; ++i) {
            const double ax = gxr[i] * gxr[i] + gxr[i + 1] * gxr[i + 1];
            const double ay = gys[i] * gys[i] + gyn[i] * gyn[i];
            o[i] = 0.5 * ax + 0.5 * ay;
        }
    }
}

// S(u)/flux specializations; keep the expressions in sync with
// sensitivity_value so quadrature and flux agree.
inline double flux_beta_zero(double ul, double ur, double vl, double vr,
                             double inv_h, double chi) {
    const double g = (vr - vl) * inv_h;
    const double vf = 0.5 * (vl + vr);
    const double a = g / vf;
    const double up = (a > 0.0) ? ul : ur;
    const double s = chi * up / (up + 1.0);
    return s * a;
}

inline double flux_beta_half(double ul, double ur, double vl, double vr,
                             double inv_h, double chi) {
    const double g = (vr - vl) * inv_h;
    const double vf = 0.5 * (vl + vr);
    const double a = g / vf;
    const double up = (a > 0.0) ? ul : ur;
    const double s = chi * up / std::sqrt(up + 1.0);
    return s * a;
}

inline double flux_general(double ul, double ur, double vl, double vr,
                           double inv_h, double chi, double beta) {
    const double g = (vr - vl) * inv_h;
    const double vf = 0.5 * (vl + vr);
    const double a = g / vf;
    const double up = (a > 0.0) ? ul : ur;
    const double s = chi * up * std::pow(up + 1.0, beta - 1.0);
    return s * a;
}

template <class FluxFn>
void upwind_flux_impl(const double* u, const double* v, int nx, int ny, double inv_h,
                      double* fx, double* fy, FluxFn flux) {
    const int sx = nx + 1;
    for (int j = 0; j < ny; ++j) {
        const double* ur = u + idx(0, j, nx);
        const double* vr = v + idx(0, j, nx);
        double* f = fx + static_cast<long>(j) * sx;
        f[0] = 0.0;
        for (int i = 1; i < nx; ++i)
            f[i] = flux(ur[i - 1], ur[i], vr[i - 1], vr[i], inv_h);
        f[nx] = 0.0;
    }
    for (int i = 0; i < nx; ++i) fy[i] = 0.0;
    for (int j = 1; j < ny; ++j) {
        const double* ulo = u + idx(0, j - 1, nx);
        const double* uhi = u + idx(0, j, nx);
        const double* vlo = v + idx(0, j - 1, nx);
        const double* vhi = v + idx(0, j, nx);
        double* f = fy + static_cast<long>(j) * nx;
        for (int i = 0; i < nx; ++i)
            f[i] = flux(ulo[i], uhi[i], vlo[i], vhi[i], inv_h);
    }
    double* ftop = fy + static_cast<long>(ny) * nx;
    for (int i = 0; i < nx; ++i) ftop[i] = 0.0;
}

void upwind_flux_scalar(const double* u, const double* v, int nx, int ny,
                        double inv_h, double chi, double beta, double* fx, double* fy) {
    if (beta == 0.0) {
        upwind_flux_impl(u, v, nx, ny, inv_h, fx, fy,
                         [chi](double ul, double ur, double vl, double vr, double ih) {
                             return flux_beta_zero(ul, ur, vl, vr, ih, chi);
                         });
    } else if (beta == 0.5) {
        upwind_flux_impl(u, v, nx, ny, inv_h, fx, fy,
                         [chi](double ul, double ur, double vl, double vr, double ih) {
                             return flux_beta_half(ul, ur, vl, vr, ih, chi);
                         });
    } else {
        upwind_flux_impl(u, v, nx, ny, inv_h, fx, fy,
                         [chi, beta](double ul, double ur, double vl, double vr, double ih) {
                             return flux_general(ul, ur, vl, vr, ih, chi, beta);
                         });
    }
}

void update_logistic_scalar(const double* u, const double* lap, const double* divf,
                            long n, double r, double mu, double dt, double* out) {
    for (long c = 0; c < n; ++c) {
        const double transport = lap[c] - divf[c];
        const double reaction = u[c] * (r - mu * u[c]);
        out[c] = u[c] + dt * (transport + reaction);
    }
}

void update_absorb_scalar(const double* v, const double* lap, const double* u,
                          long n, double dt, double* out) {
    for (long c = 0; c < n; ++c) out[c] = v[c] + dt * (lap[c] - u[c] * v[c]);
}

void update_transformed_scalar(const double* w, const double* lap, const double* gsq,
                               const double* u, long n, double dt, double* out) {
    for (long c = 0; c < n; ++c) out[c] = w[c] + dt * ((lap[c] - gsq[c]) + u[c]);
}

} // namespace

const Ops& scalar_ops() {
    static const Ops ops{
        "scalar",
        laplacian_scalar,
        gradient_faces_scalar,
        divergence_scalar,
        cell_grad_sq_scalar,
        upwind_flux_scalar,
        update_logistic_scalar,
        update_absorb_scalar,
        update_transformed_scalar,
    };
    return ops;
}

} // namespace ccfv::kernels
