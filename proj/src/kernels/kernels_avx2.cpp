#include "kernels.hpp"

#if defined(__x86_64__) || defined(__i386__)

#include <immintrin.h>

// AVX2 lane. Same per-element expressions and operation order as the scalar
// lane (add/sub/mul/div/sqrt are all correctly rounded), so outputs are
// bit-identical. FMA is deliberately not used.

namespace ccfv::kernels {
namespace {

inline long idx(int i, int j, int nx) { return static_cast<long>(j) * nx + i; }

void laplacian_avx2(const double* f, int nx, int ny, double inv_h2, double* out) {
    const __m256d vinv = _mm256_set1_pd(inv_h2);
    const __m256d vfour = _mm256_set1_pd(4.0);
    for (int j = 0; j < ny; ++j) {
        const double* row = f + idx(0, j, nx);
        const double* rs = (j > 0) ? row - nx : row;
        const double* rn = (j < ny - 1) ? row + nx : row;
        double* o = out + idx(0, j, nx);

        auto edge = [&](int i) {
            const double fc = row[i];
            const double fw = (i > 0) ? row[i - 1] : fc;
            const double fe = (i < nx - 1) ? row[i + 1] : fc;
            const double sx = fw + fe;
            const double sy = rs[i] + rn[i];
            o[i] = ((sx + sy) - 4.0 * fc) * inv_h2;
        };

        edge(0);
        int i = 1;
        for (; i + 3 <= nx - 2; i += 4) {
            const __m256d fc = _mm256_loadu_pd(row + i);
            const __m256d fw = _mm256_loadu_pd(row + i - 1);
            const __m256d fe = _mm256_loadu_pd(row + i + 1);
            const __m256d fs = _mm256_loadu_pd(rs + i);
            const __m256d fn = _mm256_loadu_pd(rn + i);
            const __m256d sx = _mm256_add_pd(fw, fe);
            const __m256d sy = _mm256_add_pd(fs, fn);
            const __m256d t = _mm256_sub_pd(_mm256_add_pd(sx, sy), _mm256_mul_pd(vfour, fc));
            _mm256_storeu_pd(o + i, _mm256_mul_pd(t, vinv));
        }
        for (; i < nx - 1; ++i) edge(i);
        if (nx > 1) edge(nx - 1);
    }
}

void gradient_faces_avx2(const double* f, int nx, int ny, double inv_h,
                         double* gx, double* gy) {
    const __m256d vinv = _mm256_set1_pd(inv_h);
    const int sx = nx + 1;
    for (int j = 0; j < ny; ++j) {
        const double* row = f + idx(0, j, nx);
        double* g = gx + static_cast<long>(j) * sx;
        g[0] = 0.0;
        int i = 1;
        for (; i + 3 <= nx - 1; i += 4) {
            const __m256d r = _mm256_loadu_pd(row + i);
            const __m256d l = _mm256_loadu_pd(row + i - 1);
            _mm256_storeu_pd(g + i, _mm256_mul_pd(_mm256_sub_pd(r, l), vinv));
        }
        for (; i < nx; ++i) g[i] = (row[i] - row[i - 1]) * inv_h;
        g[nx] = 0.0;
    }
    for (int i = 0; i < nx; ++i) gy[i] = 0.0;
    for (int j = 1; j < ny; ++j) {
        const double* lo = f + idx(0, j - 1, nx);
        const double* hi = f + idx(0, j, nx);
        double* g = gy + static_cast<long>(j) * nx;
        int i = 0;
        for (; i + 3 < nx; i += 4) {
            const __m256d a = _mm256_loadu_pd(hi + i);
            const __m256d b = _mm256_loadu_pd(lo + i);
            _mm256_storeu_pd(g + i, _mm256_mul_pd(_mm256_sub_pd(a, b), vinv));
        }
        for (; i < nx; ++i) g[i] = (hi[i] - lo[i]) * inv_h;
    }
    double* gtop = gy + static_cast<long>(ny) * nx;
    for (int i = 0; i < nx; ++i) gtop[i] = 0.0;
}

void divergence_avx2(const double* gx, const double* gy, int nx, int ny,
                     double inv_h, double* out) {
    const __m256d vinv = _mm256_set1_pd(inv_h);
    const int sx = nx + 1;
    for (int j = 0; j < ny; ++j) {
        const double* gxr = gx + static_cast<long>(j) * sx;
        const double* gys = gy + static_cast<long>(j) * nx;
        const double* gyn = gys + nx;
        double* o = out + idx(0, j, nx);
        int i = 0;
        for (; i + 3 < nx; i += 4) {
            const __m256d dx = _mm256_sub_pd(_mm256_loadu_pd(gxr + i + 1),
                                             _mm256_loadu_pd(gxr + i));
            const __m256d dy = _mm256_sub_pd(_mm256_loadu_pd(gyn + i),
                                             _mm256_loadu_pd(gys + i));
            _mm256_storeu_pd(o + i, _mm256_mul_pd(_mm256_add_pd(dx, dy), vinv));
        }
        for (; i < nx; ++i)
            o[i] = ((gxr[i + 1] - gxr[i]) + (gyn[i] - gys[i])) * inv_h;
    }
}

void cell_grad_sq_avx2(const double* gx, const double* gy, int nx, int ny,
                       double* out) {
    const __m256d half = _mm256_set1_pd(0.5);
    const int sx = nx + 1;
    for (int j = 0; j < ny; ++j) {
        const double* gxr = gx + static_cast<long>(j) * sx;
        const double* gys = gy + static_cast<long>(j) * nx;
        const double* gyn = gys + nx;
        double* o = out + idx(0, j, nx);
        int i = 0;
        for (; i + 3 < nx; i += 4) {
            const __m256d xl = _mm256_loadu_pd(gxr + i);
            const __m256d xr = _mm256_loadu_pd(gxr + i + 1);
            const __m256d ys = _mm256_loadu_pd(gys + i);
            const __m256d yn = _mm256_loadu_pd(gyn + i);
            const __m256d ax = _mm256_add_pd(_mm256_mul_pd(xl, xl), _mm256_mul_pd(xr, xr));
            const __m256d ay = _mm256_add_pd(_mm256_mul_pd(ys, ys), _mm256_mul_pd(yn, yn));
            _mm256_storeu_pd(o + i, _mm256_add_pd(_mm256_mul_pd(half, ax),
                                                  _mm256_mul_pd(half, ay)));
        }
        for (; i < nx; ++i) {
            const double ax = gxr[i] * gxr[i] + gxr[i + 1] * gxr[i + 1];
            const double ay = gys[i] * gys[i] + gyn[i] * gyn[i];
            o[i] = 0.5 * ax + 0.5 * ay;
        }
    }
}

// beta = 0 and beta = 1/2 vectorize (div and sqrt only); other exponents
// need pow and take the scalar lane.
template <bool BetaHalf>
inline __m256d flux4(__m256d ul, __m256d ur, __m256d vl, __m256d vr,
                     __m256d vinv_h, __m256d vchi) {
    const __m256d half = _mm256_set1_pd(0.5);
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d zero = _mm256_setzero_pd();
    const __m256d g = _mm256_mul_pd(_mm256_sub_pd(vr, vl), vinv_h);
    const __m256d vf = _mm256_mul_pd(half, _mm256_add_pd(vl, vr));
    const __m256d a = _mm256_div_pd(g, vf);
    const __m256d mask = _mm256_cmp_pd(a, zero, _CMP_GT_OQ);
    const __m256d up = _mm256_blendv_pd(ur, ul, mask);
    const __m256d num = _mm256_mul_pd(vchi, up);
    const __m256d up1 = _mm256_add_pd(up, one);
    const __m256d den = BetaHalf ? _mm256_sqrt_pd(up1) : up1;
    const __m256d s = _mm256_div_pd(num, den);
    return _mm256_mul_pd(s, a);
}

template <bool BetaHalf>
inline double flux1(double ul, double ur, double vl, double vr, double inv_h,
                    double chi) {
    const double g = (vr - vl) * inv_h;
    const double vf = 0.5 * (vl + vr);
    const double a = g / vf;
    const double up = (a > 0.0) ? ul : ur;
    double s;
    if constexpr (BetaHalf)
        s = chi * up / __builtin_sqrt(up + 1.0);
    else
        s = chi * up / (up + 1.0);
    return s * a;
}

template <bool BetaHalf>
void upwind_flux_avx2_impl(const double* u, const double* v, int nx, int ny,
                           double inv_h, double chi, double* fx, double* fy) {
    const __m256d vinv = _mm256_set1_pd(inv_h);
    const __m256d vchi = _mm256_set1_pd(chi);
    const int sx = nx + 1;
    for (int j = 0; j < ny; ++j) {
        const double* ur = u + idx(0, j, nx);
        const double* vr = v + idx(0, j, nx);
        double* f = fx + static_cast<long>(j) * sx;
        f[0] = 0.0;
        int i = 1;
        for (; i + 3 <= nx - 1; i += 4) {
            const __m256d a = flux4<BetaHalf>(
                _mm256_loadu_pd(ur + i - 1), _mm256_loadu_pd(ur + i),
                _mm256_loadu_pd(vr + i - 1), _mm256_loadu_pd(vr + i), vinv, vchi);
            _mm256_storeu_pd(f + i, a);
        }
        for (; i < nx; ++i)
            f[i] = flux1<BetaHalf>(ur[i - 1], ur[i], vr[i - 1], vr[i], inv_h, chi);
        f[nx] = 0.0;
    }
    for (int i = 0; i < nx; ++i) fy[i] = 0.0;
    for (int j = 1; j < ny; ++j) {
        const double* ulo = u + idx(0, j - 1, nx);
        const double* uhi = u + idx(0, j, nx);
        const double* vlo = v + idx(0, j - 1, nx);
        const double* vhi = v + idx(0, j, nx);
        double* f = fy + static_cast<long>(j) * nx;
        int i = 0;
        for (; i + 3 < nx; i += 4) {
            const __m256d a = flux4<BetaHalf>(
                _mm256_loadu_pd(ulo + i), _mm256_loadu_pd(uhi + i),
                _mm256_loadu_pd(vlo + i), _mm256_loadu_pd(vhi + i), vinv, vchi);
            _mm256_storeu_pd(f + i, a);
        }
        for (; i < nx; ++i)
            f[i] = flux1<BetaHalf>(ulo[i], uhi[i], vlo[i], vhi[i], inv_h, chi);
    }
    double* ftop = fy + static_cast<long>(ny) * nx;
    for (int i = 0; i < nx; ++i) ftop[i] = 0.0;
}

void upwind_flux_avx2(const double* u, const double* v, int nx, int ny,
                      double inv_h, double chi, double beta, double* fx, double* fy) {
    if (beta == 0.0)
        upwind_flux_avx2_impl<false>(u, v, nx, ny, inv_h, chi, fx, fy);
    else if (beta == 0.5)
        upwind_flux_avx2_impl<true>(u, v, nx, ny, inv_h, chi, fx, fy);
    else
        scalar_ops().upwind_flux(u, v, nx, ny, inv_h, chi, beta, fx, fy);
}

void update_logistic_avx2(const double* u, const double* lap, const double* divf,
                          long n, double r, double mu, double dt, double* out) {
    const __m256d vr = _mm256_set1_pd(r);
    const __m256d vmu = _mm256_set1_pd(mu);
    const __m256d vdt = _mm256_set1_pd(dt);
    long c = 0;
    for (; c + 3 < n; c += 4) {
        const __m256d uc = _mm256_loadu_pd(u + c);
        const __m256d transport = _mm256_sub_pd(_mm256_loadu_pd(lap + c),
                                                _mm256_loadu_pd(divf + c));
        const __m256d reaction = _mm256_mul_pd(uc, _mm256_sub_pd(vr, _mm256_mul_pd(vmu, uc)));
        const __m256d rhs = _mm256_add_pd(transport, reaction);
        _mm256_storeu_pd(out + c, _mm256_add_pd(uc, _mm256_mul_pd(vdt, rhs)));
    }
    for (; c < n; ++c) {
        const double transport = lap[c] - divf[c];
        const double reaction = u[c] * (r - mu * u[c]);
        out[c] = u[c] + dt * (transport + reaction);
    }
}

void update_absorb_avx2(const double* v, const double* lap, const double* u,
                        long n, double dt, double* out) {
    const __m256d vdt = _mm256_set1_pd(dt);
    long c = 0;
    for (; c + 3 < n; c += 4) {
        const __m256d vc = _mm256_loadu_pd(v + c);
        const __m256d rhs = _mm256_sub_pd(_mm256_loadu_pd(lap + c),
                                          _mm256_mul_pd(_mm256_loadu_pd(u + c), vc));
        _mm256_storeu_pd(out + c, _mm256_add_pd(vc, _mm256_mul_pd(vdt, rhs)));
    }
    for (; c < n; ++c) out[c] = v[c] + dt * (lap[c] - u[c] * v[c]);
}

void update_transformed_avx2(const double* w, const double* lap, const double* gsq,
                             const double* u, long n, double dt, double* out) {
    const __m256d vdt = _mm256_set1_pd(dt);
    long c = 0;
    for (; c + 3 < n; c += 4) {
        const __m256d wc = _mm256_loadu_pd(w + c);
        const __m256d rhs = _mm256_add_pd(_mm256_sub_pd(_mm256_loadu_pd(lap + c),
                                                        _mm256_loadu_pd(gsq + c)),
                                          _mm256_loadu_pd(u + c));
        _mm256_storeu_pd(out + c, _mm256_add_pd(wc, _mm256_mul_pd(vdt, rhs)));
    }
    for (; c < n; ++c) out[c] = w[c] + dt * ((lap[c] - gsq[c]) + u[c]);
}

} // namespace

const Ops* avx2_ops_impl() {
    static const Ops ops{
        "avx2",
        laplacian_avx2,
        gradient_faces_avx2,
        divergence_avx2,
        cell_grad_sq_avx2,
        upwind_flux_avx2,
        update_logistic_avx2,
        update_absorb_avx2,
        update_transformed_avx2,
    };
    return &ops;
}

} // namespace ccfv::kernels

#endif // x86
