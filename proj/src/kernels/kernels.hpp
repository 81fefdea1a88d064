#pragma once

namespace ccfv::kernels {

// Data-parallel inner loops over cell/face arrays. Every entry point has a
// scalar reference implementation and (on x86-64) an AVX2 variant selected at
// runtime. The two lanes execute the same IEEE operations per element in the
// same order, so results are required to be bit-identical; the equivalence
// test suite enforces that.
//
// Layout: cells are row-major i + nx*j. x-face arrays are (nx+1) x ny with
// stride nx+1, y-face arrays nx x (ny+1) with stride nx. Boundary faces are
// written as 0 (homogeneous Neumann).
struct Ops {
    const char* name;

    // 5-point Laplacian with mirrored ghost cells (zero normal flux).
    void (*laplacian)(const double* f, int nx, int ny, double inv_h2, double* out);

    // Interior face differences (f_R - f_L)/h; boundary faces 0.
    void (*gradient_faces)(const double* f, int nx, int ny, double inv_h,
                           double* gx, double* gy);

    // Cell divergence of a face field.
    void (*divergence)(const double* gx, const double* gy, int nx, int ny,
                       double inv_h, double* out);

    // |grad f|^2 at cells: mean of squared adjacent face gradients per axis.
    void (*cell_grad_sq)(const double* gx, const double* gy, int nx, int ny,
                         double* out);

    // Donor-cell chemotactic flux S(u_up) * a with face velocity
    // a = (grad v)_face / mean(v)_face. Boundary faces 0.
    void (*upwind_flux)(const double* u, const double* v, int nx, int ny,
                        double inv_h, double chi, double beta, double* fx, double* fy);

    // Forward Euler updates.
    // u' = u + dt*((lap - divf) + u*(r - mu*u))
    void (*update_logistic)(const double* u, const double* lap, const double* divf,
                            long n, double r, double mu, double dt, double* out);
    // v' = v + dt*(lap - u*v)
    void (*update_absorb)(const double* v, const double* lap, const double* u,
                          long n, double dt, double* out);
    // w' = w + dt*((lap - gsq) + u)
    void (*update_transformed)(const double* w, const double* lap, const double* gsq,
                               const double* u, long n, double dt, double* out);
};

const Ops& scalar_ops();

/// AVX2 lane, or nullptr when the build or the CPU lacks it.
const Ops* avx2_ops();

/// Lane picked at startup: AVX2 when available, scalar otherwise.
/// CCFV_KERNELS=scalar|avx2 overrides (unsupported request falls back).
const Ops& active_ops();

} // namespace ccfv::kernels
