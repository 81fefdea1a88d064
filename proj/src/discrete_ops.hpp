#pragma once

#include "field.hpp"
#include "params.hpp"

namespace ccfv {

// Finite-volume operators with homogeneous Neumann boundaries. All spatial
// loops run through the runtime-dispatched kernel lanes; reductions use one
// fixed (compensated, index-ordered) summation so results never depend on
// the lane or on iteration order.

/// 5-point Laplacian with mirrored ghosts; its discrete integral is 0.
ScalarField laplacian(const ScalarField& f);

/// Face differences (f_R - f_L)/h; boundary faces 0.
FaceField gradient_faces(const ScalarField& f);

/// Cell divergence; requires zero boundary faces (contract violation otherwise).
ScalarField divergence(const FaceField& flux);

/// Donor-cell chemotactic flux S(u_up) * a, a = (grad v)_face / mean(v)_face.
/// Requires v > 0 everywhere.
FaceField chemotaxis_flux(const ScalarField& u, const ScalarField& v, const Parameters& p);

/// |grad f|^2 at cells (mean of squared adjacent face gradients per axis).
ScalarField cell_grad_sq(const ScalarField& f);

double integral(const ScalarField& f);
double norm_lp(const ScalarField& f, int p);      // p in {1, 2, 3, 4}
double norm_linf(const ScalarField& f);
double grad_norm_lp(const ScalarField& f, int p); // p in {2, 4}, face-weighted
double min_value(const ScalarField& f);
double max_value(const ScalarField& f);

/// Max face speed |(grad v)_face / mean(v)_face|; the advective CFL input.
double max_face_speed(const ScalarField& v);

namespace detail {
/// Deterministic compensated (Neumaier) sum in index order.
double comp_sum(const double* x, std::size_t n);
} // namespace detail

} // namespace ccfv
