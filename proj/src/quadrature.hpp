#pragma once

#include <functional>

namespace ccfv {

/// Adaptive Simpson quadrature of f on [a, b] (b < a integrates with sign).
/// rel_tol is relative to the running estimate; recursion depth is capped at
/// max_depth, after which the current panel estimate is accepted.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double rel_tol, int max_depth = 30);

} // namespace ccfv
