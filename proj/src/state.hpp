#pragma once

#include "field.hpp"

#include <optional>

namespace ccfv {

/// Solution pair (u, v) at a time instant. u >= 0 (cell density) and v > 0
/// (signal); v never exceeds v0_sup, the sup of the initial signal, which is
/// recorded once at t = 0. w_evolved carries the independently integrated
/// transformed signal when the cross-check is enabled.
struct State {
    double t = 0.0;
    ScalarField u;
    ScalarField v;
    std::optional<ScalarField> w_evolved;
    double v0_sup = 0.0;
};

} // namespace ccfv
