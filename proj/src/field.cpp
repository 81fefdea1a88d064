#include "field.hpp"

#include <cmath>

namespace ccfv {

bool ScalarField::all_finite() const {
    for (double v : values)
        if (!std::isfinite(v)) return false;
    return true;
}

bool FaceField::boundary_is_zero() const {
    const int nx = grid.nx, ny = grid.ny;
    for (int j = 0; j < ny; ++j)
        if (fx(0, j) != 0.0 || fx(nx, j) != 0.0) return false;
    for (int i = 0; i < nx; ++i)
        if (fy(i, 0) != 0.0 || fy(i, ny) != 0.0) return false;
    return true;
}

} // namespace ccfv
