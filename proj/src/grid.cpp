#include "grid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace ccfv {

Grid2D::Grid2D(int nx_, int ny_, double lx_, double ly_)
    : nx(nx_), ny(ny_), lx(lx_), ly(ly_) {
    if (nx < 4 || ny < 4)
        throw std::invalid_argument("Grid2D: nx and ny must be >= 4, got nx=" +
                                    std::to_string(nx) + " ny=" + std::to_string(ny));
    if (!(lx > 0.0) || !(ly > 0.0))
        throw std::invalid_argument("Grid2D: lx and ly must be > 0");
    h = lx / nx;
    // Square cells: lx/nx and ly/ny must agree exactly.
    if (h != ly / ny)
        throw std::invalid_argument("Grid2D: cells must be square (lx/nx == ly/ny)");
}

double Grid2D::lambda1() const {
    const double pi = std::numbers::pi;
    return pi * pi * std::min(1.0 / (lx * lx), 1.0 / (ly * ly));
}

} // namespace ccfv
