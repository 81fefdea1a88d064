#pragma once

#include <cstddef>

namespace ccfv {

/// Uniform cell-centered rectangular mesh with square cells.
/// Cell (i, j) is centered at ((i + 1/2) h, (j + 1/2) h), row-major index
/// i + nx * j with j = 0 at the y-min edge.
struct Grid2D {
    int nx = 0;
    int ny = 0;
    double lx = 0.0;
    double ly = 0.0;
    double h = 0.0;

    Grid2D() = default;
    Grid2D(int nx_, int ny_, double lx_, double ly_);

    std::size_t cell_count() const { return static_cast<std::size_t>(nx) * ny; }
    double area() const { return lx * ly; }
    /// First nonzero Neumann eigenvalue of -Laplace on the rectangle.
    double lambda1() const;

    double x_center(int i) const { return (i + 0.5) * h; }
    double y_center(int j) const { return (j + 0.5) * h; }

    bool operator==(const Grid2D&) const = default;
};

} // namespace ccfv
