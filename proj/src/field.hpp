#pragma once

#include "grid.hpp"

#include <vector>

namespace ccfv {

/// One cell-centered unknown on a Grid2D, row-major from the y-min row.
struct ScalarField {
    Grid2D grid;
    std::vector<double> values;

    ScalarField() = default;
    explicit ScalarField(const Grid2D& g, double fill = 0.0)
        : grid(g), values(g.cell_count(), fill) {}

    double& at(int i, int j) { return values[static_cast<std::size_t>(j) * grid.nx + i]; }
    double at(int i, int j) const { return values[static_cast<std::size_t>(j) * grid.nx + i]; }

    bool all_finite() const;
};

/// Face-centered values (gradients or fluxes). x_faces has (nx+1) * ny
/// entries, y_faces nx * (ny+1); boundary faces carry 0 when the field
/// represents a flux (homogeneous Neumann).
struct FaceField {
    Grid2D grid;
    std::vector<double> x_faces;
    std::vector<double> y_faces;

    FaceField() = default;
    explicit FaceField(const Grid2D& g)
        : grid(g),
          x_faces(static_cast<std::size_t>(g.nx + 1) * g.ny, 0.0),
          y_faces(static_cast<std::size_t>(g.nx) * (g.ny + 1), 0.0) {}

    double& fx(int i, int j) { return x_faces[static_cast<std::size_t>(j) * (grid.nx + 1) + i]; }
    double fx(int i, int j) const { return x_faces[static_cast<std::size_t>(j) * (grid.nx + 1) + i]; }
    double& fy(int i, int j) { return y_faces[static_cast<std::size_t>(j) * grid.nx + i]; }
    double fy(int i, int j) const { return y_faces[static_cast<std::size_t>(j) * grid.nx + i]; }

    bool boundary_is_zero() const;
};

} // namespace ccfv
