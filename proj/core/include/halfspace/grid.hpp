#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

#include "halfspace/geometry.hpp"
#include "halfspace/medium.hpp"

namespace halfspace {

/// Uniform vertex-centered grid on the cube [-L, L]^3.
///
/// n is odd so that a node plane lies exactly on x3 = 0 and the material
/// cells between node planes straddle the interface symmetrically; the cell
/// centers at half-integer heights then never sit on the discontinuity.
struct BoxGrid {
    double half_width;
    int n;

    BoxGrid(double L, int nodes_per_axis) : half_width(L), n(nodes_per_axis) {
        if (!(L > 0.0))
            throw std::invalid_argument("BoxGrid: half_width must be positive");
        if (n < 17 || n % 2 == 0)
            throw std::invalid_argument("BoxGrid: n must be odd and >= 17");
    }

    double spacing() const { return 2.0 * half_width / (n - 1); }
    double coord(int i) const { return -half_width + i * spacing(); }
    Point3 node(int i, int j, int k) const { return {coord(i), coord(j), coord(k)}; }

    std::size_t index(int i, int j, int k) const {
        return (static_cast<std::size_t>(i) * n + j) * n + k;
    }
    std::size_t node_count() const {
        return static_cast<std::size_t>(n) * n * n;
    }
    bool is_boundary(int i, int j, int k) const {
        return i == 0 || j == 0 || k == 0 || i == n - 1 || j == n - 1 || k == n - 1;
    }
    int nearest(double v) const {
        const int i = static_cast<int>(std::lround((v + half_width) / spacing()));
        return std::clamp(i, 0, n - 1);
    }
    bool contains(const Point3& p) const {
        return std::abs(p.x1) < half_width && std::abs(p.x2) < half_width &&
               std::abs(p.x3) < half_width;
    }
};

/// Scalar values on the nodes of a BoxGrid, row-major with x3 fastest.
struct GridField {
    BoxGrid grid;
    std::vector<double> values;

    explicit GridField(const BoxGrid& g) : grid(g), values(g.node_count(), 0.0) {}

    double& at(int i, int j, int k) { return values[grid.index(i, j, k)]; }
    double at(int i, int j, int k) const { return values[grid.index(i, j, k)]; }
};

/// Pointwise material coefficient; returns the value at a sample point.
/// Points exactly on the discontinuity see the harmonic mean of the two
/// sides (the series composition a face in the interface plane presents).
using CoefficientSampler = std::function<double(const Point3&)>;

CoefficientSampler flat_coefficient(const LayeredMedium& medium);

/// Face-centered coefficients for the three face families of a BoxGrid.
/// The coefficient of the face between two adjacent nodes is the harmonic
/// mean of the material sampled at the two cell-interior quarter points of
/// the connecting segment, which is exact for a flat two-layer medium
/// aligned with a node plane.
struct CoefficientField {
    int n = 0;
    std::vector<double> ax, ay, az; // face between node and its +x1/+x2/+x3 neighbor

    static CoefficientField build(const BoxGrid& grid, const CoefficientSampler& sampler);

    std::size_t fx(int i, int j, int k) const {
        return (static_cast<std::size_t>(i) * n + j) * n + k; // i in [0, n-1)
    }
    std::size_t fy(int i, int j, int k) const {
        return (static_cast<std::size_t>(i) * (n - 1) + j) * n + k; // j in [0, n-1)
    }
    std::size_t fz(int i, int j, int k) const {
        return (static_cast<std::size_t>(i) * n + j) * (n - 1) + k; // k in [0, n-1)
    }
};

} // namespace halfspace
