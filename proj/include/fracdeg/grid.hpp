#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace fracdeg {

/// Uniform cell lattice in one or two dimensions.
///
/// Cell alpha covers x_alpha + dx*[0,1)^d with x_alpha = dx*alpha, so its
/// centre is y_alpha = x_alpha + dx/2. Only the cells of the index window
/// [lower, lower + cells) are stored; every cell outside holds the value 0.
struct Grid {
    int dim = 1;
    double dx = 1.0;
    std::array<long, 2> lower{0, 0};
    std::array<long, 2> cells{1, 1};

    /// 1-d window of n cells starting at index `first`.
    static Grid line(double dx, long first, long n);
    /// 2-d window of n0 x n1 cells with lower corner index (first0, first1).
    static Grid plane(double dx, long first0, long n0, long first1, long n1);
    /// Cells tiling [-half_width, half_width)^dim; half_width/dx must be
    /// an integer (to 1e-9).
    static Grid centered(int dim, double dx, double half_width);

    std::size_t size() const {
        return static_cast<std::size_t>(cells[0]) *
               static_cast<std::size_t>(dim == 2 ? cells[1] : 1);
    }
    /// Row-major offset of local cell (i, j); j is ignored in 1-d.
    std::size_t offset(long i, long j = 0) const {
        return static_cast<std::size_t>(dim == 2 ? i * cells[1] + j : i);
    }
    bool contains_local(long i, long j = 0) const {
        return i >= 0 && i < cells[0] && (dim == 1 || (j >= 0 && j < cells[1]));
    }
    double corner(int axis, long local) const { return dx * double(lower[axis] + local); }
    double center(int axis, long local) const { return dx * (double(lower[axis] + local) + 0.5); }
    /// dx^d, the measure of one cell.
    double cell_volume() const { return dim == 2 ? dx * dx : dx; }

    bool same_lattice(const Grid& other) const;
    void validate() const;
};

/// Cell averages U_alpha^n on a grid at time t_n.
struct Field {
    Grid grid;
    std::vector<double> values;
    double time = 0.0;

    Field() = default;
    explicit Field(Grid g, double t = 0.0);
    Field(Grid g, std::vector<double> v, double t = 0.0);

    double& operator()(long i, long j = 0) { return values[grid.offset(i, j)]; }
    double operator()(long i, long j = 0) const { return values[grid.offset(i, j)]; }
    /// Value at local index (i, j), or 0 outside the stored window.
    double at_or_zero(long i, long j = 0) const {
        return grid.contains_local(i, j) ? values[grid.offset(i, j)] : 0.0;
    }
    std::span<const double> data() const { return values; }
    std::size_t size() const { return values.size(); }
};

} // namespace fracdeg
