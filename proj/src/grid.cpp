#include "fracdeg/grid.hpp"

#include "fracdeg/error.hpp"

#include <cmath>
#include <string>

namespace fracdeg {

Grid Grid::line(double dx, long first, long n) {
    Grid g;
    g.dim = 1;
    g.dx = dx;
    g.lower = {first, 0};
    g.cells = {n, 1};
    g.validate();
    return g;
}

Grid Grid::plane(double dx, long first0, long n0, long first1, long n1) {
    Grid g;
    g.dim = 2;
    g.dx = dx;
    g.lower = {first0, first1};
    g.cells = {n0, n1};
    g.validate();
    return g;
}

Grid Grid::centered(int dim, double dx, double half_width) {
    if (dim != 1 && dim != 2) throw InvalidArgument("only dimensions 1 and 2 are supported");
    if (!(dx > 0.0) || !(half_width > 0.0))
        throw InvalidArgument("grid spacing and half width must be positive");
    const double ratio = half_width / dx;
    const long m = std::lround(ratio);
    if (std::abs(ratio - double(m)) > 1e-9 * std::max(1.0, ratio))
        throw InvalidArgument("half width " + std::to_string(half_width) +
                              " is not a multiple of dx = " + std::to_string(dx));
    return dim == 1 ? line(dx, -m, 2 * m) : plane(dx, -m, 2 * m, -m, 2 * m);
}

bool Grid::same_lattice(const Grid& other) const {
    return dim == other.dim && std::abs(dx - other.dx) <= 1e-12 * dx;
}

void Grid::validate() const {
    if (dim != 1 && dim != 2) throw InvalidArgument("only dimensions 1 and 2 are supported");
    if (!(dx > 0.0) || !std::isfinite(dx)) throw InvalidArgument("grid spacing must be positive");
    if (cells[0] < 1 || (dim == 2 && cells[1] < 1)) throw InvalidArgument("grid window is empty");
}

Field::Field(Grid g, double t) : grid(g), values(g.size(), 0.0), time(t) {}

Field::Field(Grid g, std::vector<double> v, double t) : grid(g), values(std::move(v)), time(t) {
    if (values.size() != grid.size())
        throw InvalidArgument("field has " + std::to_string(values.size()) + " values for " +
                              std::to_string(grid.size()) + " cells");
}

} // namespace fracdeg
