#include "fracdeg/diagnostics.hpp"

#include "fracdeg/csv.hpp"
#include "fracdeg/error.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

namespace fracdeg {

namespace {

void require_same_grid(const Field& u, const Field& v) {
    const Grid &a = u.grid, &b = v.grid;
    if (a.dim != b.dim || a.cells != b.cells || a.lower != b.lower || a.dx != b.dx)
        throw InvalidArgument("fields live on different grids");
}

// Sum of |U_{a+e} - U_a| along one axis. With zero_exterior the two
// jumps into the exterior at each end of every line are included.
double axis_variation(const Field& u, int axis, Boundary boundary) {
    const Grid& g = u.grid;
    const long first = boundary == Boundary::zero_exterior ? -1 : 0;
    const long n_axis = g.cells[axis];
    const long n_other = g.dim == 2 ? g.cells[1 - axis] : 1;
    double sum = 0.0;
    for (long m = 0; m < n_other; ++m) {
        for (long k = first; k < (boundary == Boundary::zero_exterior ? n_axis : n_axis - 1); ++k) {
            const double lo = axis == 0 ? u.at_or_zero(k, m) : u.at_or_zero(m, k);
            const double hi = axis == 0 ? u.at_or_zero(k + 1, m) : u.at_or_zero(m, k + 1);
            sum += std::abs(hi - lo);
        }
    }
    return sum;
}

} // namespace

double mass(const Field& u) {
    double sum = 0.0;
    for (double v : u.values) sum += v;
    return sum * u.grid.cell_volume();
}

double l1_norm(const Field& u) {
    double sum = 0.0;
    for (double v : u.values) sum += std::abs(v);
    return sum * u.grid.cell_volume();
}

double l1_distance(const Field& u, const Field& v) {
    require_same_grid(u, v);
    double sum = 0.0;
    for (std::size_t i = 0; i < u.values.size(); ++i) sum += std::abs(u.values[i] - v.values[i]);
    return sum * u.grid.cell_volume();
}

double linf(const Field& u) {
    double m = 0.0;
    for (double v : u.values) m = std::max(m, std::abs(v));
    return m;
}

double bv_seminorm(const Field& u, Boundary boundary) {
    if (u.grid.dim == 1) return axis_variation(u, 0, boundary);
    return u.grid.dx * (axis_variation(u, 0, boundary) + axis_variation(u, 1, boundary));
}

double shock_indicator(const Field& u) {
    const Grid& g = u.grid;
    double m = 0.0;
    for (long i = 0; i < g.cells[0]; ++i)
        for (long j = 0; j < (g.dim == 2 ? g.cells[1] : 1); ++j) {
            if (i > 0) m = std::max(m, std::abs(u(i, j) - u(i - 1, j)));
            if (g.dim == 2 && j > 0) m = std::max(m, std::abs(u(i, j) - u(i, j - 1)));
        }
    return m / g.dx;
}

double translation_l1(const Field& u, long shift0, long shift1) {
    const Grid& g = u.grid;
    if (g.dim == 1) shift1 = 0;
    // Outside [-|s|, n+|s|) both samples are zero.
    double sum = 0.0;
    const long s0 = std::abs(shift0), s1 = std::abs(shift1);
    for (long i = -s0; i < g.cells[0] + s0; ++i)
        for (long j = (g.dim == 2 ? -s1 : 0); j < (g.dim == 2 ? g.cells[1] + s1 : 1); ++j)
            sum += std::abs(u.at_or_zero(i + shift0, j + shift1) - u.at_or_zero(i, j));
    return sum * g.cell_volume();
}

std::vector<std::pair<double, double>> time_modulus_probe(const std::vector<Field>& series, double t0,
                                                          std::span<const double> lags) {
    auto find = [&](double t) -> const Field& {
        for (const Field& f : series)
            if (std::abs(f.time - t) <= 1e-9 * std::max(1.0, std::abs(t))) return f;
        throw InvalidArgument("no snapshot at t = " + format_double(t));
    };
    const Field& base = find(t0);
    std::vector<std::pair<double, double>> out;
    out.reserve(lags.size());
    for (double s : lags) out.emplace_back(s, l1_distance(find(t0 + s), base));
    return out;
}

void DiagnosticsReport::record_snapshot(long step, const Field& u) {
    add(step, u.time, "mass", mass(u));
    add(step, u.time, "l1", l1_norm(u));
    add(step, u.time, "linf", linf(u));
    add(step, u.time, "bv", bv_seminorm(u, Boundary::zero_exterior));
    add(step, u.time, "shock_indicator", shock_indicator(u));
}

void DiagnosticsReport::add(long step, double time, std::string metric, double value) {
    entries_.push_back({step, time, std::move(metric), value});
}

std::vector<double> DiagnosticsReport::series(const std::string& metric) const {
    std::vector<double> out;
    for (const auto& e : entries_)
        if (e.metric == metric) out.push_back(e.value);
    return out;
}

void DiagnosticsReport::write_csv(std::ostream& os) const {
    os << "step,t,metric,value\n";
    for (const auto& e : entries_)
        os << e.step << ',' << format_double(e.time) << ',' << e.metric << ',' << format_double(e.value)
           << '\n';
}

} // namespace fracdeg
