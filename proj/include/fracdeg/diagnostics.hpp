#pragma once

#include "fracdeg/grid.hpp"

#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace fracdeg {

/// Which differences enter a variation sum. `interior` uses neighbours
/// inside the window only; `zero_exterior` also counts the jumps to the
/// zero exterior, i.e. the variation of the field extended by 0 to Z^d.
enum class Boundary { interior, zero_exterior };

/// dx^d * sum U.
double mass(const Field& u);
/// dx^d * sum |U|.
double l1_norm(const Field& u);
/// dx^d * sum |U - V|; both fields must share a grid.
double l1_distance(const Field& u, const Field& v);
double linf(const Field& u);

/// d=1: sum |U_{i+1} - U_i|; d=2: dx * (row variations + column variations).
double bv_seminorm(const Field& u, Boundary boundary = Boundary::interior);

/// max |D^- U| over all axes, interior differences only.
double shock_indicator(const Field& u);

/// dx^d * sum over Z^d of |U_{a+shift} - U_a| for the field extended by 0.
double translation_l1(const Field& u, long shift0, long shift1 = 0);

/// ||u(t0+s) - u(t0)||_1 for each lag s. Every t0+s must match the time of
/// a snapshot in the series (relative tolerance 1e-9).
std::vector<std::pair<double, double>> time_modulus_probe(const std::vector<Field>& series, double t0,
                                                          std::span<const double> lags);

/// Long-format metric log: one (step, t, metric, value) row per entry.
class DiagnosticsReport {
public:
    struct Entry {
        long step;
        double time;
        std::string metric;
        double value;
    };

    /// mass, l1, linf, bv, shock_indicator of one snapshot.
    void record_snapshot(long step, const Field& u);
    void add(long step, double time, std::string metric, double value);

    const std::vector<Entry>& entries() const { return entries_; }
    /// Values of one metric in insertion order.
    std::vector<double> series(const std::string& metric) const;
    bool empty() const { return entries_.empty(); }

    /// Header "step,t,metric,value", then one line per entry.
    void write_csv(std::ostream& os) const;

private:
    std::vector<Entry> entries_;
};

} // namespace fracdeg
