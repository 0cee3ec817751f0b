#pragma once

#include "fracdeg/grid.hpp"
#include "fracdeg/scheme.hpp"

#include <functional>
#include <vector>

namespace fracdeg::oracle {

/// Samples u(x_k), x_k = lower + k (upper - lower)/N, of a periodic profile.
struct PeriodicProfile {
    double lower = 0.0;
    double upper = 1.0;
    std::vector<double> values;

    double spacing() const { return (upper - lower) / double(values.size()); }
    double point(std::size_t k) const { return lower + double(k) * spacing(); }
};

struct SpectralOptions {
    /// Multiplies the symbol: each mode decays like exp(-symbol_scale |xi|^lambda T).
    /// 1 matches standard_normalization(1, lambda).
    double symbol_scale = 1.0;
    /// Reject profiles whose support is not padded by at least twice its
    /// width inside the period.
    bool check_support = true;
};

/// Exact evolution of the linear equation u_t = -(-Delta)^{lambda/2} u on
/// the periodic interval, mode by mode. lambda in (0, 2].
PeriodicProfile spectral_linear_solve(const PeriodicProfile& u0, double lambda, double final_time,
                                      const SpectralOptions& options = {});

/// -(-Delta)^{lambda/2} v evaluated mode by mode (symbol -symbol_scale |xi|^lambda).
PeriodicProfile spectral_operator(const PeriodicProfile& v, double lambda, const SpectralOptions& options = {});

/// Sample a function on N points of [lower, upper).
PeriodicProfile sample_periodic(const std::function<double(double)>& f, double lower, double upper,
                                std::size_t n);

/// Naive re-implementation of one explicit step on at most 32 cells in 1-d.
/// Fractional weights only, with their full exterior tail.
/// Shares no code with ExplicitScheme: fluxes are evaluated from the
/// physical flux, and the fractional weights are recomputed from the raw
/// antiderivative with the exterior handled through the total kernel mass.
Field brute_force_step(const Field& u, const ProblemSpec& spec, double dt);

} // namespace fracdeg::oracle
