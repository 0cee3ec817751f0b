#include "fracdeg/oracle.hpp"

#include "fracdeg/error.hpp"

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <string>

namespace fracdeg::oracle {

PeriodicProfile sample_periodic(const std::function<double(double)>& f, double lower, double upper,
                                std::size_t n) {
    PeriodicProfile p{lower, upper, std::vector<double>(n)};
    for (std::size_t k = 0; k < n; ++k) p.values[k] = f(p.point(k));
    return p;
}

namespace {

void check_profile(const PeriodicProfile& u0, double lambda) {
    if (u0.values.size() < 2) throw InvalidArgument("spectral evaluation needs at least two samples");
    if (!(lambda > 0.0 && lambda <= 2.0)) throw InvalidArgument("spectral exponent must lie in (0, 2]");
    if (!(u0.upper - u0.lower > 0.0)) throw InvalidArgument("empty periodic domain");
}

void check_padding(const PeriodicProfile& u0) {
    const std::size_t n = u0.values.size();
    double peak = 0.0;
    for (double v : u0.values) peak = std::max(peak, std::abs(v));
    std::size_t first = n, last = 0;
    for (std::size_t k = 0; k < n; ++k)
        if (std::abs(u0.values[k]) > 1e-14 * peak) {
            first = std::min(first, k);
            last = k;
        }
    if (first == n) return;
    const double width = double(last - first + 1) * u0.spacing();
    if (first == 0 || last == n - 1 || (u0.upper - u0.lower) - width < 2.0 * width)
        throw InvalidArgument("initial support is too close to the periodic boundary: pad the "
                              "domain by at least twice the support width");
}

// Multiply every Fourier mode by multiplier(|xi|).
PeriodicProfile apply_multiplier(const PeriodicProfile& u0, const std::function<double(double)>& multiplier) {
    const std::size_t n = u0.values.size();
    const double period = u0.upper - u0.lower;
    std::vector<double> real(u0.values);
    std::vector<std::complex<double>> modes(n / 2 + 1);
    auto* spectrum = reinterpret_cast<fftw_complex*>(modes.data());
    fftw_plan forward = fftw_plan_dft_r2c_1d(int(n), real.data(), spectrum, FFTW_ESTIMATE);
    fftw_plan backward = fftw_plan_dft_c2r_1d(int(n), spectrum, real.data(), FFTW_ESTIMATE);
    fftw_execute(forward);
    for (std::size_t k = 0; k < modes.size(); ++k) {
        const double xi = 2.0 * std::numbers::pi * double(k) / period;
        modes[k] *= multiplier(xi) / double(n);
    }
    fftw_execute(backward);
    fftw_destroy_plan(forward);
    fftw_destroy_plan(backward);
    return {u0.lower, u0.upper, std::move(real)};
}

} // namespace

PeriodicProfile spectral_linear_solve(const PeriodicProfile& u0, double lambda, double final_time,
                                      const SpectralOptions& options) {
    check_profile(u0, lambda);
    if (!(final_time >= 0.0)) throw InvalidArgument("final time must be non-negative");
    if (options.check_support) check_padding(u0);
    const double s = options.symbol_scale;
    return apply_multiplier(u0, [&](double xi) { return std::exp(-s * std::pow(xi, lambda) * final_time); });
}

PeriodicProfile spectral_operator(const PeriodicProfile& v, double lambda, const SpectralOptions& options) {
    check_profile(v, lambda);
    if (options.check_support) check_padding(v);
    const double s = options.symbol_scale;
    return apply_multiplier(v, [&](double xi) { return -s * std::pow(xi, lambda); });
}

Field brute_force_step(const Field& u, const ProblemSpec& spec, double dt) {
    const Grid& g = u.grid;
    if (g.dim != 1 || g.cells[0] > 32) throw InvalidArgument("brute force step takes at most 32 cells in 1-d");
    const long n = g.cells[0];
    const double dx = g.dx;
    auto value = [&](long i) { return (i >= 0 && i < n) ? u.values[std::size_t(i)] : 0.0; };

    const Flux& phys = spec.flux.physical;
    auto numerical_flux = [&](double a, double b) {
        if (spec.flux.scheme == FluxScheme::lax_friedrichs)
            return 0.5 * (phys.f(a) + phys.f(b)) - 0.5 * spec.flux.speed * (b - a);
        return phys.f_plus(a) + phys.f_minus(b);
    };

    Field out(g, u.time + dt);
    for (long i = 0; i < n; ++i) {
        double update = value(i);
        update -= dt / dx * (numerical_flux(value(i), value(i + 1)) - numerical_flux(value(i - 1), value(i)));

        if (spec.op == DiffusionOperator::local) {
            const auto& A = spec.diffusion;
            update += spec.local_scale * dt / (dx * dx) *
                      (A(value(i + 1)) - 2.0 * A(value(i)) + A(value(i - 1)));
        } else if (spec.op == DiffusionOperator::nonlocal) {
            const NonlocalWeights& w = *spec.weights;
            if (w.kind != KernelKind::fractional)
                throw InvalidArgument("brute force step only knows the fractional kernel");
            const double lam = w.exponent, c = w.normalization;
            const double full_tail = 2.0 * c * std::pow((double(w.half_width) + 0.5) * dx, -lam) / lam;
            if (std::abs(w.tail_mass - full_tail) > 1e-12 * full_tail)
                throw InvalidArgument("brute force step assumes the untruncated kernel tail");
            auto G = [&](long j) {
                const double a = (std::abs(double(j)) - 0.5) * dx, b = (std::abs(double(j)) + 0.5) * dx;
                return c * (std::pow(a, -lam) - std::pow(b, -lam)) / lam;
            };
            // Kernel mass of R minus the central cell.
            const double total = 2.0 * c * std::pow(0.5 * dx, -lam) / lam;
            const double ai = spec.diffusion(value(i));
            double inside = 0.0, covered = 0.0;
            for (long j = -n; j <= n; ++j) {
                if (j == 0 || std::abs(j) > w.half_width || i + j < 0 || i + j >= n) continue;
                const double gj = G(j);
                inside += gj * (spec.diffusion(value(i + j)) - ai);
                covered += gj;
            }
            // Every other box holds A(0) = 0.
            update += dt * (inside - (total - covered) * ai);
        }
        out.values[std::size_t(i)] = update;
    }
    return out;
}

} // namespace fracdeg::oracle
