#include "fracdeg/fluxes.hpp"

#include "fracdeg/error.hpp"

#include <algorithm>
#include <cmath>

namespace fracdeg {

Flux burgers_flux() {
    Flux flux;
    flux.name = "burgers";
    flux.f = [](double u) { return 0.5 * u * u; };
    flux.lipschitz_on = [](double bound) { return std::abs(bound); };
    flux.f_plus = [](double u) {
        const double p = std::max(u, 0.0);
        return 0.5 * p * p;
    };
    flux.f_minus = [](double u) {
        const double m = std::min(u, 0.0);
        return 0.5 * m * m;
    };
    return flux;
}

Flux zero_flux() {
    Flux flux;
    flux.name = "none";
    flux.f = [](double) { return 0.0; };
    flux.lipschitz_on = [](double) { return 0.0; };
    flux.f_plus = flux.f;
    flux.f_minus = flux.f;
    return flux;
}

Flux linear_flux(double a) {
    Flux flux;
    flux.name = "linear";
    flux.f = [a](double u) { return a * u; };
    flux.lipschitz_on = [a](double) { return std::abs(a); };
    flux.f_plus = [a](double u) { return std::max(a, 0.0) * u; };
    flux.f_minus = [a](double u) { return std::min(a, 0.0) * u; };
    return flux;
}

std::string to_string(FluxScheme s) {
    return s == FluxScheme::lax_friedrichs ? "lax_friedrichs" : "engquist_osher";
}

FluxScheme flux_scheme_from_string(const std::string& name) {
    if (name == "lax_friedrichs" || name == "lf") return FluxScheme::lax_friedrichs;
    if (name == "engquist_osher" || name == "eo") return FluxScheme::engquist_osher;
    throw InvalidArgument("unknown flux scheme '" + name + "'");
}

double lax_friedrichs(double u_left, double u_right, double speed,
                      const std::function<double(double)>& f) {
    return 0.5 * (f(u_left) + f(u_right) - speed * (u_right - u_left));
}

double engquist_osher(double u_left, double u_right, const Flux& flux) {
    if (!flux.has_splitting())
        throw InvalidArgument("Engquist-Osher needs a monotone splitting of flux '" + flux.name + "'");
    return flux.f_plus(u_left) + flux.f_minus(u_right);
}

double FluxSpec::operator()(double u_left, double u_right) const {
    return scheme == FluxScheme::lax_friedrichs ? lax_friedrichs(u_left, u_right, speed, physical.f)
                                                : engquist_osher(u_left, u_right, physical);
}

double FluxSpec::numerical_lipschitz() const {
    return scheme == FluxScheme::lax_friedrichs ? 0.5 * (lipschitz + speed) : lipschitz;
}

FluxSpec make_flux_spec(Flux physical, FluxScheme scheme, double data_bound, double speed) {
    if (!physical.f || !physical.lipschitz_on)
        throw InvalidArgument("flux needs f and its Lipschitz bound");
    if (!(data_bound >= 0.0) || !std::isfinite(data_bound))
        throw InvalidArgument("data bound must be finite and non-negative");
    if (scheme == FluxScheme::engquist_osher && !physical.has_splitting())
        throw InvalidArgument("Engquist-Osher needs a monotone splitting of flux '" + physical.name + "'");
    FluxSpec spec;
    spec.lipschitz = physical.lipschitz_on(data_bound);
    spec.physical = std::move(physical);
    spec.scheme = scheme;
    spec.data_bound = data_bound;
    if (scheme == FluxScheme::lax_friedrichs) {
        if (speed < 0.0) {
            spec.speed = spec.lipschitz;
        } else if (speed < spec.lipschitz) {
            throw InvalidArgument("Lax-Friedrichs speed " + std::to_string(speed) +
                                  " is below the flux Lipschitz constant " +
                                  std::to_string(spec.lipschitz) + "; the flux would not be monotone");
        } else {
            spec.speed = speed;
        }
    }
    return spec;
}

double nonlocal_rate(const NonlocalWeights& w) {
    if (w.kind == KernelKind::levy) return w.total_mass();
    return w.normalization * std::pow(2.0, w.exponent) * unit_exterior_integral(w.dim, w.exponent) /
           std::pow(w.dx, w.exponent);
}

double cfl_number(double flux_lipschitz, double diffusion_lipschitz, double rate, double dx, int dim,
                  double dt) {
    return 2.0 * dim * flux_lipschitz * dt / dx + diffusion_lipschitz * rate * dt;
}

double cfl_dt(double flux_lipschitz, double diffusion_lipschitz, double rate, double dx, int dim,
              double theta) {
    if (!(flux_lipschitz >= 0.0) || !(diffusion_lipschitz >= 0.0) || !(rate >= 0.0))
        throw InvalidArgument("CFL constants must be non-negative");
    if (!(dx > 0.0)) throw InvalidArgument("grid spacing must be positive");
    if (!(theta > 0.0 && theta <= 1.0)) throw InvalidArgument("CFL safety factor must lie in (0,1]");
    const double denominator = 2.0 * dim * flux_lipschitz / dx + diffusion_lipschitz * rate;
    if (!(denominator > 0.0)) throw InvalidArgument("no dynamics: L_F and L_A both vanish");
    return theta / denominator;
}

double cfl_dt(double flux_lipschitz, double diffusion_lipschitz, const NonlocalWeights& w,
              double theta) {
    return cfl_dt(flux_lipschitz, diffusion_lipschitz, nonlocal_rate(w), w.dx, w.dim, theta);
}

} // namespace fracdeg
