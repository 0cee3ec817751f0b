#pragma once

#include "fracdeg/fractional_operator.hpp"

#include <functional>
#include <string>

namespace fracdeg {

/// Physical flux f with an optional monotone splitting f = f_plus + f_minus
/// (f_plus non-decreasing, f_minus non-increasing) for Engquist-Osher.
struct Flux {
    std::string name;
    std::function<double(double)> f;
    /// Lipschitz constant of f on [-bound, bound].
    std::function<double(double)> lipschitz_on;
    std::function<double(double)> f_plus;
    std::function<double(double)> f_minus;

    bool has_splitting() const { return bool(f_plus) && bool(f_minus); }
};

/// f(u) = u^2/2, split as max(u,0)^2/2 + min(u,0)^2/2.
Flux burgers_flux();
/// f == 0.
Flux zero_flux();
/// f(u) = a u.
Flux linear_flux(double a);

enum class FluxScheme { lax_friedrichs, engquist_osher };

std::string to_string(FluxScheme s);
FluxScheme flux_scheme_from_string(const std::string& name);

/// 1/2 (f(ul) + f(ur) - speed (ur - ul)). No admissibility check.
double lax_friedrichs(double u_left, double u_right, double speed,
                      const std::function<double(double)>& f);

/// f_plus(ul) + f_minus(ur). Throws InvalidArgument without a splitting.
double engquist_osher(double u_left, double u_right, const Flux& flux);

/// A numerical flux bound to a data range [-data_bound, data_bound].
///
/// lipschitz is L_f of the physical flux on that range. For Lax-Friedrichs
/// the dissipation speed is fixed up front (default: L_f) and must be at
/// least L_f, otherwise the flux is not monotone.
struct FluxSpec {
    Flux physical;
    FluxScheme scheme = FluxScheme::lax_friedrichs;
    double data_bound = 0.0;
    double lipschitz = 0.0;
    double speed = 0.0;

    double operator()(double u_left, double u_right) const;
    /// L_F of the numerical flux: (L_f + speed)/2 for LF, L_f for EO.
    double numerical_lipschitz() const;
};

/// Bind a flux to a data range. speed < 0 selects speed = L_f.
/// Throws InvalidArgument if 0 <= speed < L_f or EO lacks a splitting.
FluxSpec make_flux_spec(Flux physical, FluxScheme scheme, double data_bound, double speed = -1.0);

/// Coefficient of L_A dt in the CFL condition:
/// c_lambda 2^lambda (|S^{d-1}|/lambda) / dx^lambda for fractional weights,
/// and the total off-diagonal mass sum G + tail for general Levy weights.
double nonlocal_rate(const NonlocalWeights& w);

/// Largest dt with 2 d L_F dt/dx + L_A * rate * dt <= theta.
/// Throws InvalidArgument for negative inputs, theta outside (0,1], or
/// when both terms vanish ("no dynamics").
double cfl_dt(double flux_lipschitz, double diffusion_lipschitz, double rate, double dx, int dim,
              double theta);

/// cfl_dt with the rate taken from the weights.
double cfl_dt(double flux_lipschitz, double diffusion_lipschitz, const NonlocalWeights& w,
              double theta);

/// Left-hand side of the CFL inequality for a given dt (1 at the limit).
double cfl_number(double flux_lipschitz, double diffusion_lipschitz, double rate, double dx, int dim,
                  double dt);

} // namespace fracdeg
