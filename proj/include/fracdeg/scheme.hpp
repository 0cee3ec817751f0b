#pragma once

#include "fracdeg/diagnostics.hpp"
#include "fracdeg/fluxes.hpp"
#include "fracdeg/fractional_operator.hpp"
#include "fracdeg/grid.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace fracdeg {

/// Non-decreasing diffusion nonlinearity A with A(0) = 0.
struct Diffusion {
    std::string name;
    std::function<double(double)> apply;
    double lipschitz = 0.0;

    double operator()(double u) const { return apply(u); }
};

Diffusion identity_diffusion();
Diffusion zero_diffusion();
/// A1(u) = max(u, 0).
Diffusion a1_diffusion();
/// A2: 0 for u <= 0.5, 5(2.5u - 1.25)(u - 0.5) on (0.5, 0.6], then
/// 0.125 + 2.5(u - 0.6). Continuous and C^1, Lipschitz constant 2.5.
Diffusion a2_diffusion();
/// Piecewise-linear interpolation of (u, A) nodes, extended with the end
/// slopes. Must pass through (0, 0) and be non-decreasing.
Diffusion table_diffusion(std::vector<std::pair<double, double>> nodes);

/// Initial datum u0(x, y) (y unused in 1-d). Breakpoints mark the points
/// per axis where u0 or its derivative jumps; cells are split there so the
/// projection is exact for piecewise polynomials of low degree.
struct InitialDatum {
    std::string name;
    std::function<double(double, double)> value;
    std::vector<double> breakpoints;
};

/// value on [a, b), 0 elsewhere.
InitialDatum indicator_datum(double a, double b, double value = 1.0);
/// max(0, 1 - 2|x|).
InitialDatum hat_datum();
/// Smooth compactly supported bump exp(1 - 1/(1 - (x/r)^2)) on |x| < r.
InitialDatum bump_datum(double radius = 1.0);

enum class DiffusionOperator { none, nonlocal, local };

struct ProblemSpec {
    FluxSpec flux;  ///< applied along every axis
    Diffusion diffusion = zero_diffusion();
    DiffusionOperator op = DiffusionOperator::none;
    std::optional<NonlocalWeights> weights;  ///< required for op == nonlocal
    double local_scale = 1.0;                ///< multiplies the 3-point Laplacian

    /// Throws InvalidArgument when A(0) != 0, A decreases on the data range,
    /// or weights are missing/incompatible.
    void validate(const Grid& grid) const;
};

enum class EvaluationPath { direct, fast };

std::string to_string(EvaluationPath p);
EvaluationPath evaluation_path_from_string(const std::string& name);

struct SolverConfig {
    double theta = 0.9;
    EvaluationPath path = EvaluationPath::fast;
    /// Snapshot times in (0, T]; the initial field is always recorded.
    std::vector<double> output_times;
    /// Additionally record every k-th step (0: off).
    int output_every = 0;
    bool record_diagnostics = false;
    /// Stop at the first numerical failure and return what was computed so
    /// far (SolveResult::failure set) instead of throwing.
    bool keep_partial = false;
};

/// Cell averages of u0 by 5-point Gauss-Legendre on every sub-cell between
/// breakpoints. Throws NumericalFailure on non-finite samples.
Field project_initial(const InitialDatum& u0, const Grid& grid);

/// Largest stable step for the problem on this grid scaled by theta: the
/// CFL condition for none/nonlocal, and
/// theta * min(dx / (2 L_F), dx^2 / (4 scale L_A)) for the local scheme.
double stable_dt(const ProblemSpec& spec, const Grid& grid, double theta);

/// One explicit step with cached operators. step() checks the stability
/// limit, the data range and finiteness of the result.
class ExplicitScheme {
public:
    ExplicitScheme(ProblemSpec spec, Grid grid, EvaluationPath path = EvaluationPath::fast);
    ~ExplicitScheme();
    ExplicitScheme(ExplicitScheme&&) noexcept;
    ExplicitScheme& operator=(ExplicitScheme&&) noexcept;

    Field step(const Field& u, double dt) const;
    double max_dt(double theta = 1.0) const;
    const ProblemSpec& spec() const { return spec_; }
    const Grid& grid() const { return grid_; }

private:
    void nonlocal_term(const std::vector<double>& a_of_u, std::vector<double>& out) const;

    ProblemSpec spec_;
    Grid grid_;
    EvaluationPath path_;
    std::unique_ptr<FastNonlocalOperator> fast_;
};

/// U^{n+1} = U^n - dt sum_l D_l^- F(U_a, U_{a+e_l}) + dt [G-sum of A(U)]_a.
Field step(const Field& u, const ProblemSpec& spec, double dt, const SolverConfig& cfg = {});

/// 1-d local scheme: U - dt D^-F + scale dt D^-((A(U_{i+1}) - A(U_i))/dx).
Field step_local(const Field& u, const ProblemSpec& spec, double dt, double scale);

struct SolveResult {
    std::vector<Field> snapshots;
    DiagnosticsReport diagnostics;
    double dt = 0.0;  ///< nominal step; the last one before each output time may be shorter
    long steps = 0;
    std::string failure;  ///< empty unless keep_partial caught an error
};

/// Iterate from the projected datum to final_time, landing exactly on
/// every output time. The nominal dt comes from stable_dt.
SolveResult solve(const ProblemSpec& spec, const InitialDatum& u0, const Grid& grid,
                  double final_time, const SolverConfig& cfg);

/// Same, starting from an already projected field.
SolveResult solve(const ProblemSpec& spec, Field initial, double final_time, const SolverConfig& cfg);

} // namespace fracdeg
