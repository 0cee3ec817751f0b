#include "fracdeg/scheme.hpp"

#include "fracdeg/csv.hpp"
#include "fracdeg/error.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

namespace fracdeg {

// ---------------------------------------------------------------------------
// Nonlinearities and initial data

Diffusion identity_diffusion() { return {"identity", [](double u) { return u; }, 1.0}; }

Diffusion zero_diffusion() { return {"zero", [](double) { return 0.0; }, 0.0}; }

Diffusion a1_diffusion() { return {"A1", [](double u) { return std::max(u, 0.0); }, 1.0}; }

Diffusion a2_diffusion() {
    return {"A2",
            [](double u) {
                if (u <= 0.5) return 0.0;
                if (u <= 0.6) return 5.0 * (2.5 * u - 1.25) * (u - 0.5);
                return 0.125 + 2.5 * (u - 0.6);
            },
            2.5};
}

Diffusion table_diffusion(std::vector<std::pair<double, double>> nodes) {
    if (nodes.size() < 2) throw InvalidArgument("diffusion table needs at least two nodes");
    std::sort(nodes.begin(), nodes.end());
    double lipschitz = 0.0;
    bool has_origin = false;
    for (std::size_t k = 0; k < nodes.size(); ++k) {
        if (nodes[k].first == 0.0) has_origin = nodes[k].second == 0.0;
        if (k == 0) continue;
        const double du = nodes[k].first - nodes[k - 1].first;
        const double da = nodes[k].second - nodes[k - 1].second;
        if (!(du > 0.0)) throw InvalidArgument("diffusion table has repeated u nodes");
        if (da < 0.0) throw InvalidArgument("diffusion table must be non-decreasing");
        lipschitz = std::max(lipschitz, da / du);
    }
    if (!has_origin) throw InvalidArgument("diffusion table must contain the node (0, 0)");
    auto table = [nodes](double u) {
        auto hi = std::upper_bound(nodes.begin(), nodes.end(), u,
                                   [](double x, const auto& node) { return x < node.first; });
        if (hi == nodes.begin()) hi = nodes.begin() + 1;
        if (hi == nodes.end()) hi = nodes.end() - 1;
        const auto& [u1, a1] = *hi;
        const auto& [u0, a0] = *(hi - 1);
        return a0 + (a1 - a0) * (u - u0) / (u1 - u0);
    };
    return {"table", table, lipschitz};
}

InitialDatum indicator_datum(double a, double b, double value) {
    return {"indicator", [a, b, value](double x, double) { return (x >= a && x < b) ? value : 0.0; },
            {a, b}};
}

InitialDatum hat_datum() {
    return {"hat", [](double x, double) { return std::max(0.0, 1.0 - 2.0 * std::abs(x)); },
            {-0.5, 0.0, 0.5}};
}

InitialDatum bump_datum(double radius) {
    return {"bump",
            [radius](double x, double) {
                const double s = x / radius;
                return std::abs(s) < 1.0 ? std::exp(1.0 - 1.0 / (1.0 - s * s)) : 0.0;
            },
            {-radius, radius}};
}

// ---------------------------------------------------------------------------
// Problem description

void ProblemSpec::validate(const Grid& grid) const {
    grid.validate();
    if (!flux.physical.f) throw InvalidArgument("problem has no flux");
    if (!diffusion.apply) throw InvalidArgument("problem has no diffusion nonlinearity");
    if (diffusion(0.0) != 0.0) throw InvalidArgument("diffusion must satisfy A(0) = 0");
    if (!(diffusion.lipschitz >= 0.0) || !std::isfinite(diffusion.lipschitz))
        throw InvalidArgument("diffusion Lipschitz constant must be finite and non-negative");
    const double bound = std::max(flux.data_bound, 1.0);
    double prev_u = -bound, prev_a = diffusion(prev_u);
    for (int k = 1; k <= 2000; ++k) {
        const double u = -bound + 2.0 * bound * k / 2000.0;
        const double a = diffusion(u);
        if (a < prev_a) throw InvalidArgument("diffusion '" + diffusion.name + "' is decreasing near u = " +
                                              format_double(u));
        if (a - prev_a > diffusion.lipschitz * (u - prev_u) * (1.0 + 1e-9) + 1e-14)
            throw InvalidArgument("diffusion '" + diffusion.name + "' exceeds its Lipschitz constant near u = " +
                                  format_double(u));
        prev_u = u;
        prev_a = a;
    }
    if (op == DiffusionOperator::nonlocal) {
        if (!weights) throw InvalidArgument("nonlocal diffusion needs weights");
        check_compatible(*weights, grid);
    }
    if (op == DiffusionOperator::local) {
        if (grid.dim != 1) throw InvalidArgument("the local scheme is one-dimensional");
        if (!(local_scale > 0.0)) throw InvalidArgument("local diffusion scale must be positive");
    }
}

std::string to_string(EvaluationPath p) { return p == EvaluationPath::direct ? "direct" : "fast"; }

EvaluationPath evaluation_path_from_string(const std::string& name) {
    if (name == "direct") return EvaluationPath::direct;
    if (name == "fast") return EvaluationPath::fast;
    throw InvalidArgument("unknown evaluation path '" + name + "' (direct|fast)");
}

// ---------------------------------------------------------------------------
// Projection

Field project_initial(const InitialDatum& u0, const Grid& grid) {
    grid.validate();
    using Rule5 = boost::math::quadrature::gauss<double, 5>;
    std::vector<std::pair<double, double>> nodes;  // on [-1, 1]
    for (std::size_t k = 0; k < Rule5::abscissa().size(); ++k) {
        const double x = Rule5::abscissa()[k], w = Rule5::weights()[k];
        nodes.emplace_back(x, w);
        if (x != 0.0) nodes.emplace_back(-x, w);
    }
    // Quadrature points and weights (summing to 1) for one cell [a, a+dx).
    auto cell_rule = [&](double a) {
        std::vector<double> cuts{a};
        for (double b : u0.breakpoints)
            if (b > a && b < a + grid.dx) cuts.push_back(b);
        cuts.push_back(a + grid.dx);
        std::sort(cuts.begin(), cuts.end());
        std::vector<std::pair<double, double>> rule;
        for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
            const double c = 0.5 * (cuts[k] + cuts[k + 1]), h = 0.5 * (cuts[k + 1] - cuts[k]);
            for (const auto& [x, w] : nodes) rule.emplace_back(c + h * x, w * h / grid.dx);
        }
        return rule;
    };
    Field out(grid);
    for (long i = 0; i < grid.cells[0]; ++i) {
        const auto rx = cell_rule(grid.corner(0, i));
        for (long j = 0; j < (grid.dim == 2 ? grid.cells[1] : 1); ++j) {
            const auto ry = grid.dim == 2 ? cell_rule(grid.corner(1, j))
                                          : std::vector<std::pair<double, double>>{{0.0, 1.0}};
            double sum = 0.0;
            for (const auto& [x, wx] : rx)
                for (const auto& [y, wy] : ry) {
                    const double v = u0.value(x, y);
                    if (!std::isfinite(v))
                        throw NumericalFailure("initial datum is not finite at x = " + format_double(x));
                    sum += wx * wy * v;
                }
            out(i, j) = sum;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Stepping

double stable_dt(const ProblemSpec& spec, const Grid& grid, double theta) {
    if (!(theta > 0.0 && theta <= 1.0)) throw InvalidArgument("CFL safety factor must lie in (0,1]");
    const double flux_l = spec.flux.numerical_lipschitz();
    const double inf = std::numeric_limits<double>::infinity();
    switch (spec.op) {
    case DiffusionOperator::none:
        return flux_l > 0.0 ? cfl_dt(flux_l, 0.0, 0.0, grid.dx, grid.dim, theta) : inf;
    case DiffusionOperator::nonlocal: {
        const double rate = nonlocal_rate(*spec.weights);
        if (flux_l == 0.0 && spec.diffusion.lipschitz * rate == 0.0) return inf;
        return cfl_dt(flux_l, spec.diffusion.lipschitz, rate, grid.dx, grid.dim, theta);
    }
    case DiffusionOperator::local: {
        const double hyperbolic = flux_l > 0.0 ? grid.dx / (2.0 * flux_l) : inf;
        const double parabolic = spec.diffusion.lipschitz > 0.0
                                     ? grid.dx * grid.dx / (4.0 * spec.local_scale * spec.diffusion.lipschitz)
                                     : inf;
        return theta * std::min(hyperbolic, parabolic);
    }
    }
    return inf;
}

ExplicitScheme::ExplicitScheme(ProblemSpec spec, Grid grid, EvaluationPath path)
    : spec_(std::move(spec)), grid_(grid), path_(path) {
    spec_.validate(grid_);
    if (spec_.op == DiffusionOperator::nonlocal && path_ == EvaluationPath::fast)
        fast_ = std::make_unique<FastNonlocalOperator>(*spec_.weights, grid_);
}

ExplicitScheme::~ExplicitScheme() = default;
ExplicitScheme::ExplicitScheme(ExplicitScheme&&) noexcept = default;
ExplicitScheme& ExplicitScheme::operator=(ExplicitScheme&&) noexcept = default;

double ExplicitScheme::max_dt(double theta) const { return stable_dt(spec_, grid_, theta); }

void ExplicitScheme::nonlocal_term(const std::vector<double>& a_of_u, std::vector<double>& out) const {
    if (fast_) {
        fast_->apply(a_of_u, out);
    } else {
        out = apply_nonlocal(*spec_.weights, Field(grid_, a_of_u)).values;
    }
}

Field ExplicitScheme::step(const Field& u, double dt) const {
    if (u.grid.dim != grid_.dim || u.grid.cells != grid_.cells || !u.grid.same_lattice(grid_))
        throw InvalidArgument("field grid does not match the scheme grid");
    if (!(dt > 0.0)) throw InvalidArgument("time step must be positive");
    for (double v : u.values)
        if (!std::isfinite(v)) throw NumericalFailure("non-finite value in the current field");
    const double data = linf(u);
    if (spec_.flux.physical.lipschitz_on(data) > spec_.flux.lipschitz * (1.0 + 1e-12))
        throw InvalidArgument("field leaves the data range [-" + format_double(spec_.flux.data_bound) + ", " +
                              format_double(spec_.flux.data_bound) + "] the flux was set up for");
    const double limit = max_dt(1.0);
    if (dt > limit * (1.0 + 1e-12))
        throw CflViolation("time step " + format_double(dt) + " exceeds the stability limit " +
                           format_double(limit));

    const Grid& g = grid_;
    const FluxSpec& flux = spec_.flux;
    const double ratio = dt / g.dx;
    Field next = u;
    next.time = u.time + dt;

    // Conservative flux differences; the exterior holds 0.
    if (g.dim == 1) {
        double left = flux(0.0, u.at_or_zero(0));
        for (long i = 0; i < g.cells[0]; ++i) {
            const double right = flux(u(i), u.at_or_zero(i + 1));
            next(i) -= ratio * (right - left);
            left = right;
        }
    } else {
        for (long i = 0; i < g.cells[0]; ++i)
            for (long j = 0; j < g.cells[1]; ++j) {
                const double c = u(i, j);
                next(i, j) -= ratio * (flux(c, u.at_or_zero(i + 1, j)) - flux(u.at_or_zero(i - 1, j), c) +
                                       flux(c, u.at_or_zero(i, j + 1)) - flux(u.at_or_zero(i, j - 1), c));
            }
    }

    if (spec_.op != DiffusionOperator::none) {
        std::vector<double> a(u.size());
        std::transform(u.values.begin(), u.values.end(), a.begin(), spec_.diffusion.apply);
        if (spec_.op == DiffusionOperator::nonlocal) {
            std::vector<double> term(u.size());
            nonlocal_term(a, term);
            for (std::size_t k = 0; k < a.size(); ++k) next.values[k] += dt * term[k];
        } else {
            const double coeff = spec_.local_scale * dt / (g.dx * g.dx);
            const long n = g.cells[0];
            for (long i = 0; i < n; ++i) {
                const double am = i > 0 ? a[std::size_t(i - 1)] : 0.0;
                const double ap = i + 1 < n ? a[std::size_t(i + 1)] : 0.0;
                next(i) += coeff * ((ap - a[std::size_t(i)]) - (a[std::size_t(i)] - am));
            }
        }
    }

    for (double v : next.values)
        if (!std::isfinite(v)) throw NumericalFailure("non-finite value after step at t = " + format_double(next.time));
    return next;
}

Field step(const Field& u, const ProblemSpec& spec, double dt, const SolverConfig& cfg) {
    return ExplicitScheme(spec, u.grid, cfg.path).step(u, dt);
}

Field step_local(const Field& u, const ProblemSpec& spec, double dt, double scale) {
    ProblemSpec local = spec;
    local.op = DiffusionOperator::local;
    local.local_scale = scale;
    local.weights.reset();
    return ExplicitScheme(std::move(local), u.grid, EvaluationPath::direct).step(u, dt);
}

// ---------------------------------------------------------------------------
// Time loop

SolveResult solve(const ProblemSpec& spec, const InitialDatum& u0, const Grid& grid, double final_time,
                  const SolverConfig& cfg) {
    return solve(spec, project_initial(u0, grid), final_time, cfg);
}

SolveResult solve(const ProblemSpec& spec, Field initial, double final_time, const SolverConfig& cfg) {
    if (!(final_time >= 0.0) || !std::isfinite(final_time))
        throw InvalidArgument("final time must be finite and non-negative");
    ExplicitScheme scheme(spec, initial.grid, cfg.path);
    SolveResult result;
    result.dt = scheme.max_dt(cfg.theta);

    std::vector<double> targets;
    for (double t : cfg.output_times) {
        if (!(t >= 0.0) || t > final_time * (1.0 + 1e-12))
            throw InvalidArgument("output time " + format_double(t) + " lies outside [0, T]");
        if (t > 0.0) targets.push_back(std::min(t, final_time));
    }
    if (final_time > 0.0) targets.push_back(final_time);
    std::sort(targets.begin(), targets.end());
    targets.erase(std::unique(targets.begin(), targets.end()), targets.end());

    Field u = std::move(initial);
    u.time = 0.0;
    result.snapshots.push_back(u);
    if (cfg.record_diagnostics) result.diagnostics.record_snapshot(0, u);

    long n = 0;
    try {
        for (double target : targets) {
            while (u.time < target) {
                const bool lands = target - u.time <= result.dt;
                const double h = lands ? target - u.time : result.dt;
                u = scheme.step(u, h);
                if (lands) u.time = target;
                ++n;
                if (cfg.record_diagnostics) result.diagnostics.record_snapshot(n, u);
                if (cfg.output_every > 0 && n % cfg.output_every == 0 && u.time < target)
                    result.snapshots.push_back(u);
            }
            result.snapshots.push_back(u);
        }
    } catch (const Error& e) {
        if (!cfg.keep_partial) throw;
        result.failure = e.what();
    }
    result.steps = n;
    return result;
}

} // namespace fracdeg
