#include "fracdeg/cli.hpp"

#include "fracdeg/csv.hpp"
#include "fracdeg/diagnostics.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

namespace fracdeg::cli {

namespace {

constexpr double two_pi_squared = 4.0 * std::numbers::pi * std::numbers::pi;

double parse_number(const std::string& key, const std::string& text) {
    auto convert = [&](const std::string& s) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(s, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != s.size()) throw ConfigError("'" + key + "': '" + text + "' is not a number");
        return v;
    };
    const auto parts = split_trimmed(text, '/');
    if (parts.size() == 1) return convert(parts[0]);
    if (parts.size() == 2) return convert(parts[0]) / convert(parts[1]);
    throw ConfigError("'" + key + "': '" + text + "' is not a number");
}

long parse_integer(const std::string& key, const std::string& text) {
    const double v = parse_number(key, text);
    if (v != std::floor(v)) throw ConfigError("'" + key + "' must be an integer, got '" + text + "'");
    return static_cast<long>(v);
}

bool parse_bool(const std::string& key, const std::string& text) {
    if (text == "true" || text == "1" || text == "yes") return true;
    if (text == "false" || text == "0" || text == "no") return false;
    throw ConfigError("'" + key + "' must be true or false, got '" + text + "'");
}

std::vector<double> parse_list(const std::string& key, const std::string& text) {
    std::vector<double> out;
    if (trim(text).empty()) return out;
    for (const auto& item : split_trimmed(text, ',')) out.push_back(parse_number(key, item));
    return out;
}

std::string join(const std::vector<double>& values) {
    std::string s;
    for (std::size_t k = 0; k < values.size(); ++k) s += (k ? "," : "") + format_double(values[k]);
    return s;
}

void require_one_of(const std::string& key, const std::string& value, std::initializer_list<const char*> allowed) {
    for (const char* a : allowed)
        if (value == a) return;
    std::string list;
    for (const char* a : allowed) list += std::string(list.empty() ? "" : "|") + a;
    throw ConfigError("'" + key + "' must be one of " + list + ", got '" + value + "'");
}

InitialDatum make_initial(const std::string& text) {
    if (text == "riemann") return indicator_datum(-0.5, 0.0, 1.0);
    if (text == "riemann_signed") {
        InitialDatum d;
        d.name = "riemann_signed";
        d.value = [](double x, double) { return x >= -0.5 && x < 0.0 ? 1.0 : (x >= 0.0 && x < 0.5 ? -1.0 : 0.0); };
        d.breakpoints = {-0.5, 0.0, 0.5};
        return d;
    }
    if (text == "hat") return hat_datum();
    if (text == "bump") return bump_datum(1.0);
    const auto parts = split_trimmed(text, ':');
    if (parts[0] == "indicator" && (parts.size() == 3 || parts.size() == 4)) {
        const double a = parse_number("initial", parts[1]), b = parse_number("initial", parts[2]);
        const double v = parts.size() == 4 ? parse_number("initial", parts[3]) : 1.0;
        if (!(a < b)) throw ConfigError("initial indicator needs a < b");
        return indicator_datum(a, b, v);
    }
    throw ConfigError("unknown initial datum '" + text + "' (riemann|riemann_signed|hat|bump|indicator:a:b[:v])");
}

Diffusion make_diffusion(const RunConfig& c) {
    if (c.diffusion == "identity") return identity_diffusion();
    if (c.diffusion == "zero") return zero_diffusion();
    if (c.diffusion == "A1") return a1_diffusion();
    if (c.diffusion == "A2") return a2_diffusion();
    std::vector<std::pair<double, double>> nodes;
    for (const auto& item : split_trimmed(c.diffusion_table, ',')) {
        const auto uv = split_trimmed(item, ':');
        if (uv.size() != 2) throw ConfigError("diffusion_table entries are u:a pairs, got '" + item + "'");
        nodes.emplace_back(parse_number("diffusion_table", uv[0]), parse_number("diffusion_table", uv[1]));
    }
    return table_diffusion(std::move(nodes));
}

// c such that (1/2) sum_beta G_beta (beta dx)^2 = local_scale, i.e. the
// discrete weights act like local_scale * u'' on quadratics.
double moment_matched_normalization(const RunConfig& c, long window) {
    const NonlocalWeights unit = fractional_weights(c.lambda, c.dx, 1, window, 1.0);
    double moment = 0.0;
    for (long b = -window; b <= window; ++b) moment += unit.at(b) * double(b) * double(b);
    moment *= 0.5 * c.dx * c.dx;
    return c.local_scale / moment;
}

double resolve_normalization(const RunConfig& c, long window) {
    if (c.c_lambda == "moment_matched") return moment_matched_normalization(c, window);
    if (c.c_lambda == "standard") return standard_normalization(1, c.lambda);
    if (c.c_lambda == "fourier_2pi") return std::pow(2.0 * std::numbers::pi, c.lambda) * standard_normalization(1, c.lambda);
    const double v = parse_number("c_lambda", c.c_lambda);
    if (!(v > 0.0)) throw ConfigError("c_lambda must be positive");
    return v;
}

RunConfig base(std::string name) {
    RunConfig c;
    c.name = std::move(name);
    return c;
}

} // namespace

// ---------------------------------------------------------------------------
// RunConfig

void RunConfig::set(const std::string& key, const std::string& raw) {
    const std::string value(trim(raw));
    if (key == "name") {
        if (value.empty() || value.find_first_of("/\\ ") != std::string::npos)
            throw ConfigError("'name' must be a non-empty word without slashes or spaces");
        name = value;
    } else if (key == "flux") {
        require_one_of(key, value, {"burgers", "none"});
        flux = value;
    } else if (key == "flux_scheme") {
        require_one_of(key, value, {"lax_friedrichs", "engquist_osher"});
        flux_scheme = value;
    } else if (key == "lf_speed") {
        lf_speed = value == "auto" ? -1.0 : parse_number(key, value);
    } else if (key == "diffusion") {
        require_one_of(key, value, {"identity", "zero", "A1", "A2", "table"});
        diffusion = value;
    } else if (key == "diffusion_table") {
        diffusion_table = value;
    } else if (key == "operator") {
        require_one_of(key, value, {"nonlocal", "local", "none"});
        diffusion_operator = value;
    } else if (key == "lambda") {
        lambda = parse_number(key, value);
    } else if (key == "c_lambda") {
        if (value != "standard" && value != "fourier_2pi" && value != "moment_matched") parse_number(key, value);
        c_lambda = value;
    } else if (key == "local_scale") {
        local_scale = value == "fourier_2pi" ? two_pi_squared : parse_number(key, value);
    } else if (key == "dx") {
        dx = parse_number(key, value);
    } else if (key == "half_width") {
        half_width = parse_number(key, value);
    } else if (key == "window") {
        window = value == "auto" ? -1 : parse_integer(key, value);
    } else if (key == "T") {
        final_time = parse_number(key, value);
    } else if (key == "theta") {
        theta = parse_number(key, value);
    } else if (key == "path") {
        require_one_of(key, value, {"direct", "fast"});
        path = evaluation_path_from_string(value);
    } else if (key == "initial") {
        make_initial(value);
        initial = value;
    } else if (key == "snapshots") {
        snapshots = parse_list(key, value);
    } else if (key == "output_every") {
        output_every = static_cast<int>(parse_integer(key, value));
    } else if (key == "diagnostics") {
        diagnostics = parse_bool(key, value);
    } else if (key == "export_weights") {
        export_weights = parse_bool(key, value);
    } else if (key.starts_with("resolved.") || key == "status") {
        // manifest output, not an input
    } else {
        throw ConfigError("unknown configuration key '" + key + "'");
    }
}

std::vector<std::pair<std::string, std::string>> RunConfig::to_pairs() const {
    return {
        {"name", name},
        {"flux", flux},
        {"flux_scheme", flux_scheme},
        {"lf_speed", lf_speed < 0.0 ? "auto" : format_double(lf_speed)},
        {"diffusion", diffusion},
        {"diffusion_table", diffusion_table},
        {"operator", diffusion_operator},
        {"lambda", format_double(lambda)},
        {"c_lambda", c_lambda},
        {"local_scale", format_double(local_scale)},
        {"dx", format_double(dx)},
        {"half_width", format_double(half_width)},
        {"window", window < 0 ? "auto" : std::to_string(window)},
        {"T", format_double(final_time)},
        {"theta", format_double(theta)},
        {"path", to_string(path)},
        {"initial", initial},
        {"snapshots", join(snapshots)},
        {"output_every", std::to_string(output_every)},
        {"diagnostics", diagnostics ? "true" : "false"},
        {"export_weights", export_weights ? "true" : "false"},
    };
}

std::vector<std::pair<std::string, std::string>> parse_key_values(std::istream& in) {
    std::vector<std::pair<std::string, std::string>> pairs;
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const std::string_view body = trim(line);
        if (body.empty()) continue;
        const auto eq = body.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError("line " + std::to_string(number) + ": expected 'key = value'");
        const std::string key(trim(body.substr(0, eq)));
        if (key.empty()) throw ConfigError("line " + std::to_string(number) + ": empty key");
        pairs.emplace_back(key, std::string(trim(body.substr(eq + 1))));
    }
    return pairs;
}

// ---------------------------------------------------------------------------
// Presets

std::vector<std::string> preset_names() {
    return {"fig_a", "fig_a_b", "fig_b_a", "fig_b_b", "fig_c_a", "fig_c_b", "fig_d"};
}

std::vector<RunConfig> preset(const std::string& name) {
    std::vector<RunConfig> runs;
    if (name == "fig_a") {
        // Burgers with A1 against linear fractional diffusion, lambda = 0.5.
        for (const char* a : {"A1", "identity"}) {
            RunConfig c = base(std::string("fig_a_") + a);
            c.diffusion = a;
            c.initial = "riemann_signed";
            c.lambda = 0.5;
            c.final_time = 0.5;
            runs.push_back(c);
        }
    } else if (name == "fig_a_b") {
        for (double lam : {0.001, 0.5, 0.999}) {
            RunConfig c = base("fig_a_b_lambda" + format_double(lam));
            c.diffusion = "A1";
            c.initial = "riemann_signed";
            c.lambda = lam;
            c.final_time = 0.5;
            runs.push_back(c);
        }
    } else if (name == "fig_b_a") {
        RunConfig c = base("fig_b_a");
        c.diffusion = "A2";
        c.lambda = 0.3;
        c.initial = "hat";
        c.final_time = 0.5;
        c.snapshots = {0.25};
        runs.push_back(c);
    } else if (name == "fig_b_b") {
        RunConfig c = base("fig_b_b");
        c.diffusion = "A2";
        c.diffusion_operator = "local";
        c.local_scale = two_pi_squared;
        c.initial = "hat";
        c.final_time = 0.025;
        c.snapshots = {0.01};
        runs.push_back(c);
    } else if (name == "fig_c_a" || name == "fig_c_b") {
        RunConfig c = base(name);
        c.flux = "none";
        c.diffusion = name == "fig_c_a" ? "A2" : "identity";
        c.lambda = 0.3;
        c.final_time = 3.0;
        c.snapshots = {0.1};
        runs.push_back(c);
    } else if (name == "fig_d") {
        // lambda close to 2 against the local scheme. The discrete weights
        // miss the |z| < dx/2 core, where almost all of the operator sits
        // at this lambda, so c_lambda is fitted on the grid instead.
        RunConfig nonlocal = base("fig_d_nonlocal");
        nonlocal.flux = "none";
        nonlocal.diffusion = "A2";
        nonlocal.lambda = 1.999;
        nonlocal.c_lambda = "moment_matched";
        nonlocal.local_scale = two_pi_squared;
        nonlocal.final_time = 0.005;
        RunConfig local = nonlocal;
        local.name = "fig_d_local";
        local.diffusion_operator = "local";
        runs.push_back(nonlocal);
        runs.push_back(local);
    } else {
        std::string known;
        for (const auto& n : preset_names()) known += (known.empty() ? "" : ", ") + n;
        throw ConfigError("unknown preset '" + name + "' (known: " + known + ")");
    }
    return runs;
}

// ---------------------------------------------------------------------------
// Resolution

std::vector<std::pair<std::string, std::string>> ResolvedRun::resolved_pairs() const {
    std::vector<std::pair<std::string, std::string>> out{
        {"resolved.cells", std::to_string(grid.cells[0])},
        {"resolved.first_cell", std::to_string(grid.lower[0])},
        {"resolved.data_bound", format_double(spec.flux.data_bound)},
        {"resolved.flux_lipschitz", format_double(spec.flux.lipschitz)},
        {"resolved.lf_speed", format_double(spec.flux.speed)},
        {"resolved.numerical_flux_lipschitz", format_double(spec.flux.numerical_lipschitz())},
        {"resolved.diffusion_lipschitz", format_double(spec.diffusion.lipschitz)},
        {"resolved.dt", format_double(dt)},
        {"resolved.estimated_steps", std::to_string(estimated_steps)},
    };
    if (spec.weights) {
        const auto& w = *spec.weights;
        out.emplace_back("resolved.c_lambda", format_double(w.normalization));
        out.emplace_back("resolved.window_half_width", std::to_string(w.half_width));
        out.emplace_back("resolved.window_mass", format_double(w.window_mass()));
        out.emplace_back("resolved.tail_mass", format_double(w.tail_mass));
        out.emplace_back("resolved.cfl_rate", format_double(nonlocal_rate(w)));
    }
    return out;
}

ResolvedRun resolve(const RunConfig& config) {
    try {
        ResolvedRun r;
        r.config = config;
        const RunConfig& c = config;
        if (!(c.theta > 0.0 && c.theta <= 1.0)) throw ConfigError("theta must lie in (0,1]");
        if (!(c.final_time >= 0.0) || !std::isfinite(c.final_time)) throw ConfigError("T must be finite and >= 0");
        if (!(c.dx > 0.0)) throw ConfigError("dx must be positive");
        if (c.output_every < 0) throw ConfigError("output_every must be >= 0");
        for (double t : c.snapshots)
            if (!(t > 0.0 && t <= c.final_time))
                throw ConfigError("snapshot time " + format_double(t) + " lies outside (0, T]");
        const bool nonlocal = c.diffusion_operator == "nonlocal";
        if (nonlocal && !(c.lambda > 0.0 && c.lambda < 2.0))
            throw ConfigError("lambda must lie in (0,2), got " + format_double(c.lambda));

        r.grid = Grid::centered(1, c.dx, c.half_width);
        r.initial = make_initial(c.initial);
        r.projected = project_initial(r.initial, r.grid);
        const double bound = linf(r.projected);

        const Flux flux = c.flux == "burgers" ? burgers_flux() : zero_flux();
        r.spec.flux = make_flux_spec(flux, flux_scheme_from_string(c.flux_scheme), bound, c.lf_speed);
        r.spec.diffusion = make_diffusion(c);
        if (c.diffusion_operator == "none") {
            r.spec.op = DiffusionOperator::none;
        } else if (c.diffusion_operator == "local") {
            r.spec.op = DiffusionOperator::local;
            r.spec.local_scale = c.local_scale;
        } else {
            r.spec.op = DiffusionOperator::nonlocal;
            const long k = c.window < 0 ? covering_half_width(r.grid) : c.window;
            r.spec.weights = fractional_weights(c.lambda, c.dx, 1, k, resolve_normalization(c, k));
        }
        r.spec.validate(r.grid);

        r.solver.theta = c.theta;
        r.solver.path = c.path;
        r.solver.output_times = c.snapshots;
        r.solver.output_every = c.output_every;
        r.solver.record_diagnostics = c.diagnostics;
        r.solver.keep_partial = true;

        r.dt = stable_dt(r.spec, r.grid, c.theta);
        if (!std::isfinite(r.dt)) r.dt = c.final_time;
        r.estimated_steps = r.dt > 0.0 ? static_cast<long>(std::ceil(c.final_time / r.dt - 1e-9)) : 0;
        return r;
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        throw ConfigError(e.what());
    }
}

std::string validate(const RunConfig& config) {
    const ResolvedRun r = resolve(config);
    std::ostringstream os;
    os << "# run " << config.name << ": configuration is valid\n";
    for (const auto& [k, v] : config.to_pairs()) os << k << " = " << v << '\n';
    for (const auto& [k, v] : r.resolved_pairs()) os << k << " = " << v << '\n';
    return os.str();
}

void write_snapshots_csv(std::ostream& os, const std::vector<Field>& snapshots) {
    os << "t,x,u\n";
    for (const Field& f : snapshots)
        for (long i = 0; i < f.grid.cells[0]; ++i)
            os << format_double(f.time) << ',' << format_double(f.grid.center(0, i)) << ','
               << format_double(f(i)) << '\n';
}

namespace {

struct RunOutcome {
    int code = ExitCode::ok;
    std::optional<Field> final_field;
};

RunOutcome run_impl(const RunConfig& config, const std::filesystem::path& out_dir, std::ostream& log) {
    ResolvedRun r;
    try {
        r = resolve(config);
    } catch (const ConfigError& e) {
        log << "error: run " << config.name << ": " << e.what() << '\n';
        return {ExitCode::config_error, std::nullopt};
    }
    std::filesystem::create_directories(out_dir);
    const auto stem = out_dir / config.name;

    SolveResult result = solve(r.spec, r.projected, config.final_time, r.solver);

    {
        std::ofstream os(stem.string() + "_snapshots.csv");
        write_snapshots_csv(os, result.snapshots);
    }
    if (config.diagnostics) {
        std::ofstream os(stem.string() + "_diagnostics.csv");
        result.diagnostics.write_csv(os);
    }
    if (config.export_weights && r.spec.weights) {
        std::ofstream os(stem.string() + "_weights.csv");
        write_weights_csv(os, *r.spec.weights);
    }
    {
        std::ofstream os(stem.string() + "_manifest.txt");
        os << "# fracdeg run manifest; re-run with --config on this file\n";
        for (const auto& [k, v] : config.to_pairs()) os << k << " = " << v << '\n';
        for (const auto& [k, v] : r.resolved_pairs()) os << k << " = " << v << '\n';
        os << "resolved.steps_taken = " << result.steps << '\n';
        os << "resolved.final_time_reached = " << format_double(result.snapshots.back().time) << '\n';
        os << "status = " << (result.failure.empty() ? "ok" : "failed (partial output): " + result.failure)
           << '\n';
    }
    if (!result.failure.empty()) {
        log << "error: run " << config.name << ": " << result.failure << '\n';
        return {ExitCode::numerical_failure, std::nullopt};
    }
    log << "run " << config.name << ": " << result.steps << " steps, dt = " << format_double(result.dt)
        << ", outputs in " << out_dir.string() << '\n';
    return {ExitCode::ok, result.snapshots.back()};
}

} // namespace

int run(const RunConfig& config, const std::filesystem::path& out_dir, std::ostream& log) {
    return run_impl(config, out_dir, log).code;
}

// ---------------------------------------------------------------------------
// Command line

int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Explicit monotone solver for degenerate fractional convection-diffusion equations"};
    std::string preset_name, config_path, snapshots, path;
    std::string out_dir = "out";
    std::vector<std::string> overrides;
    bool validate_only = false, list = false;
    app.add_option("--preset", preset_name, "Built-in run set (see --list-presets)");
    app.add_option("--config", config_path, "key = value configuration file");
    app.add_option("--set", overrides, "Override one key, key=value (repeatable)");
    app.add_option("--out", out_dir, "Output directory")->capture_default_str();
    app.add_option("--snapshots", snapshots, "Comma-separated output times");
    app.add_option("--path", path, "Nonlocal evaluation path: direct|fast");
    app.add_flag("--validate", validate_only, "Resolve and print parameters without running");
    app.add_flag("--list-presets", list, "Print preset names");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? ExitCode::ok : ExitCode::config_error;
    }

    if (list) {
        for (const auto& n : preset_names()) out << n << '\n';
        return ExitCode::ok;
    }

    std::vector<RunConfig> runs;
    try {
        std::vector<std::pair<std::string, std::string>> file_pairs;
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in) throw ConfigError("cannot open config file '" + config_path + "'");
            file_pairs = parse_key_values(in);
        }
        for (const auto& [k, v] : file_pairs)
            if (k == "preset") {
                if (!preset_name.empty() && preset_name != v)
                    throw ConfigError("preset given twice ('" + preset_name + "' and '" + v + "')");
                preset_name = v;
            }
        runs = preset_name.empty() ? std::vector<RunConfig>{RunConfig{}} : preset(preset_name);

        std::vector<std::pair<std::string, std::string>> pairs;
        for (const auto& kv : file_pairs)
            if (kv.first != "preset") pairs.push_back(kv);
        for (const auto& o : overrides) {
            const auto eq = o.find('=');
            if (eq == std::string::npos) throw ConfigError("--set expects key=value, got '" + o + "'");
            pairs.emplace_back(std::string(trim(o.substr(0, eq))), std::string(trim(o.substr(eq + 1))));
        }
        if (!snapshots.empty()) pairs.emplace_back("snapshots", snapshots);
        if (!path.empty()) pairs.emplace_back("path", path);
        for (const auto& [k, v] : pairs) {
            if (k == "name" && runs.size() > 1)
                throw ConfigError("'name' cannot be overridden for a preset with several runs");
            for (auto& r : runs) r.set(k, v);
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return ExitCode::config_error;
    }

    if (validate_only) {
        int code = ExitCode::ok;
        for (const auto& r : runs) {
            try {
                out << validate(r);
            } catch (const ConfigError& e) {
                err << "error: run " << r.name << ": " << e.what() << '\n';
                code = ExitCode::config_error;
            }
        }
        return code;
    }

    int code = ExitCode::ok;
    std::vector<std::pair<std::string, Field>> finals;
    for (const auto& r : runs) {
        RunOutcome outcome = run_impl(r, out_dir, err);
        code = std::max(code, outcome.code);
        if (outcome.final_field) finals.emplace_back(r.name, std::move(*outcome.final_field));
    }
    if (finals.size() > 1 && code == ExitCode::ok) {
        // Pairwise L1 distances at the final time, for comparison presets.
        std::ofstream os(std::filesystem::path(out_dir) / "comparison.csv");
        os << "run_a,run_b,t,l1_distance,relative_l1_distance\n";
        for (std::size_t a = 0; a < finals.size(); ++a)
            for (std::size_t b = a + 1; b < finals.size(); ++b) {
                const Field &fa = finals[a].second, &fb = finals[b].second;
                const double d = l1_distance(fa, fb);
                const double rel = d / std::max(l1_norm(fb), 1e-300);
                os << finals[a].first << ',' << finals[b].first << ',' << format_double(fa.time) << ','
                   << format_double(d) << ',' << format_double(rel) << '\n';
                out << finals[a].first << " vs " << finals[b].first << ": L1 distance " << format_double(d)
                    << " (relative " << format_double(rel) << ")\n";
            }
    }
    return code;
}

} // namespace fracdeg::cli
