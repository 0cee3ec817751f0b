#pragma once

#include "fracdeg/error.hpp"
#include "fracdeg/scheme.hpp"

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace fracdeg::cli {

/// Raised for anything wrong with a configuration; maps to exit code 2.
class ConfigError : public Error {
public:
    using Error::Error;
};

enum ExitCode : int { ok = 0, config_error = 2, numerical_failure = 3 };

/// One 1-d run, described with the same keys the config grammar uses.
///
/// Grammar: one `key = value` per line, `#` starts a comment, blank lines
/// are ignored. Numbers accept a fraction form `p/q` (e.g. dx = 1/500).
/// Keys prefixed `resolved.` and the `status` key are written into
/// manifests and ignored when read back.
struct RunConfig {
    std::string name = "run";
    std::string flux = "burgers";              ///< burgers | none
    std::string flux_scheme = "lax_friedrichs";///< lax_friedrichs | engquist_osher
    double lf_speed = -1.0;                    ///< < 0: use L_f
    std::string diffusion = "identity";        ///< identity | zero | A1 | A2 | table
    std::string diffusion_table;               ///< "u:a,u:a,..." for diffusion = table
    std::string diffusion_operator = "nonlocal";///< nonlocal | local | none
    double lambda = 0.5;
    std::string c_lambda = "standard";         ///< standard | fourier_2pi | moment_matched | <positive number>
    double local_scale = 1.0;                  ///< local Laplacian factor; target of moment_matched
    double dx = 1.0 / 500.0;
    double half_width = 2.0;                   ///< domain [-h, h)
    long window = -1;                          ///< weight window half width, < 0: cover the domain
    double final_time = 0.5;
    double theta = 0.9;
    EvaluationPath path = EvaluationPath::fast;
    std::string initial = "riemann";           ///< riemann | riemann_signed | hat | bump | indicator:a:b[:v]
    std::vector<double> snapshots;             ///< extra output times in (0, T]
    int output_every = 0;
    bool diagnostics = true;
    bool export_weights = false;

    /// Apply one key/value pair. Throws ConfigError for unknown keys or
    /// malformed values.
    void set(const std::string& key, const std::string& value);
    /// Every key with its current value, in grammar order.
    std::vector<std::pair<std::string, std::string>> to_pairs() const;
};

/// Parse `key = value` text. Returns the pairs in file order.
std::vector<std::pair<std::string, std::string>> parse_key_values(std::istream& in);

/// Names of the built-in presets.
std::vector<std::string> preset_names();
/// Runs making up a preset. Throws ConfigError for unknown names.
std::vector<RunConfig> preset(const std::string& name);

/// A configuration turned into library objects.
struct ResolvedRun {
    RunConfig config;
    Grid grid;
    InitialDatum initial;
    Field projected;
    ProblemSpec spec;
    SolverConfig solver;
    double dt = 0.0;
    long estimated_steps = 0;

    /// Resolved parameters (c_lambda, window, dt, Lipschitz constants, ...).
    std::vector<std::pair<std::string, std::string>> resolved_pairs() const;
};

/// Check every precondition and build the problem. Throws ConfigError.
ResolvedRun resolve(const RunConfig& config);

/// Human-readable report of resolve() without running.
std::string validate(const RunConfig& config);

/// Run one configuration, writing <name>_snapshots.csv,
/// <name>_diagnostics.csv and <name>_manifest.txt under out_dir.
/// Returns the exit code; numerical failures leave a manifest whose
/// status line flags the partial output.
int run(const RunConfig& config, const std::filesystem::path& out_dir, std::ostream& log);

/// Snapshot CSV: header "t,x,u", one row per cell per snapshot, where x
/// is the cell centre.
void write_snapshots_csv(std::ostream& os, const std::vector<Field>& snapshots);

/// Command line entry point shared by the executable and the tests.
int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err);

} // namespace fracdeg::cli
