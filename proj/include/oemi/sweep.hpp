// sweep.hpp — run configs, parameter sweeps, figure-reproduction presets and
// CSV/JSON emission.

#pragma once

#include "oemi/entanglement.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace oemi::sweep {

using model::SystemParams;

enum class Format { csv, json };

struct RunConfig {
    SystemParams params;            // defaults are the canonical caption values
    double omega{0.0};              // probe frequency (MHz)
    std::uint64_t samples{50000};   // witness sample count
    std::uint64_t seed{12345};
};

// Outcome of parsing + validating a flat key-value config. Parse errors
// (syntax, unknown keys, bad numbers) and validation errors (constraint
// violations) are kept apart so the CLI can exit 2 vs 1.
struct ConfigResult {
    std::optional<RunConfig> config;
    std::vector<std::string> parse_errors;
    std::vector<std::string> validation_errors;
    std::vector<std::string> notices;  // e.g. "phi normalized to ..."
    bool ok() const { return config.has_value(); }
};

// Keys: SystemParams field names plus omega, samples, seed. Values are
// numbers; '#' starts a comment. Units are the "/2pi MHz" caption convention.
ConfigResult validate_config(const std::string& text);

std::string serialize_config(const RunConfig& cfg);

enum class Axis { phi, g_a, omega, n_th, gamma_m, g_c };

Axis axis_from_name(const std::string& name);
const char* axis_name(Axis a);

struct SweepSpec {
    Axis axis{Axis::phi};
    double start{0.0};
    double stop{1.0};
    int steps{2};  // inclusive linear grid, >= 2

    void require_valid() const;
    double value_at(int i) const;
};

// One grid point: the axis value, the stability verdict and the requested
// observable columns. Unstable points carry empty observables, never NaN.
struct OutputRecord {
    double axis_value{0.0};
    bool stable{false};
    std::vector<std::optional<double>> values;
};

struct SweepResult {
    std::string axis;
    std::vector<std::string> columns;  // observable column names
    std::vector<OutputRecord> records;
};

// Observable names: t2_ij (|T_ij|^2, i,j in 1..4), ef_ac / ef_ad / ef_cd,
// log_neg_ac / _ad / _cd, and "witness" which expands to delta_e_min,
// delta_e_max, frac_negative, witnessed, all_negative. Witness seeds are
// derived per grid point as splitmix64(seed, point index).
SweepResult run_sweep(const RunConfig& cfg, const SweepSpec& spec,
                      const std::vector<std::string>& observables);

void write_csv(const SweepResult& r, std::ostream& os);
void write_json(const SweepResult& r, std::ostream& os);
void write_file(const SweepResult& r, const std::filesystem::path& path, Format format);

// Emit the data behind one of the paper-style figures (2..8) into out_dir:
// fig<n>[a|b].csv plus a fig<n>.json sidecar recording the exact parameters.
// Returns the written paths.
std::vector<std::filesystem::path> reproduce_figure(int figure,
                                                    const std::filesystem::path& out_dir,
                                                    std::uint64_t seed = 12345,
                                                    std::uint64_t samples = 50000);

}  // namespace oemi::sweep
