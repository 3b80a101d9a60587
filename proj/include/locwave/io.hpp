// Run configuration, plot-data writers and the `locwave` command driver.
#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "locwave/band_scan.hpp"
#include "locwave/core_em.hpp"
#include "locwave/pso.hpp"

namespace locwave::io {

// Stable process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNotLocalized = 3;
inline constexpr int kExitInfeasible = 4;

enum class Command { Classify, Scan, Mode, Optimize, Compare };
enum class Format { Csv, Json };

std::optional<Command> parse_command(std::string_view s);

struct ScanSpec {
    double eta_min = 0.0, eta_max = 8.0;
    std::size_t eta_count = 400;
    double omega_min = 0.0, omega_max = 12.0;
    std::size_t omega_count = 400;
    std::optional<std::vector<double>> eta_values;  // explicit axes win over ranges
    std::optional<std::vector<double>> omega_values;

    [[nodiscard]] ScanGrid grid() const;
};

struct ModeSpec {
    ProfileOptions profile;
    bool field2d = true;
    double y_max = 3.141592653589793;
    std::size_t y_count = 64;
};

struct RunConfig {
    Command command = Command::Classify;
    std::optional<MediumConfig> medium;
    std::optional<MediumConfig> medium_b;  // compare only
    std::optional<WaveParams> wave;
    ScanSpec scan;
    ModeSpec mode;
    PsoConfig pso;
    int compare_periods = 10;
    std::filesystem::path output_dir = ".";
    Format format = Format::Csv;

    /// Throws Error{InvalidArgument} naming the first missing or invalid field.
    void validate() const;
};

/// Builds a RunConfig from a JSON document, then applies the seed from the
/// environment and finally `key=value` overrides (dotted keys, JSON values).
RunConfig build_run_config(Command command, const std::string& config_text,
                           const std::vector<std::string>& overrides,
                           std::optional<std::string> env_seed);

/// Shortest decimal string that parses back to the same double.
std::string format_double(double v);

void write_report_csv(std::ostream& os, const LocalizationReport& rep);
void write_report_json(std::ostream& os, const LocalizationReport& rep);
void write_region_map_csv(std::ostream& os, const RegionMap& map);
void write_region_map_json(std::ostream& os, const RegionMap& map);
void write_profile_csv(std::ostream& os, const FieldProfile& prof);
void write_field2d_csv(std::ostream& os, const Field2D& field);
void write_layers_csv(std::ostream& os, double theta, int n_periods);
void write_history_csv(std::ostream& os, const std::vector<double>& history);
void write_best_json(std::ostream& os, const PsoResult& res, const LocalizationReport& rep,
                     std::uint64_t seed);

struct EnvelopeRow {
    int period = 0;
    double a = 1.0;
    double b = 1.0;
};

/// |lambda1|^m for m = 0..n_periods for both media.
std::vector<EnvelopeRow> envelope_table(double lambda1_abs_a, double lambda1_abs_b, int n_periods);
void write_envelope_csv(std::ostream& os, const std::vector<EnvelopeRow>& rows);
void write_envelope_json(std::ostream& os, const std::vector<EnvelopeRow>& rows);

/// Full CLI: `locwave <command> [--config path] [--set k=v ...] [--out dir] [--format csv|json]`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace locwave::io
