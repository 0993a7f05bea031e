#pragma once

#include "odecond/condition.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace odecond {

enum class Command { Analyze, Demo, Envelope, Branches };

[[nodiscard]] const char* to_string(Command c) noexcept;
[[nodiscard]] Command parse_command(const std::string& name);

/// Everything a command needs. Optional fields are unset until given on the
/// command line or read from a JSON scenario.
struct RunConfig {
    Command command = Command::Analyze;
    std::string input_path;
    std::string out_dir = ".";
    std::optional<Matrix> matrix;
    std::optional<Vector> y0;
    std::optional<Vector> z0;
    std::optional<Norm> norm;
    std::optional<double> t_start;
    std::optional<double> t_end;
    std::optional<std::size_t> steps;
    std::optional<double> tol_group;
    std::optional<std::uint64_t> seed;
    std::optional<double> V;
    std::optional<double> W;
};

/// Equality of the scenario content: matrix, y0, z0, norm, time grid, tolerance.
[[nodiscard]] bool same_scenario(const RunConfig& a, const RunConfig& b);

/// One matrix row per line, comma separated. Blank lines and lines starting
/// with '#' are skipped. Errors name the offending line and column.
[[nodiscard]] Matrix parse_matrix_csv(const std::string& text);

/// "1,2,3" -> vector.
[[nodiscard]] Vector parse_vector_list(const std::string& text, const std::string& name);

/// Reads {"matrix": [[..]], "y0": [..], "z0": [..], "norm": 2, "t": {...}}
/// into the unset fields of cfg.
void merge_scenario_json(RunConfig& cfg, const std::string& text);

/// Loads cfg.input_path (CSV matrix or JSON scenario) into cfg.
void load_input(RunConfig& cfg);

[[nodiscard]] std::string scenario_to_json(const RunConfig& cfg);

/// Deterministic unit vector with entries drawn from mt19937_64(seed).
[[nodiscard]] Vector seeded_vector(std::size_t n, std::uint64_t seed);

/// Resolves defaults and builds a validated scenario. The z0 direction is
/// normalized; a missing y0 is drawn from the seed.
[[nodiscard]] Scenario to_scenario(RunConfig& cfg);

/// "%.17g", with nan and inf spelled out.
[[nodiscard]] std::string fmt17(double v);

[[nodiscard]] std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace odecond
