#pragma once

#include "odecond/run_config.hpp"

#include <string>
#include <vector>

namespace odecond {

/// CSV with columns t,k_exact,k_asym,osf,ot,eps_t,eps_tu,precision_bound.
[[nodiscard]] std::string series_csv(const ConditionSeries& series);

/// Spectrum classification, leading-block shape data, OSF/OT envelopes and
/// warnings. Headline values carry a raw and a rounded form.
[[nodiscard]] std::string summary_json(const ConditionSeries& series);

/// Rounds to the given number of significant digits.
[[nodiscard]] double round_significant(double v, int digits);

/// The 3x3 example with eigenvalues -1 and +-i.
[[nodiscard]] Matrix demo_matrix();

struct DemoRow {
    std::string name;
    std::string reference;  ///< reference value as printed
    double computed = 0.0;
    std::string rounded;    ///< computed, to the digits of the reference
    bool pass = false;
};

struct DemoReport {
    std::vector<DemoRow> rows;
    ConditionSeries minor;  ///< y0 = minor right singular vector of R_1
    ConditionSeries major;  ///< y0 = major right singular vector of R_1
    std::string table;
};

[[nodiscard]] DemoReport run_demo();

/// Each command writes its files into cfg.out_dir and returns the text to
/// print on stdout. Failures are thrown as odecond::Error.
std::string cmd_analyze(RunConfig& cfg);
std::string cmd_demo(RunConfig& cfg);
std::string cmd_envelope(RunConfig& cfg);
std::string cmd_branches(RunConfig& cfg);
std::string run_command(RunConfig& cfg);

}  // namespace odecond
