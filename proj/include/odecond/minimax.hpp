#pragma once

#include "odecond/oscillator.hpp"

#include <string>
#include <vector>

namespace odecond {

/// H(x, beta) = f_max(x) / (1 + V cos(x + beta)).
[[nodiscard]] double h_func(const VWPair& p, double x, double beta);

/// Residual of the stationarity condition dH/dx = 0; it has the sign of dH/dx.
[[nodiscard]] double stationary_residual(const VWPair& p, double x, double beta);

struct HEnvelope {
    double h_max = 0.0;
    double x_max = 0.0;
    double h_min = 0.0;
    double x_min = 0.0;
};

/// max and min of H(., beta) over one period.
[[nodiscard]] HEnvelope h_envelope(const VWPair& p, double beta);

struct HExtremes {
    double maxmax = 0.0;  ///< H_max(pi)
    double minmax = 0.0;  ///< H_max(0)
    double maxmin = 0.0;  ///< H_min(0)
    double minmin = 0.0;  ///< H_min(pi)
    double q1 = 0.0;
};

/// Closed-form extremes of the H envelopes over beta.
[[nodiscard]] HExtremes h_extremes(const VWPair& p);

/// Q1 = V (1 + W) / (2 W); infinite for W = 0.
[[nodiscard]] double q1_of(const VWPair& p);

enum class StationaryKind { Max, Min, LocalMax, LocalMin };

[[nodiscard]] const char* to_string(StationaryKind kind) noexcept;

struct StationaryPoint {
    double x = 0.0;
    double h = 0.0;
    StationaryKind kind = StationaryKind::Min;
};

/// Stationary points of H(., 0) in [-pi, pi), sorted by x. Needs V, W in (0, 1).
[[nodiscard]] std::vector<StationaryPoint> critical_points_beta0(const VWPair& p);

enum class BranchSource { Axis, General };

[[nodiscard]] const char* to_string(BranchSource s) noexcept;

struct Branch {
    int id = 0;
    BranchSource source = BranchSource::General;
    std::vector<double> beta;
    std::vector<double> x;  ///< wrapped to (-pi, pi]
    std::vector<double> h;
};

struct BranchLoss {
    double beta = 0.0;
    double x = 0.0;
    std::string reason;
};

struct BranchTrace {
    std::vector<Branch> branches;
    std::vector<BranchLoss> lost;
};

/// All solutions x of dH/dx = 0 in one period at a given beta.
[[nodiscard]] std::vector<double> stationary_solutions(const VWPair& p, double beta);

/// Follows the stationary solutions of H(., beta) over an increasing beta grid.
[[nodiscard]] BranchTrace trace_branches(const VWPair& p, const std::vector<double>& beta_grid);

struct SecondDerivatives {
    double d2_xx = 0.0;
    double d2_xbeta = 0.0;
    double lastref_diff = 0.0;  ///< d2_xx - d2_xbeta = f_max''(x) / (1 + V cos x)
    double f_second = 0.0;      ///< f_max''(x)
};

/// Second derivatives of H at (x, 0) for x a multiple of pi.
[[nodiscard]] SecondDerivatives h_second_derivatives(const VWPair& p, double x);

}  // namespace odecond
