#pragma once

#include "odecond/minimax.hpp"
#include "odecond/spectral.hpp"

#include <optional>
#include <string>
#include <vector>

namespace odecond {

/// Uniform samples t_k = start + k (end - start) / (steps - 1).
struct TimeGrid {
    double start = 0.0;
    double end = 0.0;
    std::size_t steps = 0;

    [[nodiscard]] std::vector<double> values() const;
    bool operator==(const TimeGrid&) const = default;
};

/// A linear system y' = A y with initial value y0. With z0 set the
/// condition number is directional along z0, otherwise worst case.
struct Scenario {
    Matrix A;
    Vector y0;
    std::optional<Vector> z0;  ///< unit in the chosen norm
    Norm norm = Norm::Two;
    TimeGrid t;
    double tol_group = kDefaultGroupTol;

    [[nodiscard]] bool directional() const noexcept { return z0.has_value(); }
    /// Throws on shape, finiteness, zero y0 or non-unit z0.
    void validate() const;
};

[[nodiscard]] Vector normalized(const Vector& u, Norm p);

/// K(t, y0, z0) or K(t, y0) from the matrix exponential of t (A - shift I).
[[nodiscard]] double k_exact(const Scenario& s, double t, double shift = 0.0);

/// Leading-block limit of K.
[[nodiscard]] double k_asym(const Scenario& s, const SpectrumAnalysis& a, double t);

/// Oscillation-free factor: |w z| / |w y| or 1 / |w y| with unit y, z.
[[nodiscard]] double osf(const Scenario& s, const EigenBlock& block1);

/// The 2-norm worst-case or directional OSF from the singular coordinates c, d.
[[nodiscard]] double osf_coordinates(const Scenario& s, const EigenBlock& block1);

/// Oscillation term, K_asym / OSF. Identically 1 for a real leading block.
[[nodiscard]] double ot(const Scenario& s, const EigenBlock& block1, double t);

struct OscillationProfile {
    bool directional = false;
    double osf = 0.0;
    double period = 0.0;  ///< pi / omega_1
    double ot_min = 0.0;  ///< min over t for this y0 (and z0)
    double ot_max = 0.0;
    double a_max = 0.0;   ///< bounds over all initial values with the same OSF
    double a_minmax = 0.0;
    double a_maxmin = 0.0;
    double a_min = 0.0;
    double q1 = 0.0;
    double V1 = 0.0;
    double W1 = 0.0;

    [[nodiscard]] double k_min() const noexcept { return osf * ot_min; }
    [[nodiscard]] double k_max() const noexcept { return osf * ot_max; }
};

/// Closed-form envelopes of OT; needs a complex leading block under the 2-norm.
[[nodiscard]] OscillationProfile ot_envelope(const Scenario& s, const EigenBlock& block1);

struct EpsilonBounds {
    double eps = 0.0;
    std::vector<double> g_ratios;  ///< G_j for j >= 2
    std::vector<double> terms;     ///< summands of eps
};

/// eps(t, u) with u, or eps(t) without. Throws UnsupportedSpectrum when a
/// trailing block is unsupported.
[[nodiscard]] EpsilonBounds epsilon_bounds(const SpectrumAnalysis& a, double t,
                                           const std::optional<Vector>& u = std::nullopt);

/// (eps_num + eps_tu) / (1 - eps_tu); empty when eps_tu >= 1.
[[nodiscard]] std::optional<double> precision_bound(double eps_num, double eps_tu);

/// Throws ZeroProjection if |w1 u| <= 1e-12 ||u||; returns a warning when
/// the projection is below 1e-6 ||u||.
[[nodiscard]] std::optional<std::string> check_projection(const EigenBlock& block1, const Vector& u,
                                                          const char* name);

struct KExtrema {
    double k_min = 0.0;
    double t_min = 0.0;
    double k_max = 0.0;
    double t_max = 0.0;
};

/// Extremes of K_asym over one period by a dense grid and golden-section polish.
[[nodiscard]] KExtrema k_asym_extrema(const Scenario& s, const SpectrumAnalysis& a);

struct SeriesSample {
    double t = 0.0;
    double k_exact = 0.0;
    double k_asym = 0.0;
    double osf = 0.0;
    double ot = 0.0;
    double eps_t = 0.0;   ///< eps(t, z0) when directional, else eps(t)
    double eps_tu = 0.0;  ///< eps(t, y0)
    std::optional<double> bound;
    std::string status = "ok";
};

struct ConditionSeries {
    Scenario scenario;
    SpectrumAnalysis analysis;
    std::optional<OscillationProfile> profile;
    std::vector<SeriesSample> samples;
    std::vector<std::string> warnings;
};

/// Worker count from ODECOND_THREADS, else the hardware concurrency.
[[nodiscard]] unsigned worker_threads();

/// Default grid: four periods at 256 samples per period for a complex
/// leading block, else [0, 10] with 257 samples.
[[nodiscard]] TimeGrid default_time_grid(const SpectrumAnalysis& a);

[[nodiscard]] ConditionSeries sweep(const Scenario& s);

}  // namespace odecond
