#pragma once

#include "odecond/spectral.hpp"

#include <optional>

namespace odecond {

/// Shape parameters of the two-parameter family
/// f(alpha, x) = (1 + V cos(x + alpha)) / (1 - W cos alpha).
struct VWPair {
    double V = 0.0;
    double W = 0.0;
};

/// Throws InvalidArgument unless 0 <= V < 1 and 0 <= W < 1.
void validate(const VWPair& p);

/// Reduces an angle to (-pi, pi].
[[nodiscard]] double wrap_angle(double a) noexcept;

[[nodiscard]] double f_vw(const VWPair& p, double alpha, double x);

struct AlphaExtrema {
    double alpha_max = 0.0;  ///< in (-pi, pi]
    double alpha_min = 0.0;
    bool limit_branch = false;  ///< true when taken from the V = W continuation at odd multiples of pi
};

/// Maximizer and minimizer of f(., x). Throws DegenerateConstant when f is
/// constant in alpha (V = W = 0, or U = V e^{ix} + W exactly zero).
[[nodiscard]] AlphaExtrema alpha_extrema(const VWPair& p, double x);

[[nodiscard]] double f_vw_max(const VWPair& p, double x);
[[nodiscard]] double f_vw_min(const VWPair& p, double x);

/// Extremes over x of f_max(x) and f_min(x), attained at multiples of pi.
struct FExtremes {
    double max_of_max = 0.0;
    double min_of_max = 0.0;
    double max_of_min = 0.0;
    double min_of_min = 0.0;
};

[[nodiscard]] FExtremes f_extremes(const VWPair& p);

/// Real part of U = V e^{ix} + W, written to avoid cancellation near V = W.
[[nodiscard]] double u_real(const VWPair& p, double x) noexcept;

/// x_j(t) = 2 (omega t + theta) + delta for a complex 2-norm block.
[[nodiscard]] double block_phase(const EigenBlock& block, double t);

/// ||Theta(t, u)||_2 for a complex 2-norm block and unit u.
[[nodiscard]] double theta_norm_u(const EigenBlock& block, double t, const Vector& u);

/// ||Theta(t)||_2 for a complex 2-norm block.
[[nodiscard]] double theta_norm_mat(const EigenBlock& block, double t);

/// Theta norms for p in {1, inf}, evaluated from the component moduli and
/// angles. With u the vector norm of Theta(t, u) is returned, else the
/// induced matrix norm of Theta(t).
[[nodiscard]] double theta_norm_p(const EigenBlock& block, double t, Norm p,
                                  const std::optional<Vector>& u = std::nullopt);

/// g_j(t, u) or g_j(t): 1 for real blocks, 2 ||Theta|| for complex ones.
[[nodiscard]] double g_factor(const EigenBlock& block, double t, const std::optional<Vector>& u = std::nullopt);

}  // namespace odecond
