#include "odecond/oscillator.hpp"

#include "odecond/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace odecond {

using std::numbers::pi;

void validate(const VWPair& p) {
    if (!(p.V >= 0.0 && p.V < 1.0) || !(p.W >= 0.0 && p.W < 1.0))
        throw Error(ErrorCode::InvalidArgument,
                    "V and W must lie in [0, 1), got V=" + std::to_string(p.V) + " W=" + std::to_string(p.W));
}

double wrap_angle(double a) noexcept {
    double r = std::remainder(a, 2.0 * pi);
    if (r <= -pi) r += 2.0 * pi;
    return r;
}

double f_vw(const VWPair& p, double alpha, double x) {
    return (1.0 + p.V * std::cos(x + alpha)) / (1.0 - p.W * std::cos(alpha));
}

double u_real(const VWPair& p, double x) noexcept {
    const double c = std::cos(0.5 * x);
    return (p.W - p.V) + 2.0 * p.V * c * c;
}

namespace {

std::optional<AlphaExtrema> extrema_if_not_constant(const VWPair& p, double x) {
    validate(p);
    if (p.V == 0.0 && p.W == 0.0) return std::nullopt;
    const double xr = wrap_angle(x);
    const double re = u_real(p, xr);
    const double im = p.V * std::sin(xr);
    const double mag = std::hypot(re, im);
    if (mag == 0.0) return std::nullopt;

    AlphaExtrema out;
    if (mag <= 1e-10 * (p.V + p.W)) {
        // Continuation of the V = W family into x = +-pi.
        const double as = std::asin(p.V);
        out.limit_branch = true;
        if (xr > 0.0) {
            out.alpha_max = as - 0.5 * pi;
            out.alpha_min = -as + 0.5 * pi;
        } else {
            out.alpha_max = -as + 0.5 * pi;
            out.alpha_min = as + 1.5 * pi;
        }
        out.alpha_max = wrap_angle(out.alpha_max);
        out.alpha_min = wrap_angle(out.alpha_min);
        return out;
    }

    const double s = std::clamp(p.V * p.W * std::sin(xr) / mag, -1.0, 1.0);
    const double as = std::asin(s);
    const double th = std::atan2(im, re);
    const double a1 = wrap_angle(as - th);
    const double a2 = wrap_angle(pi - as - th);
    const double curv = -p.V * std::cos(xr + a1) - p.W * std::cos(a1);
    bool first_is_max = curv < 0.0;
    if (std::abs(curv) < 1e-14) first_is_max = f_vw(p, a1, xr) >= f_vw(p, a2, xr);
    out.alpha_max = first_is_max ? a1 : a2;
    out.alpha_min = first_is_max ? a2 : a1;
    return out;
}

}  // namespace

AlphaExtrema alpha_extrema(const VWPair& p, double x) {
    auto e = extrema_if_not_constant(p, x);
    if (!e) throw Error(ErrorCode::DegenerateConstant, "f is constant in alpha for this (V, W, x)");
    return *e;
}

double f_vw_max(const VWPair& p, double x) {
    validate(p);
    if (p.V == 0.0 || p.W == 0.0) return (1.0 + p.V) / (1.0 - p.W);
    const auto e = extrema_if_not_constant(p, x);
    if (!e) return 1.0;
    return f_vw(p, e->alpha_max, wrap_angle(x));
}

double f_vw_min(const VWPair& p, double x) {
    validate(p);
    if (p.V == 0.0 || p.W == 0.0) return (1.0 - p.V) / (1.0 + p.W);
    const auto e = extrema_if_not_constant(p, x);
    if (!e) return 1.0;
    return f_vw(p, e->alpha_min, wrap_angle(x));
}

FExtremes f_extremes(const VWPair& p) {
    validate(p);
    const double V = p.V;
    const double W = p.W;
    FExtremes e;
    if (V == 0.0 || W == 0.0) {
        e.max_of_max = e.min_of_max = (1.0 + V) / (1.0 - W);
        e.max_of_min = e.min_of_min = (1.0 - V) / (1.0 + W);
        return e;
    }
    e.max_of_max = (1.0 + V) / (1.0 - W);
    e.min_of_max = V <= W ? (1.0 - V) / (1.0 - W) : (1.0 + V) / (1.0 + W);
    e.max_of_min = V <= W ? (1.0 + V) / (1.0 + W) : (1.0 - V) / (1.0 - W);
    e.min_of_min = (1.0 - V) / (1.0 + W);
    return e;
}

namespace {

const EllipseGeometry& require_ellipse(const EigenBlock& block) {
    if (!block.is_complex() || !block.ellipse)
        throw Error(ErrorCode::InvalidArgument, "operation needs a complex block under the 2-norm");
    return *block.ellipse;
}

}  // namespace

double block_phase(const EigenBlock& block, double t) {
    const auto& e = require_ellipse(block);
    return 2.0 * (block.omega * t + e.theta) + e.delta;
}

double theta_norm_u(const EigenBlock& block, double t, const Vector& u) {
    const auto& e = require_ellipse(block);
    const Projection pr = block_project(block, u / u.norm());
    const double shift = 2.0 * (pr.gamma - e.theta);
    const double val = 0.5 * (1.0 + e.V * std::cos(block_phase(block, t) + shift));
    return std::sqrt(std::max(0.0, val));
}

double theta_norm_mat(const EigenBlock& block, double t) {
    const auto& e = require_ellipse(block);
    const double fm = f_vw_max({e.V, e.W}, block_phase(block, t));
    return std::sqrt(std::max(0.0, 0.25 * (1.0 - e.W * e.W) * fm));
}

double theta_norm_p(const EigenBlock& block, double t, Norm p, const std::optional<Vector>& u) {
    if (p == Norm::Two) throw Error(ErrorCode::UnsupportedNorm, "theta_norm_p handles p = 1 and p = inf");
    if (!block.is_complex()) throw Error(ErrorCode::InvalidArgument, "theta_norm_p needs a complex block");
    if (block.norm != p) throw Error(ErrorCode::InvalidArgument, "block was normalized in a different norm");

    const Eigen::Index n = block.comp_moduli_v.size();
    const double wt = block.omega * t;
    if (u) {
        const double gamma = std::arg(project(block, *u));
        Vector th(n);
        for (Eigen::Index k = 0; k < n; ++k)
            th(k) = block.comp_moduli_v(k) * std::cos(wt + block.comp_angles_v(k) + gamma);
        return vector_norm(th, p);
    }
    Matrix th(n, n);
    for (Eigen::Index k = 0; k < n; ++k)
        for (Eigen::Index l = 0; l < n; ++l)
            th(k, l) = block.comp_moduli_v(k) * block.comp_moduli_w(l) *
                       std::cos(wt + block.comp_angles_v(k) + block.comp_angles_w(l));
    return induced_matrix_norm(th, p);
}

double g_factor(const EigenBlock& block, double t, const std::optional<Vector>& u) {
    if (!block.is_supported()) throw Error(ErrorCode::UnsupportedSpectrum, "g_factor on an unsupported block");
    if (!block.is_complex()) return 1.0;
    if (block.norm == Norm::Two) return 2.0 * (u ? theta_norm_u(block, t, *u) : theta_norm_mat(block, t));
    return 2.0 * theta_norm_p(block, t, block.norm, u);
}

}  // namespace odecond
