#include "odecond/minimax.hpp"

#include "odecond/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace odecond {

using std::numbers::pi;

double h_func(const VWPair& p, double x, double beta) {
    return f_vw_max(p, x) / (1.0 + p.V * std::cos(x + beta));
}

double stationary_residual(const VWPair& p, double x, double beta) {
    validate(p);
    if (p.V == 0.0 && p.W == 0.0) return 0.0;
    const double a = alpha_extrema(p, x).alpha_max;
    return -std::sin(x + a) + std::sin(x + beta) - p.V * std::sin(a - beta);
}

namespace {

constexpr int kEnvelopeGrid = 2048;

// Shrinks [a, b] around a sign change of the residual, or around the
// extremum of h by golden section when the bracket has no sign change.
double refine_extremum(const VWPair& p, double beta, double a, double b, bool want_max) {
    auto r = [&](double x) { return stationary_residual(p, x, beta); };
    double ra = r(a);
    double rb = r(b);
    const bool bracket = want_max ? (ra > 0.0 && rb < 0.0) : (ra < 0.0 && rb > 0.0);
    if (bracket) {
        for (int it = 0; it < 200 && b - a > 1e-15; ++it) {
            const double m = 0.5 * (a + b);
            const double rm = r(m);
            if (rm == 0.0) return m;
            if ((rm > 0.0) == (ra > 0.0)) {
                a = m;
                ra = rm;
            } else {
                b = m;
            }
        }
        return 0.5 * (a + b);
    }
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    const double sgn = want_max ? 1.0 : -1.0;
    auto h = [&](double x) { return sgn * h_func(p, x, beta); };
    double c = b - g * (b - a);
    double d = a + g * (b - a);
    double hc = h(c);
    double hd = h(d);
    for (int it = 0; it < 200 && b - a > 1e-14; ++it) {
        if (hc > hd) {
            b = d;
            d = c;
            hd = hc;
            c = b - g * (b - a);
            hc = h(c);
        } else {
            a = c;
            c = d;
            hc = hd;
            d = a + g * (b - a);
            hd = h(d);
        }
    }
    return 0.5 * (a + b);
}

}  // namespace

HEnvelope h_envelope(const VWPair& p, double beta) {
    validate(p);
    HEnvelope out;
    if (p.V == 0.0 || p.W == 0.0) {
        const double c = f_vw_max(p, 0.0);
        out.h_max = c / (1.0 - p.V);
        out.x_max = wrap_angle(pi - beta);
        out.h_min = c / (1.0 + p.V);
        out.x_min = wrap_angle(-beta);
        return out;
    }

    const double step = 2.0 * pi / kEnvelopeGrid;
    std::vector<double> grid(kEnvelopeGrid);
    for (int k = 0; k < kEnvelopeGrid; ++k) grid[static_cast<size_t>(k)] = h_func(p, -pi + k * step, beta);

    out.h_max = -std::numeric_limits<double>::infinity();
    out.h_min = std::numeric_limits<double>::infinity();
    for (int k = 0; k < kEnvelopeGrid; ++k) {
        const double hk = grid[static_cast<size_t>(k)];
        const double prev = grid[static_cast<size_t>((k + kEnvelopeGrid - 1) % kEnvelopeGrid)];
        const double next = grid[static_cast<size_t>((k + 1) % kEnvelopeGrid)];
        const double xk = -pi + k * step;
        if (hk >= prev && hk >= next) {
            const double x = refine_extremum(p, beta, xk - step, xk + step, true);
            const double h = std::max(hk, h_func(p, x, beta));
            if (h > out.h_max) {
                out.h_max = h;
                out.x_max = h == hk ? xk : x;
            }
        }
        if (hk <= prev && hk <= next) {
            const double x = refine_extremum(p, beta, xk - step, xk + step, false);
            const double h = std::min(hk, h_func(p, x, beta));
            if (h < out.h_min) {
                out.h_min = h;
                out.x_min = h == hk ? xk : x;
            }
        }
    }
    out.x_max = wrap_angle(out.x_max);
    out.x_min = wrap_angle(out.x_min);
    return out;
}

double q1_of(const VWPair& p) {
    if (p.W == 0.0) return std::numeric_limits<double>::infinity();
    return p.V * (1.0 + p.W) / (2.0 * p.W);
}

HExtremes h_extremes(const VWPair& p) {
    validate(p);
    const double V = p.V;
    const double W = p.W;
    HExtremes e;
    e.q1 = q1_of(p);
    e.maxmax = (1.0 + V) / ((1.0 - W) * (1.0 - V));
    e.minmin = V <= W ? (1.0 - V) / ((1.0 - W) * (1.0 + V)) : 1.0 / (1.0 + W);
    e.minmax = e.q1 <= 1.0 ? (1.0 - V * V) / ((1.0 - W) * (1.0 - e.q1 * V)) : (1.0 + V) / ((1.0 + W) * (1.0 - V));
    e.maxmin = 1.0 / (1.0 - W);
    return e;
}

const char* to_string(StationaryKind kind) noexcept {
    switch (kind) {
        case StationaryKind::Max: return "max";
        case StationaryKind::Min: return "min";
        case StationaryKind::LocalMax: return "local_max";
        case StationaryKind::LocalMin: return "local_min";
    }
    return "?";
}

std::vector<StationaryPoint> critical_points_beta0(const VWPair& p) {
    validate(p);
    if (p.V == 0.0 || p.W == 0.0)
        throw Error(ErrorCode::InvalidArgument, "critical points need V and W in (0, 1)");
    const double V = p.V;
    const double W = p.W;
    const HExtremes ext = h_extremes(p);

    std::vector<StationaryPoint> pts;
    pts.push_back({-pi, V <= W ? 1.0 / (1.0 - W) : (1.0 + V) / ((1.0 + W) * (1.0 - V)), StationaryKind::Min});
    pts.push_back({0.0, 1.0 / (1.0 - W), StationaryKind::Min});
    if (ext.q1 < 1.0) {
        const double x = std::acos(-ext.q1);
        const double h = (1.0 - V * V) / ((1.0 - W) * (1.0 - ext.q1 * V));
        pts.push_back({-x, h, StationaryKind::Max});
        pts.push_back({x, h, StationaryKind::Max});
    }

    auto near = [](double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(b)); };
    for (auto& s : pts) {
        if (near(s.h, ext.minmax)) {
            s.kind = StationaryKind::Max;
        } else if (near(s.h, ext.maxmin)) {
            s.kind = StationaryKind::Min;
        } else {
            const double probe = 1e-3;
            const bool above = h_func(p, s.x + probe, 0.0) > s.h && h_func(p, s.x - probe, 0.0) > s.h;
            s.kind = above ? StationaryKind::LocalMin : StationaryKind::LocalMax;
        }
    }
    std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) { return a.x < b.x; });
    return pts;
}

const char* to_string(BranchSource s) noexcept { return s == BranchSource::Axis ? "axis" : "general"; }

namespace {

constexpr int kRootGrid = 2048;
constexpr double kMaxJump = 0.3;
constexpr int kMaxHalvings = 12;

struct Solution {
    double x;
    BranchSource source;
};

std::vector<Solution> classified_solutions(const VWPair& p, double beta) {
    std::vector<Solution> out;
    for (double x : stationary_solutions(p, beta)) {
        const double a = alpha_extrema(p, x).alpha_max;
        const bool axis = std::abs(wrap_angle(a - beta)) <= 1e-6;
        out.push_back({x, axis ? BranchSource::Axis : BranchSource::General});
    }
    return out;
}

}  // namespace

std::vector<double> stationary_solutions(const VWPair& p, double beta) {
    validate(p);
    if (p.V == 0.0 || p.W == 0.0)
        throw Error(ErrorCode::InvalidArgument, "stationary solutions need V and W in (0, 1)");
    const double step = 2.0 * pi / kRootGrid;
    std::vector<double> xs(kRootGrid + 1);
    std::vector<double> rs(kRootGrid + 1);
    for (int k = 0; k <= kRootGrid; ++k) {
        xs[k] = -pi + k * step;
        rs[k] = k == kRootGrid ? rs[0] : stationary_residual(p, xs[k], beta);
    }
    std::vector<double> roots;
    constexpr double kZero = 1e-14;
    for (int k = 0; k < kRootGrid; ++k) {
        if (std::abs(rs[k]) <= kZero) {
            roots.push_back(xs[k]);
            continue;
        }
        if (std::abs(rs[k + 1]) <= kZero || (rs[k] > 0.0) == (rs[k + 1] > 0.0)) continue;
        double a = xs[k];
        double b = xs[k + 1];
        const bool a_pos = rs[k] > 0.0;
        for (int it = 0; it < 200 && b - a > 1e-15; ++it) {
            const double m = 0.5 * (a + b);
            const double rm = stationary_residual(p, m, beta);
            if (rm == 0.0) {
                a = b = m;
                break;
            }
            if ((rm > 0.0) == a_pos) a = m;
            else b = m;
        }
        const double x = 0.5 * (a + b);
        // A sign change across a jump of the residual is not a root.
        if (std::abs(stationary_residual(p, x, beta)) <= 1e-8) roots.push_back(x);
    }
    for (double& x : roots) x = wrap_angle(x);
    std::sort(roots.begin(), roots.end());
    return roots;
}

namespace {

class Tracer {
public:
    Tracer(const VWPair& p, BranchTrace& out) : p_(p), out_(out) {}

    void start(double beta) {
        for (const auto& s : classified_solutions(p_, beta)) open(beta, s);
    }

    void advance(double b0, double b1, int depth) {
        const auto sols = classified_solutions(p_, b1);
        std::vector<int> match(active_.size(), -1);
        std::vector<bool> taken(sols.size(), false);

        struct Pair {
            double dist;
            size_t a;
            size_t s;
        };
        std::vector<Pair> pairs;
        for (size_t a = 0; a < active_.size(); ++a) {
            const Branch& br = out_.branches[active_[a]];
            const double pred = predict(br, b1);
            for (size_t s = 0; s < sols.size(); ++s) {
                if (sols[s].source != br.source) continue;
                if (std::abs(wrap_angle(sols[s].x - br.x.back())) > kMaxJump) continue;
                pairs.push_back({std::abs(wrap_angle(sols[s].x - pred)), a, s});
            }
        }
        std::sort(pairs.begin(), pairs.end(), [](const Pair& l, const Pair& r) { return l.dist < r.dist; });
        for (const auto& pr : pairs) {
            if (match[pr.a] >= 0 || taken[pr.s]) continue;
            match[pr.a] = static_cast<int>(pr.s);
            taken[pr.s] = true;
        }

        // An unmatched branch with a spare solution of its own kind moved too far.
        bool moved_too_far = false;
        for (size_t a = 0; a < active_.size(); ++a) {
            if (match[a] >= 0) continue;
            const auto src = out_.branches[active_[a]].source;
            for (size_t s = 0; s < sols.size(); ++s)
                if (!taken[s] && sols[s].source == src) moved_too_far = true;
        }
        if (moved_too_far && depth < kMaxHalvings) {
            const double mid = 0.5 * (b0 + b1);
            advance(b0, mid, depth + 1);
            advance(mid, b1, depth + 1);
            return;
        }

        std::vector<size_t> next;
        for (size_t a = 0; a < active_.size(); ++a) {
            Branch& br = out_.branches[active_[a]];
            if (match[a] >= 0) {
                append(br, b1, sols[static_cast<size_t>(match[a])].x);
                next.push_back(active_[a]);
                continue;
            }
            if (moved_too_far) {
                for (size_t s = 0; s < sols.size(); ++s) {
                    if (!taken[s] && sols[s].source == br.source) {
                        out_.lost.push_back({b1, br.x.back(), "no continuation within 0.3 rad after step halving"});
                        break;
                    }
                }
            }
        }
        active_ = std::move(next);
        for (size_t s = 0; s < sols.size(); ++s)
            if (!taken[s]) open(b1, sols[s]);
    }

private:
    void open(double beta, const Solution& s) {
        Branch br;
        br.id = static_cast<int>(out_.branches.size());
        br.source = s.source;
        out_.branches.push_back(std::move(br));
        append(out_.branches.back(), beta, s.x);
        active_.push_back(out_.branches.size() - 1);
    }

    void append(Branch& br, double beta, double x) {
        br.beta.push_back(beta);
        br.x.push_back(x);
        br.h.push_back(h_func(p_, x, beta));
    }

    static double predict(const Branch& br, double beta) {
        const size_t n = br.x.size();
        if (n < 2) return br.x.back();
        const double db = br.beta[n - 1] - br.beta[n - 2];
        if (db <= 0.0) return br.x.back();
        const double slope = wrap_angle(br.x[n - 1] - br.x[n - 2]) / db;
        return br.x.back() + slope * (beta - br.beta[n - 1]);
    }

    VWPair p_;
    BranchTrace& out_;
    std::vector<size_t> active_;
};

}  // namespace

BranchTrace trace_branches(const VWPair& p, const std::vector<double>& beta_grid) {
    validate(p);
    if (beta_grid.empty()) throw Error(ErrorCode::InvalidArgument, "empty beta grid");
    for (size_t k = 0; k < beta_grid.size(); ++k) {
        if (!std::isfinite(beta_grid[k])) throw Error(ErrorCode::NonFinite, "beta grid has non-finite values");
        if (k > 0 && !(beta_grid[k] > beta_grid[k - 1]))
            throw Error(ErrorCode::InvalidArgument, "beta grid must be strictly increasing");
    }
    BranchTrace out;
    Tracer tracer(p, out);
    tracer.start(beta_grid.front());
    for (size_t k = 1; k < beta_grid.size(); ++k) tracer.advance(beta_grid[k - 1], beta_grid[k], 0);
    return out;
}

SecondDerivatives h_second_derivatives(const VWPair& p, double x) {
    validate(p);
    const double k = std::round(x / pi);
    if (std::abs(x - k * pi) > 1e-9) throw Error(ErrorCode::NotMultipleOfPi, "x must be a multiple of pi");

    auto d2 = [&](double h) {
        return (f_vw_max(p, x + h) - 2.0 * f_vw_max(p, x) + f_vw_max(p, x - h)) / (h * h);
    };
    constexpr double kStep = 1e-4;
    SecondDerivatives out;
    out.f_second = (4.0 * d2(0.5 * kStep) - d2(kStep)) / 3.0;
    const double f = f_vw_max(p, x);
    const double c = std::cos(x);
    const double den = 1.0 + p.V * c;
    out.d2_xbeta = f * p.V * (c + p.V) / (den * den * den);
    out.lastref_diff = out.f_second / den;
    out.d2_xx = out.d2_xbeta + out.lastref_diff;
    return out;
}

}  // namespace odecond
