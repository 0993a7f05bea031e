#include "odecond/condition.hpp"

#include "odecond/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <sstream>
#include <thread>

namespace odecond {

using std::numbers::pi;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void require_vector(const Vector& v, Eigen::Index n, const char* name) {
    if (v.size() != n)
        throw Error(ErrorCode::InvalidArgument, std::string(name) + " has length " + std::to_string(v.size()) +
                                                    ", expected " + std::to_string(n));
    if (!v.allFinite()) throw Error(ErrorCode::NonFinite, std::string(name) + " has non-finite entries");
}

const EigenBlock& leading_supported(const SpectrumAnalysis& a) {
    if (a.blocks.empty() || !a.leading().is_supported())
        throw Error(ErrorCode::UnsupportedSpectrum, "rightmost eigenvalues are not a simple real or a simple pair");
    return a.leading();
}

}  // namespace

std::vector<double> TimeGrid::values() const {
    std::vector<double> out(steps);
    if (steps == 1) out[0] = start;
    for (std::size_t k = 0; k < steps && steps > 1; ++k)
        out[k] = start + (end - start) * static_cast<double>(k) / static_cast<double>(steps - 1);
    return out;
}

void Scenario::validate() const {
    require_square(A, "matrix");
    require_finite(A, "matrix");
    require_vector(y0, A.rows(), "y0");
    if (vector_norm(y0, norm) == 0.0) throw Error(ErrorCode::InvalidArgument, "y0 must be nonzero");
    if (z0) {
        require_vector(*z0, A.rows(), "z0");
        if (std::abs(vector_norm(*z0, norm) - 1.0) > 1e-12)
            throw Error(ErrorCode::InvalidArgument, "z0 must be a unit vector in the chosen norm");
    }
    if (t.steps == 0 || !std::isfinite(t.start) || !std::isfinite(t.end) || t.end < t.start)
        throw Error(ErrorCode::InvalidArgument, "time grid needs finite start <= end and at least one step");
    if (!(tol_group > 0.0)) throw Error(ErrorCode::InvalidArgument, "grouping tolerance must be positive");
}

Vector normalized(const Vector& u, Norm p) {
    const double n = vector_norm(u, p);
    if (!(n > 0.0)) throw Error(ErrorCode::InvalidArgument, "cannot normalize a zero vector");
    return u / n;
}

double k_exact(const Scenario& s, double t, double shift) {
    const Eigen::Index n = s.A.rows();
    const Matrix E = mat_exp(s.A - shift * Matrix::Identity(n, n), t);
    const double den = vector_norm(Vector(E * normalized(s.y0, s.norm)), s.norm);
    const double num = s.z0 ? vector_norm(Vector(E * *s.z0), s.norm) : induced_matrix_norm(E, s.norm);
    return num / den;
}

double osf(const Scenario& s, const EigenBlock& block1) {
    const double wy = std::abs(project(block1, normalized(s.y0, s.norm)));
    if (s.z0) return std::abs(project(block1, *s.z0)) / wy;
    return 1.0 / wy;
}

double osf_coordinates(const Scenario& s, const EigenBlock& block1) {
    if (!block1.ellipse) throw Error(ErrorCode::InvalidArgument, "needs a complex leading block under the 2-norm");
    const double W = block1.ellipse->W;
    auto weight = [&](const Vector& u) {
        const double c = u.dot(block1.ellipse->right_major);
        const double d = u.dot(block1.ellipse->right_minor);
        return (1.0 + W) * c * c + (1.0 - W) * d * d;
    };
    const double wy = weight(normalized(s.y0, Norm::Two));
    if (s.z0) return std::sqrt(weight(*s.z0) / wy);
    return std::sqrt(2.0 / wy);
}

double ot(const Scenario& s, const EigenBlock& block1, double t) {
    if (!block1.is_supported()) throw Error(ErrorCode::UnsupportedSpectrum, "unsupported leading block");
    if (!block1.is_complex()) return 1.0;
    const Vector y = normalized(s.y0, s.norm);
    if (!block1.ellipse) {
        const double gy = g_factor(block1, t, y);
        return (s.z0 ? g_factor(block1, t, *s.z0) : g_factor(block1, t)) / gy;
    }
    const auto& e = *block1.ellipse;
    const double x1 = block_phase(block1, t);
    const Projection py = block_project(block1, y);
    const double dy = 2.0 * (py.gamma - e.theta);
    if (s.z0) {
        const Projection pz = block_project(block1, *s.z0);
        const double xs = 2.0 * (pz.gamma - py.gamma) - pi;
        return std::sqrt(f_vw({e.V, e.V}, x1 + dy + pi, xs));
    }
    const double fm = f_vw_max({e.V, e.W}, x1);
    return std::sqrt(0.5 * (1.0 - e.W * e.W) * fm / (1.0 + e.V * std::cos(x1 + dy)));
}

double k_asym(const Scenario& s, const SpectrumAnalysis& a, double t) {
    const EigenBlock& b = leading_supported(a);
    return osf(s, b) * ot(s, b, t);
}

OscillationProfile ot_envelope(const Scenario& s, const EigenBlock& block1) {
    if (!block1.is_complex() || !block1.ellipse)
        throw Error(ErrorCode::InvalidArgument, "OT envelopes need a complex leading block under the 2-norm");
    const auto& e = *block1.ellipse;
    OscillationProfile out;
    out.directional = s.directional();
    out.osf = osf(s, block1);
    out.period = pi / block1.omega;
    out.V1 = e.V;
    out.W1 = e.W;
    out.q1 = q1_of({e.V, e.W});

    const Vector y = normalized(s.y0, Norm::Two);
    const Projection py = block_project(block1, y);
    if (s.z0) {
        const Projection pz = block_project(block1, *s.z0);
        const VWPair vv{e.V, e.V};
        const double xs = 2.0 * (pz.gamma - py.gamma) - pi;
        out.ot_max = std::sqrt(f_vw_max(vv, xs));
        out.ot_min = std::sqrt(f_vw_min(vv, xs));
        out.a_max = std::sqrt((1.0 + e.V) / (1.0 - e.V));
        out.a_minmax = 1.0;
        out.a_maxmin = 1.0;
        out.a_min = std::sqrt((1.0 - e.V) / (1.0 + e.V));
        return out;
    }
    const VWPair vw{e.V, e.W};
    const double scale = 0.5 * (1.0 - e.W * e.W);
    const HEnvelope env = h_envelope(vw, 2.0 * (py.gamma - e.theta));
    out.ot_max = std::sqrt(scale * env.h_max);
    out.ot_min = std::sqrt(scale * env.h_min);
    const HExtremes ext = h_extremes(vw);
    out.a_max = std::sqrt(scale * ext.maxmax);
    out.a_minmax = std::sqrt(scale * ext.minmax);
    out.a_maxmin = std::sqrt(scale * ext.maxmin);
    out.a_min = std::sqrt(scale * ext.minmin);
    return out;
}

EpsilonBounds epsilon_bounds(const SpectrumAnalysis& a, double t, const std::optional<Vector>& u) {
    const EigenBlock& b1 = leading_supported(a);
    EpsilonBounds out;
    std::optional<Vector> uu;
    double w1u = 1.0;
    if (u) {
        uu = normalized(*u, a.norm);
        w1u = std::abs(project(b1, *uu));
        if (w1u == 0.0) throw Error(ErrorCode::ZeroProjection, "vector has no component along the leading block");
    }
    const double g1 = g_factor(b1, t, uu);
    for (std::size_t j = 1; j < a.blocks.size(); ++j) {
        const EigenBlock& bj = a.blocks[j];
        if (!bj.is_supported())
            throw Error(ErrorCode::UnsupportedSpectrum, "a trailing block is not simple; eps is unavailable");
        double ratio = 1.0;
        if (uu) {
            const double wju = std::abs(project(bj, *uu));
            if (wju <= 1e-300) {
                out.g_ratios.push_back(0.0);
                out.terms.push_back(0.0);
                continue;
            }
            ratio = wju / w1u;
        }
        const double G = g_factor(bj, t, uu) / g1;
        const double term = std::exp((bj.r - b1.r) * t) * (bj.f / b1.f) * ratio * G;
        out.g_ratios.push_back(G);
        out.terms.push_back(term);
        out.eps += term;
    }
    return out;
}

std::optional<double> precision_bound(double eps_num, double eps_tu) {
    if (!(eps_tu < 1.0)) return std::nullopt;
    return (eps_num + eps_tu) / (1.0 - eps_tu);
}

std::optional<std::string> check_projection(const EigenBlock& block1, const Vector& u, const char* name) {
    const double nu = u.norm();
    const double m = std::abs(project(block1, u));
    if (m <= 1e-12 * nu)
        throw Error(ErrorCode::ZeroProjection, std::string(name) + " has no component along the rightmost eigenvalues");
    if (m <= 1e-6 * nu) {
        std::ostringstream os;
        os << name << " nearly orthogonal to the rightmost eigenvalues (|w u| = " << m << ")";
        return os.str();
    }
    return std::nullopt;
}

KExtrema k_asym_extrema(const Scenario& s, const SpectrumAnalysis& a) {
    const EigenBlock& b = leading_supported(a);
    KExtrema out;
    if (!b.is_complex()) {
        out.k_min = out.k_max = k_asym(s, a, 0.0);
        return out;
    }
    constexpr int kGrid = 256;
    const double period = pi / b.omega;
    const double step = period / kGrid;
    std::vector<double> k(kGrid);
    for (int i = 0; i < kGrid; ++i) k[static_cast<std::size_t>(i)] = k_asym(s, a, i * step);

    auto golden = [&](double lo, double hi, double sgn) {
        const double g = 0.5 * (std::sqrt(5.0) - 1.0);
        auto h = [&](double t) { return sgn * k_asym(s, a, t); };
        double c = hi - g * (hi - lo);
        double d = lo + g * (hi - lo);
        double hc = h(c);
        double hd = h(d);
        for (int it = 0; it < 200 && hi - lo > 1e-13 * period; ++it) {
            if (hc > hd) {
                hi = d;
                d = c;
                hd = hc;
                c = hi - g * (hi - lo);
                hc = h(c);
            } else {
                lo = c;
                c = d;
                hc = hd;
                d = lo + g * (hi - lo);
                hd = h(d);
            }
        }
        return 0.5 * (lo + hi);
    };
    const auto imax = static_cast<int>(std::max_element(k.begin(), k.end()) - k.begin());
    const auto imin = static_cast<int>(std::min_element(k.begin(), k.end()) - k.begin());
    out.t_max = golden((imax - 1) * step, (imax + 1) * step, 1.0);
    out.t_min = golden((imin - 1) * step, (imin + 1) * step, -1.0);
    out.k_max = std::max(k_asym(s, a, out.t_max), k[static_cast<std::size_t>(imax)]);
    out.k_min = std::min(k_asym(s, a, out.t_min), k[static_cast<std::size_t>(imin)]);
    return out;
}

unsigned worker_threads() {
    if (const char* env = std::getenv("ODECOND_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(std::min(v, 256L));
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

TimeGrid default_time_grid(const SpectrumAnalysis& a) {
    if (!a.blocks.empty() && a.leading().is_complex()) return {0.0, 4.0 * pi / a.leading().omega, 1025};
    return {0.0, 10.0, 257};
}

namespace {

SeriesSample evaluate(const Scenario& s, const SpectrumAnalysis& a, double t) {
    SeriesSample out;
    out.t = t;
    const EigenBlock& b1 = a.leading();
    try {
        out.k_exact = k_exact(s, t, b1.r);
        out.osf = osf(s, b1);
        out.ot = ot(s, b1, t);
        out.k_asym = out.osf * out.ot;
    } catch (const Error& e) {
        out.status = to_string(e.code());
        out.k_exact = out.k_asym = out.osf = out.ot = kNaN;
        out.eps_t = out.eps_tu = kNaN;
        return out;
    }
    try {
        const Vector y = normalized(s.y0, s.norm);
        out.eps_tu = epsilon_bounds(a, t, y).eps;
        out.eps_t = s.z0 ? epsilon_bounds(a, t, *s.z0).eps : epsilon_bounds(a, t).eps;
        out.bound = precision_bound(out.eps_t, out.eps_tu);
    } catch (const Error& e) {
        out.status = std::string("eps_unavailable:") + to_string(e.code());
        out.eps_t = out.eps_tu = kNaN;
    }
    return out;
}

}  // namespace

ConditionSeries sweep(const Scenario& s) {
    s.validate();
    ConditionSeries out;
    out.scenario = s;
    out.analysis = analyze_spectrum(s.A, s.norm, s.tol_group);
    const EigenBlock& b1 = leading_supported(out.analysis);

    if (auto w = check_projection(b1, s.y0, "y0")) out.warnings.push_back(*w);
    if (s.z0)
        if (auto w = check_projection(b1, *s.z0, "z0")) out.warnings.push_back(*w);
    for (std::size_t j = 1; j < out.analysis.blocks.size(); ++j)
        if (!out.analysis.blocks[j].is_supported()) {
            out.warnings.push_back("block " + std::to_string(j + 1) + " is not simple; precision bounds are disabled");
            break;
        }
    if (b1.is_complex() && b1.ellipse) out.profile = ot_envelope(s, b1);

    const std::vector<double> ts = s.t.values();
    out.samples.resize(ts.size());
    const unsigned nthreads = std::min<unsigned>(worker_threads(), static_cast<unsigned>(ts.size()));
    auto work = [&](unsigned id) {
        for (std::size_t k = id; k < ts.size(); k += nthreads) out.samples[k] = evaluate(s, out.analysis, ts[k]);
    };
    if (nthreads <= 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned id = 0; id < nthreads; ++id) pool.emplace_back(work, id);
        for (auto& th : pool) th.join();
    }
    return out;
}

}  // namespace odecond
