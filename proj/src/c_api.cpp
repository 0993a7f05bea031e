#include "odecond/odecond.h"

#include "odecond/commands.hpp"
#include "odecond/error.hpp"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <limits>
#include <memory>
#include <new>
#include <string>

struct odc_config {
    odecond::RunConfig cfg;
};

struct odc_scenario {
    odecond::Scenario s;
    odecond::SpectrumAnalysis analysis;
};

struct odc_series {
    odecond::ConditionSeries series;
};

struct odc_spectrum {
    odecond::SpectrumAnalysis analysis;
};

namespace {

thread_local std::string g_last_error;

int status_of(odecond::ErrorCode code) {
    using odecond::ErrorCode;
    switch (code) {
        case ErrorCode::InvalidArgument: return ODC_ERR_INVALID_ARGUMENT;
        case ErrorCode::NonSquare: return ODC_ERR_NON_SQUARE;
        case ErrorCode::NonFinite: return ODC_ERR_NON_FINITE;
        case ErrorCode::EigenFailure: return ODC_ERR_EIGEN_FAILURE;
        case ErrorCode::NonDiagonalizable: return ODC_ERR_NON_DIAGONALIZABLE;
        case ErrorCode::AmbiguousGrouping: return ODC_ERR_AMBIGUOUS_GROUPING;
        case ErrorCode::UnsupportedSpectrum: return ODC_ERR_UNSUPPORTED_SPECTRUM;
        case ErrorCode::ZeroProjection: return ODC_ERR_ZERO_PROJECTION;
        case ErrorCode::UnsupportedNorm: return ODC_ERR_UNSUPPORTED_NORM;
        case ErrorCode::DegenerateConstant: return ODC_ERR_DEGENERATE_CONSTANT;
        case ErrorCode::NotMultipleOfPi: return ODC_ERR_NOT_MULTIPLE_OF_PI;
        case ErrorCode::ParseError: return ODC_ERR_PARSE;
        case ErrorCode::IoError: return ODC_ERR_IO;
    }
    return ODC_ERR_INTERNAL;
}

int fail(int status, const std::string& msg) {
    g_last_error = msg;
    return status;
}

template <typename F>
int guarded(F&& body) {
    try {
        g_last_error.clear();
        return body();
    } catch (const odecond::Error& e) {
        return fail(status_of(e.code()), e.what());
    } catch (const std::bad_alloc&) {
        return fail(ODC_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(ODC_ERR_INTERNAL, e.what());
    }
}

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

odecond::Norm norm_of(int norm) {
    switch (norm) {
        case ODC_NORM_1: return odecond::Norm::One;
        case ODC_NORM_2: return odecond::Norm::Two;
        case ODC_NORM_INF: return odecond::Norm::Inf;
        default: break;
    }
    throw odecond::Error(odecond::ErrorCode::UnsupportedNorm, "norm must be ODC_NORM_1, ODC_NORM_2 or ODC_NORM_INF");
}

odecond::Matrix matrix_of(size_t n, const double* A) {
    if (n == 0 || !A) throw odecond::Error(odecond::ErrorCode::InvalidArgument, "matrix pointer is null or n is 0");
    const auto m = static_cast<Eigen::Index>(n);
    return Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(A, m, m);
}

odecond::Vector vector_of(const double* v, size_t n, const char* name) {
    if (!v || n == 0) throw odecond::Error(odecond::ErrorCode::InvalidArgument, std::string(name) + " is null or empty");
    return Eigen::Map<const odecond::Vector>(v, static_cast<Eigen::Index>(n));
}

#define ODC_REQUIRE(ptr)                                                     \
    do {                                                                     \
        if (!(ptr)) return fail(ODC_ERR_INVALID_ARGUMENT, #ptr " is null"); \
    } while (0)

}  // namespace

extern "C" {

const char* odc_version(void) { return "0.1.0"; }

const char* odc_status_name(int status) {
    switch (status) {
        case ODC_OK: return "OK";
        case ODC_ERR_INVALID_ARGUMENT: return "INVALID_ARGUMENT";
        case ODC_ERR_NON_SQUARE: return "NON_SQUARE";
        case ODC_ERR_NON_FINITE: return "NON_FINITE";
        case ODC_ERR_EIGEN_FAILURE: return "EIGEN_FAILURE";
        case ODC_ERR_NON_DIAGONALIZABLE: return "NON_DIAGONALIZABLE";
        case ODC_ERR_AMBIGUOUS_GROUPING: return "AMBIGUOUS_GROUPING";
        case ODC_ERR_UNSUPPORTED_SPECTRUM: return "UNSUPPORTED_SPECTRUM";
        case ODC_ERR_ZERO_PROJECTION: return "ZERO_PROJECTION";
        case ODC_ERR_UNSUPPORTED_NORM: return "UNSUPPORTED_NORM";
        case ODC_ERR_DEGENERATE_CONSTANT: return "DEGENERATE_CONSTANT";
        case ODC_ERR_NOT_MULTIPLE_OF_PI: return "NOT_MULTIPLE_OF_PI";
        case ODC_ERR_PARSE: return "PARSE";
        case ODC_ERR_IO: return "IO";
        case ODC_ERR_UNAVAILABLE: return "UNAVAILABLE";
        case ODC_ERR_INTERNAL: return "INTERNAL";
        default: return "UNKNOWN";
    }
}

const char* odc_last_error(void) { return g_last_error.c_str(); }

void odc_string_free(char* s) { std::free(s); }

int odc_exit_code(int status) {
    switch (status) {
        case ODC_OK: return 0;
        case ODC_ERR_UNSUPPORTED_SPECTRUM:
        case ODC_ERR_NON_DIAGONALIZABLE:
        case ODC_ERR_AMBIGUOUS_GROUPING: return 2;
        case ODC_ERR_ZERO_PROJECTION: return 3;
        default: return 1;
    }
}

int odc_config_create(odc_config** out) {
    ODC_REQUIRE(out);
    return guarded([&] {
        *out = new odc_config();
        return ODC_OK;
    });
}

void odc_config_destroy(odc_config* cfg) { delete cfg; }

int odc_config_set_command(odc_config* cfg, const char* name) {
    ODC_REQUIRE(cfg);
    ODC_REQUIRE(name);
    return guarded([&] {
        cfg->cfg.command = odecond::parse_command(name);
        return ODC_OK;
    });
}

int odc_config_set_input(odc_config* cfg, const char* path) {
    ODC_REQUIRE(cfg);
    ODC_REQUIRE(path);
    if (!*path) return fail(ODC_ERR_INVALID_ARGUMENT, "input path is empty");
    cfg->cfg.input_path = path;
    return ODC_OK;
}

int odc_config_set_output(odc_config* cfg, const char* dir) {
    ODC_REQUIRE(cfg);
    ODC_REQUIRE(dir);
    if (!*dir) return fail(ODC_ERR_INVALID_ARGUMENT, "output path is empty");
    cfg->cfg.out_dir = dir;
    return ODC_OK;
}

int odc_config_set_y0(odc_config* cfg, const double* v, size_t n) {
    ODC_REQUIRE(cfg);
    return guarded([&] {
        cfg->cfg.y0 = vector_of(v, n, "y0");
        return ODC_OK;
    });
}

int odc_config_set_z0(odc_config* cfg, const double* v, size_t n) {
    ODC_REQUIRE(cfg);
    return guarded([&] {
        cfg->cfg.z0 = vector_of(v, n, "z0");
        return ODC_OK;
    });
}

int odc_config_set_y0_text(odc_config* cfg, const char* list) {
    ODC_REQUIRE(cfg);
    ODC_REQUIRE(list);
    return guarded([&] {
        cfg->cfg.y0 = odecond::parse_vector_list(list, "--y0");
        return ODC_OK;
    });
}

int odc_config_set_z0_text(odc_config* cfg, const char* list) {
    ODC_REQUIRE(cfg);
    ODC_REQUIRE(list);
    return guarded([&] {
        cfg->cfg.z0 = odecond::parse_vector_list(list, "--z0");
        return ODC_OK;
    });
}

int odc_config_set_norm(odc_config* cfg, const char* name) {
    ODC_REQUIRE(cfg);
    ODC_REQUIRE(name);
    return guarded([&] {
        cfg->cfg.norm = odecond::parse_norm(name);
        return ODC_OK;
    });
}

int odc_config_set_t0(odc_config* cfg, double t0) {
    ODC_REQUIRE(cfg);
    if (!std::isfinite(t0)) return fail(ODC_ERR_NON_FINITE, "t0 must be finite");
    cfg->cfg.t_start = t0;
    return ODC_OK;
}

int odc_config_set_t1(odc_config* cfg, double t1) {
    ODC_REQUIRE(cfg);
    if (!std::isfinite(t1)) return fail(ODC_ERR_NON_FINITE, "t1 must be finite");
    cfg->cfg.t_end = t1;
    return ODC_OK;
}

int odc_config_set_steps(odc_config* cfg, size_t steps) {
    ODC_REQUIRE(cfg);
    if (steps < 2) return fail(ODC_ERR_INVALID_ARGUMENT, "steps must be at least 2");
    cfg->cfg.steps = steps;
    return ODC_OK;
}

int odc_config_set_seed(odc_config* cfg, uint64_t seed) {
    ODC_REQUIRE(cfg);
    cfg->cfg.seed = seed;
    return ODC_OK;
}

int odc_config_set_tol_group(odc_config* cfg, double tol) {
    ODC_REQUIRE(cfg);
    if (!(tol > 0.0) || !std::isfinite(tol)) return fail(ODC_ERR_INVALID_ARGUMENT, "tolerance must be positive");
    cfg->cfg.tol_group = tol;
    return ODC_OK;
}

int odc_config_set_V(odc_config* cfg, double V) {
    ODC_REQUIRE(cfg);
    if (!(V >= 0.0 && V < 1.0)) return fail(ODC_ERR_INVALID_ARGUMENT, "V must lie in [0, 1)");
    cfg->cfg.V = V;
    return ODC_OK;
}

int odc_config_set_W(odc_config* cfg, double W) {
    ODC_REQUIRE(cfg);
    if (!(W >= 0.0 && W < 1.0)) return fail(ODC_ERR_INVALID_ARGUMENT, "W must lie in [0, 1)");
    cfg->cfg.W = W;
    return ODC_OK;
}

int odc_config_set_vw(odc_config* cfg, double V, double W) {
    const int rc = odc_config_set_V(cfg, V);
    return rc != ODC_OK ? rc : odc_config_set_W(cfg, W);
}

int odc_config_load_input(odc_config* cfg) {
    ODC_REQUIRE(cfg);
    return guarded([&] {
        odecond::load_input(cfg->cfg);
        return ODC_OK;
    });
}

int odc_config_scenario_json(const odc_config* cfg, char** out) {
    ODC_REQUIRE(cfg);
    ODC_REQUIRE(out);
    return guarded([&] {
        *out = dup_string(odecond::scenario_to_json(cfg->cfg));
        return ODC_OK;
    });
}

int odc_config_from_json(const char* text, odc_config** out) {
    ODC_REQUIRE(text);
    ODC_REQUIRE(out);
    return guarded([&] {
        auto cfg = std::make_unique<odc_config>();
        odecond::merge_scenario_json(cfg->cfg, text);
        *out = cfg.release();
        return ODC_OK;
    });
}

int odc_config_same_scenario(const odc_config* a, const odc_config* b, int* same) {
    ODC_REQUIRE(a);
    ODC_REQUIRE(b);
    ODC_REQUIRE(same);
    *same = odecond::same_scenario(a->cfg, b->cfg) ? 1 : 0;
    return ODC_OK;
}

int odc_run(odc_config* cfg, char** report) {
    ODC_REQUIRE(cfg);
    return guarded([&] {
        const std::string text = odecond::run_command(cfg->cfg);
        if (report) *report = dup_string(text);
        return ODC_OK;
    });
}

int odc_scenario_create(size_t n, const double* A, const double* y0, const double* z0, int norm, double t0,
                        double t1, size_t steps, odc_scenario** out) {
    ODC_REQUIRE(out);
    return guarded([&] {
        auto sc = std::make_unique<odc_scenario>();
        sc->s.A = matrix_of(n, A);
        sc->s.y0 = vector_of(y0, n, "y0");
        sc->s.norm = norm_of(norm);
        if (z0) sc->s.z0 = odecond::normalized(vector_of(z0, n, "z0"), sc->s.norm);
        sc->s.t = {t0, t1, steps};
        sc->s.validate();
        sc->analysis = odecond::analyze_spectrum(sc->s.A, sc->s.norm, sc->s.tol_group);
        *out = sc.release();
        return ODC_OK;
    });
}

void odc_scenario_destroy(odc_scenario* s) { delete s; }

int odc_k_exact(const odc_scenario* s, double t, double* out) {
    ODC_REQUIRE(s);
    ODC_REQUIRE(out);
    return guarded([&] {
        *out = odecond::k_exact(s->s, t);
        return ODC_OK;
    });
}

int odc_k_asym(const odc_scenario* s, double t, double* out) {
    ODC_REQUIRE(s);
    ODC_REQUIRE(out);
    return guarded([&] {
        *out = odecond::k_asym(s->s, s->analysis, t);
        return ODC_OK;
    });
}

int odc_sweep(const odc_scenario* s, odc_series** out) {
    ODC_REQUIRE(s);
    ODC_REQUIRE(out);
    return guarded([&] {
        auto se = std::make_unique<odc_series>();
        se->series = odecond::sweep(s->s);
        *out = se.release();
        return ODC_OK;
    });
}

void odc_series_destroy(odc_series* series) { delete series; }

size_t odc_series_size(const odc_series* series) { return series ? series->series.samples.size() : 0; }

int odc_series_sample(const odc_series* series, size_t i, odc_sample* out) {
    ODC_REQUIRE(series);
    ODC_REQUIRE(out);
    if (i >= series->series.samples.size()) return fail(ODC_ERR_INVALID_ARGUMENT, "sample index out of range");
    const auto& s = series->series.samples[i];
    *out = {s.t, s.k_exact, s.k_asym, s.osf, s.ot, s.eps_t, s.eps_tu,
            s.bound ? *s.bound : std::numeric_limits<double>::infinity(), s.bound ? 1 : 0};
    return ODC_OK;
}

int odc_series_profile(const odc_series* series, odc_profile* out) {
    ODC_REQUIRE(series);
    ODC_REQUIRE(out);
    if (!series->series.profile)
        return fail(ODC_ERR_UNAVAILABLE, "no oscillation profile: leading block is not a complex pair under the 2-norm");
    const auto& p = *series->series.profile;
    *out = {p.osf, p.period, p.ot_min, p.ot_max, p.a_max, p.a_minmax, p.a_maxmin, p.a_min, p.q1, p.V1, p.W1};
    return ODC_OK;
}

int odc_series_csv(const odc_series* series, char** out) {
    ODC_REQUIRE(series);
    ODC_REQUIRE(out);
    return guarded([&] {
        *out = dup_string(odecond::series_csv(series->series));
        return ODC_OK;
    });
}

int odc_series_summary_json(const odc_series* series, char** out) {
    ODC_REQUIRE(series);
    ODC_REQUIRE(out);
    return guarded([&] {
        *out = dup_string(odecond::summary_json(series->series));
        return ODC_OK;
    });
}

int odc_spectrum_analyze(size_t n, const double* A, int norm, double tol_group, odc_spectrum** out) {
    ODC_REQUIRE(out);
    return guarded([&] {
        auto sp = std::make_unique<odc_spectrum>();
        sp->analysis = odecond::analyze_spectrum(matrix_of(n, A), norm_of(norm), tol_group);
        *out = sp.release();
        return ODC_OK;
    });
}

void odc_spectrum_destroy(odc_spectrum* sp) { delete sp; }

size_t odc_spectrum_block_count(const odc_spectrum* sp) { return sp ? sp->analysis.blocks.size() : 0; }

int odc_spectrum_block(const odc_spectrum* sp, size_t i, odc_block_info* out) {
    ODC_REQUIRE(sp);
    ODC_REQUIRE(out);
    if (i >= sp->analysis.blocks.size()) return fail(ODC_ERR_INVALID_ARGUMENT, "block index out of range");
    const auto& b = sp->analysis.blocks[i];
    *out = odc_block_info{};
    switch (b.kind) {
        case odecond::BlockKind::SimpleSingleReal: out->kind = ODC_BLOCK_REAL; break;
        case odecond::BlockKind::SimpleSingleComplex: out->kind = ODC_BLOCK_COMPLEX; break;
        case odecond::BlockKind::Unsupported: out->kind = ODC_BLOCK_UNSUPPORTED; break;
    }
    out->r = b.r;
    out->omega = b.omega;
    out->f = b.f;
    if (b.ellipse) {
        out->has_ellipse = 1;
        out->V = b.ellipse->V;
        out->W = b.ellipse->W;
        out->delta = b.ellipse->delta;
        out->sigma = b.ellipse->sigma;
        out->mu = b.ellipse->mu;
        out->theta = b.ellipse->theta;
    }
    return ODC_OK;
}

int odc_mat_exp(size_t n, const double* A, double t, double* out) {
    ODC_REQUIRE(out);
    return guarded([&] {
        const odecond::Matrix E = odecond::mat_exp(matrix_of(n, A), t);
        Eigen::Map<Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
            out, E.rows(), E.cols()) = E;
        return ODC_OK;
    });
}

int odc_f_vw_max(double V, double W, double x, double* out) {
    ODC_REQUIRE(out);
    return guarded([&] {
        *out = odecond::f_vw_max({V, W}, x);
        return ODC_OK;
    });
}

int odc_f_vw_min(double V, double W, double x, double* out) {
    ODC_REQUIRE(out);
    return guarded([&] {
        *out = odecond::f_vw_min({V, W}, x);
        return ODC_OK;
    });
}

int odc_h_envelope(double V, double W, double beta, double* h_max, double* h_min) {
    ODC_REQUIRE(h_max);
    ODC_REQUIRE(h_min);
    return guarded([&] {
        const auto env = odecond::h_envelope({V, W}, beta);
        *h_max = env.h_max;
        *h_min = env.h_min;
        return ODC_OK;
    });
}

int odc_h_extremes_eval(double V, double W, odc_h_extremes* out) {
    ODC_REQUIRE(out);
    return guarded([&] {
        const auto e = odecond::h_extremes({V, W});
        *out = {e.maxmax, e.minmax, e.maxmin, e.minmin, e.q1};
        return ODC_OK;
    });
}

}  // extern "C"
