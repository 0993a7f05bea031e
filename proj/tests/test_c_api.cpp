// Exercises the shared library through its C header only.
#include "odecond/odecond.h"

#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <string>
#include <vector>

namespace {

const double kDemo[9] = {-1.0, 20.0, -20.0, 0.0, 19.0, -20.0, 0.0, 18.1, -19.0};
const double kRotation[4] = {0.0, 1.0, -1.0, 0.0};

std::string take(char* s) {
    std::string out = s ? s : "";
    odc_string_free(s);
    return out;
}

}  // namespace

TEST(CApi, VersionAndStatusNames) {
    EXPECT_STREQ(odc_version(), "0.1.0");
    EXPECT_STREQ(odc_status_name(ODC_OK), "OK");
    EXPECT_NE(std::strlen(odc_status_name(ODC_ERR_ZERO_PROJECTION)), 0u);
    EXPECT_EQ(odc_exit_code(ODC_OK), 0);
    EXPECT_EQ(odc_exit_code(ODC_ERR_UNSUPPORTED_SPECTRUM), 2);
    EXPECT_EQ(odc_exit_code(ODC_ERR_ZERO_PROJECTION), 3);
    EXPECT_EQ(odc_exit_code(ODC_ERR_PARSE), 1);
}

TEST(CApi, NullArgumentsAreRejected) {
    EXPECT_EQ(odc_config_create(nullptr), ODC_ERR_INVALID_ARGUMENT);
    EXPECT_EQ(odc_k_exact(nullptr, 0.0, nullptr), ODC_ERR_INVALID_ARGUMENT);
    EXPECT_GT(std::strlen(odc_last_error()), 0u);
    odc_config_destroy(nullptr);
    odc_scenario_destroy(nullptr);
    odc_series_destroy(nullptr);
    odc_spectrum_destroy(nullptr);
}

TEST(CApi, MatrixExponentialOfRotation) {
    double E[4];
    ASSERT_EQ(odc_mat_exp(2, kRotation, 0.5, E), ODC_OK);
    EXPECT_NEAR(E[0], std::cos(0.5), 1e-15);
    EXPECT_NEAR(E[1], std::sin(0.5), 1e-15);
    EXPECT_NEAR(E[2], -std::sin(0.5), 1e-15);
    const double bad[4] = {0.0, NAN, 0.0, 0.0};
    EXPECT_EQ(odc_mat_exp(2, bad, 1.0, E), ODC_ERR_NON_FINITE);
}

TEST(CApi, ScalarKernels) {
    double v = 0.0;
    ASSERT_EQ(odc_f_vw_max(0.5, 0.0, 1.0, &v), ODC_OK);
    EXPECT_NEAR(v, 1.5, 1e-15);
    ASSERT_EQ(odc_f_vw_min(0.0, 0.5, 1.0, &v), ODC_OK);
    EXPECT_NEAR(v, 1.0 / 1.5, 1e-15);
    EXPECT_EQ(odc_f_vw_max(1.0, 0.5, 1.0, &v), ODC_ERR_INVALID_ARGUMENT);

    double hmax = 0.0;
    double hmin = 0.0;
    ASSERT_EQ(odc_h_envelope(0.4, 0.5, 0.0, &hmax, &hmin), ODC_OK);
    odc_h_extremes e{};
    ASSERT_EQ(odc_h_extremes_eval(0.4, 0.5, &e), ODC_OK);
    EXPECT_NEAR(hmax, e.minmax, 1e-9);
    EXPECT_NEAR(hmin, e.maxmin, 1e-9);
    EXPECT_NEAR(e.q1, 0.4 * 1.5 / 1.0, 1e-15);
}

TEST(CApi, SpectrumOfDemoMatrix) {
    odc_spectrum* sp = nullptr;
    ASSERT_EQ(odc_spectrum_analyze(3, kDemo, ODC_NORM_2, 1e-8, &sp), ODC_OK);
    ASSERT_EQ(odc_spectrum_block_count(sp), 2u);
    odc_block_info b{};
    ASSERT_EQ(odc_spectrum_block(sp, 0, &b), ODC_OK);
    EXPECT_EQ(b.kind, ODC_BLOCK_COMPLEX);
    EXPECT_NEAR(b.r, 0.0, 1e-12);
    EXPECT_NEAR(b.omega, 1.0, 1e-12);
    EXPECT_EQ(b.has_ellipse, 1);
    EXPECT_NEAR(b.V, 0.9988, 5e-5);
    EXPECT_NEAR(b.W, 0.9986, 5e-5);
    ASSERT_EQ(odc_spectrum_block(sp, 1, &b), ODC_OK);
    EXPECT_EQ(b.kind, ODC_BLOCK_REAL);
    EXPECT_EQ(odc_spectrum_block(sp, 2, &b), ODC_ERR_INVALID_ARGUMENT);
    odc_spectrum_destroy(sp);
}

TEST(CApi, SweepOfRotationHasNoTrailingBlocks) {
    const double y0[2] = {1.0, 0.0};
    odc_scenario* s = nullptr;
    ASSERT_EQ(odc_scenario_create(2, kRotation, y0, nullptr, ODC_NORM_2, 0.0, 6.0, 61, &s), ODC_OK);
    double k = 0.0;
    ASSERT_EQ(odc_k_exact(s, 2.0, &k), ODC_OK);
    EXPECT_NEAR(k, 1.0, 1e-13);
    odc_series* series = nullptr;
    ASSERT_EQ(odc_sweep(s, &series), ODC_OK);
    ASSERT_EQ(odc_series_size(series), 61u);
    for (size_t i = 0; i < 61; ++i) {
        odc_sample x{};
        ASSERT_EQ(odc_series_sample(series, i, &x), ODC_OK);
        EXPECT_EQ(x.eps_t, 0.0);
        EXPECT_EQ(x.eps_tu, 0.0);
        EXPECT_EQ(x.bounded, 1);
        EXPECT_NEAR(x.k_asym, 1.0, 1e-12);
    }
    const std::string summary = take([&] {
        char* out = nullptr;
        EXPECT_EQ(odc_series_summary_json(series, &out), ODC_OK);
        return out;
    }());
    EXPECT_NE(summary.find("SimpleSingleComplex"), std::string::npos);
    odc_series_destroy(series);
    odc_scenario_destroy(s);
}

TEST(CApi, ZeroProjectionStatus) {
    const double A[4] = {1.0, 0.0, 0.0, -1.0};
    const double y0[2] = {0.0, 1.0};
    odc_scenario* s = nullptr;
    ASSERT_EQ(odc_scenario_create(2, A, y0, nullptr, ODC_NORM_2, 0.0, 1.0, 3, &s), ODC_OK);
    odc_series* series = nullptr;
    EXPECT_EQ(odc_sweep(s, &series), ODC_ERR_ZERO_PROJECTION);
    EXPECT_EQ(series, nullptr);
    odc_scenario_destroy(s);
}

TEST(CApi, ProfileOfDemoScenario) {
    const double y0[3] = {0.0, -0.7245, -0.6892};
    odc_scenario* s = nullptr;
    ASSERT_EQ(odc_scenario_create(3, kDemo, y0, nullptr, ODC_NORM_2, 0.0, 3.141592653589793, 257, &s), ODC_OK);
    odc_series* series = nullptr;
    ASSERT_EQ(odc_sweep(s, &series), ODC_OK);
    odc_profile p{};
    ASSERT_EQ(odc_series_profile(series, &p), ODC_OK);
    EXPECT_NEAR(p.osf, 38.1, 0.05);
    EXPECT_NEAR(p.period, 3.141592653589793, 1e-12);
    EXPECT_NEAR(p.a_max, 41.0, 0.05);
    const std::string csv = take([&] {
        char* out = nullptr;
        EXPECT_EQ(odc_series_csv(series, &out), ODC_OK);
        return out;
    }());
    EXPECT_EQ(csv.rfind("t,k_exact,k_asym,osf,ot,eps_t,eps_tu,precision_bound\n", 0), 0u);
    odc_series_destroy(series);
    odc_scenario_destroy(s);
}

TEST(CApi, ProfileUnavailableForOneNorm) {
    const double y0[3] = {1.0, 1.0, 1.0};
    odc_scenario* s = nullptr;
    ASSERT_EQ(odc_scenario_create(3, kDemo, y0, nullptr, ODC_NORM_1, 0.0, 1.0, 5, &s), ODC_OK);
    odc_series* series = nullptr;
    ASSERT_EQ(odc_sweep(s, &series), ODC_OK);
    odc_profile p{};
    EXPECT_EQ(odc_series_profile(series, &p), ODC_ERR_UNAVAILABLE);
    odc_series_destroy(series);
    odc_scenario_destroy(s);
}

TEST(CApi, ConfigJsonRoundTrip) {
    odc_config* a = nullptr;
    ASSERT_EQ(odc_config_create(&a), ODC_OK);
    ASSERT_EQ(odc_config_set_y0_text(a, "1,2,3"), ODC_OK);
    ASSERT_EQ(odc_config_set_norm(a, "inf"), ODC_OK);
    ASSERT_EQ(odc_config_set_t1(a, 2.5), ODC_OK);
    EXPECT_EQ(odc_config_set_norm(a, "7"), ODC_ERR_UNSUPPORTED_NORM);
    EXPECT_EQ(odc_config_set_y0_text(a, "1,x"), ODC_ERR_PARSE);
    const std::string text = take([&] {
        char* out = nullptr;
        EXPECT_EQ(odc_config_scenario_json(a, &out), ODC_OK);
        return out;
    }());
    odc_config* b = nullptr;
    ASSERT_EQ(odc_config_from_json(text.c_str(), &b), ODC_OK);
    int same = 0;
    ASSERT_EQ(odc_config_same_scenario(a, b, &same), ODC_OK);
    EXPECT_EQ(same, 1);
    ASSERT_EQ(odc_config_set_t1(b, 3.0), ODC_OK);
    ASSERT_EQ(odc_config_same_scenario(a, b, &same), ODC_OK);
    EXPECT_EQ(same, 0);
    odc_config_destroy(a);
    odc_config_destroy(b);
    EXPECT_EQ(odc_config_from_json("{\"matrix\": [[1,", &b), ODC_ERR_PARSE);
}

TEST(CApi, RunEnvelopeWritesFiles) {
    const auto dir = std::filesystem::temp_directory_path() / "odecond_capi_envelope";
    std::filesystem::remove_all(dir);
    odc_config* cfg = nullptr;
    ASSERT_EQ(odc_config_create(&cfg), ODC_OK);
    ASSERT_EQ(odc_config_set_command(cfg, "envelope"), ODC_OK);
    ASSERT_EQ(odc_config_set_vw(cfg, 0.45, 0.5), ODC_OK);
    ASSERT_EQ(odc_config_set_output(cfg, dir.c_str()), ODC_OK);
    char* report = nullptr;
    ASSERT_EQ(odc_run(cfg, &report), ODC_OK) << odc_last_error();
    odc_string_free(report);
    EXPECT_TRUE(std::filesystem::exists(dir / "envelope_f.csv"));
    EXPECT_TRUE(std::filesystem::exists(dir / "envelope_h.csv"));
    EXPECT_TRUE(std::filesystem::exists(dir / "envelope_extremes.json"));
    EXPECT_EQ(odc_config_set_command(cfg, "plot"), ODC_ERR_INVALID_ARGUMENT);
    odc_config_destroy(cfg);
    std::filesystem::remove_all(dir);
}
