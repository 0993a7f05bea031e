// Command-line front end. Talks to the library only through odecond.h.
#include "odecond/odecond.h"

#include "CLI11.hpp"

#include <cstdio>
#include <optional>
#include <string>

namespace {

struct Options {
    std::string command;
    std::optional<std::string> matrix;
    std::optional<std::string> y0;
    std::optional<std::string> z0;
    std::optional<std::string> norm;
    std::optional<double> t0;
    std::optional<double> t1;
    std::optional<std::size_t> steps;
    std::optional<std::string> out;
    std::optional<std::uint64_t> seed;
    std::optional<double> tol_group;
    std::optional<double> V;
    std::optional<double> W;
};

void add_common(CLI::App& app, Options& o) {
    app.add_option("--matrix", o.matrix, "Matrix CSV (one row per line) or JSON scenario");
    app.add_option("--y0", o.y0, "Initial value as a comma separated list");
    app.add_option("--z0", o.z0, "Perturbation direction; omit for the worst case");
    app.add_option("--norm", o.norm, "1, 2 or inf (default 2)");
    app.add_option("--t0", o.t0, "First time sample");
    app.add_option("--t1", o.t1, "Last time sample");
    app.add_option("--steps", o.steps, "Number of samples");
    app.add_option("--out", o.out, "Output directory (default .)");
    app.add_option("--seed", o.seed, "Seed for a random y0 when none is given");
    app.add_option("--tol-group", o.tol_group, "Relative tolerance for equal real parts (default 1e-8)");
    app.add_option("--V", o.V, "Shape parameter V in [0, 1) for envelope and branches");
    app.add_option("--W", o.W, "Shape parameter W in [0, 1) for envelope and branches");
}

int report_failure(int status) {
    std::fprintf(stderr, "odecond: error: %s\n", odc_last_error());
    return odc_exit_code(status);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Condition numbers of linear ODE initial value problems"};
    app.require_subcommand(1);
    Options o;
    for (const char* name : {"analyze", "demo", "envelope", "branches"}) {
        static const char* const help[] = {"Condition-number series of a scenario",
                                           "Reproduce the built-in 3x3 example",
                                           "Envelope curves of f and H for given V, W",
                                           "Stationary branches of H over beta for given V, W"};
        const std::string n = name;
        const int idx = n == "analyze" ? 0 : n == "demo" ? 1 : n == "envelope" ? 2 : 3;
        CLI::App* sub = app.add_subcommand(name, help[idx]);
        add_common(*sub, o);
        sub->callback([&o, n] { o.command = n; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    odc_config* cfg = nullptr;
    if (odc_config_create(&cfg) != ODC_OK) return report_failure(ODC_ERR_INTERNAL);

    int rc = odc_config_set_command(cfg, o.command.c_str());
    auto step = [&](auto&& fn) {
        if (rc == ODC_OK) rc = fn();
    };
    if (o.matrix) step([&] { return odc_config_set_input(cfg, o.matrix->c_str()); });
    if (o.y0) step([&] { return odc_config_set_y0_text(cfg, o.y0->c_str()); });
    if (o.z0) step([&] { return odc_config_set_z0_text(cfg, o.z0->c_str()); });
    if (o.norm) step([&] { return odc_config_set_norm(cfg, o.norm->c_str()); });
    if (o.t0) step([&] { return odc_config_set_t0(cfg, *o.t0); });
    if (o.t1) step([&] { return odc_config_set_t1(cfg, *o.t1); });
    if (o.steps) step([&] { return odc_config_set_steps(cfg, *o.steps); });
    if (o.out) step([&] { return odc_config_set_output(cfg, o.out->c_str()); });
    if (o.seed) step([&] { return odc_config_set_seed(cfg, *o.seed); });
    if (o.tol_group) step([&] { return odc_config_set_tol_group(cfg, *o.tol_group); });
    if (o.V) step([&] { return odc_config_set_V(cfg, *o.V); });
    if (o.W) step([&] { return odc_config_set_W(cfg, *o.W); });
    if (rc == ODC_OK && o.command == "analyze" && !o.matrix) {
        odc_config_destroy(cfg);
        std::fprintf(stderr, "odecond: error: analyze needs --matrix PATH\n");
        return 1;
    }

    char* report = nullptr;
    if (rc == ODC_OK) rc = odc_run(cfg, &report);
    odc_config_destroy(cfg);
    if (rc != ODC_OK) return report_failure(rc);
    std::fputs(report, stdout);
    odc_string_free(report);
    return 0;
}
