// Runs the installed command-line binary and checks files and exit codes.
#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct Outcome {
    int code = -1;
    std::string err;
};

class Cli : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("odecond_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    fs::path path(const std::string& name) const { return dir_ / name; }

    void write(const std::string& name, const std::string& text) const { std::ofstream(path(name)) << text; }

    static std::string read(const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }

    Outcome run(const std::string& args) const {
        const std::string err = path("stderr.txt").string();
        const std::string cmd = std::string("\"") + ODECOND_CLI + "\" " + args + " > \"" + path("stdout.txt").string() +
                                "\" 2> \"" + err + "\"";
        const int status = std::system(cmd.c_str());
        Outcome r;
        r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
        r.err = read(err);
        return r;
    }

    fs::path dir_;
};

const char* kDemoCsv = "-1,20,-20\n0,19,-20\n0,18.1,-19\n";

}  // namespace

TEST_F(Cli, UsageErrorsExitWithOne) {
    EXPECT_EQ(run("").code, 1);
    EXPECT_EQ(run("analyze --bogus 3").code, 1);
    EXPECT_EQ(run("analyze --out " + dir_.string()).code, 1);
    EXPECT_EQ(run("frobnicate").code, 1);
}

TEST_F(Cli, MalformedMatrixReportsLine) {
    write("bad.csv", "1,2\n3,four\n");
    const Outcome r = run("analyze --matrix " + path("bad.csv").string() + " --out " + dir_.string());
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("line 2"), std::string::npos) << r.err;
}

TEST_F(Cli, MissingFileExitsWithOne) {
    EXPECT_EQ(run("analyze --matrix " + path("nope.csv").string()).code, 1);
}

TEST_F(Cli, UnsupportedSpectrumExitsWithTwo) {
    write("jordan.csv", "0,1\n0,0\n");
    EXPECT_EQ(run("analyze --matrix " + path("jordan.csv").string() + " --y0 1,1 --out " + dir_.string()).code, 2);
    write("double.csv", "1,0,0\n0,1,0\n0,0,-1\n");
    const Outcome r = run("analyze --matrix " + path("double.csv").string() + " --y0 1,1,1 --out " + dir_.string());
    EXPECT_EQ(r.code, 2) << r.err;
}

TEST_F(Cli, ZeroProjectionExitsWithThree) {
    write("diag.csv", "1,0\n0,-1\n");
    const Outcome r = run("analyze --matrix " + path("diag.csv").string() + " --y0 0,1 --out " + dir_.string());
    EXPECT_EQ(r.code, 3);
    EXPECT_NE(r.err.find("odecond: error:"), std::string::npos);
}

TEST_F(Cli, RotationScenario) {
    write("rot.csv", "0,1\n-1,0\n");
    ASSERT_EQ(run("analyze --matrix " + path("rot.csv").string() + " --y0 1,0 --out " + dir_.string()).code, 0);
    const std::string summary = read(path("summary.json"));
    EXPECT_NE(summary.find("\"classification\": \"SimpleSingleComplex\""), std::string::npos);
    EXPECT_NE(summary.find("\"q\": 1"), std::string::npos);
    std::istringstream csv(read(path("series.csv")));
    std::string line;
    std::getline(csv, line);
    EXPECT_EQ(line, "t,k_exact,k_asym,osf,ot,eps_t,eps_tu,precision_bound");
    int rows = 0;
    while (std::getline(csv, line)) {
        std::vector<std::string> cells;
        std::stringstream ls(line);
        for (std::string c; std::getline(ls, c, ',');) cells.push_back(c);
        ASSERT_EQ(cells.size(), 8u);
        EXPECT_EQ(cells[5], "0");
        EXPECT_EQ(cells[6], "0");
        ++rows;
    }
    EXPECT_EQ(rows, 1025);
}

TEST_F(Cli, DemoScenarioSummary) {
    write("demo.csv", kDemoCsv);
    ASSERT_EQ(run("analyze --matrix " + path("demo.csv").string() + " --y0 0,-0.7245,-0.6892 --out " + dir_.string())
                  .code,
              0);
    const std::string summary = read(path("summary.json"));
    const auto pos = summary.find("\"OSF\"");
    ASSERT_NE(pos, std::string::npos);
    EXPECT_NE(summary.find("\"rounded\": 38.1", pos), std::string::npos);
}

TEST_F(Cli, ScenarioFileReproducesSeries) {
    write("demo.csv", kDemoCsv);
    const fs::path first = dir_ / "first";
    const fs::path second = dir_ / "second";
    ASSERT_EQ(run("analyze --matrix " + path("demo.csv").string() + " --seed 11 --norm inf --steps 65 --out " +
                  first.string())
                  .code,
              0);
    ASSERT_EQ(run("analyze --matrix " + (first / "scenario.json").string() + " --out " + second.string()).code, 0);
    EXPECT_EQ(read(first / "series.csv"), read(second / "series.csv"));
    EXPECT_EQ(read(first / "scenario.json"), read(second / "scenario.json"));
}

TEST_F(Cli, DemoIsByteIdenticalAcrossRuns) {
    const fs::path a = dir_ / "a";
    const fs::path b = dir_ / "b";
    ASSERT_EQ(run("demo --out " + a.string()).code, 0);
    const std::string out_a = read(path("stdout.txt"));
    ASSERT_EQ(run("demo --out " + b.string()).code, 0);
    EXPECT_EQ(out_a, read(path("stdout.txt")));
    EXPECT_EQ(out_a.find("FAIL"), std::string::npos) << out_a;
    int files = 0;
    for (const auto& entry : fs::directory_iterator(a)) {
        ++files;
        EXPECT_EQ(read(entry.path()), read(b / entry.path().filename())) << entry.path();
    }
    EXPECT_EQ(files, 5);
}

TEST_F(Cli, EnvelopeAndBranches) {
    ASSERT_EQ(run("envelope --V 0.45 --W 0.5 --out " + dir_.string()).code, 0);
    EXPECT_EQ(read(path("envelope_h.csv")).rfind("beta,h_max,h_min\n", 0), 0u);
    ASSERT_EQ(run("branches --V 0.45 --W 0.5 --steps 65 --out " + dir_.string()).code, 0);
    EXPECT_EQ(read(path("branches.csv")).rfind("branch_id,beta,x,h\n", 0), 0u);
    EXPECT_TRUE(fs::exists(path("branches_meta.csv")));
    EXPECT_EQ(run("envelope --V 1.2 --W 0.5 --out " + dir_.string()).code, 1);
}
