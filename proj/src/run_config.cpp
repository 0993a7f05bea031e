#include "odecond/run_config.hpp"

#include "odecond/error.hpp"

#include "json.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>

namespace odecond {

using json = nlohmann::ordered_json;

const char* to_string(Command c) noexcept {
    switch (c) {
        case Command::Analyze: return "analyze";
        case Command::Demo: return "demo";
        case Command::Envelope: return "envelope";
        case Command::Branches: return "branches";
    }
    return "?";
}

Command parse_command(const std::string& name) {
    if (name == "analyze") return Command::Analyze;
    if (name == "demo") return Command::Demo;
    if (name == "envelope") return Command::Envelope;
    if (name == "branches") return Command::Branches;
    throw Error(ErrorCode::InvalidArgument, "unknown command '" + name + "'");
}

bool same_scenario(const RunConfig& a, const RunConfig& b) {
    auto same_vec = [](const std::optional<Vector>& x, const std::optional<Vector>& y) {
        if (x.has_value() != y.has_value()) return false;
        return !x || (x->size() == y->size() && *x == *y);
    };
    const bool same_matrix = a.matrix.has_value() == b.matrix.has_value() &&
                             (!a.matrix || (a.matrix->rows() == b.matrix->rows() &&
                                            a.matrix->cols() == b.matrix->cols() && *a.matrix == *b.matrix));
    return same_matrix && same_vec(a.y0, b.y0) && same_vec(a.z0, b.z0) && a.norm == b.norm &&
           a.t_start == b.t_start && a.t_end == b.t_end && a.steps == b.steps && a.tol_group == b.tol_group;
}

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

bool parse_double(const std::string& tok, double& out) {
    if (tok.empty()) return false;
    char* end = nullptr;
    errno = 0;
    out = std::strtod(tok.c_str(), &end);
    return end == tok.c_str() + tok.size() && errno != ERANGE && std::isfinite(out);
}

std::vector<double> split_numbers(const std::string& line, const std::string& where) {
    std::vector<double> row;
    std::size_t col = 1;
    std::size_t pos = 0;
    while (true) {
        const auto comma = line.find(',', pos);
        const std::string tok = trim(line.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos));
        double v = 0.0;
        if (!parse_double(tok, v))
            throw Error(ErrorCode::ParseError,
                        where + ", column " + std::to_string(col) + ": cannot read '" + tok + "' as a finite number");
        row.push_back(v);
        if (comma == std::string::npos) break;
        pos = comma + 1;
        ++col;
    }
    return row;
}

}  // namespace

Matrix parse_matrix_csv(const std::string& text) {
    std::vector<std::vector<double>> rows;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        auto row = split_numbers(t, "line " + std::to_string(lineno));
        if (!rows.empty() && row.size() != rows.front().size())
            throw Error(ErrorCode::ParseError, "line " + std::to_string(lineno) + ": row has " +
                                                   std::to_string(row.size()) + " values, expected " +
                                                   std::to_string(rows.front().size()));
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw Error(ErrorCode::ParseError, "matrix file has no rows");
    if (rows.size() != rows.front().size())
        throw Error(ErrorCode::ParseError, "matrix has " + std::to_string(rows.size()) + " rows and " +
                                               std::to_string(rows.front().size()) + " columns; it must be square");
    const auto n = static_cast<Eigen::Index>(rows.size());
    Matrix A(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) A(i, j) = rows[static_cast<size_t>(i)][static_cast<size_t>(j)];
    return A;
}

Vector parse_vector_list(const std::string& text, const std::string& name) {
    const auto vals = split_numbers(trim(text), name);
    return Eigen::Map<const Vector>(vals.data(), static_cast<Eigen::Index>(vals.size()));
}

namespace {

std::string position_of(const std::string& text, std::size_t byte) {
    std::size_t line = 1;
    std::size_t col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

double number_at(const json& j, const std::string& where) {
    if (!j.is_number()) throw Error(ErrorCode::ParseError, where + ": expected a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) throw Error(ErrorCode::ParseError, where + ": value is not finite");
    return v;
}

Vector vector_at(const json& j, const std::string& where) {
    if (!j.is_array() || j.empty()) throw Error(ErrorCode::ParseError, where + ": expected a non-empty array");
    Vector v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i)
        v(static_cast<Eigen::Index>(i)) = number_at(j[i], where + "[" + std::to_string(i) + "]");
    return v;
}

Norm norm_at(const json& j) {
    if (j.is_number_integer()) return parse_norm(std::to_string(j.get<long long>()));
    if (j.is_string()) return parse_norm(j.get<std::string>());
    throw Error(ErrorCode::ParseError, "norm: expected 1, 2 or \"inf\"");
}

}  // namespace

void merge_scenario_json(RunConfig& cfg, const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::ParseError, "JSON " + position_of(text, e.byte == 0 ? 0 : e.byte - 1) + ": " +
                                               std::string(e.what()));
    }
    if (!j.is_object()) throw Error(ErrorCode::ParseError, "JSON scenario must be an object");

    if (j.contains("matrix") && !cfg.matrix) {
        const json& m = j["matrix"];
        if (!m.is_array() || m.empty()) throw Error(ErrorCode::ParseError, "matrix: expected an array of rows");
        const auto n = static_cast<Eigen::Index>(m.size());
        Matrix A(n, n);
        for (Eigen::Index i = 0; i < n; ++i) {
            const std::string where = "matrix row " + std::to_string(i + 1);
            const Vector row = vector_at(m[static_cast<size_t>(i)], where);
            if (row.size() != n)
                throw Error(ErrorCode::ParseError, where + ": has " + std::to_string(row.size()) +
                                                       " values, expected " + std::to_string(n));
            A.row(i) = row.transpose();
        }
        cfg.matrix = std::move(A);
    }
    if (j.contains("y0") && !cfg.y0) cfg.y0 = vector_at(j["y0"], "y0");
    if (j.contains("z0") && !cfg.z0 && !j["z0"].is_null()) cfg.z0 = vector_at(j["z0"], "z0");
    if (j.contains("norm") && !cfg.norm) cfg.norm = norm_at(j["norm"]);
    if (j.contains("tol_group") && !cfg.tol_group) cfg.tol_group = number_at(j["tol_group"], "tol_group");
    if (j.contains("t")) {
        const json& t = j["t"];
        if (!t.is_object()) throw Error(ErrorCode::ParseError, "t: expected an object");
        if (t.contains("start") && !cfg.t_start) cfg.t_start = number_at(t["start"], "t.start");
        if (t.contains("end") && !cfg.t_end) cfg.t_end = number_at(t["end"], "t.end");
        if (t.contains("steps") && !cfg.steps) {
            if (!t["steps"].is_number_integer() || t["steps"].get<long long>() < 2)
                throw Error(ErrorCode::ParseError, "t.steps: expected an integer >= 2");
            cfg.steps = t["steps"].get<std::size_t>();
        }
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::IoError, "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::IoError, "cannot write '" + path + "'");
    out << content;
    if (!out) throw Error(ErrorCode::IoError, "write to '" + path + "' failed");
}

void load_input(RunConfig& cfg) {
    if (cfg.input_path.empty()) return;
    const std::string text = read_file(cfg.input_path);
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
        merge_scenario_json(cfg, text);
    } else if (!cfg.matrix) {
        try {
            cfg.matrix = parse_matrix_csv(text);
        } catch (const Error& e) {
            throw Error(ErrorCode::ParseError, cfg.input_path + ": " + e.what());
        }
    }
}

std::string scenario_to_json(const RunConfig& cfg) {
    json j;
    if (cfg.matrix) {
        json rows = json::array();
        for (Eigen::Index i = 0; i < cfg.matrix->rows(); ++i) {
            json row = json::array();
            for (Eigen::Index k = 0; k < cfg.matrix->cols(); ++k) row.push_back((*cfg.matrix)(i, k));
            rows.push_back(std::move(row));
        }
        j["matrix"] = std::move(rows);
    }
    auto vec = [](const Vector& v) {
        json a = json::array();
        for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
        return a;
    };
    if (cfg.y0) j["y0"] = vec(*cfg.y0);
    if (cfg.z0) j["z0"] = vec(*cfg.z0);
    if (cfg.norm) {
        if (*cfg.norm == Norm::Inf) j["norm"] = "inf";
        else j["norm"] = *cfg.norm == Norm::One ? 1 : 2;
    }
    if (cfg.t_start || cfg.t_end || cfg.steps) {
        json t = json::object();
        if (cfg.t_start) t["start"] = *cfg.t_start;
        if (cfg.t_end) t["end"] = *cfg.t_end;
        if (cfg.steps) t["steps"] = *cfg.steps;
        j["t"] = std::move(t);
    }
    if (cfg.tol_group) j["tol_group"] = *cfg.tol_group;
    return j.dump(2) + "\n";
}

Vector seeded_vector(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    Vector v(static_cast<Eigen::Index>(n));
    do {
        for (Eigen::Index i = 0; i < v.size(); ++i)
            v(i) = std::ldexp(static_cast<double>(rng() >> 11), -52) - 1.0;
    } while (v.norm() == 0.0);
    return v / v.norm();
}

Scenario to_scenario(RunConfig& cfg) {
    if (!cfg.matrix) throw Error(ErrorCode::InvalidArgument, "no matrix given; pass --matrix PATH");
    Scenario s;
    s.A = *cfg.matrix;
    require_square(s.A, "matrix");
    require_finite(s.A, "matrix");
    const auto n = static_cast<std::size_t>(s.A.rows());
    if (!cfg.norm) cfg.norm = Norm::Two;
    if (!cfg.tol_group) cfg.tol_group = kDefaultGroupTol;
    s.norm = *cfg.norm;
    s.tol_group = *cfg.tol_group;
    if (!cfg.y0) cfg.y0 = seeded_vector(n, cfg.seed.value_or(1));
    s.y0 = *cfg.y0;
    if (cfg.z0) {
        if (static_cast<std::size_t>(cfg.z0->size()) != n)
            throw Error(ErrorCode::InvalidArgument, "z0 has length " + std::to_string(cfg.z0->size()) +
                                                        ", expected " + std::to_string(n));
        cfg.z0 = normalized(*cfg.z0, s.norm);
        s.z0 = *cfg.z0;
    }
    if (!cfg.t_start || !cfg.t_end || !cfg.steps) {
        const TimeGrid def = default_time_grid(analyze_spectrum(s.A, s.norm, s.tol_group));
        if (!cfg.t_start) cfg.t_start = def.start;
        if (!cfg.t_end) cfg.t_end = *cfg.t_start + (def.end - def.start);
        if (!cfg.steps) cfg.steps = def.steps;
    }
    if (!(*cfg.t_start < *cfg.t_end)) throw Error(ErrorCode::InvalidArgument, "t0 must be smaller than t1");
    if (*cfg.steps < 2) throw Error(ErrorCode::InvalidArgument, "steps must be at least 2");
    s.t = {*cfg.t_start, *cfg.t_end, *cfg.steps};
    s.validate();
    return s;
}

std::string fmt17(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace odecond
