#pragma once

// JSON for matrix polynomials and behaviors, CSV for trajectories.
//
// MatPoly:  {"rows": p, "cols": q, "degree": l, "coeffs": [R0, R1, ..., Rl]}, each Rk a
//           row-major list of p rows of q numbers (ascending powers of z).
// Behavior: {"q": q, "kernel": MatPoly|null, "image": MatPoly|null, "data": path|null}.
// CSV:      header "t,w1,...,wq", then one line per sample with t = 1, 2, ...

#include <behalg/behavior.hpp>

#include <json.hpp>

#include <charconv>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace behalg {

using Json = nlohmann::ordered_json;

/// Shortest decimal text that reads back to the same double.
inline std::string format_double(double x) {
    if (x == 0.0) return "0";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

inline Json matpoly_to_json(const MatPoly& r) {
    Json coeffs = Json::array();
    for (int k = 0; k <= r.degree(); ++k) {
        Json mat = Json::array();
        for (Index i = 0; i < r.rows(); ++i) {
            Json row = Json::array();
            for (Index j = 0; j < r.cols(); ++j) row.push_back(r.coeff(k)(i, j) == 0.0 ? 0.0 : r.coeff(k)(i, j));
            mat.push_back(std::move(row));
        }
        coeffs.push_back(std::move(mat));
    }
    return Json{{"rows", r.rows()}, {"cols", r.cols()}, {"degree", r.degree()}, {"coeffs", std::move(coeffs)}};
}

namespace detail {

inline Index json_count(const Json& j, const char* key) {
    if (!j.contains(key) || !j.at(key).is_number_integer() || j.at(key).get<long long>() < 0)
        fail(ErrorKind::InvalidInput, std::string("JSON: missing or invalid \"") + key + "\"");
    return static_cast<Index>(j.at(key).get<long long>());
}

}  // namespace detail

inline MatPoly matpoly_from_json(const Json& j) {
    if (!j.is_object()) fail(ErrorKind::InvalidInput, "MatPoly JSON: expected an object");
    const Index rows = detail::json_count(j, "rows");
    const Index cols = detail::json_count(j, "cols");
    if (!j.contains("coeffs") || !j.at("coeffs").is_array() || j.at("coeffs").empty())
        fail(ErrorKind::InvalidInput, "MatPoly JSON: \"coeffs\" must be a non-empty array");
    const Json& cj = j.at("coeffs");
    if (j.contains("degree")) {
        const Index deg = detail::json_count(j, "degree");
        if (deg + 1 != static_cast<Index>(cj.size()))
            fail(ErrorKind::InvalidInput, "MatPoly JSON: \"degree\" disagrees with the number of coefficient matrices");
    }
    std::vector<Matrix> coeffs;
    for (const Json& mj : cj) {
        if (!mj.is_array() || static_cast<Index>(mj.size()) != rows)
            fail(ErrorKind::InvalidInput, "MatPoly JSON: coefficient matrix has the wrong number of rows");
        Matrix m(rows, cols);
        for (Index i = 0; i < rows; ++i) {
            const Json& rj = mj.at(static_cast<std::size_t>(i));
            if (!rj.is_array() || static_cast<Index>(rj.size()) != cols)
                fail(ErrorKind::InvalidInput, "MatPoly JSON: coefficient row has the wrong number of entries");
            for (Index c = 0; c < cols; ++c) {
                const Json& v = rj.at(static_cast<std::size_t>(c));
                if (!v.is_number()) fail(ErrorKind::InvalidInput, "MatPoly JSON: non-numeric coefficient");
                m(i, c) = v.get<double>();
            }
        }
        coeffs.push_back(std::move(m));
    }
    return MatPoly(std::move(coeffs));
}

// ---------------------------------------------------------------------------
// CSV

namespace detail {

inline std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(trim(cell));
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

inline double parse_double(const std::string& s, std::size_t line) {
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size())
        fail(ErrorKind::InvalidInput, "CSV line " + std::to_string(line) + ": cannot parse \"" + s + "\"");
    return v;
}

}  // namespace detail

inline Trajectory read_trajectory_csv(std::istream& in) {
    std::string line;
    std::size_t lineno = 0;
    std::vector<std::string> header;
    while (std::getline(in, line)) {
        ++lineno;
        if (!detail::trim(line).empty()) {
            header = detail::split_csv(line);
            break;
        }
    }
    if (header.size() < 2 || header[0] != "t") fail(ErrorKind::InvalidInput, "CSV: header must be t,w1,...,wq");
    const Index q = static_cast<Index>(header.size()) - 1;
    for (Index i = 1; i <= q; ++i)
        if (header[static_cast<std::size_t>(i)] != "w" + std::to_string(i))
            fail(ErrorKind::InvalidInput, "CSV: header must be t,w1,...,wq");

    std::vector<std::vector<double>> rows;
    while (std::getline(in, line)) {
        ++lineno;
        if (detail::trim(line).empty()) continue;
        const std::vector<std::string> cells = detail::split_csv(line);
        if (static_cast<Index>(cells.size()) != q + 1)
            fail(ErrorKind::InvalidInput, "CSV line " + std::to_string(lineno) + ": expected " + std::to_string(q + 1) + " fields");
        const double t = detail::parse_double(cells[0], lineno);
        if (t != static_cast<double>(rows.size() + 1))
            fail(ErrorKind::InvalidInput, "CSV line " + std::to_string(lineno) + ": time must run 1, 2, 3, ... without gaps");
        std::vector<double> r;
        for (Index i = 1; i <= q; ++i) r.push_back(detail::parse_double(cells[static_cast<std::size_t>(i)], lineno));
        rows.push_back(std::move(r));
    }
    if (rows.empty()) fail(ErrorKind::InvalidInput, "CSV: no samples");
    Matrix s(static_cast<Index>(rows.size()), q);
    for (Index t = 0; t < s.rows(); ++t)
        for (Index i = 0; i < q; ++i) s(t, i) = rows[static_cast<std::size_t>(t)][static_cast<std::size_t>(i)];
    return Trajectory(std::move(s));
}

inline Trajectory read_trajectory_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorKind::InvalidInput, "cannot open " + path.string());
    return read_trajectory_csv(in);
}

inline void write_trajectory_csv(std::ostream& out, const Trajectory& w) {
    out << "t";
    for (Index i = 1; i <= w.q(); ++i) out << ",w" << i;
    out << "\n";
    for (Index t = 0; t < w.length(); ++t) {
        out << (t + 1);
        for (Index i = 0; i < w.q(); ++i) out << "," << format_double(w.samples()(t, i));
        out << "\n";
    }
}

// ---------------------------------------------------------------------------
// Behavior envelope

/// Parses a behavior; a relative "data" path is resolved against `base_dir`.
inline Behavior behavior_from_json(const Json& j, const std::filesystem::path& base_dir,
                                   const ToleranceConfig& cfg = {}) {
    if (!j.is_object()) fail(ErrorKind::InvalidInput, "Behavior JSON: expected an object");
    const Index q = detail::json_count(j, "q");
    std::optional<MatPoly> kernel;
    std::optional<MatPoly> image;
    std::optional<Trajectory> data;
    if (j.contains("kernel") && !j.at("kernel").is_null()) kernel = matpoly_from_json(j.at("kernel"));
    if (j.contains("image") && !j.at("image").is_null()) image = matpoly_from_json(j.at("image"));
    if (j.contains("data") && !j.at("data").is_null()) {
        if (!j.at("data").is_string()) fail(ErrorKind::InvalidInput, "Behavior JSON: \"data\" must be a path");
        std::filesystem::path p = j.at("data").get<std::string>();
        if (p.is_relative()) p = base_dir / p;
        data = read_trajectory_csv(p);
    }
    return Behavior(q, std::move(kernel), std::move(image), std::move(data), cfg);
}

inline Behavior read_behavior_json(const std::filesystem::path& path, const ToleranceConfig& cfg = {}) {
    std::ifstream in(path);
    if (!in) fail(ErrorKind::InvalidInput, "cannot open " + path.string());
    Json j;
    try {
        j = Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorKind::InvalidInput, path.string() + ": " + e.what());
    }
    return behavior_from_json(j, path.parent_path(), cfg);
}

/// Envelope with the stored representations; "data" is written as null.
inline Json behavior_to_json(const Behavior& b) {
    Json j;
    j["q"] = b.q();
    j["kernel"] = b.kernel() ? matpoly_to_json(*b.kernel()) : Json(nullptr);
    j["image"] = b.image() ? matpoly_to_json(*b.image()) : Json(nullptr);
    j["data"] = nullptr;
    return j;
}

}  // namespace behalg
