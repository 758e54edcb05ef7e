#pragma once

#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "errors.hpp"
#include "oracle.hpp"
#include "polytope.hpp"
#include "sparse.hpp"
#include "steinitz.hpp"
#include "upperbound.hpp"

namespace qst {

/// 17 significant digits: round-trips doubles exactly.
inline std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace detail {

inline std::string vec_json(const Vec<double>& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += fmt17(v[i]);
    }
    return s + "]";
}

inline std::string mat_json(const std::vector<Vec<double>>& rows) {
    std::string s = "[";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (i) s += ",";
        s += vec_json(rows[i]);
    }
    return s + "]";
}

inline std::string ints_json(const std::vector<int>& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(v[i]);
    }
    return s + "]";
}

inline nlohmann::json parse_json_text(const std::string& text) {
    try {
        return nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
}

inline int field_int(const nlohmann::json& j, const char* name) {
    if (!j.contains(name) || !j[name].is_number_integer())
        throw ParseError(std::string("field '") + name + "' missing or not an integer");
    return j[name].get<int>();
}

inline std::string field_string(const nlohmann::json& j, const char* name) {
    if (!j.contains(name) || !j[name].is_string())
        throw ParseError(std::string("field '") + name + "' missing or not a string");
    return j[name].get<std::string>();
}

inline std::vector<Vec<double>> field_matrix(const nlohmann::json& j, const char* name, int dim) {
    if (!j.contains(name) || !j[name].is_array())
        throw ParseError(std::string("field '") + name + "' missing or not an array");
    std::vector<Vec<double>> rows;
    for (const auto& row : j[name]) {
        if (!row.is_array() || static_cast<int>(row.size()) != dim)
            throw ParseError(std::string("field '") + name + "' rows must have length dim");
        Vec<double> r;
        for (const auto& x : row) {
            if (!x.is_number()) throw ParseError(std::string("field '") + name + "' entries must be numbers");
            r.push_back(x.get<double>());
        }
        rows.push_back(std::move(r));
    }
    return rows;
}

} // namespace detail

struct ParsedPolytope {
    int dim = 0;
    bool is_v = true;
    std::vector<Vec<double>> data;

    VPolytope<double> as_v() const {
        if (!is_v) throw ParseError("expected rep \"V\"");
        return {dim, data};
    }
    HPolytope<double> as_h() const {
        if (is_v) throw ParseError("expected rep \"H\"");
        HPolytope<double> h;
        h.dim = dim;
        for (const auto& r : data) h.halfspaces.push_back({r});
        return h;
    }
};

inline ParsedPolytope parse_polytope(const std::string& text) {
    const auto j = detail::parse_json_text(text);
    ParsedPolytope p;
    p.dim = detail::field_int(j, "dim");
    if (p.dim < 1) throw ParseError("field 'dim' must be positive");
    const std::string rep = detail::field_string(j, "rep");
    if (rep != "V" && rep != "H") throw ParseError("field 'rep' must be \"V\" or \"H\"");
    p.is_v = rep == "V";
    p.data = detail::field_matrix(j, "data", p.dim);
    return p;
}

inline std::string polytope_json(const VPolytope<double>& p) {
    return "{\"dim\":" + std::to_string(p.dim) + ",\"rep\":\"V\",\"data\":" + detail::mat_json(p.points) + "}";
}

inline std::string polytope_json(const HPolytope<double>& h) {
    std::vector<Vec<double>> rows;
    for (const auto& hs : h.halfspaces) rows.push_back(hs.normal);
    return "{\"dim\":" + std::to_string(h.dim) + ",\"rep\":\"H\",\"data\":" + detail::mat_json(rows) + "}";
}

inline UnitVectorSystem parse_unit_vectors(const std::string& text) {
    const auto j = detail::parse_json_text(text);
    const int dim = detail::field_int(j, "dim");
    if (dim < 1) throw ParseError("field 'dim' must be positive");
    return make_unit_vector_system(dim, detail::field_matrix(j, "vectors", dim));
}

inline std::string unit_vectors_json(const UnitVectorSystem& u) {
    return "{\"dim\":" + std::to_string(u.dim) + ",\"vectors\":" + detail::mat_json(u.vectors) + "}";
}

inline std::string certificate_json(const SparseCertificate<double>& c) {
    std::string s = "{\"selected\":" + detail::ints_json(c.selected);
    s += ",\"factor\":" + fmt17(c.factor);
    s += ",\"margins\":" + detail::vec_json(c.margins) + "}";
    return s;
}

inline std::string selection_json(const Selection<double>& s) {
    std::string out = "{\"indices\":" + detail::ints_json(s.indices);
    out += ",\"certified_radius\":" + fmt17(s.certified_radius);
    out += ",\"bound\":" + fmt17(s.bound);
    out += ",\"trail\":{";
    out += "\"k_normals\":" + detail::mat_json(s.trail.k_normals);
    out += ",\"center\":" + detail::vec_json(s.trail.center);
    out += ",\"center_margin\":" + fmt17(s.trail.center_margin);
    out += ",\"l_vertices\":" + detail::mat_json(s.trail.l_vertices);
    out += ",\"l_inradius\":" + fmt17(s.trail.l_inradius);
    out += ",\"selected_in_l\":" + detail::ints_json(s.trail.selected_in_l);
    out += ",\"sparse_certificate\":" + certificate_json(s.trail.sparse);
    out += "}}";
    return out;
}

inline std::string witness_json(const UpperBoundWitness& w) {
    std::string s = "{\"q\":" + detail::vec_json(w.q);
    s += ",\"norm_q\":" + fmt17(w.norm_q);
    s += ",\"threshold\":" + fmt17(w.threshold);
    s += ",\"bound_d_over_sqrt_n\":" + fmt17(w.bound) + "}";
    return s;
}

inline std::string oracle_json(const OracleResult<double>& o) {
    std::string s = "{\"best_indices\":" + detail::ints_json(o.best_indices);
    s += ",\"best_radius\":" + fmt17(o.best_radius);
    s += ",\"subsets_evaluated\":" + std::to_string(o.subsets_evaluated) + "}";
    return s;
}

struct ExperimentRecord {
    std::uint64_t seed = 0;
    int d = 0;
    int vertex_count = 0;
    int selection_size = 0;
    double certified_radius = 0.0;
    std::optional<double> oracle_radius;
    double bound = 0.0;
    double runtime_ms = 0.0;
};

/// Fixed column order. Timings are opt-in: they vary across reruns, while the
/// CSV contract is byte-identical output for identical seeds.
inline std::string experiment_csv(const std::vector<ExperimentRecord>& records, bool include_timings = false) {
    std::string s = "seed,d,vertex_count,selection_size,certified_radius,oracle_radius,bound";
    if (include_timings) s += ",runtime_ms";
    s += "\n";
    for (const auto& r : records) {
        s += std::to_string(r.seed) + "," + std::to_string(r.d) + "," + std::to_string(r.vertex_count) + "," +
             std::to_string(r.selection_size) + "," + fmt17(r.certified_radius) + ",";
        if (r.oracle_radius) s += fmt17(*r.oracle_radius);
        s += "," + fmt17(r.bound);
        if (include_timings) s += "," + fmt17(r.runtime_ms);
        s += "\n";
    }
    return s;
}

/// Self-contained scatter of rho*d^2 and rho*sqrt(d) against d, with the 1/5
/// reference line for the first series.
inline std::string experiment_svg(const std::vector<ExperimentRecord>& records) {
    const int width = 1000, height = 700;
    const double ml = 80, mr = 40, mt = 50, mb = 70;

    int dmin = 99, dmax = 1;
    double ymax = 0.3;
    for (const auto& r : records) {
        dmin = std::min(dmin, r.d);
        dmax = std::max(dmax, r.d);
        ymax = std::max(ymax, r.certified_radius * r.d * r.d);
        ymax = std::max(ymax, r.certified_radius * std::sqrt(static_cast<double>(r.d)));
    }
    if (records.empty()) { dmin = 1; dmax = 2; }
    ymax *= 1.08;

    auto fx = [&](double d) { return ml + (d - (dmin - 0.5)) / ((dmax + 0.5) - (dmin - 0.5)) * (width - ml - mr); };
    auto fy = [&](double y) { return height - mb - y / ymax * (height - mt - mb); };
    auto num = [](double v) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.6g", v);
        return std::string(buf);
    };

    std::string s;
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"1000\" height=\"700\" viewBox=\"0 0 1000 700\">\n";
    s += "<rect width=\"1000\" height=\"700\" fill=\"white\"/>\n";
    // axes
    s += "<line x1=\"" + num(ml) + "\" y1=\"" + num(height - mb) + "\" x2=\"" + num(width - mr) + "\" y2=\"" + num(height - mb) + "\" stroke=\"black\"/>\n";
    s += "<line x1=\"" + num(ml) + "\" y1=\"" + num(mt) + "\" x2=\"" + num(ml) + "\" y2=\"" + num(height - mb) + "\" stroke=\"black\"/>\n";
    for (int d = dmin; d <= dmax; ++d) {
        s += "<text x=\"" + num(fx(d)) + "\" y=\"" + num(height - mb + 24) + "\" text-anchor=\"middle\" font-size=\"14\">" + std::to_string(d) + "</text>\n";
        s += "<line x1=\"" + num(fx(d)) + "\" y1=\"" + num(height - mb) + "\" x2=\"" + num(fx(d)) + "\" y2=\"" + num(height - mb + 6) + "\" stroke=\"black\"/>\n";
    }
    for (int i = 0; i <= 5; ++i) {
        const double y = ymax * i / 5;
        s += "<text x=\"" + num(ml - 8) + "\" y=\"" + num(fy(y) + 5) + "\" text-anchor=\"end\" font-size=\"13\">" + num(y) + "</text>\n";
        s += "<line x1=\"" + num(ml - 5) + "\" y1=\"" + num(fy(y)) + "\" x2=\"" + num(ml) + "\" y2=\"" + num(fy(y)) + "\" stroke=\"black\"/>\n";
    }
    s += "<text x=\"" + num((ml + width - mr) / 2) + "\" y=\"" + num(height - 18) + "\" text-anchor=\"middle\" font-size=\"16\">dimension d</text>\n";
    s += "<text x=\"24\" y=\"" + num((mt + height - mb) / 2) + "\" text-anchor=\"middle\" font-size=\"16\" transform=\"rotate(-90 24 " + num((mt + height - mb) / 2) + ")\">scaled certified radius</text>\n";
    // 1/5 reference for rho*d^2
    s += "<line x1=\"" + num(ml) + "\" y1=\"" + num(fy(0.2)) + "\" x2=\"" + num(width - mr) + "\" y2=\"" + num(fy(0.2)) + "\" stroke=\"crimson\" stroke-dasharray=\"6,4\"/>\n";
    s += "<text x=\"" + num(width - mr - 4) + "\" y=\"" + num(fy(0.2) - 6) + "\" text-anchor=\"end\" font-size=\"13\" fill=\"crimson\">rho*d^2 = 1/5</text>\n";
    // points
    for (const auto& r : records) {
        const double v1 = r.certified_radius * r.d * r.d;
        const double v2 = r.certified_radius * std::sqrt(static_cast<double>(r.d));
        s += "<circle cx=\"" + num(fx(r.d - 0.08)) + "\" cy=\"" + num(fy(v1)) + "\" r=\"3.5\" fill=\"steelblue\" fill-opacity=\"0.55\"/>\n";
        s += "<rect x=\"" + num(fx(r.d + 0.08) - 3) + "\" y=\"" + num(fy(v2) - 3) + "\" width=\"6\" height=\"6\" fill=\"darkorange\" fill-opacity=\"0.55\"/>\n";
    }
    // legend
    s += "<circle cx=\"" + num(width - mr - 180) + "\" cy=\"" + num(mt + 10) + "\" r=\"4\" fill=\"steelblue\"/>\n";
    s += "<text x=\"" + num(width - mr - 168) + "\" y=\"" + num(mt + 15) + "\" font-size=\"14\">certified radius * d^2</text>\n";
    s += "<rect x=\"" + num(width - mr - 184) + "\" y=\"" + num(mt + 28) + "\" width=\"8\" height=\"8\" fill=\"darkorange\"/>\n";
    s += "<text x=\"" + num(width - mr - 168) + "\" y=\"" + num(mt + 37) + "\" font-size=\"14\">certified radius * sqrt(d)</text>\n";
    s += "</svg>\n";
    return s;
}

} // namespace qst
