// Definition-file schemas (JSON syntax). Polynomial values are strings in
// the text grammar, never JSON numbers, so exact rationals survive the trip.
// Parse errors carry a line number, schema violations a key path.
#pragma once

#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "actions.hpp"
#include "algebroid.hpp"
#include "constructions.hpp"
#include "derivation.hpp"
#include "errors.hpp"
#include "morphism.hpp"
#include "report.hpp"

namespace algebroidkit {

using Json = nlohmann::ordered_json;

namespace detail {

inline std::size_t line_of_offset(const std::string& text, std::size_t byte) {
    std::size_t line = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i)
        if (text[i] == '\n') ++line;
    return line;
}

inline const Json& member(const Json& j, const std::string& key, const std::string& path) {
    if (!j.is_object()) throw SchemaError(path, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) throw SchemaError(path.empty() ? key : path + "/" + key, "missing key");
    return *it;
}

inline std::string get_string(const Json& j, const std::string& path) {
    if (!j.is_string()) throw SchemaError(path, "expected a string");
    return j.get<std::string>();
}

inline std::size_t get_size(const Json& j, const std::string& path) {
    if (!j.is_number_unsigned()) throw SchemaError(path, "expected a non-negative integer");
    return j.get<std::size_t>();
}

inline std::vector<std::string> get_string_array(const Json& j, const std::string& path) {
    if (!j.is_array()) throw SchemaError(path, "expected an array");
    std::vector<std::string> out;
    for (std::size_t i = 0; i < j.size(); ++i)
        out.push_back(get_string(j[i], path + "/" + std::to_string(i + 1)));
    return out;
}

inline Poly get_poly(const Json& j, const Chart& chart, const std::string& path) {
    std::string text = get_string(j, path);
    try {
        return parse_poly(chart, text);
    } catch (const GrammarError& e) {
        throw SchemaError(path, std::string("polynomial grammar: ") + e.what());
    }
}

inline std::vector<Poly> get_poly_array(const Json& j, const Chart& chart,
                                        const std::string& path) {
    if (!j.is_array()) throw SchemaError(path, "expected an array of polynomial strings");
    std::vector<Poly> out;
    for (std::size_t i = 0; i < j.size(); ++i)
        out.push_back(get_poly(j[i], chart, path + "/" + std::to_string(i + 1)));
    return out;
}

inline PolyMatrix get_poly_matrix(const Json& j, const Chart& chart, const std::string& path) {
    if (!j.is_array()) throw SchemaError(path, "expected an array of rows");
    PolyMatrix out;
    for (std::size_t i = 0; i < j.size(); ++i)
        out.push_back(get_poly_array(j[i], chart, path + "/" + std::to_string(i + 1)));
    return out;
}

/// "i,j" with 1-based i<j, returned 0-based.
inline std::pair<std::size_t, std::size_t> parse_pair_key(const std::string& key,
                                                          const std::string& path) {
    auto comma = key.find(',');
    if (comma == std::string::npos) throw SchemaError(path, "key must be \"i,j\"");
    std::size_t i = 0, j = 0;
    try {
        i = std::stoul(key.substr(0, comma));
        j = std::stoul(key.substr(comma + 1));
    } catch (const std::exception&) {
        throw SchemaError(path, "key must be \"i,j\" with integer indices");
    }
    if (i == 0 || j == 0) throw SchemaError(path, "indices are 1-based");
    if (i >= j) throw SchemaError(path, "pairs must have i<j");
    return {i - 1, j - 1};
}

} // namespace detail

inline Json load_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open file: " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    std::string text = buffer.str();
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(path.string() + ": " + e.what(),
                         detail::line_of_offset(text, e.byte > 0 ? e.byte - 1 : 0));
    }
}

// ---------------------------------------------------------------------------
// Algebroid: {"chart": [names], "rank": r, "frame": [names],
//             "anchor": r arrays of m polynomial strings,
//             "structure": {"i,j": [r strings]}} (omitted pairs are zero).
// ---------------------------------------------------------------------------

inline Algebroid parse_algebroid(const Json& j, const std::string& path = "") {
    using namespace detail;
    Chart chart{get_string_array(member(j, "chart", path), path + "/chart")};
    std::size_t rank = get_size(member(j, "rank", path), path + "/rank");
    auto frame = get_string_array(member(j, "frame", path), path + "/frame");
    if (frame.size() != rank) throw SchemaError(path + "/frame", "name count != rank");
    PolyMatrix anchor = get_poly_matrix(member(j, "anchor", path), chart, path + "/anchor");
    StructureMap structure;
    if (j.contains("structure")) {
        const Json& s = j.at("structure");
        if (!s.is_object()) throw SchemaError(path + "/structure", "expected an object");
        for (const auto& [key, value] : s.items()) {
            std::string kpath = path + "/structure/" + key;
            auto ij = parse_pair_key(key, kpath);
            if (ij.second >= rank) throw SchemaError(kpath, "frame index out of range");
            structure.emplace(ij, get_poly_array(value, chart, kpath));
        }
    }
    try {
        return Algebroid(chart, std::move(frame), std::move(anchor), std::move(structure));
    } catch (const SchemaError& e) {
        throw SchemaError(path.empty() ? e.path : path + "/" + e.path, e.what());
    }
}

/// Accepts either an inline object or a path string relative to `base_dir`.
inline Algebroid parse_algebroid_ref(const Json& j, const std::filesystem::path& base_dir,
                                     const std::string& path) {
    if (j.is_string())
        return parse_algebroid(load_json_file(base_dir / j.get<std::string>()), path);
    return parse_algebroid(j, path);
}

inline Json serialize_algebroid(const Algebroid& a) {
    Json j;
    j["chart"] = a.base().coords();
    j["rank"] = a.rank();
    j["frame"] = a.frame_names();
    Json anchor = Json::array();
    for (const auto& row : a.anchor()) {
        Json r = Json::array();
        for (const auto& p : row) r.push_back(to_string(p));
        anchor.push_back(std::move(r));
    }
    j["anchor"] = std::move(anchor);
    Json structure = Json::object();
    for (const auto& [key, vec] : a.structure()) {
        Json v = Json::array();
        for (const auto& p : vec) v.push_back(to_string(p));
        structure[std::to_string(key.first + 1) + "," + std::to_string(key.second + 1)] =
            std::move(v);
    }
    j["structure"] = std::move(structure);
    return j;
}

// ---------------------------------------------------------------------------
// Derivation: {"algebroid": <object or path>, "matrix": r x r strings,
//              "field": m strings}.
// ---------------------------------------------------------------------------

inline Derivation parse_derivation(const Json& j, const std::filesystem::path& base_dir,
                                   const std::string& path = "") {
    using namespace detail;
    Algebroid a =
        parse_algebroid_ref(member(j, "algebroid", path), base_dir, path + "/algebroid");
    PolyMatrix matrix = get_poly_matrix(member(j, "matrix", path), a.base(), path + "/matrix");
    auto field = get_poly_array(member(j, "field", path), a.base(), path + "/field");
    try {
        return Derivation(a, std::move(matrix), VectorField(a.base(), std::move(field)));
    } catch (const SchemaError& e) {
        throw SchemaError(path.empty() ? e.path : path + "/" + e.path, e.what());
    }
}

/// Derivation without its own algebroid key (used inside action files).
inline Derivation parse_derivation_on(const Json& j, const Algebroid& a,
                                      const std::string& path) {
    using namespace detail;
    PolyMatrix matrix = get_poly_matrix(member(j, "matrix", path), a.base(), path + "/matrix");
    auto field = get_poly_array(member(j, "field", path), a.base(), path + "/field");
    return Derivation(a, std::move(matrix), VectorField(a.base(), std::move(field)));
}

// ---------------------------------------------------------------------------
// Morphism: {"source": <algebroid>, "target": <algebroid>,
//            "phi": m strings over the source chart, "matrix": r x s strings}.
// ---------------------------------------------------------------------------

inline AlgebroidMorphism parse_morphism(const Json& j, const std::filesystem::path& base_dir,
                                        const std::string& path = "") {
    using namespace detail;
    Algebroid source = parse_algebroid_ref(member(j, "source", path), base_dir, path + "/source");
    Algebroid target = parse_algebroid_ref(member(j, "target", path), base_dir, path + "/target");
    auto phi = get_poly_array(member(j, "phi", path), source.base(), path + "/phi");
    PolyMatrix matrix =
        get_poly_matrix(member(j, "matrix", path), source.base(), path + "/matrix");
    try {
        return AlgebroidMorphism(source, target, ChartMap(source.base(), target.base(), phi),
                                 std::move(matrix));
    } catch (const SchemaError& e) {
        throw SchemaError(path.empty() ? e.path : path + "/" + e.path, e.what());
    }
}

// ---------------------------------------------------------------------------
// Action: {"acting": <algebroid>, "acted": <algebroid>,
//          "q": [source coordinate names], "nabla": [derivation objects]}.
// ---------------------------------------------------------------------------

inline AlgebroidAction parse_action(const Json& j, const std::filesystem::path& base_dir,
                                    const std::string& path = "") {
    using namespace detail;
    Algebroid acting = parse_algebroid_ref(member(j, "acting", path), base_dir, path + "/acting");
    Algebroid acted = parse_algebroid_ref(member(j, "acted", path), base_dir, path + "/acted");
    auto qcoords = get_string_array(member(j, "q", path), path + "/q");
    const Json& nj = member(j, "nabla", path);
    if (!nj.is_array()) throw SchemaError(path + "/nabla", "expected an array");
    std::vector<Derivation> nabla;
    for (std::size_t i = 0; i < nj.size(); ++i)
        nabla.push_back(
            parse_derivation_on(nj[i], acted, path + "/nabla/" + std::to_string(i + 1)));
    try {
        ChartMap q = ChartMap::projection(acted.base(), acting.base(), qcoords);
        return AlgebroidAction(acting, acted, std::move(q), std::move(nabla));
    } catch (const UnknownCoordinate& e) {
        throw SchemaError(path + "/q", e.what());
    } catch (const SchemaError& e) {
        throw SchemaError(path.empty() ? e.path : path + "/" + e.path, e.what());
    }
}

// ---------------------------------------------------------------------------
// Split extension: {"total": <algebroid>, "sub": <algebroid>,
//                   "acting": <algebroid>, "q": [...], "split_rank": r}.
// ---------------------------------------------------------------------------

inline SplitExtension parse_extension(const Json& j, const std::filesystem::path& base_dir,
                                      const std::string& path = "") {
    using namespace detail;
    Algebroid total = parse_algebroid_ref(member(j, "total", path), base_dir, path + "/total");
    Algebroid sub = parse_algebroid_ref(member(j, "sub", path), base_dir, path + "/sub");
    Algebroid acting = parse_algebroid_ref(member(j, "acting", path), base_dir, path + "/acting");
    auto qcoords = get_string_array(member(j, "q", path), path + "/q");
    std::size_t split_rank = get_size(member(j, "split_rank", path), path + "/split_rank");
    try {
        ChartMap q = ChartMap::projection(sub.base(), acting.base(), qcoords);
        return SplitExtension(total, sub, acting, std::move(q), split_rank);
    } catch (const UnknownCoordinate& e) {
        throw SchemaError(path + "/q", e.what());
    } catch (const SchemaError& e) {
        throw SchemaError(path.empty() ? e.path : path + "/" + e.path, e.what());
    }
}

// ---------------------------------------------------------------------------
// Bivector: {"chart": [names], "components": {"a,b": "poly"}} (a<b, 1-based).
// ---------------------------------------------------------------------------

inline PoissonBivector parse_bivector(const Json& j, const std::string& path = "") {
    using namespace detail;
    Chart chart{get_string_array(member(j, "chart", path), path + "/chart")};
    PoissonBivector b{chart, {}};
    if (j.contains("components")) {
        const Json& c = j.at("components");
        if (!c.is_object()) throw SchemaError(path + "/components", "expected an object");
        for (const auto& [key, value] : c.items()) {
            std::string kpath = path + "/components/" + key;
            auto ab = parse_pair_key(key, kpath);
            if (ab.second >= chart.dim()) throw SchemaError(kpath, "coordinate index out of range");
            b.components.emplace(ab, get_poly(value, chart, kpath));
        }
    }
    b.validate();
    return b;
}

// ---------------------------------------------------------------------------
// Infinitesimal group action:
// {"algebra": {"dim": n, "basis": [names], "constants": {"i,j": [n rationals]}},
//  "chart": [names], "fields": n arrays of m polynomial strings}.
// ---------------------------------------------------------------------------

inline InfinitesimalGroupAction parse_group_action(const Json& j, const std::string& path = "") {
    using namespace detail;
    const Json& aj = member(j, "algebra", path);
    LieAlgebraPresentation algebra;
    std::size_t dim = get_size(member(aj, "dim", path + "/algebra"), path + "/algebra/dim");
    algebra.basis = get_string_array(member(aj, "basis", path + "/algebra"),
                                     path + "/algebra/basis");
    if (algebra.basis.size() != dim)
        throw SchemaError(path + "/algebra/basis", "name count != dim");
    if (aj.contains("constants")) {
        const Json& cj = aj.at("constants");
        if (!cj.is_object()) throw SchemaError(path + "/algebra/constants", "expected an object");
        for (const auto& [key, value] : cj.items()) {
            std::string kpath = path + "/algebra/constants/" + key;
            auto ij = parse_pair_key(key, kpath);
            auto strs = get_string_array(value, kpath);
            std::vector<Rational> row;
            for (const auto& s : strs) {
                try {
                    row.push_back(parse_rational(s));
                } catch (const GrammarError& e) {
                    throw SchemaError(kpath, e.what());
                }
            }
            algebra.constants.emplace(ij, std::move(row));
        }
    }
    Chart chart{get_string_array(member(j, "chart", path), path + "/chart")};
    const Json& fj = member(j, "fields", path);
    if (!fj.is_array()) throw SchemaError(path + "/fields", "expected an array");
    std::vector<VectorField> fields;
    for (std::size_t i = 0; i < fj.size(); ++i)
        fields.emplace_back(chart, get_poly_array(fj[i], chart,
                                                  path + "/fields/" + std::to_string(i + 1)));
    InfinitesimalGroupAction action{std::move(algebra), chart, std::move(fields)};
    action.validate();
    return action;
}

// ---------------------------------------------------------------------------
// Reports.
// ---------------------------------------------------------------------------

inline Json report_to_json(const CheckReport& r) {
    Json j;
    j["subject"] = r.subject;
    Json items = Json::array();
    for (const auto& item : r.items) {
        Json it;
        it["check"] = item.name;
        it["verdict"] = item.pass ? "PASS" : "FAIL";
        if (!item.pass) it["witness"] = item.witness;
        items.push_back(std::move(it));
    }
    j["items"] = std::move(items);
    j["overall"] = r.overall() ? "PASS" : "FAIL";
    return j;
}

inline void write_json_file(const std::filesystem::path& path, const Json& j) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write file: " + path.string());
    out << j.dump(2) << "\n";
}

} // namespace algebroidkit
