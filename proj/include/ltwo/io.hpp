#ifndef LTWO_IO_HPP
#define LTWO_IO_HPP

// JSON forms of every value the command-line tool reads or writes.
//
//   matrix:            {"rows": m, "cols": n, "data": [[re, im], ...]}  (row-major)
//   finite set:        ["a", "b", ...]
//   partial injection: {"dom": [...], "cod": [...], "pairs": [[x, y], ...]}
//   chain:             {"stages": [[...], ...], "links": [pinj, ...]}
//   presentation:      {"objects": [...], "morphisms": [{"id","src","dst"}],
//                       "compose": [[g, f, gf], ...], "dagger": [[f, fd], ...],
//                       "identities": {obj: id}}

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "ltwo/error.hpp"
#include "ltwo/factorize.hpp"
#include "ltwo/hilb.hpp"
#include "ltwo/inversecat.hpp"
#include "ltwo/numerics.hpp"
#include "ltwo/pinj.hpp"

namespace ltwo {

using Json = nlohmann::ordered_json;

namespace detail {
inline const Json& field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) {
        throw Error(ErrorCode::parse, std::string("missing field '") + key + "'");
    }
    return j.at(key);
}

inline const Json& array_field(const Json& j, const char* key) {
    const Json& a = field(j, key);
    if (!a.is_array()) {
        throw Error(ErrorCode::parse, std::string("field '") + key + "' must be an array");
    }
    return a;
}

inline std::string as_string(const Json& j, const char* what) {
    if (!j.is_string()) {
        throw Error(ErrorCode::parse, std::string(what) + " must be a string");
    }
    return j.get<std::string>();
}

inline std::size_t as_size(const Json& j, const char* what) {
    if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0)) {
        throw Error(ErrorCode::parse, std::string(what) + " must be a non-negative integer");
    }
    return j.get<std::size_t>();
}
} // namespace detail

inline Json parse_json(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::parse, e.what());
    }
}

namespace detail {
inline void write_number(std::string& out, double x) {
    if (!std::isfinite(x)) {
        out += "null";
        return;
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    out += buf;
    if (std::string_view(buf).find_first_of(".e") == std::string_view::npos) {
        out += ".0";
    }
}

inline void write_json(std::string& out, const Json& j, int indent, int depth) {
    const auto newline = [&](int d) {
        if (indent >= 0) {
            out += '\n';
            out.append(static_cast<std::size_t>(indent * d), ' ');
        }
    };
    const char* colon = indent >= 0 ? ": " : ":";
    switch (j.type()) {
    case Json::value_t::object: {
        if (j.empty()) {
            out += "{}";
            return;
        }
        out += '{';
        bool first = true;
        for (const auto& [key, value] : j.items()) {
            out += first ? "" : ",";
            first = false;
            newline(depth + 1);
            out += Json(key).dump();
            out += colon;
            write_json(out, value, indent, depth + 1);
        }
        newline(depth);
        out += '}';
        return;
    }
    case Json::value_t::array: {
        if (j.empty()) {
            out += "[]";
            return;
        }
        out += '[';
        bool first = true;
        for (const auto& value : j) {
            out += first ? "" : ",";
            first = false;
            newline(depth + 1);
            write_json(out, value, indent, depth + 1);
        }
        newline(depth);
        out += ']';
        return;
    }
    case Json::value_t::number_float:
        write_number(out, j.get<double>());
        return;
    default:
        out += j.dump();
        return;
    }
}
} // namespace detail

/// Serializes with every floating-point number at 17 significant digits.
/// A negative indent gives the compact single-line form.
inline std::string dump_json(const Json& j, int indent = 2) {
    std::string out;
    detail::write_json(out, j, indent, 0);
    return out;
}

inline Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCode::parse, "cannot open '" + path + "'");
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_json(buf.str());
}

// --- matrices ---------------------------------------------------------------

inline Json to_json(const Matrix& a) {
    Json data = Json::array();
    for (const auto& z : a.data()) {
        data.push_back(Json::array({z.real(), z.imag()}));
    }
    return Json{{"rows", a.rows()}, {"cols", a.cols()}, {"data", std::move(data)}};
}

inline Matrix matrix_from_json(const Json& j) {
    const auto rows = detail::as_size(detail::field(j, "rows"), "rows");
    const auto cols = detail::as_size(detail::field(j, "cols"), "cols");
    const auto& data = detail::field(j, "data");
    if (!data.is_array() || data.size() != rows * cols) {
        throw Error(ErrorCode::parse, "matrix data must hold rows*cols = " + std::to_string(rows * cols) + " entries");
    }
    std::vector<Complex> entries;
    entries.reserve(data.size());
    for (const auto& e : data) {
        if (e.is_number()) {
            entries.emplace_back(e.get<double>(), 0.0);
        } else if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
            entries.emplace_back(e[0].get<double>(), e[1].get<double>());
        } else {
            throw Error(ErrorCode::parse, "matrix entries must be [re, im] pairs");
        }
    }
    return Matrix(rows, cols, std::move(entries));
}

// --- finite sets and partial injections -------------------------------------

inline Json to_json(const FiniteSet& x) { return Json(x.labels()); }

inline FiniteSet finite_set_from_json(const Json& j) {
    if (!j.is_array()) {
        throw Error(ErrorCode::parse, "a finite set is an array of labels");
    }
    std::vector<std::string> labels;
    for (const auto& l : j) {
        labels.push_back(detail::as_string(l, "label"));
    }
    return FiniteSet(std::move(labels));
}

inline Json to_json(const PartialInjection& f) {
    Json pairs = Json::array();
    for (const auto& [x, y] : f.pairs()) {
        pairs.push_back(Json::array({x, y}));
    }
    return Json{{"dom", to_json(f.dom())}, {"cod", to_json(f.cod())}, {"pairs", std::move(pairs)}};
}

inline PartialInjection partial_injection_from_json(const Json& j) {
    auto dom = finite_set_from_json(detail::field(j, "dom"));
    auto cod = finite_set_from_json(detail::field(j, "cod"));
    const auto& pj = detail::field(j, "pairs");
    if (!pj.is_array()) {
        throw Error(ErrorCode::parse, "pairs must be an array");
    }
    std::vector<std::pair<std::string, std::string>> pairs;
    for (const auto& p : pj) {
        if (!p.is_array() || p.size() != 2) {
            throw Error(ErrorCode::parse, "each pair must be [x, y]");
        }
        pairs.emplace_back(detail::as_string(p[0], "pair component"), detail::as_string(p[1], "pair component"));
    }
    return PartialInjection(std::move(dom), std::move(cod), pairs);
}

inline Json to_json(const ChainDiagram& d) {
    Json stages = Json::array();
    for (const auto& s : d.stages()) {
        stages.push_back(to_json(s));
    }
    Json links = Json::array();
    for (const auto& l : d.links()) {
        links.push_back(to_json(l));
    }
    return Json{{"stages", std::move(stages)}, {"links", std::move(links)}};
}

inline ChainDiagram chain_from_json(const Json& j) {
    const auto& sj = detail::field(j, "stages");
    const auto& lj = detail::field(j, "links");
    if (!sj.is_array() || !lj.is_array()) {
        throw Error(ErrorCode::parse, "stages and links must be arrays");
    }
    std::vector<FiniteSet> stages;
    for (const auto& s : sj) {
        stages.push_back(finite_set_from_json(s));
    }
    std::vector<PartialInjection> links;
    for (const auto& l : lj) {
        links.push_back(partial_injection_from_json(l));
    }
    return ChainDiagram(std::move(stages), std::move(links));
}

inline Json to_json(const ChainColimit& c) {
    Json cocone = Json::array();
    for (const auto& leg : c.cocone) {
        cocone.push_back(to_json(leg));
    }
    return Json{{"object", to_json(c.object)}, {"cocone", std::move(cocone)}};
}

// --- inverse category presentations -----------------------------------------

inline Json to_json(const InverseCategoryPresentation& p) {
    Json morphisms = Json::array();
    for (const auto& m : p.morphisms) {
        morphisms.push_back(Json{{"id", m.id}, {"src", m.src}, {"dst", m.dst}});
    }
    Json compose = Json::array();
    for (const auto& [g, f, gf] : p.composition) {
        compose.push_back(Json::array({g, f, gf}));
    }
    Json dag = Json::array();
    for (const auto& [f, fd] : p.dagger) {
        dag.push_back(Json::array({f, fd}));
    }
    Json ids = Json::object();
    for (const auto& [obj, id] : p.identities) {
        ids[obj] = id;
    }
    return Json{{"objects", p.objects},
                {"morphisms", std::move(morphisms)},
                {"compose", std::move(compose)},
                {"dagger", std::move(dag)},
                {"identities", std::move(ids)}};
}

inline InverseCategoryPresentation presentation_from_json(const Json& j) {
    InverseCategoryPresentation p;
    for (const auto& o : detail::array_field(j, "objects")) {
        p.objects.push_back(detail::as_string(o, "object"));
    }
    for (const auto& m : detail::array_field(j, "morphisms")) {
        p.morphisms.push_back({detail::as_string(detail::field(m, "id"), "id"),
                               detail::as_string(detail::field(m, "src"), "src"),
                               detail::as_string(detail::field(m, "dst"), "dst")});
    }
    for (const auto& c : detail::array_field(j, "compose")) {
        if (!c.is_array() || c.size() != 3) {
            throw Error(ErrorCode::parse, "compose entries are [g, f, gf]");
        }
        p.composition.push_back({detail::as_string(c[0], "g"), detail::as_string(c[1], "f"),
                                 detail::as_string(c[2], "gf")});
    }
    for (const auto& d : detail::array_field(j, "dagger")) {
        if (!d.is_array() || d.size() != 2) {
            throw Error(ErrorCode::parse, "dagger entries are [f, fd]");
        }
        p.dagger.emplace_back(detail::as_string(d[0], "f"), detail::as_string(d[1], "fd"));
    }
    const auto& ids = detail::field(j, "identities");
    if (!ids.is_object()) {
        throw Error(ErrorCode::parse, "identities must be an object");
    }
    for (const auto& [obj, id] : ids.items()) {
        p.identities[obj] = detail::as_string(id, "identity");
    }
    return p;
}

inline Json to_json(const LawReport& r) {
    Json laws = Json::array();
    for (const auto& l : r.laws) {
        Json entry{{"law", l.law}, {"passed", l.passed}};
        if (!l.passed) {
            entry["witness"] = l.witness;
        }
        laws.push_back(std::move(entry));
    }
    return Json{{"passed", r.passed()}, {"laws", std::move(laws)}};
}

inline Json to_json(const WagnerPrestonEmbedding& F, const InverseCategoryPresentation& p) {
    Json objects = Json::object();
    for (std::size_t x = 0; x < p.objects.size(); ++x) {
        objects[p.objects[x]] = to_json(F.objects[x]);
    }
    Json morphisms = Json::object();
    for (std::size_t f = 0; f < p.morphisms.size(); ++f) {
        morphisms[p.morphisms[f].id] = to_json(F.morphisms[f]);
    }
    return Json{{"objects", std::move(objects)}, {"morphisms", std::move(morphisms)}};
}

inline WagnerPrestonEmbedding embedding_from_json(const Json& j, const InverseCategoryPresentation& p) {
    const auto& objects = detail::field(j, "objects");
    const auto& morphisms = detail::field(j, "morphisms");
    if (!objects.is_object() || !morphisms.is_object()) {
        throw Error(ErrorCode::parse, "embedding objects and morphisms must be objects keyed by name");
    }
    WagnerPrestonEmbedding F;
    for (const auto& x : p.objects) {
        F.objects.push_back(finite_set_from_json(detail::field(objects, x.c_str())));
    }
    for (const auto& m : p.morphisms) {
        F.morphisms.push_back(partial_injection_from_json(detail::field(morphisms, m.id.c_str())));
    }
    return F;
}

// --- Hilbert-space reports --------------------------------------------------

inline Json to_json(const OperatorClass& c) {
    return Json{{"is_partial_isometry", c.is_partial_isometry},
                {"is_isometry", c.is_isometry},
                {"is_unitary", c.is_unitary},
                {"is_self_adjoint", c.is_self_adjoint},
                {"is_nonnegative", c.is_nonnegative},
                {"is_positive_definite", c.is_positive_definite},
                {"is_projection", c.is_projection},
                {"tolerance", c.tolerance},
                {"residuals",
                 Json{{"partial_isometry", c.partial_isometry_residual},
                      {"isometry", c.isometry_residual},
                      {"coisometry", c.coisometry_residual},
                      {"self_adjoint", c.self_adjoint_residual},
                      {"idempotent", c.idempotent_residual},
                      {"min_eigenvalue", c.min_eigenvalue}}}};
}

inline Json to_json(const PolarResult& p) {
    return Json{{"side", p.side == PolarSide::left ? "left" : "right"},
                {"flavor", p.flavor == PolarFlavor::strong ? "strong" : "kernel_matched"},
                {"isometry_part", to_json(p.isometry_part)},
                {"positive_part", to_json(p.positive_part)}};
}

inline Json to_json(const LtwoFactorization& f, double residual) {
    return Json{{"mode", f.mode == FactorizationMode::general ? "general" : "isometric"},
                {"u", to_json(f.u)},
                {"f", to_json(f.f)},
                {"v", to_json(f.v)},
                {"residual", residual}};
}

} // namespace ltwo

#endif // LTWO_IO_HPP
