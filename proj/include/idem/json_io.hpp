#pragma once

#include <cmath>
#include <cstdint>
#include <ostream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "idem/cone.hpp"
#include "idem/convexity.hpp"
#include "idem/errors.hpp"
#include "idem/functorial.hpp"
#include "idem/measure.hpp"

namespace idem::io {

using json = nlohmann::ordered_json;

using any_measure = std::variant<max_min_measure, max_plus_measure>;

[[noreturn]] inline void schema_fail(const std::string& path, const std::string& what) {
    raise(errc::schema_error, path + ": " + what);
}

inline json parse_text(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) raise(errc::parse_error, "input is not valid JSON");
    return j;
}

// --- scalars ------------------------------------------------------------

/// Integer values serialize as JSON numbers (always exact); proper
/// fractions as "p/q"; the infinities as "inf"/"-inf".
inline json scalar_to_json(const ext_scalar& v) {
    if (v.is_finite() && v.finite().is_integer()) return json(v.finite().num());
    return json(v.to_string());
}

inline json rat_to_json(const rat& v) { return scalar_to_json(ext_scalar(v)); }

inline ext_scalar scalar_from_json(const json& j, const std::string& path) {
    if (j.is_number_unsigned() && j.get<std::uint64_t>() > 9223372036854775807ULL)
        schema_fail(path, "integer out of range");
    if (j.is_number_integer()) return ext_scalar(rat(j.get<std::int64_t>()));
    if (j.is_number()) schema_fail(path, "non-integer numbers are inexact; write them as \"p/q\"");
    if (!j.is_string()) schema_fail(path, "expected a number or a scalar string");
    try {
        return ext_scalar::parse(j.get<std::string>());
    } catch (const error&) {
        schema_fail(path, "malformed scalar '" + j.get<std::string>() + "'");
    }
}

inline rat rat_from_json(const json& j, const std::string& path) {
    auto v = scalar_from_json(j, path);
    if (!v.is_finite()) schema_fail(path, "expected a finite rational");
    return v.finite();
}

// --- labels and spaces ---------------------------------------------------

inline json label_to_json(const label& l);
inline label label_from_json(const json& j, const std::string& path);
inline json space_to_json(const finite_space& s);
inline finite_space space_from_json(const json& j, const std::string& path);
inline json measure_to_json(const any_measure& m);
inline any_measure measure_from_json(const json& j, const std::string& path,
                                     std::ostream* diag = nullptr);

inline json label_to_json(const label& l) {
    if (l.is_atom()) return json(l.atom());
    if (l.is_pair()) return json::array({label_to_json(l.first()), label_to_json(l.second())});
    if (l.is_tuple()) {
        json coords = json::array();
        for (const auto& c : l.coords()) coords.push_back(rat_to_json(c));
        return json{{"coords", std::move(coords)}};
    }
    const auto& rep = *l.measure_ptr();
    return rep.kind == measure_kind::max_min
               ? measure_to_json(max_min_measure::from_rep(l.measure_ptr()))
               : measure_to_json(max_plus_measure::from_rep(l.measure_ptr()));
}

inline label label_from_json(const json& j, const std::string& path) {
    if (j.is_string()) return label(j.get<std::string>());
    if (j.is_array()) {
        if (j.size() != 2) schema_fail(path, "a pair label needs exactly two entries");
        return label::pair(label_from_json(j[0], path + "[0]"), label_from_json(j[1], path + "[1]"));
    }
    if (j.is_object() && j.contains("coords")) {
        if (!j["coords"].is_array()) schema_fail(path + ".coords", "expected an array");
        std::vector<rat> coords;
        for (std::size_t i = 0; i < j["coords"].size(); ++i)
            coords.push_back(rat_from_json(j["coords"][i], path + ".coords[" + std::to_string(i) + "]"));
        return label::tuple(std::move(coords));
    }
    if (j.is_object() && j.contains("kind")) {
        auto m = measure_from_json(j, path);
        return std::visit([](const auto& mm) { return mm.as_label(); }, m);
    }
    schema_fail(path, "expected a label (string, pair array, coords object, or measure object)");
}

inline json space_to_json(const finite_space& s) {
    json points = json::array();
    for (const auto& p : s.points()) points.push_back(label_to_json(p));
    return json{{"points", std::move(points)}};
}

inline finite_space space_from_json(const json& j, const std::string& path) {
    if (!j.is_object() || !j.contains("points")) schema_fail(path, "expected {\"points\": [...]}");
    if (!j["points"].is_array()) schema_fail(path + ".points", "expected an array");
    std::vector<label> pts;
    for (std::size_t i = 0; i < j["points"].size(); ++i)
        pts.push_back(label_from_json(j["points"][i], path + ".points[" + std::to_string(i) + "]"));
    try {
        return finite_space::make(std::move(pts));
    } catch (const error& e) {
        schema_fail(path + ".points", e.what());
    }
}

// --- measures -------------------------------------------------------------

inline json measure_to_json(const any_measure& m) {
    return std::visit(
        [](const auto& mm) {
            json atoms = json::array();
            for (const auto& a : mm.atoms())
                atoms.push_back(json{{"point", label_to_json(mm.space().point(a.point))},
                                     {"weight", scalar_to_json(a.weight)}});
            return json{{"kind", kind_name(mm.kind)},
                        {"space", space_to_json(mm.space())},
                        {"atoms", std::move(atoms)}};
        },
        m);
}

inline any_measure measure_from_json(const json& j, const std::string& path, std::ostream* diag) {
    if (!j.is_object() || !j.contains("kind") || !j.contains("space") || !j.contains("atoms"))
        schema_fail(path, "expected {\"kind\", \"space\", \"atoms\"}");
    if (!j["kind"].is_string()) schema_fail(path + ".kind", "expected \"max-min\" or \"max-plus\"");
    std::string kind = j["kind"].get<std::string>();
    if (kind != "max-min" && kind != "max-plus")
        schema_fail(path + ".kind", "expected \"max-min\" or \"max-plus\", got '" + kind + "'");
    auto space = space_from_json(j["space"], path + ".space");
    if (!j["atoms"].is_array()) schema_fail(path + ".atoms", "expected an array");
    std::vector<std::pair<label, ext_scalar>> atoms;
    for (std::size_t i = 0; i < j["atoms"].size(); ++i) {
        const auto& a = j["atoms"][i];
        std::string apath = path + ".atoms[" + std::to_string(i) + "]";
        if (!a.is_object() || !a.contains("point") || !a.contains("weight"))
            schema_fail(apath, "expected {\"point\", \"weight\"}");
        atoms.emplace_back(label_from_json(a["point"], apath + ".point"),
                           scalar_from_json(a["weight"], apath + ".weight"));
    }

    auto notice_if_noncanonical = [&](const auto& built) {
        if (!diag) return;
        bool canonical = built.atoms().size() == atoms.size();
        for (std::size_t i = 0; canonical && i < atoms.size(); ++i) {
            canonical = built.space().point(built.atoms()[i].point) == atoms[i].first &&
                        built.atoms()[i].weight == atoms[i].second;
        }
        if (!canonical)
            *diag << "notice: " << path
                  << ": atom list was not canonical; merged, ordered, and pruned" << std::endl;
    };

    if (kind == "max-min") {
        auto m = max_min_measure::make(space, atoms);
        notice_if_noncanonical(m);
        return m;
    }
    auto m = max_plus_measure::make(space, atoms);
    notice_if_noncanonical(m);
    return m;
}

// --- functions -------------------------------------------------------------

inline json function_to_json(const test_function& f) {
    bool all_atoms = true;
    for (const auto& p : f.space().points()) all_atoms = all_atoms && p.is_atom();
    json values;
    if (all_atoms) {
        values = json::object();
        for (std::size_t i = 0; i < f.space().size(); ++i)
            values[f.space().point(i).atom()] = rat_to_json(f.value(i));
    } else {
        values = json::array();
        for (std::size_t i = 0; i < f.space().size(); ++i)
            values.push_back(json{{"point", label_to_json(f.space().point(i))},
                                  {"value", rat_to_json(f.value(i))}});
    }
    return json{{"space", space_to_json(f.space())}, {"values", std::move(values)}};
}

inline test_function function_from_json(const json& j, const std::string& path) {
    if (!j.is_object() || !j.contains("space") || !j.contains("values"))
        schema_fail(path, "expected {\"space\", \"values\"}");
    auto space = space_from_json(j["space"], path + ".space");
    std::vector<std::pair<label, rat>> values;
    const auto& v = j["values"];
    if (v.is_object()) {
        for (auto it = v.begin(); it != v.end(); ++it)
            values.emplace_back(label(it.key()),
                                rat_from_json(it.value(), path + ".values." + it.key()));
    } else if (v.is_array()) {
        for (std::size_t i = 0; i < v.size(); ++i) {
            std::string vpath = path + ".values[" + std::to_string(i) + "]";
            if (!v[i].is_object() || !v[i].contains("point") || !v[i].contains("value"))
                schema_fail(vpath, "expected {\"point\", \"value\"}");
            values.emplace_back(label_from_json(v[i]["point"], vpath + ".point"),
                                rat_from_json(v[i]["value"], vpath + ".value"));
        }
    } else {
        schema_fail(path + ".values", "expected an object or an array");
    }
    try {
        return test_function::make(space, values);
    } catch (const error& e) {
        if (e.code() == errc::schema_error) throw;
        schema_fail(path + ".values", e.what());
    }
}

// --- maps -------------------------------------------------------------------

inline json map_to_json(const finite_map& f) {
    bool all_atoms = true;
    for (const auto& p : f.source().points()) all_atoms = all_atoms && p.is_atom();
    json assignment;
    if (all_atoms) {
        assignment = json::object();
        for (std::size_t i = 0; i < f.source().size(); ++i)
            assignment[f.source().point(i).atom()] =
                label_to_json(f.target().point(f.image_index(i)));
    } else {
        assignment = json::array();
        for (std::size_t i = 0; i < f.source().size(); ++i)
            assignment.push_back(
                json{{"from", label_to_json(f.source().point(i))},
                     {"to", label_to_json(f.target().point(f.image_index(i)))}});
    }
    return json{{"source", space_to_json(f.source())},
                {"target", space_to_json(f.target())},
                {"assignment", std::move(assignment)}};
}

inline finite_map map_from_json(const json& j, const std::string& path) {
    if (!j.is_object() || !j.contains("source") || !j.contains("target") ||
        !j.contains("assignment"))
        schema_fail(path, "expected {\"source\", \"target\", \"assignment\"}");
    auto source = space_from_json(j["source"], path + ".source");
    auto target = space_from_json(j["target"], path + ".target");
    std::vector<std::pair<label, label>> assignment;
    const auto& a = j["assignment"];
    if (a.is_object()) {
        for (auto it = a.begin(); it != a.end(); ++it)
            assignment.emplace_back(label(it.key()),
                                    label_from_json(it.value(), path + ".assignment." + it.key()));
    } else if (a.is_array()) {
        for (std::size_t i = 0; i < a.size(); ++i) {
            std::string apath = path + ".assignment[" + std::to_string(i) + "]";
            if (!a[i].is_object() || !a[i].contains("from") || !a[i].contains("to"))
                schema_fail(apath, "expected {\"from\", \"to\"}");
            assignment.emplace_back(label_from_json(a[i]["from"], apath + ".from"),
                                    label_from_json(a[i]["to"], apath + ".to"));
        }
    } else {
        schema_fail(path + ".assignment", "expected an object or an array");
    }
    try {
        return finite_map::make(source, target, assignment);
    } catch (const error& e) {
        if (e.code() == errc::schema_error) throw;
        schema_fail(path + ".assignment", e.what());
    }
}

// --- metrics and thresholds ---------------------------------------------------

inline json metric_to_json(const finite_metric& m) {
    json pairs = json::array();
    for (std::size_t i = 0; i < m.space().size(); ++i)
        for (std::size_t j = i + 1; j < m.space().size(); ++j)
            pairs.push_back(json::array({label_to_json(m.space().point(i)),
                                         label_to_json(m.space().point(j)),
                                         rat_to_json(m(i, j))}));
    return json{{"d", std::move(pairs)}};
}

/// Metric entries reference points of an already-known space.
inline finite_metric metric_from_json(const json& j, const finite_space& space,
                                      const std::string& path) {
    if (!j.is_object() || !j.contains("d")) schema_fail(path, "expected {\"d\": [[a, b, r], ...]}");
    if (!j["d"].is_array()) schema_fail(path + ".d", "expected an array of triples");
    std::vector<std::tuple<label, label, rat>> table;
    for (std::size_t i = 0; i < j["d"].size(); ++i) {
        const auto& row = j["d"][i];
        std::string rpath = path + ".d[" + std::to_string(i) + "]";
        if (!row.is_array() || row.size() != 3) schema_fail(rpath, "expected [a, b, distance]");
        table.emplace_back(label_from_json(row[0], rpath + "[0]"),
                           label_from_json(row[1], rpath + "[1]"),
                           rat_from_json(row[2], rpath + "[2]"));
    }
    return finite_metric::validate(space, table);
}

inline json threshold_to_json(const threshold_function& t) {
    bool all_atoms = true;
    for (const auto& p : t.space().points()) all_atoms = all_atoms && p.is_atom();
    json tau;
    if (all_atoms) {
        tau = json::object();
        for (std::size_t i = 0; i < t.space().size(); ++i)
            tau[t.space().point(i).atom()] = rat_to_json(t.tau(i));
    } else {
        tau = json::array();
        for (std::size_t i = 0; i < t.space().size(); ++i)
            tau.push_back(json{{"point", label_to_json(t.space().point(i))},
                               {"height", rat_to_json(t.tau(i))}});
    }
    return json{{"space", space_to_json(t.space())},
                {"metric", metric_to_json(t.metric())},
                {"tau", std::move(tau)}};
}

inline threshold_function threshold_from_json(const json& j, const std::string& path) {
    if (!j.is_object() || !j.contains("space") || !j.contains("metric") || !j.contains("tau"))
        schema_fail(path, "expected {\"space\", \"metric\", \"tau\"}");
    auto space = space_from_json(j["space"], path + ".space");
    auto metric = metric_from_json(j["metric"], space, path + ".metric");
    std::vector<std::pair<label, rat>> heights;
    const auto& tau = j["tau"];
    if (tau.is_object()) {
        for (auto it = tau.begin(); it != tau.end(); ++it)
            heights.emplace_back(label(it.key()), rat_from_json(it.value(), path + ".tau." + it.key()));
    } else if (tau.is_array()) {
        for (std::size_t i = 0; i < tau.size(); ++i) {
            std::string tpath = path + ".tau[" + std::to_string(i) + "]";
            if (!tau[i].is_object() || !tau[i].contains("point") || !tau[i].contains("height"))
                schema_fail(tpath, "expected {\"point\", \"height\"}");
            heights.emplace_back(label_from_json(tau[i]["point"], tpath + ".point"),
                                 rat_from_json(tau[i]["height"], tpath + ".height"));
        }
    } else {
        schema_fail(path + ".tau", "expected an object or an array");
    }
    return threshold_function::saturate(metric, heights);
}

// --- sections and points --------------------------------------------------------

inline json section_to_json(const measure_section& s) {
    json entries = json::array();
    for (std::size_t x = 0; x < s.map().target().size(); ++x)
        entries.push_back(json{{"point", label_to_json(s.map().target().point(x))},
                               {"measure", measure_to_json(s.at_index(x))}});
    return json{{"map", map_to_json(s.map())}, {"section", std::move(entries)}};
}

inline measure_section section_from_json(const json& j, const std::string& path) {
    if (!j.is_object() || !j.contains("map") || !j.contains("section"))
        schema_fail(path, "expected {\"map\", \"section\"}");
    auto f = map_from_json(j["map"], path + ".map");
    if (!j["section"].is_array()) schema_fail(path + ".section", "expected an array");
    std::vector<std::pair<label, max_min_measure>> values;
    for (std::size_t i = 0; i < j["section"].size(); ++i) {
        const auto& row = j["section"][i];
        std::string rpath = path + ".section[" + std::to_string(i) + "]";
        if (!row.is_object() || !row.contains("point") || !row.contains("measure"))
            schema_fail(rpath, "expected {\"point\", \"measure\"}");
        auto m = measure_from_json(row["measure"], rpath + ".measure");
        if (!std::holds_alternative<max_min_measure>(m))
            schema_fail(rpath + ".measure", "section measures must be max-min");
        values.emplace_back(label_from_json(row["point"], rpath + ".point"),
                            std::get<max_min_measure>(m));
    }
    return measure_section::make(f, values);
}

inline json point_to_json(const coord_point& p) {
    json coords = json::array();
    for (const auto& c : p.coords) coords.push_back(rat_to_json(c));
    return json{{"coords", std::move(coords)}};
}

inline coord_point point_from_json(const json& j, const std::string& path) {
    auto l = label_from_json(j, path);
    if (!l.is_tuple()) schema_fail(path, "expected {\"coords\": [...]}");
    return coord_point::from_label(l);
}

}  // namespace idem::io
