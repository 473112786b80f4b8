#pragma once

/// File codecs for every domain type. The text format is JSON with a fixed
/// key order, so encoding is deterministic and golden files diff cleanly.
/// Scalars serialize as decimal integers (prime-field residues) or "a/b"
/// strings (rationals); matrices as row-major nested arrays; degrees as
/// decimal-integer keys; differentials keyed by source degree.

#include <string>
#include <variant>

#include <json.hpp>

#include "locsys/integral.hpp"
#include "locsys/simplicial.hpp"

namespace locsys {

using Json = nlohmann::ordered_json;

inline constexpr const char* kFormatVersion = "locsys/1";

using DocumentPayload =
    std::variant<Field, ChainComplex, ChainMap, FinGroupoid, GroupoidFunctor,
                 LocalSystem, SystemMap, TruncSimplicialComplex, LocObject,
                 LocMorphism>;

struct Document {
    DocumentPayload payload;

    std::string kind() const {
        static const char* names[] = {"field",      "complex",   "chain_map",
                                      "groupoid",   "functor",   "system",
                                      "system_map", "simplicial", "loc_object",
                                      "loc_morphism"};
        return names[payload.index()];
    }

    bool operator==(const Document& o) const { return payload == o.payload; }
};

// ---------------------------------------------------------------------------
// Encoding

namespace codec {

inline Json scalar_to_json(const Field& f, const Scalar& s) {
    if (f.is_rational()) return Json(f.to_string(s));
    return Json(s.get_num().get_si());
}

inline Json matrix_to_json(const Matrix& m) {
    Json j;
    j["rows"] = m.rows();
    j["cols"] = m.cols();
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t c = 0; c < m.cols(); ++c)
            row.push_back(scalar_to_json(m.field(), m.at(i, c)));
        rows.push_back(row);
    }
    j["entries"] = rows;
    return j;
}

inline Json complex_to_json(const ChainComplex& c) {
    Json j;
    j["field"] = c.field().str();
    Json dims = Json::object();
    for (int n = c.lo(); n <= c.hi(); ++n)
        if (c.dim(n) > 0) dims[std::to_string(n)] = c.dim(n);
    j["dims"] = dims;
    Json diffs = Json::object();
    for (int n = c.lo() + 1; n <= c.hi(); ++n) {
        Matrix d = c.diff(n);
        if (!d.is_zero()) diffs[std::to_string(n)] = matrix_to_json(d);
    }
    j["differentials"] = diffs;
    return j;
}

inline Json components_to_json(const std::map<int, Matrix>& comps) {
    Json j = Json::object();
    for (auto& [n, m] : comps)
        if (!m.is_zero()) j[std::to_string(n)] = matrix_to_json(m);
    return j;
}

inline Json chain_map_to_json(const ChainMap& f) {
    Json j;
    j["field"] = f.field().str();
    j["source"] = complex_to_json(f.source());
    j["target"] = complex_to_json(f.target());
    Json comps = Json::object();
    int lo = std::min(f.source().lo(), f.target().lo());
    int hi = std::max(f.source().hi(), f.target().hi());
    for (int n = lo; n <= hi; ++n) {
        Matrix m = f.component(n);
        if (!m.is_zero()) comps[std::to_string(n)] = matrix_to_json(m);
    }
    j["components"] = comps;
    return j;
}

inline Json groupoid_to_json(const FinGroupoid& x) {
    Json j;
    Json objs = Json::array();
    for (int o = 0; o < x.num_objects(); ++o) objs.push_back(x.object_label(o));
    j["objects"] = objs;
    Json morphs = Json::array();
    for (int m = 0; m < x.num_morphisms(); ++m) {
        Json mo;
        mo["label"] = x.morph(m).label;
        mo["src"] = x.object_label(x.src(m));
        mo["tgt"] = x.object_label(x.tgt(m));
        morphs.push_back(mo);
    }
    j["morphisms"] = morphs;
    Json ids = Json::object();
    for (int o = 0; o < x.num_objects(); ++o)
        ids[x.object_label(o)] = x.morph(x.identity(o)).label;
    j["identities"] = ids;
    Json inv = Json::object();
    for (int m = 0; m < x.num_morphisms(); ++m)
        inv[x.morph(m).label] = x.morph(x.inverse(m)).label;
    j["inverses"] = inv;
    Json comp = Json::array();
    for (int g = 0; g < x.num_morphisms(); ++g)
        for (int f = 0; f < x.num_morphisms(); ++f)
            if (x.composable(g, f))
                comp.push_back(Json::array({x.morph(g).label, x.morph(f).label,
                                            x.morph(x.compose(g, f)).label}));
    j["compose"] = comp;
    return j;
}

inline Json functor_maps_to_json(const GroupoidFunctor& f) {
    Json j;
    Json om = Json::object();
    for (int o = 0; o < f.source().num_objects(); ++o)
        om[f.source().object_label(o)] = f.target().object_label(f.on_object(o));
    j["on_objects"] = om;
    Json mm = Json::object();
    for (int m = 0; m < f.source().num_morphisms(); ++m)
        mm[f.source().morph(m).label] = f.target().morph(f.on_morph(m)).label;
    j["on_morphisms"] = mm;
    return j;
}

inline Json functor_to_json(const GroupoidFunctor& f) {
    Json j;
    j["source"] = groupoid_to_json(f.source());
    j["target"] = groupoid_to_json(f.target());
    Json maps = functor_maps_to_json(f);
    j["on_objects"] = maps["on_objects"];
    j["on_morphisms"] = maps["on_morphisms"];
    return j;
}

inline Json system_to_json(const LocalSystem& v) {
    Json j;
    j["field"] = v.field().str();
    j["base"] = groupoid_to_json(v.base());
    Json at = Json::object();
    for (int o = 0; o < v.base().num_objects(); ++o)
        at[v.base().object_label(o)] = complex_to_json(v.at(o));
    j["at"] = at;
    Json along = Json::object();
    for (int m = 0; m < v.base().num_morphisms(); ++m)
        along[v.base().morph(m).label] = components_to_json(v.along_components(m));
    j["along"] = along;
    return j;
}

inline Json system_map_to_json(const SystemMap& phi) {
    Json j;
    j["source"] = system_to_json(phi.source());
    j["target"] = system_to_json(phi.target());
    Json comps = Json::object();
    for (int o = 0; o < phi.base().num_objects(); ++o)
        comps[phi.base().object_label(o)] =
            components_to_json(phi.component_matrices(o));
    j["components"] = comps;
    return j;
}

inline Json simplicial_to_json(const TruncSimplicialComplex& v) {
    Json j;
    j["field"] = v.field().str();
    j["D"] = v.D();
    Json levels = Json::array();
    for (int n = 0; n <= v.D(); ++n) levels.push_back(complex_to_json(v.level(n)));
    j["levels"] = levels;
    Json faces = Json::object();
    for (int n = 1; n <= v.D(); ++n)
        for (int i = 0; i <= n; ++i) {
            Json cm = Json::object();
            const ChainMap& f = v.face(n, i);
            for (int d = f.source().lo(); d <= f.source().hi(); ++d) {
                Matrix m = f.component(d);
                if (!m.is_zero()) cm[std::to_string(d)] = matrix_to_json(m);
            }
            faces[std::to_string(n) + "," + std::to_string(i)] = cm;
        }
    j["faces"] = faces;
    Json degs = Json::object();
    for (int n = 0; n < v.D(); ++n)
        for (int i = 0; i <= n; ++i) {
            Json cm = Json::object();
            const ChainMap& s = v.degeneracy(n, i);
            for (int d = s.source().lo(); d <= s.source().hi(); ++d) {
                Matrix m = s.component(d);
                if (!m.is_zero()) cm[std::to_string(d)] = matrix_to_json(m);
            }
            degs[std::to_string(n) + "," + std::to_string(i)] = cm;
        }
    j["degeneracies"] = degs;
    return j;
}

inline Json loc_object_to_json(const LocObject& a) {
    Json j;
    j["system"] = system_to_json(a.system);
    return j;
}

inline Json loc_morphism_to_json(const LocMorphism& m) {
    Json j;
    j["source"] = loc_object_to_json(m.source());
    j["target"] = loc_object_to_json(m.target());
    j["base_map"] = functor_maps_to_json(m.base_map());
    Json comps = Json::object();
    for (int o = 0; o < m.source().base.num_objects(); ++o)
        comps[m.source().base.object_label(o)] =
            components_to_json(m.component().component_matrices(o));
    j["components"] = comps;
    return j;
}

inline Json payload_to_json(const DocumentPayload& p) {
    return std::visit(
        [](const auto& v) -> Json {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Field>) {
                Json j;
                j["field"] = v.str();
                return j;
            } else if constexpr (std::is_same_v<T, ChainComplex>)
                return complex_to_json(v);
            else if constexpr (std::is_same_v<T, ChainMap>)
                return chain_map_to_json(v);
            else if constexpr (std::is_same_v<T, FinGroupoid>)
                return groupoid_to_json(v);
            else if constexpr (std::is_same_v<T, GroupoidFunctor>)
                return functor_to_json(v);
            else if constexpr (std::is_same_v<T, LocalSystem>)
                return system_to_json(v);
            else if constexpr (std::is_same_v<T, SystemMap>)
                return system_map_to_json(v);
            else if constexpr (std::is_same_v<T, TruncSimplicialComplex>)
                return simplicial_to_json(v);
            else if constexpr (std::is_same_v<T, LocObject>)
                return loc_object_to_json(v);
            else
                return loc_morphism_to_json(v);
        },
        p);
}

// ---------------------------------------------------------------------------
// Decoding

inline ParseError bad(const std::string& reason) {
    return ParseError("parse error: " + reason);
}

inline Scalar scalar_from_json(const Field& f, const Json& j) {
    if (j.is_number_integer()) return f.from_int(j.get<long>());
    if (j.is_string()) return f.from_string(j.get<std::string>());
    throw bad("scalar must be an integer or an \"a/b\" string");
}

inline Matrix matrix_from_json(const Field& f, const Json& j) {
    if (!j.is_object() || !j.contains("rows") || !j.contains("cols") ||
        !j.contains("entries"))
        throw bad("matrix needs rows, cols, entries");
    std::size_t rows = j.at("rows").get<std::size_t>();
    std::size_t cols = j.at("cols").get<std::size_t>();
    const Json& e = j.at("entries");
    if (!e.is_array() || e.size() != rows) throw bad("matrix row count mismatch");
    Matrix m(rows, cols, f);
    for (std::size_t i = 0; i < rows; ++i) {
        if (!e[i].is_array() || e[i].size() != cols)
            throw bad("matrix column count mismatch");
        for (std::size_t c = 0; c < cols; ++c) m.at(i, c) = scalar_from_json(f, e[i][c]);
    }
    return m;
}

inline int degree_key(const std::string& k) {
    try {
        std::size_t used = 0;
        int v = std::stoi(k, &used);
        if (used != k.size()) throw bad("bad degree key: " + k);
        return v;
    } catch (const std::exception&) {
        throw bad("bad degree key: " + k);
    }
}

inline Field field_from_json(const Json& j) {
    if (!j.is_string()) throw bad("field must be a string");
    try {
        return Field::parse(j.get<std::string>());
    } catch (const Error& e) {
        throw bad(e.what());
    }
}

inline ChainComplex complex_from_json(const Json& j) {
    Field f = field_from_json(j.at("field"));
    std::map<int, int> dims;
    for (auto& [k, v] : j.at("dims").items()) dims[degree_key(k)] = v.get<int>();
    std::map<int, Matrix> diffs;
    if (j.contains("differentials"))
        for (auto& [k, v] : j.at("differentials").items())
            diffs[degree_key(k)] = matrix_from_json(f, v);
    try {
        ChainComplex c(f, dims, diffs);
        validate_complex(c);
        return c;
    } catch (const Error& e) {
        throw bad(e.what());
    }
}

inline std::map<int, Matrix> components_from_json(const Field& f, const Json& j) {
    std::map<int, Matrix> comps;
    for (auto& [k, v] : j.items()) comps[degree_key(k)] = matrix_from_json(f, v);
    return comps;
}

inline ChainMap chain_map_from_json(const Json& j) {
    Field f = field_from_json(j.at("field"));
    ChainComplex src = complex_from_json(j.at("source"));
    ChainComplex tgt = complex_from_json(j.at("target"));
    try {
        ChainMap m(src, tgt, components_from_json(f, j.at("components")));
        validate_chain_map(m);
        return m;
    } catch (const Error& e) {
        throw bad(e.what());
    }
}

inline FinGroupoid groupoid_from_json(const Json& j) {
    std::vector<std::string> objects;
    for (auto& o : j.at("objects")) objects.push_back(o.get<std::string>());
    std::map<std::string, int> oidx;
    for (std::size_t i = 0; i < objects.size(); ++i)
        oidx[objects[i]] = static_cast<int>(i);
    std::vector<Morph> morphs;
    std::map<std::string, int> midx;
    for (auto& m : j.at("morphisms")) {
        std::string label = m.at("label").get<std::string>();
        std::string src = m.at("src").get<std::string>();
        std::string tgt = m.at("tgt").get<std::string>();
        if (!oidx.count(src) || !oidx.count(tgt)) throw bad("morphism endpoint unknown");
        if (midx.count(label)) throw bad("duplicate morphism label " + label);
        midx[label] = static_cast<int>(morphs.size());
        morphs.push_back({label, oidx[src], oidx[tgt]});
    }
    auto mor = [&](const Json& v) {
        std::string l = v.get<std::string>();
        if (!midx.count(l)) throw bad("unknown morphism label " + l);
        return midx[l];
    };
    std::vector<int> ids(objects.size(), -1), inv(morphs.size(), -1);
    for (auto& [k, v] : j.at("identities").items()) {
        if (!oidx.count(k)) throw bad("identity of unknown object " + k);
        ids[oidx[k]] = mor(v);
    }
    for (auto& [k, v] : j.at("inverses").items()) {
        if (!midx.count(k)) throw bad("inverse of unknown morphism " + k);
        inv[midx[k]] = mor(v);
    }
    for (int v : ids)
        if (v < 0) throw bad("missing identity");
    for (int v : inv)
        if (v < 0) throw bad("missing inverse");
    std::vector<std::vector<int>> comp(morphs.size(),
                                       std::vector<int>(morphs.size(), -1));
    for (auto& t : j.at("compose")) {
        if (!t.is_array() || t.size() != 3) throw bad("compose entries are triples");
        comp[mor(t[0])][mor(t[1])] = mor(t[2]);
    }
    FinGroupoid x(objects, morphs, ids, inv, comp);
    try {
        validate_groupoid(x);
    } catch (const Error& e) {
        throw bad(e.what());
    }
    return x;
}

inline GroupoidFunctor functor_from_parts(const FinGroupoid& src, const FinGroupoid& tgt,
                                          const Json& on_objects,
                                          const Json& on_morphisms) {
    std::vector<int> om(src.num_objects(), -1), mm(src.num_morphisms(), -1);
    for (auto& [k, v] : on_objects.items())
        om[src.object_index(k)] = tgt.object_index(v.get<std::string>());
    for (auto& [k, v] : on_morphisms.items())
        mm[src.morph_index(k)] = tgt.morph_index(v.get<std::string>());
    for (int v : om)
        if (v < 0) throw bad("functor object map incomplete");
    for (int v : mm)
        if (v < 0) throw bad("functor morphism map incomplete");
    GroupoidFunctor f(src, tgt, om, mm);
    try {
        validate_functor(f);
    } catch (const Error& e) {
        throw bad(e.what());
    }
    return f;
}

inline GroupoidFunctor functor_from_json(const Json& j) {
    FinGroupoid src = groupoid_from_json(j.at("source"));
    FinGroupoid tgt = groupoid_from_json(j.at("target"));
    return functor_from_parts(src, tgt, j.at("on_objects"), j.at("on_morphisms"));
}

inline LocalSystem system_from_json(const Json& j) {
    Field f = field_from_json(j.at("field"));
    FinGroupoid base = groupoid_from_json(j.at("base"));
    std::vector<ChainComplex> at(base.num_objects(), ChainComplex(f));
    for (auto& [k, v] : j.at("at").items()) at[base.object_index(k)] = complex_from_json(v);
    std::vector<std::map<int, Matrix>> along(base.num_morphisms());
    for (auto& [k, v] : j.at("along").items())
        along[base.morph_index(k)] = components_from_json(f, v);
    try {
        LocalSystem s(base, at, along, f);
        validate_system(s);
        return s;
    } catch (const Error& e) {
        throw bad(e.what());
    }
}

inline SystemMap system_map_from_json(const Json& j) {
    LocalSystem src = system_from_json(j.at("source"));
    LocalSystem tgt = system_from_json(j.at("target"));
    std::vector<std::map<int, Matrix>> comps(src.base().num_objects());
    for (auto& [k, v] : j.at("components").items())
        comps[src.base().object_index(k)] = components_from_json(src.field(), v);
    try {
        SystemMap m(src, tgt, comps);
        validate_system_map(m);
        return m;
    } catch (const Error& e) {
        throw bad(e.what());
    }
}

inline TruncSimplicialComplex simplicial_from_json(const Json& j) {
    Field f = field_from_json(j.at("field"));
    int D = j.at("D").get<int>();
    std::vector<ChainComplex> levels;
    for (auto& l : j.at("levels")) levels.push_back(complex_from_json(l));
    if (static_cast<int>(levels.size()) != D + 1) throw bad("level count mismatch");
    auto key = [&](int n, int i) { return std::to_string(n) + "," + std::to_string(i); };
    std::vector<std::vector<ChainMap>> faces, degs;
    const Json& jf = j.at("faces");
    for (int n = 1; n <= D; ++n) {
        std::vector<ChainMap> fs;
        for (int i = 0; i <= n; ++i) {
            if (!jf.contains(key(n, i))) throw bad("missing face " + key(n, i));
            fs.push_back(ChainMap(levels[n], levels[n - 1],
                                  components_from_json(f, jf.at(key(n, i)))));
        }
        faces.push_back(std::move(fs));
    }
    const Json& jd = j.at("degeneracies");
    for (int n = 0; n < D; ++n) {
        std::vector<ChainMap> ss;
        for (int i = 0; i <= n; ++i) {
            if (!jd.contains(key(n, i))) throw bad("missing degeneracy " + key(n, i));
            ss.push_back(ChainMap(levels[n], levels[n + 1],
                                  components_from_json(f, jd.at(key(n, i)))));
        }
        degs.push_back(std::move(ss));
    }
    try {
        TruncSimplicialComplex v(levels, faces, degs);
        validate_simplicial(v);
        return v;
    } catch (const Error& e) {
        throw bad(e.what());
    }
}

inline LocObject loc_object_from_json(const Json& j) {
    LocalSystem s = system_from_json(j.at("system"));
    return LocObject(s.base(), s);
}

inline LocMorphism loc_morphism_from_json(const Json& j) {
    LocObject src = loc_object_from_json(j.at("source"));
    LocObject tgt = loc_object_from_json(j.at("target"));
    GroupoidFunctor f = functor_from_parts(src.base, tgt.base,
                                           j.at("base_map").at("on_objects"),
                                           j.at("base_map").at("on_morphisms"));
    std::vector<std::map<int, Matrix>> comps(src.base.num_objects());
    for (auto& [k, v] : j.at("components").items())
        comps[src.base.object_index(k)] =
            components_from_json(src.system.field(), v);
    try {
        SystemMap comp(src.system, pull_system(f, tgt.system), comps);
        LocMorphism m(src, tgt, f, comp);
        validate_loc_morphism(m);
        return m;
    } catch (const Error& e) {
        throw bad(e.what());
    }
}

}  // namespace codec

inline std::string encode(const Document& d) {
    Json j;
    j["format_version"] = kFormatVersion;
    j["kind"] = d.kind();
    j["payload"] = codec::payload_to_json(d.payload);
    return j.dump(2) + "\n";
}

inline Document decode(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("parse error: ") + e.what());
    }
    if (!j.contains("format_version"))
        throw VersionMismatch("missing format_version");
    if (j.at("format_version").get<std::string>() != kFormatVersion)
        throw VersionMismatch("unsupported format_version " +
                              j.at("format_version").dump());
    if (!j.contains("kind") || !j.contains("payload")) throw codec::bad("missing kind/payload");
    std::string kind = j.at("kind").get<std::string>();
    const Json& p = j.at("payload");
    try {
        if (kind == "field") return {codec::field_from_json(p.at("field"))};
        if (kind == "complex") return {codec::complex_from_json(p)};
        if (kind == "chain_map") return {codec::chain_map_from_json(p)};
        if (kind == "groupoid") return {codec::groupoid_from_json(p)};
        if (kind == "functor") return {codec::functor_from_json(p)};
        if (kind == "system") return {codec::system_from_json(p)};
        if (kind == "system_map") return {codec::system_map_from_json(p)};
        if (kind == "simplicial") return {codec::simplicial_from_json(p)};
        if (kind == "loc_object") return {codec::loc_object_from_json(p)};
        if (kind == "loc_morphism") return {codec::loc_morphism_from_json(p)};
    } catch (const Json::exception& e) {
        throw ParseError(std::string("parse error: ") + e.what());
    }
    throw ParseError("unknown document kind: " + kind);
}

}  // namespace locsys
