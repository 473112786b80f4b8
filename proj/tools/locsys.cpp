// Command-line surface over the library: file-based codecs for every domain
// type, one subcommand per operation, and a seeded `verify` runner for the
// law suites. Exit codes: 0 ok, 1 verification failure, 2 input error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "locsys/verify.hpp"

namespace {

using namespace locsys;

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Document load(const std::string& path) { return decode(read_file(path)); }

void emit(const std::string& out_path, const std::string& text) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw Error("cannot write " + out_path);
    out << text;
}

void emit_json(const std::string& out_path, const Json& j) {
    emit(out_path, j.dump(2) + "\n");
}

template <typename T>
const T& as(const Document& d, const std::string& want) {
    if (const T* p = std::get_if<T>(&d.payload)) return *p;
    throw Error("expected a " + want + " document, got " + d.kind());
}

Json bool_flags_json(bool cof, bool fib, bool we) {
    Json j;
    j["cof"] = cof;
    j["fib"] = fib;
    j["we"] = we;
    return j;
}

const char* cert_str(Cert c) {
    switch (c) {
        case Cert::yes: return "yes";
        case Cert::no: return "no";
        default: return "unknown";
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact kernel for K-linear local systems over finite groupoids"};
    app.require_subcommand(1);

    std::string out_path;
    app.add_option("--out", out_path, "write output to a file instead of stdout");

    std::string in_a, in_b, kind_opt, dir_opt, suite_name, field_opt = "Fp:5";
    std::uint64_t seed = 0;
    int trials = 25, size = 3;

    auto* c_hom = app.add_subcommand("homology", "Betti table of a complex document");
    c_hom->add_option("input", in_a)->required();

    auto* c_cls = app.add_subcommand("classify", "model-structure flags of a map");
    c_cls->add_option("--kind", kind_opt, "chain|groupoid|system|integral")->required();
    c_cls->add_option("input", in_a)->required();

    auto* c_tensor = app.add_subcommand("tensor", "tensor of complexes or systems");
    c_tensor->add_option("left", in_a)->required();
    c_tensor->add_option("right", in_b)->required();

    auto* c_homc = app.add_subcommand("hom", "mapping complex or internal hom");
    c_homc->add_option("left", in_a)->required();
    c_homc->add_option("right", in_b)->required();

    auto* c_pp = app.add_subcommand("pushout-product",
                                    "pushout-product of chain maps or loc morphisms");
    c_pp->add_option("left", in_a)->required();
    c_pp->add_option("right", in_b)->required();

    auto* c_kan = app.add_subcommand("kan", "base change of a system along a functor");
    c_kan->add_option("--dir", dir_opt, "left|pull|right")->required();
    c_kan->add_option("functor", in_a)->required();
    c_kan->add_option("system", in_b)->required();

    auto* c_skel =
        app.add_subcommand("skeletize", "deformation retraction onto a skeleton");
    c_skel->add_option("input", in_a)->required();

    auto* c_ext = app.add_subcommand("external-tensor", "external tensor of loc objects");
    c_ext->add_option("left", in_a)->required();
    c_ext->add_option("right", in_b)->required();

    auto* c_exh = app.add_subcommand("external-hom",
                                     "external hom out of a discrete-base loc object");
    c_exh->add_option("left", in_a)->required();
    c_exh->add_option("right", in_b)->required();

    auto* c_tot = app.add_subcommand("tot", "total complex of a simplicial document");
    c_tot->add_option("input", in_a)->required();

    auto* c_twe = app.add_subcommand("total-we",
                                     "total-quasi-isomorphism test for a simplicial map");
    c_twe->add_option("input", in_a)->required();

    auto* c_enum = app.add_subcommand("enumerate-hom", "exhaustive hom-set enumeration");
    c_enum->add_option("left", in_a)->required();
    c_enum->add_option("right", in_b)->required();

    auto* c_ver = app.add_subcommand("verify", "run a seeded law suite");
    c_ver->add_option("suite", suite_name)->required();
    c_ver->add_option("--seed", seed);
    c_ver->add_option("--trials", trials);
    c_ver->add_option("--size", size);
    c_ver->add_option("--field", field_opt, "field for the field-generic suites");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*c_hom) {
            auto& c = as<ChainComplex>(load(in_a), "complex");
            Json j = Json::object();
            for (auto& [n, b] : homology(c)) j[std::to_string(n)] = b;
            emit_json(out_path, j);
        } else if (*c_cls) {
            Document d = load(in_a);
            if (kind_opt == "chain") {
                ChainFlags f = classify_chain_map(as<ChainMap>(d, "chain_map"));
                emit_json(out_path, bool_flags_json(f.cof, f.fib, f.we));
            } else if (kind_opt == "groupoid") {
                GroupoidFlags f = classify_functor(as<GroupoidFunctor>(d, "functor"));
                emit_json(out_path, bool_flags_json(f.cof, f.fib, f.we));
            } else if (kind_opt == "system") {
                SystemFlags f = classify_system_map(as<SystemMap>(d, "system_map"));
                Json j;
                j["we"] = f.we;
                j["fib"] = f.fib;
                j["cof"] = cert_str(f.cof);
                emit_json(out_path, j);
            } else if (kind_opt == "integral") {
                IntegralFlags f = classify_integral(as<LocMorphism>(d, "loc_morphism"));
                Json j;
                j["we"] = f.we;
                j["fib"] = f.fib;
                j["cof"] = cert_str(f.cof);
                emit_json(out_path, j);
            } else {
                throw Error("unknown --kind " + kind_opt);
            }
        } else if (*c_tensor) {
            Document a = load(in_a), b = load(in_b);
            if (a.kind() == "complex")
                emit(out_path, encode({tensor(as<ChainComplex>(a, "complex"),
                                              as<ChainComplex>(b, "complex"))}));
            else
                emit(out_path, encode({cup_tensor(as<LocalSystem>(a, "system"),
                                                  as<LocalSystem>(b, "system"))}));
        } else if (*c_homc) {
            Document a = load(in_a), b = load(in_b);
            if (a.kind() == "complex")
                emit(out_path, encode({hom_complex(as<ChainComplex>(a, "complex"),
                                                   as<ChainComplex>(b, "complex"))}));
            else
                emit(out_path, encode({internal_hom(as<LocalSystem>(a, "system"),
                                                    as<LocalSystem>(b, "system"))}));
        } else if (*c_pp) {
            Document a = load(in_a), b = load(in_b);
            if (a.kind() == "chain_map")
                emit(out_path,
                     encode({pushout_product_chain(as<ChainMap>(a, "chain_map"),
                                                   as<ChainMap>(b, "chain_map"))}));
            else
                emit(out_path, encode({external_pushout_product(
                                   as<LocMorphism>(a, "loc_morphism"),
                                   as<LocMorphism>(b, "loc_morphism"))}));
        } else if (*c_kan) {
            auto& f = as<GroupoidFunctor>(load(in_a), "functor");
            auto& v = as<LocalSystem>(load(in_b), "system");
            if (dir_opt == "pull")
                emit(out_path, encode({pull_system(f, v)}));
            else if (dir_opt == "left")
                emit(out_path, encode({push_left(f, v).system}));
            else if (dir_opt == "right")
                emit(out_path, encode({push_right(f, v).system}));
            else
                throw Error("unknown --dir " + dir_opt);
        } else if (*c_skel) {
            auto& x = as<FinGroupoid>(load(in_a), "groupoid");
            Skeletization sk = skeletize(x);
            Json j;
            j["skeleton"] = codec::groupoid_to_json(sk.skeleton);
            j["iota"] = codec::functor_maps_to_json(sk.iota);
            j["p"] = codec::functor_maps_to_json(sk.p);
            Json gamma = Json::object();
            for (int o = 0; o < x.num_objects(); ++o)
                gamma[x.object_label(o)] = x.morph(sk.gamma[o]).label;
            j["gamma"] = gamma;
            emit_json(out_path, j);
        } else if (*c_ext) {
            emit(out_path,
                 encode({external_tensor(as<LocObject>(load(in_a), "loc_object"),
                                         as<LocObject>(load(in_b), "loc_object"))}));
        } else if (*c_exh) {
            emit(out_path,
                 encode({external_hom(as<LocObject>(load(in_a), "loc_object"),
                                      as<LocObject>(load(in_b), "loc_object"))}));
        } else if (*c_tot) {
            emit(out_path,
                 encode({tot(as<TruncSimplicialComplex>(load(in_a), "simplicial"))}));
        } else if (*c_twe) {
            // command-specific input: {source, target, components: [per level]}
            Json j;
            try {
                j = Json::parse(read_file(in_a));
            } catch (const nlohmann::json::exception& e) {
                throw ParseError(std::string("parse error: ") + e.what());
            }
            TruncSimplicialComplex src = codec::simplicial_from_json(j.at("source"));
            TruncSimplicialComplex tgt = codec::simplicial_from_json(j.at("target"));
            std::vector<ChainMap> comps;
            const Json& jc = j.at("components");
            for (int n = 0; n <= src.D(); ++n)
                comps.push_back(ChainMap(src.level(n), tgt.level(n),
                                         codec::components_from_json(src.field(),
                                                                     jc.at(n))));
            TruncSimplicialMap f(src, tgt, comps);
            validate_simplicial_map(f);
            Json out;
            out["total_we"] = is_total_we(f);
            emit_json(out_path, out);
        } else if (*c_enum) {
            auto& a = as<LocObject>(load(in_a), "loc_object");
            auto& b = as<LocObject>(load(in_b), "loc_object");
            Json arr = Json::array();
            for (auto& m : hom_enumerate(a, b, default_budget()))
                arr.push_back(Json::parse(encode({m})));
            emit_json(out_path, arr);
        } else if (*c_ver) {
            Field field = Field::parse(field_opt);
            SuiteReport r = run_suite(suite_name, seed, trials, size, field);
            emit_json(out_path, suite_report_to_json(r));
            return r.ok() ? 0 : 1;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
