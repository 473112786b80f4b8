#pragma once

/// Seeded randomized law suites with counterexample dumps. Every suite is
/// deterministic in (seed, trials, size); a failing trial serializes a
/// standalone reproducer document.

#include <functional>
#include <string>
#include <vector>

#include "locsys/codec.hpp"

namespace locsys {

struct SuiteFailure {
    std::uint64_t seed;
    Document counterexample;
};

struct SuiteReport {
    std::string suite;
    int trials = 0;
    std::vector<SuiteFailure> failures;

    bool ok() const { return failures.empty(); }
};

inline Json suite_report_to_json(const SuiteReport& r) {
    Json j;
    j["suite"] = r.suite;
    j["trials"] = r.trials;
    Json fails = Json::array();
    for (auto& f : r.failures) {
        Json e;
        e["seed"] = f.seed;
        e["counterexample"] = Json::parse(encode(f.counterexample));
        fails.push_back(e);
    }
    j["failures"] = fails;
    return j;
}

namespace verify_detail {

inline Rng trial_rng(std::uint64_t seed, int trial) {
    std::seed_seq seq{seed, static_cast<std::uint64_t>(trial)};
    return Rng(seq);
}

/// Collects failures for one trial; the counterexample is the last document
/// registered before a check failed.
struct Trial {
    std::uint64_t seed;
    Rng rng;
    SuiteReport* report;
    Field field = Field::prime(5);
    Document evidence{Field::rationals()};
    bool failed = false;

    void set_evidence(DocumentPayload p) { evidence = Document{std::move(p)}; }

    void check(bool condition) {
        if (condition || failed) return;
        failed = true;
        report->failures.push_back({seed, evidence});
    }
};

/// Smaller random base for the tensor-heavy suites: groups of order <= 3.
inline FinGroupoid small_groupoid(Rng& rng, int max_objects) {
    GroupTable g;
    switch (std::uniform_int_distribution<int>(0, 2)(rng)) {
        case 0: g = trivial_group(); break;
        case 1: g = cyclic_group(2); break;
        default: g = cyclic_group(3); break;
    }
    int k = std::uniform_int_distribution<int>(1, std::max(1, max_objects))(rng);
    return product(delooping(g), codiscrete(k));
}

inline BettiTable kunneth(const BettiTable& a, const BettiTable& b) {
    BettiTable out;
    for (auto& [m, dm] : a)
        for (auto& [n, dn] : b) out[m + n] += dm * dn;
    for (auto it = out.begin(); it != out.end();)
        it = it->second == 0 ? out.erase(it) : std::next(it);
    return out;
}

}  // namespace verify_detail

using SuiteFn = std::function<void(verify_detail::Trial&, int size)>;

// ---------------------------------------------------------------------------
// Suite bodies

namespace suites {

using verify_detail::Trial;

/// Thm. 2.3-style generator check: over F2, F3 and Q the pushout-products of
/// generating (acyclic) cofibrations classify as expected.
inline void pushout_product_generators(Trial& t, int) {
    for (const Field& F : {Field::prime(2), Field::prime(3), Field::rationals()})
        for (int m = 0; m <= 2; ++m)
            for (int n = 0; n <= 2; ++n) {
                ChainMap pp = pushout_product_chain(gen_cof(m, F), gen_cof(n, F));
                t.set_evidence(pp);
                ChainFlags c = classify_chain_map(pp);
                t.check(c.cof && !c.we);
                ChainMap pa =
                    pushout_product_chain(gen_cof(m, F), gen_acyclic_cof(n, F));
                t.set_evidence(pa);
                ChainFlags a = classify_chain_map(pa);
                t.check(a.cof && a.we);
            }
}

/// dim Z_0([V,W]) equals the solution-space dimension of the direct
/// chain-map equations.
inline void mapping_cycles(Trial& t, int size) {
    const Field& F = t.field;
    ChainComplex v = random_complex(t.rng, F, -2, 2, std::max(1, size));
    ChainComplex w = random_complex(t.rng, F, -2, 2, std::max(1, size));
    t.set_evidence(ChainMap::zero(v, w));
    t.check(cycle_dim(hom_complex(v, w), 0) == chain_map_space_dim(v, w));
}

/// H_*(tot(const(V, D))) = H_*(V).
inline void tot_const(Trial& t, int size) {
    const Field& F = t.field;
    ChainComplex v = random_complex(t.rng, F, -1, 2, std::max(1, size));
    int d = std::uniform_int_distribution<int>(1, 3)(t.rng);
    TruncSimplicialComplex cv = const_simplicial(v, d);
    t.set_evidence(cv);
    t.check(homology(tot(cv)) == homology(v));
}

/// Skeletization contract: p o iota = id, gamma natural, iota a weak
/// equivalence, gamma the identity at basepoints.
inline void skeletization(Trial& t, int size) {
    FinGroupoid x = random_groupoid(t.rng, std::max(2, size));
    t.set_evidence(x);
    Skeletization sk = skeletize(x);
    t.check(compose(sk.p, sk.iota) == GroupoidFunctor::identity(sk.skeleton));
    t.check(classify_functor(sk.iota).we);
    for (int o = 0; o < sk.skeleton.num_objects(); ++o)
        t.check(sk.gamma[sk.iota.on_object(o)] == x.identity(sk.iota.on_object(o)));
    for (int m = 0; m < x.num_morphisms(); ++m) {
        int lhs = x.compose(sk.gamma[x.tgt(m)], sk.iota.on_morph(sk.p.on_morph(m)));
        int rhs = x.compose(m, sk.gamma[x.src(m)]);
        t.check(lhs == rhs);
    }
}

/// Triangle identities for f_! -| f^* and f^* -| f_*.
inline void triangle_identities(Trial& t, int size) {
    const Field F = Field::prime(5);
    GroupoidFunctor f = random_functor(t.rng, std::max(1, size / 2));
    t.set_evidence(f);
    LocalSystem v = random_system(t.rng, f.source(), F, 0, 1, 2);
    LocalSystem w = random_system(t.rng, f.target(), F, 0, 1, 2);

    LeftKan lk = push_left(f, v);
    t.check(transpose_left(f, lk, v, lk.system, lk.unit) ==
            SystemMap::identity(lk.system));
    LocalSystem fw = pull_system(f, w);
    LeftKan lk2 = push_left(f, fw);
    SystemMap eps = transpose_left(f, lk2, fw, w, SystemMap::identity(fw));
    t.check(untranspose_left(f, lk2, w, eps) == SystemMap::identity(fw));

    RightKan rk = push_right(f, v);
    t.check(transpose_right(f, rk, v, rk.system, rk.counit) ==
            SystemMap::identity(rk.system));
    RightKan rk2 = push_right(f, fw);
    SystemMap eta = transpose_right(f, rk2, fw, w, SystemMap::identity(fw));
    t.check(untranspose_right(f, rk2, w, eta) == SystemMap::identity(fw));
}

/// Induced representations along C2 <= C4 and C3 <= S3: index formula for
/// the dimensions and the section-built comparison map an isomorphism.
inline void induced_index(Trial& t, int) {
    const Field F = Field::prime(5);
    struct Inst {
        GroupTable h, g;
        std::vector<int> hom;
    };
    const std::vector<Inst> insts = {
        {cyclic_group(2), cyclic_group(4), cyclic_hom(2, cyclic_group(4), 2)},
        {cyclic_group(3), symmetric_group(3), cyclic_hom(3, symmetric_group(3), 3)}};
    for (auto& inst : insts) {
        GroupoidFunctor f = delooping_functor(inst.h, inst.g, inst.hom);
        LocalSystem v = random_system(t.rng, f.source(), F, 0, 1, 2);
        t.set_evidence(v);
        LeftKan lk = push_left(f, v);
        int index = inst.g.order() / inst.h.order();
        for (int n = v.at(0).lo(); n <= v.at(0).hi(); ++n)
            t.check(lk.system.at(0).dim(n) == index * v.at(0).dim(n));
        int G = inst.g.order(), H = inst.h.order();
        std::vector<int> coset(G, -1), trans(G, -1);
        int ncos = 0;
        for (int a = 0; a < G; ++a) {
            if (coset[a] >= 0) continue;
            for (int b = 0; b < H; ++b) {
                int gb = inst.g.mul[a][inst.hom[b]];
                coset[gb] = ncos;
                trans[gb] = b;
            }
            ++ncos;
        }
        t.check(ncos == index);
        for (int n = v.at(0).lo(); n <= v.at(0).hi(); ++n) {
            if (v.at(0).dim(n) == 0) continue;
            int d = v.at(0).dim(n);
            Matrix cmp(ncos * d, G * d, F);
            for (int a = 0; a < G; ++a) {
                Matrix act = v.along(trans[a]).component(n);
                for (int i = 0; i < d; ++i)
                    for (int j = 0; j < d; ++j)
                        if (act.at(i, j) != 0)
                            cmp.at(coset[a] * d + i, a * d + j) = act.at(i, j);
            }
            Matrix through = mat_mul(cmp, right_inverse(lk.proj[0].at(n)));
            t.check(mat_mul(through, lk.proj[0].at(n)) == cmp);
            t.check(is_invertible(through));
        }
    }
}

/// Frobenius reciprocity (strong monoidal + strong closed, literal) and the
/// projection formula comparison being an isomorphism.
inline void projection_formula(Trial& t, int size) {
    const Field F = Field::prime(5);
    GroupoidFunctor f = random_functor(t.rng, std::max(1, size / 2));
    t.set_evidence(f);
    LocalSystem v = random_system(t.rng, f.target(), F, 0, 1, 2);
    LocalSystem w = random_system(t.rng, f.target(), F, 0, 1, 2);
    t.check(pull_system(f, cup_tensor(v, w)) ==
            cup_tensor(pull_system(f, v), pull_system(f, w)));
    t.check(pull_system(f, unit_system(f.target(), F)) ==
            unit_system(f.source(), F));
    t.check(pull_system(f, internal_hom(v, w)) ==
            internal_hom(pull_system(f, v), pull_system(f, w)));

    LocalSystem r = random_system(t.rng, f.source(), F, 0, 1, 2);
    LocalSystem fv = pull_system(f, v);
    LocalSystem rfv = cup_tensor(r, fv);
    LeftKan lk_r = push_left(f, r);
    LeftKan lk_rfv = push_left(f, rfv);
    LocalSystem target = cup_tensor(lk_r.system, v);
    SystemMap tensored = cup_tensor_map(lk_r.unit, SystemMap::identity(fv));
    std::vector<std::map<int, Matrix>> comps;
    for (int x = 0; x < f.source().num_objects(); ++x)
        comps.push_back(tensored.component_matrices(x));
    SystemMap adj(rfv, pull_system(f, target), comps);
    SystemMap comparison = transpose_left(f, lk_rfv, rfv, target, adj);
    t.check(is_iso_system_map(comparison));
}

/// Beck-Chevalley along product projections and along full-subgroupoid
/// pullback squares.
inline void beck_chevalley(Trial& t, int size) {
    const Field F = Field::prime(5);
    {
        GroupoidFunctor f = random_functor(t.rng, std::max(1, size / 2));
        t.set_evidence(f);
        FinGroupoid y = verify_detail::small_groupoid(t.rng, 2);
        GroupoidFunctor fxid = product_functor(f, GroupoidFunctor::identity(y));
        GroupoidFunctor prx = projection(f.source(), y, 0);
        GroupoidFunctor prxp = projection(f.target(), y, 0);
        LocalSystem v = random_system(t.rng, f.source(), F, 0, 1, 1);
        LeftKan fv = push_left(f, v);
        LocalSystem lhs_inner = pull_system(prx, v);
        LeftKan lhs = push_left(fxid, lhs_inner);
        LocalSystem rhs = pull_system(prxp, fv.system);
        SystemMap pulled_unit = pull_system_map(prx, fv.unit);
        std::vector<std::map<int, Matrix>> comps;
        for (int x = 0; x < prx.source().num_objects(); ++x)
            comps.push_back(pulled_unit.component_matrices(x));
        SystemMap adj(lhs_inner, pull_system(fxid, rhs), comps);
        SystemMap cmp = transpose_left(fxid, lhs, lhs_inner, rhs, adj);
        t.check(is_iso_system_map(cmp));
    }
    {
        GroupoidFunctor f = random_functor(t.rng, std::max(1, size / 2));
        t.set_evidence(f);
        const FinGroupoid& ybase = f.target();
        std::vector<int> subset;
        for (int o = 0; o < ybase.num_objects(); ++o)
            if (std::uniform_int_distribution<int>(0, 1)(t.rng) || subset.empty())
                subset.push_back(o);
        FullSubgroupoid suby = full_subgroupoid(ybase, subset);
        std::vector<int> pre;
        for (int o = 0; o < f.source().num_objects(); ++o)
            for (int s : subset)
                if (f.on_object(o) == s) pre.push_back(o);
        FullSubgroupoid subx = full_subgroupoid(f.source(), pre);
        std::vector<int> yobj_of(ybase.num_objects(), -1);
        std::vector<int> ymor_of(ybase.num_morphisms(), -1);
        for (std::size_t i = 0; i < suby.obj_of.size(); ++i)
            yobj_of[suby.obj_of[i]] = static_cast<int>(i);
        for (std::size_t i = 0; i < suby.mor_of.size(); ++i)
            ymor_of[suby.mor_of[i]] = static_cast<int>(i);
        std::vector<int> fo, fm;
        for (int o : subx.obj_of) fo.push_back(yobj_of[f.on_object(o)]);
        for (int m : subx.mor_of) fm.push_back(ymor_of[f.on_morph(m)]);
        GroupoidFunctor fprime(subx.object, suby.object, fo, fm);
        LocalSystem v = random_system(t.rng, f.source(), F, 0, 1, 1);
        LeftKan fv = push_left(f, v);
        LocalSystem lhs_inner = pull_system(subx.inclusion, v);
        LeftKan lhs = push_left(fprime, lhs_inner);
        LocalSystem rhs = pull_system(suby.inclusion, fv.system);
        SystemMap pulled_unit = pull_system_map(subx.inclusion, fv.unit);
        std::vector<std::map<int, Matrix>> comps;
        for (int x = 0; x < subx.object.num_objects(); ++x)
            comps.push_back(pulled_unit.component_matrices(x));
        SystemMap adj(lhs_inner, pull_system(fprime, rhs), comps);
        SystemMap cmp = transpose_left(fprime, lhs, lhs_inner, rhs, adj);
        t.check(is_iso_system_map(cmp));
    }
}

/// External tensor is homotopical on weak equivalences and certified-
/// cofibration-preserving for fixed-base pushout-products (with the acyclic
/// variant) over semisimple field choices.
inline void external_tensor_homotopical(Trial& t, int) {
    const Field F = Field::prime(5);
    auto make_we = [&]() {
        FinGroupoid big = random_groupoid(t.rng, 2);
        Skeletization sk = skeletize(big);
        LocalSystem w = random_system(t.rng, sk.skeleton, F, 0, 1, 1);
        LocalSystem pw = pull_system(sk.p, w);
        LocalSystem acy = random_acyclic_system(t.rng, big, F, 0, 1, 1);
        LocalSystem src = system_direct_sum(pw, acy);
        SystemMap proj = system_sum_projection(pw, acy, 0);
        std::vector<std::map<int, Matrix>> comps;
        for (int o = 0; o < big.num_objects(); ++o)
            comps.push_back(proj.component_matrices(o));
        SystemMap comp(src, pull_system(sk.p, w), comps);
        return LocMorphism(LocObject(big, src), LocObject(sk.skeleton, w), sk.p, comp);
    };
    LocMorphism m1 = make_we(), m2 = make_we();
    LocMorphism prod = external_tensor_map(m1, m2);
    t.set_evidence(prod);
    t.check(classify_integral(m1).we && classify_integral(m2).we);
    t.check(classify_integral(prod).we);

    // fixed-base pushout-products of certified cofibrations
    FinGroupoid x = verify_detail::small_groupoid(t.rng, 1);
    FinGroupoid y = verify_detail::small_groupoid(t.rng, 1);
    LocalSystem v = random_system(t.rng, x, F, 0, 1, 1);
    LocalSystem extra = random_system(t.rng, x, F, 0, 1, 1);
    SystemMap phi = system_sum_inclusion(v, extra, 0);
    LocalSystem w = random_system(t.rng, y, F, 0, 1, 1);
    LocalSystem wacy = random_acyclic_system(t.rng, y, F, 0, 1, 1);
    SystemMap gam = system_sum_inclusion(w, wacy, 0);
    LocMorphism phim(make_loc(v), make_loc(phi.target()),
                     GroupoidFunctor::identity(x), phi);
    LocMorphism gamm(make_loc(w), make_loc(gam.target()),
                     GroupoidFunctor::identity(y), gam);
    t.check(classify_integral(phim).cof == Cert::yes);
    t.check(classify_integral(gamm).cof == Cert::yes);
    t.check(classify_integral(gamm).we);
    LocMorphism pp = external_pushout_product(phim, gamm);
    t.set_evidence(pp);
    IntegralFlags fl = classify_integral(pp);
    t.check(fl.cof == Cert::yes);
    t.check(fl.we);  // acyclic variant: gamma is acyclic

    // plain (non-acyclic) variant
    LocalSystem w2 = random_system(t.rng, y, F, 0, 1, 1);
    LocalSystem extra2 = random_system(t.rng, y, F, 0, 1, 1);
    SystemMap gam2 = system_sum_inclusion(w2, extra2, 0);
    LocMorphism gamm2(make_loc(w2), make_loc(gam2.target()),
                      GroupoidFunctor::identity(y), gam2);
    LocMorphism pp2 = external_pushout_product(phim, gamm2);
    t.set_evidence(pp2);
    t.check(classify_integral(pp2).cof == Cert::yes);
}

/// |Loc(V boxtimes R, W)| = |Loc(V, R -|[] W)| with mutually inverse
/// transposes, brute force over F2.
inline void external_hom_adjunction(Trial& t, int) {
    const Field F = Field::prime(2);
    FinGroupoid x = std::uniform_int_distribution<int>(0, 1)(t.rng)
                        ? delooping(cyclic_group(2))
                        : discrete(2);
    FinGroupoid y = discrete(std::uniform_int_distribution<int>(1, 2)(t.rng));
    FinGroupoid z = std::uniform_int_distribution<int>(0, 1)(t.rng)
                        ? delooping(cyclic_group(2))
                        : discrete(2);
    LocObject v = make_loc(random_system(t.rng, x, F, 0, 0, 1));
    LocObject r = make_loc(random_system(t.rng, y, F, 0, 0, 1));
    LocObject w = make_loc(random_system(t.rng, z, F, 0, 0, 1));
    t.set_evidence(v);
    LocObject vr = external_tensor(v, r);
    LocObject rhw = external_hom(r, w);
    auto lhs = hom_enumerate(vr, w, 200000);
    auto rhs = hom_enumerate(v, rhw, 200000);
    t.check(lhs.size() == rhs.size());
    for (auto& m : lhs) {
        LocMorphism tr = external_hom_transpose(m, v, r, w);
        t.check(external_hom_untranspose(tr, v, r, w) == m);
    }
    for (auto& m : rhs) {
        LocMorphism tr = external_hom_untranspose(m, v, r, w);
        t.check(external_hom_transpose(tr, v, r, w) == m);
    }
}

/// Homotopy quotient squares: pullback property, fibrant right leg, and
/// preservation of the square under external tensor.
inline void homotopy_quotient(Trial& t, int) {
    const Field F = Field::prime(5);
    for (int n : {2, 3}) {
        GroupTable g = cyclic_group(n);
        LocalSystem v = random_system(t.rng, delooping(g), F, 0, 1, 2);
        t.set_evidence(v);
        auto sq = homotopy_quotient_square(g, v);
        t.check(classify_integral(sq.right).fib);
        LocPullback pb = loc_pullback(sq.bottom, sq.right);
        LocMorphism factor = loc_pullback_factor(pb, sq.left, sq.top);
        t.check(is_iso_system_map(factor.component()));
        t.check(classify_functor(factor.base_map()).we);

        // tensoring the square with a random W preserves the pullback
        LocObject w = make_loc(
            random_system(t.rng, verify_detail::small_groupoid(t.rng, 1), F, 0, 1, 1));
        LocMorphism idw = LocMorphism::identity(w);
        LocMorphism top = external_tensor_map(sq.top, idw);
        LocMorphism left = external_tensor_map(sq.left, idw);
        LocMorphism right = external_tensor_map(sq.right, idw);
        LocMorphism bottom = external_tensor_map(sq.bottom, idw);
        LocPullback pb2 = loc_pullback(bottom, right);
        LocMorphism factor2 = loc_pullback_factor(pb2, left, top);
        t.check(is_iso_system_map(factor2.component()));
        t.check(classify_functor(factor2.base_map()).we);
    }
}

/// Coproducts: restriction recovery (77), distributivity of the external
/// tensor (78), preservation of binary coproducts (75).
inline void coproduct_distributivity(Trial& t, int) {
    const Field F = Field::prime(5);
    LocObject v = make_loc(
        random_system(t.rng, verify_detail::small_groupoid(t.rng, 1), F, 0, 1, 1));
    LocObject w1 = make_loc(
        random_system(t.rng, verify_detail::small_groupoid(t.rng, 1), F, 0, 1, 1));
    LocObject w2 = make_loc(
        random_system(t.rng, verify_detail::small_groupoid(t.rng, 1), F, 0, 1, 1));
    t.set_evidence(v);
    LocCoproduct cp = loc_coproduct({w1, w2}, F);
    // (77): restrictions along the injections recover the summands
    t.check(pull_system(cp.injections[0].base_map(), cp.object.system) == w1.system);
    t.check(pull_system(cp.injections[1].base_map(), cp.object.system) == w2.system);

    // (78): V boxtimes (W1 u W2) decomposes as the coproduct of tensors
    LocObject lhs = external_tensor(v, cp.object);
    for (int i = 0; i < 2; ++i) {
        LocMorphism tj = external_tensor_map(LocMorphism::identity(v),
                                             cp.injections[i]);
        t.check(pull_system(tj.base_map(), lhs.system) == tj.source().system);
    }
    LocCoproduct rhs =
        loc_coproduct({external_tensor(v, w1), external_tensor(v, w2)}, F);
    int total_l = 0, total_r = 0;
    for (int o = 0; o < lhs.base.num_objects(); ++o)
        total_l += lhs.system.at(o).total_dim();
    for (int o = 0; o < rhs.object.base.num_objects(); ++o)
        total_r += rhs.object.system.at(o).total_dim();
    t.check(lhs.base.num_objects() == rhs.object.base.num_objects());
    t.check(total_l == total_r);

    // (75): the coproduct of the tensored injections is the tensored object
    t.check(homology(lhs.system.at(0)) == homology(rhs.object.system.at(0)));
}

/// Pull/push through products (70), (71) and adjunct compatibility (73).
inline void product_pushpull(Trial& t, int) {
    const Field F = Field::prime(5);
    GroupoidFunctor f = random_functor(t.rng, 1);
    GroupoidFunctor g = random_functor(t.rng, 1);
    t.set_evidence(f);
    LocalSystem v = random_system(t.rng, f.target(), F, 0, 1, 1);
    LocalSystem w = random_system(t.rng, g.target(), F, 0, 1, 1);
    GroupoidFunctor fxg = product_functor(f, g);
    LocObject vw = external_tensor(make_loc(v), make_loc(w));
    LocObject pulled = external_tensor(make_loc(pull_system(f, v)),
                                       make_loc(pull_system(g, w)));
    t.check(pull_system(fxg, vw.system) == pulled.system);

    LocalSystem vs = random_system(t.rng, f.source(), F, 0, 1, 1);
    LocalSystem ws = random_system(t.rng, g.source(), F, 0, 1, 1);
    LocObject vws = external_tensor(make_loc(vs), make_loc(ws));
    LeftKan kf = push_left(f, vs);
    LeftKan kg = push_left(g, ws);
    LocObject rhs = external_tensor(make_loc(kf.system), make_loc(kg.system));
    LeftKan lhs = push_left(fxg, vws.system);
    GroupoidFunctor prx = projection(f.source(), g.source(), 0);
    GroupoidFunctor pry = projection(f.source(), g.source(), 1);
    SystemMap units = cup_tensor_map(pull_system_map(prx, kf.unit),
                                     pull_system_map(pry, kg.unit));
    std::vector<std::map<int, Matrix>> comps;
    for (int o = 0; o < vws.base.num_objects(); ++o)
        comps.push_back(units.component_matrices(o));
    SystemMap adj(vws.system, pull_system(fxg, rhs.system), comps);
    SystemMap cmp = transpose_left(fxg, lhs, vws.system, rhs.system, adj);
    t.check(is_iso_system_map(cmp));

    SystemMap phi = random_system_map(t.rng, vs, pull_system(f, v));
    SystemMap gam = random_system_map(t.rng, ws, pull_system(g, w));
    LocMorphism phim(make_loc(vs), make_loc(v), f, phi);
    LocMorphism gamm(make_loc(ws), make_loc(w), g, gam);
    SystemMap lhs_adj = adjunct(external_tensor_map(phim, gamm));
    GroupoidFunctor prx2 = projection(f.target(), g.target(), 0);
    GroupoidFunctor pry2 = projection(f.target(), g.target(), 1);
    SystemMap boxadj = cup_tensor_map(pull_system_map(prx2, adjunct(phim)),
                                      pull_system_map(pry2, adjunct(gamm)));
    t.check(compose(boxadj, cmp) == lhs_adj);
}

/// Fiber census of the set-level pushout-product against the three-case
/// formula (the implementation is the brute-force pushout itself).
inline void set_pushout_product_suite(Trial& t, int size) {
    int bound = std::max(1, size);
    std::uniform_int_distribution<int> s(0, bound);
    SetMap f{s(t.rng), s(t.rng) + 1, {}}, g{s(t.rng), s(t.rng) + 1, {}};
    std::uniform_int_distribution<int> fv(0, f.codomain - 1), gv(0, g.codomain - 1);
    for (int i = 0; i < f.domain; ++i) f.map.push_back(fv(t.rng));
    for (int i = 0; i < g.domain; ++i) g.map.push_back(gv(t.rng));
    // evidence: f as a functor between discrete groupoids
    FinGroupoid df = discrete(f.domain), dfp = discrete(f.codomain);
    std::vector<int> fm(f.domain);
    for (int i = 0; i < f.domain; ++i) fm[i] = dfp.identity(f.map[i]);
    t.set_evidence(GroupoidFunctor(df, dfp, f.map, fm));
    auto pp = set_pushout_product(f, g);
    std::vector<bool> imf(f.codomain, false), img(g.codomain, false);
    for (int v : f.map) imf[v] = true;
    for (int v : g.map) img[v] = true;
    int total = 0;
    for (int xp = 0; xp < f.codomain; ++xp)
        for (int yp = 0; yp < g.codomain; ++yp) {
            int observed = pp.fiber_sizes[xp * g.codomain + yp];
            int expected;
            if (imf[xp] && img[yp])
                expected = 1;
            else if (!img[yp])
                expected = static_cast<int>(std::count(f.map.begin(), f.map.end(), xp));
            else
                expected = static_cast<int>(std::count(g.map.begin(), g.map.end(), yp));
            t.check(observed == expected);
            total += observed;
        }
    t.check(total == pp.map.domain);
}

/// Deliberately false claim, kept as a harness self-test: it must fail and
/// produce a rerunnable reproducer.
inline void selftest_corrupted(Trial& t, int) {
    ChainComplex d = disk(1, Field::prime(5));
    t.set_evidence(d);
    t.check(homology(d) == BettiTable{{0, 1}});
}

}  // namespace suites

inline const std::vector<std::pair<std::string, SuiteFn>>& suite_registry() {
    static const std::vector<std::pair<std::string, SuiteFn>> reg = {
        {"pushout-product-generators", suites::pushout_product_generators},
        {"mapping-cycles", suites::mapping_cycles},
        {"tot-const", suites::tot_const},
        {"skeletization", suites::skeletization},
        {"triangle-identities", suites::triangle_identities},
        {"induced-index", suites::induced_index},
        {"projection-formula", suites::projection_formula},
        {"beck-chevalley", suites::beck_chevalley},
        {"external-tensor-homotopical", suites::external_tensor_homotopical},
        {"external-hom-adjunction", suites::external_hom_adjunction},
        {"homotopy-quotient", suites::homotopy_quotient},
        {"coproduct-distributivity", suites::coproduct_distributivity},
        {"product-pushpull", suites::product_pushpull},
        {"set-pushout-product", suites::set_pushout_product_suite},
        {"selftest-corrupted", suites::selftest_corrupted},
    };
    return reg;
}

inline std::vector<std::string> suite_names() {
    std::vector<std::string> out;
    for (auto& [name, fn] : suite_registry()) out.push_back(name);
    return out;
}

/// Deterministic in (suite, seed, trials, size); any failure carries a
/// standalone reproducer document.
inline SuiteReport run_suite(const std::string& name, std::uint64_t seed, int trials,
                             int size, const Field& field = Field::prime(5)) {
    for (auto& [n, fn] : suite_registry()) {
        if (n != name) continue;
        SuiteReport report;
        report.suite = name;
        report.trials = trials;
        for (int i = 0; i < trials; ++i) {
            verify_detail::Trial t{seed, verify_detail::trial_rng(seed, i), &report,
                                   field};
            fn(t, size);
        }
        return report;
    }
    throw UnknownSuite("unknown suite: " + name);
}

}  // namespace locsys
