#pragma once

/// The Grothendieck construction of local systems over varying finite
/// groupoids: objects (X, V), morphisms (f, phi : V -> f^* W) in the
/// contravariant-component convention, with strict composition, integral
/// model-structure classifiers, external tensor product and its
/// pushout-product over coprojection-shaped base maps, external internal hom
/// over discrete bases, finite (co)limits, and exhaustive hom-set
/// enumeration over prime fields.

#include <cstdlib>

#include "locsys/kan.hpp"
#include "locsys/random_gen.hpp"

namespace locsys {

struct LocObject {
    FinGroupoid base;
    LocalSystem system;

    LocObject(FinGroupoid b, LocalSystem s) : base(std::move(b)), system(std::move(s)) {
        if (system.base() != base) throw BaseMismatch("LocObject: system over wrong base");
    }

    bool operator==(const LocObject& o) const {
        return base == o.base && system == o.system;
    }
    bool operator!=(const LocObject& o) const { return !(*this == o); }
};

inline LocObject make_loc(const LocalSystem& s) { return LocObject(s.base(), s); }

class LocMorphism {
public:
    /// component phi : source.system -> pull_system(f, target.system).
    LocMorphism(LocObject source, LocObject target, GroupoidFunctor base_map,
                SystemMap component)
        : source_(std::move(source)),
          target_(std::move(target)),
          f_(std::move(base_map)),
          phi_(std::move(component)) {
        if (f_.source() != source_.base || f_.target() != target_.base)
            throw ObjectMismatch("LocMorphism: base map endpoints");
        if (phi_.source() != source_.system ||
            phi_.target() != pull_system(f_, target_.system))
            throw ShapeMismatch("LocMorphism: component endpoints");
    }

    static LocMorphism identity(const LocObject& a) {
        return LocMorphism(a, a, GroupoidFunctor::identity(a.base),
                           SystemMap::identity(a.system));
    }

    const LocObject& source() const { return source_; }
    const LocObject& target() const { return target_; }
    const GroupoidFunctor& base_map() const { return f_; }
    const SystemMap& component() const { return phi_; }

    bool operator==(const LocMorphism& o) const {
        return source_ == o.source_ && target_ == o.target_ && f_ == o.f_ &&
               phi_ == o.phi_;
    }
    bool operator!=(const LocMorphism& o) const { return !(*this == o); }

private:
    LocObject source_, target_;
    GroupoidFunctor f_;
    SystemMap phi_;
};

inline void validate_loc_morphism(const LocMorphism& m) {
    validate_functor(m.base_map());
    validate_system(m.source().system);
    validate_system(m.target().system);
    validate_system_map(m.component());
}

/// psi_g o phi_f = (f^*(psi) o phi)_{g o f}; the coherence datum is the
/// identity because precomposition composes strictly.
inline LocMorphism compose_loc(const LocMorphism& psi, const LocMorphism& phi) {
    if (phi.target() != psi.source()) throw ObjectMismatch("compose_loc: middle objects");
    GroupoidFunctor gf = compose(psi.base_map(), phi.base_map());
    SystemMap pulled = pull_system_map(phi.base_map(), psi.component());
    // pull o pull is literally pull along the composite
    std::vector<std::map<int, Matrix>> comps;
    SystemMap inner = compose(pulled, phi.component());
    for (int x = 0; x < phi.base_map().source().num_objects(); ++x)
        comps.push_back(inner.component_matrices(x));
    SystemMap comp(phi.source().system, pull_system(gf, psi.target().system), comps);
    return LocMorphism(phi.source(), psi.target(), gf, comp);
}

/// The adjunct form f_! V -> W of a morphism (f, phi).
inline SystemMap adjunct(const LocMorphism& m) {
    LeftKan lk = push_left(m.base_map(), m.source().system);
    return transpose_left(m.base_map(), lk, m.source().system, m.target().system,
                          m.component());
}

struct IntegralFlags {
    bool we = false;
    bool fib = false;
    Cert cof = Cert::unknown;
};

/// we: base weak equivalence and objectwise quasi-iso (every fiber object is
/// fibrant, so no fibrant replacement is needed); fib: base fibration and
/// objectwise degreewise surjection; cof: base injective on objects and the
/// adjunct a certified system cofibration.
inline IntegralFlags classify_integral(const LocMorphism& m) {
    IntegralFlags out;
    GroupoidFlags base = classify_functor(m.base_map());
    SystemFlags comp = classify_system_map(m.component());
    out.we = base.we && comp.we;
    out.fib = base.fib && comp.fib;
    if (!base.cof) {
        out.cof = Cert::no;
        return out;
    }
    out.cof = classify_system_map(adjunct(m)).cof;
    return out;
}

// ---------------------------------------------------------------------------
// External tensor product

inline LocObject external_tensor(const LocObject& a, const LocObject& b) {
    if (a.system.field() != b.system.field())
        throw FieldMismatch("external_tensor: fields differ");
    FinGroupoid base = product(a.base, b.base);
    GroupoidFunctor pr0 = projection(a.base, b.base, 0);
    GroupoidFunctor pr1 = projection(a.base, b.base, 1);
    LocalSystem sys = cup_tensor(pull_system(pr0, a.system), pull_system(pr1, b.system));
    return LocObject(base, sys);
}

inline LocMorphism external_tensor_map(const LocMorphism& phi, const LocMorphism& gamma) {
    LocObject src = external_tensor(phi.source(), gamma.source());
    LocObject tgt = external_tensor(phi.target(), gamma.target());
    GroupoidFunctor fxg = product_functor(phi.base_map(), gamma.base_map());
    GroupoidFunctor pr0 = projection(phi.source().base, gamma.source().base, 0);
    GroupoidFunctor pr1 = projection(phi.source().base, gamma.source().base, 1);
    SystemMap tensored = cup_tensor_map(pull_system_map(pr0, phi.component()),
                                        pull_system_map(pr1, gamma.component()));
    // the target is literally (f x g)^* of the external tensor of the targets
    std::vector<std::map<int, Matrix>> comps;
    for (int x = 0; x < src.base.num_objects(); ++x)
        comps.push_back(tensored.component_matrices(x));
    SystemMap comp(src.system, pull_system(fxg, tgt.system), comps);
    return LocMorphism(src, tgt, fxg, comp);
}

// ---------------------------------------------------------------------------
// External pushout-product over coprojection-shaped base maps

namespace detail {

/// True when f is a full embedding onto a union of connected components of
/// its target (covers identities, initial maps, and coprojections).
inline bool is_component_embedding(const GroupoidFunctor& f) {
    const FinGroupoid& x = f.source();
    const FinGroupoid& y = f.target();
    std::vector<int> preimage(y.num_objects(), -1);
    for (int o = 0; o < x.num_objects(); ++o) {
        if (preimage[f.on_object(o)] >= 0) return false;  // not injective
        preimage[f.on_object(o)] = o;
    }
    // fully faithful onto image pairs
    for (int a = 0; a < x.num_objects(); ++a)
        for (int b = 0; b < x.num_objects(); ++b) {
            auto dom = x.hom(a, b);
            auto cod = y.hom(f.on_object(a), f.on_object(b));
            if (dom.size() != cod.size()) return false;
            std::vector<int> im;
            for (int m : dom) im.push_back(f.on_morph(m));
            std::sort(im.begin(), im.end());
            if (std::adjacent_find(im.begin(), im.end()) != im.end()) return false;
        }
    // image closed under components
    for (auto& comp : pi0(y)) {
        bool any = false, all = true;
        for (int o : comp) (preimage[o] >= 0 ? any : all) = (preimage[o] >= 0);
        for (int o : comp)
            if (preimage[o] < 0) all = false; else any = true;
        if (any && !all) return false;
    }
    return true;
}

/// Extension by zero of v along a component embedding, with the adjunct
/// f_! V -> V' of phi attached.
inline std::pair<LocalSystem, SystemMap> extension_by_zero(const GroupoidFunctor& f,
                                                           const LocalSystem& v,
                                                           const LocalSystem& vprime,
                                                           const SystemMap& phi) {
    const FinGroupoid& y = f.target();
    const Field& F = vprime.field();
    std::vector<int> pre(y.num_objects(), -1);
    for (int o = 0; o < f.source().num_objects(); ++o) pre[f.on_object(o)] = o;
    std::vector<int> mor_pre(y.num_morphisms(), -1);
    for (int m = 0; m < f.source().num_morphisms(); ++m) mor_pre[f.on_morph(m)] = m;
    std::vector<ChainComplex> at;
    for (int o = 0; o < y.num_objects(); ++o)
        at.push_back(pre[o] >= 0 ? v.at(pre[o]) : ChainComplex(F));
    std::vector<std::map<int, Matrix>> along(y.num_morphisms());
    for (int m = 0; m < y.num_morphisms(); ++m)
        if (mor_pre[m] >= 0) along[m] = v.along_components(mor_pre[m]);
    LocalSystem ext(y, at, along, F);
    std::vector<std::map<int, Matrix>> comps(y.num_objects());
    for (int o = 0; o < y.num_objects(); ++o)
        if (pre[o] >= 0) comps[o] = phi.component_matrices(pre[o]);
    return {ext, SystemMap(ext, vprime, comps)};
}

}  // namespace detail

/// Pushout-product for the external tensor: supported when both base maps
/// are identities, initial maps, or coprojections into disjoint unions
/// (component embeddings); refused otherwise because amalgamated groupoid
/// pushouts are generally infinite.
inline LocMorphism external_pushout_product(const LocMorphism& phi,
                                            const LocMorphism& gamma) {
    if (phi.source().system.field() != gamma.source().system.field())
        throw FieldMismatch("external_pushout_product: fields differ");
    const GroupoidFunctor& f = phi.base_map();
    const GroupoidFunctor& g = gamma.base_map();
    if (!detail::is_component_embedding(f) || !detail::is_component_embedding(g))
        throw UnsupportedBasePushout(
            "base maps must be identities, initial maps or coprojections");

    const FinGroupoid& xp = f.target();
    const FinGroupoid& yp = g.target();
    LocObject codomain = external_tensor(phi.target(), gamma.target());
    GroupoidFunctor pr0 = projection(xp, yp, 0);
    GroupoidFunctor pr1 = projection(xp, yp, 1);

    // adjuncts as extension-by-zero maps over the full targets
    auto [fext, fadj] = detail::extension_by_zero(f, phi.source().system,
                                                  phi.target().system, phi.component());
    auto [gext, gadj] = detail::extension_by_zero(g, gamma.source().system,
                                                  gamma.target().system,
                                                  gamma.component());
    // linear pushout-product over the product base
    SystemMap a = pull_system_map(pr0, fadj);
    SystemMap b = pull_system_map(pr1, gadj);
    SystemMap s = system_pushout_product(a, b);

    // the base pushout-product: full subgroupoid on (im f x Y') u (X' x im g)
    std::vector<bool> in_f(xp.num_objects(), false), in_g(yp.num_objects(), false);
    for (int o = 0; o < f.source().num_objects(); ++o) in_f[f.on_object(o)] = true;
    for (int o = 0; o < g.source().num_objects(); ++o) in_g[g.on_object(o)] = true;
    std::vector<int> domain_objects;
    for (int a2 = 0; a2 < xp.num_objects(); ++a2)
        for (int b2 = 0; b2 < yp.num_objects(); ++b2)
            if (in_f[a2] || in_g[b2])
                domain_objects.push_back(a2 * yp.num_objects() + b2);
    FullSubgroupoid dom = full_subgroupoid(codomain.base, domain_objects);

    // the pushout system is supported on the domain; restrict along h
    LocalSystem q = s.source();
    for (int o = 0; o < codomain.base.num_objects(); ++o) {
        bool inside = false;
        for (int d : domain_objects) inside = inside || d == o;
        if (!inside && q.at(o).total_dim() != 0)
            throw Error("external_pushout_product: pushout not supported on the domain");
    }
    LocalSystem restricted = pull_system(dom.inclusion, q);
    std::vector<std::map<int, Matrix>> comps(dom.object.num_objects());
    for (int o = 0; o < dom.object.num_objects(); ++o)
        comps[o] = s.component_matrices(dom.obj_of[o]);
    SystemMap comp(restricted, pull_system(dom.inclusion, codomain.system), comps);
    return LocMorphism(LocObject(dom.object, restricted), codomain, dom.inclusion, comp);
}

// ---------------------------------------------------------------------------
// External internal hom over a discrete base

/// Object tuple codes of functor_groupoid(Y, Z): most significant digit is
/// the first object of Y.
namespace detail {

inline std::vector<int> power_obj_tuple(int code, int k, int zo) {
    std::vector<int> t(k);
    for (int i = k - 1; i >= 0; --i) {
        t[i] = code % zo;
        code /= zo;
    }
    return t;
}

inline int power_obj_code(const std::vector<int>& t, int zo) {
    int c = 0;
    for (int v : t) c = c * zo + v;
    return c;
}

inline std::vector<int> power_mor_tuple(int code, int k, int zm) {
    std::vector<int> t(k);
    for (int i = k - 1; i >= 0; --i) {
        t[i] = code % zm;
        code /= zm;
    }
    return t;
}

inline int power_mor_code(const std::vector<int>& t, int zm) {
    int c = 0;
    for (int v : t) c = c * zm + v;
    return c;
}

}  // namespace detail

/// r over a discrete base Y, w over Z: the system
/// (z_y)_y  |->  (+)_y [r_y, w_{z_y}] over Z^Y, transitions by
/// postcomposition with w's transports.
inline LocObject external_hom(const LocObject& r, const LocObject& w) {
    if (!is_discrete(r.base)) throw NotDiscreteBase("external_hom: base must be discrete");
    if (r.system.field() != w.system.field())
        throw FieldMismatch("external_hom: fields differ");
    const Field& F = r.system.field();
    int k = r.base.num_objects();
    FunctorGroupoid zy = functor_groupoid(r.base, w.base);
    const FinGroupoid& zg = w.base;
    if (k == 0) return LocObject(zy.object, unit_system(zy.object, F));
    std::vector<ChainComplex> at;
    for (int c = 0; c < zy.object.num_objects(); ++c) {
        auto t = detail::power_obj_tuple(c, k, zg.num_objects());
        ChainComplex sum(F);
        for (int y = 0; y < k; ++y)
            sum = direct_sum(sum, hom_complex(r.system.at(y), w.system.at(t[y])));
        at.push_back(sum);
    }
    std::vector<std::map<int, Matrix>> along(zy.object.num_morphisms());
    for (int m = 0; m < zy.object.num_morphisms(); ++m) {
        auto mt = detail::power_mor_tuple(m, k, zg.num_morphisms());
        auto st = detail::power_obj_tuple(zy.object.src(m), k, zg.num_objects());
        auto tt = detail::power_obj_tuple(zy.object.tgt(m), k, zg.num_objects());
        const ChainComplex& sc = at[zy.object.src(m)];
        const ChainComplex& tc = at[zy.object.tgt(m)];
        for (int deg = sc.lo(); deg <= sc.hi(); ++deg) {
            if (sc.dim(deg) == 0 || tc.dim(deg) == 0) continue;
            Matrix blk(tc.dim(deg), sc.dim(deg), F);
            int roff = 0, coff = 0;
            for (int y = 0; y < k; ++y) {
                const ChainComplex& ry = r.system.at(y);
                ChainComplex hsrc = hom_complex(ry, w.system.at(st[y]));
                ChainComplex htgt = hom_complex(ry, w.system.at(tt[y]));
                // postcomposition with w(m_y): block-diagonal over n
                HomIndexer si(ry, w.system.at(st[y]));
                HomIndexer ti(ry, w.system.at(tt[y]));
                ChainMap wm = w.system.along(mt[y]);
                for (int n = ry.lo(); n <= ry.hi(); ++n) {
                    int cn = ry.dim(n);
                    int dsrc = w.system.at(st[y]).dim(n + deg);
                    int dtgt = w.system.at(tt[y]).dim(n + deg);
                    if (cn == 0 || dsrc == 0 || dtgt == 0) continue;
                    Matrix wmat = wm.component(n + deg);
                    for (int i = 0; i < dsrc; ++i)
                        for (int j = 0; j < cn; ++j)
                            for (int a = 0; a < dtgt; ++a)
                                if (wmat.at(a, i) != 0)
                                    blk.at(roff + ti.index(deg, n, a, j),
                                           coff + si.index(deg, n, i, j)) = wmat.at(a, i);
                }
                roff += htgt.dim(deg);
                coff += hsrc.dim(deg);
            }
            along[m][deg] = blk;
        }
    }
    return LocObject(zy.object, LocalSystem(zy.object, at, along, F));
}

/// Restriction of the external hom along a point f : Y -> Obj(Z), computed
/// independently as (p_Y)_* [r, f^* w]; returns the complex over the point.
inline ChainComplex external_hom_restriction_at(const LocObject& r, const LocObject& w,
                                                const std::vector<int>& f) {
    if (!is_discrete(r.base)) throw NotDiscreteBase("restriction: base must be discrete");
    // f^* w over Y via the object map f (Y discrete, so any map is a functor)
    std::vector<int> fm(r.base.num_morphisms());
    for (int o = 0; o < r.base.num_objects(); ++o)
        fm[r.base.identity(o)] = w.base.identity(f[o]);
    GroupoidFunctor ff(r.base, w.base, f, fm);
    LocalSystem fw = pull_system(ff, w.system);
    LocalSystem ih = internal_hom(r.system, fw);
    RightKan rk = push_right(to_point(r.base), ih);
    return rk.system.at(0);
}

// ---------------------------------------------------------------------------
// (Co)limits

struct LocCoproduct {
    LocObject object;
    std::vector<LocMorphism> injections;
};

/// Disjoint-union base with extension-by-zero pushforwards.
inline LocCoproduct loc_coproduct(const std::vector<LocObject>& parts, const Field& F) {
    FinGroupoid base = empty_groupoid();
    for (std::size_t i = 0; i < parts.size(); ++i)
        base = i == 0 ? parts[i].base : disjoint_union(base, parts[i].base);
    // object/morphism offsets of each part in the fold
    std::vector<int> ooff(parts.size(), 0), moff(parts.size(), 0);
    for (std::size_t i = 1; i < parts.size(); ++i) {
        ooff[i] = ooff[i - 1] + parts[i - 1].base.num_objects();
        moff[i] = moff[i - 1] + parts[i - 1].base.num_morphisms();
    }
    std::vector<ChainComplex> at(base.num_objects(), ChainComplex(F));
    std::vector<std::map<int, Matrix>> along(base.num_morphisms());
    for (std::size_t i = 0; i < parts.size(); ++i) {
        for (int o = 0; o < parts[i].base.num_objects(); ++o)
            at[ooff[i] + o] = parts[i].system.at(o);
        for (int m = 0; m < parts[i].base.num_morphisms(); ++m)
            along[moff[i] + m] = parts[i].system.along_components(m);
    }
    LocObject object(base, LocalSystem(base, at, along, F));
    std::vector<LocMorphism> injections;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        std::vector<int> om(parts[i].base.num_objects()), mm(parts[i].base.num_morphisms());
        for (int o = 0; o < parts[i].base.num_objects(); ++o) om[o] = ooff[i] + o;
        for (int m = 0; m < parts[i].base.num_morphisms(); ++m) mm[m] = moff[i] + m;
        GroupoidFunctor inj(parts[i].base, base, om, mm);
        // component: identity onto the restriction
        std::vector<std::map<int, Matrix>> comps(parts[i].base.num_objects());
        for (int o = 0; o < parts[i].base.num_objects(); ++o) {
            const ChainComplex& c = parts[i].system.at(o);
            for (int n = c.lo(); n <= c.hi(); ++n)
                if (c.dim(n) > 0) comps[o][n] = Matrix::identity(c.dim(n), F);
        }
        SystemMap comp(parts[i].system, pull_system(inj, object.system), comps);
        injections.push_back(LocMorphism(parts[i], object, inj, comp));
    }
    return {object, injections};
}

struct LocProduct {
    LocObject object;
    LocMorphism prl, prr;
};

/// External cartesian product: product base with degreewise direct-sum fibers.
inline LocProduct loc_product(const LocObject& a, const LocObject& b) {
    GroupoidFunctor pr0 = projection(a.base, b.base, 0);
    GroupoidFunctor pr1 = projection(a.base, b.base, 1);
    LocalSystem pa = pull_system(pr0, a.system);
    LocalSystem pb = pull_system(pr1, b.system);
    LocalSystem sys = system_direct_sum(pa, pb);
    LocObject object(pr0.source(), sys);
    SystemMap prl_comp = system_sum_projection(pa, pb, 0);
    SystemMap prr_comp = system_sum_projection(pa, pb, 1);
    return {object,
            LocMorphism(object, a, pr0,
                        SystemMap(sys, pa,
                                  [&] {
                                      std::vector<std::map<int, Matrix>> c;
                                      for (int x = 0; x < sys.base().num_objects(); ++x)
                                          c.push_back(prl_comp.component_matrices(x));
                                      return c;
                                  }())),
            LocMorphism(object, b, pr1,
                        SystemMap(sys, pb,
                                  [&] {
                                      std::vector<std::map<int, Matrix>> c;
                                      for (int x = 0; x < sys.base().num_objects(); ++x)
                                          c.push_back(prr_comp.component_matrices(x));
                                      return c;
                                  }()))};
}

struct LocPullback {
    LocObject object;
    LocMorphism prl, prr;
};

/// Base pullback with fiberwise chain pullbacks of the pulled-back systems.
inline LocPullback loc_pullback(const LocMorphism& phi, const LocMorphism& psi) {
    if (phi.target() != psi.target()) throw ObjectMismatch("loc_pullback: cospan");
    GroupoidPullback gp = groupoid_pullback(phi.base_map(), psi.base_map());
    const FinGroupoid& p = gp.object;
    const Field& F = phi.source().system.field();
    // at (a, b): chain pullback of phi_a : A_a -> C_{f a} <- B_b : psi_b
    std::vector<ChainPullback> pbs;
    for (int o = 0; o < p.num_objects(); ++o) {
        int a = gp.prl.on_object(o), b = gp.prr.on_object(o);
        pbs.push_back(chain_pullback(phi.component().component(a),
                                     psi.component().component(b)));
    }
    std::vector<ChainComplex> at;
    for (auto& pb : pbs) at.push_back(pb.object);
    std::vector<std::map<int, Matrix>> along(p.num_morphisms());
    for (int m = 0; m < p.num_morphisms(); ++m) {
        int o_s = p.src(m), o_t = p.tgt(m);
        int ma = gp.prl.on_morph(m), mb = gp.prr.on_morph(m);
        ChainMap u = compose(phi.source().system.along(ma), pbs[o_s].prl);
        ChainMap v = compose(psi.source().system.along(mb), pbs[o_s].prr);
        ChainMap ind = pullback_factor(pbs[o_t], u, v);
        for (int n = ind.source().lo(); n <= ind.source().hi(); ++n)
            if (ind.source().dim(n) > 0 && ind.target().dim(n) > 0)
                along[m][n] = ind.component(n);
    }
    LocObject object(p, LocalSystem(p, at, along, F));
    auto make_proj = [&](const GroupoidFunctor& pr, const LocObject& tgt, bool left) {
        std::vector<std::map<int, Matrix>> comps(p.num_objects());
        for (int o = 0; o < p.num_objects(); ++o) {
            const ChainMap& leg = left ? pbs[o].prl : pbs[o].prr;
            for (int n = leg.source().lo(); n <= leg.source().hi(); ++n)
                if (leg.source().dim(n) > 0 && leg.target().dim(n) > 0)
                    comps[o][n] = leg.component(n);
        }
        SystemMap comp(object.system, pull_system(pr, tgt.system), comps);
        return LocMorphism(object, tgt, pr, comp);
    };
    return {object, make_proj(gp.prl, phi.source(), true),
            make_proj(gp.prr, psi.source(), false)};
}

/// The universal map into a pullback from a commuting cone (u, v) whose base
/// maps already agree objectwise in the shared codomain.
inline LocMorphism loc_pullback_factor(const LocPullback& pb, const LocMorphism& u,
                                       const LocMorphism& v) {
    const FinGroupoid& t = u.source().base;
    const FinGroupoid& p = pb.object.base;
    std::vector<int> om(t.num_objects()), mm(t.num_morphisms());
    for (int o = 0; o < t.num_objects(); ++o) {
        int a = u.base_map().on_object(o), b = v.base_map().on_object(o);
        bool found = false;
        for (int q = 0; q < p.num_objects() && !found; ++q)
            if (pb.prl.base_map().on_object(q) == a &&
                pb.prr.base_map().on_object(q) == b) {
                om[o] = q;
                found = true;
            }
        if (!found) throw ObjectMismatch("loc_pullback_factor: cone does not match");
    }
    for (int m = 0; m < t.num_morphisms(); ++m) {
        int a = u.base_map().on_morph(m), b = v.base_map().on_morph(m);
        bool found = false;
        for (int q = 0; q < p.num_morphisms() && !found; ++q)
            if (pb.prl.base_map().on_morph(q) == a &&
                pb.prr.base_map().on_morph(q) == b) {
                mm[m] = q;
                found = true;
            }
        if (!found) throw ObjectMismatch("loc_pullback_factor: cone does not match");
    }
    GroupoidFunctor h(t, p, om, mm);
    std::vector<std::map<int, Matrix>> comps(t.num_objects());
    for (int o = 0; o < t.num_objects(); ++o) {
        ChainPullback cpb{pb.object.system.at(om[o]),
                          pb.prl.component().component(om[o]),
                          pb.prr.component().component(om[o])};
        ChainMap fac = pullback_factor(cpb, u.component().component(o),
                                       v.component().component(o));
        for (int n = fac.source().lo(); n <= fac.source().hi(); ++n)
            if (fac.source().dim(n) > 0 && fac.target().dim(n) > 0)
                comps[o][n] = fac.component(n);
    }
    SystemMap comp(u.source().system, pull_system(h, pb.object.system), comps);
    return LocMorphism(u.source(), pb.object, h, comp);
}

// ---------------------------------------------------------------------------
// Homotopy quotient squares

struct HomotopyQuotientSquare {
    LocObject top_left, top_right, bottom_left, bottom_right;
    LocMorphism top, left, right, bottom;
};

/// The square  pt^*V -> V_BG  over  0_pt -> 0_BG  (Cartesian, right leg a
/// fibration) exhibiting V_BG as a homotopy quotient.
inline HomotopyQuotientSquare homotopy_quotient_square(const GroupTable& g,
                                                       const LocalSystem& v) {
    const Field& F = v.field();
    FinGroupoid bg = v.base();
    FinGroupoid pt = terminal_groupoid();
    GroupoidFunctor incl = from_point(bg, 0);
    LocObject tr(bg, v);
    LocObject tl(pt, pull_system(incl, v));
    LocObject bl(pt, zero_system(pt, F));
    LocObject br(bg, zero_system(bg, F));
    LocMorphism top(tl, tr, incl, SystemMap::identity(tl.system));
    LocMorphism left(tl, bl, GroupoidFunctor::identity(pt),
                     SystemMap::zero(tl.system, bl.system));
    LocMorphism right(tr, br, GroupoidFunctor::identity(bg),
                      SystemMap::zero(tr.system, br.system));
    LocMorphism bottom(bl, br, incl, SystemMap::zero(bl.system, pull_system(incl, br.system)));
    (void)g;
    return {tl, tr, bl, br, top, left, right, bottom};
}

// ---------------------------------------------------------------------------
// Exhaustive hom-set enumeration

/// All morphisms a -> b over a prime field: base functors in lexicographic
/// object-image order, then components enumerated through the naturality
/// solution space with coefficient tuples in ascending base-p order.
inline std::vector<LocMorphism> hom_enumerate(const LocObject& a, const LocObject& b,
                                              std::uint64_t budget) {
    const Field& F = a.system.field();
    if (F.is_rational())
        throw RationalFieldUnsupported("hom_enumerate needs a prime field");
    std::uint64_t p = static_cast<std::uint64_t>(F.characteristic());
    std::vector<LocMorphism> out;
    std::vector<GroupoidFunctor> functors = enumerate_functors(a.base, b.base, budget);
    std::uint64_t total = 0;
    for (const GroupoidFunctor& f : functors) {
        LocalSystem fw = pull_system(f, b.system);
        std::vector<SystemMap> basis = system_map_space(a.system, fw);
        std::uint64_t count = 1;
        for (std::size_t i = 0; i < basis.size(); ++i) {
            count *= p;
            if (count > budget) throw BudgetExceeded("hom_enumerate over budget");
        }
        total += count;
        if (total > budget) throw BudgetExceeded("hom_enumerate over budget");
        std::vector<std::uint64_t> digits(basis.size(), 0);
        for (std::uint64_t c = 0; c < count; ++c) {
            SystemMap acc = SystemMap::zero(a.system, fw);
            for (std::size_t i = 0; i < basis.size(); ++i) {
                if (digits[i] == 0) continue;
                Scalar coeff = F.from_int(static_cast<long>(digits[i]));
                std::vector<std::map<int, Matrix>> comps(a.base.num_objects());
                for (int x = 0; x < a.base.num_objects(); ++x) {
                    ChainMap s = acc.component(x) +
                                 ChainMap(a.system.at(x), fw.at(x),
                                          [&] {
                                              std::map<int, Matrix> mm;
                                              for (auto& [n, m] :
                                                   basis[i].component_matrices(x))
                                                  mm[n] = m.scaled(coeff);
                                              return mm;
                                          }());
                    for (int n = s.source().lo(); n <= s.source().hi(); ++n)
                        if (s.source().dim(n) > 0 && s.target().dim(n) > 0)
                            comps[x][n] = s.component(n);
                }
                acc = SystemMap(a.system, fw, comps);
            }
            out.push_back(LocMorphism(a, b, f, acc));
            // next digit tuple (first basis vector is the least significant)
            std::size_t i = 0;
            while (i < digits.size() && ++digits[i] == p) digits[i++] = 0;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Transposes of the external-tensor / external-hom adjunction

/// mu : V (x-ext) R -> W  |->  V -> (R -|[] W), for R over a discrete base.
inline LocMorphism external_hom_transpose(const LocMorphism& mu, const LocObject& a,
                                          const LocObject& r, const LocObject& w) {
    const Field& F = a.system.field();
    int k = r.base.num_objects();
    LocObject rhw = external_hom(r, w);
    const FinGroupoid& x = a.base;
    const FinGroupoid& z = w.base;
    int ym = r.base.num_morphisms();
    // base transpose: x |-> (h(x, y))_y
    std::vector<int> om(x.num_objects()), mm(x.num_morphisms());
    for (int o = 0; o < x.num_objects(); ++o) {
        std::vector<int> t(k);
        for (int y = 0; y < k; ++y)
            t[y] = mu.base_map().on_object(o * k + y);
        om[o] = detail::power_obj_code(t, z.num_objects());
    }
    for (int m = 0; m < x.num_morphisms(); ++m) {
        std::vector<int> t(k);
        for (int y = 0; y < k; ++y)
            t[y] = mu.base_map().on_morph(m * ym + r.base.identity(y));
        mm[m] = detail::power_mor_code(t, z.num_morphisms());
    }
    GroupoidFunctor hhat(x, rhw.base, om, mm);
    // component: blockwise currying
    std::vector<std::map<int, Matrix>> comps(x.num_objects());
    for (int o = 0; o < x.num_objects(); ++o) {
        const ChainComplex& vx = a.system.at(o);
        const ChainComplex& hx = rhw.system.at(om[o]);
        auto tup = detail::power_obj_tuple(om[o], k, z.num_objects());
        for (int m = vx.lo(); m <= vx.hi(); ++m) {
            if (vx.dim(m) == 0 || hx.dim(m) == 0) continue;
            Matrix c(hx.dim(m), vx.dim(m), F);
            int roff = 0;
            for (int y = 0; y < k; ++y) {
                const ChainComplex& ry = r.system.at(y);
                const ChainComplex& wz = w.system.at(tup[y]);
                TensorIndexer ti(vx, ry);
                HomIndexer hi(ry, wz);
                for (int n = ry.lo(); n <= ry.hi(); ++n) {
                    int cn = ry.dim(n), dm = wz.dim(n + m);
                    if (cn == 0 || dm == 0) continue;
                    Matrix pk = mu.component().component(o * k + y).component(m + n);
                    for (int av = 0; av < vx.dim(m); ++av)
                        for (int i = 0; i < dm; ++i)
                            for (int j = 0; j < cn; ++j)
                                c.at(roff + hi.index(m, n, i, j), av) =
                                    pk.at(i, ti.index(m + n, m, av, j));
                }
                roff += hom_complex(ry, wz).dim(m);
            }
            comps[o][m] = c;
        }
    }
    SystemMap comp(a.system, pull_system(hhat, rhw.system), comps);
    return LocMorphism(a, rhw, hhat, comp);
}

/// nu : V -> (R -|[] W)  |->  V (x-ext) R -> W (inverse currying).
inline LocMorphism external_hom_untranspose(const LocMorphism& nu, const LocObject& a,
                                            const LocObject& r, const LocObject& w) {
    const Field& F = a.system.field();
    int k = r.base.num_objects();
    LocObject vr = external_tensor(a, r);
    const FinGroupoid& x = a.base;
    const FinGroupoid& z = w.base;
    int ym = r.base.num_morphisms();
    std::vector<int> om(vr.base.num_objects()), mm(vr.base.num_morphisms());
    for (int o = 0; o < x.num_objects(); ++o) {
        auto tup = detail::power_obj_tuple(nu.base_map().on_object(o), k, z.num_objects());
        for (int y = 0; y < k; ++y) om[o * k + y] = tup[y];
    }
    for (int m = 0; m < x.num_morphisms(); ++m) {
        auto tup = detail::power_mor_tuple(nu.base_map().on_morph(m), k, z.num_morphisms());
        for (int y = 0; y < ym; ++y) {
            // Y is discrete, so every morphism of X x Y is (m, id_y)
            int ybase = r.base.src(y);
            mm[m * ym + y] = tup[ybase];
        }
    }
    GroupoidFunctor hcheck(vr.base, z, om, mm);
    std::vector<std::map<int, Matrix>> comps(vr.base.num_objects());
    for (int o = 0; o < x.num_objects(); ++o) {
        const ChainComplex& vx = a.system.at(o);
        auto tup = detail::power_obj_tuple(nu.base_map().on_object(o), k, z.num_objects());
        for (int y = 0; y < k; ++y) {
            const ChainComplex& ry = r.system.at(y);
            const ChainComplex& wz = w.system.at(tup[y]);
            const ChainComplex& txy = vr.system.at(o * k + y);
            TensorIndexer ti(vx, ry);
            HomIndexer hi(ry, wz);
            // block offset of y inside the external hom fiber
            auto block_off = [&](int deg) {
                int off = 0;
                for (int yy = 0; yy < y; ++yy)
                    off += hom_complex(r.system.at(yy), w.system.at(tup[yy])).dim(deg);
                return off;
            };
            for (int deg = txy.lo(); deg <= txy.hi(); ++deg) {
                if (txy.dim(deg) == 0 || wz.dim(deg) == 0) continue;
                Matrix c(wz.dim(deg), txy.dim(deg), F);
                for (int m = vx.lo(); m <= vx.hi(); ++m) {
                    int n = deg - m;
                    int tm = vx.dim(m), rn = ry.dim(n);
                    if (tm == 0 || rn == 0) continue;
                    Matrix pm = nu.component().component(o).component(m);
                    int off = block_off(m);
                    for (int av = 0; av < tm; ++av)
                        for (int j = 0; j < rn; ++j) {
                            int col = ti.index(deg, m, av, j);
                            for (int i = 0; i < wz.dim(deg); ++i)
                                c.at(i, col) = pm.at(off + hi.index(m, n, i, j), av);
                        }
                }
                comps[o * k + y][deg] = c;
            }
        }
    }
    SystemMap comp(vr.system, pull_system(hcheck, w.system), comps);
    return LocMorphism(vr, w, hcheck, comp);
}

/// The enumeration budget from LOCSYS_BUDGET, defaulting to 10^6.
inline std::uint64_t default_budget() {
    if (const char* env = std::getenv("LOCSYS_BUDGET")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) return v;
    }
    return 1000000;
}

}  // namespace locsys
