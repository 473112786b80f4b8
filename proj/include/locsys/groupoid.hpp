#pragma once

/// Finite groupoids with full composition tables. Every classifier is an
/// exhaustive finite check; all basis/basepoint choices are least-index and
/// therefore reproducible.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "locsys/errors.hpp"

namespace locsys {

// ---------------------------------------------------------------------------
// Groups as multiplication tables

struct GroupTable {
    // mul[a][b] = a * b
    std::vector<std::vector<int>> mul;

    int order() const { return static_cast<int>(mul.size()); }

    int unit() const {
        for (int e = 0; e < order(); ++e) {
            bool ok = true;
            for (int a = 0; a < order(); ++a)
                if (mul[e][a] != a || mul[a][e] != a) ok = false;
            if (ok) return e;
        }
        throw NotAGroup("no unit element");
    }

    int inverse(int a) const {
        int e = unit();
        for (int b = 0; b < order(); ++b)
            if (mul[a][b] == e && mul[b][a] == e) return b;
        throw NotAGroup("no inverse for element " + std::to_string(a));
    }

    void validate() const {
        int n = order();
        for (auto& row : mul) {
            if (static_cast<int>(row.size()) != n) throw NotAGroup("table not square");
            for (int v : row)
                if (v < 0 || v >= n) throw NotAGroup("entry out of range");
        }
        unit();
        for (int a = 0; a < n; ++a) inverse(a);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c)
                    if (mul[mul[a][b]][c] != mul[a][mul[b][c]])
                        throw NotAGroup("associativity fails");
    }
};

inline GroupTable trivial_group() { return {{{0}}}; }

inline GroupTable cyclic_group(int n) {
    GroupTable g;
    g.mul.assign(n, std::vector<int>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) g.mul[a][b] = (a + b) % n;
    return g;
}

/// Permutations of {0..n-1} in lexicographic order, composed as functions.
inline GroupTable symmetric_group(int n) {
    std::vector<std::vector<int>> perms;
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    do {
        perms.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    GroupTable g;
    int m = static_cast<int>(perms.size());
    g.mul.assign(m, std::vector<int>(m));
    auto find = [&](const std::vector<int>& q) {
        return static_cast<int>(std::lower_bound(perms.begin(), perms.end(), q) -
                                perms.begin());
    };
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) {
            std::vector<int> q(n);
            for (int i = 0; i < n; ++i) q[i] = perms[a][perms[b][i]];
            g.mul[a][b] = find(q);
        }
    return g;
}

/// The homomorphism C_k -> g generated by mapping 1 to `gen` (gen must have
/// order dividing k).
inline std::vector<int> cyclic_hom(int k, const GroupTable& g, int gen) {
    std::vector<int> h(k);
    h[0] = g.unit();
    for (int i = 1; i < k; ++i) h[i] = g.mul[h[i - 1]][gen];
    if (g.mul[h[k - 1]][gen] != g.unit()) throw NotAGroup("generator order does not divide k");
    return h;
}

// ---------------------------------------------------------------------------
// Groupoids

struct Morph {
    std::string label;
    int src, tgt;

    bool operator==(const Morph& o) const {
        return label == o.label && src == o.src && tgt == o.tgt;
    }
};

class FinGroupoid {
public:
    FinGroupoid() = default;

    FinGroupoid(std::vector<std::string> objects, std::vector<Morph> morphisms,
                std::vector<int> identities, std::vector<int> inverses,
                std::vector<std::vector<int>> compose)
        : objects_(std::move(objects)),
          morphs_(std::move(morphisms)),
          id_(std::move(identities)),
          inv_(std::move(inverses)),
          comp_(std::move(compose)) {}

    int num_objects() const { return static_cast<int>(objects_.size()); }
    int num_morphisms() const { return static_cast<int>(morphs_.size()); }
    const std::string& object_label(int x) const { return objects_[x]; }
    const Morph& morph(int m) const { return morphs_[m]; }
    int src(int m) const { return morphs_[m].src; }
    int tgt(int m) const { return morphs_[m].tgt; }
    int identity(int x) const { return id_[x]; }
    int inverse(int m) const { return inv_[m]; }

    bool composable(int g, int f) const { return tgt(f) == src(g); }

    /// g after f.
    int compose(int g, int f) const {
        int r = comp_[g][f];
        if (r < 0) throw LawViolation("composing non-composable morphisms");
        return r;
    }

    std::vector<int> hom(int x, int y) const {
        std::vector<int> h;
        for (int m = 0; m < num_morphisms(); ++m)
            if (src(m) == x && tgt(m) == y) h.push_back(m);
        return h;
    }

    int object_index(const std::string& label) const {
        for (int x = 0; x < num_objects(); ++x)
            if (objects_[x] == label) return x;
        throw Error("no object labelled " + label);
    }

    int morph_index(const std::string& label) const {
        for (int m = 0; m < num_morphisms(); ++m)
            if (morphs_[m].label == label) return m;
        throw Error("no morphism labelled " + label);
    }

    bool operator==(const FinGroupoid& o) const {
        return objects_ == o.objects_ && morphs_ == o.morphs_ && id_ == o.id_ &&
               inv_ == o.inv_ && comp_ == o.comp_;
    }
    bool operator!=(const FinGroupoid& o) const { return !(*this == o); }

private:
    std::vector<std::string> objects_;
    std::vector<Morph> morphs_;
    std::vector<int> id_;
    std::vector<int> inv_;
    std::vector<std::vector<int>> comp_;  // comp_[g][f], -1 when not composable
};

inline void validate_groupoid(const FinGroupoid& x) {
    int no = x.num_objects(), nm = x.num_morphisms();
    for (int o = 0; o < no; ++o) {
        int e = x.identity(o);
        if (e < 0 || e >= nm || x.src(e) != o || x.tgt(e) != o)
            throw LawViolation("identity of object " + x.object_label(o));
    }
    for (int m = 0; m < nm; ++m) {
        if (x.src(m) < 0 || x.src(m) >= no || x.tgt(m) < 0 || x.tgt(m) >= no)
            throw LawViolation("morphism endpoints out of range");
        int i = x.inverse(m);
        if (i < 0 || i >= nm || x.src(i) != x.tgt(m) || x.tgt(i) != x.src(m))
            throw LawViolation("inverse endpoints of " + x.morph(m).label);
        if (x.compose(i, m) != x.identity(x.src(m)) ||
            x.compose(m, i) != x.identity(x.tgt(m)))
            throw LawViolation("inverse law fails for " + x.morph(m).label);
    }
    for (int g = 0; g < nm; ++g)
        for (int f = 0; f < nm; ++f) {
            if (!x.composable(g, f)) continue;
            int gf = x.compose(g, f);
            if (x.src(gf) != x.src(f) || x.tgt(gf) != x.tgt(g))
                throw LawViolation("composite endpoints");
        }
    for (int m = 0; m < nm; ++m) {
        if (x.compose(m, x.identity(x.src(m))) != m ||
            x.compose(x.identity(x.tgt(m)), m) != m)
            throw LawViolation("unit law fails for " + x.morph(m).label);
    }
    for (int h = 0; h < nm; ++h)
        for (int g = 0; g < nm; ++g) {
            if (!x.composable(h, g)) continue;
            for (int f = 0; f < nm; ++f) {
                if (!x.composable(g, f)) continue;
                if (x.compose(x.compose(h, g), f) != x.compose(h, x.compose(g, f)))
                    throw LawViolation("associativity fails");
            }
        }
}

/// One object, morphisms the group elements.
inline FinGroupoid delooping(const GroupTable& g, const std::string& obj = "*") {
    g.validate();
    int n = g.order();
    std::vector<Morph> morphs;
    for (int a = 0; a < n; ++a) morphs.push_back({"g" + std::to_string(a), 0, 0});
    std::vector<int> inv(n);
    for (int a = 0; a < n; ++a) inv[a] = g.inverse(a);
    std::vector<std::vector<int>> comp(n, std::vector<int>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) comp[a][b] = g.mul[a][b];
    return FinGroupoid({obj}, morphs, {g.unit()}, inv, comp);
}

inline FinGroupoid discrete(int n) {
    std::vector<std::string> objs;
    std::vector<Morph> morphs;
    std::vector<int> ids, inv;
    for (int i = 0; i < n; ++i) {
        objs.push_back("x" + std::to_string(i));
        morphs.push_back({"id_x" + std::to_string(i), i, i});
        ids.push_back(i);
        inv.push_back(i);
    }
    std::vector<std::vector<int>> comp(n, std::vector<int>(n, -1));
    for (int i = 0; i < n; ++i) comp[i][i] = i;
    return FinGroupoid(objs, morphs, ids, inv, comp);
}

inline FinGroupoid terminal_groupoid() { return discrete(1); }
inline FinGroupoid empty_groupoid() { return discrete(0); }

/// The pair groupoid: n objects, exactly one morphism between any two.
inline FinGroupoid codiscrete(int n) {
    std::vector<std::string> objs;
    for (int i = 0; i < n; ++i) objs.push_back("x" + std::to_string(i));
    std::vector<Morph> morphs;
    std::vector<int> ids(n), inv;
    auto idx = [n](int s, int t) { return s * n + t; };
    for (int s = 0; s < n; ++s)
        for (int t = 0; t < n; ++t)
            morphs.push_back({"p" + std::to_string(s) + "_" + std::to_string(t), s, t});
    for (int i = 0; i < n; ++i) ids[i] = idx(i, i);
    inv.resize(n * n);
    for (int s = 0; s < n; ++s)
        for (int t = 0; t < n; ++t) inv[idx(s, t)] = idx(t, s);
    std::vector<std::vector<int>> comp(n * n, std::vector<int>(n * n, -1));
    for (int s = 0; s < n; ++s)
        for (int t = 0; t < n; ++t)
            for (int u = 0; u < n; ++u) comp[idx(t, u)][idx(s, t)] = idx(s, u);
    return FinGroupoid(objs, morphs, ids, inv, comp);
}

inline FinGroupoid disjoint_union(const FinGroupoid& x, const FinGroupoid& y) {
    std::vector<std::string> objs;
    std::vector<Morph> morphs;
    std::vector<int> ids, inv;
    for (int i = 0; i < x.num_objects(); ++i) objs.push_back("l." + x.object_label(i));
    for (int i = 0; i < y.num_objects(); ++i) objs.push_back("r." + y.object_label(i));
    int oo = x.num_objects(), mo = x.num_morphisms();
    for (int m = 0; m < x.num_morphisms(); ++m)
        morphs.push_back({"l." + x.morph(m).label, x.src(m), x.tgt(m)});
    for (int m = 0; m < y.num_morphisms(); ++m)
        morphs.push_back({"r." + y.morph(m).label, oo + y.src(m), oo + y.tgt(m)});
    for (int i = 0; i < x.num_objects(); ++i) ids.push_back(x.identity(i));
    for (int i = 0; i < y.num_objects(); ++i) ids.push_back(mo + y.identity(i));
    for (int m = 0; m < x.num_morphisms(); ++m) inv.push_back(x.inverse(m));
    for (int m = 0; m < y.num_morphisms(); ++m) inv.push_back(mo + y.inverse(m));
    int nm = static_cast<int>(morphs.size());
    std::vector<std::vector<int>> comp(nm, std::vector<int>(nm, -1));
    for (int g = 0; g < x.num_morphisms(); ++g)
        for (int f = 0; f < x.num_morphisms(); ++f)
            if (x.composable(g, f)) comp[g][f] = x.compose(g, f);
    for (int g = 0; g < y.num_morphisms(); ++g)
        for (int f = 0; f < y.num_morphisms(); ++f)
            if (y.composable(g, f)) comp[mo + g][mo + f] = mo + y.compose(g, f);
    return FinGroupoid(objs, morphs, ids, inv, comp);
}

inline FinGroupoid product(const FinGroupoid& x, const FinGroupoid& y) {
    std::vector<std::string> objs;
    for (int a = 0; a < x.num_objects(); ++a)
        for (int b = 0; b < y.num_objects(); ++b)
            objs.push_back("(" + x.object_label(a) + "," + y.object_label(b) + ")");
    auto oidx = [&](int a, int b) { return a * y.num_objects() + b; };
    auto midx = [&](int m, int n) { return m * y.num_morphisms() + n; };
    std::vector<Morph> morphs;
    for (int m = 0; m < x.num_morphisms(); ++m)
        for (int n = 0; n < y.num_morphisms(); ++n)
            morphs.push_back({"(" + x.morph(m).label + "," + y.morph(n).label + ")",
                              oidx(x.src(m), y.src(n)), oidx(x.tgt(m), y.tgt(n))});
    std::vector<int> ids, inv(morphs.size());
    for (int a = 0; a < x.num_objects(); ++a)
        for (int b = 0; b < y.num_objects(); ++b)
            ids.push_back(midx(x.identity(a), y.identity(b)));
    for (int m = 0; m < x.num_morphisms(); ++m)
        for (int n = 0; n < y.num_morphisms(); ++n)
            inv[midx(m, n)] = midx(x.inverse(m), y.inverse(n));
    int nm = static_cast<int>(morphs.size());
    std::vector<std::vector<int>> comp(nm, std::vector<int>(nm, -1));
    for (int g = 0; g < x.num_morphisms(); ++g)
        for (int h = 0; h < y.num_morphisms(); ++h)
            for (int f = 0; f < x.num_morphisms(); ++f)
                for (int k = 0; k < y.num_morphisms(); ++k)
                    if (x.composable(g, f) && y.composable(h, k))
                        comp[midx(g, h)][midx(f, k)] =
                            midx(x.compose(g, f), y.compose(h, k));
    return FinGroupoid(objs, morphs, ids, inv, comp);
}

// ---------------------------------------------------------------------------
// Functors

class GroupoidFunctor {
public:
    GroupoidFunctor() = default;
    GroupoidFunctor(FinGroupoid source, FinGroupoid target, std::vector<int> obj_map,
                    std::vector<int> mor_map)
        : source_(std::move(source)),
          target_(std::move(target)),
          obj_(std::move(obj_map)),
          mor_(std::move(mor_map)) {}

    static GroupoidFunctor identity(const FinGroupoid& x) {
        std::vector<int> o(x.num_objects()), m(x.num_morphisms());
        std::iota(o.begin(), o.end(), 0);
        std::iota(m.begin(), m.end(), 0);
        return GroupoidFunctor(x, x, o, m);
    }

    const FinGroupoid& source() const { return source_; }
    const FinGroupoid& target() const { return target_; }
    int on_object(int x) const { return obj_[x]; }
    int on_morph(int m) const { return mor_[m]; }

    bool operator==(const GroupoidFunctor& o) const {
        return source_ == o.source_ && target_ == o.target_ && obj_ == o.obj_ &&
               mor_ == o.mor_;
    }

private:
    FinGroupoid source_, target_;
    std::vector<int> obj_, mor_;
};

inline void validate_functor(const GroupoidFunctor& f) {
    const FinGroupoid& x = f.source();
    const FinGroupoid& y = f.target();
    for (int m = 0; m < x.num_morphisms(); ++m) {
        int fm = f.on_morph(m);
        if (fm < 0 || fm >= y.num_morphisms())
            throw LawViolation("morphism image out of range");
        if (y.src(fm) != f.on_object(x.src(m)) || y.tgt(fm) != f.on_object(x.tgt(m)))
            throw LawViolation("functor does not preserve endpoints at " +
                               x.morph(m).label);
    }
    for (int o = 0; o < x.num_objects(); ++o)
        if (f.on_morph(x.identity(o)) != y.identity(f.on_object(o)))
            throw LawViolation("functor does not preserve identity of " +
                               x.object_label(o));
    for (int g = 0; g < x.num_morphisms(); ++g)
        for (int h = 0; h < x.num_morphisms(); ++h) {
            if (!x.composable(g, h)) continue;
            if (f.on_morph(x.compose(g, h)) != y.compose(f.on_morph(g), f.on_morph(h)))
                throw LawViolation("functor does not preserve composition");
        }
}

inline GroupoidFunctor compose(const GroupoidFunctor& g, const GroupoidFunctor& f) {
    if (f.target() != g.source()) throw ObjectMismatch("functor composition mismatch");
    std::vector<int> o(f.source().num_objects()), m(f.source().num_morphisms());
    for (std::size_t i = 0; i < o.size(); ++i)
        o[i] = g.on_object(f.on_object(static_cast<int>(i)));
    for (std::size_t i = 0; i < m.size(); ++i)
        m[i] = g.on_morph(f.on_morph(static_cast<int>(i)));
    return GroupoidFunctor(f.source(), g.target(), o, m);
}

/// The unique functor to the terminal groupoid.
inline GroupoidFunctor to_point(const FinGroupoid& x) {
    return GroupoidFunctor(x, terminal_groupoid(),
                           std::vector<int>(x.num_objects(), 0),
                           std::vector<int>(x.num_morphisms(), 0));
}

/// The functor pt -> x picking an object.
inline GroupoidFunctor from_point(const FinGroupoid& x, int obj) {
    return GroupoidFunctor(terminal_groupoid(), x, {obj}, {x.identity(obj)});
}

inline GroupoidFunctor initial_functor(const FinGroupoid& x) {
    return GroupoidFunctor(empty_groupoid(), x, {}, {});
}

/// Left (which=0) or right (which=1) coprojection into a disjoint union.
inline GroupoidFunctor coprojection(const FinGroupoid& x, const FinGroupoid& y,
                                    int which) {
    FinGroupoid u = disjoint_union(x, y);
    const FinGroupoid& part = which == 0 ? x : y;
    int oo = which == 0 ? 0 : x.num_objects();
    int mo = which == 0 ? 0 : x.num_morphisms();
    std::vector<int> o(part.num_objects()), m(part.num_morphisms());
    for (std::size_t i = 0; i < o.size(); ++i) o[i] = oo + static_cast<int>(i);
    for (std::size_t i = 0; i < m.size(); ++i) m[i] = mo + static_cast<int>(i);
    return GroupoidFunctor(part, u, o, m);
}

/// Projection out of product(x, y) onto the factor given by `which`.
inline GroupoidFunctor projection(const FinGroupoid& x, const FinGroupoid& y,
                                  int which) {
    FinGroupoid p = product(x, y);
    std::vector<int> o(p.num_objects()), m(p.num_morphisms());
    for (int a = 0; a < x.num_objects(); ++a)
        for (int b = 0; b < y.num_objects(); ++b)
            o[a * y.num_objects() + b] = which == 0 ? a : b;
    for (int g = 0; g < x.num_morphisms(); ++g)
        for (int h = 0; h < y.num_morphisms(); ++h)
            m[g * y.num_morphisms() + h] = which == 0 ? g : h;
    return GroupoidFunctor(p, which == 0 ? x : y, o, m);
}

/// Product functor f x g : product(src f, src g) -> product(tgt f, tgt g).
inline GroupoidFunctor product_functor(const GroupoidFunctor& f,
                                       const GroupoidFunctor& g) {
    FinGroupoid p = product(f.source(), g.source());
    FinGroupoid q = product(f.target(), g.target());
    std::vector<int> o(p.num_objects()), m(p.num_morphisms());
    int yn = g.source().num_objects(), ym = g.source().num_morphisms();
    int tn = g.target().num_objects(), tm = g.target().num_morphisms();
    for (int a = 0; a < f.source().num_objects(); ++a)
        for (int b = 0; b < yn; ++b)
            o[a * yn + b] = f.on_object(a) * tn + g.on_object(b);
    for (int u = 0; u < f.source().num_morphisms(); ++u)
        for (int v = 0; v < ym; ++v)
            m[u * ym + v] = f.on_morph(u) * tm + g.on_morph(v);
    return GroupoidFunctor(p, q, o, m);
}

/// Any object map between pair groupoids induces a functor.
inline GroupoidFunctor codiscrete_functor(int k, int l, const std::vector<int>& o) {
    FinGroupoid src = codiscrete(k), tgt = codiscrete(l);
    std::vector<int> om(o.begin(), o.end()), mm(k * k);
    for (int s = 0; s < k; ++s)
        for (int t = 0; t < k; ++t) mm[s * k + t] = o[s] * l + o[t];
    return GroupoidFunctor(src, tgt, om, mm);
}

/// f1 u f2 : X1 u X2 -> Y1 u Y2 between the corresponding disjoint unions.
inline GroupoidFunctor disjoint_union_functor(const GroupoidFunctor& f1,
                                              const GroupoidFunctor& f2) {
    FinGroupoid src = disjoint_union(f1.source(), f2.source());
    FinGroupoid tgt = disjoint_union(f1.target(), f2.target());
    std::vector<int> om(src.num_objects()), mm(src.num_morphisms());
    int oo = f1.source().num_objects(), mo = f1.source().num_morphisms();
    int to = f1.target().num_objects(), tm = f1.target().num_morphisms();
    for (int o = 0; o < oo; ++o) om[o] = f1.on_object(o);
    for (int o = 0; o < f2.source().num_objects(); ++o)
        om[oo + o] = to + f2.on_object(o);
    for (int m = 0; m < mo; ++m) mm[m] = f1.on_morph(m);
    for (int m = 0; m < f2.source().num_morphisms(); ++m)
        mm[mo + m] = tm + f2.on_morph(m);
    return GroupoidFunctor(src, tgt, om, mm);
}

/// Full subgroupoid on a subset of objects, with its inclusion functor.
struct FullSubgroupoid {
    FinGroupoid object;
    GroupoidFunctor inclusion;
    std::vector<int> obj_of;  // subgroupoid object -> ambient object
    std::vector<int> mor_of;  // subgroupoid morphism -> ambient morphism
};

inline FullSubgroupoid full_subgroupoid(const FinGroupoid& x,
                                        const std::vector<int>& objects) {
    std::vector<int> oidx(x.num_objects(), -1);
    std::vector<std::string> objs;
    std::vector<int> obj_of;
    for (int o : objects) {
        oidx[o] = static_cast<int>(objs.size());
        objs.push_back(x.object_label(o));
        obj_of.push_back(o);
    }
    std::vector<Morph> morphs;
    std::vector<int> mor_of, midx(x.num_morphisms(), -1);
    for (int m = 0; m < x.num_morphisms(); ++m)
        if (oidx[x.src(m)] >= 0 && oidx[x.tgt(m)] >= 0) {
            midx[m] = static_cast<int>(morphs.size());
            morphs.push_back({x.morph(m).label, oidx[x.src(m)], oidx[x.tgt(m)]});
            mor_of.push_back(m);
        }
    std::vector<int> ids, inv;
    for (int o : objects) ids.push_back(midx[x.identity(o)]);
    for (int m : mor_of) inv.push_back(midx[x.inverse(m)]);
    std::vector<std::vector<int>> comp(morphs.size(), std::vector<int>(morphs.size(), -1));
    for (std::size_t g = 0; g < mor_of.size(); ++g)
        for (std::size_t f = 0; f < mor_of.size(); ++f)
            if (x.composable(mor_of[g], mor_of[f]))
                comp[g][f] = midx[x.compose(mor_of[g], mor_of[f])];
    FinGroupoid sub(objs, morphs, ids, inv, comp);
    GroupoidFunctor incl(sub, x, obj_of, mor_of);
    return {sub, incl, obj_of, mor_of};
}

/// Delooping of a group homomorphism h : g -> k (h[a] in k).
inline GroupoidFunctor delooping_functor(const GroupTable& g, const GroupTable& k,
                                         const std::vector<int>& h) {
    for (int a = 0; a < g.order(); ++a)
        for (int b = 0; b < g.order(); ++b)
            if (h[g.mul[a][b]] != k.mul[h[a]][h[b]])
                throw LawViolation("not a group homomorphism");
    return GroupoidFunctor(delooping(g), delooping(k), {0},
                           std::vector<int>(h.begin(), h.end()));
}

// ---------------------------------------------------------------------------
// pi0, aut, classification

/// Connected components; component ids are least object indices, listed in
/// ascending order of that representative.
inline std::vector<std::vector<int>> pi0(const FinGroupoid& x) {
    int n = x.num_objects();
    std::vector<int> root(n);
    std::iota(root.begin(), root.end(), 0);
    std::function<int(int)> find = [&](int a) {
        return root[a] == a ? a : root[a] = find(root[a]);
    };
    for (int m = 0; m < x.num_morphisms(); ++m) {
        int a = find(x.src(m)), b = find(x.tgt(m));
        if (a != b) root[std::max(a, b)] = std::min(a, b);
    }
    std::map<int, std::vector<int>> comps;
    for (int o = 0; o < n; ++o) comps[find(o)].push_back(o);
    std::vector<std::vector<int>> out;
    for (auto& [r, objs] : comps) out.push_back(objs);
    return out;
}

/// Automorphism group at an object: elements are the loops in ascending
/// morphism order, with the multiplication table of composition.
struct AutGroup {
    GroupTable table;
    std::vector<int> loops;  // morphism index of each element
};

inline AutGroup aut(const FinGroupoid& x, int obj) {
    AutGroup a;
    a.loops = x.hom(obj, obj);
    int n = static_cast<int>(a.loops.size());
    auto pos = [&](int m) {
        return static_cast<int>(std::lower_bound(a.loops.begin(), a.loops.end(), m) -
                                a.loops.begin());
    };
    a.table.mul.assign(n, std::vector<int>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            a.table.mul[i][j] = pos(x.compose(a.loops[i], a.loops[j]));
    return a;
}

struct GroupoidFlags {
    bool we = false;
    bool fib = false;
    bool cof = false;
};

/// we: equivalence of categories (essentially surjective and hom-bijective);
/// fib: every morphism with a lifted domain has a lift; cof: injective on
/// objects. All checks exhaustive.
inline GroupoidFlags classify_functor(const GroupoidFunctor& f) {
    const FinGroupoid& x = f.source();
    const FinGroupoid& y = f.target();
    GroupoidFlags flags;

    flags.cof = true;
    std::vector<bool> seen(y.num_objects(), false);
    for (int o = 0; o < x.num_objects(); ++o) {
        if (seen[f.on_object(o)]) flags.cof = false;
        seen[f.on_object(o)] = true;
    }

    // essential surjectivity
    bool ess = true;
    for (int w = 0; w < y.num_objects(); ++w) {
        bool hit = false;
        for (int o = 0; o < x.num_objects() && !hit; ++o)
            if (!y.hom(f.on_object(o), w).empty()) hit = true;
        if (!hit) ess = false;
    }
    // fully faithful
    bool ff = true;
    for (int a = 0; a < x.num_objects() && ff; ++a)
        for (int b = 0; b < x.num_objects() && ff; ++b) {
            auto dom = x.hom(a, b);
            auto cod = y.hom(f.on_object(a), f.on_object(b));
            if (dom.size() != cod.size()) {
                ff = false;
                break;
            }
            std::vector<int> images;
            for (int m : dom) images.push_back(f.on_morph(m));
            std::sort(images.begin(), images.end());
            if (std::adjacent_find(images.begin(), images.end()) != images.end())
                ff = false;
        }
    flags.we = ess && ff;

    flags.fib = true;
    for (int m = 0; m < y.num_morphisms() && flags.fib; ++m)
        for (int o = 0; o < x.num_objects(); ++o) {
            if (f.on_object(o) != y.src(m)) continue;
            bool lifted = false;
            for (int l = 0; l < x.num_morphisms() && !lifted; ++l)
                if (x.src(l) == o && f.on_morph(l) == m) lifted = true;
            if (!lifted) {
                flags.fib = false;
                break;
            }
        }
    return flags;
}

// ---------------------------------------------------------------------------
// Skeletization

struct Skeletization {
    FinGroupoid skeleton;   // disjoint union of deloopings
    GroupoidFunctor iota;   // skeleton -> x
    GroupoidFunctor p;      // x -> skeleton, p o iota = id
    std::vector<int> gamma; // per object of x: morphism basepoint -> x
};

/// Deterministic deformation retraction onto a skeleton: basepoints are the
/// least object index per component; gamma_x is the least morphism from the
/// basepoint to x, the identity at basepoints themselves.
inline Skeletization skeletize(const FinGroupoid& x) {
    auto comps = pi0(x);
    int n = x.num_objects();
    std::vector<int> comp_of(n), base_of(n);
    for (std::size_t c = 0; c < comps.size(); ++c)
        for (int o : comps[c]) {
            comp_of[o] = static_cast<int>(c);
            base_of[o] = comps[c].front();
        }
    std::vector<int> gamma(n, -1);
    for (int o = 0; o < n; ++o) {
        if (o == base_of[o]) {
            gamma[o] = x.identity(o);
            continue;
        }
        auto h = x.hom(base_of[o], o);
        if (h.empty()) throw LawViolation("object not reachable from its basepoint");
        gamma[o] = h.front();
    }

    // skeleton objects: basepoints in component order; morphisms: their loops
    std::vector<std::string> objs;
    std::vector<Morph> morphs;
    std::vector<int> ids, inv;
    std::vector<int> loop_of;          // skeleton morphism -> x morphism
    std::map<int, int> skel_of_loop;   // x loop -> skeleton morphism
    for (std::size_t c = 0; c < comps.size(); ++c) {
        int b = comps[c].front();
        objs.push_back(x.object_label(b));
        for (int l : x.hom(b, b)) {
            skel_of_loop[l] = static_cast<int>(morphs.size());
            morphs.push_back({x.morph(l).label, static_cast<int>(c),
                              static_cast<int>(c)});
            loop_of.push_back(l);
        }
    }
    ids.resize(comps.size());
    for (std::size_t c = 0; c < comps.size(); ++c)
        ids[c] = skel_of_loop[x.identity(comps[c].front())];
    inv.resize(morphs.size());
    for (std::size_t m = 0; m < morphs.size(); ++m)
        inv[m] = skel_of_loop[x.inverse(loop_of[m])];
    std::vector<std::vector<int>> comp(morphs.size(),
                                       std::vector<int>(morphs.size(), -1));
    for (std::size_t g = 0; g < morphs.size(); ++g)
        for (std::size_t f = 0; f < morphs.size(); ++f)
            if (morphs[g].src == morphs[f].tgt && morphs[g].src == morphs[f].src)
                comp[g][f] = skel_of_loop[x.compose(loop_of[g], loop_of[f])];
    FinGroupoid skel(objs, morphs, ids, inv, comp);

    std::vector<int> iota_obj(comps.size()), iota_mor(morphs.size());
    for (std::size_t c = 0; c < comps.size(); ++c) iota_obj[c] = comps[c].front();
    for (std::size_t m = 0; m < morphs.size(); ++m) iota_mor[m] = loop_of[m];
    GroupoidFunctor iota(skel, x, iota_obj, iota_mor);

    std::vector<int> p_obj(n), p_mor(x.num_morphisms());
    for (int o = 0; o < n; ++o) p_obj[o] = comp_of[o];
    for (int m = 0; m < x.num_morphisms(); ++m) {
        // gamma_tgt^{-1} o m o gamma_src is a loop at the basepoint
        int loop = x.compose(x.inverse(gamma[x.tgt(m)]), x.compose(m, gamma[x.src(m)]));
        p_mor[m] = skel_of_loop.at(loop);
    }
    GroupoidFunctor p(x, skel, p_obj, p_mor);

    return {skel, iota, p, gamma};
}

// ---------------------------------------------------------------------------
// Exponentials over discrete bases

inline bool is_discrete(const FinGroupoid& x) {
    return x.num_morphisms() == x.num_objects();
}

/// z^y for y discrete: the |Obj(y)|-fold product of z.
struct FunctorGroupoid {
    FinGroupoid object;                 // z^y
    std::vector<GroupoidFunctor> evals; // ev_obj : z^y -> z, per object of y
};

inline FunctorGroupoid functor_groupoid(const FinGroupoid& y, const FinGroupoid& z) {
    if (!is_discrete(y)) throw NotDiscrete("functor_groupoid: exponent must be discrete");
    int k = y.num_objects();
    if (k == 0) {
        FinGroupoid pt = terminal_groupoid();
        return {pt, {}};
    }
    int zo = z.num_objects(), zm = z.num_morphisms();
    int objs_n = 1, mors_n = 1;
    for (int i = 0; i < k; ++i) {
        objs_n *= zo;
        mors_n *= zm;
    }
    std::vector<std::string> objs(objs_n);
    std::vector<Morph> morphs(mors_n);
    auto obj_tuple = [&](int code) {
        std::vector<int> t(k);
        for (int i = k - 1; i >= 0; --i) {
            t[i] = code % zo;
            code /= zo;
        }
        return t;
    };
    auto mor_tuple = [&](int code) {
        std::vector<int> t(k);
        for (int i = k - 1; i >= 0; --i) {
            t[i] = code % zm;
            code /= zm;
        }
        return t;
    };
    auto obj_code = [&](const std::vector<int>& t) {
        int c = 0;
        for (int v : t) c = c * zo + v;
        return c;
    };
    auto mor_code = [&](const std::vector<int>& t) {
        int c = 0;
        for (int v : t) c = c * zm + v;
        return c;
    };
    for (int c = 0; c < objs_n; ++c) {
        auto t = obj_tuple(c);
        std::string l = "(";
        for (int i = 0; i < k; ++i) l += (i ? "," : "") + z.object_label(t[i]);
        objs[c] = l + ")";
    }
    for (int c = 0; c < mors_n; ++c) {
        auto t = mor_tuple(c);
        std::string l = "(";
        std::vector<int> s(k), e(k);
        for (int i = 0; i < k; ++i) {
            l += (i ? "," : "") + z.morph(t[i]).label;
            s[i] = z.src(t[i]);
            e[i] = z.tgt(t[i]);
        }
        morphs[c] = {l + ")", obj_code(s), obj_code(e)};
    }
    std::vector<int> ids(objs_n), inv(mors_n);
    for (int c = 0; c < objs_n; ++c) {
        auto t = obj_tuple(c);
        std::vector<int> e(k);
        for (int i = 0; i < k; ++i) e[i] = z.identity(t[i]);
        ids[c] = mor_code(e);
    }
    for (int c = 0; c < mors_n; ++c) {
        auto t = mor_tuple(c);
        std::vector<int> e(k);
        for (int i = 0; i < k; ++i) e[i] = z.inverse(t[i]);
        inv[c] = mor_code(e);
    }
    std::vector<std::vector<int>> comp(mors_n, std::vector<int>(mors_n, -1));
    for (int g = 0; g < mors_n; ++g) {
        auto tg = mor_tuple(g);
        for (int f = 0; f < mors_n; ++f) {
            auto tf = mor_tuple(f);
            bool ok = true;
            std::vector<int> r(k);
            for (int i = 0; i < k && ok; ++i) {
                if (!z.composable(tg[i], tf[i]))
                    ok = false;
                else
                    r[i] = z.compose(tg[i], tf[i]);
            }
            if (ok) comp[g][f] = mor_code(r);
        }
    }
    FinGroupoid zy(objs, morphs, ids, inv, comp);
    std::vector<GroupoidFunctor> evals;
    for (int i = 0; i < k; ++i) {
        std::vector<int> om(objs_n), mm(mors_n);
        for (int c = 0; c < objs_n; ++c) om[c] = obj_tuple(c)[i];
        for (int c = 0; c < mors_n; ++c) mm[c] = mor_tuple(c)[i];
        evals.emplace_back(zy, z, om, mm);
    }
    return {zy, evals};
}

// ---------------------------------------------------------------------------
// Set-level pushout-product (the base-case oracle)

struct SetMap {
    int domain = 0, codomain = 0;
    std::vector<int> map;  // size = domain, values < codomain

    void validate() const {
        if (static_cast<int>(map.size()) != domain) throw ShapeError("SetMap size");
        for (int v : map)
            if (v < 0 || v >= codomain) throw ShapeError("SetMap value range");
    }
};

struct SetPushoutProduct {
    SetMap map;                       // domain = quotient, codomain = X' x Y'
    std::vector<int> fiber_sizes;     // per codomain element (x' * |Y'| + y')
};

/// The universal map out of (X x Y') u_{X x Y} (X' x Y) into X' x Y'.
inline SetPushoutProduct set_pushout_product(const SetMap& f, const SetMap& g) {
    f.validate();
    g.validate();
    int nx = f.domain, nxp = f.codomain, ny = g.domain, nyp = g.codomain;
    // disjoint union X x Y' (first) and X' x Y (second), glued along X x Y
    int left = nx * nyp, total = left + nxp * ny;
    std::vector<int> root(total);
    std::iota(root.begin(), root.end(), 0);
    std::function<int(int)> find = [&](int a) {
        return root[a] == a ? a : root[a] = find(root[a]);
    };
    auto unite = [&](int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) root[std::max(a, b)] = std::min(a, b);
    };
    for (int x = 0; x < nx; ++x)
        for (int y = 0; y < ny; ++y)
            unite(x * nyp + g.map[y], left + f.map[x] * ny + y);
    std::map<int, int> cls;
    for (int a = 0; a < total; ++a) {
        int r = find(a);
        if (!cls.count(r)) {
            int next = static_cast<int>(cls.size());
            cls[r] = next;
        }
    }
    SetMap out;
    out.domain = static_cast<int>(cls.size());
    out.codomain = nxp * nyp;
    out.map.assign(out.domain, -1);
    for (int a = 0; a < total; ++a) {
        int c = cls[find(a)];
        int image = a < left ? f.map[a / nyp] * nyp + (a % nyp)
                             : (a - left) / ny * nyp + g.map[(a - left) % ny];
        if (out.map[c] >= 0 && out.map[c] != image)
            throw Error("set_pushout_product: map does not descend");
        out.map[c] = image;
    }
    std::vector<int> fibers(out.codomain, 0);
    for (int c = 0; c < out.domain; ++c) ++fibers[out.map[c]];
    return {out, fibers};
}

// ---------------------------------------------------------------------------
// Pullbacks

struct GroupoidPullback {
    FinGroupoid object;
    GroupoidFunctor prl;  // -> source of f
    GroupoidFunctor prr;  // -> source of g
};

/// Objects are object pairs agreeing in the shared codomain, morphisms are
/// morphism pairs agreeing there.
inline GroupoidPullback groupoid_pullback(const GroupoidFunctor& f,
                                          const GroupoidFunctor& g) {
    if (f.target() != g.target()) throw ObjectMismatch("pullback: codomain mismatch");
    const FinGroupoid& x = f.source();
    const FinGroupoid& y = g.source();
    std::vector<std::string> objs;
    std::vector<std::pair<int, int>> obj_pairs;
    for (int a = 0; a < x.num_objects(); ++a)
        for (int b = 0; b < y.num_objects(); ++b)
            if (f.on_object(a) == g.on_object(b)) {
                objs.push_back("(" + x.object_label(a) + "," + y.object_label(b) + ")");
                obj_pairs.push_back({a, b});
            }
    std::map<std::pair<int, int>, int> obj_idx;
    for (std::size_t i = 0; i < obj_pairs.size(); ++i) obj_idx[obj_pairs[i]] = static_cast<int>(i);
    std::vector<Morph> morphs;
    std::vector<std::pair<int, int>> mor_pairs;
    for (int m = 0; m < x.num_morphisms(); ++m)
        for (int n = 0; n < y.num_morphisms(); ++n)
            if (f.on_morph(m) == g.on_morph(n)) {
                morphs.push_back({"(" + x.morph(m).label + "," + y.morph(n).label + ")",
                                  obj_idx.at({x.src(m), y.src(n)}),
                                  obj_idx.at({x.tgt(m), y.tgt(n)})});
                mor_pairs.push_back({m, n});
            }
    std::map<std::pair<int, int>, int> mor_idx;
    for (std::size_t i = 0; i < mor_pairs.size(); ++i) mor_idx[mor_pairs[i]] = static_cast<int>(i);
    std::vector<int> ids(obj_pairs.size()), inv(mor_pairs.size());
    for (std::size_t i = 0; i < obj_pairs.size(); ++i)
        ids[i] = mor_idx.at({x.identity(obj_pairs[i].first), y.identity(obj_pairs[i].second)});
    for (std::size_t i = 0; i < mor_pairs.size(); ++i)
        inv[i] = mor_idx.at({x.inverse(mor_pairs[i].first), y.inverse(mor_pairs[i].second)});
    std::vector<std::vector<int>> comp(mor_pairs.size(),
                                       std::vector<int>(mor_pairs.size(), -1));
    for (std::size_t gg = 0; gg < mor_pairs.size(); ++gg)
        for (std::size_t ff = 0; ff < mor_pairs.size(); ++ff) {
            auto [gm, gn] = mor_pairs[gg];
            auto [fm, fn] = mor_pairs[ff];
            if (x.composable(gm, fm) && y.composable(gn, fn))
                comp[gg][ff] = mor_idx.at({x.compose(gm, fm), y.compose(gn, fn)});
        }
    FinGroupoid pb(objs, morphs, ids, inv, comp);
    std::vector<int> lo(obj_pairs.size()), lm(mor_pairs.size());
    std::vector<int> ro(obj_pairs.size()), rm(mor_pairs.size());
    for (std::size_t i = 0; i < obj_pairs.size(); ++i) {
        lo[i] = obj_pairs[i].first;
        ro[i] = obj_pairs[i].second;
    }
    for (std::size_t i = 0; i < mor_pairs.size(); ++i) {
        lm[i] = mor_pairs[i].first;
        rm[i] = mor_pairs[i].second;
    }
    return {pb, GroupoidFunctor(pb, x, lo, lm), GroupoidFunctor(pb, y, ro, rm)};
}

// ---------------------------------------------------------------------------
// Exhaustive functor enumeration

/// All functors x -> y in deterministic order: object images lexicographic,
/// then free-morphism images lexicographic. Throws BudgetExceeded when the
/// raw candidate count passes `budget`.
inline std::vector<GroupoidFunctor> enumerate_functors(const FinGroupoid& x,
                                                       const FinGroupoid& y,
                                                       std::uint64_t budget) {
    std::vector<GroupoidFunctor> out;
    int nx = x.num_objects();
    if (y.num_objects() == 0) {
        if (nx == 0) out.push_back(GroupoidFunctor(x, y, {}, {}));
        return out;
    }
    // free morphisms: non-identities with m <= inverse(m)
    std::vector<int> free;
    std::vector<bool> is_id(x.num_morphisms(), false);
    for (int o = 0; o < nx; ++o) is_id[x.identity(o)] = true;
    for (int m = 0; m < x.num_morphisms(); ++m)
        if (!is_id[m] && m <= x.inverse(m)) free.push_back(m);

    std::vector<int> obj(nx, 0);
    std::uint64_t total = 0;
    for (;;) {
        std::uint64_t cand = 1;
        bool possible = true;
        std::vector<std::vector<int>> choices(free.size());
        for (std::size_t i = 0; i < free.size(); ++i) {
            choices[i] = y.hom(obj[x.src(free[i])], obj[x.tgt(free[i])]);
            if (choices[i].empty()) possible = false;
            cand *= std::max<std::uint64_t>(1, choices[i].size());
            if (cand > budget) throw BudgetExceeded("functor enumeration over budget");
        }
        if (possible) {
            total += cand;
            if (total > budget) throw BudgetExceeded("functor enumeration over budget");
            std::vector<std::size_t> pick(free.size(), 0);
            for (;;) {
                std::vector<int> mor(x.num_morphisms(), -1);
                for (int o = 0; o < nx; ++o)
                    mor[x.identity(o)] = y.identity(obj[o]);
                for (std::size_t i = 0; i < free.size(); ++i) {
                    mor[free[i]] = choices[i][pick[i]];
                    mor[x.inverse(free[i])] = y.inverse(choices[i][pick[i]]);
                }
                GroupoidFunctor cand_f(x, y, obj, mor);
                bool ok = true;
                try {
                    validate_functor(cand_f);
                } catch (const LawViolation&) {
                    ok = false;
                }
                if (ok) out.push_back(cand_f);
                std::size_t i = 0;
                while (i < pick.size() && ++pick[i] == choices[i].size()) pick[i++] = 0;
                if (i >= pick.size()) break;
            }
        }
        int i = nx - 1;
        while (i >= 0 && ++obj[i] == y.num_objects()) obj[i--] = 0;
        if (i < 0) break;
    }
    return out;
}

}  // namespace locsys
