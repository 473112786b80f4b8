#pragma once

/// Seeded generators for the property suites. Random complexes are sums of
/// shifted disks and spheres conjugated by invertible degreewise changes of
/// basis, so d o d = 0 holds by construction with controlled homology.

#include <random>

#include "locsys/kan.hpp"

namespace locsys {

using Rng = std::mt19937_64;

inline Matrix random_invertible(Rng& rng, const Field& F, int n) {
    if (n == 0) return Matrix(0, 0, F);
    std::uniform_int_distribution<long> entry(-3, 3);
    for (;;) {
        Matrix m(n, n, F);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) m.at(i, j) = F.from_int(entry(rng));
        if (is_invertible(m)) return m;
    }
}

/// Window-bounded complex with degreewise dimension at most max_dim.
inline ChainComplex random_complex(Rng& rng, const Field& F, int lo, int hi,
                                   int max_dim) {
    std::uniform_int_distribution<int> deg(lo, hi);
    std::uniform_int_distribution<int> coin(0, 2);
    ChainComplex c(F);
    std::uniform_int_distribution<int> count(0, std::max(1, max_dim * (hi - lo + 1) / 2));
    int summands = count(rng);
    for (int s = 0; s < summands; ++s) {
        int d = deg(rng);
        ChainComplex piece =
            (coin(rng) == 0 || d == lo) ? sphere(d, F) : disk(d, F);
        ChainComplex next = direct_sum(c, piece);
        bool fits = true;
        for (int n = next.lo(); n <= next.hi(); ++n)
            if (next.dim(n) > max_dim) fits = false;
        if (fits) c = next;
    }
    if (c.empty()) return c;
    // conjugate by a random invertible degreewise change of basis
    std::map<int, Matrix> s;
    for (int n = c.lo(); n <= c.hi(); ++n) s[n] = random_invertible(rng, F, c.dim(n));
    std::map<int, Matrix> diffs;
    for (int n = c.lo() + 1; n <= c.hi(); ++n)
        diffs[n] = mat_mul(mat_mul(s[n - 1], c.diff(n)), inverse(s[n]));
    return ChainComplex(F, c.dims_map(), diffs);
}

/// Basis of the space of chain maps v -> w, solved from the commutation
/// equations d o f = f o d; independent of the mapping-complex route.
struct ChainMapSpace {
    std::vector<ChainMap> basis;
};

namespace detail {

struct ChainMapSystem {
    Matrix sys;
    std::map<int, int> offset;  // degree -> first unknown index of f_n
    int lo, hi;
};

inline ChainMapSystem chain_map_system(const ChainComplex& v, const ChainComplex& w) {
    const Field& F = v.field();
    int lo = std::min(v.lo(), w.lo()), hi = std::max(v.hi(), w.hi());
    std::map<int, int> offset;
    int unknowns = 0;
    for (int n = lo; n <= hi; ++n) {
        offset[n] = unknowns;
        unknowns += v.dim(n) * w.dim(n);
    }
    int equations = 0;
    for (int n = lo; n <= hi + 1; ++n) equations += w.dim(n - 1) * v.dim(n);
    Matrix sys(equations, unknowns, F);
    int eq = 0;
    for (int n = lo; n <= hi + 1; ++n) {
        Matrix dw = w.diff(n), dv = v.diff(n);
        for (int r = 0; r < w.dim(n - 1); ++r)
            for (int c = 0; c < v.dim(n); ++c) {
                // row of (d^w f_n - f_{n-1} d^v)_{r,c} = 0
                for (int i = 0; i < w.dim(n); ++i)
                    if (dw.at(r, i) != 0)
                        sys.at(eq, offset[n] + i * v.dim(n) + c) = dw.at(r, i);
                for (int j = 0; j < v.dim(n - 1); ++j)
                    if (dv.at(j, c) != 0) {
                        int col = offset[n - 1] + r * v.dim(n - 1) + j;
                        sys.at(eq, col) = F.sub(sys.at(eq, col), dv.at(j, c));
                    }
                ++eq;
            }
    }
    return {sys, offset, lo, hi};
}

}  // namespace detail

inline int chain_map_space_dim(const ChainComplex& v, const ChainComplex& w) {
    Matrix sys = detail::chain_map_system(v, w).sys;
    return static_cast<int>(sys.cols() - rank(sys));
}

inline ChainMapSpace chain_map_space(const ChainComplex& v, const ChainComplex& w) {
    const Field& F = v.field();
    auto [sys, offset, lo, hi] = detail::chain_map_system(v, w);
    Matrix k = kernel_basis(sys);
    ChainMapSpace space;
    for (std::size_t b = 0; b < k.cols(); ++b) {
        std::map<int, Matrix> comps;
        for (int n = lo; n <= hi; ++n) {
            if (v.dim(n) == 0 || w.dim(n) == 0) continue;
            Matrix m(w.dim(n), v.dim(n), F);
            for (int i = 0; i < w.dim(n); ++i)
                for (int j = 0; j < v.dim(n); ++j)
                    m.at(i, j) = k.at(offset[n] + i * v.dim(n) + j, b);
            comps[n] = m;
        }
        space.basis.emplace_back(v, w, comps);
    }
    return space;
}

inline ChainMap random_chain_map(Rng& rng, const ChainComplex& v,
                                 const ChainComplex& w) {
    ChainMapSpace s = chain_map_space(v, w);
    ChainMap out = ChainMap::zero(v, w);
    std::uniform_int_distribution<long> coeff(-2, 2);
    const Field& F = v.field();
    for (auto& b : s.basis) {
        Scalar c = F.from_int(coeff(rng));
        std::map<int, Matrix> comps;
        for (int n = v.lo(); n <= v.hi(); ++n)
            if (v.dim(n) > 0 && w.dim(n) > 0) comps[n] = b.component(n).scaled(c);
        out = out + ChainMap(v, w, comps);
    }
    return out;
}

/// Isomorphic copy of w via a random degreewise change of basis, together
/// with the isomorphism w -> w'.
inline ChainMap random_conjugation(Rng& rng, const ChainComplex& w) {
    const Field& F = w.field();
    std::map<int, Matrix> s, diffs;
    for (int n = w.lo(); n <= w.hi(); ++n) s[n] = random_invertible(rng, F, w.dim(n));
    for (int n = w.lo() + 1; n <= w.hi(); ++n)
        diffs[n] = mat_mul(mat_mul(s[n - 1], w.diff(n)), inverse(s[n]));
    ChainComplex wprime(F, w.dims_map(), diffs);
    std::map<int, Matrix> comps;
    for (int n = w.lo(); n <= w.hi(); ++n)
        if (w.dim(n) > 0) comps[n] = s[n];
    return ChainMap(w, wprime, comps);
}

/// Sum of disks only (acyclic by construction).
inline ChainComplex random_acyclic(Rng& rng, const Field& F, int lo, int hi,
                                   int max_dim) {
    std::uniform_int_distribution<int> deg(lo + 1, hi);
    std::uniform_int_distribution<int> count(0, max_dim);
    ChainComplex c(F);
    if (lo + 1 > hi) return c;
    int n = count(rng);
    for (int s = 0; s < n; ++s) c = direct_sum(c, disk(deg(rng), F));
    return c;
}

/// Quasi-isomorphism out of v: either the inclusion v -> v (+) acyclic or the
/// projection v (+) acyclic would change the source, so we keep the source
/// fixed and post-compose with a random change of basis.
inline ChainMap random_quasi_iso(Rng& rng, const ChainComplex& v) {
    const Field& F = v.field();
    ChainComplex acyclic = random_acyclic(rng, F, v.empty() ? 0 : v.lo(),
                                          v.empty() ? 1 : v.hi() + 1, 2);
    ChainMap incl = sum_inclusion(v, acyclic, 0);
    ChainMap conj = random_conjugation(rng, incl.target());
    return compose(conj, incl);
}

// ---------------------------------------------------------------------------
// Groupoids, functors, local systems

/// A group from the test alphabet {1, C2, C3, S3}.
inline GroupTable random_group(Rng& rng) {
    switch (std::uniform_int_distribution<int>(0, 3)(rng)) {
        case 0: return trivial_group();
        case 1: return cyclic_group(2);
        case 2: return cyclic_group(3);
        default: return symmetric_group(3);
    }
}

/// Disjoint union of connected groupoids product(B G, codiscrete(k)).
inline FinGroupoid random_groupoid(Rng& rng, int max_objects) {
    std::uniform_int_distribution<int> comp_count(1, std::max(1, max_objects / 2));
    int comps = comp_count(rng);
    FinGroupoid out = empty_groupoid();
    int objects = 0;
    for (int i = 0; i < comps && objects < max_objects; ++i) {
        GroupTable g = random_group(rng);
        int k = std::uniform_int_distribution<int>(1, std::max(1, max_objects - objects))(rng);
        objects += k;
        FinGroupoid comp = product(delooping(g), codiscrete(k));
        out = i == 0 ? comp : disjoint_union(out, comp);
    }
    return out;
}

/// A random block functor together with its (random) source and target:
/// a disjoint union of blocks  product(B h, codiscrete collapse), possibly
/// padded with an extra target component that is not hit.
inline GroupoidFunctor random_functor(Rng& rng, int max_objects) {
    std::uniform_int_distribution<int> comp_count(1, 2);
    int comps = comp_count(rng);
    GroupoidFunctor out;
    bool first = true;
    for (int i = 0; i < comps; ++i) {
        // pick target group and a homomorphism into it
        GroupTable g = random_group(rng);
        GroupoidFunctor bh;
        int kind = std::uniform_int_distribution<int>(0, 3)(rng);
        if (kind == 0) {
            bh = delooping_functor(trivial_group(), g, {g.unit()});
        } else if (kind == 1) {
            std::vector<int> id_hom(g.order());
            std::iota(id_hom.begin(), id_hom.end(), 0);
            bh = delooping_functor(g, g, id_hom);
        } else if (kind == 2) {
            bh = delooping_functor(g, g, std::vector<int>(g.order(), g.unit()));
        } else if (g.order() == 6) {
            bh = delooping_functor(cyclic_group(3), g, cyclic_hom(3, g, 3));
        } else {
            bh = delooping_functor(trivial_group(), g, {g.unit()});
        }
        int l = std::uniform_int_distribution<int>(1, std::max(1, max_objects / comps))(rng);
        int k = std::uniform_int_distribution<int>(1, std::max(1, max_objects / comps))(rng);
        std::vector<int> omap(k);
        for (int& v : omap) v = std::uniform_int_distribution<int>(0, l - 1)(rng);
        GroupoidFunctor block = product_functor(bh, codiscrete_functor(k, l, omap));
        out = first ? block : disjoint_union_functor(out, block);
        first = false;
    }
    if (std::uniform_int_distribution<int>(0, 2)(rng) == 0) {
        // an extra component of the target that nothing maps to
        FinGroupoid extra = product(delooping(random_group(rng)), codiscrete(1));
        out = disjoint_union_functor(out, initial_functor(extra));
    }
    return out;
}

/// Local system over an arbitrary valid base: a representation (trivial or
/// regular, tensored with a random complex) on each skeletal component,
/// pulled back along the retraction p and conjugated by a random change of
/// basis at every object.
inline LocalSystem random_system(Rng& rng, const FinGroupoid& base, const Field& F,
                                 int lo, int hi, int max_dim) {
    Skeletization sk = skeletize(base);
    // representation on each component of the skeleton
    std::vector<ChainComplex> skel_at;
    std::vector<std::map<int, Matrix>> skel_along(sk.skeleton.num_morphisms());
    for (int c = 0; c < sk.skeleton.num_objects(); ++c) {
        AutGroup g = aut(sk.skeleton, c);
        ChainComplex coeff = random_complex(rng, F, lo, hi, max_dim);
        bool regular = std::uniform_int_distribution<int>(0, 1)(rng) == 1;
        int copies = regular ? g.table.order() : 1;
        ChainComplex total = set_tensor(copies, coeff);
        skel_at.push_back(total);
        for (std::size_t e = 0; e < g.loops.size(); ++e) {
            std::map<int, Matrix> comp;
            for (int n = total.lo(); n <= total.hi(); ++n) {
                if (total.dim(n) == 0) continue;
                Matrix m(total.dim(n), total.dim(n), F);
                int block = coeff.dim(n);
                for (int b = 0; b < copies; ++b) {
                    int target_block = regular ? g.table.mul[static_cast<int>(e)][b] : b;
                    for (int i = 0; i < block; ++i)
                        m.at(target_block * block + i, b * block + i) = F.one();
                }
                comp[n] = m;
            }
            skel_along[g.loops[e]] = comp;
        }
    }
    LocalSystem on_skel(sk.skeleton, skel_at, skel_along, F);
    // pull back along p : base -> skeleton
    std::vector<ChainComplex> at;
    for (int x = 0; x < base.num_objects(); ++x)
        at.push_back(skel_at[sk.p.on_object(x)]);
    std::vector<std::map<int, Matrix>> along(base.num_morphisms());
    for (int m = 0; m < base.num_morphisms(); ++m)
        along[m] = skel_along[sk.p.on_morph(m)];
    // conjugate by a random change of basis at each object
    std::vector<std::map<int, Matrix>> s(base.num_objects()), sinv(base.num_objects());
    for (int x = 0; x < base.num_objects(); ++x)
        for (int n = at[x].lo(); n <= at[x].hi(); ++n) {
            if (at[x].dim(n) == 0) continue;
            s[x][n] = random_invertible(rng, F, at[x].dim(n));
            sinv[x][n] = inverse(s[x][n]);
        }
    std::vector<ChainComplex> at2;
    for (int x = 0; x < base.num_objects(); ++x) {
        std::map<int, Matrix> diffs;
        for (int n = at[x].lo() + 1; n <= at[x].hi(); ++n)
            if (at[x].dim(n) > 0 && at[x].dim(n - 1) > 0)
                diffs[n] = mat_mul(mat_mul(s[x][n - 1], at[x].diff(n)), sinv[x][n]);
        at2.push_back(ChainComplex(F, at[x].dims_map(), diffs));
    }
    std::vector<std::map<int, Matrix>> along2(base.num_morphisms());
    for (int m = 0; m < base.num_morphisms(); ++m) {
        int xs = base.src(m), xt = base.tgt(m);
        for (auto& [n, mat] : along[m]) {
            if (at2[xs].dim(n) == 0 || at2[xt].dim(n) == 0) continue;
            along2[m][n] = mat_mul(mat_mul(s[xt][n], mat), sinv[xs][n]);
        }
    }
    return LocalSystem(base, at2, along2, F);
}

/// Objectwise-acyclic system: a random system cup-tensored with the constant
/// disk system.
inline LocalSystem random_acyclic_system(Rng& rng, const FinGroupoid& base,
                                         const Field& F, int lo, int hi, int max_dim) {
    LocalSystem r = random_system(rng, base, F, lo, hi, max_dim);
    int d = std::uniform_int_distribution<int>(lo, hi)(rng);
    return cup_tensor(r, constant_system(base, disk(d, F)));
}

/// Random natural map between given systems (a combination of the basis of
/// the naturality solution space).
inline SystemMap random_system_map(Rng& rng, const LocalSystem& v,
                                   const LocalSystem& w) {
    std::vector<SystemMap> basis = system_map_space(v, w);
    const Field& F = v.field();
    std::uniform_int_distribution<long> coeff(-2, 2);
    SystemMap out = SystemMap::zero(v, w);
    for (auto& b : basis) {
        Scalar c = F.from_int(coeff(rng));
        std::vector<std::map<int, Matrix>> comps(v.base().num_objects());
        for (int x = 0; x < v.base().num_objects(); ++x)
            for (auto& [n, m] : b.component_matrices(x)) comps[x][n] = m.scaled(c);
        SystemMap scaled(v, w, comps);
        std::vector<std::map<int, Matrix>> sum(v.base().num_objects());
        for (int x = 0; x < v.base().num_objects(); ++x) {
            ChainMap s = out.component(x) + scaled.component(x);
            for (int n = s.source().lo(); n <= s.source().hi(); ++n)
                if (s.source().dim(n) > 0 && s.target().dim(n) > 0)
                    sum[x][n] = s.component(n);
        }
        out = SystemMap(v, w, sum);
    }
    return out;
}

}  // namespace locsys
