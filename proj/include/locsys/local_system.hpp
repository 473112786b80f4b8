#pragma once

/// Local systems over a fixed finite groupoid: functors into chain complexes
/// with natural maps between them, the cup tensor and internal hom, and the
/// projective model-structure classifiers with tri-state cofibration
/// certificates.

#include <optional>
#include <vector>

#include "locsys/chain.hpp"
#include "locsys/groupoid.hpp"

namespace locsys {

class LocalSystem {
public:
    LocalSystem(FinGroupoid base, std::vector<ChainComplex> at,
                std::vector<std::map<int, Matrix>> along,
                std::optional<Field> field = std::nullopt)
        : base_(std::move(base)),
          at_(std::move(at)),
          along_(std::move(along)),
          field_(field ? *field
                       : (at_.empty() ? Field::rationals() : at_[0].field())) {
        if (at_.size() != static_cast<std::size_t>(base_.num_objects()) ||
            along_.size() != static_cast<std::size_t>(base_.num_morphisms()))
            throw ShapeError("local system: object/morphism data sizes");
        for (auto& c : at_)
            if (c.field() != field_) throw FieldMismatch("local system fields differ");
    }

    const FinGroupoid& base() const { return base_; }
    const Field& field() const { return field_; }
    const ChainComplex& at(int x) const { return at_[x]; }

    ChainMap along(int m) const {
        return ChainMap(at_[base_.src(m)], at_[base_.tgt(m)], along_[m]);
    }

    const std::map<int, Matrix>& along_components(int m) const { return along_[m]; }

    bool operator==(const LocalSystem& o) const {
        return base_ == o.base_ && at_ == o.at_ && along_ == o.along_ &&
               field_ == o.field_;
    }
    bool operator!=(const LocalSystem& o) const { return !(*this == o); }

private:
    FinGroupoid base_;
    std::vector<ChainComplex> at_;
    std::vector<std::map<int, Matrix>> along_;
    Field field_;
};

inline void validate_system(const LocalSystem& v) {
    const FinGroupoid& x = v.base();
    for (int o = 0; o < x.num_objects(); ++o) validate_complex(v.at(o));
    for (int m = 0; m < x.num_morphisms(); ++m) {
        try {
            validate_chain_map(v.along(m));
        } catch (const Error&) {
            throw FunctorialityViolation("transition of " + x.morph(m).label +
                                         " is not a chain map");
        }
    }
    for (int o = 0; o < x.num_objects(); ++o)
        if (v.along(x.identity(o)) != ChainMap::identity(v.at(o)))
            throw FunctorialityViolation("identity transition at " + x.object_label(o));
    for (int g = 0; g < x.num_morphisms(); ++g)
        for (int f = 0; f < x.num_morphisms(); ++f) {
            if (!x.composable(g, f)) continue;
            if (v.along(x.compose(g, f)) != compose(v.along(g), v.along(f)))
                throw FunctorialityViolation("composition of " + x.morph(g).label +
                                             " after " + x.morph(f).label);
        }
}

/// Same complex at every object, identity transitions.
inline LocalSystem constant_system(const FinGroupoid& x, const ChainComplex& c) {
    std::vector<ChainComplex> at(x.num_objects(), c);
    std::vector<std::map<int, Matrix>> along(x.num_morphisms());
    for (int m = 0; m < x.num_morphisms(); ++m) {
        for (int n = c.lo(); n <= c.hi(); ++n)
            if (c.dim(n) > 0) along[m][n] = Matrix::identity(c.dim(n), c.field());
    }
    return LocalSystem(x, at, along, c.field());
}

inline LocalSystem unit_system(const FinGroupoid& x, const Field& f) {
    return constant_system(x, tensor_unit(f));
}

inline LocalSystem zero_system(const FinGroupoid& x, const Field& f) {
    return constant_system(x, ChainComplex(f));
}

/// A representation of aut-group table `g` on matrices rho (one invertible
/// matrix per group element, acting on a complex c), promoted to a local
/// system over delooping(g).
inline LocalSystem representation_system(const GroupTable& g, const ChainComplex& c,
                                         const std::vector<std::map<int, Matrix>>& rho) {
    FinGroupoid bg = delooping(g);
    return LocalSystem(bg, {c}, rho);
}

class SystemMap {
public:
    SystemMap(LocalSystem source, LocalSystem target,
              std::vector<std::map<int, Matrix>> components)
        : source_(std::move(source)),
          target_(std::move(target)),
          comps_(std::move(components)) {
        if (source_.base() != target_.base())
            throw BaseMismatch("system map: bases differ");
        if (comps_.size() != static_cast<std::size_t>(source_.base().num_objects()))
            throw ShapeError("system map: component count");
        for (int x = 0; x < source_.base().num_objects(); ++x) {
            // canonical storage: validate shapes, drop zero blocks
            ChainMap c(source_.at(x), target_.at(x), comps_[x]);
            comps_[x].clear();
            for (int n = source_.at(x).lo(); n <= source_.at(x).hi(); ++n) {
                Matrix m = c.component(n);
                if (m.rows() > 0 && m.cols() > 0 && !m.is_zero()) comps_[x][n] = m;
            }
        }
    }

    static SystemMap identity(const LocalSystem& v) {
        std::vector<std::map<int, Matrix>> comps(v.base().num_objects());
        for (int x = 0; x < v.base().num_objects(); ++x) {
            const ChainComplex& c = v.at(x);
            for (int n = c.lo(); n <= c.hi(); ++n)
                if (c.dim(n) > 0) comps[x][n] = Matrix::identity(c.dim(n), c.field());
        }
        return SystemMap(v, v, comps);
    }

    static SystemMap zero(const LocalSystem& v, const LocalSystem& w) {
        return SystemMap(v, w, std::vector<std::map<int, Matrix>>(
                                   v.base().num_objects()));
    }

    const LocalSystem& source() const { return source_; }
    const LocalSystem& target() const { return target_; }
    const FinGroupoid& base() const { return source_.base(); }

    ChainMap component(int x) const {
        return ChainMap(source_.at(x), target_.at(x), comps_[x]);
    }
    const std::map<int, Matrix>& component_matrices(int x) const { return comps_[x]; }

    bool operator==(const SystemMap& o) const {
        return source_ == o.source_ && target_ == o.target_ && comps_ == o.comps_;
    }
    bool operator!=(const SystemMap& o) const { return !(*this == o); }

private:
    LocalSystem source_, target_;
    std::vector<std::map<int, Matrix>> comps_;
};

inline void validate_system_map(const SystemMap& phi) {
    const FinGroupoid& x = phi.base();
    for (int o = 0; o < x.num_objects(); ++o) validate_chain_map(phi.component(o));
    for (int m = 0; m < x.num_morphisms(); ++m)
        if (compose(phi.target().along(m), phi.component(x.src(m))) !=
            compose(phi.component(x.tgt(m)), phi.source().along(m)))
            throw NaturalityViolation("system map vs " + x.morph(m).label);
}

inline SystemMap compose(const SystemMap& g, const SystemMap& f) {
    if (f.target() != g.source()) throw ShapeMismatch("system map composition");
    std::vector<std::map<int, Matrix>> comps(f.base().num_objects());
    for (int x = 0; x < f.base().num_objects(); ++x) {
        ChainMap c = compose(g.component(x), f.component(x));
        for (int n = c.source().lo(); n <= c.source().hi(); ++n)
            if (c.source().dim(n) > 0 && c.target().dim(n) > 0)
                comps[x][n] = c.component(n);
    }
    return SystemMap(f.source(), g.target(), comps);
}

// ---------------------------------------------------------------------------
// Cup tensor and internal hom

inline LocalSystem cup_tensor(const LocalSystem& v, const LocalSystem& w) {
    if (v.base() != w.base()) throw BaseMismatch("cup_tensor: bases differ");
    if (v.field() != w.field()) throw FieldMismatch("cup_tensor: fields differ");
    const FinGroupoid& x = v.base();
    std::vector<ChainComplex> at;
    for (int o = 0; o < x.num_objects(); ++o) at.push_back(tensor(v.at(o), w.at(o)));
    std::vector<std::map<int, Matrix>> along(x.num_morphisms());
    for (int m = 0; m < x.num_morphisms(); ++m) {
        ChainMap t = tensor_map(v.along(m), w.along(m));
        for (int n = t.source().lo(); n <= t.source().hi(); ++n)
            if (t.source().dim(n) > 0 && t.target().dim(n) > 0)
                along[m][n] = t.component(n);
    }
    return LocalSystem(x, at, along, v.field());
}

inline SystemMap cup_tensor_map(const SystemMap& phi, const SystemMap& gamma) {
    LocalSystem src = cup_tensor(phi.source(), gamma.source());
    LocalSystem tgt = cup_tensor(phi.target(), gamma.target());
    std::vector<std::map<int, Matrix>> comps(src.base().num_objects());
    for (int x = 0; x < src.base().num_objects(); ++x) {
        ChainMap t = tensor_map(phi.component(x), gamma.component(x));
        for (int n = t.source().lo(); n <= t.source().hi(); ++n)
            if (t.source().dim(n) > 0 && t.target().dim(n) > 0)
                comps[x][n] = t.component(n);
    }
    return SystemMap(src, tgt, comps);
}

/// Objectwise mapping complexes with conjugation transitions
/// f |-> w(m) o f o v(m^{-1}).
inline LocalSystem internal_hom(const LocalSystem& v, const LocalSystem& w) {
    if (v.base() != w.base()) throw BaseMismatch("internal_hom: bases differ");
    if (v.field() != w.field()) throw FieldMismatch("internal_hom: fields differ");
    const FinGroupoid& x = v.base();
    const Field& F = v.field();
    std::vector<ChainComplex> at;
    for (int o = 0; o < x.num_objects(); ++o) at.push_back(hom_complex(v.at(o), w.at(o)));
    std::vector<std::map<int, Matrix>> along(x.num_morphisms());
    for (int m = 0; m < x.num_morphisms(); ++m) {
        int xs = x.src(m), xt = x.tgt(m);
        HomIndexer src_idx(v.at(xs), w.at(xs));
        HomIndexer tgt_idx(v.at(xt), w.at(xt));
        ChainMap wm = w.along(m);
        ChainMap vminv = v.along(x.inverse(m));
        const ChainComplex &hs = at[xs], &ht = at[xt];
        for (int k = hs.lo(); k <= hs.hi(); ++k) {
            if (hs.dim(k) == 0 || ht.dim(k) == 0) continue;
            Matrix t(ht.dim(k), hs.dim(k), F);
            for (int n = v.at(xs).lo(); n <= v.at(xs).hi(); ++n) {
                int cn = v.at(xs).dim(n), dm = w.at(xs).dim(n + k);
                if (cn == 0 || dm == 0) continue;
                Matrix wmat = wm.component(n + k);   // w_xs -> w_xt at degree n+k
                Matrix vmat = vminv.component(n);    // v_xt -> v_xs at degree n
                for (int i = 0; i < dm; ++i)
                    for (int j = 0; j < cn; ++j) {
                        int col = src_idx.index(k, n, i, j);
                        for (std::size_t a = 0; a < wmat.rows(); ++a) {
                            if (wmat.at(a, i) == 0) continue;
                            for (std::size_t b = 0; b < vmat.cols(); ++b) {
                                if (vmat.at(j, b) == 0) continue;
                                int row = tgt_idx.index(k, n, static_cast<int>(a),
                                                        static_cast<int>(b));
                                t.at(row, col) = F.add(
                                    t.at(row, col),
                                    F.mul(wmat.at(a, i), vmat.at(j, b)));
                            }
                        }
                    }
            }
            along[m][k] = t;
        }
    }
    return LocalSystem(x, at, along, v.field());
}

/// Independent end-formula oracle for the internal hom: the dimension of the
/// degree-k piece of the end over all morphisms, at object x0. Computed as
/// the solution space of the compatibility equations on families
/// (phi_{a,alpha})_{alpha : a -> x0}.
inline int internal_hom_end_dim(const LocalSystem& v, const LocalSystem& w, int x0,
                                int k) {
    const FinGroupoid& x = v.base();
    const Field& F = v.field();
    // unknown blocks: (a, alpha: a -> x0, n): Hom(v_{a,n}, w_{a,n+k})
    struct Block {
        int a, n, rows, cols, offset;
    };
    std::vector<Block> blocks;
    std::map<std::pair<int, int>, std::map<int, int>> block_of;  // (a,alpha) -> n -> idx
    int unknowns = 0;
    for (int a = 0; a < x.num_objects(); ++a)
        for (int alpha : x.hom(a, x0))
            for (int n = v.at(a).lo(); n <= v.at(a).hi(); ++n) {
                int r = w.at(a).dim(n + k), c = v.at(a).dim(n);
                if (r == 0 || c == 0) continue;
                block_of[{a, alpha}][n] = static_cast<int>(blocks.size());
                blocks.push_back({a, n, r, c, unknowns});
                unknowns += r * c;
            }
    // equations: for m : a -> b, alpha : a -> x0, n:
    //   w(m)_{n+k} phi_{a,alpha}^{(n)} = phi_{b, alpha o m^{-1}}^{(n)} v(m)_n
    std::vector<std::vector<std::pair<int, Scalar>>> eqs;
    for (int m = 0; m < x.num_morphisms(); ++m) {
        int a = x.src(m), b = x.tgt(m);
        Matrix wmat_all(0, 0, F);
        for (int alpha : x.hom(a, x0)) {
            int beta = x.compose(alpha, x.inverse(m));
            for (int n = v.at(a).lo(); n <= v.at(a).hi(); ++n) {
                int rows = w.at(b).dim(n + k), cols = v.at(a).dim(n);
                if (rows == 0 && cols == 0) continue;
                Matrix wm = ChainMap(w.at(a), w.at(b), w.along_components(m))
                                .component(n + k);
                Matrix vm = ChainMap(v.at(a), v.at(b), v.along_components(m))
                                .component(n);
                for (int r = 0; r < rows; ++r)
                    for (int c = 0; c < cols; ++c) {
                        std::vector<std::pair<int, Scalar>> eq;
                        // lhs: sum_i wm(r,i) phi_{a,alpha}(i,c)
                        auto ia = block_of.find({a, alpha});
                        if (ia != block_of.end() && ia->second.count(n)) {
                            const Block& bl = blocks[ia->second[n]];
                            for (int i = 0; i < bl.rows; ++i)
                                if (wm.at(r, i) != 0)
                                    eq.push_back({bl.offset + i * bl.cols + c,
                                                  wm.at(r, i)});
                        }
                        // rhs: sum_j phi_{b,beta}(r,j) vm(j,c)
                        auto ib = block_of.find({b, beta});
                        if (ib != block_of.end() && ib->second.count(n)) {
                            const Block& bl = blocks[ib->second[n]];
                            for (int j = 0; j < bl.cols; ++j)
                                if (vm.at(j, c) != 0)
                                    eq.push_back({bl.offset + r * bl.cols + j,
                                                  F.neg(vm.at(j, c))});
                        }
                        if (!eq.empty()) eqs.push_back(std::move(eq));
                    }
            }
        }
    }
    Matrix sys(static_cast<int>(eqs.size()), unknowns, F);
    for (std::size_t e = 0; e < eqs.size(); ++e)
        for (auto& [col, val] : eqs[e])
            sys.at(e, col) = F.add(sys.at(e, col), val);
    return unknowns - static_cast<int>(rank(sys));
}

// ---------------------------------------------------------------------------
// Tensor-hom transposition (currying)

/// phi : T (x) V -> W  |->  T -> [V, W], objectwise currying.
inline SystemMap tensor_hom_transpose(const SystemMap& phi, const LocalSystem& t,
                                      const LocalSystem& v, const LocalSystem& w) {
    const FinGroupoid& base = t.base();
    const Field& F = t.field();
    LocalSystem hom = internal_hom(v, w);
    std::vector<std::map<int, Matrix>> comps(base.num_objects());
    for (int x = 0; x < base.num_objects(); ++x) {
        TensorIndexer ti(t.at(x), v.at(x));
        HomIndexer hi(v.at(x), w.at(x));
        for (int m = t.at(x).lo(); m <= t.at(x).hi(); ++m) {
            if (t.at(x).dim(m) == 0 || hom.at(x).dim(m) == 0) continue;
            Matrix c(hom.at(x).dim(m), t.at(x).dim(m), F);
            for (int a = 0; a < t.at(x).dim(m); ++a)
                for (int n = v.at(x).lo(); n <= v.at(x).hi(); ++n) {
                    int cn = v.at(x).dim(n), dm = w.at(x).dim(n + m);
                    if (cn == 0 || dm == 0) continue;
                    Matrix pk = phi.component(x).component(m + n);
                    for (int i = 0; i < dm; ++i)
                        for (int j = 0; j < cn; ++j)
                            c.at(hi.index(m, n, i, j), a) =
                                pk.at(i, ti.index(m + n, m, a, j));
                }
            comps[x][m] = c;
        }
    }
    return SystemMap(t, hom, comps);
}

/// psi : T -> [V, W]  |->  T (x) V -> W (inverse currying).
inline SystemMap tensor_hom_untranspose(const SystemMap& psi, const LocalSystem& t,
                                        const LocalSystem& v, const LocalSystem& w) {
    const FinGroupoid& base = t.base();
    const Field& F = t.field();
    LocalSystem tv = cup_tensor(t, v);
    std::vector<std::map<int, Matrix>> comps(base.num_objects());
    for (int x = 0; x < base.num_objects(); ++x) {
        TensorIndexer ti(t.at(x), v.at(x));
        HomIndexer hi(v.at(x), w.at(x));
        for (int k = tv.at(x).lo(); k <= tv.at(x).hi(); ++k) {
            if (tv.at(x).dim(k) == 0 || w.at(x).dim(k) == 0) continue;
            Matrix c(w.at(x).dim(k), tv.at(x).dim(k), F);
            for (int m = t.at(x).lo(); m <= t.at(x).hi(); ++m) {
                int n = k - m;
                int tm = t.at(x).dim(m), vn = v.at(x).dim(n);
                if (tm == 0 || vn == 0) continue;
                Matrix pm = psi.component(x).component(m);
                for (int a = 0; a < tm; ++a)
                    for (int j = 0; j < vn; ++j) {
                        int col = ti.index(k, m, a, j);
                        for (int i = 0; i < w.at(x).dim(k); ++i)
                            c.at(i, col) = pm.at(hi.index(m, n, i, j), a);
                    }
            }
            comps[x][k] = c;
        }
    }
    return SystemMap(tv, w, comps);
}

// ---------------------------------------------------------------------------
// Degreewise (co)limits of systems over a fixed base

inline LocalSystem system_direct_sum(const LocalSystem& v, const LocalSystem& w) {
    if (v.base() != w.base()) throw BaseMismatch("system_direct_sum");
    const FinGroupoid& x = v.base();
    std::vector<ChainComplex> at;
    for (int o = 0; o < x.num_objects(); ++o) at.push_back(direct_sum(v.at(o), w.at(o)));
    std::vector<std::map<int, Matrix>> along(x.num_morphisms());
    for (int m = 0; m < x.num_morphisms(); ++m) {
        const ChainComplex& s = at[x.src(m)];
        for (int n = s.lo(); n <= s.hi(); ++n) {
            if (s.dim(n) == 0 || at[x.tgt(m)].dim(n) == 0) continue;
            along[m][n] = block_diag(v.along(m).component(n), w.along(m).component(n));
        }
    }
    return LocalSystem(x, at, along, v.field());
}

inline SystemMap system_sum_inclusion(const LocalSystem& v, const LocalSystem& w,
                                      int which) {
    LocalSystem s = system_direct_sum(v, w);
    const LocalSystem& part = which == 0 ? v : w;
    std::vector<std::map<int, Matrix>> comps(v.base().num_objects());
    for (int x = 0; x < v.base().num_objects(); ++x) {
        ChainMap inc = sum_inclusion(v.at(x), w.at(x), which);
        for (int n = part.at(x).lo(); n <= part.at(x).hi(); ++n)
            if (part.at(x).dim(n) > 0) comps[x][n] = inc.component(n);
    }
    return SystemMap(part, s, comps);
}

inline SystemMap system_sum_projection(const LocalSystem& v, const LocalSystem& w,
                                       int which) {
    LocalSystem s = system_direct_sum(v, w);
    const LocalSystem& part = which == 0 ? v : w;
    std::vector<std::map<int, Matrix>> comps(v.base().num_objects());
    for (int x = 0; x < v.base().num_objects(); ++x) {
        ChainMap pr = sum_projection(v.at(x), w.at(x), which);
        for (int n = part.at(x).lo(); n <= part.at(x).hi(); ++n)
            if (part.at(x).dim(n) > 0 && s.at(x).dim(n) > 0)
                comps[x][n] = pr.component(n);
    }
    return SystemMap(s, part, comps);
}

struct SystemPushout {
    LocalSystem object;
    SystemMap inl, inr;
};

/// Objectwise chain pushout with induced transitions.
inline SystemPushout system_pushout(const SystemMap& phi, const SystemMap& psi) {
    if (phi.source() != psi.source()) throw ShapeMismatch("system_pushout: span");
    const FinGroupoid& base = phi.base();
    std::vector<ChainPushout> pos;
    for (int x = 0; x < base.num_objects(); ++x)
        pos.push_back(chain_pushout(phi.component(x), psi.component(x)));
    std::vector<ChainComplex> at;
    for (auto& p : pos) at.push_back(p.object);
    std::vector<std::map<int, Matrix>> along(base.num_morphisms());
    for (int m = 0; m < base.num_morphisms(); ++m) {
        int xs = base.src(m), xt = base.tgt(m);
        // induced by the universal property from the transported cocone
        ChainMap u = compose(pos[xt].inl, phi.target().along(m));
        ChainMap v = compose(pos[xt].inr, psi.target().along(m));
        ChainMap ind = pushout_factor(pos[xs], u, v);
        for (int n = ind.source().lo(); n <= ind.source().hi(); ++n)
            if (ind.source().dim(n) > 0 && ind.target().dim(n) > 0)
                along[m][n] = ind.component(n);
    }
    LocalSystem object(base, at, along, phi.source().field());
    std::vector<std::map<int, Matrix>> inl_c(base.num_objects()),
        inr_c(base.num_objects());
    for (int x = 0; x < base.num_objects(); ++x) {
        for (int n = pos[x].inl.source().lo(); n <= pos[x].inl.source().hi(); ++n)
            if (pos[x].inl.source().dim(n) > 0 && pos[x].object.dim(n) > 0)
                inl_c[x][n] = pos[x].inl.component(n);
        for (int n = pos[x].inr.source().lo(); n <= pos[x].inr.source().hi(); ++n)
            if (pos[x].inr.source().dim(n) > 0 && pos[x].object.dim(n) > 0)
                inr_c[x][n] = pos[x].inr.component(n);
    }
    return {object, SystemMap(phi.target(), object, inl_c),
            SystemMap(psi.target(), object, inr_c)};
}

inline SystemMap system_pushout_factor(const SystemPushout& po, const SystemMap& u,
                                       const SystemMap& v) {
    const FinGroupoid& base = u.base();
    std::vector<std::map<int, Matrix>> comps(base.num_objects());
    for (int x = 0; x < base.num_objects(); ++x) {
        ChainPushout cp{po.object.at(x), po.inl.component(x), po.inr.component(x)};
        ChainMap f = pushout_factor(cp, u.component(x), v.component(x));
        for (int n = f.source().lo(); n <= f.source().hi(); ++n)
            if (f.source().dim(n) > 0 && f.target().dim(n) > 0)
                comps[x][n] = f.component(n);
    }
    return SystemMap(po.object, u.target(), comps);
}

/// Pushout-product of two system maps over one base.
inline SystemMap system_pushout_product(const SystemMap& phi, const SystemMap& gamma) {
    SystemMap left = cup_tensor_map(phi, SystemMap::identity(gamma.source()));
    SystemMap right = cup_tensor_map(SystemMap::identity(phi.source()), gamma);
    SystemPushout po = system_pushout(left, right);
    SystemMap u = cup_tensor_map(SystemMap::identity(phi.target()), gamma);
    SystemMap v = cup_tensor_map(phi, SystemMap::identity(gamma.target()));
    return system_pushout_factor(po, u, v);
}

// ---------------------------------------------------------------------------
// Classification

enum class Cert { yes, no, unknown };

struct SystemFlags {
    bool we = false;
    bool fib = false;
    Cert cof = Cert::unknown;
};

/// True when the field characteristic divides no automorphism-group order of
/// the base (characteristic zero always qualifies).
inline bool semisimple_base(const FinGroupoid& x, const Field& f) {
    if (f.is_rational()) return true;
    for (int o = 0; o < x.num_objects(); ++o)
        if (static_cast<std::int64_t>(x.hom(o, o).size()) % f.characteristic() == 0)
            return false;
    return true;
}

namespace detail {

/// Does a G-equivariant splitting of the free cover K[G]^m -> M exist?
/// rho: action of each group element on M (square matrices of size m).
inline bool free_cover_splits(const GroupTable& g, const std::vector<Matrix>& rho,
                              const Field& F) {
    int m = rho.empty() ? 0 : static_cast<int>(rho[0].rows());
    if (m == 0) return true;
    int n = g.order();
    int fdim = n * m;  // basis (g, i)
    // epsilon: F -> M, (g, i) -> rho(g) e_i
    Matrix eps(m, fdim, F);
    for (int a = 0; a < n; ++a)
        for (int i = 0; i < m; ++i)
            for (int r = 0; r < m; ++r) eps.at(r, a * m + i) = rho[a].at(r, i);
    // unknowns: s (fdim x m). constraints: eps s = id, s rho(h) = F(h) s.
    int unknowns = fdim * m;
    std::vector<std::vector<std::pair<int, Scalar>>> eqs;
    std::vector<Scalar> rhs;
    // eps s = id
    for (int r = 0; r < m; ++r)
        for (int c = 0; c < m; ++c) {
            std::vector<std::pair<int, Scalar>> eq;
            for (int k = 0; k < fdim; ++k)
                if (eps.at(r, k) != 0) eq.push_back({k * m + c, eps.at(r, k)});
            eqs.push_back(std::move(eq));
            rhs.push_back(r == c ? F.one() : F.zero());
        }
    // equivariance: for each h: s rho(h) - F(h) s = 0; F(h)(a, i) = (h a, i)
    for (int h = 0; h < n; ++h) {
        for (int r = 0; r < fdim; ++r)
            for (int c = 0; c < m; ++c) {
                std::vector<std::pair<int, Scalar>> eq;
                for (int j = 0; j < m; ++j)
                    if (rho[h].at(j, c) != 0) eq.push_back({r * m + j, rho[h].at(j, c)});
                // (F(h) s)(r, c): r = (a, i); F(h) s has row (h a, i) from s row (a, i)
                int a = r / m, i = r % m;
                int inv_h = g.inverse(h);
                int pre_a = g.mul[inv_h][a];  // row (a) of F(h)s comes from row (h^-1 a)
                eq.push_back({(pre_a * m + i) * m + c, F.neg(F.one())});
                eqs.push_back(std::move(eq));
                rhs.push_back(F.zero());
            }
    }
    Matrix sys(static_cast<int>(eqs.size()), unknowns, F);
    Matrix b(static_cast<int>(eqs.size()), 1, F);
    for (std::size_t e = 0; e < eqs.size(); ++e) {
        for (auto& [col, val] : eqs[e]) sys.at(e, col) = F.add(sys.at(e, col), val);
        b.at(e, 0) = rhs[e];
    }
    return solve_right(sys, b).has_value();
}

}  // namespace detail

/// we/fib objectwise; cof is a certificate: NO on a non-injective component,
/// YES in the semisimple case or when every cokernel degree is a projective
/// module over each automorphism-group algebra (splitting solve), else UNKNOWN.
inline SystemFlags classify_system_map(const SystemMap& phi) {
    const FinGroupoid& base = phi.base();
    SystemFlags flags;
    flags.we = flags.fib = true;
    bool injective = true;
    for (int x = 0; x < base.num_objects(); ++x) {
        ChainFlags f = classify_chain_map(phi.component(x));
        flags.we = flags.we && f.we;
        flags.fib = flags.fib && f.fib;
        injective = injective && f.cof;
    }
    if (!injective) {
        flags.cof = Cert::no;
        return flags;
    }
    if (semisimple_base(base, phi.source().field())) {
        flags.cof = Cert::yes;
        return flags;
    }
    // cokernel system: objectwise cokernel projections, induced action
    const Field& F = phi.source().field();
    bool all_projective = true;
    for (int x = 0; x < base.num_objects() && all_projective; ++x) {
        AutGroup g = aut(base, x);
        const ChainComplex& w = phi.target().at(x);
        std::map<int, Cokernel> cks;
        for (int n = w.lo(); n <= w.hi(); ++n)
            cks[n] = cokernel(phi.component(x).component(n));
        for (int n = w.lo(); n <= w.hi() && all_projective; ++n) {
            if (cks[n].dim == 0) continue;
            std::vector<Matrix> rho;
            for (int l : g.loops) {
                Matrix act = phi.target().along(l).component(n);
                // induced on the quotient: q(h) proj = proj act
                Matrix qh = mat_mul(mat_mul(cks[n].projection, act),
                                    right_inverse(cks[n].projection));
                rho.push_back(qh);
            }
            if (!detail::free_cover_splits(g.table, rho, F)) all_projective = false;
        }
    }
    flags.cof = all_projective ? Cert::yes : Cert::unknown;
    return flags;
}

/// Basis of the space of natural maps v -> w: the chain-map equations per
/// object joined with the naturality equations per morphism, solved exactly.
/// Basis vectors come in kernel pivot order, so the list is deterministic.
inline std::vector<SystemMap> system_map_space(const LocalSystem& v,
                                               const LocalSystem& w) {
    const FinGroupoid& base = v.base();
    const Field& F = v.field();
    struct Slot {
        int x, n, rows, cols, offset;
    };
    std::vector<Slot> slots;
    std::map<std::pair<int, int>, int> slot_of;
    int unknowns = 0;
    for (int x = 0; x < base.num_objects(); ++x) {
        int lo = std::min(v.at(x).lo(), w.at(x).lo());
        int hi = std::max(v.at(x).hi(), w.at(x).hi());
        for (int n = lo; n <= hi; ++n) {
            int r = w.at(x).dim(n), c = v.at(x).dim(n);
            if (r == 0 || c == 0) continue;
            slot_of[{x, n}] = static_cast<int>(slots.size());
            slots.push_back({x, n, r, c, unknowns});
            unknowns += r * c;
        }
    }
    std::vector<std::vector<std::pair<int, Scalar>>> eqs;
    auto add_entry = [&](std::vector<std::pair<int, Scalar>>& eq, int x, int n, int i,
                         int j, const Scalar& coef) {
        auto it = slot_of.find({x, n});
        if (it == slot_of.end()) return;
        const Slot& s = slots[it->second];
        eq.push_back({s.offset + i * s.cols + j, coef});
    };
    for (int x = 0; x < base.num_objects(); ++x) {
        int lo = std::min(v.at(x).lo(), w.at(x).lo());
        int hi = std::max(v.at(x).hi(), w.at(x).hi());
        for (int n = lo; n <= hi + 1; ++n) {
            Matrix dw = w.at(x).diff(n), dv = v.at(x).diff(n);
            for (int r = 0; r < w.at(x).dim(n - 1); ++r)
                for (int c = 0; c < v.at(x).dim(n); ++c) {
                    std::vector<std::pair<int, Scalar>> eq;
                    for (int i = 0; i < w.at(x).dim(n); ++i)
                        if (dw.at(r, i) != 0) add_entry(eq, x, n, i, c, dw.at(r, i));
                    for (int j = 0; j < v.at(x).dim(n - 1); ++j)
                        if (dv.at(j, c) != 0)
                            add_entry(eq, x, n - 1, r, j, F.neg(dv.at(j, c)));
                    if (!eq.empty()) eqs.push_back(std::move(eq));
                }
        }
    }
    for (int m = 0; m < base.num_morphisms(); ++m) {
        int xs = base.src(m), xt = base.tgt(m);
        int lo = std::min(v.at(xs).lo(), w.at(xs).lo());
        int hi = std::max(v.at(xs).hi(), w.at(xs).hi());
        for (int n = lo; n <= hi; ++n) {
            Matrix wm = w.along(m).component(n);
            Matrix vm = v.along(m).component(n);
            for (int r = 0; r < w.at(xt).dim(n); ++r)
                for (int c = 0; c < v.at(xs).dim(n); ++c) {
                    std::vector<std::pair<int, Scalar>> eq;
                    for (int i = 0; i < w.at(xs).dim(n); ++i)
                        if (wm.at(r, i) != 0) add_entry(eq, xs, n, i, c, wm.at(r, i));
                    for (int j = 0; j < v.at(xt).dim(n); ++j)
                        if (vm.at(j, c) != 0)
                            add_entry(eq, xt, n, r, j, F.neg(vm.at(j, c)));
                    if (!eq.empty()) eqs.push_back(std::move(eq));
                }
        }
    }
    Matrix sys(static_cast<int>(eqs.size()), unknowns, F);
    for (std::size_t e = 0; e < eqs.size(); ++e)
        for (auto& [col, val] : eqs[e]) sys.at(e, col) = F.add(sys.at(e, col), val);
    Matrix k = kernel_basis(sys);
    std::vector<SystemMap> out;
    for (std::size_t b = 0; b < k.cols(); ++b) {
        std::vector<std::map<int, Matrix>> comps(base.num_objects());
        for (const Slot& s : slots) {
            Matrix m(s.rows, s.cols, F);
            bool nonzero = false;
            for (int i = 0; i < s.rows; ++i)
                for (int j = 0; j < s.cols; ++j) {
                    m.at(i, j) = k.at(s.offset + i * s.cols + j, b);
                    nonzero = nonzero || m.at(i, j) != 0;
                }
            comps[s.x][s.n] = m;
        }
        out.emplace_back(v, w, comps);
    }
    return out;
}

inline bool is_iso_system_map(const SystemMap& phi) {
    for (int x = 0; x < phi.base().num_objects(); ++x) {
        const ChainComplex &s = phi.source().at(x), &t = phi.target().at(x);
        for (int n = std::min(s.lo(), t.lo()); n <= std::max(s.hi(), t.hi()); ++n) {
            if (s.dim(n) != t.dim(n)) return false;
            Matrix c = phi.component(x).component(n);
            if (c.rows() > 0 && !is_invertible(c)) return false;
        }
    }
    return true;
}

}  // namespace locsys
