#pragma once

/// Base change of local systems along groupoid functors: precomposition f^*,
/// the left Kan extension f_! as an explicit coend coequalizer, the right Kan
/// extension f_* as an end equalizer, and the adjunction transposes. Coend
/// bases are indexed by (object of X ascending, Y-morphism label ascending,
/// fiber basis index), so all presentations are reproducible.

#include "locsys/local_system.hpp"

namespace locsys {

inline LocalSystem pull_system(const GroupoidFunctor& f, const LocalSystem& w) {
    if (w.base() != f.target()) throw BaseMismatch("pull_system: base mismatch");
    const FinGroupoid& x = f.source();
    std::vector<ChainComplex> at;
    for (int o = 0; o < x.num_objects(); ++o) at.push_back(w.at(f.on_object(o)));
    std::vector<std::map<int, Matrix>> along(x.num_morphisms());
    for (int m = 0; m < x.num_morphisms(); ++m)
        along[m] = w.along_components(f.on_morph(m));
    return LocalSystem(x, at, along, w.field());
}

inline SystemMap pull_system_map(const GroupoidFunctor& f, const SystemMap& gamma) {
    LocalSystem src = pull_system(f, gamma.source());
    LocalSystem tgt = pull_system(f, gamma.target());
    std::vector<std::map<int, Matrix>> comps(f.source().num_objects());
    for (int o = 0; o < f.source().num_objects(); ++o)
        comps[o] = gamma.component_matrices(f.on_object(o));
    return SystemMap(src, tgt, comps);
}

// ---------------------------------------------------------------------------
// Left Kan extension

/// Presentation of (f_! v)_y as a quotient of C_y = (+)_{(x, alpha)} v_x with
/// alpha ranging over Y(f x, y).
struct LeftKan {
    LocalSystem system;  // f_! v over Y
    SystemMap unit;      // v -> f^*(f_! v) over X
    // per object y of Y: the coend slots and the quotient projections
    std::vector<std::vector<std::pair<int, int>>> slots;  // (x, alpha)
    std::vector<std::map<int, Matrix>> proj;              // degree -> C_y -> Q_y
};

namespace detail {

struct CoendLayout {
    std::vector<std::pair<int, int>> slots;  // (x, alpha)
    std::map<std::pair<int, int>, int> pos;  // slot -> index
    std::map<int, int> dims;                 // degree -> total dim
    std::map<std::pair<int, int>, std::map<int, int>> offset;  // slot, degree -> offset
};

inline CoendLayout coend_layout(const GroupoidFunctor& f, const LocalSystem& v, int y,
                                bool covariant) {
    CoendLayout l;
    const FinGroupoid& xg = f.source();
    const FinGroupoid& yg = f.target();
    for (int x = 0; x < xg.num_objects(); ++x) {
        auto homset = covariant ? yg.hom(f.on_object(x), y) : yg.hom(y, f.on_object(x));
        for (int alpha : homset) {
            l.pos[{x, alpha}] = static_cast<int>(l.slots.size());
            l.slots.push_back({x, alpha});
        }
    }
    for (auto& [x, alpha] : l.slots) {
        const ChainComplex& c = v.at(x);
        for (int n = c.lo(); n <= c.hi(); ++n) {
            if (c.dim(n) == 0) continue;
            l.offset[{x, alpha}][n] = l.dims[n];
            l.dims[n] += c.dim(n);
        }
    }
    return l;
}

}  // namespace detail

inline LeftKan push_left(const GroupoidFunctor& f, const LocalSystem& v) {
    if (v.base() != f.source()) throw BaseMismatch("push_left: base mismatch");
    const FinGroupoid& xg = f.source();
    const FinGroupoid& yg = f.target();
    const Field& F = v.field();

    std::vector<detail::CoendLayout> layout;
    for (int y = 0; y < yg.num_objects(); ++y)
        layout.push_back(detail::coend_layout(f, v, y, true));

    // relations: for m : x -> x', alpha' in Y(f x', y):
    //   (x, alpha' o f(m)) slot of u  minus  (x', alpha') slot of v(m) u
    std::vector<std::map<int, Matrix>> proj(yg.num_objects());
    std::vector<std::map<int, int>> qdims(yg.num_objects());
    for (int y = 0; y < yg.num_objects(); ++y) {
        auto& l = layout[y];
        std::map<int, int> rel_cols;
        std::vector<std::tuple<int, int>> rels;  // (m, alpha')
        for (int m = 0; m < xg.num_morphisms(); ++m)
            for (int alpha : yg.hom(f.on_object(xg.tgt(m)), y)) rels.push_back({m, alpha});
        for (auto& [m, alpha] : rels) {
            const ChainComplex& c = v.at(xg.src(m));
            for (int n = c.lo(); n <= c.hi(); ++n)
                if (c.dim(n) > 0) rel_cols[n] += c.dim(n);
        }
        for (auto& [n, total] : l.dims) {
            Matrix rel(total, rel_cols.count(n) ? rel_cols[n] : 0, F);
            int col0 = 0;
            for (auto& [m, alpha] : rels) {
                int xs = xg.src(m), xt = xg.tgt(m);
                const ChainComplex& c = v.at(xs);
                if (c.dim(n) == 0) continue;
                int a_slot = l.pos.at({xs, yg.compose(alpha, f.on_morph(m))});
                int b_slot = l.pos.at({xt, alpha});
                int a_off = l.offset.at(l.slots[a_slot])[n];
                Matrix vm = v.along(m).component(n);
                for (int u = 0; u < c.dim(n); ++u) {
                    rel.at(a_off + u, col0 + u) = F.one();
                    if (v.at(xt).dim(n) > 0) {
                        int b_off = l.offset.at(l.slots[b_slot])[n];
                        for (std::size_t r = 0; r < vm.rows(); ++r)
                            if (vm.at(r, u) != 0)
                                rel.at(b_off + static_cast<int>(r), col0 + u) =
                                    F.sub(rel.at(b_off + static_cast<int>(r), col0 + u),
                                          vm.at(r, u));
                    }
                }
                col0 += c.dim(n);
            }
            Cokernel ck = cokernel(rel);
            proj[y][n] = ck.projection;
            qdims[y][n] = static_cast<int>(ck.dim);
        }
    }

    // block differential on C_y descends to the quotient
    auto block_diff = [&](int y, int n) {
        auto& l = layout[y];
        int rows = l.dims.count(n - 1) ? l.dims.at(n - 1) : 0;
        int cols = l.dims.count(n) ? l.dims.at(n) : 0;
        Matrix d(rows, cols, F);
        for (auto& slot : l.slots) {
            const ChainComplex& c = v.at(slot.first);
            if (c.dim(n) == 0 || c.dim(n - 1) == 0) continue;
            Matrix dn = c.diff(n);
            int r0 = l.offset.at(slot)[n - 1], c0 = l.offset.at(slot)[n];
            for (std::size_t i = 0; i < dn.rows(); ++i)
                for (std::size_t j = 0; j < dn.cols(); ++j)
                    d.at(r0 + i, c0 + j) = dn.at(i, j);
        }
        return d;
    };

    std::vector<ChainComplex> at;
    for (int y = 0; y < yg.num_objects(); ++y) {
        std::map<int, int> dims;
        std::map<int, Matrix> diffs;
        for (auto& [n, d] : qdims[y])
            if (d > 0) dims[n] = d;
        for (auto& [n, d] : qdims[y]) {
            if (!qdims[y].count(n - 1)) continue;
            Matrix m = mat_mul(proj[y][n - 1], block_diff(y, n));
            Matrix dq = mat_mul(m, right_inverse(proj[y][n]));
            if (mat_mul(dq, proj[y][n]) != m) throw Error("push_left: differential descent");
            diffs[n] = dq;
        }
        at.push_back(ChainComplex(F, dims, diffs));
    }

    // transitions: relabel (x, alpha) -> (x, nu o alpha) then project
    std::vector<std::map<int, Matrix>> along(yg.num_morphisms());
    for (int nu = 0; nu < yg.num_morphisms(); ++nu) {
        int ys = yg.src(nu), yt = yg.tgt(nu);
        auto &ls = layout[ys], &lt = layout[yt];
        for (auto& [n, sdim] : ls.dims) {
            if (!lt.dims.count(n)) continue;
            Matrix relab(lt.dims.at(n), sdim, F);
            for (auto& slot : ls.slots) {
                const ChainComplex& c = v.at(slot.first);
                if (c.dim(n) == 0) continue;
                std::pair<int, int> tslot{slot.first, yg.compose(nu, slot.second)};
                int c0 = ls.offset.at(slot)[n];
                int r0 = lt.offset.at(tslot)[n];
                for (int i = 0; i < c.dim(n); ++i) relab.at(r0 + i, c0 + i) = F.one();
            }
            Matrix m = mat_mul(proj[yt][n], relab);
            Matrix t = mat_mul(m, right_inverse(proj[ys][n]));
            if (mat_mul(t, proj[ys][n]) != m) throw Error("push_left: transition descent");
            if (at[ys].dim(n) > 0 && at[yt].dim(n) > 0) along[nu][n] = t;
        }
    }
    LocalSystem q(yg, at, along, F);

    // unit at x: include into slot (x, id_{f x}) then project
    LocalSystem pulled = pull_system(f, q);
    std::vector<std::map<int, Matrix>> unit_c(xg.num_objects());
    for (int x = 0; x < xg.num_objects(); ++x) {
        int y = f.on_object(x);
        auto& l = layout[y];
        std::pair<int, int> slot{x, yg.identity(y)};
        const ChainComplex& c = v.at(x);
        for (int n = c.lo(); n <= c.hi(); ++n) {
            if (c.dim(n) == 0 || at[y].dim(n) == 0) continue;
            Matrix inc(l.dims.at(n), c.dim(n), F);
            int r0 = l.offset.at(slot)[n];
            for (int i = 0; i < c.dim(n); ++i) inc.at(r0 + i, i) = F.one();
            unit_c[x][n] = mat_mul(proj[y][n], inc);
        }
    }
    SystemMap unit(v, pulled, unit_c);

    std::vector<std::vector<std::pair<int, int>>> slots;
    for (auto& l : layout) slots.push_back(l.slots);
    return {q, unit, slots, proj};
}

/// Transpose phi : v -> f^* w into f_! v -> w, through the quotient
/// presentation: slot (x, alpha) maps by w(alpha) o phi_x.
inline SystemMap transpose_left(const GroupoidFunctor& f, const LeftKan& lk,
                                const LocalSystem& v, const LocalSystem& w,
                                const SystemMap& phi) {
    const FinGroupoid& yg = f.target();
    const Field& F = v.field();
    std::vector<std::map<int, Matrix>> comps(yg.num_objects());
    for (int y = 0; y < yg.num_objects(); ++y) {
        detail::CoendLayout l = detail::coend_layout(f, v, y, true);
        for (auto& [n, total] : l.dims) {
            if (lk.system.at(y).dim(n) == 0 && w.at(y).dim(n) == 0) continue;
            Matrix m(w.at(y).dim(n), total, F);
            for (auto& slot : l.slots) {
                auto [x, alpha] = slot;
                if (v.at(x).dim(n) == 0) continue;
                // w(alpha) o phi_x at degree n
                ChainMap walpha = w.along(alpha);
                Matrix wm = mat_mul(walpha.component(n), phi.component(x).component(n));
                int c0 = l.offset.at(slot)[n];
                for (std::size_t i = 0; i < wm.rows(); ++i)
                    for (std::size_t j = 0; j < wm.cols(); ++j)
                        m.at(i, c0 + j) = wm.at(i, j);
            }
            if (lk.system.at(y).dim(n) == 0) continue;
            Matrix t = mat_mul(m, right_inverse(lk.proj[y].at(n)));
            if (mat_mul(t, lk.proj[y].at(n)) != m)
                throw Error("transpose_left: map does not kill the relations");
            if (w.at(y).dim(n) > 0) comps[y][n] = t;
        }
    }
    return SystemMap(lk.system, w, comps);
}

/// Inverse transpose: psi : f_! v -> w back to v -> f^* w via the unit.
inline SystemMap untranspose_left(const GroupoidFunctor& f, const LeftKan& lk,
                                  const LocalSystem& w, const SystemMap& psi) {
    return compose(pull_system_map(f, psi), lk.unit);
}

// ---------------------------------------------------------------------------
// Right Kan extension

/// Presentation of (f_* v)_y as a subobject of P_y = (+)_{(x, beta)} v_x with
/// beta ranging over Y(y, f x).
struct RightKan {
    LocalSystem system;  // f_* v over Y
    SystemMap counit;    // f^*(f_* v) -> v over X
    std::vector<std::vector<std::pair<int, int>>> slots;  // (x, beta)
    std::vector<std::map<int, Matrix>> incl;              // degree -> K_y -> P_y
};

inline RightKan push_right(const GroupoidFunctor& f, const LocalSystem& v) {
    if (v.base() != f.source()) throw BaseMismatch("push_right: base mismatch");
    const FinGroupoid& xg = f.source();
    const FinGroupoid& yg = f.target();
    const Field& F = v.field();

    std::vector<detail::CoendLayout> layout;
    for (int y = 0; y < yg.num_objects(); ++y)
        layout.push_back(detail::coend_layout(f, v, y, false));

    // constraints: for m : x -> x', beta in Y(y, f x):
    //   component at (x', f(m) o beta) = v(m) applied to component at (x, beta)
    std::vector<std::map<int, Matrix>> incl(yg.num_objects());
    std::vector<std::map<int, int>> kdims(yg.num_objects());
    for (int y = 0; y < yg.num_objects(); ++y) {
        auto& l = layout[y];
        std::vector<std::pair<int, int>> cons;  // (m, beta)
        for (int m = 0; m < xg.num_morphisms(); ++m)
            for (int beta : yg.hom(y, f.on_object(xg.src(m)))) cons.push_back({m, beta});
        for (auto& [n, total] : l.dims) {
            int rows = 0;
            for (auto& [m, beta] : cons) rows += v.at(xg.tgt(m)).dim(n);
            Matrix e(rows, total, F);
            int r0 = 0;
            for (auto& [m, beta] : cons) {
                int xs = xg.src(m), xt = xg.tgt(m);
                if (v.at(xt).dim(n) == 0) continue;
                std::pair<int, int> tslot{xt, yg.compose(f.on_morph(m), beta)};
                int t_off = l.offset.at(tslot)[n];
                for (int i = 0; i < v.at(xt).dim(n); ++i)
                    e.at(r0 + i, t_off + i) = F.one();
                if (v.at(xs).dim(n) > 0) {
                    int s_off = l.offset.at({xs, beta})[n];
                    Matrix vm = v.along(m).component(n);
                    for (std::size_t i = 0; i < vm.rows(); ++i)
                        for (std::size_t j = 0; j < vm.cols(); ++j)
                            e.at(r0 + i, s_off + j) =
                                F.sub(e.at(r0 + i, s_off + j), vm.at(i, j));
                }
                r0 += v.at(xt).dim(n);
            }
            incl[y][n] = kernel_basis(e);
            kdims[y][n] = static_cast<int>(incl[y][n].cols());
        }
    }

    auto block_diff = [&](int y, int n) {
        auto& l = layout[y];
        int rows = l.dims.count(n - 1) ? l.dims.at(n - 1) : 0;
        int cols = l.dims.count(n) ? l.dims.at(n) : 0;
        Matrix d(rows, cols, F);
        for (auto& slot : l.slots) {
            const ChainComplex& c = v.at(slot.first);
            if (c.dim(n) == 0 || c.dim(n - 1) == 0) continue;
            Matrix dn = c.diff(n);
            int r0 = l.offset.at(slot)[n - 1], c0 = l.offset.at(slot)[n];
            for (std::size_t i = 0; i < dn.rows(); ++i)
                for (std::size_t j = 0; j < dn.cols(); ++j)
                    d.at(r0 + i, c0 + j) = dn.at(i, j);
        }
        return d;
    };

    std::vector<ChainComplex> at;
    for (int y = 0; y < yg.num_objects(); ++y) {
        std::map<int, int> dims;
        std::map<int, Matrix> diffs;
        for (auto& [n, d] : kdims[y])
            if (d > 0) dims[n] = d;
        for (auto& [n, d] : kdims[y]) {
            if (!kdims[y].count(n - 1)) continue;
            Matrix m = mat_mul(block_diff(y, n), incl[y][n]);
            auto dk = solve_right(incl[y][n - 1], m);
            if (!dk) throw Error("push_right: differential restriction");
            diffs[n] = *dk;
        }
        at.push_back(ChainComplex(F, dims, diffs));
    }

    // transitions along nu : y -> y': component at (x, beta') pulls from
    // (x, beta' o nu)
    std::vector<std::map<int, Matrix>> along(yg.num_morphisms());
    for (int nu = 0; nu < yg.num_morphisms(); ++nu) {
        int ys = yg.src(nu), yt = yg.tgt(nu);
        auto &ls = layout[ys], &lt = layout[yt];
        for (auto& [n, tdim] : lt.dims) {
            if (!ls.dims.count(n)) continue;
            Matrix relab(tdim, ls.dims.at(n), F);
            for (auto& tslot : lt.slots) {
                const ChainComplex& c = v.at(tslot.first);
                if (c.dim(n) == 0) continue;
                std::pair<int, int> sslot{tslot.first,
                                          yg.compose(tslot.second, nu)};
                int r0 = lt.offset.at(tslot)[n];
                int c0 = ls.offset.at(sslot)[n];
                for (int i = 0; i < c.dim(n); ++i) relab.at(r0 + i, c0 + i) = F.one();
            }
            Matrix m = mat_mul(relab, incl[ys][n]);
            auto t = solve_right(incl[yt][n], m);
            if (!t) throw Error("push_right: transition restriction");
            if (at[ys].dim(n) > 0 && at[yt].dim(n) > 0) along[nu][n] = *t;
        }
    }
    LocalSystem k(yg, at, along, F);

    // counit at x: restrict K_{f x} to slot (x, id_{f x})
    LocalSystem pulled = pull_system(f, k);
    std::vector<std::map<int, Matrix>> counit_c(xg.num_objects());
    for (int x = 0; x < xg.num_objects(); ++x) {
        int y = f.on_object(x);
        auto& l = layout[y];
        std::pair<int, int> slot{x, yg.identity(y)};
        const ChainComplex& c = v.at(x);
        for (int n = c.lo(); n <= c.hi(); ++n) {
            if (c.dim(n) == 0 || at[y].dim(n) == 0) continue;
            Matrix pr(c.dim(n), l.dims.at(n), F);
            int c0 = l.offset.at(slot)[n];
            for (int i = 0; i < c.dim(n); ++i) pr.at(i, c0 + i) = F.one();
            counit_c[x][n] = mat_mul(pr, incl[y][n]);
        }
    }
    SystemMap counit(pulled, v, counit_c);

    std::vector<std::vector<std::pair<int, int>>> slots;
    for (auto& l : layout) slots.push_back(l.slots);
    return {k, counit, slots, incl};
}

/// Transpose phi : f^* w -> v into w -> f_* v: slot (x, beta) receives
/// phi_x o w(beta).
inline SystemMap transpose_right(const GroupoidFunctor& f, const RightKan& rk,
                                 const LocalSystem& v, const LocalSystem& w,
                                 const SystemMap& phi) {
    const FinGroupoid& yg = f.target();
    const Field& F = v.field();
    std::vector<std::map<int, Matrix>> comps(yg.num_objects());
    for (int y = 0; y < yg.num_objects(); ++y) {
        detail::CoendLayout l = detail::coend_layout(f, v, y, false);
        for (auto& [n, total] : l.dims) {
            if (w.at(y).dim(n) == 0) continue;
            Matrix m(total, w.at(y).dim(n), F);
            for (auto& slot : l.slots) {
                auto [x, beta] = slot;
                if (v.at(x).dim(n) == 0) continue;
                Matrix pw = mat_mul(phi.component(x).component(n),
                                    w.along(beta).component(n));
                int r0 = l.offset.at(slot)[n];
                for (std::size_t i = 0; i < pw.rows(); ++i)
                    for (std::size_t j = 0; j < pw.cols(); ++j)
                        m.at(r0 + i, j) = pw.at(i, j);
            }
            if (rk.system.at(y).dim(n) == 0) continue;
            auto t = solve_right(rk.incl[y].at(n), m);
            if (!t) throw Error("transpose_right: image not in the equalizer");
            comps[y][n] = *t;
        }
    }
    return SystemMap(w, rk.system, comps);
}

/// Inverse transpose: psi : w -> f_* v back to f^* w -> v via the counit.
inline SystemMap untranspose_right(const GroupoidFunctor& f, const RightKan& rk,
                                   const LocalSystem& w, const SystemMap& psi) {
    return compose(rk.counit, pull_system_map(f, psi));
}

}  // namespace locsys
