#pragma once

/// D-skeletal simplicial objects in chain complexes: validation of the
/// simplicial identities, const / ev_0, levelwise tensor, and the total
/// complex of the normalized (Moore) simplicial direction
///   N_s = intersection of ker d_i for i < s,  Moore differential (-1)^s d_s,
///   Tot_k = (+)_{s+t=k} N_{s,t},  total differential = internal + (-1)^t Moore.

#include <vector>

#include "locsys/chain.hpp"

namespace locsys {

class TruncSimplicialComplex {
public:
    /// levels[n] is V_n for 0 <= n <= D; faces[n-1][i] is d_i : V_n -> V_{n-1}
    /// for 1 <= n <= D; degeneracies[n][i] is s_i : V_n -> V_{n+1} for n < D.
    TruncSimplicialComplex(std::vector<ChainComplex> levels,
                           std::vector<std::vector<ChainMap>> faces,
                           std::vector<std::vector<ChainMap>> degeneracies)
        : levels_(std::move(levels)),
          faces_(std::move(faces)),
          degENS_(std::move(degeneracies)) {
        if (levels_.empty()) throw ShapeError("need at least level 0");
        std::size_t d = levels_.size() - 1;
        if (faces_.size() != d || degENS_.size() != d)
            throw ShapeError("face/degeneracy level counts do not match D");
        for (std::size_t n = 1; n <= d; ++n) {
            if (faces_[n - 1].size() != n + 1)
                throw ShapeError("level " + std::to_string(n) + " needs " +
                                 std::to_string(n + 1) + " faces");
            for (auto& f : faces_[n - 1])
                if (f.source() != levels_[n] || f.target() != levels_[n - 1])
                    throw ShapeError("face endpoints wrong at level " + std::to_string(n));
        }
        for (std::size_t n = 0; n < d; ++n) {
            if (degENS_[n].size() != n + 1)
                throw ShapeError("level " + std::to_string(n) + " needs " +
                                 std::to_string(n + 1) + " degeneracies");
            for (auto& s : degENS_[n])
                if (s.source() != levels_[n] || s.target() != levels_[n + 1])
                    throw ShapeError("degeneracy endpoints wrong at level " +
                                     std::to_string(n));
        }
        for (std::size_t n = 0; n <= d; ++n)
            if (levels_[n].field() != levels_[0].field())
                throw FieldMismatch("levels must share one field");
    }

    int D() const { return static_cast<int>(levels_.size()) - 1; }
    const Field& field() const { return levels_[0].field(); }
    const ChainComplex& level(int n) const { return levels_[n]; }
    const ChainMap& face(int n, int i) const { return faces_[n - 1][i]; }
    const ChainMap& degeneracy(int n, int i) const { return degENS_[n][i]; }

    bool operator==(const TruncSimplicialComplex& o) const {
        return levels_ == o.levels_ && faces_ == o.faces_ && degENS_ == o.degENS_;
    }

private:
    std::vector<ChainComplex> levels_;
    std::vector<std::vector<ChainMap>> faces_;
    std::vector<std::vector<ChainMap>> degENS_;
};

inline void validate_simplicial(const TruncSimplicialComplex& v) {
    int D = v.D();
    auto fail = [](int i, int j, int n, const char* which) {
        throw SimplicialIdentityViolation(std::string(which) + " at (i=" +
                                          std::to_string(i) + ", j=" + std::to_string(j) +
                                          ", n=" + std::to_string(n) + ")");
    };
    for (int n = 0; n <= D; ++n) validate_complex(v.level(n));
    // d_i d_j = d_{j-1} d_i (i < j), on V_n for n >= 2
    for (int n = 2; n <= D; ++n)
        for (int j = 1; j <= n; ++j)
            for (int i = 0; i < j; ++i)
                if (compose(v.face(n - 1, i), v.face(n, j)) !=
                    compose(v.face(n - 1, j - 1), v.face(n, i)))
                    fail(i, j, n, "d_i d_j = d_{j-1} d_i");
    // s_i s_j = s_{j+1} s_i (i <= j), on V_n landing in V_{n+2}
    for (int n = 0; n + 2 <= D; ++n)
        for (int j = 0; j <= n; ++j)
            for (int i = 0; i <= j; ++i)
                if (compose(v.degeneracy(n + 1, i), v.degeneracy(n, j)) !=
                    compose(v.degeneracy(n + 1, j + 1), v.degeneracy(n, i)))
                    fail(i, j, n, "s_i s_j = s_{j+1} s_i");
    // mixed identities on V_n, n < D (via s into V_{n+1}, then faces)
    for (int n = 0; n < D; ++n)
        for (int j = 0; j <= n; ++j)
            for (int i = 0; i <= n + 1; ++i) {
                ChainMap lhs = compose(v.face(n + 1, i), v.degeneracy(n, j));
                if (i < j) {
                    if (n >= 1 && lhs != compose(v.degeneracy(n - 1, j - 1), v.face(n, i)))
                        fail(i, j, n, "d_i s_j = s_{j-1} d_i");
                } else if (i == j || i == j + 1) {
                    if (lhs != ChainMap::identity(v.level(n)))
                        fail(i, j, n, "d_j s_j = id = d_{j+1} s_j");
                } else {
                    if (n >= 1 && lhs != compose(v.degeneracy(n - 1, j), v.face(n, i - 1)))
                        fail(i, j, n, "d_i s_j = s_j d_{i-1}");
                }
            }
}

class TruncSimplicialMap {
public:
    TruncSimplicialMap(TruncSimplicialComplex source, TruncSimplicialComplex target,
                       std::vector<ChainMap> components)
        : source_(std::move(source)),
          target_(std::move(target)),
          comps_(std::move(components)) {
        if (source_.D() != target_.D() ||
            comps_.size() != static_cast<std::size_t>(source_.D()) + 1)
            throw ShapeMismatch("simplicial map level count");
        for (int n = 0; n <= source_.D(); ++n)
            if (comps_[n].source() != source_.level(n) ||
                comps_[n].target() != target_.level(n))
                throw ShapeMismatch("simplicial map component endpoints");
    }

    static TruncSimplicialMap identity(const TruncSimplicialComplex& v) {
        std::vector<ChainMap> comps;
        for (int n = 0; n <= v.D(); ++n) comps.push_back(ChainMap::identity(v.level(n)));
        return TruncSimplicialMap(v, v, comps);
    }

    const TruncSimplicialComplex& source() const { return source_; }
    const TruncSimplicialComplex& target() const { return target_; }
    const ChainMap& component(int n) const { return comps_[n]; }

private:
    TruncSimplicialComplex source_, target_;
    std::vector<ChainMap> comps_;
};

inline void validate_simplicial_map(const TruncSimplicialMap& f) {
    int D = f.source().D();
    for (int n = 0; n <= D; ++n) validate_chain_map(f.component(n));
    for (int n = 1; n <= D; ++n)
        for (int i = 0; i <= n; ++i)
            if (compose(f.component(n - 1), f.source().face(n, i)) !=
                compose(f.target().face(n, i), f.component(n)))
                throw NaturalityViolation("simplicial map vs face (n=" +
                                          std::to_string(n) + ", i=" + std::to_string(i) +
                                          ")");
    for (int n = 0; n < D; ++n)
        for (int i = 0; i <= n; ++i)
            if (compose(f.component(n + 1), f.source().degeneracy(n, i)) !=
                compose(f.target().degeneracy(n, i), f.component(n)))
                throw NaturalityViolation("simplicial map vs degeneracy (n=" +
                                          std::to_string(n) + ", i=" + std::to_string(i) +
                                          ")");
}

/// Constant simplicial object: every level c, every structure map the identity.
inline TruncSimplicialComplex const_simplicial(const ChainComplex& c, int D) {
    if (D < 0) throw ShapeError("D must be >= 0");
    std::vector<ChainComplex> levels(D + 1, c);
    std::vector<std::vector<ChainMap>> faces, degs;
    for (int n = 1; n <= D; ++n)
        faces.emplace_back(n + 1, ChainMap::identity(c));
    for (int n = 0; n < D; ++n)
        degs.emplace_back(n + 1, ChainMap::identity(c));
    return TruncSimplicialComplex(levels, faces, degs);
}

inline TruncSimplicialMap const_simplicial_map(const ChainMap& f, int D) {
    std::vector<ChainMap> comps(D + 1, f);
    return TruncSimplicialMap(const_simplicial(f.source(), D),
                              const_simplicial(f.target(), D), comps);
}

inline ChainComplex ev0(const TruncSimplicialComplex& v) { return v.level(0); }

/// Levelwise tensor with structure maps tensored.
inline TruncSimplicialComplex level_tensor(const TruncSimplicialComplex& v,
                                           const TruncSimplicialComplex& w) {
    if (v.D() != w.D()) throw ShapeMismatch("level_tensor: unequal skeletal degree");
    if (v.field() != w.field()) throw FieldMismatch("level_tensor: field mismatch");
    int D = v.D();
    std::vector<ChainComplex> levels;
    for (int n = 0; n <= D; ++n) levels.push_back(tensor(v.level(n), w.level(n)));
    std::vector<std::vector<ChainMap>> faces, degs;
    for (int n = 1; n <= D; ++n) {
        std::vector<ChainMap> fs;
        for (int i = 0; i <= n; ++i)
            fs.push_back(tensor_map(v.face(n, i), w.face(n, i)));
        faces.push_back(std::move(fs));
    }
    for (int n = 0; n < D; ++n) {
        std::vector<ChainMap> ss;
        for (int i = 0; i <= n; ++i)
            ss.push_back(tensor_map(v.degeneracy(n, i), w.degeneracy(n, i)));
        degs.push_back(std::move(ss));
    }
    return TruncSimplicialComplex(levels, faces, degs);
}

namespace detail {

/// Inclusion of the normalized part N_s = /\_{i<s} ker d_i into V_s,
/// one matrix per internal degree t.
inline std::map<int, Matrix> normalized_inclusion(const TruncSimplicialComplex& v,
                                                  int s) {
    const Field& F = v.field();
    const ChainComplex& lvl = v.level(s);
    std::map<int, Matrix> incl;
    for (int t = lvl.lo(); t <= lvl.hi(); ++t) {
        if (s == 0) {
            incl[t] = Matrix::identity(lvl.dim(t), F);
            continue;
        }
        Matrix stacked(0, lvl.dim(t), F);
        for (int i = 0; i < s; ++i)
            stacked = vstack(stacked, v.face(s, i).component(t));
        incl[t] = kernel_basis(stacked);
    }
    return incl;
}

}  // namespace detail

/// Total chain complex of the normalized simplicial direction.
inline ChainComplex tot(const TruncSimplicialComplex& v) {
    const Field& F = v.field();
    int D = v.D();
    // per level: inclusion of N_s, plus dims per (s, t)
    std::vector<std::map<int, Matrix>> incl(D + 1);
    for (int s = 0; s <= D; ++s) incl[s] = detail::normalized_inclusion(v, s);
    auto ndim = [&](int s, int t) -> int {
        auto it = incl[s].find(t);
        return it == incl[s].end() ? 0 : static_cast<int>(it->second.cols());
    };
    // internal differential of N_s (restriction of the level differential)
    auto internal = [&](int s, int t) -> Matrix {
        Matrix img = mat_mul(v.level(s).diff(t), incl[s][t]);
        auto r = solve_right(incl[s][t - 1], img);
        if (!r) throw Error("tot: internal differential does not restrict");
        return *r;
    };
    // Moore differential N_s -> N_{s-1}: restriction of d_s (sign added below)
    auto moore = [&](int s, int t) -> Matrix {
        Matrix img = mat_mul(v.face(s, s).component(t), incl[s][t]);
        auto r = solve_right(incl[s - 1][t], img);
        if (!r) throw Error("tot: Moore differential does not restrict");
        return *r;
    };

    int lo = 0, hi = -1;
    std::map<int, int> dims;
    for (int s = 0; s <= D; ++s) {
        const ChainComplex& lvl = v.level(s);
        for (int t = lvl.lo(); t <= lvl.hi(); ++t)
            if (ndim(s, t) > 0) dims[s + t] += ndim(s, t);
    }
    for (auto& [k, d] : dims) {
        if (hi < lo) lo = hi = k;
        lo = std::min(lo, k);
        hi = std::max(hi, k);
    }
    // block layout of Tot_k: s ascending
    auto offset = [&](int k, int s) {
        int off = 0;
        for (int ss = 0; ss < s; ++ss) off += ndim(ss, k - ss);
        return off;
    };
    auto total_dim = [&](int k) {
        int d = 0;
        for (int s = 0; s <= D; ++s) d += ndim(s, k - s);
        return d;
    };
    std::map<int, Matrix> diffs;
    if (!dims.empty()) {
        for (int k = lo + 1; k <= hi; ++k) {
            Matrix dk(total_dim(k - 1), total_dim(k), F);
            for (int s = 0; s <= D; ++s) {
                int t = k - s;
                if (ndim(s, t) == 0) continue;
                // internal part: (s, t) -> (s, t-1)
                if (ndim(s, t - 1) > 0) {
                    Matrix m = internal(s, t);
                    int ro = offset(k - 1, s), co = offset(k, s);
                    for (std::size_t i = 0; i < m.rows(); ++i)
                        for (std::size_t j = 0; j < m.cols(); ++j)
                            dk.at(ro + i, co + j) = m.at(i, j);
                }
                // simplicial part: (s, t) -> (s-1, t) with sign (-1)^t (-1)^s
                if (s >= 1 && ndim(s - 1, t) > 0) {
                    Matrix m = moore(s, t);
                    bool neg = ((s + t) % 2 != 0);
                    int ro = offset(k - 1, s - 1), co = offset(k, s);
                    for (std::size_t i = 0; i < m.rows(); ++i)
                        for (std::size_t j = 0; j < m.cols(); ++j)
                            dk.at(ro + i, co + j) = neg ? F.neg(m.at(i, j)) : m.at(i, j);
                }
            }
            diffs[k] = dk;
        }
    }
    std::map<int, int> clean;
    for (auto& [k, d] : dims)
        if (d > 0) clean[k] = d;
    return ChainComplex(F, clean, diffs);
}

/// tot applied to a simplicial map (restricts to the normalized parts).
inline ChainMap tot_map(const TruncSimplicialMap& f) {
    const Field& F = f.source().field();
    ChainComplex ts = tot(f.source()), tt = tot(f.target());
    int D = f.source().D();
    std::vector<std::map<int, Matrix>> si(D + 1), ti(D + 1);
    for (int s = 0; s <= D; ++s) {
        si[s] = detail::normalized_inclusion(f.source(), s);
        ti[s] = detail::normalized_inclusion(f.target(), s);
    }
    auto ndim = [](std::map<int, Matrix>& m, int t) -> int {
        auto it = m.find(t);
        return it == m.end() ? 0 : static_cast<int>(it->second.cols());
    };
    std::map<int, Matrix> comps;
    for (int k = std::min(ts.lo(), tt.lo()); k <= std::max(ts.hi(), tt.hi()); ++k) {
        if (ts.dim(k) == 0 || tt.dim(k) == 0) continue;
        Matrix comp(tt.dim(k), ts.dim(k), F);
        int co = 0;
        for (int s = 0; s <= D; ++s) {
            int t = k - s;
            int sd = ndim(si[s], t);
            if (sd == 0) continue;
            int ro = 0;
            for (int ss = 0; ss < s; ++ss) ro += ndim(ti[ss], k - ss);
            if (ndim(ti[s], t) > 0) {
                Matrix img = mat_mul(f.component(s).component(t), si[s][t]);
                auto m = solve_right(ti[s][t], img);
                if (!m) throw Error("tot_map: map does not restrict to N");
                for (std::size_t i = 0; i < m->rows(); ++i)
                    for (std::size_t j = 0; j < m->cols(); ++j)
                        comp.at(ro + i, co + j) = m->at(i, j);
            }
            co += sd;
        }
        comps[k] = comp;
    }
    return ChainMap(ts, tt, comps);
}

/// True iff tot of the map is a quasi-isomorphism.
inline bool is_total_we(const TruncSimplicialMap& f) { return is_quasi_iso(tot_map(f)); }

/// True iff every face and degeneracy is a quasi-isomorphism.
inline bool is_homotopically_constant(const TruncSimplicialComplex& v) {
    for (int n = 1; n <= v.D(); ++n)
        for (int i = 0; i <= n; ++i)
            if (!is_quasi_iso(v.face(n, i))) return false;
    for (int n = 0; n < v.D(); ++n)
        for (int i = 0; i <= n; ++i)
            if (!is_quasi_iso(v.degeneracy(n, i))) return false;
    return true;
}

}  // namespace locsys
