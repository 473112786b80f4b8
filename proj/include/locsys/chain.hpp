#pragma once

/// Chain complexes of K-vector spaces on a finite degree window, with
/// tensor and mapping complexes, homology, model-structure classifiers,
/// finite (co)limits and pushout-products.
///
/// Sign conventions (pinned by the invariants "d o d = 0" and
/// "Z_0([V,W]) = chain maps"):
///   tensor:  d(v (x) w) = dv (x) w + (-1)^{|v|} v (x) dw
///   hom:     (df)_n = d o f_n - (-1)^{|f|} f_{n-1} o d

#include <map>
#include <vector>

#include "locsys/matrix.hpp"

namespace locsys {

using BettiTable = std::map<int, int>;

class ChainComplex {
public:
    explicit ChainComplex(Field field) : field_(field), lo_(0), hi_(-1) {}

    /// dims: degree -> dimension; diffs: source degree n -> matrix of
    /// d_n : C_n -> C_{n-1}. The window is trimmed to the support.
    ChainComplex(Field field, const std::map<int, int>& dims,
                 const std::map<int, Matrix>& diffs)
        : field_(field), lo_(0), hi_(-1) {
        for (auto& [n, d] : dims) {
            if (d < 0) throw ShapeError("negative dimension");
            if (d == 0) continue;
            if (hi_ < lo_) {
                lo_ = hi_ = n;
            } else {
                lo_ = std::min(lo_, n);
                hi_ = std::max(hi_, n);
            }
        }
        dims_.assign(hi_ < lo_ ? 0 : hi_ - lo_ + 1, 0);
        for (auto& [n, d] : dims)
            if (d > 0) dims_[n - lo_] = d;
        diffs_.assign(hi_ > lo_ ? hi_ - lo_ : 0, Matrix());
        for (int n = lo_ + 1; n <= hi_; ++n) {
            auto it = diffs.find(n);
            Matrix d = (it != diffs.end()) ? it->second
                                           : Matrix::zeros(dim(n - 1), dim(n), field_);
            if (d.rows() != static_cast<std::size_t>(dim(n - 1)) ||
                d.cols() != static_cast<std::size_t>(dim(n)))
                throw ShapeError("differential shape mismatch at degree " +
                                 std::to_string(n));
            if (d.field() != field_) throw FieldMismatch("differential field mismatch");
            diffs_[n - lo_ - 1] = d;
        }
        // any differential given outside the window must vanish there anyway
        for (auto& [n, d] : diffs) {
            if (n > lo_ && n <= hi_) continue;
            if (d.rows() != static_cast<std::size_t>(dim(n - 1)) ||
                d.cols() != static_cast<std::size_t>(dim(n)))
                throw ShapeError("differential shape mismatch at degree " +
                                 std::to_string(n));
        }
    }

    const Field& field() const { return field_; }
    int lo() const { return lo_; }
    int hi() const { return hi_; }
    bool empty() const { return hi_ < lo_; }

    int dim(int n) const {
        if (n < lo_ || n > hi_) return 0;
        return dims_[n - lo_];
    }

    int total_dim() const {
        int t = 0;
        for (int d : dims_) t += d;
        return t;
    }

    /// d_n : C_n -> C_{n-1}; a zero matrix of the right shape off the window.
    Matrix diff(int n) const {
        if (n > lo_ && n <= hi_) return diffs_[n - lo_ - 1];
        return Matrix::zeros(dim(n - 1), dim(n), field_);
    }

    std::map<int, int> dims_map() const {
        std::map<int, int> m;
        for (int n = lo_; n <= hi_; ++n)
            if (dim(n) > 0) m[n] = dim(n);
        return m;
    }

    bool operator==(const ChainComplex& o) const {
        return field_ == o.field_ && lo_ == o.lo_ && hi_ == o.hi_ && dims_ == o.dims_ &&
               diffs_ == o.diffs_;
    }
    bool operator!=(const ChainComplex& o) const { return !(*this == o); }

private:
    Field field_;
    int lo_, hi_;
    std::vector<int> dims_;
    std::vector<Matrix> diffs_;  // diffs_[n - lo_ - 1] = d_n
};

/// Succeeds iff d o d = 0 throughout the window (shapes were already
/// checked on construction).
inline void validate_complex(const ChainComplex& c) {
    for (int n = c.lo() + 2; n <= c.hi(); ++n)
        if (!mat_mul(c.diff(n - 1), c.diff(n)).is_zero()) throw NotAComplex(n);
}

class ChainMap {
public:
    /// Components keyed by degree; missing degrees are zero maps.
    ChainMap(ChainComplex source, ChainComplex target,
             const std::map<int, Matrix>& components)
        : source_(std::move(source)), target_(std::move(target)) {
        if (source_.field() != target_.field())
            throw FieldMismatch("chain map field mismatch");
        for (auto& [n, m] : components) {
            if (m.rows() != static_cast<std::size_t>(target_.dim(n)) ||
                m.cols() != static_cast<std::size_t>(source_.dim(n)))
                throw ShapeError("chain map component shape at degree " +
                                 std::to_string(n));
            if (source_.dim(n) > 0 && target_.dim(n) > 0 && !m.is_zero())
                comps_[n] = m;
        }
    }

    static ChainMap zero(ChainComplex source, ChainComplex target) {
        return ChainMap(std::move(source), std::move(target), {});
    }

    static ChainMap identity(const ChainComplex& c) {
        std::map<int, Matrix> comps;
        for (int n = c.lo(); n <= c.hi(); ++n)
            if (c.dim(n) > 0) comps[n] = Matrix::identity(c.dim(n), c.field());
        return ChainMap(c, c, comps);
    }

    const ChainComplex& source() const { return source_; }
    const ChainComplex& target() const { return target_; }
    const Field& field() const { return source_.field(); }

    Matrix component(int n) const {
        auto it = comps_.find(n);
        if (it != comps_.end()) return it->second;
        return Matrix::zeros(target_.dim(n), source_.dim(n), field());
    }

    bool operator==(const ChainMap& o) const {
        return source_ == o.source_ && target_ == o.target_ && comps_ == o.comps_;
    }
    bool operator!=(const ChainMap& o) const { return !(*this == o); }

private:
    ChainComplex source_, target_;
    std::map<int, Matrix> comps_;
};

inline void validate_chain_map(const ChainMap& f) {
    int lo = std::min(f.source().lo(), f.target().lo());
    int hi = std::max(f.source().hi(), f.target().hi());
    for (int n = lo; n <= hi + 1; ++n) {
        Matrix lhs = mat_mul(f.target().diff(n), f.component(n));
        Matrix rhs = mat_mul(f.component(n - 1), f.source().diff(n));
        if (lhs != rhs)
            throw ShapeError("not a chain map: square at degree " + std::to_string(n));
    }
}

inline ChainMap compose(const ChainMap& g, const ChainMap& f) {
    if (f.target() != g.source()) throw ShapeMismatch("compose: middle complexes differ");
    std::map<int, Matrix> comps;
    int lo = std::min(f.source().lo(), g.target().lo());
    int hi = std::max(f.source().hi(), g.target().hi());
    for (int n = lo; n <= hi; ++n)
        if (f.source().dim(n) > 0 && g.target().dim(n) > 0)
            comps[n] = mat_mul(g.component(n), f.component(n));
    return ChainMap(f.source(), g.target(), comps);
}

inline ChainMap operator+(const ChainMap& f, const ChainMap& g) {
    if (f.source() != g.source() || f.target() != g.target())
        throw ShapeMismatch("chain map sum: shape mismatch");
    std::map<int, Matrix> comps;
    for (int n = f.source().lo(); n <= f.source().hi(); ++n)
        if (f.source().dim(n) > 0 && f.target().dim(n) > 0)
            comps[n] = f.component(n) + g.component(n);
    return ChainMap(f.source(), f.target(), comps);
}

// ---------------------------------------------------------------------------
// Generators of the model structure

/// K concentrated in degree d.
inline ChainComplex sphere(int d, Field field) {
    return ChainComplex(field, {{d, 1}}, {});
}

/// The tensor unit: K in degree 0.
inline ChainComplex tensor_unit(Field field) { return sphere(0, field); }

/// K in degrees n and n-1 joined by the identity.
inline ChainComplex disk(int n, Field field) {
    return ChainComplex(field, {{n, 1}, {n - 1, 1}},
                        {{n, Matrix::identity(1, field)}});
}

/// i_n : S^{n-1} -> D^n, the identity in degree n-1.
inline ChainMap gen_cof(int n, Field field) {
    return ChainMap(sphere(n - 1, field), disk(n, field),
                    {{n - 1, Matrix::identity(1, field)}});
}

/// j_n : 0 -> D^n.
inline ChainMap gen_acyclic_cof(int n, Field field) {
    return ChainMap(ChainComplex(field), disk(n, field), {});
}

// ---------------------------------------------------------------------------
// Homology

inline BettiTable homology(const ChainComplex& c) {
    BettiTable h;
    for (int n = c.lo(); n <= c.hi(); ++n) {
        int cycles = c.dim(n) - static_cast<int>(rank(c.diff(n)));
        int boundaries = static_cast<int>(rank(c.diff(n + 1)));
        if (cycles - boundaries != 0) h[n] = cycles - boundaries;
    }
    return h;
}

/// Pivot-deterministic homology presentation in one degree: representative
/// cycles (columns of `reps`) complementing the boundaries, plus the data
/// needed to express any cycle in this basis modulo boundaries.
struct HomologyBasis {
    Matrix boundaries;  // columns spanning B_n (one per pivot)
    Matrix reps;        // representative cycles, dim H_n many columns
};

inline HomologyBasis homology_basis(const ChainComplex& c, int n) {
    const Field& F = c.field();
    Matrix z = kernel_basis(c.diff(n));     // cycles
    Matrix b_full = c.diff(n + 1);          // boundary generators
    Echelon eb = echelon(b_full);
    Matrix b(c.dim(n), eb.pivots.size(), F);
    for (std::size_t j = 0; j < eb.pivots.size(); ++j)
        for (std::size_t i = 0; i < b.rows(); ++i)
            b.at(i, j) = b_full.at(i, eb.pivots[j]);
    // extend the boundary basis to a cycle basis; the added columns represent H_n
    Echelon e = echelon(hstack(b, z));
    Matrix reps(c.dim(n), e.pivots.size() - b.cols(), F);
    std::size_t out = 0;
    for (auto p : e.pivots) {
        if (p < b.cols()) continue;
        for (std::size_t i = 0; i < reps.rows(); ++i)
            reps.at(i, out) = z.at(i, p - b.cols());
        ++out;
    }
    return {b, reps};
}

/// Coordinates of a list of cycles (columns) in the homology basis of degree n.
inline Matrix homology_coordinates(const HomologyBasis& hb, const Matrix& cycles) {
    auto sol = solve_right(hstack(hb.boundaries, hb.reps), cycles);
    if (!sol) throw Error("homology_coordinates: vector is not a cycle");
    Matrix q(hb.reps.cols(), cycles.cols(), cycles.field());
    for (std::size_t i = 0; i < q.rows(); ++i)
        for (std::size_t j = 0; j < q.cols(); ++j)
            q.at(i, j) = sol->at(hb.boundaries.cols() + i, j);
    return q;
}

/// Matrix of H_n(f) in the deterministic homology bases, per degree.
inline std::map<int, Matrix> induced_homology_map(const ChainMap& f) {
    std::map<int, Matrix> h;
    int lo = std::min(f.source().lo(), f.target().lo());
    int hi = std::max(f.source().hi(), f.target().hi());
    for (int n = lo; n <= hi; ++n) {
        HomologyBasis hs = homology_basis(f.source(), n);
        HomologyBasis ht = homology_basis(f.target(), n);
        Matrix img = mat_mul(f.component(n), hs.reps);
        h[n] = homology_coordinates(ht, img);
    }
    return h;
}

struct ChainFlags {
    bool we = false;
    bool fib = false;
    bool cof = false;
};

/// cof: every component injective; fib: every component surjective;
/// we: quasi-isomorphism.
inline ChainFlags classify_chain_map(const ChainMap& f) {
    ChainFlags flags;
    flags.cof = flags.fib = flags.we = true;
    int lo = std::min(f.source().lo(), f.target().lo());
    int hi = std::max(f.source().hi(), f.target().hi());
    for (int n = lo; n <= hi; ++n) {
        Matrix c = f.component(n);
        std::size_t r = rank(c);
        if (r != c.cols()) flags.cof = false;
        if (r != c.rows()) flags.fib = false;
    }
    for (auto& [n, h] : induced_homology_map(f))
        if (h.rows() != h.cols() || rank(h) != h.rows()) flags.we = false;
    return flags;
}

inline bool is_quasi_iso(const ChainMap& f) { return classify_chain_map(f).we; }

// ---------------------------------------------------------------------------
// Tensor product

/// Basis bookkeeping for (c (x) d)_k: summands ordered by ascending degree m
/// of the first factor, entries lexicographic in (i, j).
class TensorIndexer {
public:
    TensorIndexer(const ChainComplex& c, const ChainComplex& d) : c_(&c), d_(&d) {}

    int dim(int k) const {
        int t = 0;
        for (int m = c_->lo(); m <= c_->hi(); ++m) t += c_->dim(m) * d_->dim(k - m);
        return t;
    }

    /// Position of basis vector e_i^{(m)} (x) e_j^{(k-m)} inside degree k.
    int index(int k, int m, int i, int j) const {
        int off = 0;
        for (int mm = c_->lo(); mm < m; ++mm) off += c_->dim(mm) * d_->dim(k - mm);
        return off + i * d_->dim(k - m) + j;
    }

private:
    const ChainComplex* c_;
    const ChainComplex* d_;
};

inline ChainComplex tensor(const ChainComplex& c, const ChainComplex& d) {
    if (c.field() != d.field()) throw FieldMismatch("tensor: field mismatch");
    const Field& F = c.field();
    if (c.empty() || d.empty()) return ChainComplex(F);
    TensorIndexer idx(c, d);
    int lo = c.lo() + d.lo(), hi = c.hi() + d.hi();
    std::map<int, int> dims;
    for (int k = lo; k <= hi; ++k)
        if (idx.dim(k) > 0) dims[k] = idx.dim(k);
    std::map<int, Matrix> diffs;
    for (int k = lo + 1; k <= hi; ++k) {
        Matrix dk(idx.dim(k - 1), idx.dim(k), F);
        for (int m = c.lo(); m <= c.hi(); ++m) {
            int cm = c.dim(m), dn = d.dim(k - m);
            if (cm == 0 || dn == 0) continue;
            Matrix dc = c.diff(m);        // C_m -> C_{m-1}
            Matrix dd = d.diff(k - m);    // D_{k-m} -> D_{k-m-1}
            bool msign = (m % 2 != 0);
            for (int i = 0; i < cm; ++i)
                for (int j = 0; j < dn; ++j) {
                    int col = idx.index(k, m, i, j);
                    for (std::size_t r = 0; r < dc.rows(); ++r)
                        if (dc.at(r, i) != 0)
                            dk.at(idx.index(k - 1, m - 1, static_cast<int>(r), j), col) =
                                dc.at(r, i);
                    for (std::size_t r = 0; r < dd.rows(); ++r)
                        if (dd.at(r, j) != 0) {
                            Scalar v = dd.at(r, j);
                            dk.at(idx.index(k - 1, m, i, static_cast<int>(r)), col) =
                                msign ? F.neg(v) : v;
                        }
                }
        }
        diffs[k] = dk;
    }
    return ChainComplex(F, dims, diffs);
}

inline ChainMap tensor_map(const ChainMap& f, const ChainMap& g) {
    if (f.field() != g.field()) throw FieldMismatch("tensor_map: field mismatch");
    const Field& F = f.field();
    ChainComplex src = tensor(f.source(), g.source());
    ChainComplex tgt = tensor(f.target(), g.target());
    TensorIndexer si(f.source(), g.source());
    TensorIndexer ti(f.target(), g.target());
    std::map<int, Matrix> comps;
    for (int k = src.lo(); k <= src.hi(); ++k) {
        if (src.dim(k) == 0 || tgt.dim(k) == 0) continue;
        Matrix comp(tgt.dim(k), src.dim(k), F);
        for (int m = f.source().lo(); m <= f.source().hi(); ++m) {
            int cm = f.source().dim(m), dn = g.source().dim(k - m);
            if (cm == 0 || dn == 0) continue;
            Matrix fm = f.component(m);
            Matrix gm = g.component(k - m);
            for (int i = 0; i < cm; ++i)
                for (int j = 0; j < dn; ++j) {
                    int col = si.index(k, m, i, j);
                    for (std::size_t a = 0; a < fm.rows(); ++a) {
                        if (fm.at(a, i) == 0) continue;
                        for (std::size_t b = 0; b < gm.rows(); ++b) {
                            if (gm.at(b, j) == 0) continue;
                            comp.at(ti.index(k, m, static_cast<int>(a),
                                             static_cast<int>(b)),
                                    col) = F.mul(fm.at(a, i), gm.at(b, j));
                        }
                    }
                }
        }
        comps[k] = comp;
    }
    return ChainMap(src, tgt, comps);
}

// ---------------------------------------------------------------------------
// Mapping complex

/// Basis bookkeeping for [c,d]_k = (+)_n Hom(c_n, d_{n+k}): blocks ordered by
/// ascending n, inside a block the matrix units E_{ij} row-major.
class HomIndexer {
public:
    HomIndexer(const ChainComplex& c, const ChainComplex& d) : c_(&c), d_(&d) {}

    int dim(int k) const {
        int t = 0;
        for (int n = c_->lo(); n <= c_->hi(); ++n) t += c_->dim(n) * d_->dim(n + k);
        return t;
    }

    int index(int k, int n, int i, int j) const {  // E_{ij} : c_n -> d_{n+k}
        int off = 0;
        for (int nn = c_->lo(); nn < n; ++nn) off += c_->dim(nn) * d_->dim(nn + k);
        return off + i * c_->dim(n) + j;
    }

private:
    const ChainComplex* c_;
    const ChainComplex* d_;
};

inline ChainComplex hom_complex(const ChainComplex& c, const ChainComplex& d) {
    if (c.field() != d.field()) throw FieldMismatch("hom_complex: field mismatch");
    const Field& F = c.field();
    if (c.empty() || d.empty()) return ChainComplex(F);
    HomIndexer idx(c, d);
    int lo = d.lo() - c.hi(), hi = d.hi() - c.lo();
    std::map<int, int> dims;
    for (int k = lo; k <= hi; ++k)
        if (idx.dim(k) > 0) dims[k] = idx.dim(k);
    std::map<int, Matrix> diffs;
    for (int k = lo + 1; k <= hi; ++k) {
        Matrix dk(idx.dim(k - 1), idx.dim(k), F);
        bool ksign = (k % 2 != 0);  // (-1)^k
        for (int n = c.lo(); n <= c.hi(); ++n) {
            int cn = c.dim(n), dm = d.dim(n + k);
            if (cn == 0 || dm == 0) continue;
            Matrix dd = d.diff(n + k);    // d_{n+k} : D_{n+k} -> D_{n+k-1}
            Matrix dc = c.diff(n + 1);    // d_{n+1} : C_{n+1} -> C_n
            for (int i = 0; i < dm; ++i)
                for (int j = 0; j < cn; ++j) {
                    int col = idx.index(k, n, i, j);
                    // d o E_{ij} : block n of degree k-1
                    for (std::size_t r = 0; r < dd.rows(); ++r)
                        if (dd.at(r, i) != 0) {
                            int row = idx.index(k - 1, n, static_cast<int>(r), j);
                            dk.at(row, col) = F.add(dk.at(row, col), dd.at(r, i));
                        }
                    // -(-1)^k E_{ij} o d_{n+1} : block n+1 of degree k-1
                    if (c.dim(n + 1) > 0)
                        for (std::size_t s = 0; s < dc.cols(); ++s) {
                            // E_{ij} o d_{n+1} has entry (i, s) = dc(j, s)
                            Scalar v = dc.at(j, s);
                            if (v == 0) continue;
                            Scalar w = ksign ? v : F.neg(v);
                            int row = idx.index(k - 1, n + 1, i, static_cast<int>(s));
                            dk.at(row, col) = F.add(dk.at(row, col), w);
                        }
                }
        }
        diffs[k] = dk;
    }
    return ChainComplex(F, dims, diffs);
}

/// dim Z_k of a complex (cycles in degree k).
inline int cycle_dim(const ChainComplex& c, int k) {
    return c.dim(k) - static_cast<int>(rank(c.diff(k)));
}

// ---------------------------------------------------------------------------
// Set-(co)tensoring and direct sums

inline ChainComplex direct_sum(const ChainComplex& c, const ChainComplex& d) {
    if (c.field() != d.field()) throw FieldMismatch("direct_sum: field mismatch");
    std::map<int, int> dims;
    std::map<int, Matrix> diffs;
    int lo = std::min(c.lo(), d.lo()), hi = std::max(c.hi(), d.hi());
    for (int n = lo; n <= hi; ++n)
        if (c.dim(n) + d.dim(n) > 0) dims[n] = c.dim(n) + d.dim(n);
    for (int n = lo + 1; n <= hi; ++n) diffs[n] = block_diag(c.diff(n), d.diff(n));
    return ChainComplex(c.field(), dims, diffs);
}

/// Block inclusion / projection chain maps for a binary direct sum.
inline ChainMap sum_inclusion(const ChainComplex& c, const ChainComplex& d, int which) {
    ChainComplex s = direct_sum(c, d);
    const ChainComplex& part = which == 0 ? c : d;
    std::map<int, Matrix> comps;
    for (int n = part.lo(); n <= part.hi(); ++n) {
        if (part.dim(n) == 0) continue;
        Matrix m(s.dim(n), part.dim(n), c.field());
        int off = which == 0 ? 0 : c.dim(n);
        for (int i = 0; i < part.dim(n); ++i) m.at(off + i, i) = c.field().one();
        comps[n] = m;
    }
    return ChainMap(part, s, comps);
}

inline ChainMap sum_projection(const ChainComplex& c, const ChainComplex& d, int which) {
    ChainComplex s = direct_sum(c, d);
    const ChainComplex& part = which == 0 ? c : d;
    std::map<int, Matrix> comps;
    for (int n = part.lo(); n <= part.hi(); ++n) {
        if (part.dim(n) == 0) continue;
        Matrix m(part.dim(n), s.dim(n), c.field());
        int off = which == 0 ? 0 : c.dim(n);
        for (int i = 0; i < part.dim(n); ++i) m.at(i, off + i) = c.field().one();
        comps[n] = m;
    }
    return ChainMap(s, part, comps);
}

/// k-fold direct sum, blocks indexed by set elements in input order.
inline ChainComplex set_tensor(int k, const ChainComplex& c) {
    if (k < 0) throw ShapeError("set_tensor: negative set size");
    ChainComplex r(c.field());
    for (int i = 0; i < k; ++i) r = direct_sum(r, c);
    return r;
}

// ---------------------------------------------------------------------------
// Degreewise (co)limits

struct ChainPushout {
    ChainComplex object;
    ChainMap inl;  // B -> P
    ChainMap inr;  // C -> P
};

/// Degreewise P_n = (B_n (+) C_n) / im(phi_n, -psi_n) for a span
/// B <-phi- A -psi-> C; differentials induced.
inline ChainPushout chain_pushout(const ChainMap& phi, const ChainMap& psi) {
    if (phi.source() != psi.source()) throw ShapeMismatch("chain_pushout: shared source");
    if (phi.field() != psi.field()) throw FieldMismatch("chain_pushout: field mismatch");
    const Field& F = phi.field();
    const ChainComplex &a = phi.source(), &b = phi.target(), &c = psi.target();
    int lo = std::min(b.lo(), c.lo()), hi = std::max(b.hi(), c.hi());
    std::map<int, Matrix> proj;  // (B (+) C)_n -> P_n
    std::map<int, int> dims;
    for (int n = lo; n <= hi; ++n) {
        Matrix rel = vstack(phi.component(n), -psi.component(n));
        Cokernel ck = cokernel(rel);
        proj[n] = ck.projection;
        if (ck.dim > 0) dims[n] = static_cast<int>(ck.dim);
    }
    std::map<int, Matrix> diffs;
    for (int n = lo + 1; n <= hi; ++n) {
        Matrix d_bc = block_diag(b.diff(n), c.diff(n));
        Matrix m = mat_mul(proj[n - 1], d_bc);
        // induced map on the quotient: d_P with d_P o proj = proj o d
        Matrix d_p = mat_mul(m, right_inverse(proj[n]));
        if (mat_mul(d_p, proj[n]) != m) throw Error("chain_pushout: descent failed");
        diffs[n] = d_p;
    }
    ChainComplex p(F, dims, diffs);
    std::map<int, Matrix> inl_c, inr_c;
    for (int n = lo; n <= hi; ++n) {
        if (p.dim(n) == 0) continue;
        Matrix pr = proj[n];
        if (b.dim(n) > 0) {
            Matrix mb(pr.rows(), b.dim(n), F);
            for (std::size_t i = 0; i < pr.rows(); ++i)
                for (int j = 0; j < b.dim(n); ++j) mb.at(i, j) = pr.at(i, j);
            inl_c[n] = mb;
        }
        if (c.dim(n) > 0) {
            Matrix mc(pr.rows(), c.dim(n), F);
            for (std::size_t i = 0; i < pr.rows(); ++i)
                for (int j = 0; j < c.dim(n); ++j) mc.at(i, j) = pr.at(i, b.dim(n) + j);
            inr_c[n] = mc;
        }
    }
    return {p, ChainMap(b, p, inl_c), ChainMap(c, p, inr_c)};
}

/// The universal map P -> Q out of a pushout, for a cocone (u: B -> Q, v: C -> Q)
/// with u o phi = v o psi.
inline ChainMap pushout_factor(const ChainPushout& po, const ChainMap& u,
                               const ChainMap& v) {
    const ChainComplex& p = po.object;
    const ChainComplex& q = u.target();
    std::map<int, Matrix> comps;
    for (int n = p.lo(); n <= p.hi(); ++n) {
        if (p.dim(n) == 0) continue;
        // [inl | inr] is onto P_n; factor [u | v] through it
        Matrix cover = hstack(po.inl.component(n), po.inr.component(n));
        Matrix values = hstack(u.component(n), v.component(n));
        Matrix f = mat_mul(values, right_inverse(cover));
        if (mat_mul(f, cover) != values) throw Error("pushout_factor: cocone invalid");
        if (q.dim(n) > 0) comps[n] = f;
    }
    return ChainMap(p, q, comps);
}

struct ChainPullback {
    ChainComplex object;
    ChainMap prl;  // P -> B
    ChainMap prr;  // P -> C
};

/// Degreewise P_n = ker(phi_n - psi_n : B_n (+) C_n -> D_n) for a cospan
/// B -phi-> D <-psi- C.
inline ChainPullback chain_pullback(const ChainMap& phi, const ChainMap& psi) {
    if (phi.target() != psi.target()) throw ShapeMismatch("chain_pullback: shared target");
    const Field& F = phi.field();
    const ChainComplex &b = phi.source(), &c = psi.source();
    int lo = std::min(b.lo(), c.lo()), hi = std::max(b.hi(), c.hi());
    std::map<int, Matrix> incl;  // P_n -> (B (+) C)_n
    std::map<int, int> dims;
    for (int n = lo; n <= hi; ++n) {
        Matrix rel = hstack(phi.component(n), -psi.component(n));
        Matrix k = kernel_basis(rel);
        incl[n] = k;
        if (k.cols() > 0) dims[n] = static_cast<int>(k.cols());
    }
    std::map<int, Matrix> diffs;
    for (int n = lo + 1; n <= hi; ++n) {
        Matrix d_bc = block_diag(b.diff(n), c.diff(n));
        Matrix m = mat_mul(d_bc, incl[n]);
        auto d_p = solve_right(incl[n - 1], m);
        if (!d_p) throw Error("chain_pullback: kernel not preserved");
        diffs[n] = *d_p;
    }
    ChainComplex p(F, dims, diffs);
    std::map<int, Matrix> prl_c, prr_c;
    for (int n = lo; n <= hi; ++n) {
        if (p.dim(n) == 0) continue;
        Matrix in = incl[n];
        if (b.dim(n) > 0) {
            Matrix mb(b.dim(n), in.cols(), F);
            for (int i = 0; i < b.dim(n); ++i)
                for (std::size_t j = 0; j < in.cols(); ++j) mb.at(i, j) = in.at(i, j);
            prl_c[n] = mb;
        }
        if (c.dim(n) > 0) {
            Matrix mc(c.dim(n), in.cols(), F);
            for (int i = 0; i < c.dim(n); ++i)
                for (std::size_t j = 0; j < in.cols(); ++j)
                    mc.at(i, j) = in.at(b.dim(n) + i, j);
            prr_c[n] = mc;
        }
    }
    return {p, ChainMap(p, b, prl_c), ChainMap(p, c, prr_c)};
}

/// The universal map Q -> P into a pullback, for a cone (u: Q -> B, v: Q -> C)
/// with phi o u = psi o v.
inline ChainMap pullback_factor(const ChainPullback& pb, const ChainMap& u,
                                const ChainMap& v) {
    const ChainComplex& p = pb.object;
    const ChainComplex& q = u.source();
    std::map<int, Matrix> comps;
    for (int n = std::min(q.lo(), p.lo()); n <= std::max(q.hi(), p.hi()); ++n) {
        if (q.dim(n) == 0 || p.dim(n) == 0) continue;
        Matrix incl = vstack(pb.prl.component(n), pb.prr.component(n));
        Matrix values = vstack(u.component(n), v.component(n));
        auto f = solve_right(incl, values);
        if (!f) throw Error("pullback_factor: cone invalid");
        comps[n] = *f;
    }
    return ChainMap(q, p, comps);
}

/// The map (X' (x) Y) u_{X (x) Y} (X (x) Y') -> X' (x) Y' induced by a pair
/// of chain maps via the universal property of the pushout.
inline ChainMap pushout_product_chain(const ChainMap& phi, const ChainMap& gamma) {
    if (phi.field() != gamma.field())
        throw FieldMismatch("pushout_product_chain: field mismatch");
    ChainMap left = tensor_map(phi, ChainMap::identity(gamma.source()));   // X(x)Y -> X'(x)Y
    ChainMap right = tensor_map(ChainMap::identity(phi.source()), gamma);  // X(x)Y -> X(x)Y'
    ChainPushout po = chain_pushout(left, right);
    ChainMap u = tensor_map(ChainMap::identity(phi.target()), gamma);   // X'(x)Y -> X'(x)Y'
    ChainMap v = tensor_map(phi, ChainMap::identity(gamma.target()));   // X(x)Y' -> X'(x)Y'
    return pushout_factor(po, u, v);
}

}  // namespace locsys
