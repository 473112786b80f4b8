#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "locsys/chain.hpp"
#include "locsys/random_gen.hpp"

using namespace locsys;

namespace {
const Field Q = Field::rationals();
const Field F2 = Field::prime(2);
const Field F5 = Field::prime(5);
}  // namespace

TEST_CASE("validate_complex") {
    CHECK_NOTHROW(validate_complex(disk(1, Q)));
    CHECK_NOTHROW(validate_complex(ChainComplex(Q)));
    ChainComplex bad(Q, {{1, 1}, {0, 1}, {-1, 1}},
                     {{1, Matrix::identity(1, Q)}, {0, Matrix::identity(1, Q)}});
    CHECK_THROWS_AS(validate_complex(bad), NotAComplex);
    try {
        validate_complex(bad);
    } catch (const NotAComplex& e) {
        CHECK(e.degree == 1);
    }
    CHECK_THROWS_AS(ChainComplex(Q, {{0, 2}}, {{0, Matrix::identity(1, Q)}}), ShapeError);
}

TEST_CASE("generators") {
    CHECK(sphere(0, Q) == tensor_unit(Q));
    CHECK(homology(disk(3, Q)).empty());
    CHECK(classify_chain_map(gen_cof(1, Q)).cof);
    CHECK(homology(sphere(2, F2)) == BettiTable{{2, 1}});
    ChainComplex two{Q, {{1, 1}, {0, 1}}, {}};
    CHECK(homology(two) == BettiTable{{1, 1}, {0, 1}});
}

TEST_CASE("induced homology maps") {
    ChainMap id = ChainMap::identity(disk(1, Q));
    for (auto& [n, m] : induced_homology_map(id)) CHECK(m.rows() == m.cols());

    auto h = induced_homology_map(gen_cof(1, F2));
    CHECK(h[0].rows() == 0);  // H_0(D^1) = 0
    CHECK(h[0].cols() == 1);  // H_0(S^0) = K

    ChainMap z = ChainMap::zero(sphere(0, Q), sphere(0, Q));
    auto hz = induced_homology_map(z);
    CHECK(hz[0] == Matrix::zeros(1, 1, Q));
}

TEST_CASE("classify_chain_map") {
    auto i1 = classify_chain_map(gen_cof(1, Q));
    CHECK(i1.cof);
    CHECK_FALSE(i1.fib);
    CHECK_FALSE(i1.we);

    auto j1 = classify_chain_map(gen_acyclic_cof(1, Q));
    CHECK(j1.cof);
    CHECK_FALSE(j1.fib);
    CHECK(j1.we);

    auto idf = classify_chain_map(ChainMap::identity(disk(2, F2)));
    CHECK((idf.cof && idf.fib && idf.we));
}

TEST_CASE("tensor") {
    CHECK(tensor(sphere(2, Q), sphere(3, Q)) == sphere(5, Q));
    ChainComplex v = disk(1, F5);
    CHECK(tensor(sphere(0, F5), v) == v);
    CHECK(tensor(v, sphere(0, F5)) == v);

    ChainComplex dd = tensor(disk(1, Q), disk(1, Q));
    validate_complex(dd);
    CHECK(dd.dims_map() == std::map<int, int>{{2, 1}, {1, 2}, {0, 1}});
    CHECK(homology(dd).empty());

    CHECK_THROWS_AS(tensor(sphere(0, Q), sphere(0, F2)), FieldMismatch);
}

TEST_CASE("hom_complex") {
    ChainComplex w = disk(2, Q);
    CHECK(hom_complex(sphere(0, Q), w) == w);
    CHECK(hom_complex(sphere(1, Q), sphere(3, Q)) == sphere(2, Q));

    // Z_0([S^0, D^1]) counts the chain maps S^0 -> D^1
    ChainComplex h = hom_complex(sphere(0, Q), disk(1, Q));
    validate_complex(h);
    CHECK(cycle_dim(h, 0) == 1);
}

TEST_CASE("set tensor and direct sums") {
    CHECK(set_tensor(0, sphere(0, Q)).empty());
    CHECK(set_tensor(3, sphere(0, Q)).dims_map() == std::map<int, int>{{0, 3}});

    std::mt19937_64 rng(7);
    ChainComplex a = random_complex(rng, F5, -1, 2, 3);
    ChainComplex b = random_complex(rng, F5, -1, 2, 3);
    BettiTable ha = homology(a), hb = homology(b), hs = homology(direct_sum(a, b));
    for (auto& [n, v] : ha) hb[n] += v;
    for (auto it = hb.begin(); it != hb.end();)
        it = it->second == 0 ? hb.erase(it) : std::next(it);
    CHECK(hs == hb);
}

TEST_CASE("chain pushout and pullback") {
    // pushout along the identity is the other leg
    ChainMap f = gen_cof(1, Q);
    ChainPushout po_id = chain_pushout(ChainMap::identity(f.source()), f);
    CHECK(po_id.object.dims_map() == f.target().dims_map());
    CHECK(homology(po_id.object) == homology(f.target()));

    // gluing two disks along the boundary sphere gives H_1 = K
    ChainPushout po = chain_pushout(gen_cof(1, Q), gen_cof(1, Q));
    validate_complex(po.object);
    CHECK(po.object.dims_map() == std::map<int, int>{{1, 2}, {0, 1}});
    CHECK(homology(po.object) == BettiTable{{1, 1}});
    validate_chain_map(po.inl);
    validate_chain_map(po.inr);

    ChainComplex w = disk(1, Q);
    ChainMap from_zero = ChainMap::zero(ChainComplex(Q), w);
    ChainPullback pb = chain_pullback(from_zero, from_zero);
    CHECK(pb.object.empty());

    ChainPullback pb_id = chain_pullback(ChainMap::identity(w), ChainMap::identity(w));
    CHECK(pb_id.object.dims_map() == w.dims_map());
    CHECK(homology(pb_id.object) == homology(w));
}

TEST_CASE("pushout_product_chain on generators") {
    ChainMap pp = pushout_product_chain(gen_cof(1, Q), gen_cof(1, Q));
    validate_chain_map(pp);
    CHECK(pp.source().dims_map() == std::map<int, int>{{1, 2}, {0, 1}});
    CHECK(pp.target() == tensor(disk(1, Q), disk(1, Q)));
    auto fl = classify_chain_map(pp);
    CHECK(fl.cof);
    CHECK_FALSE(fl.fib);
    CHECK_FALSE(fl.we);
    // cokernel of the pushout-product is a 2-sphere
    std::map<int, int> cdims;
    for (int n = pp.target().lo(); n <= pp.target().hi(); ++n) {
        int d = pp.target().dim(n) - static_cast<int>(rank(pp.component(n)));
        if (d != 0) cdims[n] = d;
    }
    CHECK(cdims == std::map<int, int>{{2, 1}});

    ChainMap acy = pushout_product_chain(gen_cof(1, Q), gen_acyclic_cof(1, Q));
    auto fl2 = classify_chain_map(acy);
    CHECK(fl2.cof);
    CHECK(fl2.we);

    // pushout-product with an identity is an isomorphism onto the codomain
    std::mt19937_64 rng(3);
    ChainComplex y = random_complex(rng, F5, 0, 1, 2);
    ChainMap ppid = pushout_product_chain(gen_cof(1, F5), ChainMap::identity(y));
    auto fl3 = classify_chain_map(ppid);
    CHECK((fl3.cof && fl3.fib && fl3.we));
    CHECK(ppid.source().total_dim() == ppid.target().total_dim());
}

TEST_CASE("Kunneth over a field") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 10; ++trial) {
        ChainComplex v = random_complex(rng, F5, -1, 1, 2);
        ChainComplex w = random_complex(rng, F5, -1, 1, 2);
        ChainComplex t = tensor(v, w);
        validate_complex(t);
        BettiTable hv = homology(v), hw = homology(w), ht = homology(t);
        BettiTable expect;
        for (auto& [m, dm] : hv)
            for (auto& [n, dn] : hw) expect[m + n] += dm * dn;
        for (auto it = expect.begin(); it != expect.end();)
            it = it->second == 0 ? expect.erase(it) : std::next(it);
        CHECK(ht == expect);
    }
}

TEST_CASE("Z_0 of the mapping complex counts chain maps") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 10; ++trial) {
        ChainComplex v = random_complex(rng, F5, -2, 2, 3);
        ChainComplex w = random_complex(rng, F5, -2, 2, 3);
        CHECK(cycle_dim(hom_complex(v, w), 0) == chain_map_space_dim(v, w));
    }
}

TEST_CASE("two-out-of-three for quasi-isomorphisms") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 8; ++trial) {
        ChainComplex v = random_complex(rng, F5, -1, 1, 2);
        ChainMap q = random_quasi_iso(rng, v);
        ChainMap r = random_quasi_iso(rng, q.target());
        CHECK(is_quasi_iso(q));
        CHECK(is_quasi_iso(r));
        CHECK(is_quasi_iso(compose(r, q)));
    }
}

TEST_CASE("pushout-product axiom on generators") {
    for (const Field& F : {Field::prime(2), Field::prime(3), Field::rationals()})
        for (int m = 0; m <= 2; ++m)
            for (int n = 0; n <= 2; ++n) {
                auto c = classify_chain_map(
                    pushout_product_chain(gen_cof(m, F), gen_cof(n, F)));
                CHECK(c.cof);
                CHECK_FALSE(c.we);
                auto a = classify_chain_map(
                    pushout_product_chain(gen_cof(m, F), gen_acyclic_cof(n, F)));
                CHECK(a.cof);
                CHECK(a.we);
            }
}
