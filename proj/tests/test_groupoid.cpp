#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "locsys/groupoid.hpp"

using namespace locsys;

TEST_CASE("group tables") {
    CHECK_NOTHROW(cyclic_group(4).validate());
    CHECK_NOTHROW(symmetric_group(3).validate());
    CHECK(symmetric_group(3).order() == 6);
    GroupTable bad{{{0, 1}, {1, 1}}};
    CHECK_THROWS_AS(bad.validate(), NotAGroup);
    // C2 -> C4 by the element of order two, C3 -> S3 by a 3-cycle
    CHECK_NOTHROW(delooping_functor(cyclic_group(2), cyclic_group(4),
                                    cyclic_hom(2, cyclic_group(4), 2)));
    GroupTable s3 = symmetric_group(3);
    CHECK_NOTHROW(delooping_functor(cyclic_group(3), s3, cyclic_hom(3, s3, 3)));
}

TEST_CASE("validate_groupoid and delooping") {
    CHECK_NOTHROW(validate_groupoid(delooping(cyclic_group(2))));
    FinGroupoid bs3 = delooping(symmetric_group(3));
    CHECK_NOTHROW(validate_groupoid(bs3));
    CHECK(bs3.num_objects() == 1);
    CHECK(bs3.num_morphisms() == 6);
    CHECK(delooping(trivial_group()).num_morphisms() == 1);

    // dropping an inverse breaks the laws
    FinGroupoid broken({"*"}, {{"e", 0, 0}, {"g", 0, 0}}, {0}, {0, 0},
                       {{0, 1}, {1, 0}});
    CHECK_THROWS_AS(validate_groupoid(broken), LawViolation);

    CHECK_NOTHROW(validate_functor(GroupoidFunctor::identity(bs3)));
}

TEST_CASE("discrete, products, unions") {
    CHECK(discrete(3).num_morphisms() == 3);
    FinGroupoid p = product(terminal_groupoid(), delooping(cyclic_group(2)));
    CHECK(p.num_objects() == 1);
    CHECK(p.num_morphisms() == 2);
    validate_groupoid(p);

    FinGroupoid p6 = product(delooping(cyclic_group(2)), delooping(cyclic_group(3)));
    CHECK(p6.num_objects() == 1);
    CHECK(p6.num_morphisms() == 6);
    validate_groupoid(p6);
    CHECK(aut(p6, 0).table.order() == 6);

    FinGroupoid u = disjoint_union(codiscrete(2), discrete(1));
    validate_groupoid(u);
    CHECK(pi0(u).size() == pi0(codiscrete(2)).size() + pi0(discrete(1)).size());
}

TEST_CASE("pi0 and aut") {
    CHECK(pi0(codiscrete(2)).size() == 1);
    CHECK(pi0(discrete(3)).size() == 3);
    AutGroup a = aut(delooping(symmetric_group(3)), 0);
    CHECK(a.table.order() == 6);
    CHECK_NOTHROW(a.table.validate());
    // composition in aut matches S3
    CHECK(a.table.mul == symmetric_group(3).mul);
}

TEST_CASE("classify_functor") {
    FinGroupoid pair = codiscrete(2);
    auto col = classify_functor(to_point(pair));
    CHECK(col.we);
    CHECK(col.fib);
    CHECK_FALSE(col.cof);

    FinGroupoid bc2 = delooping(cyclic_group(2));
    auto pt_in = classify_functor(from_point(bc2, 0));
    CHECK_FALSE(pt_in.we);
    CHECK_FALSE(pt_in.fib);  // the loop g has no lift
    CHECK(pt_in.cof);

    auto incl = classify_functor(coprojection(bc2, terminal_groupoid(), 0));
    CHECK_FALSE(incl.we);  // not essentially surjective
    CHECK(incl.fib);
    CHECK(incl.cof);

    auto idf = classify_functor(GroupoidFunctor::identity(pair));
    CHECK((idf.we && idf.fib && idf.cof));
}

TEST_CASE("skeletize") {
    // pair groupoid retracts onto a point
    Skeletization s = skeletize(codiscrete(2));
    CHECK(s.skeleton.num_objects() == 1);
    CHECK(s.skeleton.num_morphisms() == 1);
    CHECK(s.p.on_object(1) == 0);
    CHECK(s.gamma[1] == codiscrete(2).hom(0, 1).front());
    CHECK(compose(s.p, s.iota) == GroupoidFunctor::identity(s.skeleton));
    CHECK(classify_functor(s.iota).we);

    // a delooping is already skeletal; gamma is the identity
    FinGroupoid bc2 = delooping(cyclic_group(2));
    Skeletization s2 = skeletize(bc2);
    CHECK(s2.skeleton.num_morphisms() == 2);
    CHECK(s2.gamma[0] == bc2.identity(0));
    CHECK(compose(s2.p, s2.iota) == GroupoidFunctor::identity(s2.skeleton));

    // two pair-groupoid components give a discrete(2) skeleton
    Skeletization s3 = skeletize(disjoint_union(codiscrete(2), codiscrete(3)));
    CHECK(s3.skeleton.num_objects() == 2);
    CHECK(s3.skeleton.num_morphisms() == 2);

    // gamma naturality: iota(p(m)) conjugated by gamma equals m
    FinGroupoid x = disjoint_union(codiscrete(2), delooping(cyclic_group(3)));
    Skeletization s4 = skeletize(x);
    validate_functor(s4.iota);
    validate_functor(s4.p);
    for (int m = 0; m < x.num_morphisms(); ++m) {
        int lhs = x.compose(s4.gamma[x.tgt(m)], s4.iota.on_morph(s4.p.on_morph(m)));
        int rhs = x.compose(m, s4.gamma[x.src(m)]);
        CHECK(lhs == rhs);
    }
}

TEST_CASE("functor_groupoid") {
    FinGroupoid z = delooping(cyclic_group(2));
    auto e = functor_groupoid(empty_groupoid(), z);
    CHECK(e.object.num_objects() == 1);
    CHECK(e.object.num_morphisms() == 1);

    auto one = functor_groupoid(discrete(1), z);
    CHECK(one.object.num_morphisms() == z.num_morphisms());
    validate_functor(one.evals[0]);

    auto two = functor_groupoid(discrete(2), z);
    CHECK(two.object.num_objects() == 1);
    CHECK(two.object.num_morphisms() == 4);
    validate_groupoid(two.object);

    CHECK_THROWS_AS(functor_groupoid(codiscrete(2), z), NotDiscrete);
}

TEST_CASE("set_pushout_product") {
    // singleton inclusions: empty fiber exactly over (b, d)
    SetMap f{1, 2, {0}}, g{1, 2, {0}};
    auto pp = set_pushout_product(f, g);
    CHECK(pp.map.domain == 3);
    CHECK(pp.map.codomain == 4);
    CHECK(pp.fiber_sizes == std::vector<int>{1, 1, 1, 0});

    // identity on X: the pushout-product is a bijection onto X x Y'
    SetMap idx{3, 3, {0, 1, 2}};
    SetMap any{2, 3, {1, 1}};
    auto pid = set_pushout_product(idx, any);
    CHECK(pid.map.domain == pid.map.codomain);
    for (int v : pid.fiber_sizes) CHECK(v == 1);

    // f with empty domain: f xhat g = id_{X'} x g
    SetMap empty{0, 2, {}};
    auto pe = set_pushout_product(empty, any);
    CHECK(pe.map.domain == 2 * 2);  // X' x Y
    for (int c = 0; c < pe.map.domain; ++c)
        CHECK(pe.map.map[c] == (c / 2) * 3 + any.map[c % 2]);
}

TEST_CASE("set_pushout_product fiber formula on random maps") {
    std::mt19937_64 rng(77);
    std::uniform_int_distribution<int> size(0, 6);
    for (int trial = 0; trial < 100; ++trial) {
        SetMap f{size(rng), size(rng) + 1, {}}, g{size(rng), size(rng) + 1, {}};
        std::uniform_int_distribution<int> fv(0, f.codomain - 1), gv(0, g.codomain - 1);
        for (int i = 0; i < f.domain; ++i) f.map.push_back(fv(rng));
        for (int i = 0; i < g.domain; ++i) g.map.push_back(gv(rng));
        auto pp = set_pushout_product(f, g);
        std::vector<bool> imf(f.codomain, false), img(g.codomain, false);
        for (int v : f.map) imf[v] = true;
        for (int v : g.map) img[v] = true;
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
                CHECK(observed == expected);
            }
    }
}

TEST_CASE("groupoid_pullback") {
    FinGroupoid bc2 = delooping(cyclic_group(2));
    auto pb_id = groupoid_pullback(GroupoidFunctor::identity(bc2),
                                   GroupoidFunctor::identity(bc2));
    // pullback along identities: the diagonal, isomorphic to bc2
    CHECK(pb_id.object.num_objects() == 1);
    CHECK(pb_id.object.num_morphisms() == 2);
    validate_groupoid(pb_id.object);

    // pt -> BG <- pt has trivial pullback
    auto pb = groupoid_pullback(from_point(bc2, 0), from_point(bc2, 0));
    CHECK(pb.object.num_objects() == 1);
    CHECK(pb.object.num_morphisms() == 1);

    // disjoint images pull back to nothing
    FinGroupoid two = discrete(2);
    GroupoidFunctor a(terminal_groupoid(), two, {0}, {two.identity(0)});
    GroupoidFunctor b(terminal_groupoid(), two, {1}, {two.identity(1)});
    CHECK(groupoid_pullback(a, b).object.num_objects() == 0);
}

TEST_CASE("product universal property on small instances") {
    FinGroupoid x = delooping(cyclic_group(2)), y = discrete(2);
    GroupoidFunctor prx = projection(x, y, 0), pry = projection(x, y, 1);
    validate_functor(prx);
    validate_functor(pry);
    // cones out of pt are exactly pairs of cones to the factors
    auto cones_x = enumerate_functors(terminal_groupoid(), x, 1000);
    auto cones_y = enumerate_functors(terminal_groupoid(), y, 1000);
    auto into_p = enumerate_functors(terminal_groupoid(), prx.source(), 1000);
    CHECK(into_p.size() == cones_x.size() * cones_y.size());
    for (auto& h : into_p)
        for (auto& h2 : into_p)
            if (compose(prx, h) == compose(prx, h2) &&
                compose(pry, h) == compose(pry, h2))
                CHECK(h == h2);
}

TEST_CASE("enumerate_functors") {
    FinGroupoid pt = terminal_groupoid();
    CHECK(enumerate_functors(pt, pt, 100).size() == 1);
    CHECK(enumerate_functors(empty_groupoid(), delooping(cyclic_group(2)), 100).size() ==
          1);
    // functors BC2 -> BC2 are the two group endomorphisms of C2
    FinGroupoid bc2 = delooping(cyclic_group(2));
    CHECK(enumerate_functors(bc2, bc2, 100).size() == 2);
    // functors BC3 -> BC2: only the trivial one
    CHECK(enumerate_functors(delooping(cyclic_group(3)), bc2, 100).size() == 1);
    CHECK_THROWS_AS(enumerate_functors(codiscrete(3), codiscrete(3), 2), BudgetExceeded);
}
