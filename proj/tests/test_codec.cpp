#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "locsys/codec.hpp"
#include "locsys/random_gen.hpp"

using namespace locsys;

namespace {
const Field F5 = Field::prime(5);
const Field Q = Field::rationals();
}  // namespace

TEST_CASE("round trips") {
    std::mt19937_64 rng(211);

    CHECK(decode(encode({Field::prime(7)})) == Document{Field::prime(7)});
    CHECK(decode(encode({Q})) == Document{Q});

    Document sph{sphere(2, F5)};
    CHECK(decode(encode(sph)) == sph);
    Document rc{random_complex(rng, Q, -2, 2, 3)};
    CHECK(decode(encode(rc)) == rc);

    Document gc{gen_cof(1, F5)};
    CHECK(decode(encode(gc)) == gc);

    FinGroupoid g = random_groupoid(rng, 4);
    CHECK(decode(encode({g})) == Document{g});

    Skeletization sk = skeletize(g);
    CHECK(decode(encode({sk.p})) == Document{sk.p});

    LocalSystem v = random_system(rng, g, F5, 0, 1, 2);
    CHECK(decode(encode({v})) == Document{v});

    LocalSystem w = random_system(rng, g, F5, 0, 1, 2);
    SystemMap phi = random_system_map(rng, v, w);
    CHECK(decode(encode({phi})) == Document{phi});

    TruncSimplicialComplex sc = const_simplicial(random_complex(rng, F5, 0, 2, 2), 2);
    CHECK(decode(encode({sc})) == Document{sc});

    LocObject a(g, v);
    CHECK(decode(encode({a})) == Document{a});

    GroupoidFunctor f = random_functor(rng, 3);
    LocalSystem src = random_system(rng, f.source(), F5, 0, 1, 1);
    LocalSystem tgt = random_system(rng, f.target(), F5, 0, 1, 1);
    SystemMap comp = random_system_map(rng, src, pull_system(f, tgt));
    LocMorphism m(LocObject(f.source(), src), LocObject(f.target(), tgt), f, comp);
    CHECK(decode(encode({m})) == Document{m});
}

TEST_CASE("errors") {
    CHECK_THROWS_AS(decode("{"), ParseError);
    CHECK_THROWS_AS(decode("{\"kind\": \"complex\", \"payload\": {}}"),
                    VersionMismatch);
    CHECK_THROWS_AS(
        decode("{\"format_version\": \"locsys/0\", \"kind\": \"complex\", "
               "\"payload\": {}}"),
        VersionMismatch);
    // malformed differential shape
    std::string bad = R"({
      "format_version": "locsys/1",
      "kind": "complex",
      "payload": {
        "field": "Fp:5",
        "dims": {"0": 1, "1": 1},
        "differentials": {"1": {"rows": 2, "cols": 1, "entries": [[1],[0]]}}
      }
    })";
    CHECK_THROWS_AS(decode(bad), ParseError);
    // d o d != 0 is rejected on decode
    std::string notc = R"({
      "format_version": "locsys/1",
      "kind": "complex",
      "payload": {
        "field": "Fp:5",
        "dims": {"-1": 1, "0": 1, "1": 1},
        "differentials": {
          "0": {"rows": 1, "cols": 1, "entries": [[1]]},
          "1": {"rows": 1, "cols": 1, "entries": [[1]]}
        }
      }
    })";
    CHECK_THROWS_AS(decode(notc), ParseError);
    CHECK_THROWS_AS(decode("{\"format_version\": \"locsys/1\", \"kind\": \"widget\", "
                           "\"payload\": {}}"),
                    ParseError);
}

TEST_CASE("canonical encoding is stable") {
    // encode o decode o encode = encode (byte-exact)
    std::mt19937_64 rng(223);
    LocalSystem v = random_system(rng, random_groupoid(rng, 3), F5, 0, 1, 2);
    std::string once = encode({v});
    std::string twice = encode(decode(once));
    CHECK(once == twice);
}
