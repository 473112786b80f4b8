// Regenerates the document corpus under corpus/ (one file per call site).
// The corpus doubles as the codec round-trip fixture set and as ready-made
// inputs for the CLI.

#include <fstream>
#include <iostream>

#include "locsys/codec.hpp"
#include "locsys/random_gen.hpp"

using namespace locsys;

namespace {

std::string dir;

void write(const std::string& name, const Document& d) {
    std::ofstream out(dir + "/" + name);
    out << encode(d);
    std::cout << "wrote " << name << "\n";
}

LocalSystem regular_rep(const GroupTable& g, const Field& F) {
    FinGroupoid bg = delooping(g);
    ChainComplex c = set_tensor(g.order(), sphere(0, F));
    std::vector<std::map<int, Matrix>> along(g.order());
    for (int a = 0; a < g.order(); ++a) {
        Matrix m(g.order(), g.order(), F);
        for (int b = 0; b < g.order(); ++b) m.at(g.mul[a][b], b) = F.one();
        along[a][0] = m;
    }
    return LocalSystem(bg, {c}, along);
}

}  // namespace

int main(int argc, char** argv) {
    dir = argc > 1 ? argv[1] : "corpus";
    const Field Q = Field::rationals();
    const Field F2 = Field::prime(2);
    const Field F3 = Field::prime(3);
    const Field F5 = Field::prime(5);
    Rng rng(2024);

    write("field_q.json", {Q});
    write("field_f5.json", {F5});

    write("complex_sphere2.json", {sphere(2, Q)});
    write("complex_disk1.json", {disk(1, F2)});
    write("complex_random.json", {random_complex(rng, F5, -2, 2, 3)});
    write("complex_rational.json", {random_complex(rng, Q, -1, 1, 2)});

    write("chain_map_gen_cof1.json", {gen_cof(1, F2)});
    write("chain_map_gen_acyclic_cof1.json", {gen_acyclic_cof(1, Q)});

    FinGroupoid bc2 = delooping(cyclic_group(2));
    write("groupoid_bc2.json", {bc2});
    write("groupoid_pair.json", {codiscrete(2)});
    FinGroupoid mixed = disjoint_union(codiscrete(2), delooping(cyclic_group(3)));
    write("groupoid_mixed.json", {mixed});

    Skeletization sk = skeletize(mixed);
    write("functor_retraction.json", {sk.p});
    write("functor_point_in_bc2.json", {from_point(bc2, 0)});

    LocalSystem reg = regular_rep(cyclic_group(2), F3);
    write("system_regular_bc2.json", {reg});
    LocalSystem sign(bc2, {sphere(0, F3)},
                     {{{0, Matrix::identity(1, F3)}},
                      {{0, Matrix::identity(1, F3).scaled(F3.from_int(-1))}}});
    write("system_sign_bc2.json", {sign});
    write("system_random.json", {random_system(rng, mixed, F5, 0, 1, 2)});

    write("system_map_zero_sign_to_regular.json", {SystemMap::zero(sign, reg)});
    LocalSystem v = random_system(rng, bc2, F5, 0, 1, 2);
    LocalSystem w = random_system(rng, bc2, F5, 0, 1, 2);
    write("system_map_random.json", {random_system_map(rng, v, w)});

    write("simplicial_const.json",
          {const_simplicial(random_complex(rng, F5, 0, 2, 2), 2)});

    write("loc_object_regular.json", {LocObject(bc2, reg)});
    LocObject kpt = make_loc(unit_system(terminal_groupoid(), F3));
    write("loc_object_point.json", {kpt});

    Matrix e0 = Matrix::from_ints(2, 1, F3, {1, 0});
    SystemMap up(kpt.system, pull_system(from_point(bc2, 0), reg), {{{0, e0}}});
    write("loc_morphism_point_into_regular.json",
          {LocMorphism(kpt, LocObject(bc2, reg), from_point(bc2, 0), up)});

    return 0;
}
