#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "locsys/matrix.hpp"

using namespace locsys;

namespace {

Matrix random_matrix(std::mt19937_64& rng, const Field& F, std::size_t r,
                     std::size_t c) {
    std::uniform_int_distribution<long> d(-4, 4);
    Matrix m(r, c, F);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m.at(i, j) = F.from_int(d(rng));
    return m;
}

}  // namespace

TEST_CASE("field arithmetic") {
    Field f2 = Field::prime(2);
    Field q = Field::rationals();
    CHECK(f2.add(f2.one(), f2.one()) == 0);
    CHECK(f2.from_int(-3) == f2.one());
    CHECK(q.mul(q.from_string("1/2"), q.from_string("2/3")) == q.from_string("1/3"));
    CHECK(q.from_string("4/6") == q.from_string("2/3"));
    Field f5 = Field::prime(5);
    CHECK(f5.inv(f5.from_int(3)) == f5.from_int(2));
    CHECK(f5.from_string("1/2") == f5.from_int(3));  // residue 2 inverted
    CHECK_THROWS_AS(Field::prime(4), Error);
    CHECK_THROWS_AS(q.from_string("x"), ParseError);
}

TEST_CASE("mat_mul basics") {
    Field f2 = Field::prime(2);
    Field q = Field::rationals();
    std::mt19937_64 rng(1);
    Matrix m = random_matrix(rng, q, 3, 3);
    CHECK(mat_mul(Matrix::identity(3, q), m) == m);

    Matrix row = Matrix::from_ints(1, 2, f2, {1, 1});
    Matrix col = Matrix::from_ints(2, 1, f2, {1, 1});
    CHECK(mat_mul(row, col) == Matrix::zeros(1, 1, f2));

    Matrix a(1, 1, q), b(1, 1, q);
    a.at(0, 0) = q.from_string("1/2");
    b.at(0, 0) = q.from_string("2/3");
    CHECK(mat_mul(a, b).at(0, 0) == q.from_string("1/3"));

    CHECK_THROWS_AS(mat_mul(row, row), DimensionMismatch);
    Matrix over_q = Matrix::zeros(2, 1, q);
    CHECK_THROWS_AS(mat_mul(row, over_q), FieldMismatch);
}

TEST_CASE("rank") {
    Field q = Field::rationals();
    CHECK(rank(Matrix::zeros(2, 2, q)) == 0);
    CHECK(rank(Matrix::identity(4, q)) == 4);
    // over F_3 the determinant 1*1 - 2*2 = -3 vanishes, so the rank drops to 1
    Field f3 = Field::prime(3);
    Matrix m = Matrix::from_ints(2, 2, f3, {1, 2, 2, 1});
    CHECK(rank(m) == 1);
    CHECK(rank(Matrix::from_ints(2, 2, q, {1, 2, 2, 1})) == 2);
}

TEST_CASE("kernel_basis") {
    Field f2 = Field::prime(2);
    CHECK(kernel_basis(Matrix::identity(2, f2)).cols() == 0);

    Matrix row = Matrix::from_ints(1, 2, f2, {1, 1});
    Matrix k = kernel_basis(row);
    REQUIRE(k.cols() == 1);
    CHECK(k.at(0, 0) == 1);
    CHECK(k.at(1, 0) == 1);

    Matrix z = Matrix::zeros(1, 3, f2);
    CHECK(kernel_basis(z).cols() == 3);
    CHECK(rank(kernel_basis(z)) == 3);
}

TEST_CASE("solve_right") {
    Field f2 = Field::prime(2);
    Matrix b = Matrix::from_ints(3, 1, f2, {1, 0, 1});
    auto x = solve_right(Matrix::identity(3, f2), b);
    REQUIRE(x);
    CHECK(*x == b);

    // echelon-deterministic particular solution
    Matrix a = Matrix::from_ints(1, 2, f2, {1, 1});
    auto y = solve_right(a, Matrix::from_ints(1, 1, f2, {1}));
    REQUIRE(y);
    CHECK(y->at(0, 0) == 1);
    CHECK(y->at(1, 0) == 0);

    CHECK_FALSE(solve_right(Matrix::zeros(1, 2, f2), Matrix::from_ints(1, 1, f2, {1})));
    CHECK_THROWS_AS(solve_right(Matrix::zeros(2, 2, f2), b), DimensionMismatch);
}

TEST_CASE("cokernel") {
    Field f2 = Field::prime(2);
    auto [p_id, d_id] = cokernel(Matrix::identity(3, f2));
    CHECK(d_id == 0);

    auto [p_z, d_z] = cokernel(Matrix::zeros(2, 3, f2));
    CHECK(d_z == 2);
    CHECK(p_z == Matrix::identity(2, f2));

    Matrix col = Matrix::from_ints(2, 1, f2, {1, 1});
    auto [p, d] = cokernel(col);
    CHECK(d == 1);
    CHECK(mat_mul(p, col).is_zero());
}

TEST_CASE("elimination invariants on random matrices") {
    std::mt19937_64 rng(42);
    for (const Field& F : {Field::prime(2), Field::prime(5), Field::rationals()}) {
        for (int trial = 0; trial < 20; ++trial) {
            std::uniform_int_distribution<std::size_t> dim(0, 5);
            Matrix m = random_matrix(rng, F, dim(rng), dim(rng));

            std::size_t r = rank(m);
            Matrix k = kernel_basis(m);
            CHECK(k.cols() == m.cols() - r);
            CHECK(mat_mul(m, k).is_zero());
            CHECK(rank(k) == k.cols());

            auto [proj, cdim] = cokernel(m);
            CHECK(cdim + r == m.rows());
            CHECK(mat_mul(proj, m).is_zero());
            CHECK(rank(proj) == proj.rows());

            // solvability matches the rank criterion
            Matrix b = random_matrix(rng, F, m.rows(), 1);
            bool solvable = solve_right(m, b).has_value();
            CHECK(solvable == (rank(hstack(m, b)) == r));
            if (solvable) {
                auto x = solve_right(m, b);
                CHECK(mat_mul(m, *x) == b);
            }
        }
    }
}
