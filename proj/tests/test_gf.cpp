#include <utility>
#include <vector>

#include "doctest.h"
#include "toricfs/gf.hpp"

using namespace toricfs;

TEST_CASE("prime field arithmetic tables") {
    const Fq& f3 = Fq::get(3, 1);
    FqElem two(f3, 2);
    CHECK(two + two == FqElem(f3, 1));
    CHECK(two * two == FqElem(f3, 1));
    CHECK(two.inverse() == two);
    CHECK(-two == FqElem(f3, 1));
    CHECK(FqElem(f3, 1) - two == two);
    CHECK(FqElem(f3, -1) == two);  // constructor normalizes negatives

    const Fq& f2 = Fq::get(2, 1);
    CHECK((FqElem::one(f2) + FqElem::one(f2)).is_zero());
}

TEST_CASE("field descriptors are interned") {
    CHECK(&Fq::get(5, 1) == &Fq::get(5, 1));
    CHECK(&Fq::get(2, 2) != &Fq::get(2, 1));
    CHECK(Fq::get(2, 3).size() == 8);
    CHECK(Fq::get(3, 2).size() == 9);
    CHECK(Fq::get(7, 1).p() == 7);
    CHECK(Fq::get(7, 1).d() == 1);
}

TEST_CASE("canonical moduli are the lexicographically least irreducibles") {
    // GF(4): the only monic irreducible quadratic over GF(2)
    CHECK(Fq::get(2, 2).modulus() == std::vector<int64_t>{1, 1, 1});
    // GF(9): x^2 is reducible, x^2 + 1 has no root mod 3
    CHECK(Fq::get(3, 2).modulus() == std::vector<int64_t>{1, 0, 1});
    // GF(25): x^2 + 1 = (x-2)(x+2) mod 5, x^2 + 2 has no root
    CHECK(Fq::get(5, 2).modulus() == std::vector<int64_t>{2, 0, 1});
    // GF(8): x^3 + x + 1 beats x^3 + x^2 + 1 in (a_2, a_1, a_0) order
    CHECK(Fq::get(2, 3).modulus() == std::vector<int64_t>{1, 1, 0, 1});
}

TEST_CASE("inverse and power laws hold for every element of small fields") {
    std::vector<std::pair<int64_t, int>> fields = {{2, 1}, {3, 1}, {5, 1}, {7, 1},
                                                   {2, 2}, {3, 2}, {2, 3}};
    for (auto [p, d] : fields) {
        const Fq& f = Fq::get(p, d);
        for (int64_t i = 0; i < f.size(); ++i) {
            FqElem x = FqElem::by_index(f, i);
            CHECK(x.index() == i);
            CHECK(x.pow(f.size()) == x);
            if (!x.is_zero()) {
                CHECK((x * x.inverse()).is_one());
                CHECK(x.pow(f.size() - 1).is_one());
                CHECK(x.pow(-1) == x.inverse());
                CHECK(x.pow(-3) == x.inverse().pow(3));
            }
        }
    }
}

TEST_CASE("frobenius root inverts the p-th power map") {
    std::vector<std::pair<int64_t, int>> fields = {{2, 1}, {3, 1}, {2, 2}, {3, 2},
                                                   {2, 3}, {5, 2}, {7, 2}};
    for (auto [p, d] : fields) {
        const Fq& f = Fq::get(p, d);
        for (int64_t i = 0; i < f.size(); ++i) {
            FqElem x = FqElem::by_index(f, i);
            CHECK(x.frobenius_root().pow(p) == x);
            CHECK(x.pow(p).frobenius_root() == x);
        }
    }
}

TEST_CASE("embeddings are ring maps that fix the prime subfield") {
    const Fq& f2 = Fq::get(2, 1);
    const Fq& f4 = Fq::get(2, 2);
    const Fq& f16 = Fq::get(2, 4);
    CHECK(embed(FqElem::one(f2), f4).is_one());
    CHECK(embed(FqElem::zero(f2), f4).is_zero());
    for (int64_t i = 0; i < 4; ++i)
        for (int64_t j = 0; j < 4; ++j) {
            FqElem a = FqElem::by_index(f4, i), b = FqElem::by_index(f4, j);
            CHECK(embed(a + b, f16) == embed(a, f16) + embed(b, f16));
            CHECK(embed(a * b, f16) == embed(a, f16) * embed(b, f16));
        }
    // the generator's image satisfies the source modulus x^2 + x + 1
    FqElem g = embed(FqElem::by_index(f4, 2), f16);
    CHECK((g * g + g + FqElem::one(f16)).is_zero());
    // embedding into the same field is the identity
    for (int64_t i = 0; i < 4; ++i)
        CHECK(embed(FqElem::by_index(f4, i), f4) == FqElem::by_index(f4, i));
    // no embedding when the source degree does not divide the target degree
    CHECK_THROWS_AS(embed(FqElem::by_index(f4, 2), Fq::get(2, 3)), ToricError);
}

TEST_CASE("coefficient constructors normalize modulo p") {
    const Fq& f3 = Fq::get(3, 1);
    CHECK(FqElem::from_coeffs(f3, {-1}) == FqElem(f3, 2));
    const Fq& f9 = Fq::get(3, 2);
    CHECK(FqElem::from_coeffs(f9, {-1, 4}) == FqElem::from_coeffs(f9, {2, 1}));
    CHECK(FqElem::from_coeffs(f9, {1}) == FqElem::one(f9));
    CHECK(FqElem::from_coeffs(f9, {0, 0}).is_zero());
    CHECK(FqElem(f9, 2).as_int() == 2);
    CHECK_THROWS(FqElem::by_index(f9, 3).as_int());  // the generator is not constant
    CHECK(FqElem::by_index(f9, 5).coeffs() == std::vector<int64_t>{2, 1});
}

TEST_CASE("field construction guards") {
    CHECK_THROWS_AS(Fq::get(4, 1), ToricError);   // not prime
    CHECK_THROWS_AS(Fq::get(1, 1), ToricError);   // not prime
    CHECK_THROWS_AS(Fq::get(2, 0), ToricError);   // degree out of range
    CHECK_THROWS_AS(Fq::get(2, 9), ToricError);   // degree out of range
    CHECK_THROWS_AS(Fq::get(65537, 3), ToricError);  // p^d above the size cap
    CHECK_THROWS(FqElem::one(Fq::get(2, 1)) / FqElem::zero(Fq::get(2, 1)));
    CHECK_THROWS(FqElem::by_index(Fq::get(2, 1), 2));
}
