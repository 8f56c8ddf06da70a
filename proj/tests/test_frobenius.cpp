#include <random>

#include "doctest.h"
#include "toricfs/frobenius.hpp"

using namespace toricfs;

namespace {

LPoly rand_laurent(std::mt19937_64& rng, const Fq& f, int nvars, int terms, int64_t espan) {
    LPoly out(f, nvars);
    std::uniform_int_distribution<int64_t> ed(-espan, espan);
    std::uniform_int_distribution<int64_t> cd(0, f.size() - 1);
    for (int t = 0; t < terms; ++t) {
        IntVec e(nvars);
        for (auto& x : e) x = ed(rng);
        out.add_term(e, FqElem::by_index(f, cd(rng)));
    }
    return out;
}

MonoEntry mono(const Fq& f, int64_t c, IntVec e) { return MonoEntry{FqElem(f, c), std::move(e)}; }

}  // namespace

TEST_CASE("trace on pinned monomials") {
    const Fq& f2 = Fq::get(2, 1);
    auto x = [&](const Fq& f, int64_t e) { return LPoly::monomial(f, {e}, FqElem::one(f)); };
    CHECK(trace(x(f2, 1)) == LPoly::one(f2, 1));
    CHECK(trace(x(f2, 3)) == x(f2, 1));
    CHECK(trace(x(f2, 2)).is_zero());
    CHECK(trace(LPoly::one(f2, 1)).is_zero());
    CHECK(trace(x(f2, -1)) == x(f2, -1));  // -1 - 1 = -2 halves to -1

    const Fq& f3 = Fq::get(3, 1);
    CHECK(trace(x(f3, 2)) == LPoly::one(f3, 1));
    CHECK(trace(x(f3, 5)) == x(f3, 1));
    CHECK(trace(x(f3, -4)) == x(f3, -2));  // -4 - 2 = -6, exact division by 3
    CHECK(trace(x(f3, -1)) == x(f3, -1));  // -1 is 2 mod 3
    CHECK(trace(x(f3, -3)).is_zero());
    CHECK(trace(x(f3, 1)).is_zero());
    CHECK(trace(LPoly::monomial(f3, {2}, FqElem(f3, 2))) ==
          LPoly::constant(f3, 1, FqElem(f3, 2)));

    const Fq& f4 = Fq::get(2, 2);
    FqElem w = FqElem::from_coeffs(f4, {0, 1});
    CHECK(trace(LPoly::monomial(f4, {1}, w)) == LPoly::constant(f4, 1, w * w));

    // multivariate: all coordinates must match the residue simultaneously
    CHECK(trace(LPoly::monomial(f2, {1, 2}, FqElem::one(f2))).is_zero());
    CHECK(trace(LPoly::monomial(f2, {1, 1}, FqElem::one(f2))) == LPoly::one(f2, 2));
    CHECK(trace(LPoly::monomial(f2, {3, 1}, FqElem::one(f2))) ==
          LPoly::monomial(f2, {1, 0}, FqElem::one(f2)));
}

TEST_CASE("trace is additive and p^-1-semilinear") {
    std::mt19937_64 rng(2024);
    for (int64_t p : {2, 3, 5}) {
        const Fq& f = Fq::get(p, 1);
        for (int trial = 0; trial < 160; ++trial) {
            int nvars = 1 + static_cast<int>(rng() % 2);
            LPoly a = rand_laurent(rng, f, nvars, 4, 2 * p);
            LPoly b = rand_laurent(rng, f, nvars, 4, 2 * p);
            CHECK(trace(a + b) == trace(a) + trace(b));
            CHECK(trace(a.pow(p) * b) == a * trace(b));
        }
        // the distinguished monomial has trace one
        for (int nvars : {1, 2, 3}) {
            IntVec e(nvars, p - 1);
            CHECK(trace(LPoly::monomial(f, e, FqElem::one(f))) == LPoly::one(f, nvars));
        }
    }
}

TEST_CASE("standard splitting") {
    const Fq& f3 = Fq::get(3, 1);
    auto m = [&](IntVec e, int64_t c) { return LPoly::monomial(f3, e, FqElem(f3, c)); };
    CHECK(phi_standard(m({3}, 2)) == m({1}, 2));
    CHECK(phi_standard(m({6}, 1)) == m({2}, 1));
    CHECK(phi_standard(m({-3}, 1)) == m({-1}, 1));
    CHECK(phi_standard(m({2}, 1)).is_zero());
    CHECK(phi_standard(m({3, 1}, 1)).is_zero());

    std::mt19937_64 rng(99);
    for (int64_t p : {2, 3, 5}) {
        const Fq& f = Fq::get(p, 1);
        for (int trial = 0; trial < 100; ++trial) {
            int nvars = 1 + static_cast<int>(rng() % 2);
            LPoly a = rand_laurent(rng, f, nvars, 3, p);
            LPoly b = rand_laurent(rng, f, nvars, 3, p);
            CHECK(phi_standard(a.pow(p)) == a);
            CHECK(phi_standard(a.pow(p) * b) == a * phi_standard(b));
            // multiplying by the all-ones monomial swaps phi for the trace
            IntVec ones(nvars, 1);
            LPoly xall = LPoly::monomial(f, ones, FqElem::one(f));
            CHECK(phi_standard(xall * b) == xall * trace(b));
        }
    }
}

TEST_CASE("fiber-monomial splitting") {
    const Fq& f2 = Fq::get(2, 1);
    LPoly a = LPoly::monomial(f2, {2}, FqElem::one(f2));
    auto r = local_V_splitting(a, {2, 4});
    REQUIRE(r.has_value());
    CHECK(r->first == LPoly::monomial(f2, {1}, FqElem::one(f2)));
    CHECK(r->second == IntVec{1, 2});
    CHECK(!local_V_splitting(a, {1, 2}).has_value());
    CHECK(!local_V_splitting(a, {2, 3}).has_value());
    CHECK_THROWS_AS(local_V_splitting(a, {-2}), ToricError);
    // zero fiber exponents: falls back to the coefficient splitting
    auto r0 = local_V_splitting(LPoly::monomial(f2, {3}, FqElem::one(f2)), {0});
    REQUIRE(r0.has_value());
    CHECK(r0->first.is_zero());
}

TEST_CASE("monomial transition splitting criterion") {
    const Fq& f2 = Fq::get(2, 1);
    const Fq& f3 = Fq::get(3, 1);
    for (const Fq* fp : {&f2, &f3}) {
        const Fq& f = *fp;
        int64_t p = f.p();
        auto id = [&] {
            return std::vector<std::vector<MonoEntry>>{
                {mono(f, 1, {0}), mono(f, 0, {0})},
                {mono(f, 0, {0}), mono(f, 1, {0})}};
        };
        CHECK(lemma_le_condition(id(), f));

        auto upper = id();
        upper[0][1] = mono(f, 1, {p});  // extension class x^p survives phi
        CHECK(!lemma_le_condition(upper, f));

        auto upper1 = id();
        upper1[0][1] = mono(f, 1, {1});
        CHECK(lemma_le_condition(upper1, f));

        auto diag = id();
        diag[0][0] = mono(f, 1, {7});
        diag[1][1] = mono(f, 1, {-3});
        CHECK(lemma_le_condition(diag, f));

        auto sing = id();
        sing[0][0] = sing[0][1] = sing[1][0] = sing[1][1] = mono(f, 1, {0});
        CHECK_THROWS_AS(lemma_le_condition(sing, f), ToricError);

        auto binom = id();
        binom[0][0] = mono(f, 1, {1});
        binom[0][1] = binom[1][0] = binom[1][1] = mono(f, 1, {0});
        CHECK_THROWS_AS(lemma_le_condition(binom, f), ToricError);
    }
}

TEST_CASE("evaluation against a chart section") {
    const Fq& f3 = Fq::get(3, 1);
    OmegaSection psi{0, LPoly::monomial(f3, {2}, FqElem::one(f3))};  // u^{p-1}
    CHECK(iota_eval(psi, LPoly::one(f3, 1)) == LPoly::one(f3, 1));
    CHECK(iota_eval(psi, LPoly::monomial(f3, {3}, FqElem::one(f3))) ==
          LPoly::monomial(f3, {1}, FqElem::one(f3)));
    CHECK(iota_eval(psi, LPoly::monomial(f3, {1}, FqElem::one(f3))).is_zero());
}

TEST_CASE("overlap consistency on the projective line") {
    Fan p1 = Fan::builtin("P1");
    for (int64_t p : {2, 3}) {
        const Fq& f = Fq::get(p, 1);
        SplittingCandidate good;
        good.chi = {0};
        OmegaSection s0{0, LPoly::monomial(f, {p - 1}, FqElem::one(f))};
        OmegaSection s1{1, LPoly::monomial(f, {p - 1}, FqElem(f, -1).pow(p - 1))};
        good.charts = {s0, s1};
        CHECK(omega_overlap_consistent(p1, good));
        // the candidate is a genuine splitting: it sends 1 to 1 on a chart
        CHECK(iota_eval(good.charts[0], LPoly::one(f, 1)) == LPoly::one(f, 1));

        SplittingCandidate bad;
        bad.chi = {0};
        OmegaSection c0{0, LPoly::one(f, 1)};
        OmegaSection c1{1, LPoly::one(f, 1)};
        bad.charts = {c0, c1};
        CHECK(!omega_overlap_consistent(p1, bad));

        SplittingCandidate wrong_count;
        wrong_count.charts = {s0};
        CHECK_THROWS_AS(omega_overlap_consistent(p1, wrong_count), ToricError);
    }
}
