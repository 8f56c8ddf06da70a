#include <memory>
#include <random>

#include "doctest.h"
#include "toricfs/criteria.hpp"
#include "toricfs/fixtures.hpp"

using namespace toricfs;
using nlohmann::json;

namespace {

Subspace line_span(const Fq& f, const FqVec& v) {
    return Subspace::span(FqMatrix::from_rows(f, {v}, static_cast<int>(v.size())));
}

Subspace line_span_i(const Fq& f, std::vector<int64_t> v) {
    FqVec row;
    for (int64_t x : v) row.push_back(FqElem(f, x));
    return line_span(f, row);
}

// rank 2 on P2, full at 0 and the given line at 1..2 on each ray
ToricBundle deep_bundle(const Fq& f, const std::vector<FqVec>& lines) {
    auto p2 = std::make_shared<Fan>(Fan::builtin("P2"));
    std::vector<RayFiltration> filts;
    for (int r = 0; r < 3; ++r)
        filts.push_back(RayFiltration(
            f, 2, {{0, Subspace::full(f, 2)}, {2, line_span(f, lines[r])}}));
    return ToricBundle::build(p2, f, std::move(filts));
}

// the spread-2 plane bundle along the three "coordinate" lines
ToricBundle trap_bundle(const Fq& f) {
    FqVec l0 = {FqElem(f, 1), FqElem(f, 0)};
    FqVec l1 = {FqElem(f, 0), FqElem(f, 1)};
    FqVec l2 = {FqElem(f, 1), FqElem(f, 1)};
    return deep_bundle(f, {l0, l1, l2});
}

FqVec sym_vec(const Fq& f, std::vector<int64_t> coords) {
    FqVec v;
    for (int64_t c : coords) v.push_back(FqElem(f, c));
    return v;
}

// coefficient of x^(p-1) y^(p-1) after the substitution x -> g00 x + g01 y,
// y -> g10 x + g11 y applied to the degree-2(p-1) form with coefficients v
FqElem socle_after(const Fq& f, const FqVec& v, const FqMatrix& g) {
    int64_t p = f.p();
    int m = static_cast<int>(2 * (p - 1));
    LPoly lx(f, 2), ly(f, 2);
    lx.add_term({1, 0}, g.at(0, 0));
    lx.add_term({0, 1}, g.at(0, 1));
    ly.add_term({1, 0}, g.at(1, 0));
    ly.add_term({0, 1}, g.at(1, 1));
    LPoly acc(f, 2);
    for (int i = 0; i <= m; ++i) {
        if (v[i].is_zero()) continue;
        LPoly term = LPoly::constant(f, 2, v[i]);
        if (m - i > 0) term = term * lx.pow(m - i);
        if (i > 0) term = term * ly.pow(i);
        acc = acc + term;
    }
    return acc.coeff({p - 1, p - 1});
}

}  // namespace

TEST_CASE("socle coefficient transforms by the determinant power") {
    std::mt19937_64 rng(31415);
    for (auto [p, d] : std::vector<std::pair<int64_t, int>>{{2, 1}, {3, 1}, {2, 2}, {3, 2}, {5, 1}}) {
        const Fq& f = Fq::get(p, d);
        int m = static_cast<int>(2 * (p - 1));
        std::uniform_int_distribution<int64_t> cd(0, f.size() - 1);
        int done = 0;
        while (done < 40) {
            FqMatrix g(f, 2, 2);
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) g.at(i, j) = FqElem::by_index(f, cd(rng));
            if (g.det().is_zero()) continue;
            FqVec v;
            for (int i = 0; i <= m; ++i) v.push_back(FqElem::by_index(f, cd(rng)));
            FqElem before = socle_after(f, v, FqMatrix::identity(f, 2));
            FqElem after = socle_after(f, v, g);
            CHECK(after == g.det().pow(p - 1) * before);
            ++done;
        }
    }
}

TEST_CASE("transition cocycle holds across the fixture set") {
    for (int64_t p : {2, 3}) {
        const Fq& f = Fq::get(p, 1);
        auto p2 = std::make_shared<Fan>(Fan::builtin("P2"));
        for (const ToricBundle& b :
             {tangent_bundle(p2, f), cotangent_bundle(p2, f), trap_bundle(f)}) {
            KaneyamaCocycle kc = kaneyama_from_klyachko(b);
            CHECK(cocycle_holds(kc));
            CHECK(static_cast<int>(kc.P.size()) == b.fan().n_max_cones());
        }
    }
}

TEST_CASE("length test decisions") {
    const Fq& f2 = Fq::get(2, 1);
    const Fq& f3 = Fq::get(3, 1);
    auto p2 = std::make_shared<Fan>(Fan::builtin("P2"));
    auto p1 = std::make_shared<Fan>(Fan::builtin("P1"));

    for (const char* name : {"P2", "P1xP1", "F1"}) {
        auto fan = std::make_shared<Fan>(Fan::builtin(name));
        for (const Fq* f : {&f2, &f3}) {
            SplitReport rep = length_criterion_check(tangent_bundle(fan, *f));
            CHECK(rep.decision == Decision::Split);
            CHECK(rep.criterion == "1");
            CHECK(rep.witness.at("type") == "length_bound");
            CHECK(rep.witness.at("klyachko_length") == 1);
            CHECK(rep.witness.contains("section"));
            CHECK(rep.diagnostics.at("numeric_condition") == true);
            CHECK(rep.diagnostics.at("transition_coincide") == true);
        }
    }

    SplitReport triv = length_criterion_check(direct_sum_lines(p1, f2, {{0, 0}, {0, 0}}));
    CHECK(triv.decision == Decision::CriterionFailed);
    CHECK(triv.diagnostics.at("note") ==
          "some ray has equal extreme jumps; the test is one-directional");
    CHECK(triv.diagnostics.at("balanced_rays") == json::array({0, 1}));

    const Fq& f5 = Fq::get(5, 1);
    SplitReport wide = length_criterion_check(direct_sum_lines(p1, f5, {{2, 0}, {0, 1}}));
    CHECK(wide.decision == Decision::Split);
    CHECK(wide.diagnostics.at("klyachko_length") == 2);

    SplitReport tight = length_criterion_check(trap_bundle(f2));
    CHECK(tight.decision == Decision::CriterionFailed);
    CHECK(tight.diagnostics.at("klyachko_length") == 2);
    CHECK(tight.diagnostics.at("note") ==
          "p does not exceed the filtration spread; the test is one-directional");

    SplitReport deep3 = length_criterion_check(trap_bundle(f3));
    CHECK(deep3.decision == Decision::Split);  // p = 3 exceeds the spread 2

    auto p3 = std::make_shared<Fan>(Fan::builtin("P3"));
    CHECK_THROWS_AS(length_criterion_check(tangent_bundle(p3, f2)), ToricError);
}

TEST_CASE("transition test decisions") {
    const Fq& f2 = Fq::get(2, 1);
    const Fq& f3 = Fq::get(3, 1);
    auto p1 = std::make_shared<Fan>(Fan::builtin("P1"));

    for (const Fq* f : {&f2, &f3})
        for (int64_t a = -2; a <= 2; ++a)
            for (int64_t b = -2; b <= 2; ++b) {
                SplitReport rep =
                    transition_criterion_check(direct_sum_lines(p1, *f, {{a, 0}, {b, 0}}));
                CHECK(rep.decision == Decision::Split);
                CHECK(rep.witness.at("type") == "transition_coincidence");
                CHECK(rep.witness.contains("section"));
            }

    // the spread-2 bundle is genuinely non-split at p = 2, so the sufficient
    // test must not report a splitting
    SplitReport rep = transition_criterion_check(trap_bundle(f2));
    CHECK(rep.decision == Decision::CriterionFailed);
    CHECK(rep.diagnostics.at("coincide") == false);
    CHECK(rep.diagnostics.at("failing_pair").is_array());

    auto p3 = std::make_shared<Fan>(Fan::builtin("P3"));
    CHECK_THROWS_AS(transition_criterion_check(tangent_bundle(p3, f2)), ToricError);
}

TEST_CASE("twisted pushforward bundle structure") {
    const Fq& f3 = Fq::get(3, 1);
    ToricBundle b = trap_bundle(f3);
    ToricBundle tw = twisted_pushforward_bundle(b);
    CHECK(tw.rank() == 5);  // S^4 of rank 2
    JumpData jd = jump_data(tw, 0);
    CHECK(jd.jumps == std::vector<int64_t>{-2, 0, 2, 4, 6});
    CHECK(jd.dims == std::vector<int>{5, 4, 3, 2, 1});
    CHECK(weight_space(tw, {0, 0}).dim() == 2);

    const Fq& f2 = Fq::get(2, 1);
    CHECK(weight_space(twisted_pushforward_bundle(trap_bundle(f2)), {0, 0}).dim() == 0);
}

TEST_CASE("pushforward test separates the spread-2 bundle by characteristic") {
    const Fq& f2 = Fq::get(2, 1);
    SplitReport r2 = pushforward_criterion_check(trap_bundle(f2));
    CHECK(r2.decision == Decision::NotSplit);
    CHECK(r2.criterion == "2");
    CHECK(r2.diagnostics.at("weight_mu_dim") == 0);
    CHECK(r2.diagnostics.at("certificate") == "weight-mu section space is zero");
    CHECK(r2.witness.is_null());

    const Fq& f3 = Fq::get(3, 1);
    SplitReport r3 = pushforward_criterion_check(trap_bundle(f3));
    CHECK(r3.decision == Decision::Split);
    CHECK(r3.diagnostics.at("weight_mu_dim") == 2);
    CHECK(r3.witness.at("type") == "pushforward_unit");
    CHECK(r3.witness.at("chart_values_verified") == true);
    CHECK(r3.witness.at("sym_degree") == 4);
    CHECK(r3.witness.at("weight") == json::array({0, 0}));
}

TEST_CASE("pushforward functional is chart independent over extension fields") {
    // ray lines with distinct eigen-row determinants force the det^(p-1)
    // correction; the check inside the functional asserts cross-cone equality
    const Fq& f9 = Fq::get(3, 2);
    FqElem g = FqElem::from_coeffs(f9, {0, 1});
    FqVec l0 = {FqElem::one(f9), FqElem::one(f9)};
    FqVec l1 = {FqElem::one(f9), g};
    FqVec l2 = {FqElem::one(f9), g * g};
    ToricBundle b = deep_bundle(f9, {l0, l1, l2});
    SplitReport rep = pushforward_criterion_check(b);
    CHECK(rep.decision == Decision::Split);
    CHECK(rep.diagnostics.at("weight_mu_dim") == 2);
    CHECK(rep.witness.at("chart_values_verified") == true);

    const Fq& f4 = Fq::get(2, 2);
    FqElem w = FqElem::from_coeffs(f4, {0, 1});
    FqVec m0 = {FqElem::one(f4), FqElem::one(f4)};
    FqVec m1 = {FqElem::one(f4), w};
    FqVec m2 = {FqElem::one(f4), w * w};
    SplitReport rep4 = pushforward_criterion_check(deep_bundle(f4, {m0, m1, m2}));
    CHECK(rep4.decision == Decision::NotSplit);
    CHECK(rep4.diagnostics.at("certificate") == "weight-mu section space is zero");
}

TEST_CASE("factored witness on the projective line") {
    const Fq& f3 = Fq::get(3, 1);
    auto p1 = std::make_shared<Fan>(Fan::builtin("P1"));
    std::vector<RayFiltration> filts;
    filts.push_back(RayFiltration(
        f3, 2, {{0, Subspace::full(f3, 2)}, {2, line_span_i(f3, {0, 1})}}));
    filts.push_back(RayFiltration(
        f3, 2, {{0, Subspace::full(f3, 2)}, {2, line_span_i(f3, {1, 1})}}));
    ToricBundle b = ToricBundle::build(p1, f3, std::move(filts));

    SplitReport rep = pushforward_criterion_check(b);
    CHECK(rep.decision == Decision::Split);
    REQUIRE(rep.witness.at("type") == "factored");
    CHECK(rep.witness.at("basis_field") == json({{"p", 3}, {"d", 1}}));
    CHECK(rep.witness.at("basis") == json::array({{0, 1}, {1, 1}}));
    CHECK(rep.witness.at("chart_values_verified") == true);
    // the witness vector is (y(x+y))^2 = x^2y^2 + 2xy^3 + y^4
    json terms = rep.witness.at("terms");
    REQUIRE(terms.size() == 3);
    CHECK(terms[0].at("exponents") == json::array({2, 2}));
    CHECK(terms[0].at("coeff") == 1);
    CHECK(terms[1].at("exponents") == json::array({1, 3}));
    CHECK(terms[1].at("coeff") == 2);
    CHECK(terms[2].at("exponents") == json::array({0, 4}));
    CHECK(terms[2].at("coeff") == 1);
}

TEST_CASE("splitting vector detector") {
    const Fq& f3 = Fq::get(3, 1);
    const Fq& f2 = Fq::get(2, 1);

    // (y(x+y))^2 over GF(3)
    DetectResult direct = detect_splitting_vector_rank2(f3, sym_vec(f3, {0, 0, 1, 2, 1}));
    REQUIRE(direct.kind == DetectResult::Kind::Witness);
    CHECK(direct.witness_field == &f3);
    REQUIRE(direct.basis.size() == 2);
    CHECK(direct.basis[0] == sym_vec(f3, {0, 1}));
    CHECK(direct.basis[1] == sym_vec(f3, {1, 1}));
    CHECK(direct.scale == FqElem::one(f3));

    // (x^2+y^2)^2 factors only over GF(9)
    DetectResult ext = detect_splitting_vector_rank2(f3, sym_vec(f3, {1, 0, 2, 0, 1}));
    REQUIRE(ext.kind == DetectResult::Kind::Witness);
    CHECK(ext.witness_field == &Fq::get(3, 2));
    CHECK(ext.note == "factors live in the quadratic extension");

    // x^2 + xy + y^2 over GF(2) factors over GF(4)
    DetectResult ext2 = detect_splitting_vector_rank2(f2, sym_vec(f2, {1, 1, 1}));
    REQUIRE(ext2.kind == DetectResult::Kind::Witness);
    CHECK(ext2.witness_field == &Fq::get(2, 2));

    // (xy)^(p-1) scaled
    DetectResult axes = detect_splitting_vector_rank2(f3, sym_vec(f3, {0, 0, 2, 0, 0}));
    REQUIRE(axes.kind == DetectResult::Kind::Witness);
    CHECK(axes.basis[0] == sym_vec(f3, {1, 0}));
    CHECK(axes.basis[1] == sym_vec(f3, {0, 1}));
    CHECK(axes.scale == FqElem(f3, 2));

    DetectResult quartic = detect_splitting_vector_rank2(f3, sym_vec(f3, {1, 0, 0, 0, 1}));
    CHECK(quartic.kind == DetectResult::Kind::No);
    CHECK(quartic.note == "not a (p-1)-th power of a squarefree quadratic");

    DetectResult power = detect_splitting_vector_rank2(f3, sym_vec(f3, {1, 0, 0, 0, 0}));
    CHECK(power.kind == DetectResult::Kind::No);
    CHECK(power.note == "coordinate factor multiplicity is not 0 or p-1");

    DetectResult zero = detect_splitting_vector_rank2(f3, sym_vec(f3, {0, 0, 0, 0, 0}));
    CHECK(zero.kind == DetectResult::Kind::No);
    CHECK(zero.note == "zero vector");

    // double line (x+y)^4: the squarefree part is linear, not quadratic
    DetectResult dbl = detect_splitting_vector_rank2(f3, sym_vec(f3, {1, 1, 0, 1, 1}));
    CHECK(dbl.kind == DetectResult::Kind::No);

    CHECK_THROWS_AS(detect_splitting_vector_rank2(f3, sym_vec(f3, {1, 0, 1})), ToricError);
}

TEST_CASE("line sums always pass the pushforward test") {
    auto p1 = std::make_shared<Fan>(Fan::builtin("P1"));
    for (int64_t p : {2, 3}) {
        const Fq& f = Fq::get(p, 1);
        for (int64_t a = -2; a <= 2; ++a)
            for (int64_t b = -2; b <= 2; ++b) {
                SplitReport rep =
                    pushforward_criterion_check(direct_sum_lines(p1, f, {{a, 0}, {b, 0}}));
                CHECK(rep.decision == Decision::Split);
                CHECK(rep.witness.at("type") == "eigen_monomial");
            }
    }
}

TEST_CASE("pushforward chart form and witness verification") {
    const Fq& f2 = Fq::get(2, 1);
    auto p2 = std::make_shared<Fan>(Fan::builtin("P2"));
    ToricBundle t = tangent_bundle(p2, f2);
    IntVec mu = {0, 0};
    FqVec v = sym_vec(f2, {0, 1, 0});  // the product of the two eigen rows

    OmegaSection psi = pi_pushforward(t, mu, v, 0);
    CHECK(psi.cone_id == 0);
    CHECK(psi.coeff == LPoly::monomial(f2, {1, 1}, FqElem::one(f2)));
    CHECK(verify_pushforward_witness(t, mu, v));

    // gluing: the per-cone chart forms are one global section
    SplittingCandidate cand;
    cand.chi = mu;
    for (int c = 0; c < 3; ++c) cand.charts.push_back(pi_pushforward(t, mu, v, c));
    CHECK(omega_overlap_consistent(*p2, cand));
    cand.charts[1].coeff = cand.charts[1].coeff * LPoly::monomial(f2, {1, 0}, FqElem::one(f2));
    CHECK(!omega_overlap_consistent(*p2, cand));

    // a wrong scale fails re-verification on every chart
    const Fq& f3 = Fq::get(3, 1);
    ToricBundle t3 = tangent_bundle(p2, f3);
    FqVec good(5, FqElem::zero(f3));
    auto table = sym_exponents(2, 4);
    good[sym_index(table, {2, 2})] = FqElem::one(f3);
    CHECK(verify_pushforward_witness(t3, mu, good));
    FqVec bad = good;
    bad[sym_index(table, {2, 2})] = FqElem(f3, 2);
    CHECK(!verify_pushforward_witness(t3, mu, bad));

    // lower-dimensional cones carry no chart
    auto half = std::make_shared<Fan>(Fan(2, {{1, 0}}, {{0}}));
    ToricBundle th = tangent_bundle(half, f2);
    CHECK_THROWS_AS(pi_pushforward(th, mu, sym_vec(f2, {0, 1, 0}), 0), ToricError);
}

TEST_CASE("pushforward decisions are twist invariant") {
    const Fq& f3 = Fq::get(3, 1);
    const Fq& f2 = Fq::get(2, 1);
    for (const Fq* f : {&f2, &f3}) {
        ToricBundle b = trap_bundle(*f);
        SplitReport base = pushforward_criterion_check(b);
        SplitReport shifted = pushforward_criterion_check(twist(b, {1, -2, 0}));
        CHECK(base.decision == shifted.decision);
        CHECK(base.diagnostics.at("weight_mu_dim") == shifted.diagnostics.at("weight_mu_dim"));
    }
}

TEST_CASE("pushforward guards") {
    const Fq& f2 = Fq::get(2, 1);
    auto a2 = std::make_shared<Fan>(Fan::builtin("A2"));
    CHECK_THROWS_AS(pushforward_criterion_check(tangent_bundle(a2, f2)), ToricError);

    auto p2 = std::make_shared<Fan>(Fan::builtin("P2"));
    const Fq& f23 = Fq::get(23, 1);
    ToricBundle wide = direct_sum_lines(p2, f23, {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}});
    CHECK_THROWS_AS(pushforward_criterion_check(wide), ToricError);
}

TEST_CASE("fixture sweep: cocycle identity and decision coherence") {
    const Fq& f2 = Fq::get(2, 1);
    for (const Fixture& fx : standard_fixtures(f2)) {
        if (fx.bundle.rank() != 2) continue;
        KaneyamaCocycle kc = kaneyama_from_klyachko(fx.bundle);
        CHECK(cocycle_holds(kc));
        SplitReport a = transition_criterion_check(fx.bundle);
        SplitReport l = length_criterion_check(fx.bundle);
        // both tests are sufficient, so a SPLIT from either is final; they
        // must never disagree with the exact pushforward test
        if (!fx.fan->is_complete()) continue;
        SplitReport exact = pushforward_criterion_check(fx.bundle);
        if (a.decision == Decision::Split || l.decision == Decision::Split)
            CHECK(exact.decision == Decision::Split);
    }
}
