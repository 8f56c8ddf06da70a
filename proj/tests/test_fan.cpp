#include <random>
#include <vector>

#include "doctest.h"
#include "toricfs/fan.hpp"

using namespace toricfs;

TEST_CASE("builtin fan inventory") {
    struct Row {
        const char* name;
        int rank, rays, cones;
        bool complete;
    };
    std::vector<Row> table = {
        {"P1", 1, 2, 2, true},    {"P2", 2, 3, 3, true},  {"P3", 3, 4, 4, true},
        {"P1xP1", 2, 4, 4, true}, {"F1", 2, 4, 4, true},  {"F2", 2, 4, 4, true},
        {"F3", 2, 4, 4, true},    {"A1", 1, 1, 1, false}, {"A2", 2, 2, 1, false}};
    CHECK(Fan::builtin_names().size() == table.size());
    for (auto& row : table) {
        Fan fan = Fan::builtin(row.name);
        CHECK(fan.rank() == row.rank);
        CHECK(fan.n_rays() == row.rays);
        CHECK(fan.n_max_cones() == row.cones);
        CHECK(fan.is_complete() == row.complete);
        CHECK(fan.is_smooth());
    }
    CHECK_THROWS_AS(Fan::builtin("P4"), ToricError);
}

TEST_CASE("completeness matches a direction-sampling oracle") {
    std::mt19937_64 rng(4242);
    for (const auto& name : Fan::builtin_names()) {
        Fan fan = Fan::builtin(name);
        if (!fan.is_complete()) continue;
        std::uniform_int_distribution<int64_t> dist(-50, 50);
        for (int trial = 0; trial < 10000; ++trial) {
            IntVec v(fan.rank());
            bool zero = true;
            for (auto& x : v) {
                x = dist(rng);
                if (x) zero = false;
            }
            if (zero) continue;
            bool covered = false;
            for (int c = 0; c < fan.n_max_cones() && !covered; ++c)
                covered = fan.cone_contains(c, v);
            CHECK(covered);
        }
    }
    Fan a2 = Fan::builtin("A2");
    CHECK(!a2.cone_contains(0, {-1, 0}));
    CHECK(!a2.cone_contains(0, {0, -1}));
}

TEST_CASE("cone dual rows pair to the identity on the cone rays") {
    for (const auto& name : Fan::builtin_names()) {
        Fan fan = Fan::builtin(name);
        for (int c = 0; c < fan.n_max_cones(); ++c) {
            const auto& cone = fan.max_cone(c);
            const IntMat& duals = fan.cone_duals(c);
            REQUIRE(duals.size() == cone.size());
            for (size_t i = 0; i < cone.size(); ++i)
                for (size_t j = 0; j < cone.size(); ++j)
                    CHECK(pairing(duals[i], fan.ray(cone[j])) == (i == j ? 1 : 0));
        }
    }
}

TEST_CASE("cone characters hit prescribed ray values") {
    Fan p2 = Fan::builtin("P2");
    IntVec chi = p2.cone_character(0, {5, -3});
    CHECK(pairing(chi, p2.ray(0)) == 5);
    CHECK(pairing(chi, p2.ray(1)) == -3);
    Fan f2 = Fan::builtin("F2");
    for (int c = 0; c < f2.n_max_cones(); ++c) {
        IntVec chi2 = f2.cone_character(c, {-1, 7});
        const auto& cone = f2.max_cone(c);
        CHECK(pairing(chi2, f2.ray(cone[0])) == -1);
        CHECK(pairing(chi2, f2.ray(cone[1])) == 7);
    }
    CHECK_THROWS_AS(p2.cone_character(0, {1}), ToricError);
}

TEST_CASE("cone membership on explicit points") {
    Fan p2 = Fan::builtin("P2");
    CHECK(p2.cone_contains(0, {2, 3}));
    CHECK(p2.cone_contains(0, {0, 0}));
    CHECK(p2.cone_contains(0, {1, 0}));  // a ray is on the boundary
    CHECK(!p2.cone_contains(0, {-1, 0}));
    CHECK(p2.cone_contains(1, {-1, 0}));  // cone on rays (0,1), (-1,-1)
    CHECK(p2.cone_contains(2, {0, -1}));
    CHECK_THROWS_AS(p2.cone_contains(0, {1, 2, 3}), ToricError);
}

TEST_CASE("fan validation rejects malformed input") {
    // non-primitive ray
    CHECK_THROWS_AS(Fan(2, {{2, 2}, {0, 1}}, {{0, 1}}), ToricError);
    // zero ray
    CHECK_THROWS_AS(Fan(2, {{0, 0}, {0, 1}}, {{0, 1}}), ToricError);
    // duplicate ray
    CHECK_THROWS_AS(Fan(2, {{1, 0}, {1, 0}}, {{0, 1}}), ToricError);
    // ray index out of range
    CHECK_THROWS_AS(Fan(2, {{1, 0}, {0, 1}}, {{0, 2}}), ToricError);
    // repeated ray inside one cone
    CHECK_THROWS_AS(Fan(2, {{1, 0}, {0, 1}}, {{0, 0}}), ToricError);
    // ray not used by any cone
    CHECK_THROWS_AS(Fan(2, {{1, 0}, {0, 1}, {-1, 0}}, {{0, 1}}), ToricError);
    // non-smooth cone: det((1,0),(1,2)) = 2
    CHECK_THROWS_AS(Fan(2, {{1, 0}, {1, 2}}, {{0, 1}}), ToricError);
    // no cones at all
    CHECK_THROWS_AS(Fan(2, {{1, 0}}, {}), ToricError);
    // cone larger than the rank
    CHECK_THROWS_AS(Fan(1, {{1}, {-1}}, {{0, 1}}), ToricError);
}

TEST_CASE("lower-dimensional maximal cones are allowed and dualized") {
    Fan half(2, {{1, 0}}, {{0}});
    CHECK(!half.is_complete());
    CHECK(half.is_smooth());
    CHECK(half.cone_dim(0) == 1);
    CHECK(pairing(half.cone_duals(0)[0], half.ray(0)) == 1);
    CHECK(half.cone_contains(0, {3, 0}));
    CHECK(!half.cone_contains(0, {3, 1}));  // off the ray line
}
