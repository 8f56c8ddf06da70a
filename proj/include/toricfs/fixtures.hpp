#pragma once

#include <string>

#include "toricfs/klyachko.hpp"

namespace toricfs {

struct Fixture {
    std::string name;  // "<fan>/<bundle>", e.g. "P2/tangent", "P1/O(2)+O(-1)"
    std::shared_ptr<const Fan> fan;
    ToricBundle bundle;
};

// Named (fan, bundle) pairs over the given field: tangent and cotangent on
// every complete builtin fan, the line sums O(a)+O(b) on P1 for |a|,|b| <= 3,
// and the spread-2 presentation "P1/O+O(2D0-D1)" whose second summand jumps
// at 2 on ray 0 and at -1 on ray 1.
std::vector<Fixture> standard_fixtures(const Fq& f);

}  // namespace toricfs
