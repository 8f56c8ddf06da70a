#include "toricfs/fixtures.hpp"

namespace toricfs {

std::vector<Fixture> standard_fixtures(const Fq& f) {
    std::vector<Fixture> out;
    static const char* kCompleteFans[] = {"P1", "P2", "P3", "P1xP1", "F1", "F2", "F3"};
    std::shared_ptr<const Fan> p1;
    for (const char* name : kCompleteFans) {
        std::shared_ptr<const Fan> fan = std::make_shared<Fan>(Fan::builtin(name));
        if (std::string(name) == "P1") p1 = fan;
        out.push_back({std::string(name) + "/tangent", fan, tangent_bundle(fan, f)});
        out.push_back({std::string(name) + "/cotangent", fan, cotangent_bundle(fan, f)});
    }
    for (int64_t a = -3; a <= 3; ++a) {
        for (int64_t b = -3; b <= 3; ++b) {
            std::string name =
                "P1/O(" + std::to_string(a) + ")+O(" + std::to_string(b) + ")";
            out.push_back({name, p1, direct_sum_lines(p1, f, {{a, 0}, {b, 0}})});
        }
    }
    out.push_back({"P1/O+O(2D0-D1)", p1, direct_sum_lines(p1, f, {{0, 0}, {2, -1}})});
    return out;
}

}  // namespace toricfs
