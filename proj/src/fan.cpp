#include "toricfs/fan.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace toricfs {

Fan::Fan(int rank, std::vector<IntVec> rays, std::vector<std::vector<int>> max_cones)
    : rank_(rank), rays_(std::move(rays)), max_cones_(std::move(max_cones)) {
    validate_and_derive();
}

void Fan::validate_and_derive() {
    if (rank_ < 1) throw ToricError("fan rank must be positive");
    std::set<IntVec> seen;
    for (auto& r : rays_) {
        if (static_cast<int>(r.size()) != rank_) throw ToricError("ray arity does not match fan rank");
        bool zero = std::all_of(r.begin(), r.end(), [](int64_t x) { return x == 0; });
        if (zero) throw ToricError("zero vector is not a valid ray");
        if (!is_primitive(r))
            throw ToricError("ray is not primitive (coordinates share a factor); rays must be primitive lattice vectors");
        if (!seen.insert(r).second) throw ToricError("duplicate ray");
    }
    if (max_cones_.empty()) throw ToricError("fan needs at least one maximal cone");
    std::set<std::set<int>> cone_sets;
    for (auto& c : max_cones_) {
        if (c.empty() || static_cast<int>(c.size()) > rank_)
            throw ToricError("maximal cone must list between 1 and rank rays");
        std::set<int> s(c.begin(), c.end());
        if (s.size() != c.size()) throw ToricError("repeated ray in cone");
        for (int i : c)
            if (i < 0 || i >= n_rays()) throw ToricError("cone ray index out of range");
        if (!cone_sets.insert(s).second) throw ToricError("duplicate maximal cone");
    }
    std::vector<bool> used(rays_.size(), false);
    for (auto& c : max_cones_)
        for (int i : c) used[i] = true;
    for (size_t i = 0; i < used.size(); ++i)
        if (!used[i]) throw ToricError("ray " + std::to_string(i) + " belongs to no maximal cone");
    // smoothness: every maximal cone's rays extend to a lattice basis
    smooth_ = true;
    for (auto& c : max_cones_) {
        IntMat rows;
        for (int i : c) rows.push_back(rays_[i]);
        if (!spans_saturated_sublattice(rows, rank_)) {
            smooth_ = false;
            break;
        }
    }
    if (!smooth_) throw ToricError("fan has a non-smooth cone (rays do not extend to a lattice basis)");

    duals_.resize(max_cones_.size());
    completions_.resize(max_cones_.size());
    for (size_t ci = 0; ci < max_cones_.size(); ++ci) {
        IntMat rows;
        for (int i : max_cones_[ci]) rows.push_back(rays_[i]);
        IntMat ext = unimodular_completion(rows, rank_);
        IntMat full = rows;
        for (auto& r : ext) full.push_back(r);
        completions_[ci] = full;
        IntMat inv = unimodular_inverse(full);
        // chi_i = i-th column of inv, transposed into rows
        IntMat duals;
        for (size_t i = 0; i < rows.size(); ++i) {
            IntVec chi(rank_);
            for (int j = 0; j < rank_; ++j) chi[j] = inv[j][i];
            duals.push_back(std::move(chi));
        }
        duals_[ci] = duals;
    }

    // completeness: all maximal cones full-dimensional and every facet
    // (drop one ray) shared by exactly two maximal cones
    complete_ = true;
    for (auto& c : max_cones_)
        if (static_cast<int>(c.size()) != rank_) complete_ = false;
    if (complete_ && rank_ == 1) {
        bool pos = false, neg = false;
        for (auto& c : max_cones_)
            (rays_[c[0]][0] > 0 ? pos : neg) = true;
        complete_ = pos && neg;
    } else if (complete_) {
        std::map<std::set<int>, int> facet_count;
        for (auto& c : max_cones_)
            for (int drop : c) {
                std::set<int> facet;
                for (int i : c)
                    if (i != drop) facet.insert(i);
                ++facet_count[facet];
            }
        for (auto& [facet, count] : facet_count)
            if (count != 2) complete_ = false;
    }
}

const IntVec& Fan::ray(int i) const {
    if (i < 0 || i >= n_rays()) throw ToricError("ray index out of range");
    return rays_[i];
}

const std::vector<int>& Fan::max_cone(int c) const {
    if (c < 0 || c >= n_max_cones()) throw ToricError("cone index out of range");
    return max_cones_[c];
}

const IntMat& Fan::cone_duals(int c) const {
    max_cone(c);
    return duals_[c];
}

IntVec Fan::cone_character(int c, const IntVec& values) const {
    const auto& cone = max_cone(c);
    if (values.size() != cone.size()) throw ToricError("value tuple arity mismatch");
    IntVec chi(rank_, 0);
    const IntMat& duals = duals_[c];
    for (size_t i = 0; i < cone.size(); ++i)
        for (int j = 0; j < rank_; ++j) chi[j] += values[i] * duals[i][j];
    return chi;
}

bool Fan::cone_contains(int c, const IntVec& v) const {
    const auto& cone = max_cone(c);
    if (static_cast<int>(v.size()) != rank_) throw ToricError("vector arity mismatch");
    // coordinates in the completed basis; membership needs nonneg ray coords
    // and zero coordinates along the completion
    const IntMat& duals = duals_[c];
    IntVec coords;
    for (size_t i = 0; i < cone.size(); ++i) coords.push_back(pairing(duals[i], v));
    for (int64_t x : coords)
        if (x < 0) return false;
    IntVec rebuilt(rank_, 0);
    for (size_t i = 0; i < cone.size(); ++i)
        for (int j = 0; j < rank_; ++j) rebuilt[j] += coords[i] * rays_[cone[i]][j];
    return rebuilt == v;
}

Fan Fan::builtin(const std::string& name) {
    auto hirzebruch = [](int64_t a) {
        return Fan(2, {{1, 0}, {0, 1}, {-1, a}, {0, -1}}, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
    };
    if (name == "P1") return Fan(1, {{1}, {-1}}, {{0}, {1}});
    if (name == "P2") return Fan(2, {{1, 0}, {0, 1}, {-1, -1}}, {{0, 1}, {1, 2}, {2, 0}});
    if (name == "P3")
        return Fan(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {-1, -1, -1}},
                   {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}});
    if (name == "P1xP1")
        return Fan(2, {{1, 0}, {0, 1}, {-1, 0}, {0, -1}}, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
    if (name == "F1") return hirzebruch(1);
    if (name == "F2") return hirzebruch(2);
    if (name == "F3") return hirzebruch(3);
    if (name == "A1") return Fan(1, {{1}}, {{0}});
    if (name == "A2") return Fan(2, {{1, 0}, {0, 1}}, {{0, 1}});
    throw ToricError("unknown builtin fan: " + name);
}

const std::vector<std::string>& Fan::builtin_names() {
    static const std::vector<std::string> names = {"P1", "P2", "P3", "P1xP1", "F1", "F2", "F3", "A1", "A2"};
    return names;
}

}  // namespace toricfs
