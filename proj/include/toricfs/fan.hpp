#pragma once

#include <string>
#include <vector>

#include "toricfs/intlin.hpp"

namespace toricfs {

// Finite fan of smooth (simplicial, unimodular) cones in Z^rank, described by
// its rays and maximal cones.  Ray order is canonical: exactly as given.
class Fan {
public:
    Fan(int rank, std::vector<IntVec> rays, std::vector<std::vector<int>> max_cones);
    // P1, P2, P3, P1xP1, F1, F2, F3 (Hirzebruch), A1, A2 (affine)
    static Fan builtin(const std::string& name);
    static const std::vector<std::string>& builtin_names();

    int rank() const { return rank_; }
    int n_rays() const { return static_cast<int>(rays_.size()); }
    const IntVec& ray(int i) const;
    const std::vector<IntVec>& rays() const { return rays_; }
    int n_max_cones() const { return static_cast<int>(max_cones_.size()); }
    const std::vector<int>& max_cone(int c) const;
    const std::vector<std::vector<int>>& max_cones() const { return max_cones_; }
    int cone_dim(int c) const { return static_cast<int>(max_cone(c).size()); }

    bool is_smooth() const { return smooth_; }
    bool is_complete() const { return complete_; }

    // chi_1..chi_k with <chi_i, ray_j> = delta_ij on the cone's rays (rows).
    // For full-dimensional cones this is the dual basis; lower-dimensional
    // cones use a unimodular completion (then also <chi_i, extra_j> = 0).
    const IntMat& cone_duals(int c) const;
    // Integral character chi with <chi, ray_j> = values[j] on the cone's rays.
    IntVec cone_character(int c, const IntVec& values) const;
    bool cone_contains(int c, const IntVec& v) const;

private:
    int rank_;
    std::vector<IntVec> rays_;
    std::vector<std::vector<int>> max_cones_;
    bool smooth_ = false;
    bool complete_ = false;
    std::vector<IntMat> duals_;        // per max cone: k rows
    std::vector<IntMat> completions_;  // per max cone: the full unimodular matrix [rays; extension]

    void validate_and_derive();
};

}  // namespace toricfs
