#pragma once

#include <memory>
#include <optional>
#include <variant>

#include "toricfs/fan.hpp"
#include "toricfs/linalg.hpp"

namespace toricfs {

// Decreasing filtration of F^rank indexed by Z, recorded at its jumps:
// steps_[k] = (i_k, V_k) with i_0 < i_1 < ..., V_0 = full, V_k strictly
// decreasing.  E(x) = V at the smallest recorded jump >= x; 0 above the top.
class RayFiltration {
public:
    RayFiltration(const Fq& f, int rank, std::vector<std::pair<int64_t, Subspace>> steps);
    static RayFiltration single_jump(const Fq& f, int rank, int64_t i);  // full -> 0 at i

    const Fq& field() const { return *f_; }
    int rank() const { return rank_; }
    const std::vector<std::pair<int64_t, Subspace>>& steps() const { return steps_; }
    Subspace at(int64_t i) const;
    int dim_at(int64_t i) const { return at(i).dim(); }
    std::vector<int64_t> jumps() const;
    int64_t n_max() const { return steps_.back().first; }
    int64_t n_min() const { return steps_.front().first; }
    RayFiltration shifted(int64_t delta) const;
    bool operator==(const RayFiltration& o) const;

private:
    const Fq* f_;
    int rank_;
    std::vector<std::pair<int64_t, Subspace>> steps_;
};

// Direct-sum decomposition of the fiber over one maximal cone: character
// (full lattice vector) -> summand.  Characters are pairwise distinct and
// parts are sorted lexicographically by character.
struct ConeDecomp {
    int cone_id = -1;
    std::vector<std::pair<IntVec, Subspace>> parts;

    int total_dim() const;
    // One row per fiber basis vector: the echelon rows of each part in
    // character order, with the row's character alongside.
    void eigen_rows(const Fq& f, int rank, FqMatrix& rows, std::vector<IntVec>& chars) const;
};

struct IncompatCert {
    int cone_id = -1;
    // inclusion-exclusion multiplicity that came out negative, or search
    // exhaustion with no valid assignment
    std::optional<std::vector<int64_t>> tuple;
    int64_t multiplicity = 0;
    std::string reason;
};

using CompatResult = std::variant<ConeDecomp, IncompatCert>;

// Searches a decomposition of the given maximal cone compatible with the
// per-ray filtrations (indexed by fan ray id).  Counting -> greedy canonical
// complements -> exhaustive fallback; positives are re-verified, so a
// returned ConeDecomp is always sound.
CompatResult check_compatibility(const Fan& fan, int cone_id,
                                 const std::vector<RayFiltration>& filts);

// Per-ray integer data of a direct sum of torus-line summands (one value per
// fan ray); doubles as the data of a line bundle twist.
using ToricLineData = std::vector<int64_t>;

class ToricBundle {
public:
    // Validates filtrations and searches a decomposition per maximal cone;
    // throws ToricError carrying the certificate text if incompatible.
    static ToricBundle build(std::shared_ptr<const Fan> fan, const Fq& f,
                             std::vector<RayFiltration> filts);
    // For derived constructions that carry their decompositions; they are
    // verified against the filtrations, not searched.
    static ToricBundle build_with_decomps(std::shared_ptr<const Fan> fan, const Fq& f,
                                          std::vector<RayFiltration> filts,
                                          std::vector<ConeDecomp> decomps);

    const Fan& fan() const { return *fan_; }
    std::shared_ptr<const Fan> fan_ptr() const { return fan_; }
    const Fq& field() const { return *f_; }
    int rank() const { return rank_; }
    const RayFiltration& filtration(int ray) const;
    const std::vector<RayFiltration>& filtrations() const { return filts_; }
    const ConeDecomp& decomp(int cone_id) const;

private:
    std::shared_ptr<const Fan> fan_;
    const Fq* f_;
    int rank_ = 0;
    std::vector<RayFiltration> filts_;
    std::vector<ConeDecomp> decomps_;
};

struct JumpData {
    std::vector<int64_t> jumps;
    std::vector<int> dims;  // dim at each jump
    int64_t n_max;
    int64_t n_min;
};

JumpData jump_data(const ToricBundle& b, int ray);
// max over rays of (n_max - n_min)
int64_t klyachko_length(const ToricBundle& b);

ToricBundle tangent_bundle(std::shared_ptr<const Fan> fan, const Fq& f);
ToricBundle cotangent_bundle(std::shared_ptr<const Fan> fan, const Fq& f);
ToricBundle line_bundle(std::shared_ptr<const Fan> fan, const Fq& f, const ToricLineData& data);
ToricBundle direct_sum_lines(std::shared_ptr<const Fan> fan, const Fq& f,
                             const std::vector<ToricLineData>& lines);

ToricBundle dual(const ToricBundle& b);
ToricBundle sym_power(const ToricBundle& b, int m);
ToricBundle twist(const ToricBundle& b, const ToricLineData& data);
ToricLineData det_data(const ToricBundle& b);
ToricLineData line_power(const ToricLineData& data, int64_t k);
ToricLineData canonical_line(const Fan& fan);  // data of omega_X: -1 per ray

// Exponent tuples (i_1..i_letters), sum = degree, in the fixed basis order
// used for all symmetric-power coordinates.
std::vector<std::vector<int>> sym_exponents(int letters, int degree);
int sym_index(const std::vector<std::vector<int>>& table, const std::vector<int>& e);

// Degree-m products of one cone's fiber eigen-basis, one row per exponent
// tuple of sym_exponents(rank, m), in standard symmetric-power coordinates;
// chars = per-row total character, row_exps = per-row exponent tuple.
void sym_eigen_basis(const ToricBundle& b, int m, int cone_id, FqMatrix& rows,
                     std::vector<IntVec>& chars, std::vector<std::vector<int>>& row_exps);

}  // namespace toricfs
