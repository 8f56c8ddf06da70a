#pragma once

#include "json.hpp"
#include "toricfs/frobenius.hpp"
#include "toricfs/sections.hpp"

namespace toricfs {

enum class Decision { Split, NotSplit, CriterionFailed, Unknown };
std::string decision_name(Decision d);  // SPLIT / NOT_SPLIT / CRITERION_FAILED / UNKNOWN
int decision_exit_code(Decision d);     // 0 / 1 / 2 / 2

struct SplitReport {
    Decision decision = Decision::Unknown;
    std::string criterion;  // "1", "2" or "A"
    int64_t p = 0;
    nlohmann::json witness;      // null unless decision == Split
    nlohmann::json diagnostics;  // always an object
    nlohmann::json to_json() const;
};

// Constant parts of the monomial transition matrices between the canonical
// per-cone eigen bases: P[s][t] = B_s * B_t^{-1}, entry (i,j) carrying the
// character difference chars[s][i] - chars[t][j].
struct KaneyamaCocycle {
    std::shared_ptr<const Fan> fan;
    const Fq* field = nullptr;
    int rank = 0;
    std::vector<std::vector<IntVec>> chars;  // per max cone, rank characters in eigen row order
    std::vector<std::vector<FqMatrix>> P;    // P[s][t]
};

KaneyamaCocycle kaneyama_from_klyachko(const ToricBundle& b);
// P[s][s] = I and P[s][t] * P[t][u] = P[s][u] for all triples.
bool cocycle_holds(const KaneyamaCocycle& kc);
// The full 2x2 monomial transition between two charts, ready for the
// coincidence test (rank 2 only).
std::vector<std::vector<MonoEntry>> transition_entries(const KaneyamaCocycle& kc, int s, int t);

// Rank-2 sufficient test by transition coincidence: SPLIT iff every ordered
// pair of maximal cones passes the coincidence condition, CRITERION_FAILED
// otherwise (the test is one-directional, so never NOT_SPLIT).
SplitReport transition_criterion_check(const ToricBundle& b);

// Rank-2 sufficient test by filtration numerics: SPLIT iff p exceeds the
// maximal jump spread and every ray has distinct extreme jumps.  The
// transition coincidence condition is provably implied and is recomputed as a
// cross-check; disagreement is an internal logic error.
SplitReport length_criterion_check(const ToricBundle& b);

// Klyachko data of S^{r(p-1)}E tensored with (det E)^{1-p} and the (1-p)-th
// power of the canonical line: the bundle whose weight spaces govern the
// pushforward test.
ToricBundle twisted_pushforward_bundle(const ToricBundle& b);

// Decides whether a degree-2(p-1) binary form equals c * (l1*l2)^{p-1} for
// independent linear forms l1, l2 (equivalently c * q^{p-1} with q a
// quadratic of nonzero discriminant).  Coefficients of v follow
// sym_exponents(2, 2(p-1)) order.  A witness factors over at most the
// quadratic extension of the input field; if that would exceed the supported
// field degree the verdict is unknown (the form itself may still be valid).
struct DetectResult {
    enum class Kind { Witness, No, Unknown } kind = Kind::No;
    const Fq* witness_field = nullptr;  // set for Witness
    std::vector<FqVec> basis;           // two rows (x,y coefficients) over witness_field
    FqElem scale;                       // v = scale * (l1*l2)^{p-1}, over witness_field; valid for Witness only
    std::string note;
};
DetectResult detect_splitting_vector_rank2(const Fq& f, const FqVec& v);

// Chart form of the pushforward to (1-p)-th canonical power sections: the
// coefficient of the all-(p-1) eigen product of v's expansion on that cone,
// times u^(p-1-<chi,sigma_j>) per chart coordinate.  v lives in the standard
// symmetric-power coordinates of degree rank*(p-1); chi is its weight as a
// section of the twisted bundle.
OmegaSection pi_pushforward(const ToricBundle& b, const IntVec& chi, const FqVec& v,
                            int cone_id);

// Splitting-section test of the pushforward: true iff iota(pi(v))(1) is the
// constant 1 on every chart.
bool verify_pushforward_witness(const ToricBundle& b, const IntVec& chi, const FqVec& v);

// The iff-test on complete fans: W = weight-mu space of the twisted bundle;
// NOT_SPLIT when W = 0 or the pushforward functional vanishes on W, SPLIT
// otherwise with a re-verified witness (an eigen product, a factored rank-2
// splitting vector, or a unit-functional section).
SplitReport pushforward_criterion_check(const ToricBundle& b, int d_max = 4);

}  // namespace toricfs
