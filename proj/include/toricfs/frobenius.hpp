#pragma once

#include <optional>

#include "toricfs/fan.hpp"
#include "toricfs/poly.hpp"

namespace toricfs {

// Coefficient side of the trace map on top forms: keeps the terms whose
// exponent vector is congruent to (p-1,...,p-1) mod p, shifts the exponents
// down by p-1 and divides by p, and takes p-th roots of coefficients.
LPoly trace(const LPoly& f);

// The standard monomial splitting: c x^s -> c^{1/p} x^{s/p} when p divides
// every exponent, 0 otherwise; extended termwise.
LPoly phi_standard(const LPoly& f);

// Splitting of the total space of a trivialized bundle applied to one fiber
// monomial a * e_1^{s_1}...e_r^{s_r}: (phi(a), s/p) when p | s_i for all i,
// nothing otherwise (the zero case).
std::optional<std::pair<LPoly, IntVec>> local_V_splitting(const LPoly& a, const IntVec& s);

// One entry of a monomial transition matrix: scalar * x^expv.
struct MonoEntry {
    FqElem scalar;
    IntVec expv;
};

// True iff the splittings induced by the two sides of an invertible 2x2
// monomial transition coincide: phi(a_{1j}^s a_{2j}^{p-s}) = 0 for both
// columns j and every 1 <= s <= p-1.  Throws if the matrix is not invertible
// as a monomial transition (determinant not a nonzero monomial).
bool lemma_le_condition(const std::vector<std::vector<MonoEntry>>& a, const Fq& f);

// Local section g * omega_sigma^{1-p} of the (1-p)-th canonical power on one
// chart, with g a Laurent polynomial in that chart's coordinates.
struct OmegaSection {
    int cone_id = -1;
    LPoly coeff;
};

// The evaluation iota(psi)(f) = Tr(f * g) for psi = g * omega^{1-p}; the
// chart splitting candidate iota(psi) is a Frobenius splitting iff
// iota(psi)(1) is the constant 1.
LPoly iota_eval(const OmegaSection& psi, const LPoly& f);

// A global section of omega_X^{1-p} presented chart by chart.
struct SplittingCandidate {
    IntVec chi;  // torus weight
    std::vector<OmegaSection> charts;  // one per maximal cone, in cone order
};

// Checks that the chart representatives glue: for every pair of maximal
// cones, rewriting one chart's coefficient in the other chart's coordinates
// (through the monomial change of basis and the omega^{1-p} transition)
// reproduces the other coefficient exactly on the common torus.
bool omega_overlap_consistent(const Fan& fan, const SplittingCandidate& cand);

}  // namespace toricfs
