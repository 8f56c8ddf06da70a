#pragma once

#include "toricfs/klyachko.hpp"

namespace toricfs {

struct WeightSpace {
    IntVec chi;
    Subspace space;
};

// chi-isotypic space of global sections: the intersection over all fan rays
// of E^alpha(<chi, alpha>).  Exact for complete fans; a formal intersection
// otherwise (callers needing H^0 must check fan().is_complete()).
Subspace weight_space(const ToricBundle& b, const IntVec& chi);

// Every character with a nonzero weight space.  Enumerates the integer points
// of the box bounding {chi : <chi, alpha> <= n_max^alpha for all rays} and
// filters; requires a complete fan (the region is unbounded otherwise).
std::vector<WeightSpace> weight_support(const ToricBundle& b);

// Total dimension of global sections (complete fan).
int64_t h0(const ToricBundle& b);

struct ChartTerm {
    int eigen_index;     // row index into the cone's eigen basis
    FqElem coeff;        // coordinate of the fiber vector on that row
    IntVec exponents;    // chart exponents, one per cone ray: <chi_i - chi, sigma_j>
};

struct ChartSection {
    int cone_id = -1;
    std::vector<ChartTerm> terms;  // nonzero coefficients only
};

// Monomial expansion of the weight-chi section with fiber vector v on one
// chart.  Throws if v lies outside weight_space(b, chi); exponents are then
// guaranteed nonnegative.
ChartSection chart_restriction(const ToricBundle& b, const IntVec& chi, const FqVec& v,
                               int cone_id);

}  // namespace toricfs
