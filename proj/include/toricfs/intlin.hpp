#pragma once

#include <cstdint>
#include <vector>

#include "toricfs/gf.hpp"

namespace toricfs {

using IntVec = std::vector<int64_t>;
using IntMat = std::vector<IntVec>;  // row major

int64_t pairing(const IntVec& chi, const IntVec& v);
int64_t gcd64(int64_t a, int64_t b);
bool is_primitive(const IntVec& v);

// Determinant of a square integer matrix (fraction-free Gaussian elimination).
int64_t int_det(const IntMat& m);

// Inverse of a unimodular matrix (|det| = 1), exact integer entries.
IntMat unimodular_inverse(const IntMat& m);

// Given k independent rows that extend to a basis of Z^n (part of a
// unimodular matrix), return n-k rows completing them to one.  Throws if the
// rows are not part of any lattice basis.
IntMat unimodular_completion(const IntMat& rows, int n);

// True iff the rows span a direct summand of Z^n of rank rows.size()
// (equivalently: extendable to a lattice basis).
bool spans_saturated_sublattice(const IntMat& rows, int n);

}  // namespace toricfs
