#pragma once

#include <vector>

#include "toricfs/gf.hpp"

namespace toricfs {

using FqVec = std::vector<FqElem>;

// Dense matrix over one GF(p^d).  Size is desk scale; all ops are exact.
class FqMatrix {
public:
    FqMatrix() : f_(nullptr), rows_(0), cols_(0) {}
    FqMatrix(const Fq& f, int rows, int cols);
    static FqMatrix identity(const Fq& f, int n);
    static FqMatrix from_rows(const Fq& f, const std::vector<FqVec>& rows, int cols);

    const Fq& field() const;
    int rows() const { return rows_; }
    int cols() const { return cols_; }
    FqElem& at(int i, int j);
    const FqElem& at(int i, int j) const;
    FqVec row(int i) const;

    FqMatrix operator*(const FqMatrix& o) const;
    FqVec apply_row(const FqVec& v) const;  // v (1 x rows) * M
    FqMatrix transpose() const;
    FqMatrix stacked_with(const FqMatrix& below) const;

    // In-place row reduction to RREF; returns pivot column indices.
    std::vector<int> rref();
    int rank() const;
    FqElem det() const;
    FqMatrix inverse() const;
    // Basis of the right kernel {x : M x = 0}, one vector per row.
    FqMatrix kernel() const;

    bool operator==(const FqMatrix& o) const;
    std::string to_string() const;

private:
    const Fq* f_;
    int rows_, cols_;
    std::vector<FqElem> a_;
};

// Subspace of F^n held as its canonical reduced row-echelon basis, so
// equality of subspaces is row-by-row equality.
class Subspace {
public:
    Subspace() : ambient_(0) {}
    static Subspace span(const FqMatrix& rows);
    static Subspace zero(const Fq& f, int ambient);
    static Subspace full(const Fq& f, int ambient);

    int ambient() const { return ambient_; }
    int dim() const { return basis_.rows(); }
    const Fq& field() const { return basis_.field(); }
    const FqMatrix& basis() const { return basis_; }

    bool contains(const FqVec& v) const;
    bool contains(const Subspace& other) const;
    bool operator==(const Subspace& o) const;
    bool operator!=(const Subspace& o) const { return !(*this == o); }

    Subspace sum(const Subspace& o) const;
    Subspace intersect(const Subspace& o) const;
    // Coordinates of v in this basis; throws if v is outside.
    FqVec coordinates(const FqVec& v) const;

private:
    int ambient_;
    FqMatrix basis_;  // RREF, no zero rows
};

// All k-dimensional subspaces of F^ambient, enumerated via RREF shapes.
// Count grows like Gaussian binomials: guarded by `budget`.
std::vector<Subspace> enumerate_subspaces(const Fq& f, int ambient, int k, int64_t budget = 2000000);

}  // namespace toricfs
