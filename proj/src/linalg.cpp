#include "toricfs/linalg.hpp"

#include <algorithm>
#include <sstream>

namespace toricfs {

FqMatrix::FqMatrix(const Fq& f, int rows, int cols)
    : f_(&f), rows_(rows), cols_(cols), a_(size_t(rows) * cols, FqElem::zero(f)) {
    if (rows < 0 || cols < 0) throw ToricError("negative matrix dimension");
}

FqMatrix FqMatrix::identity(const Fq& f, int n) {
    FqMatrix m(f, n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = FqElem::one(f);
    return m;
}

FqMatrix FqMatrix::from_rows(const Fq& f, const std::vector<FqVec>& rows, int cols) {
    FqMatrix m(f, static_cast<int>(rows.size()), cols);
    for (size_t i = 0; i < rows.size(); ++i) {
        if (static_cast<int>(rows[i].size()) != cols) throw ToricError("ragged matrix rows");
        for (int j = 0; j < cols; ++j) m.at(static_cast<int>(i), j) = rows[i][j];
    }
    return m;
}

const Fq& FqMatrix::field() const {
    if (!f_) throw ToricError("use of default-constructed matrix");
    return *f_;
}

FqElem& FqMatrix::at(int i, int j) {
    if (i < 0 || i >= rows_ || j < 0 || j >= cols_) throw ToricError("matrix index out of range");
    return a_[size_t(i) * cols_ + j];
}

const FqElem& FqMatrix::at(int i, int j) const {
    if (i < 0 || i >= rows_ || j < 0 || j >= cols_) throw ToricError("matrix index out of range");
    return a_[size_t(i) * cols_ + j];
}

FqVec FqMatrix::row(int i) const {
    FqVec r;
    r.reserve(cols_);
    for (int j = 0; j < cols_; ++j) r.push_back(at(i, j));
    return r;
}

FqMatrix FqMatrix::operator*(const FqMatrix& o) const {
    field();
    if (f_ != o.f_) throw ToricError("matrix field mismatch");
    if (cols_ != o.rows_) throw ToricError("matrix shape mismatch in product");
    FqMatrix r(*f_, rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            const FqElem& x = at(i, k);
            if (x.is_zero()) continue;
            for (int j = 0; j < o.cols_; ++j) r.at(i, j) += x * o.at(k, j);
        }
    return r;
}

FqVec FqMatrix::apply_row(const FqVec& v) const {
    field();
    if (static_cast<int>(v.size()) != rows_) throw ToricError("vector length mismatch");
    FqVec r(cols_, FqElem::zero(*f_));
    for (int i = 0; i < rows_; ++i) {
        if (v[i].is_zero()) continue;
        for (int j = 0; j < cols_; ++j) r[j] += v[i] * at(i, j);
    }
    return r;
}

FqMatrix FqMatrix::transpose() const {
    field();
    FqMatrix r(*f_, cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
}

FqMatrix FqMatrix::stacked_with(const FqMatrix& below) const {
    field();
    if (f_ != below.f_ || cols_ != below.cols_) throw ToricError("stack shape mismatch");
    FqMatrix r(*f_, rows_ + below.rows_, cols_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r.at(i, j) = at(i, j);
    for (int i = 0; i < below.rows_; ++i)
        for (int j = 0; j < cols_; ++j) r.at(rows_ + i, j) = below.at(i, j);
    return r;
}

std::vector<int> FqMatrix::rref() {
    field();
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < cols_ && r < rows_; ++c) {
        int sel = -1;
        for (int i = r; i < rows_; ++i)
            if (!at(i, c).is_zero()) {
                sel = i;
                break;
            }
        if (sel < 0) continue;
        for (int j = 0; j < cols_; ++j) std::swap(at(sel, j), at(r, j));
        FqElem inv = at(r, c).inverse();
        for (int j = c; j < cols_; ++j) at(r, j) = at(r, j) * inv;
        for (int i = 0; i < rows_; ++i) {
            if (i == r || at(i, c).is_zero()) continue;
            FqElem factor = at(i, c);
            for (int j = c; j < cols_; ++j) at(i, j) -= factor * at(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

int FqMatrix::rank() const {
    FqMatrix copy = *this;
    return static_cast<int>(copy.rref().size());
}

FqElem FqMatrix::det() const {
    field();
    if (rows_ != cols_) throw ToricError("determinant of non-square matrix");
    FqMatrix m = *this;
    FqElem d = FqElem::one(*f_);
    for (int c = 0; c < cols_; ++c) {
        int sel = -1;
        for (int i = c; i < rows_; ++i)
            if (!m.at(i, c).is_zero()) {
                sel = i;
                break;
            }
        if (sel < 0) return FqElem::zero(*f_);
        if (sel != c) {
            for (int j = 0; j < cols_; ++j) std::swap(m.at(sel, j), m.at(c, j));
            d = -d;
        }
        d *= m.at(c, c);
        FqElem inv = m.at(c, c).inverse();
        for (int i = c + 1; i < rows_; ++i) {
            if (m.at(i, c).is_zero()) continue;
            FqElem factor = m.at(i, c) * inv;
            for (int j = c; j < cols_; ++j) m.at(i, j) -= factor * m.at(c, j);
        }
    }
    return d;
}

FqMatrix FqMatrix::inverse() const {
    field();
    if (rows_ != cols_) throw ToricError("inverse of non-square matrix");
    FqMatrix aug(*f_, rows_, 2 * cols_);
    for (int i = 0; i < rows_; ++i) {
        for (int j = 0; j < cols_; ++j) aug.at(i, j) = at(i, j);
        aug.at(i, cols_ + i) = FqElem::one(*f_);
    }
    auto piv = aug.rref();
    if (static_cast<int>(piv.size()) != rows_ || piv.back() >= cols_)
        throw ToricError("matrix not invertible");
    FqMatrix r(*f_, rows_, cols_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r.at(i, j) = aug.at(i, cols_ + j);
    return r;
}

FqMatrix FqMatrix::kernel() const {
    field();
    FqMatrix m = *this;
    std::vector<int> piv = m.rref();
    std::vector<bool> is_piv(cols_, false);
    for (int c : piv) is_piv[c] = true;
    std::vector<int> free_cols;
    for (int c = 0; c < cols_; ++c)
        if (!is_piv[c]) free_cols.push_back(c);
    FqMatrix k(*f_, static_cast<int>(free_cols.size()), cols_);
    for (size_t fi = 0; fi < free_cols.size(); ++fi) {
        int fc = free_cols[fi];
        k.at(static_cast<int>(fi), fc) = FqElem::one(*f_);
        for (size_t pi = 0; pi < piv.size(); ++pi)
            k.at(static_cast<int>(fi), piv[pi]) = -m.at(static_cast<int>(pi), fc);
    }
    return k;
}

bool FqMatrix::operator==(const FqMatrix& o) const {
    if (f_ != o.f_ || rows_ != o.rows_ || cols_ != o.cols_) return false;
    for (size_t i = 0; i < a_.size(); ++i)
        if (a_[i] != o.a_[i]) return false;
    return true;
}

std::string FqMatrix::to_string() const {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < rows_; ++i) {
        if (i) os << "; ";
        for (int j = 0; j < cols_; ++j) {
            if (j) os << " ";
            os << at(i, j).to_string();
        }
    }
    os << "]";
    return os.str();
}

Subspace Subspace::span(const FqMatrix& rows) {
    FqMatrix m = rows;
    auto piv = m.rref();
    FqMatrix basis(rows.field(), static_cast<int>(piv.size()), rows.cols());
    for (size_t i = 0; i < piv.size(); ++i)
        for (int j = 0; j < rows.cols(); ++j) basis.at(static_cast<int>(i), j) = m.at(static_cast<int>(i), j);
    Subspace s;
    s.ambient_ = rows.cols();
    s.basis_ = basis;
    return s;
}

Subspace Subspace::zero(const Fq& f, int ambient) { return span(FqMatrix(f, 0, ambient)); }

Subspace Subspace::full(const Fq& f, int ambient) { return span(FqMatrix::identity(f, ambient)); }

bool Subspace::contains(const FqVec& v) const {
    if (static_cast<int>(v.size()) != ambient_) throw ToricError("vector length mismatch");
    FqMatrix m = basis_.stacked_with(FqMatrix::from_rows(field(), {v}, ambient_));
    return m.rank() == dim();
}

bool Subspace::contains(const Subspace& other) const {
    if (other.ambient_ != ambient_) throw ToricError("ambient mismatch");
    return basis_.stacked_with(other.basis_).rank() == dim();
}

bool Subspace::operator==(const Subspace& o) const {
    return ambient_ == o.ambient_ && basis_ == o.basis_;
}

Subspace Subspace::sum(const Subspace& o) const {
    if (o.ambient_ != ambient_) throw ToricError("ambient mismatch");
    return span(basis_.stacked_with(o.basis_));
}

Subspace Subspace::intersect(const Subspace& o) const {
    if (o.ambient_ != ambient_) throw ToricError("ambient mismatch");
    const Fq& f = field();
    int k = dim(), m = o.dim();
    if (k == 0 || m == 0) return zero(f, ambient_);
    // pairs (x, y) with x*basis = y*o.basis: right kernel of [Uᵗ | -Wᵗ]
    FqMatrix a(f, ambient_, k + m);
    for (int i = 0; i < ambient_; ++i) {
        for (int j = 0; j < k; ++j) a.at(i, j) = basis_.at(j, i);
        for (int j = 0; j < m; ++j) a.at(i, k + j) = -o.basis_.at(j, i);
    }
    FqMatrix ker = a.kernel();
    FqMatrix rows(f, ker.rows(), ambient_);
    for (int i = 0; i < ker.rows(); ++i) {
        FqVec x(k, FqElem::zero(f));
        for (int j = 0; j < k; ++j) x[j] = ker.at(i, j);
        FqVec v = basis_.apply_row(x);
        for (int j = 0; j < ambient_; ++j) rows.at(i, j) = v[j];
    }
    return span(rows);
}

FqVec Subspace::coordinates(const FqVec& v) const {
    const Fq& f = field();
    if (static_cast<int>(v.size()) != ambient_) throw ToricError("vector length mismatch");
    // Solve x * basis = v via the augmented transpose system.
    FqMatrix aug(f, ambient_, dim() + 1);
    for (int i = 0; i < ambient_; ++i) {
        for (int j = 0; j < dim(); ++j) aug.at(i, j) = basis_.at(j, i);
        aug.at(i, dim()) = v[i];
    }
    auto piv = aug.rref();
    FqVec x(dim(), FqElem::zero(f));
    for (size_t pi = 0; pi < piv.size(); ++pi) {
        if (piv[pi] == dim()) throw ToricError("vector outside subspace");
        x[piv[pi]] = aug.at(static_cast<int>(pi), dim());
    }
    return x;
}

std::vector<Subspace> enumerate_subspaces(const Fq& f, int ambient, int k, int64_t budget) {
    if (k < 0 || k > ambient) return {};
    std::vector<Subspace> out;
    if (k == 0) {
        out.push_back(Subspace::zero(f, ambient));
        return out;
    }
    // choose pivot columns, then fill free entries (RREF normal form)
    std::vector<int> piv(k);
    for (int i = 0; i < k; ++i) piv[i] = i;
    auto advance_pivots = [&]() -> bool {
        int i = k - 1;
        while (i >= 0 && piv[i] == ambient - k + i) --i;
        if (i < 0) return false;
        ++piv[i];
        for (int j = i + 1; j < k; ++j) piv[j] = piv[i] + (j - i);
        return true;
    };
    int64_t produced = 0;
    while (true) {
        // free positions: (row i, col c) with c > piv[i], c not a pivot column
        std::vector<std::pair<int, int>> free_pos;
        std::vector<bool> is_piv(ambient, false);
        for (int c : piv) is_piv[c] = true;
        for (int i = 0; i < k; ++i)
            for (int c = piv[i] + 1; c < ambient; ++c)
                if (!is_piv[c]) free_pos.emplace_back(i, c);
        int64_t count = 1;
        for (size_t t = 0; t < free_pos.size(); ++t) {
            count *= f.size();
            if (count > budget) throw ToricError("subspace enumeration exceeds budget");
        }
        for (int64_t code = 0; code < count; ++code) {
            if (++produced > budget) throw ToricError("subspace enumeration exceeds budget");
            FqMatrix m(f, k, ambient);
            for (int i = 0; i < k; ++i) m.at(i, piv[i]) = FqElem::one(f);
            int64_t v = code;
            for (auto& [ri, ci] : free_pos) {
                m.at(ri, ci) = FqElem::by_index(f, v % f.size());
                v /= f.size();
            }
            out.push_back(Subspace::span(m));
        }
        if (!advance_pivots()) break;
    }
    return out;
}

}  // namespace toricfs
