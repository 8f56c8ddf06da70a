#include "toricfs/intlin.hpp"

#include <cstdlib>
#include <numeric>

namespace toricfs {

namespace {

void check_mul(int64_t a, int64_t b) {
    if (a == 0 || b == 0) return;
    if (std::abs(a) > INT64_MAX / 2 / std::abs(b)) throw ToricError("integer overflow in lattice arithmetic");
}

int64_t mul(int64_t a, int64_t b) {
    check_mul(a, b);
    return a * b;
}

}  // namespace

int64_t pairing(const IntVec& chi, const IntVec& v) {
    if (chi.size() != v.size()) throw ToricError("pairing arity mismatch");
    int64_t s = 0;
    for (size_t i = 0; i < chi.size(); ++i) s += mul(chi[i], v[i]);
    return s;
}

int64_t gcd64(int64_t a, int64_t b) {
    a = std::abs(a);
    b = std::abs(b);
    while (b) {
        int64_t t = a % b;
        a = b;
        b = t;
    }
    return a;
}

bool is_primitive(const IntVec& v) {
    int64_t g = 0;
    for (int64_t x : v) g = gcd64(g, x);
    return g == 1;
}

int64_t int_det(const IntMat& m) {
    int n = static_cast<int>(m.size());
    for (auto& row : m)
        if (static_cast<int>(row.size()) != n) throw ToricError("determinant of non-square matrix");
    if (n == 0) return 1;
    // Bareiss fraction-free elimination
    IntMat a = m;
    int64_t prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (a[k][k] == 0) {
            int sel = -1;
            for (int i = k + 1; i < n; ++i)
                if (a[i][k] != 0) {
                    sel = i;
                    break;
                }
            if (sel < 0) return 0;
            std::swap(a[k], a[sel]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j) {
                int64_t num = mul(a[i][j], a[k][k]) - mul(a[i][k], a[k][j]);
                a[i][j] = num / prev;  // exact by Bareiss
            }
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    return sign * a[n - 1][n - 1];
}

IntMat unimodular_inverse(const IntMat& m) {
    int n = static_cast<int>(m.size());
    int64_t d = int_det(m);
    if (d != 1 && d != -1) throw ToricError("matrix is not unimodular");
    // adjugate via cofactors; n is small (lattice rank)
    IntMat inv(n, IntVec(n, 0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            IntMat minor;
            minor.reserve(n - 1);
            for (int r = 0; r < n; ++r) {
                if (r == i) continue;
                IntVec row;
                row.reserve(n - 1);
                for (int c = 0; c < n; ++c)
                    if (c != j) row.push_back(m[r][c]);
                minor.push_back(std::move(row));
            }
            int64_t cof = int_det(minor);
            if ((i + j) % 2) cof = -cof;
            inv[j][i] = cof * d;  // adj/det with det = ±1
        }
    return inv;
}

namespace {

// Column-style Hermite reduction: returns unimodular U (n x n) with
// rows * U = [L | 0], L lower triangular k x k.
void column_hnf(const IntMat& rows, int n, IntMat& u, IntMat& l) {
    int k = static_cast<int>(rows.size());
    IntMat a = rows;
    u.assign(n, IntVec(n, 0));
    for (int i = 0; i < n; ++i) u[i][i] = 1;
    auto col_sub = [&](int dst, int src, int64_t q) {  // col dst -= q * col src
        for (int i = 0; i < k; ++i) a[i][dst] -= mul(q, a[i][src]);
        for (int i = 0; i < n; ++i) u[i][dst] -= mul(q, u[i][src]);
    };
    auto col_swap = [&](int c1, int c2) {
        for (int i = 0; i < k; ++i) std::swap(a[i][c1], a[i][c2]);
        for (int i = 0; i < n; ++i) std::swap(u[i][c1], u[i][c2]);
    };
    int col = 0;
    for (int row = 0; row < k; ++row) {
        // gcd sweep across columns col..n-1 on this row
        while (true) {
            int nonzero = -1;
            for (int c = col; c < n; ++c)
                if (a[row][c] != 0 && (nonzero < 0 || std::abs(a[row][c]) < std::abs(a[row][nonzero])))
                    nonzero = c;
            if (nonzero < 0) throw ToricError("rows are not linearly independent");
            col_swap(col, nonzero);
            bool done = true;
            for (int c = col + 1; c < n; ++c) {
                if (a[row][c] == 0) continue;
                int64_t q = a[row][c] / a[row][col];
                col_sub(c, col, q);
                if (a[row][c] != 0) done = false;
            }
            if (done) break;
        }
        if (a[row][col] < 0) {
            for (int i = 0; i < k; ++i) a[i][col] = -a[i][col];
            for (int i = 0; i < n; ++i) u[i][col] = -u[i][col];
        }
        ++col;
    }
    l.assign(k, IntVec(k, 0));
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) l[i][j] = a[i][j];
}

}  // namespace

bool spans_saturated_sublattice(const IntMat& rows, int n) {
    if (rows.empty()) return true;
    for (auto& r : rows)
        if (static_cast<int>(r.size()) != n) throw ToricError("row arity mismatch");
    IntMat u, l;
    try {
        column_hnf(rows, n, u, l);
    } catch (const ToricError&) {
        return false;  // dependent rows
    }
    return std::abs(int_det(l)) == 1;
}

IntMat unimodular_completion(const IntMat& rows, int n) {
    int k = static_cast<int>(rows.size());
    if (k > n) throw ToricError("more rows than ambient rank");
    if (k == 0) {
        IntMat id(n, IntVec(n, 0));
        for (int i = 0; i < n; ++i) id[i][i] = 1;
        return id;
    }
    IntMat u, l;
    column_hnf(rows, n, u, l);
    if (std::abs(int_det(l)) != 1)
        throw ToricError("rows do not extend to a lattice basis");
    // rows * U = [L|0] with L unimodular => B = U^{-1}; rows span the lattice
    // of B's first k rows, so [rows; last n-k rows of B] is unimodular.
    IntMat b = unimodular_inverse(u);
    IntMat out;
    for (int i = k; i < n; ++i) out.push_back(b[i]);
    // sanity: the assembled matrix must be unimodular
    IntMat full = rows;
    for (auto& r : out) full.push_back(r);
    int64_t d = int_det(full);
    if (d != 1 && d != -1) throw ToricError("internal: completion failed");
    return out;
}

}  // namespace toricfs
