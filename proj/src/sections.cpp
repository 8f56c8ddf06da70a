#include "toricfs/sections.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace toricfs {

Subspace weight_space(const ToricBundle& b, const IntVec& chi) {
    if (static_cast<int>(chi.size()) != b.fan().rank()) throw ToricError("character rank mismatch");
    Subspace acc = Subspace::full(b.field(), b.rank());
    for (int r = 0; r < b.fan().n_rays(); ++r) {
        acc = acc.intersect(b.filtration(r).at(pairing(chi, b.fan().ray(r))));
        if (acc.dim() == 0) break;
    }
    return acc;
}

namespace {

// One linear constraint sum_j a[j] x_j <= c.
struct Ineq {
    IntVec a;
    int64_t c;
};

int64_t checked_i64(__int128 v, const char* what) {
    if (v > INT64_MAX || v < INT64_MIN) throw ToricError(std::string("integer overflow in ") + what);
    return static_cast<int64_t>(v);
}

// Fourier-Motzkin elimination of variable e from the system.
std::vector<Ineq> fm_eliminate(const std::vector<Ineq>& sys, int e) {
    std::vector<Ineq> out;
    std::vector<const Ineq*> pos, neg;
    for (auto& q : sys) {
        if (q.a[e] > 0) pos.push_back(&q);
        else if (q.a[e] < 0) neg.push_back(&q);
        else out.push_back(q);
    }
    for (auto* pq : pos)
        for (auto* nq : neg) {
            // (-nq->a[e]) * pq + (pq->a[e]) * nq has zero e-coefficient
            __int128 wp = -nq->a[e], wn = pq->a[e];
            Ineq comb;
            comb.a.resize(pq->a.size());
            for (size_t j = 0; j < pq->a.size(); ++j)
                comb.a[j] = checked_i64(wp * pq->a[j] + wn * nq->a[j], "bound projection");
            comb.c = checked_i64(wp * pq->c + wn * nq->c, "bound projection");
            out.push_back(std::move(comb));
        }
    return out;
}

// Integer bounds of x_k over the polyhedron; throws if unbounded on either
// side or reports emptiness through lo > hi.
std::pair<int64_t, int64_t> coordinate_bounds(std::vector<Ineq> sys, int k, int n) {
    for (int e = 0; e < n; ++e)
        if (e != k) sys = fm_eliminate(sys, e);
    bool have_lo = false, have_hi = false;
    int64_t lo = 0, hi = 0;
    for (auto& q : sys) {
        int64_t t = q.a[k];
        if (t == 0) {
            if (q.c < 0) return {1, 0};  // infeasible: 0 <= c fails
            continue;
        }
        if (t > 0) {
            // x <= floor(c / t)
            int64_t bound = q.c >= 0 ? q.c / t : -((-q.c + t - 1) / t);
            hi = have_hi ? std::min(hi, bound) : bound;
            have_hi = true;
        } else {
            // x >= ceil(c / t), t < 0
            int64_t tt = -t, cc = -q.c;  // x >= cc/tt
            int64_t bound = cc >= 0 ? (cc + tt - 1) / tt : -((-cc) / tt);
            lo = have_lo ? std::max(lo, bound) : bound;
            have_lo = true;
        }
    }
    if (!have_lo || !have_hi)
        throw ToricError("weight support is unbounded; the fan is not complete");
    return {lo, hi};
}

}  // namespace

std::vector<WeightSpace> weight_support(const ToricBundle& b) {
    if (!b.fan().is_complete())
        throw ToricError("weight support requires a complete fan");
    int n = b.fan().rank();
    std::vector<Ineq> sys;
    for (int r = 0; r < b.fan().n_rays(); ++r)
        sys.push_back(Ineq{b.fan().ray(r), b.filtration(r).n_max()});
    std::vector<std::pair<int64_t, int64_t>> box;
    for (int k = 0; k < n; ++k) {
        auto [lo, hi] = coordinate_bounds(sys, k, n);
        if (lo > hi) return {};
        box.emplace_back(lo, hi);
    }
    std::vector<WeightSpace> out;
    IntVec chi(n);
    std::function<void(int)> scan = [&](int k) {
        if (k == n) {
            Subspace w = weight_space(b, chi);
            if (w.dim() > 0) out.push_back(WeightSpace{chi, w});
            return;
        }
        for (int64_t v = box[k].first; v <= box[k].second; ++v) {
            chi[k] = v;
            scan(k + 1);
        }
    };
    scan(0);
    return out;
}

int64_t h0(const ToricBundle& b) {
    int64_t total = 0;
    for (auto& w : weight_support(b)) total += w.space.dim();
    return total;
}

ChartSection chart_restriction(const ToricBundle& b, const IntVec& chi, const FqVec& v,
                               int cone_id) {
    const Fq& f = b.field();
    if (static_cast<int>(v.size()) != b.rank()) throw ToricError("fiber vector rank mismatch");
    if (!weight_space(b, chi).contains(v))
        throw ToricError("vector is not a weight-space member for this character");
    FqMatrix rows;
    std::vector<IntVec> chars;
    b.decomp(cone_id).eigen_rows(f, b.rank(), rows, chars);
    FqVec coords = rows.inverse().apply_row(v);  // v = coords * rows
    const auto& cone = b.fan().max_cone(cone_id);
    ChartSection cs;
    cs.cone_id = cone_id;
    for (int i = 0; i < b.rank(); ++i) {
        if (coords[i].is_zero()) continue;
        ChartTerm t;
        t.eigen_index = i;
        t.coeff = coords[i];
        for (int j : cone) {
            int64_t e = pairing(chars[i], b.fan().ray(j)) - pairing(chi, b.fan().ray(j));
            if (e < 0) throw ToricError("internal: negative chart exponent on a global section");
            t.exponents.push_back(e);
        }
        cs.terms.push_back(std::move(t));
    }
    return cs;
}

}  // namespace toricfs
