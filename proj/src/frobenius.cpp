#include "toricfs/frobenius.hpp"

namespace toricfs {

LPoly trace(const LPoly& f) {
    const Fq& k = f.field();
    int64_t p = k.p();
    LPoly out(k, f.nvars());
    for (auto& [e, c] : f.terms()) {
        std::vector<int64_t> j(e.size());
        bool match = true;
        for (size_t t = 0; t < e.size(); ++t) {
            int64_t shifted = e[t] - (p - 1);
            int64_t r = shifted % p;
            if (r < 0) r += p;
            if (r != 0) {
                match = false;
                break;
            }
            j[t] = shifted / p;  // exact: r == 0, so truncation is exact division
        }
        if (match) out.add_term(j, c.frobenius_root());
    }
    return out;
}

LPoly phi_standard(const LPoly& f) {
    const Fq& k = f.field();
    int64_t p = k.p();
    LPoly out(k, f.nvars());
    for (auto& [e, c] : f.terms()) {
        std::vector<int64_t> j(e.size());
        bool divisible = true;
        for (size_t t = 0; t < e.size(); ++t) {
            int64_t r = e[t] % p;
            if (r < 0) r += p;
            if (r != 0) {
                divisible = false;
                break;
            }
            j[t] = e[t] / p;
        }
        if (divisible) out.add_term(j, c.frobenius_root());
    }
    return out;
}

std::optional<std::pair<LPoly, IntVec>> local_V_splitting(const LPoly& a, const IntVec& s) {
    int64_t p = a.field().p();
    IntVec t(s.size());
    for (size_t i = 0; i < s.size(); ++i) {
        if (s[i] < 0) throw ToricError("fiber exponents must be nonnegative");
        if (s[i] % p != 0) return std::nullopt;
        t[i] = s[i] / p;
    }
    return std::make_pair(phi_standard(a), t);
}

namespace {

// scalar * x^expv raised to the k-th power
MonoEntry mono_pow(const MonoEntry& m, int64_t k) {
    MonoEntry r;
    r.scalar = m.scalar.pow(k);
    r.expv = m.expv;
    for (auto& e : r.expv) e *= k;
    return r;
}

MonoEntry mono_mul(const MonoEntry& a, const MonoEntry& b) {
    MonoEntry r;
    r.scalar = a.scalar * b.scalar;
    r.expv = a.expv;
    for (size_t i = 0; i < r.expv.size(); ++i) r.expv[i] += b.expv[i];
    return r;
}

bool phi_kills(const MonoEntry& m, int64_t p) {
    if (m.scalar.is_zero()) return true;
    for (int64_t e : m.expv)
        if (((e % p) + p) % p != 0) return true;
    return false;
}

}  // namespace

bool lemma_le_condition(const std::vector<std::vector<MonoEntry>>& a, const Fq& f) {
    int64_t p = f.p();
    if (a.size() != 2 || a[0].size() != 2 || a[1].size() != 2)
        throw ToricError("transition matrix must be 2x2");
    // invertibility: det must be a nonzero monomial
    {
        LPoly det(f, static_cast<int>(a[0][0].expv.size()));
        MonoEntry d1 = mono_mul(a[0][0], a[1][1]);
        MonoEntry d2 = mono_mul(a[0][1], a[1][0]);
        if (!d1.scalar.is_zero()) det.add_term(d1.expv, d1.scalar);
        if (!d2.scalar.is_zero()) det.add_term(d2.expv, FqElem::zero(f) - d2.scalar);
        if (det.is_zero() || det.n_terms() > 1)
            throw ToricError("transition matrix is not invertible as a monomial transition");
    }
    for (int col = 0; col < 2; ++col)
        for (int64_t s = 1; s <= p - 1; ++s) {
            MonoEntry prod = mono_mul(mono_pow(a[0][col], s), mono_pow(a[1][col], p - s));
            if (!phi_kills(prod, p)) return false;
        }
    return true;
}

LPoly iota_eval(const OmegaSection& psi, const LPoly& f) {
    return trace(f * psi.coeff);
}

bool omega_overlap_consistent(const Fan& fan, const SplittingCandidate& cand) {
    if (static_cast<int>(cand.charts.size()) != fan.n_max_cones())
        throw ToricError("one chart section per maximal cone required");
    int n = fan.rank();
    const Fq* fld = nullptr;
    for (auto& ch : cand.charts) {
        if (ch.coeff.nvars() != n) throw ToricError("chart coefficient has wrong variable count");
        if (!fld) fld = &ch.coeff.field();
        else if (fld != &ch.coeff.field()) throw ToricError("chart coefficient fields differ");
    }
    int64_t p = fld->p();
    for (int s = 0; s < fan.n_max_cones(); ++s)
        for (int t = 0; t < fan.n_max_cones(); ++t) {
            if (s == t) continue;
            if (fan.cone_dim(s) != n || fan.cone_dim(t) != n)
                throw ToricError("overlap check needs full-dimensional cones");
            // tau-coordinate i as a monomial in sigma-coordinates:
            // A[i][j] = <u^tau_i, sigma_j>
            const IntMat& ut = fan.cone_duals(t);
            const auto& cs = fan.max_cone(s);
            IntMat a(n, IntVec(n));
            IntVec ones_a(n, 0);  // exponent of prod_i u^tau_i in sigma coords
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    a[i][j] = pairing(ut[i], fan.ray(cs[j]));
                    ones_a[j] += a[i][j];
                }
            // omega_tau^{1-p} = det(A)^{1-p} (prod u^tau / prod u^sigma)^{1-p} omega_sigma^{1-p}
            LPoly mapped = cand.charts[t].coeff.subst_exponents(a, n);
            IntVec shift(n);
            for (int j = 0; j < n; ++j) shift[j] = (1 - p) * (ones_a[j] - 1);
            FqElem detf = FqElem(*fld, int_det(a)).pow(1 - p);
            LPoly factor = LPoly::monomial(*fld, shift, detf);
            if (!(mapped * factor == cand.charts[s].coeff)) return false;
        }
    return true;
}

}  // namespace toricfs
