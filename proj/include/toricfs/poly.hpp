#pragma once

#include <map>
#include <vector>

#include "toricfs/gf.hpp"

namespace toricfs {

// Dense univariate polynomial over GF(p^d).
class UPoly {
public:
    explicit UPoly(const Fq& f) : f_(&f) {}
    UPoly(const Fq& f, std::vector<FqElem> coeffs);
    static UPoly zero(const Fq& f) { return UPoly(f); }
    static UPoly constant(const Fq& f, const FqElem& c);
    static UPoly x(const Fq& f);

    const Fq& field() const;
    int deg() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
    bool is_zero() const { return c_.empty(); }
    FqElem coeff(int i) const;
    FqElem lead() const;
    const std::vector<FqElem>& coeffs() const { return c_; }

    UPoly operator+(const UPoly& o) const;
    UPoly operator-(const UPoly& o) const;
    UPoly operator*(const UPoly& o) const;
    UPoly scaled(const FqElem& s) const;
    std::pair<UPoly, UPoly> divrem(const UPoly& d) const;
    UPoly operator/(const UPoly& d) const { return divrem(d).first; }
    UPoly operator%(const UPoly& d) const { return divrem(d).second; }
    bool operator==(const UPoly& o) const;

    UPoly monic() const;
    UPoly derivative() const;
    UPoly pow(int64_t e) const;
    FqElem eval(const FqElem& x) const;
    std::string to_string() const;

private:
    const Fq* f_;
    std::vector<FqElem> c_;  // c_[i] of x^i, no trailing zeros
    void trim();
};

// Monic gcd; gcd(0,0) = 0.
UPoly poly_gcd(const UPoly& a, const UPoly& b);
bool is_squarefree(const UPoly& a);

// Multivariate Laurent polynomial: exponent vector -> nonzero coefficient.
class LPoly {
public:
    LPoly(const Fq& f, int nvars) : f_(&f), nvars_(nvars) {}
    static LPoly monomial(const Fq& f, const std::vector<int64_t>& exps, const FqElem& c);
    static LPoly constant(const Fq& f, int nvars, const FqElem& c);
    static LPoly one(const Fq& f, int nvars) { return constant(f, nvars, FqElem::one(f)); }

    const Fq& field() const;
    int nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    int n_terms() const { return static_cast<int>(terms_.size()); }
    const std::map<std::vector<int64_t>, FqElem>& terms() const { return terms_; }
    FqElem coeff(const std::vector<int64_t>& exps) const;

    void add_term(const std::vector<int64_t>& exps, const FqElem& c);
    LPoly operator+(const LPoly& o) const;
    LPoly operator-(const LPoly& o) const;
    LPoly operator*(const LPoly& o) const;
    LPoly scaled(const FqElem& s) const;
    LPoly pow(int64_t e) const;
    bool operator==(const LPoly& o) const;

    // Monomial substitution u_i -> prod_j v_j^(A[i][j]): exponent rows map by A.
    LPoly subst_exponents(const std::vector<std::vector<int64_t>>& a, int out_vars) const;
    bool is_constant() const;
    FqElem constant_term() const;
    std::string to_string() const;

private:
    const Fq* f_;
    int nvars_;
    std::map<std::vector<int64_t>, FqElem> terms_;
};

}  // namespace toricfs
