#include "toricfs/poly.hpp"

#include <sstream>

namespace toricfs {

UPoly::UPoly(const Fq& f, std::vector<FqElem> coeffs) : f_(&f), c_(std::move(coeffs)) {
    for (auto& e : c_)
        if (&e.field() != &f) throw ToricError("coefficient field mismatch");
    trim();
}

UPoly UPoly::constant(const Fq& f, const FqElem& c) { return UPoly(f, {c}); }

UPoly UPoly::x(const Fq& f) { return UPoly(f, {FqElem::zero(f), FqElem::one(f)}); }

const Fq& UPoly::field() const {
    if (!f_) throw ToricError("use of default-constructed polynomial");
    return *f_;
}

void UPoly::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

FqElem UPoly::coeff(int i) const {
    if (i < 0 || i >= static_cast<int>(c_.size())) return FqElem::zero(*f_);
    return c_[i];
}

FqElem UPoly::lead() const {
    if (is_zero()) throw ToricError("leading coefficient of zero polynomial");
    return c_.back();
}

UPoly UPoly::operator+(const UPoly& o) const {
    if (f_ != o.f_) throw ToricError("polynomial field mismatch");
    std::vector<FqElem> r(std::max(c_.size(), o.c_.size()), FqElem::zero(*f_));
    for (size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
    return UPoly(*f_, std::move(r));
}

UPoly UPoly::operator-(const UPoly& o) const {
    if (f_ != o.f_) throw ToricError("polynomial field mismatch");
    std::vector<FqElem> r(std::max(c_.size(), o.c_.size()), FqElem::zero(*f_));
    for (size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) r[i] -= o.c_[i];
    return UPoly(*f_, std::move(r));
}

UPoly UPoly::operator*(const UPoly& o) const {
    if (f_ != o.f_) throw ToricError("polynomial field mismatch");
    if (is_zero() || o.is_zero()) return zero(*f_);
    std::vector<FqElem> r(c_.size() + o.c_.size() - 1, FqElem::zero(*f_));
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].is_zero()) continue;
        for (size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
    }
    return UPoly(*f_, std::move(r));
}

UPoly UPoly::scaled(const FqElem& s) const {
    std::vector<FqElem> r = c_;
    for (auto& e : r) e *= s;
    return UPoly(*f_, std::move(r));
}

std::pair<UPoly, UPoly> UPoly::divrem(const UPoly& d) const {
    if (f_ != d.f_) throw ToricError("polynomial field mismatch");
    if (d.is_zero()) throw ToricError("polynomial division by zero");
    UPoly q = zero(*f_), r = *this;
    FqElem inv_lead = d.lead().inverse();
    while (!r.is_zero() && r.deg() >= d.deg()) {
        int shift = r.deg() - d.deg();
        FqElem c = r.lead() * inv_lead;
        std::vector<FqElem> term(shift + 1, FqElem::zero(*f_));
        term[shift] = c;
        UPoly t(*f_, std::move(term));
        q = q + t;
        r = r - t * d;
    }
    return {q, r};
}

bool UPoly::operator==(const UPoly& o) const {
    if (f_ != o.f_ || c_.size() != o.c_.size()) return false;
    for (size_t i = 0; i < c_.size(); ++i)
        if (c_[i] != o.c_[i]) return false;
    return true;
}

UPoly UPoly::monic() const {
    if (is_zero()) return *this;
    return scaled(lead().inverse());
}

UPoly UPoly::derivative() const {
    if (deg() < 1) return zero(*f_);
    std::vector<FqElem> r(c_.size() - 1, FqElem::zero(*f_));
    for (size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * FqElem(*f_, static_cast<int64_t>(i));
    return UPoly(*f_, std::move(r));
}

UPoly UPoly::pow(int64_t e) const {
    if (e < 0) throw ToricError("negative polynomial power");
    UPoly r = constant(*f_, FqElem::one(*f_));
    UPoly base = *this;
    while (e > 0) {
        if (e & 1) r = r * base;
        base = base * base;
        e >>= 1;
    }
    return r;
}

FqElem UPoly::eval(const FqElem& x) const {
    FqElem acc = FqElem::zero(*f_);
    for (int i = deg(); i >= 0; --i) acc = acc * x + c_[i];
    return acc;
}

std::string UPoly::to_string() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = deg(); i >= 0; --i) {
        if (c_[i].is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        os << c_[i].to_string();
        if (i > 0) os << "*x^" << i;
    }
    return os.str();
}

UPoly poly_gcd(const UPoly& a, const UPoly& b) {
    UPoly x = a, y = b;
    while (!y.is_zero()) {
        UPoly r = x % y;
        x = y;
        y = r;
    }
    return x.monic();
}

bool is_squarefree(const UPoly& a) {
    if (a.is_zero()) return false;
    if (a.deg() == 0) return true;
    UPoly d = a.derivative();
    // In char p the derivative of a p-th power vanishes; a nonzero poly with
    // zero derivative is a p-th power, hence not squarefree (deg >= 1).
    if (d.is_zero()) return false;
    return poly_gcd(a, d).deg() == 0;
}

LPoly LPoly::monomial(const Fq& f, const std::vector<int64_t>& exps, const FqElem& c) {
    LPoly r(f, static_cast<int>(exps.size()));
    r.add_term(exps, c);
    return r;
}

LPoly LPoly::constant(const Fq& f, int nvars, const FqElem& c) {
    LPoly r(f, nvars);
    r.add_term(std::vector<int64_t>(nvars, 0), c);
    return r;
}

const Fq& LPoly::field() const {
    if (!f_) throw ToricError("use of default-constructed polynomial");
    return *f_;
}

FqElem LPoly::coeff(const std::vector<int64_t>& exps) const {
    auto it = terms_.find(exps);
    return it == terms_.end() ? FqElem::zero(*f_) : it->second;
}

void LPoly::add_term(const std::vector<int64_t>& exps, const FqElem& c) {
    if (static_cast<int>(exps.size()) != nvars_) throw ToricError("exponent arity mismatch");
    if (&c.field() != f_) throw ToricError("coefficient field mismatch");
    if (c.is_zero()) return;
    auto it = terms_.find(exps);
    if (it == terms_.end()) {
        terms_.emplace(exps, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

LPoly LPoly::operator+(const LPoly& o) const {
    if (f_ != o.f_ || nvars_ != o.nvars_) throw ToricError("laurent polynomial mismatch");
    LPoly r = *this;
    for (auto& [e, c] : o.terms_) r.add_term(e, c);
    return r;
}

LPoly LPoly::operator-(const LPoly& o) const {
    if (f_ != o.f_ || nvars_ != o.nvars_) throw ToricError("laurent polynomial mismatch");
    LPoly r = *this;
    for (auto& [e, c] : o.terms_) r.add_term(e, -c);
    return r;
}

LPoly LPoly::operator*(const LPoly& o) const {
    if (f_ != o.f_ || nvars_ != o.nvars_) throw ToricError("laurent polynomial mismatch");
    LPoly r(*f_, nvars_);
    for (auto& [e1, c1] : terms_)
        for (auto& [e2, c2] : o.terms_) {
            std::vector<int64_t> e(nvars_);
            for (int i = 0; i < nvars_; ++i) e[i] = e1[i] + e2[i];
            r.add_term(e, c1 * c2);
        }
    return r;
}

LPoly LPoly::scaled(const FqElem& s) const {
    LPoly r(*f_, nvars_);
    for (auto& [e, c] : terms_) r.add_term(e, c * s);
    return r;
}

LPoly LPoly::pow(int64_t e) const {
    if (e < 0) {
        if (terms_.size() != 1) throw ToricError("negative power of non-monomial");
        auto& [exps, c] = *terms_.begin();
        std::vector<int64_t> ne(nvars_);
        for (int i = 0; i < nvars_; ++i) ne[i] = exps[i] * e;
        return monomial(*f_, ne, c.pow(e));
    }
    LPoly r = one(*f_, nvars_);
    LPoly base = *this;
    while (e > 0) {
        if (e & 1) r = r * base;
        base = base * base;
        e >>= 1;
    }
    return r;
}

bool LPoly::operator==(const LPoly& o) const {
    if (f_ != o.f_ || nvars_ != o.nvars_ || terms_.size() != o.terms_.size()) return false;
    auto it = terms_.begin(), jt = o.terms_.begin();
    for (; it != terms_.end(); ++it, ++jt)
        if (it->first != jt->first || it->second != jt->second) return false;
    return true;
}

LPoly LPoly::subst_exponents(const std::vector<std::vector<int64_t>>& a, int out_vars) const {
    if (static_cast<int>(a.size()) != nvars_) throw ToricError("substitution matrix arity mismatch");
    for (auto& row : a)
        if (static_cast<int>(row.size()) != out_vars) throw ToricError("substitution matrix shape");
    LPoly r(*f_, out_vars);
    for (auto& [e, c] : terms_) {
        std::vector<int64_t> ne(out_vars, 0);
        for (int i = 0; i < nvars_; ++i)
            for (int j = 0; j < out_vars; ++j) ne[j] += e[i] * a[i][j];
        r.add_term(ne, c);
    }
    return r;
}

bool LPoly::is_constant() const {
    if (terms_.empty()) return true;
    if (terms_.size() != 1) return false;
    for (int64_t e : terms_.begin()->first)
        if (e != 0) return false;
    return true;
}

FqElem LPoly::constant_term() const {
    return coeff(std::vector<int64_t>(nvars_, 0));
}

std::string LPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [e, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << c.to_string();
        for (int i = 0; i < nvars_; ++i)
            if (e[i] != 0) os << "*u" << (i + 1) << "^" << e[i];
    }
    return os.str();
}

}  // namespace toricfs
