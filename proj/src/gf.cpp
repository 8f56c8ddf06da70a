#include "toricfs/gf.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <sstream>

namespace toricfs {

namespace {

int64_t mod_pos(int64_t a, int64_t p) {
    int64_t r = a % p;
    return r < 0 ? r + p : r;
}

// Dense polynomial helpers over GF(p), coefficients in [0, p).  Local to the
// modulus search; the public polynomial type lives in poly.hpp.
using PolyV = std::vector<int64_t>;

void trim(PolyV& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

PolyV mul_mod(const PolyV& a, const PolyV& b, const PolyV& m, int64_t p) {
    if (a.empty() || b.empty()) return {};
    PolyV r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    // reduce by monic m
    while (r.size() >= m.size()) {
        int64_t lead = r.back();
        size_t shift = r.size() - m.size();
        if (lead != 0)
            for (size_t i = 0; i < m.size(); ++i)
                r[shift + i] = mod_pos(r[shift + i] - lead * m[i], p);
        r.pop_back();
        trim(r);
        if (r.size() < m.size()) break;
    }
    trim(r);
    return r;
}

PolyV pow_mod(PolyV base, int64_t e, const PolyV& m, int64_t p) {
    PolyV r{1};
    while (e > 0) {
        if (e & 1) r = mul_mod(r, base, m, p);
        base = mul_mod(base, base, m, p);
        e >>= 1;
    }
    return r;
}

PolyV gcd_poly(PolyV a, PolyV b, int64_t p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        // a mod b with b made monic on the fly
        int64_t inv_lead = 1;
        {  // Fermat inverse of b's lead in GF(p)
            int64_t l = b.back(), e = p - 2, acc = 1;
            while (e > 0) {
                if (e & 1) acc = acc * l % p;
                l = l * l % p;
                e >>= 1;
            }
            inv_lead = acc;
        }
        PolyV r = a;
        while (r.size() >= b.size()) {
            trim(r);
            if (r.size() < b.size()) break;
            int64_t q = r.back() * inv_lead % p;
            size_t shift = r.size() - b.size();
            for (size_t i = 0; i < b.size(); ++i)
                r[shift + i] = mod_pos(r[shift + i] - q * b[i], p);
            trim(r);
        }
        a = b;
        b = r;
    }
    return a;
}

// Rabin test: f monic of degree d is irreducible iff x^(p^d) = x mod f and
// gcd(x^(p^(d/q)) - x, f) = 1 for every prime q | d.
bool is_irreducible(const PolyV& f, int64_t p) {
    int d = static_cast<int>(f.size()) - 1;
    if (d < 1) return false;
    if (d == 1) return true;  // monic linear; also keeps x itself as the prime-field modulus
    PolyV x{0, 1};
    auto frob_power = [&](int k) {  // x^(p^k) mod f
        PolyV r = x;
        for (int i = 0; i < k; ++i) r = pow_mod(r, p, f, p);
        return r;
    };
    PolyV xpd = frob_power(d);
    PolyV diff = xpd;
    if (diff.size() < 2) diff.resize(2, 0);
    diff[1] = mod_pos(diff[1] - 1, p);
    trim(diff);
    if (!diff.empty()) return false;
    for (int q = 2; q <= d; ++q) {
        if (d % q != 0) continue;
        bool prime = true;
        for (int t = 2; t * t <= q; ++t)
            if (q % t == 0) prime = false;
        if (!prime) continue;
        PolyV g = frob_power(d / q);
        if (g.size() < 2) g.resize(2, 0);
        g[1] = mod_pos(g[1] - 1, p);
        trim(g);
        if (gcd_poly(g, f, p).size() != 1) return false;
    }
    return true;
}

bool is_prime(int64_t p) {
    if (p < 2) return false;
    for (int64_t t = 2; t * t <= p; ++t)
        if (p % t == 0) return false;
    return true;
}

}  // namespace

Fq::Fq(int64_t p, int d) : p_(p), d_(d) {
    if (!is_prime(p)) throw ToricError("field characteristic must be prime, got " + std::to_string(p));
    if (d < 1 || d > kMaxFieldDegree)
        throw ToricError("field degree out of range [1," + std::to_string(kMaxFieldDegree) + "]");
    size_ = 1;
    for (int i = 0; i < d; ++i) {
        if (size_ > (int64_t(1) << 40) / p) throw ToricError("field too large");
        size_ *= p;
    }
    // lexicographically least (a_{d-1},...,a_0) monic irreducible:
    // enumerate k ascending with a_{d-1} as the most significant base-p digit
    for (int64_t k = 0; k < size_; ++k) {
        PolyV f(d + 1, 0);
        f[d] = 1;
        int64_t v = k;
        for (int i = 0; i < d; ++i) {
            f[i] = v % p;
            v /= p;
        }
        if (is_irreducible(f, p)) {
            mod_ = f;
            break;
        }
    }
    if (mod_.empty()) throw ToricError("internal: no irreducible modulus found");
}

const Fq& Fq::get(int64_t p, int d) {
    static std::mutex mu;
    static std::map<std::pair<int64_t, int>, std::unique_ptr<Fq>> registry;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(p, d);
    auto it = registry.find(key);
    if (it == registry.end())
        it = registry.emplace(key, std::unique_ptr<Fq>(new Fq(p, d))).first;
    return *it->second;
}

std::string Fq::name() const {
    if (d_ == 1) return "GF(" + std::to_string(p_) + ")";
    return "GF(" + std::to_string(p_) + "^" + std::to_string(d_) + ")";
}

FqElem::FqElem(const Fq& f, int64_t value) : f_(&f), c_{} {
    c_[0] = mod_pos(value, f.p());
}

FqElem FqElem::by_index(const Fq& f, int64_t index) {
    if (index < 0 || index >= f.size()) throw ToricError("element index out of range");
    FqElem r(f, 0);
    for (int i = 0; i < f.d(); ++i) {
        r.c_[i] = index % f.p();
        index /= f.p();
    }
    return r;
}

FqElem FqElem::from_coeffs(const Fq& f, const std::vector<int64_t>& c) {
    if (static_cast<int>(c.size()) > f.d())
        throw ToricError("coefficient list longer than field degree");
    FqElem r(f, 0);
    for (size_t i = 0; i < c.size(); ++i) r.c_[i] = mod_pos(c[i], f.p());
    return r;
}

const Fq& FqElem::field() const {
    if (!f_) throw ToricError("use of default-constructed field element");
    return *f_;
}

bool FqElem::is_zero() const {
    field();
    for (int i = 0; i < f_->d(); ++i)
        if (c_[i] != 0) return false;
    return true;
}

bool FqElem::is_one() const {
    field();
    if (c_[0] != 1) return false;
    for (int i = 1; i < f_->d(); ++i)
        if (c_[i] != 0) return false;
    return true;
}

int64_t FqElem::index() const {
    field();
    int64_t r = 0;
    for (int i = f_->d() - 1; i >= 0; --i) r = r * f_->p() + c_[i];
    return r;
}

std::vector<int64_t> FqElem::coeffs() const {
    field();
    return std::vector<int64_t>(c_.begin(), c_.begin() + f_->d());
}

int64_t FqElem::as_int() const {
    field();
    for (int i = 1; i < f_->d(); ++i)
        if (c_[i] != 0) throw ToricError("non-constant field element has no integer value");
    return c_[0];
}

void FqElem::check_same(const FqElem& o) const {
    field();
    o.field();
    if (f_ != o.f_) throw ToricError("field mismatch: " + f_->name() + " vs " + o.f_->name());
}

FqElem FqElem::operator+(const FqElem& o) const {
    check_same(o);
    FqElem r(*f_, 0);
    for (int i = 0; i < f_->d(); ++i) r.c_[i] = mod_pos(c_[i] + o.c_[i], f_->p());
    return r;
}

FqElem FqElem::operator-(const FqElem& o) const {
    check_same(o);
    FqElem r(*f_, 0);
    for (int i = 0; i < f_->d(); ++i) r.c_[i] = mod_pos(c_[i] - o.c_[i], f_->p());
    return r;
}

FqElem FqElem::operator-() const {
    field();
    FqElem r(*f_, 0);
    for (int i = 0; i < f_->d(); ++i) r.c_[i] = mod_pos(-c_[i], f_->p());
    return r;
}

FqElem FqElem::operator*(const FqElem& o) const {
    check_same(o);
    const int d = f_->d();
    const int64_t p = f_->p();
    if (d == 1) {
        FqElem r(*f_, 0);
        r.c_[0] = c_[0] * o.c_[0] % p;
        return r;
    }
    std::array<int64_t, 2 * kMaxFieldDegree> prod{};
    for (int i = 0; i < d; ++i) {
        if (c_[i] == 0) continue;
        for (int j = 0; j < d; ++j) prod[i + j] = (prod[i + j] + c_[i] * o.c_[j]) % p;
    }
    const auto& m = f_->modulus();
    for (int k = 2 * d - 2; k >= d; --k) {
        int64_t lead = prod[k];
        if (lead == 0) continue;
        prod[k] = 0;
        for (int i = 0; i < d; ++i)
            prod[k - d + i] = mod_pos(prod[k - d + i] - lead * m[i], p);
    }
    FqElem r(*f_, 0);
    for (int i = 0; i < d; ++i) r.c_[i] = prod[i];
    return r;
}

FqElem FqElem::operator/(const FqElem& o) const { return *this * o.inverse(); }

bool FqElem::operator==(const FqElem& o) const {
    check_same(o);
    for (int i = 0; i < f_->d(); ++i)
        if (c_[i] != o.c_[i]) return false;
    return true;
}

FqElem FqElem::inverse() const {
    field();
    if (is_zero()) throw ToricError("division by zero in " + f_->name());
    // x^(q-2) = x^{-1}; q <= 2^40 so the exponentiation is cheap
    return pow(f_->size() - 2);
}

FqElem FqElem::pow(int64_t e) const {
    field();
    if (e < 0) return inverse().pow(-e);
    FqElem base = *this;
    FqElem r = FqElem::one(*f_);
    while (e > 0) {
        if (e & 1) r = r * base;
        base = base * base;
        e >>= 1;
    }
    return r;
}

FqElem FqElem::frobenius_root() const {
    field();
    if (f_->d() == 1) return *this;
    int64_t e = 1;
    for (int i = 0; i < f_->d() - 1; ++i) e *= f_->p();
    return pow(e);
}

std::string FqElem::to_string() const {
    field();
    if (f_->d() == 1) return std::to_string(c_[0]);
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < f_->d(); ++i) {
        if (i) os << ",";
        os << c_[i];
    }
    os << "]";
    return os.str();
}

FqElem embed(const FqElem& x, const Fq& target) {
    const Fq& src = x.field();
    if (&src == &target) return x;
    if (src.p() != target.p() || target.d() % src.d() != 0)
        throw ToricError("no embedding " + src.name() + " -> " + target.name());
    if (src.d() == 1) return FqElem(target, x.as_int());

    static std::mutex mu;
    static std::map<std::tuple<int64_t, int, int>, int64_t> root_cache;
    int64_t root_index = -1;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto key = std::make_tuple(src.p(), src.d(), target.d());
        auto it = root_cache.find(key);
        if (it != root_cache.end()) root_index = it->second;
    }
    if (root_index < 0) {
        const auto& m = src.modulus();
        for (int64_t idx = 0; idx < target.size(); ++idx) {
            FqElem cand = FqElem::by_index(target, idx);
            FqElem acc = FqElem::zero(target);
            FqElem pw = FqElem::one(target);
            for (size_t i = 0; i < m.size(); ++i) {
                acc += FqElem(target, m[i]) * pw;
                pw = pw * cand;
            }
            if (acc.is_zero()) {
                root_index = idx;
                break;
            }
        }
        if (root_index < 0) throw ToricError("internal: modulus has no root in extension");
        std::lock_guard<std::mutex> lock(mu);
        root_cache[std::make_tuple(src.p(), src.d(), target.d())] = root_index;
    }
    FqElem r = FqElem::by_index(target, root_index);
    FqElem acc = FqElem::zero(target);
    FqElem pw = FqElem::one(target);
    auto cs = x.coeffs();
    for (size_t i = 0; i < cs.size(); ++i) {
        acc += FqElem(target, cs[i]) * pw;
        pw = pw * r;
    }
    return acc;
}

}  // namespace toricfs
