#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace toricfs {

// Raised on any violated precondition or inconsistent input.
struct ToricError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

constexpr int kMaxFieldDegree = 8;

// Descriptor of the finite field GF(p^d), represented as GF(p)[x]/(m) where m
// is the canonical modulus: the lexicographically least monic irreducible of
// degree d, coefficient tuple ordered (a_{d-1}, ..., a_0).  Descriptors are
// interned; element ops compare descriptor pointers for field identity.
class Fq {
public:
    static const Fq& get(int64_t p, int d);

    int64_t p() const { return p_; }
    int d() const { return d_; }
    int64_t size() const { return size_; }  // p^d
    // modulus coefficients m[0..d], m[i] of x^i, m[d] = 1
    const std::vector<int64_t>& modulus() const { return mod_; }
    std::string name() const;

    Fq(const Fq&) = delete;
    Fq& operator=(const Fq&) = delete;

private:
    Fq(int64_t p, int d);
    int64_t p_;
    int d_;
    int64_t size_;
    std::vector<int64_t> mod_;
};

// Element of GF(p^d): residue with coefficients c[i] of x^i, 0 <= c[i] < p.
class FqElem {
public:
    FqElem() : f_(nullptr), c_{} {}
    FqElem(const Fq& f, int64_t value);  // value mod p as a constant

    static FqElem zero(const Fq& f) { return FqElem(f, 0); }
    static FqElem one(const Fq& f) { return FqElem(f, 1); }
    // Enumeration order: index = sum c_i p^i, 0 <= index < p^d.
    static FqElem by_index(const Fq& f, int64_t index);
    static FqElem from_coeffs(const Fq& f, const std::vector<int64_t>& c);

    const Fq& field() const;
    bool is_zero() const;
    bool is_one() const;
    int64_t index() const;
    std::vector<int64_t> coeffs() const;
    // Constant elements report their value; non-constant ones throw.
    int64_t as_int() const;

    FqElem operator+(const FqElem& o) const;
    FqElem operator-(const FqElem& o) const;
    FqElem operator-() const;
    FqElem operator*(const FqElem& o) const;
    FqElem operator/(const FqElem& o) const;
    FqElem& operator+=(const FqElem& o) { return *this = *this + o; }
    FqElem& operator-=(const FqElem& o) { return *this = *this - o; }
    FqElem& operator*=(const FqElem& o) { return *this = *this * o; }
    bool operator==(const FqElem& o) const;
    bool operator!=(const FqElem& o) const { return !(*this == o); }

    FqElem inverse() const;
    FqElem pow(int64_t e) const;  // negative e allowed for nonzero elements
    // Unique y with y^p = x: y = x^(p^(d-1)).
    FqElem frobenius_root() const;

    std::string to_string() const;

private:
    const Fq* f_;
    std::array<int64_t, kMaxFieldDegree> c_;
    void check_same(const FqElem& o) const;
};

// Canonical embedding GF(p^a) -> GF(p^b) for a | b: sends the generator to
// the first root (enumeration order) of the source modulus in the target.
FqElem embed(const FqElem& x, const Fq& target);

}  // namespace toricfs
