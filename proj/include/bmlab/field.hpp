#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace bmlab {

// GF(q) for prime powers q <= 256, table driven.
//
// Element encoding: a polynomial c_0 + c_1 x + ... + c_{k-1} x^{k-1} over
// GF(p) is stored as the integer sum c_i p^i, so 0 and 1 are the additive and
// multiplicative identities and the prime subfield is {0..p-1}.  Non-prime
// fields use the Conway polynomial for q; modulus() exposes it.
class GF {
public:
    static const GF& get(int q);  // cached instance; throws InvalidArgument
    static bool supported(int q);
    // Every supported order in increasing order.
    static std::vector<int> supported_orders();

    int q() const { return q_; }
    int p() const { return p_; }
    int degree() const { return k_; }
    // Modulus coefficients, constant term first (empty for prime fields).
    const std::vector<int>& modulus() const { return modulus_; }
    std::string modulus_string() const;

    int add(int a, int b) const { return add_[a * q_ + b]; }
    int sub(int a, int b) const { return add_[a * q_ + neg_[b]]; }
    int neg(int a) const { return neg_[a]; }
    int mul(int a, int b) const { return mul_[a * q_ + b]; }
    int inv(int a) const;  // throws InvalidArgument on 0
    int div(int a, int b) const { return mul(a, inv(b)); }
    // Image of an integer in the prime subfield.
    int from_int(long long v) const;
    int pow(int a, long long e) const;
    // Multiplicative order of a nonzero element.
    int order(int a) const;

private:
    explicit GF(int q);
    int q_, p_, k_;
    std::vector<int> modulus_;
    std::vector<std::uint8_t> add_, mul_, neg_, inv_;
};

// Exact rational with 64-bit numerator and denominator.  Arithmetic that
// would overflow throws InvalidArgument; the rational backend is only used
// for checking small explicit matrices.
struct Rational {
    long long num = 0;
    long long den = 1;

    Rational() = default;
    Rational(long long n) : num(n), den(1) {}  // NOLINT(google-explicit-constructor)
    Rational(long long n, long long d);

    friend Rational operator+(const Rational& a, const Rational& b);
    friend Rational operator-(const Rational& a, const Rational& b);
    friend Rational operator*(const Rational& a, const Rational& b);
    friend Rational operator/(const Rational& a, const Rational& b);
    Rational operator-() const { return Rational(-num, den); }
    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num == b.num && a.den == b.den;
    }
    friend bool operator<(const Rational& a, const Rational& b);
    std::string str() const;
    static Rational parse(const std::string& s);
};

// Field contexts used by the templated linear algebra.  Both expose the same
// small interface over their element type.
struct GFField {
    using Elem = int;
    const GF* f = nullptr;

    GFField() = default;
    explicit GFField(const GF& field) : f(&field) {}
    explicit GFField(int q) : f(&GF::get(q)) {}

    Elem zero() const { return 0; }
    Elem one() const { return 1; }
    bool is_zero(Elem a) const { return a == 0; }
    Elem add(Elem a, Elem b) const { return f->add(a, b); }
    Elem sub(Elem a, Elem b) const { return f->sub(a, b); }
    Elem neg(Elem a) const { return f->neg(a); }
    Elem mul(Elem a, Elem b) const { return f->mul(a, b); }
    Elem div(Elem a, Elem b) const { return f->div(a, b); }
    Elem inv(Elem a) const { return f->inv(a); }
    Elem from_int(long long v) const { return f->from_int(v); }
    std::string str(Elem a) const { return std::to_string(a); }
    Elem parse(const std::string& s) const;
    std::string name() const { return "gf " + std::to_string(f->q()); }
    bool same(const GFField& o) const { return f == o.f; }
    // Nonzero elements in encoding order.
    std::vector<Elem> units() const;
};

struct QField {
    using Elem = Rational;
    Elem zero() const { return Rational(0); }
    Elem one() const { return Rational(1); }
    bool is_zero(const Elem& a) const { return a.num == 0; }
    Elem add(const Elem& a, const Elem& b) const { return a + b; }
    Elem sub(const Elem& a, const Elem& b) const { return a - b; }
    Elem neg(const Elem& a) const { return -a; }
    Elem mul(const Elem& a, const Elem& b) const { return a * b; }
    Elem div(const Elem& a, const Elem& b) const { return a / b; }
    Elem inv(const Elem& a) const { return Rational(1) / a; }
    Elem from_int(long long v) const { return Rational(v); }
    std::string str(const Elem& a) const { return a.str(); }
    Elem parse(const std::string& s) const { return Rational::parse(s); }
    std::string name() const { return "rational"; }
    bool same(const QField&) const { return true; }
};

}  // namespace bmlab
