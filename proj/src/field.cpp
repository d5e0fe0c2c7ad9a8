#include "bmlab/field.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <numeric>

#include "bmlab/common.hpp"

namespace bmlab {

namespace {

// Conway polynomials, constant coefficient first, leading 1 omitted.
const std::map<int, std::vector<int>>& conway_table() {
    static const std::map<int, std::vector<int>> table = {
        {4, {1, 1}},
        {8, {1, 1, 0}},
        {16, {1, 1, 0, 0}},
        {32, {1, 0, 1, 0, 0}},
        {64, {1, 1, 0, 1, 1, 0}},
        {128, {1, 1, 0, 0, 0, 0, 0}},
        {256, {1, 0, 1, 1, 1, 0, 0, 0}},
        {9, {2, 2}},
        {27, {1, 2, 0}},
        {81, {2, 0, 0, 2}},
        {243, {1, 2, 0, 0, 0}},
        {25, {2, 4}},
        {125, {3, 3, 0}},
        {49, {3, 6}},
        {121, {2, 7}},
        {169, {2, 12}},
    };
    return table;
}

bool is_prime(int n) {
    if (n < 2) return false;
    for (int d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Returns (p, k) with q = p^k, or (0, 0) when q is not a prime power.
std::pair<int, int> factor_prime_power(int q) {
    if (q < 2) return {0, 0};
    for (int p = 2; p <= q; ++p) {
        if (q % p != 0) continue;
        if (!is_prime(p)) return {0, 0};
        int k = 0, r = q;
        while (r % p == 0) {
            r /= p;
            ++k;
        }
        return r == 1 ? std::make_pair(p, k) : std::make_pair(0, 0);
    }
    return {0, 0};
}

}  // namespace

bool GF::supported(int q) {
    auto [p, k] = factor_prime_power(q);
    if (p == 0 || q > 256) return false;
    return k == 1 || conway_table().count(q) > 0;
}

std::vector<int> GF::supported_orders() {
    std::vector<int> out;
    for (int q = 2; q <= 256; ++q)
        if (supported(q)) out.push_back(q);
    return out;
}

const GF& GF::get(int q) {
    static std::mutex mu;
    static std::map<int, std::unique_ptr<GF>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(q);
    if (it != cache.end()) return *it->second;
    if (!supported(q)) throw InvalidArgument("unsupported field order " + std::to_string(q));
    auto* f = new GF(q);
    cache[q].reset(f);
    return *f;
}

GF::GF(int q) : q_(q) {
    auto [p, k] = factor_prime_power(q);
    p_ = p;
    k_ = k;
    if (k_ > 1) modulus_ = conway_table().at(q);
    add_.assign(q * q, 0);
    mul_.assign(q * q, 0);
    neg_.assign(q, 0);
    inv_.assign(q, 0);

    auto digits = [&](int a) {
        std::vector<int> d(k_);
        for (int i = 0; i < k_; ++i) {
            d[i] = a % p_;
            a /= p_;
        }
        return d;
    };
    auto encode = [&](const std::vector<int>& d) {
        int a = 0;
        for (int i = k_ - 1; i >= 0; --i) a = a * p_ + d[i];
        return a;
    };
    for (int a = 0; a < q; ++a) {
        auto da = digits(a);
        std::vector<int> dn(k_);
        for (int i = 0; i < k_; ++i) dn[i] = (p_ - da[i]) % p_;
        neg_[a] = static_cast<std::uint8_t>(encode(dn));
        for (int b = 0; b < q; ++b) {
            auto db = digits(b);
            std::vector<int> s(k_);
            for (int i = 0; i < k_; ++i) s[i] = (da[i] + db[i]) % p_;
            add_[a * q + b] = static_cast<std::uint8_t>(encode(s));
            // Polynomial product reduced modulo the Conway polynomial.
            std::vector<int> prod(2 * k_, 0);
            for (int i = 0; i < k_; ++i)
                for (int j = 0; j < k_; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p_;
            for (int d = 2 * k_ - 2; d >= k_; --d) {
                int c = prod[d];
                if (c == 0) continue;
                prod[d] = 0;
                // x^k = -(m_0 + m_1 x + ... + m_{k-1} x^{k-1})
                for (int i = 0; i < k_; ++i)
                    prod[d - k_ + i] = ((prod[d - k_ + i] - c * modulus_[i]) % p_ + p_) % p_;
            }
            prod.resize(k_);
            mul_[a * q + b] = static_cast<std::uint8_t>(encode(prod));
        }
    }
    for (int a = 1; a < q; ++a) {
        for (int b = 1; b < q; ++b) {
            if (mul_[a * q + b] == 1) {
                inv_[a] = static_cast<std::uint8_t>(b);
                break;
            }
        }
        if (inv_[a] == 0) throw InvalidArgument("modulus for q=" + std::to_string(q) + " is reducible");
    }
}

int GF::inv(int a) const {
    if (a == 0) throw InvalidArgument("division by zero in GF(" + std::to_string(q_) + ")");
    return inv_[a];
}

int GF::from_int(long long v) const {
    long long r = v % p_;
    if (r < 0) r += p_;
    return static_cast<int>(r);
}

int GF::pow(int a, long long e) const {
    if (e < 0) {
        a = inv(a);
        e = -e;
    }
    int r = 1;
    while (e > 0) {
        if (e & 1) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

int GF::order(int a) const {
    if (a == 0) throw InvalidArgument("zero has no multiplicative order");
    int x = a, n = 1;
    while (x != 1) {
        x = mul(x, a);
        ++n;
    }
    return n;
}

std::string GF::modulus_string() const {
    if (k_ == 1) return "prime field";
    std::string s = "x^" + std::to_string(k_);
    for (int i = k_ - 1; i >= 0; --i) {
        int c = modulus_[i];
        if (c == 0) continue;
        s += " + ";
        if (c != 1 || i == 0) s += std::to_string(c);
        if (i >= 1) s += "x";
        if (i >= 2) s += "^" + std::to_string(i);
    }
    return s;
}

// ---------------------------------------------------------------- rationals

namespace {
long long checked(__int128 v) {
    if (v > INT64_MAX || v < INT64_MIN) throw InvalidArgument("rational overflow");
    return static_cast<long long>(v);
}
Rational make(__int128 n, __int128 d) {
    if (d == 0) throw InvalidArgument("rational division by zero");
    if (d < 0) {
        n = -n;
        d = -d;
    }
    __int128 a = n < 0 ? -n : n, b = d;
    while (b != 0) {
        __int128 t = a % b;
        a = b;
        b = t;
    }
    if (a > 1) {
        n /= a;
        d /= a;
    }
    Rational r;
    r.num = checked(n);
    r.den = checked(d);
    return r;
}
}  // namespace

Rational::Rational(long long n, long long d) { *this = make(n, d); }

Rational operator+(const Rational& a, const Rational& b) {
    return make(static_cast<__int128>(a.num) * b.den + static_cast<__int128>(b.num) * a.den,
                static_cast<__int128>(a.den) * b.den);
}
Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
Rational operator*(const Rational& a, const Rational& b) {
    return make(static_cast<__int128>(a.num) * b.num, static_cast<__int128>(a.den) * b.den);
}
Rational operator/(const Rational& a, const Rational& b) {
    if (b.num == 0) throw InvalidArgument("rational division by zero");
    return make(static_cast<__int128>(a.num) * b.den, static_cast<__int128>(a.den) * b.num);
}
bool operator<(const Rational& a, const Rational& b) {
    return static_cast<__int128>(a.num) * b.den < static_cast<__int128>(b.num) * a.den;
}

std::string Rational::str() const {
    return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
}

Rational Rational::parse(const std::string& s) {
    try {
        auto slash = s.find('/');
        if (slash == std::string::npos) return Rational(std::stoll(s));
        return Rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
    } catch (const InvalidArgument&) {
        throw;
    } catch (const std::exception&) {
        throw ParseError("bad rational '" + s + "'");
    }
}

GFField::Elem GFField::parse(const std::string& s) const {
    int v;
    try {
        size_t used = 0;
        v = std::stoi(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
    } catch (const std::exception&) {
        throw ParseError("bad field element '" + s + "'");
    }
    if (v < 0) return f->neg(f->from_int(-static_cast<long long>(v)));
    if (v >= f->q()) throw ParseError("field element out of range: " + s);
    return v;
}

std::vector<int> GFField::units() const {
    std::vector<int> out;
    for (int a = 1; a < f->q(); ++a) out.push_back(a);
    return out;
}

}  // namespace bmlab
