#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace sparsetrace {

// Exact rational on 64-bit numerator/denominator. All intermediates go
// through __int128; results that do not fit back into 64 bits throw.
// Invariants: den > 0, gcd(|num|, den) == 1.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(std::int64_t n) : num_(n), den_(1) {}
    Rational(std::int64_t n, std::int64_t d) { assign(n, d); }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    bool is_integer() const { return den_ == 1; }
    bool is_zero() const { return num_ == 0; }
    int sign() const { return num_ > 0 ? 1 : (num_ < 0 ? -1 : 0); }

    Rational operator-() const { return Rational(-num_, den_); }

    friend Rational operator+(const Rational& a, const Rational& b) {
        __int128 g = std::gcd(a.den_, b.den_);
        __int128 da = a.den_ / g, db = b.den_ / g;
        __int128 n = (__int128)a.num_ * db + (__int128)b.num_ * da;
        __int128 d = (__int128)a.den_ * db;
        return from128(n, d);
    }
    friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
    friend Rational operator*(const Rational& a, const Rational& b) {
        std::int64_t g1 = std::gcd(a.num_ < 0 ? -a.num_ : a.num_, b.den_);
        std::int64_t g2 = std::gcd(b.num_ < 0 ? -b.num_ : b.num_, a.den_);
        __int128 n = (__int128)(a.num_ / g1) * (b.num_ / g2);
        __int128 d = (__int128)(a.den_ / g2) * (b.den_ / g1);
        return from128(n, d);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw std::domain_error("rational division by zero");
        return a * Rational(b.den_, b.num_);
    }

    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return (__int128)a.num_ * b.den_ < (__int128)b.num_ * a.den_;
    }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

    Rational abs() const { return num_ < 0 ? -*this : *this; }

    // Largest integer <= value.
    std::int64_t floor() const {
        std::int64_t q = num_ / den_;
        if (num_ % den_ != 0 && num_ < 0) --q;
        return q;
    }

    std::string str() const {
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

    // Accepts "p/q" and bare integers "p".
    static Rational parse(const std::string& s) {
        auto slash = s.find('/');
        if (slash == std::string::npos) return Rational(std::stoll(s));
        return Rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
    }

    // Decimal expansion with the given number of fractional digits, truncation
    // toward zero. Used by the OBJ exporter.
    std::string decimal(int digits) const {
        __int128 n = num_ < 0 ? -(__int128)num_ : (__int128)num_;
        __int128 whole = n / den_;
        __int128 rem = n % den_;
        std::string out = num_ < 0 ? "-" : "";
        out += to_string128(whole);
        if (digits > 0) {
            out += '.';
            for (int i = 0; i < digits; ++i) {
                rem *= 10;
                out += char('0' + (int)(rem / den_));
                rem %= den_;
            }
        }
        return out;
    }

private:
    std::int64_t num_, den_;

    void assign(std::int64_t n, std::int64_t d) {
        if (d == 0) throw std::domain_error("rational with zero denominator");
        if (d < 0) { n = -n; d = -d; }
        std::int64_t g = std::gcd(n < 0 ? -n : n, d);
        if (g > 1) { n /= g; d /= g; }
        num_ = n;
        den_ = d;
    }

    static Rational from128(__int128 n, __int128 d) {
        if (d == 0) throw std::domain_error("rational with zero denominator");
        if (d < 0) { n = -n; d = -d; }
        __int128 g = gcd128(n < 0 ? -n : n, d);
        if (g > 1) { n /= g; d /= g; }
        if (n > INT64_MAX || n < INT64_MIN || d > INT64_MAX)
            throw std::overflow_error("rational overflow");
        Rational r;
        r.num_ = (std::int64_t)n;
        r.den_ = (std::int64_t)d;
        return r;
    }

    static __int128 gcd128(__int128 a, __int128 b) {
        while (b != 0) { __int128 t = a % b; a = b; b = t; }
        return a;
    }

    static std::string to_string128(__int128 v) {
        if (v == 0) return "0";
        std::string s;
        while (v > 0) { s += char('0' + (int)(v % 10)); v /= 10; }
        return std::string(s.rbegin(), s.rend());
    }
};

inline Rational rat_min(const Rational& a, const Rational& b) { return a < b ? a : b; }
inline Rational rat_max(const Rational& a, const Rational& b) { return a < b ? b : a; }

} // namespace sparsetrace
