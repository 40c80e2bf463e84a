#pragma once

// Exact scalar arithmetic: arbitrary-precision rationals and prime fields.
// Every rank/membership decision in this library runs over one of these two
// scalar types; there is no floating-point mode anywhere.

#include <gmpxx.h>

#include <concepts>
#include <cstdint>
#include <string>

#include "qh/util.hpp"

namespace qh {

// ---------------------------------------------------------------------------
// Rat: arbitrary-precision rational, always gcd-reduced with positive
// denominator (canonical form maintained by GMP).
// ---------------------------------------------------------------------------

class Rat {
  public:
    Rat() : v_(0) {}
    Rat(long n) : v_(n) {}
    Rat(long num, long den) : v_(num, den) {
        require(den != 0, "Rat: zero denominator");
        v_.canonicalize();
    }
    explicit Rat(const mpq_class& v) : v_(v) { v_.canonicalize(); }

    static Rat parse(const std::string& s);

    std::string str() const { return v_.get_str(); }

    bool is_zero() const { return v_ == 0; }

    Rat operator+(const Rat& o) const { return Rat(mpq_class(v_ + o.v_), already_canonical{}); }
    Rat operator-(const Rat& o) const { return Rat(mpq_class(v_ - o.v_), already_canonical{}); }
    Rat operator*(const Rat& o) const { return Rat(mpq_class(v_ * o.v_), already_canonical{}); }
    Rat operator-() const { return Rat(mpq_class(-v_), already_canonical{}); }
    Rat& operator+=(const Rat& o) {
        v_ += o.v_;
        return *this;
    }
    Rat& operator-=(const Rat& o) {
        v_ -= o.v_;
        return *this;
    }
    Rat& operator*=(const Rat& o) {
        v_ *= o.v_;
        return *this;
    }

    Rat inv() const {
        require(!is_zero(), "Rat: inverse of zero");
        return Rat(mpq_class(1 / v_), already_canonical{});
    }

    bool operator==(const Rat& o) const { return v_ == o.v_; }
    bool operator!=(const Rat& o) const { return v_ != o.v_; }

  private:
    struct already_canonical {};
    Rat(mpq_class v, already_canonical) : v_(std::move(v)) {}
    mpq_class v_;
};

inline Rat Rat::parse(const std::string& s) {
    // strict format: [-]digits or [-]digits/digits
    require(!s.empty(), "Rat: empty scalar string");
    size_t slash = s.find('/');
    auto digits_ok = [](const std::string& t, bool allow_sign) {
        if (t.empty()) return false;
        size_t i = (allow_sign && t[0] == '-') ? 1 : 0;
        if (i == t.size()) return false;
        for (; i < t.size(); ++i)
            if (t[i] < '0' || t[i] > '9') return false;
        return true;
    };
    if (slash == std::string::npos) {
        require(digits_ok(s, true), "Rat: bad integer literal '" + s + "'");
        return Rat(mpq_class(mpz_class(s, 10)));
    }
    std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    require(digits_ok(num, true) && digits_ok(den, false),
            "Rat: bad rational literal '" + s + "'");
    mpz_class d(den, 10);
    require(d != 0, "Rat: zero denominator in '" + s + "'");
    mpq_class q;
    q.get_num() = mpz_class(num, 10);
    q.get_den() = d;
    q.canonicalize();
    return Rat(q);
}

// ---------------------------------------------------------------------------
// Fp: element of a prime field with runtime modulus, canonical value in
// [0, p-1]. A default-constructed element is a modulus-free zero that adopts
// the modulus of the other operand; mixing two distinct moduli is an error.
// ---------------------------------------------------------------------------

class Fp {
  public:
    Fp() = default;
    Fp(long long v, long long p) : p_(p) {
        require(p >= 2, "Fp: modulus must be >= 2");
        v_ = v % p;
        if (v_ < 0) v_ += p;
    }

    long long value() const { return v_; }
    long long modulus() const { return p_; }
    bool is_zero() const { return v_ == 0; }

    std::string str() const { return std::to_string(v_); }

    Fp operator+(const Fp& o) const {
        long long p = joint_mod(o);
        if (p == 0) return Fp();
        long long s = v_ + o.v_;
        if (s >= p) s -= p;
        return raw(s, p);
    }
    Fp operator-(const Fp& o) const {
        long long p = joint_mod(o);
        if (p == 0) return Fp();
        long long s = v_ - o.v_;
        if (s < 0) s += p;
        return raw(s, p);
    }
    Fp operator*(const Fp& o) const {
        long long p = joint_mod(o);
        if (p == 0) return Fp();
        return raw(static_cast<long long>(static_cast<__int128>(v_) * o.v_ % p), p);
    }
    Fp operator-() const {
        if (p_ == 0) return Fp();
        return raw(v_ == 0 ? 0 : p_ - v_, p_);
    }
    Fp& operator+=(const Fp& o) { return *this = *this + o; }
    Fp& operator-=(const Fp& o) { return *this = *this - o; }
    Fp& operator*=(const Fp& o) { return *this = *this * o; }

    Fp inv() const {
        require(v_ != 0, "Fp: inverse of zero");
        // extended Euclid on (v, p)
        long long a = v_, b = p_, x0 = 1, x1 = 0;
        while (b) {
            long long q = a / b;
            long long t = a - q * b;
            a = b;
            b = t;
            t = x0 - q * x1;
            x0 = x1;
            x1 = t;
        }
        require(a == 1, "Fp: modulus not prime (gcd != 1)");
        long long r = x0 % p_;
        if (r < 0) r += p_;
        return raw(r, p_);
    }

    bool operator==(const Fp& o) const {
        if (p_ != 0 && o.p_ != 0) {
            require(p_ == o.p_, "Fp: comparing elements of different fields");
            return v_ == o.v_;
        }
        return v_ == o.v_;  // at least one side is a modulus-free zero
    }
    bool operator!=(const Fp& o) const { return !(*this == o); }

  private:
    static Fp raw(long long v, long long p) {
        Fp r;
        r.v_ = v;
        r.p_ = p;
        return r;
    }
    long long joint_mod(const Fp& o) const {
        if (p_ != 0 && o.p_ != 0) {
            require(p_ == o.p_, "Fp: mixing elements of different fields");
            return p_;
        }
        return p_ != 0 ? p_ : o.p_;
    }
    long long v_ = 0;
    long long p_ = 0;
};

// ---------------------------------------------------------------------------
// Field descriptors. A Field<K> creates and formats scalars; matrices and
// algebras carry one so that constants (0, 1) can always be materialized.
// ---------------------------------------------------------------------------

template <class K>
struct Field;

template <>
struct Field<Rat> {
    long long characteristic() const { return 0; }
    Rat zero() const { return Rat(); }
    Rat one() const { return Rat(1); }
    Rat from_long(long n) const { return Rat(n); }
    Rat parse(const std::string& s) const { return Rat::parse(s); }
    std::string str(const Rat& x) const { return x.str(); }
    bool operator==(const Field&) const { return true; }
};

template <>
struct Field<Fp> {
    long long p = 0;

    Field() = default;
    explicit Field(long long p_) : p(p_) {
        require(p_ >= 2 && p_ < (1ll << 31), "Fp field: modulus out of range");
        for (long long d = 2; d * d <= p_; ++d)
            require(p_ % d != 0, "Fp field: modulus " + std::to_string(p_) + " is not prime");
    }

    long long characteristic() const { return p; }
    Fp zero() const { return Fp(0, p); }
    Fp one() const { return Fp(1, p); }
    Fp from_long(long n) const { return Fp(n, p); }
    Fp parse(const std::string& s) const {
        require(!s.empty(), "Fp: empty scalar string");
        size_t i = s[0] == '-' ? 1 : 0;
        require(i < s.size(), "Fp: bad scalar '" + s + "'");
        long long acc = 0;
        for (; i < s.size(); ++i) {
            require(s[i] >= '0' && s[i] <= '9', "Fp: bad scalar '" + s + "'");
            acc = (acc * 10 + (s[i] - '0')) % p;
        }
        Fp r(acc, p);
        return s[0] == '-' ? -r : r;
    }
    std::string str(const Fp& x) const { return x.str(); }
    bool operator==(const Field& o) const { return p == o.p; }
};

template <class K>
concept ScalarField = requires(K a, K b, const Field<K>& f, std::string s) {
    { a + b } -> std::convertible_to<K>;
    { a - b } -> std::convertible_to<K>;
    { a* b } -> std::convertible_to<K>;
    { -a } -> std::convertible_to<K>;
    { a.is_zero() } -> std::convertible_to<bool>;
    { a.inv() } -> std::convertible_to<K>;
    { a == b } -> std::convertible_to<bool>;
    { f.zero() } -> std::convertible_to<K>;
    { f.one() } -> std::convertible_to<K>;
    { f.parse(s) } -> std::convertible_to<K>;
    { f.str(a) } -> std::convertible_to<std::string>;
};

}  // namespace qh
