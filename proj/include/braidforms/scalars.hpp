#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace braidforms {

// ---------------------------------------------------------------------------
// Rational numbers. mpq_class already provides exact field arithmetic; we add
// the few uniform hooks the generic code expects.
// ---------------------------------------------------------------------------

using Rational = mpq_class;

inline bool is_zero(const Rational& a) { return sgn(a) == 0; }

inline Rational inverse(const Rational& a) {
    if (is_zero(a)) throw DivisionByZeroError("division by zero in Q");
    return Rational(1) / a;
}

inline std::string scalar_to_string(const Rational& a) { return a.get_str(); }

inline bool display_negative(const Rational& a) { return sgn(a) < 0; }

// ---------------------------------------------------------------------------
// Prime fields. Elements remember their modulus so plain operator arithmetic
// works; combining elements of different moduli is rejected. Moduli are kept
// below 2^31 so products fit in 64 bits.
// ---------------------------------------------------------------------------

struct Fp {
    std::uint64_t v = 0;
    std::uint64_t p = 0;

    friend bool operator==(const Fp&, const Fp&) = default;
    friend auto operator<=>(const Fp&, const Fp&) = default;
};

inline void require_same_modulus(const Fp& a, const Fp& b) {
    if (a.p != b.p) throw MalformedInputError("mixed prime-field moduli");
}

inline bool is_zero(const Fp& a) { return a.v == 0; }

inline Fp operator+(const Fp& a, const Fp& b) {
    require_same_modulus(a, b);
    std::uint64_t s = a.v + b.v;
    if (s >= a.p) s -= a.p;
    return {s, a.p};
}

inline Fp operator-(const Fp& a) { return {a.v == 0 ? 0 : a.p - a.v, a.p}; }

inline Fp operator-(const Fp& a, const Fp& b) { return a + (-b); }

inline Fp operator*(const Fp& a, const Fp& b) {
    require_same_modulus(a, b);
    return {(a.v * b.v) % a.p, a.p};
}

inline Fp inverse(const Fp& a) {
    if (a.v == 0) throw DivisionByZeroError("division by zero in F_p");
    std::int64_t t = 0, nt = 1;
    std::int64_t r = static_cast<std::int64_t>(a.p);
    std::int64_t nr = static_cast<std::int64_t>(a.v);
    while (nr != 0) {
        std::int64_t quot = r / nr;
        t = std::exchange(nt, t - quot * nt);
        r = std::exchange(nr, r - quot * nr);
    }
    if (t < 0) t += static_cast<std::int64_t>(a.p);
    return {static_cast<std::uint64_t>(t), a.p};
}

inline Fp operator/(const Fp& a, const Fp& b) { return a * inverse(b); }

inline Fp& operator+=(Fp& a, const Fp& b) { return a = a + b; }
inline Fp& operator-=(Fp& a, const Fp& b) { return a = a - b; }
inline Fp& operator*=(Fp& a, const Fp& b) { return a = a * b; }

inline std::string scalar_to_string(const Fp& a) { return std::to_string(a.v); }

inline bool display_negative(const Fp&) { return false; }

// ---------------------------------------------------------------------------
// Dense univariate polynomials over Q in the parameter q. c[i] is the
// coefficient of q^i; the highest stored coefficient is nonzero.
// ---------------------------------------------------------------------------

class QPoly {
   public:
    std::vector<Rational> c;

    QPoly() = default;
    explicit QPoly(const Rational& a) {
        if (!braidforms::is_zero(a)) c.push_back(a);
    }

    static QPoly parameter() {
        QPoly r;
        r.c = {Rational(0), Rational(1)};
        return r;
    }

    bool is_zero() const { return c.empty(); }
    int degree() const { return static_cast<int>(c.size()) - 1; }
    const Rational& leading() const { return c.back(); }
    bool is_one() const { return c.size() == 1 && c[0] == 1; }

    void trim() {
        while (!c.empty() && braidforms::is_zero(c.back())) c.pop_back();
    }

    friend bool operator==(const QPoly&, const QPoly&) = default;
};

inline QPoly operator+(const QPoly& a, const QPoly& b) {
    QPoly r;
    r.c.resize(std::max(a.c.size(), b.c.size()), Rational(0));
    for (std::size_t i = 0; i < a.c.size(); ++i) r.c[i] += a.c[i];
    for (std::size_t i = 0; i < b.c.size(); ++i) r.c[i] += b.c[i];
    r.trim();
    return r;
}

inline QPoly operator-(const QPoly& a) {
    QPoly r = a;
    for (auto& x : r.c) x = -x;
    return r;
}

inline QPoly operator-(const QPoly& a, const QPoly& b) { return a + (-b); }

inline QPoly operator*(const QPoly& a, const QPoly& b) {
    if (a.is_zero() || b.is_zero()) return QPoly();
    QPoly r;
    r.c.assign(a.c.size() + b.c.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.c.size(); ++i)
        for (std::size_t j = 0; j < b.c.size(); ++j) r.c[i + j] += a.c[i] * b.c[j];
    r.trim();
    return r;
}

inline QPoly scale(const QPoly& a, const Rational& s) {
    if (braidforms::is_zero(s)) return QPoly();
    QPoly r = a;
    for (auto& x : r.c) x *= s;
    return r;
}

// Quotient and remainder of polynomial long division.
inline std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& b) {
    if (b.is_zero()) throw DivisionByZeroError("polynomial division by zero");
    QPoly rem = a;
    QPoly quot;
    if (rem.degree() >= b.degree())
        quot.c.assign(rem.c.size() - b.c.size() + 1, Rational(0));
    while (!rem.is_zero() && rem.degree() >= b.degree()) {
        int shift = rem.degree() - b.degree();
        Rational f = rem.leading() / b.leading();
        quot.c[shift] += f;
        for (std::size_t i = 0; i < b.c.size(); ++i) rem.c[i + shift] -= f * b.c[i];
        rem.trim();
    }
    quot.trim();
    return {quot, rem};
}

inline QPoly monic(QPoly a) {
    if (!a.is_zero() && a.leading() != 1) a = scale(a, inverse(a.leading()));
    return a;
}

inline QPoly gcd(QPoly a, QPoly b) {
    while (!b.is_zero()) {
        QPoly r = divmod(a, b).second;
        a = std::move(b);
        b = monic(std::move(r));
    }
    return monic(std::move(a));
}

inline Rational eval(const QPoly& a, const Rational& x) {
    Rational acc(0);
    for (std::size_t i = a.c.size(); i-- > 0;) acc = acc * x + a.c[i];
    return acc;
}

// Terms in ascending powers of q: "1 - q + 2*q^2".
inline std::string qpoly_to_string(const QPoly& a) {
    if (a.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (std::size_t i = 0; i < a.c.size(); ++i) {
        if (braidforms::is_zero(a.c[i])) continue;
        Rational coeff = a.c[i];
        bool neg = sgn(coeff) < 0;
        Rational mag = neg ? Rational(-coeff) : coeff;
        std::string piece;
        if (i == 0)
            piece = mag.get_str();
        else {
            std::string base = (i == 1) ? "q" : "q^" + std::to_string(i);
            piece = (mag == 1) ? base : mag.get_str() + "*" + base;
        }
        if (first)
            out = (neg ? "-" : "") + piece;
        else
            out += (neg ? " - " : " + ") + piece;
        first = false;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Rational functions in q: reduced fractions with monic denominator. That
// canonical shape makes structural equality the right equality.
// ---------------------------------------------------------------------------

class RatFn {
   public:
    QPoly num;
    QPoly den;

    RatFn() : num(), den(QPoly(Rational(1))) {}
    explicit RatFn(QPoly n) : num(std::move(n)), den(QPoly(Rational(1))) {}
    RatFn(QPoly n, QPoly d) : num(std::move(n)), den(std::move(d)) { normalize(); }

    static RatFn parameter() { return RatFn(QPoly::parameter()); }

    void normalize() {
        if (den.is_zero()) throw DivisionByZeroError("zero denominator");
        if (num.is_zero()) {
            den = QPoly(Rational(1));
            return;
        }
        QPoly g = gcd(num, den);
        if (g.degree() > 0) {
            num = divmod(num, g).first;
            den = divmod(den, g).first;
        }
        Rational lead = den.leading();
        if (lead != 1) {
            num = scale(num, inverse(lead));
            den = scale(den, inverse(lead));
        }
    }

    friend bool operator==(const RatFn&, const RatFn&) = default;
};

inline bool is_zero(const RatFn& a) { return a.num.is_zero(); }

inline RatFn operator+(const RatFn& a, const RatFn& b) {
    return RatFn(a.num * b.den + b.num * a.den, a.den * b.den);
}

inline RatFn operator-(const RatFn& a) {
    RatFn r = a;
    r.num = -r.num;
    return r;
}

inline RatFn operator-(const RatFn& a, const RatFn& b) { return a + (-b); }

inline RatFn operator*(const RatFn& a, const RatFn& b) {
    return RatFn(a.num * b.num, a.den * b.den);
}

inline RatFn inverse(const RatFn& a) {
    if (is_zero(a)) throw DivisionByZeroError("division by zero in Q(q)");
    return RatFn(a.den, a.num);
}

inline RatFn operator/(const RatFn& a, const RatFn& b) { return a * inverse(b); }

inline RatFn& operator+=(RatFn& a, const RatFn& b) { return a = a + b; }
inline RatFn& operator-=(RatFn& a, const RatFn& b) { return a = a - b; }
inline RatFn& operator*=(RatFn& a, const RatFn& b) { return a = a * b; }

// Substitute a rational value for q. Throws at poles.
inline Rational eval_at(const RatFn& a, const Rational& q0) {
    Rational d = eval(a.den, q0);
    if (braidforms::is_zero(d))
        throw DivisionByZeroError("rational function evaluated at a pole");
    return eval(a.num, q0) / d;
}

inline std::string scalar_to_string(const RatFn& a) {
    if (a.den.is_one()) return qpoly_to_string(a.num);
    return "(" + qpoly_to_string(a.num) + ")/(" + qpoly_to_string(a.den) + ")";
}

// Sign used only for pretty-printing: the sign of the lowest nonzero
// numerator coefficient, so "x - q*dx" prints instead of "x + -q*dx".
inline bool display_negative(const RatFn& a) {
    for (const auto& coeff : a.num.c)
        if (!is_zero(coeff)) return sgn(coeff) < 0;
    return false;
}

// ---------------------------------------------------------------------------
// Field descriptors. Each carries the element type, mints constants, and
// optionally designates a value for the parameter q.
// ---------------------------------------------------------------------------

struct RationalsField {
    using Elem = Rational;

    std::optional<Rational> q;

    Elem zero() const { return Rational(0); }
    Elem one() const { return Rational(1); }
    Elem from_long(long n) const { return Rational(n); }
    std::optional<Elem> q_value() const { return q; }
    std::string describe() const { return "Q"; }
};

struct PrimeField {
    using Elem = Fp;

    std::uint64_t p = 2;
    std::optional<Fp> q;

    explicit PrimeField(std::uint64_t p_) : p(p_) {
        if (p < 2 || p >= (std::uint64_t{1} << 31))
            throw ConfigError("prime-field modulus out of range");
        for (std::uint64_t d = 2; d * d <= p; ++d)
            if (p % d == 0) throw ConfigError("prime-field modulus is not prime");
    }

    Elem zero() const { return {0, p}; }
    Elem one() const { return {1 % p, p}; }
    Elem from_long(long n) const {
        std::int64_t r = n % static_cast<std::int64_t>(p);
        if (r < 0) r += static_cast<std::int64_t>(p);
        return {static_cast<std::uint64_t>(r), p};
    }
    std::optional<Elem> q_value() const { return q; }
    std::string describe() const { return "F_" + std::to_string(p); }
};

struct RationalFunctionField {
    using Elem = RatFn;

    Elem zero() const { return RatFn(); }
    Elem one() const { return RatFn(QPoly(Rational(1))); }
    Elem from_long(long n) const { return RatFn(QPoly(Rational(n))); }
    std::optional<Elem> q_value() const { return RatFn::parameter(); }
    std::string describe() const { return "Q(q)"; }
};

// ---------------------------------------------------------------------------

template <class K>
K elem_pow(K base, unsigned long e, const K& one) {
    K acc = one;
    while (e) {
        if (e & 1) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

// 1 + q + ... + q^(n-1) in the given field. Needs either the rational
// function field or a designated q value.
template <class F>
typename F::Elem q_integer(const F& field, unsigned n) {
    auto qv = field.q_value();
    if (!qv)
        throw UnsupportedContextError(
            "q_integer needs a rational-function field or a designated q value");
    typename F::Elem acc = field.zero();
    typename F::Elem power = field.one();
    for (unsigned k = 0; k < n; ++k) {
        acc += power;
        power *= *qv;
    }
    return acc;
}

}  // namespace braidforms
