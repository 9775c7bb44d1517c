#pragma once

#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "scalars.hpp"

namespace braidforms {

using Exponents = std::vector<std::uint32_t>;

inline std::uint32_t total_degree(const Exponents& e) {
    return std::accumulate(e.begin(), e.end(), std::uint32_t{0});
}

// Accumulate v into m[k], inserting, merging, and dropping zeros so that maps
// of coefficients stay in canonical form.
template <class Map, class Key, class V>
void add_to(Map& m, const Key& k, const V& v) {
    if (is_zero(v)) return;
    auto it = m.find(k);
    if (it == m.end()) {
        m.emplace(k, v);
        return;
    }
    it->second += v;
    if (is_zero(it->second)) m.erase(it);
}

// Sparse multivariate polynomial with a fixed number of variables.
// Invariants: every stored coefficient is nonzero and every exponent vector
// has length nvars().
template <class K>
class Polynomial {
   public:
    using Terms = std::map<Exponents, K>;

    explicit Polynomial(std::size_t nvars) : nvars_(nvars) {}

    static Polynomial constant(std::size_t nvars, const K& c) {
        Polynomial p(nvars);
        add_to(p.terms_, Exponents(nvars, 0), c);
        return p;
    }

    static Polynomial monomial(std::size_t nvars, const Exponents& e, const K& c) {
        Polynomial p(nvars);
        add_to(p.terms_, e, c);
        return p;
    }

    static Polynomial variable(std::size_t nvars, std::size_t i, const K& one) {
        Exponents e(nvars, 0);
        e[i] = 1;
        return monomial(nvars, e, one);
    }

    std::size_t nvars() const { return nvars_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    bool is_constant() const {
        return terms_.empty() ||
               (terms_.size() == 1 && total_degree(terms_.begin()->first) == 0);
    }

    // Total degree; 0 for the zero polynomial.
    std::uint32_t degree() const {
        std::uint32_t d = 0;
        for (const auto& [e, c] : terms_) d = std::max(d, total_degree(e));
        return d;
    }

    bool is_homogeneous(std::uint32_t deg) const {
        for (const auto& [e, c] : terms_)
            if (total_degree(e) != deg) return false;
        return true;
    }

    void add_term(const Exponents& e, const K& c) { add_to(terms_, e, c); }

    Polynomial& operator+=(const Polynomial& o) {
        for (const auto& [e, c] : o.terms_) add_to(terms_, e, c);
        return *this;
    }

    Polynomial& operator-=(const Polynomial& o) { return *this += -o; }

    Polynomial operator+(const Polynomial& o) const {
        Polynomial r = *this;
        r += o;
        return r;
    }

    Polynomial operator-(const Polynomial& o) const {
        Polynomial r = *this;
        r -= o;
        return r;
    }

    Polynomial operator-() const {
        Polynomial r(nvars_);
        for (const auto& [e, c] : terms_) r.terms_.emplace(e, K(-c));
        return r;
    }

    Polynomial operator*(const Polynomial& o) const {
        Polynomial r(nvars_);
        for (const auto& [e1, c1] : terms_)
            for (const auto& [e2, c2] : o.terms_) {
                Exponents e = e1;
                for (std::size_t i = 0; i < nvars_; ++i) e[i] += e2[i];
                add_to(r.terms_, e, K(c1 * c2));
            }
        return r;
    }

    Polynomial scaled(const K& s) const {
        Polynomial r(nvars_);
        if (braidforms::is_zero(s)) return r;
        for (const auto& [e, c] : terms_) add_to(r.terms_, e, K(c * s));
        return r;
    }

    friend bool operator==(const Polynomial&, const Polynomial&) = default;

   private:
    Terms terms_;
    std::size_t nvars_;
};

template <class K>
Polynomial<K> poly_pow(const Polynomial<K>& base, std::uint32_t e, const K& one) {
    Polynomial<K> acc = Polynomial<K>::constant(base.nvars(), one);
    for (std::uint32_t k = 0; k < e; ++k) acc = acc * base;
    return acc;
}

inline std::string monomial_to_string(const Exponents& e,
                                      const std::vector<std::string>& names) {
    std::string out;
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        if (!out.empty()) out += "*";
        out += names[i];
        if (e[i] > 1) out += "^" + std::to_string(e[i]);
    }
    return out;
}

// "1 - x*y + 2*x^2", terms in ascending exponent order.
template <class K>
std::string poly_to_string(const Polynomial<K>& p,
                           const std::vector<std::string>& names) {
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [e, c] : p.terms()) {
        bool neg = display_negative(c);
        K mag = neg ? K(-c) : c;
        std::string cs = scalar_to_string(mag);
        bool wrap = cs.find(' ') != std::string::npos;
        std::string mono = monomial_to_string(e, names);
        std::string piece;
        if (mono.empty())
            piece = wrap ? "(" + cs + ")" : cs;
        else if (cs == "1")
            piece = mono;
        else
            piece = (wrap ? "(" + cs + ")" : cs) + "*" + mono;
        if (first)
            out = (neg ? "-" : "") + piece;
        else
            out += (neg ? " - " : " + ") + piece;
        first = false;
    }
    return out;
}

}  // namespace braidforms
