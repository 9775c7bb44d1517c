#pragma once

#include <map>
#include <string>
#include <vector>

#include "context.hpp"

namespace braidforms {

// A twisted form in normal coordinates: a finite sum of basis labels with
// nonzero scalars. Every mutation goes through accumulate(), which reduces
// coefficients and rewrites raw labels into the block quotient basis, so the
// invariant "keys are basis labels" holds everywhere.
template <class F>
class DiffForm {
   public:
    using Elem = typename F::Elem;
    using Coords = std::map<Label, Elem, LabelOrder>;

    const AlgebraCtx<F>* ctx = nullptr;
    Coords coords;

    DiffForm() = default;
    explicit DiffForm(const AlgebraCtx<F>& c) : ctx(&c) {}

    bool is_zero() const { return coords.empty(); }

    // Largest form degree among the terms; 0 for the zero form.
    std::uint32_t form_degree() const {
        std::uint32_t n = 0;
        for (const auto& [l, c] : coords) n = std::max(n, l.form_degree());
        return n;
    }

    bool homogeneous_form_degree(std::uint32_t& n) const {
        bool first = true;
        for (const auto& [l, c] : coords) {
            if (first) {
                n = l.form_degree();
                first = false;
            } else if (l.form_degree() != n)
                return false;
        }
        return !first;
    }

    DiffForm& operator+=(const DiffForm& o) {
        for (const auto& [l, c] : o.coords) add_to(coords, l, c);
        return *this;
    }

    DiffForm& operator-=(const DiffForm& o) {
        for (const auto& [l, c] : o.coords) add_to(coords, l, Elem(-c));
        return *this;
    }

    DiffForm operator+(const DiffForm& o) const {
        DiffForm r = *this;
        r += o;
        return r;
    }

    DiffForm operator-(const DiffForm& o) const {
        DiffForm r = *this;
        r -= o;
        return r;
    }

    DiffForm operator-() const {
        DiffForm r(*ctx);
        for (const auto& [l, c] : coords) r.coords.emplace(l, Elem(-c));
        return r;
    }

    DiffForm scaled(const Elem& s) const {
        DiffForm r(*ctx);
        if (braidforms::is_zero(s)) return r;
        for (const auto& [l, c] : coords) add_to(r.coords, l, Elem(c * s));
        return r;
    }

    friend bool operator==(const DiffForm& a, const DiffForm& b) {
        return a.coords == b.coords;
    }
};

// Add scale * coeff * dx_word to out, reducing the coefficient and projecting
// every raw label onto the quotient basis of its block.
template <class F>
void accumulate(DiffForm<F>& out, const Polynomial<typename F::Elem>& coeff,
                const std::vector<std::uint32_t>& word,
                const typename F::Elem& scale) {
    const auto& ctx = *out.ctx;
    if (is_zero(scale)) return;
    auto red = ctx.reduce_poly(coeff);
    for (const auto& [e, c] : red.terms()) {
        Label l{e, word};
        const auto& blk = ctx.block(ctx.key_of(l));
        std::size_t ri = blk.raw_index.at(l);
        for (const auto& [bi, k] : blk.expand[ri])
            add_to(out.coords, blk.basis[bi],
                   typename F::Elem(c * k * scale));
    }
}

template <class F>
DiffForm<F> zero_form(const AlgebraCtx<F>& ctx) {
    return DiffForm<F>(ctx);
}

template <class F>
DiffForm<F> form_from(const AlgebraCtx<F>& ctx,
                      const Polynomial<typename F::Elem>& coeff,
                      const std::vector<std::uint32_t>& word) {
    DiffForm<F> f(ctx);
    accumulate(f, coeff, word, ctx.one());
    return f;
}

template <class F>
DiffForm<F> one_form_unit(const AlgebraCtx<F>& ctx) {
    return form_from(ctx, ctx.one_poly(), {});
}

template <class F>
DiffForm<F> label_form(const AlgebraCtx<F>& ctx, const Label& l) {
    return form_from(ctx, Polynomial<typename F::Elem>::monomial(
                              ctx.nvars(), l.exp, ctx.one()),
                     l.word);
}

// One monomial of input to normalize(): coeff * dx_{word}.
template <class F>
struct FormMonomial {
    Polynomial<typename F::Elem> coeff;
    std::vector<std::uint32_t> word;
};

template <class F>
DiffForm<F> normalize(const AlgebraCtx<F>& ctx,
                      const std::vector<FormMonomial<F>>& monomials) {
    DiffForm<F> f(ctx);
    for (const auto& m : monomials) accumulate(f, m.coeff, m.word, ctx.one());
    return f;
}

// Product. Right coefficients twist through the left word:
// (a dx_w) (b dx_w') = a alpha^{|w|}(b) dx_w dx_w'.
template <class F>
DiffForm<F> operator*(const DiffForm<F>& a, const DiffForm<F>& b) {
    const auto& ctx = *a.ctx;
    DiffForm<F> out(ctx);
    for (const auto& [la, ca] : a.coords) {
        auto pa = Polynomial<typename F::Elem>::monomial(ctx.nvars(), la.exp,
                                                         ctx.one());
        for (const auto& [lb, cb] : b.coords) {
            auto pb = Polynomial<typename F::Elem>::monomial(ctx.nvars(), lb.exp,
                                                             ctx.one());
            auto coeff = pa * ctx.alpha_pow_poly(pb, la.form_degree());
            std::vector<std::uint32_t> word = la.word;
            word.insert(word.end(), lb.word.begin(), lb.word.end());
            accumulate(out, coeff, word, typename F::Elem(ca * cb));
        }
    }
    return out;
}

// Differential: d(a dx_w) = d(a) dx_w, with d(a) expanded by the twisted
// product rule. Squares to zero on the quotient.
template <class F>
DiffForm<F> d(const DiffForm<F>& a) {
    const auto& ctx = *a.ctx;
    DiffForm<F> out(ctx);
    for (const auto& [l, c] : a.coords) {
        auto dp = ctx.d_poly(Polynomial<typename F::Elem>::monomial(
            ctx.nvars(), l.exp, ctx.one()));
        for (std::uint32_t k = 0; k < ctx.nvars(); ++k) {
            if (dp[k].is_zero()) continue;
            std::vector<std::uint32_t> word;
            word.reserve(l.word.size() + 1);
            word.push_back(k);
            word.insert(word.end(), l.word.begin(), l.word.end());
            accumulate(out, dp[k], word, c);
        }
    }
    return out;
}

// d(alpha(x_j)) as a 1-form.
template <class F>
DiffForm<F> letter_image_form(const AlgebraCtx<F>& ctx, std::uint32_t j) {
    DiffForm<F> out(ctx);
    for (const auto& [k, g] : ctx.letter_image(j))
        accumulate(out, g, {k}, ctx.one());
    return out;
}

// The endomorphism extended to forms: alpha(a dx_{w_1}..dx_{w_n}) =
// alpha(a) d(alpha(x_{w_1})) .. d(alpha(x_{w_n})). Cached per basis label.
template <class F>
DiffForm<F> alpha_form(const DiffForm<F>& a) {
    const auto& ctx = *a.ctx;
    DiffForm<F> out(ctx);
    for (const auto& [l, c] : a.coords) {
        auto hit = ctx.cache_alpha.find(l);
        if (hit == ctx.cache_alpha.end()) {
            DiffForm<F> img = form_from(
                ctx,
                ctx.alpha_poly(Polynomial<typename F::Elem>::monomial(
                    ctx.nvars(), l.exp, ctx.one())),
                {});
            for (std::uint32_t letter : l.word)
                img = img * letter_image_form(ctx, letter);
            std::vector<std::pair<Label, typename F::Elem>> flat(
                img.coords.begin(), img.coords.end());
            hit = ctx.cache_alpha.emplace(l, std::move(flat)).first;
        }
        for (const auto& [rl, rc] : hit->second)
            add_to(out.coords, rl, typename F::Elem(rc * c));
    }
    return out;
}

template <class F>
DiffForm<F> alpha_pow_form(DiffForm<F> a, std::uint32_t n) {
    for (std::uint32_t k = 0; k < n; ++k) a = alpha_form(a);
    return a;
}

// Degree -1 homotopy operator. Left A-linear, zero on 0-forms, and on a
// monomial with last letter v it satisfies
//   I(w dv) = I(w) d(alpha(v)) + (-1)^{|w|} w (v - alpha(v)).
// Together with d it witnesses d I + I d = 1 - alpha.
template <class F>
DiffForm<F> homI(const DiffForm<F>& a) {
    const auto& ctx = *a.ctx;
    DiffForm<F> out(ctx);
    for (const auto& [l, c] : a.coords) {
        auto hit = ctx.cache_homI.find(l);
        if (hit == ctx.cache_homI.end()) {
            DiffForm<F> img(ctx);
            if (!l.word.empty()) {
                std::uint32_t last = l.word.back();
                std::vector<std::uint32_t> head(l.word.begin(), l.word.end() - 1);
                DiffForm<F> prefix = form_from(
                    ctx,
                    Polynomial<typename F::Elem>::monomial(ctx.nvars(), l.exp,
                                                           ctx.one()),
                    head);
                img = homI(prefix) * letter_image_form(ctx, last);
                DiffForm<F> tail =
                    prefix * form_from(ctx,
                                       ctx.var_poly(last) -
                                           ctx.alpha_poly(ctx.var_poly(last)),
                                       {});
                if (head.size() % 2 == 1)
                    img -= tail;
                else
                    img += tail;
            }
            std::vector<std::pair<Label, typename F::Elem>> flat(
                img.coords.begin(), img.coords.end());
            hit = ctx.cache_homI.emplace(l, std::move(flat)).first;
        }
        for (const auto& [rl, rc] : hit->second)
            add_to(out.coords, rl, typename F::Elem(rc * c));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Printing. The canonical shape is scalar*monomial*letters with trivial parts
// omitted, terms joined by " + " or " - ", and composite scalars wrapped in
// parentheses so every printed form parses back.
// ---------------------------------------------------------------------------

inline bool scalar_needs_paren(const std::string& s) {
    int depth = 0;
    for (char ch : s) {
        if (ch == '(') ++depth;
        if (ch == ')') --depth;
        if (depth == 0 && ch == ' ') return true;
    }
    return false;
}

template <class F>
std::string term_to_string(const AlgebraCtx<F>& ctx,
                           const typename F::Elem& mag, const Label& l) {
    std::string mono = monomial_to_string(l.exp, ctx.variables());
    std::string letters;
    for (std::uint32_t w : l.word) {
        if (!letters.empty()) letters += "*";
        letters += "d" + ctx.variables()[w];
    }
    std::string cs = scalar_to_string(mag);
    bool trivial_scalar = (cs == "1");
    if (scalar_needs_paren(cs)) cs = "(" + cs + ")";
    std::string out;
    if (!trivial_scalar || (mono.empty() && letters.empty())) out = cs;
    if (!mono.empty()) out += (out.empty() ? "" : "*") + mono;
    if (!letters.empty()) out += (out.empty() ? "" : "*") + letters;
    return out;
}

template <class F>
std::string to_string(const DiffForm<F>& a) {
    if (a.is_zero()) return "0";
    const auto& ctx = *a.ctx;
    std::string out;
    bool first = true;
    for (const auto& [l, c] : a.coords) {
        bool neg = display_negative(c);
        typename F::Elem mag = neg ? typename F::Elem(-c) : c;
        std::string piece = term_to_string(ctx, mag, l);
        if (first)
            out = (neg ? "-" : "") + piece;
        else
            out += (neg ? " - " : " + ") + piece;
        first = false;
    }
    return out;
}

}  // namespace braidforms
