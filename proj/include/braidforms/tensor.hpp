#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "forms.hpp"

namespace braidforms {

// Element of an n-fold tensor power of the form algebra. Scalars are folded
// out of the factors, so a term is a tuple of basis labels with one nonzero
// coefficient; terms are merged and zero terms dropped on every operation.
template <class F>
class MultiTensor {
   public:
    using Elem = typename F::Elem;
    using Key = std::vector<Label>;
    using Terms = std::map<Key, Elem, LabelVecOrder>;

    const AlgebraCtx<F>* ctx = nullptr;
    std::size_t arity = 0;
    Terms terms;

    MultiTensor() = default;
    MultiTensor(const AlgebraCtx<F>& c, std::size_t arity_)
        : ctx(&c), arity(arity_) {}

    bool is_zero() const { return terms.empty(); }

    MultiTensor& operator+=(const MultiTensor& o) {
        for (const auto& [k, c] : o.terms) add_to(terms, k, c);
        return *this;
    }

    MultiTensor& operator-=(const MultiTensor& o) {
        for (const auto& [k, c] : o.terms) add_to(terms, k, Elem(-c));
        return *this;
    }

    MultiTensor operator+(const MultiTensor& o) const {
        MultiTensor r = *this;
        r += o;
        return r;
    }

    MultiTensor operator-(const MultiTensor& o) const {
        MultiTensor r = *this;
        r -= o;
        return r;
    }

    MultiTensor operator-() const {
        MultiTensor r(*ctx, arity);
        for (const auto& [k, c] : terms) r.terms.emplace(k, Elem(-c));
        return r;
    }

    MultiTensor scaled(const Elem& s) const {
        MultiTensor r(*ctx, arity);
        if (braidforms::is_zero(s)) return r;
        for (const auto& [k, c] : terms) add_to(r.terms, k, Elem(c * s));
        return r;
    }

    friend bool operator==(const MultiTensor& a, const MultiTensor& b) {
        return a.terms == b.terms;
    }
};

template <class F>
using TensorForm = MultiTensor<F>;

// Tensor product of forms, distributing over the normal coordinates.
template <class F>
MultiTensor<F> outer(const AlgebraCtx<F>& ctx,
                     const std::vector<DiffForm<F>>& factors) {
    MultiTensor<F> out(ctx, factors.size());
    std::vector<std::pair<typename MultiTensor<F>::Key, typename F::Elem>> acc;
    acc.emplace_back(typename MultiTensor<F>::Key{}, ctx.one());
    for (const auto& f : factors) {
        std::vector<std::pair<typename MultiTensor<F>::Key, typename F::Elem>> next;
        for (const auto& [key, c] : acc)
            for (const auto& [l, cf] : f.coords) {
                auto k2 = key;
                k2.push_back(l);
                next.emplace_back(std::move(k2), typename F::Elem(c * cf));
            }
        acc = std::move(next);
    }
    for (auto& [key, c] : acc) add_to(out.terms, key, c);
    return out;
}

template <class F>
MultiTensor<F> outer2(const DiffForm<F>& a, const DiffForm<F>& b) {
    return outer(*a.ctx, std::vector<DiffForm<F>>{a, b});
}

// Replace factor pos of every term by its image under fn, refolding scalars.
template <class F, class Fn>
MultiTensor<F> apply_at(const MultiTensor<F>& t, std::size_t pos, Fn&& fn) {
    MultiTensor<F> out(*t.ctx, t.arity);
    for (const auto& [key, c] : t.terms) {
        DiffForm<F> img = fn(key[pos]);
        for (const auto& [l, cf] : img.coords) {
            auto k2 = key;
            k2[pos] = l;
            add_to(out.terms, k2, typename F::Elem(c * cf));
        }
    }
    return out;
}

// Multiply factors pos and pos+1, lowering the arity by one.
template <class F>
MultiTensor<F> mu_at(const MultiTensor<F>& t, std::size_t pos) {
    const auto& ctx = *t.ctx;
    MultiTensor<F> out(ctx, t.arity - 1);
    for (const auto& [key, c] : t.terms) {
        DiffForm<F> prod = label_form(ctx, key[pos]) * label_form(ctx, key[pos + 1]);
        for (const auto& [l, cf] : prod.coords) {
            typename MultiTensor<F>::Key k2;
            k2.reserve(t.arity - 1);
            for (std::size_t i = 0; i < pos; ++i) k2.push_back(key[i]);
            k2.push_back(l);
            for (std::size_t i = pos + 2; i < t.arity; ++i) k2.push_back(key[i]);
            add_to(out.terms, k2, typename F::Elem(c * cf));
        }
    }
    return out;
}

// Graded differential of the tensor power:
// d(w_1 (x) .. (x) w_n) = sum_i (-1)^(f_1+..+f_(i-1)) .. d(w_i) ..
template <class F>
MultiTensor<F> tensor_differential(const MultiTensor<F>& t) {
    const auto& ctx = *t.ctx;
    MultiTensor<F> out(ctx, t.arity);
    for (const auto& [key, c] : t.terms) {
        std::uint32_t sign_deg = 0;
        for (std::size_t i = 0; i < t.arity; ++i) {
            DiffForm<F> di = d(label_form(ctx, key[i]));
            bool neg = (sign_deg % 2 == 1);
            for (const auto& [l, cf] : di.coords) {
                auto k2 = key;
                k2[i] = l;
                typename F::Elem v(c * cf);
                add_to(out.terms, k2, neg ? typename F::Elem(-v) : v);
            }
            sign_deg += key[i].form_degree();
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Windows and tensor-power blocks.
// ---------------------------------------------------------------------------

// Degree window selecting a subquotient of the capped form algebra: labels
// below the window are treated as zero, labels above must never appear.
struct Window {
    std::uint32_t d_lo = 0;
    std::uint32_t d_hi = std::numeric_limits<std::uint32_t>::max();
    std::uint32_t f_lo = 0;
    std::uint32_t f_hi = std::numeric_limits<std::uint32_t>::max();

    bool is_full() const {
        return d_lo == 0 && f_lo == 0 &&
               d_hi == std::numeric_limits<std::uint32_t>::max() &&
               f_hi == std::numeric_limits<std::uint32_t>::max();
    }
    bool below(const Label& l) const {
        return l.var_degree() < d_lo || l.form_degree() < f_lo;
    }
    bool above(const Label& l) const {
        return l.var_degree() > d_hi || l.form_degree() > f_hi;
    }
    bool contains(const Label& l) const { return !below(l) && !above(l); }
};

// Basis of one graded block of the n-fold tensor power: all tuples of block
// basis labels with the given total variable degree (ignored when -1) and
// total form degree, each factor inside the window. The enumeration order is
// the lexicographic order on tuples and is part of the contract.
template <class F>
struct PowerBlock {
    std::size_t arity = 2;
    std::int32_t var_deg = 0;
    std::uint32_t form_deg = 0;
    Window window;
    std::vector<std::vector<Label>> basis;
    std::map<std::vector<Label>, std::size_t, LabelVecOrder> index;
};

template <class F>
void enumerate_block_rec(const AlgebraCtx<F>& ctx, PowerBlock<F>& blk,
                         std::vector<Label>& cur, std::size_t pos,
                         std::int32_t rem_d, std::uint32_t rem_f) {
    if (pos == blk.arity) {
        if (rem_f == 0 && (blk.var_deg < 0 || rem_d == 0)) {
            blk.index.emplace(cur, blk.basis.size());
            blk.basis.push_back(cur);
        }
        return;
    }
    std::uint32_t f_hi = std::min(ctx.max_form_degree(), rem_f);
    for (std::uint32_t f = 0; f <= f_hi; ++f) {
        if (blk.var_deg < 0) {
            const auto& wb = ctx.block({f, -1});
            for (const Label& l : wb.basis) {
                if (!blk.window.contains(l)) continue;
                cur.push_back(l);
                enumerate_block_rec(ctx, blk, cur, pos + 1, rem_d, rem_f - f);
                cur.pop_back();
            }
            continue;
        }
        for (std::int32_t dd = f; dd <= rem_d; ++dd) {
            const auto& wb = ctx.block({f, dd});
            for (const Label& l : wb.basis) {
                if (!blk.window.contains(l)) continue;
                cur.push_back(l);
                enumerate_block_rec(ctx, blk, cur, pos + 1, rem_d - dd, rem_f - f);
                cur.pop_back();
            }
        }
    }
}

template <class F>
PowerBlock<F> enumerate_block(const AlgebraCtx<F>& ctx, std::size_t arity,
                              std::int32_t var_deg, std::uint32_t form_deg,
                              const Window& window = Window{}) {
    if (arity < 1) throw MalformedInputError("tensor power arity must be >= 1");
    if (ctx.mode() == BlockMode::FiniteDim) var_deg = -1;
    PowerBlock<F> blk;
    blk.arity = arity;
    blk.var_deg = var_deg;
    blk.form_deg = form_deg;
    blk.window = window;
    std::vector<Label> cur;
    enumerate_block_rec(ctx, blk, cur, 0, var_deg, form_deg);
    return blk;
}

// ---------------------------------------------------------------------------

template <class F>
std::string tuple_to_string(const AlgebraCtx<F>& ctx,
                            const typename F::Elem& lead,
                            const std::vector<Label>& key) {
    std::string out = term_to_string(ctx, lead, key.empty() ? Label{} : key[0]);
    for (std::size_t i = 1; i < key.size(); ++i)
        out += " (x) " + term_to_string(ctx, ctx.one(), key[i]);
    return out;
}

template <class F>
std::string to_string(const MultiTensor<F>& t) {
    if (t.is_zero()) return "0";
    const auto& ctx = *t.ctx;
    std::string out;
    bool first = true;
    for (const auto& [key, c] : t.terms) {
        bool neg = display_negative(c);
        typename F::Elem mag = neg ? typename F::Elem(-c) : c;
        std::string piece = tuple_to_string(ctx, mag, key);
        if (first)
            out = (neg ? "-" : "") + piece;
        else
            out += (neg ? " - " : " + ") + piece;
        first = false;
    }
    return out;
}

}  // namespace braidforms
