#pragma once

#include <string>
#include <utility>
#include <vector>

#include "tensor.hpp"

namespace braidforms {

enum class BraidKind { Closed, Oracle };

template <class F>
using BraidPairResult =
    std::vector<std::pair<std::pair<Label, Label>, typename F::Elem>>;

// Closed form of the braiding on a pair of basis labels:
//   R(w (x) p) = (-1)^(|w||p|) alpha^{|w|}(p) (x) w
//              - (-1)^((|w|+1)|p|) I(alpha^{|w|}(p)) (x) d(w).
// d(w) is only computed when the homotopy factor is nonzero, so contexts
// where I vanishes never pay for (or overflow on) the extra form degree.
// "corrupt" deliberately breaks the result; it exists so that failing
// verification runs can be exercised end to end.
template <class F>
MultiTensor<F> braid_pair_closed_impl(const AlgebraCtx<F>& ctx, const Label& a,
                                      const Label& b, bool corrupt) {
    std::uint32_t i = a.form_degree();
    std::uint32_t j = b.form_degree();
    MultiTensor<F> out(ctx, 2);

    DiffForm<F> A = alpha_pow_form(label_form(ctx, b), i);
    bool sign1_neg = (i * j) % 2 == 1;
    if (corrupt) sign1_neg = !sign1_neg;
    for (const auto& [l, c] : A.coords) {
        typename F::Elem v = sign1_neg ? typename F::Elem(-c) : c;
        add_to(out.terms, std::vector<Label>{l, a}, v);
    }

    if (!corrupt) {
        DiffForm<F> IA = homI(A);
        if (!IA.is_zero()) {
            DiffForm<F> da = d(label_form(ctx, a));
            bool sign2_neg = ((i + 1) * j) % 2 == 1;
            for (const auto& [l1, c1] : IA.coords)
                for (const auto& [l2, c2] : da.coords) {
                    typename F::Elem v(c1 * c2);
                    // overall factor -(-1)^((i+1) j)
                    add_to(out.terms, std::vector<Label>{l1, l2},
                           sign2_neg ? v : typename F::Elem(-v));
                }
        }
    }
    return out;
}

template <class F>
MultiTensor<F> braid_pair_oracle(const AlgebraCtx<F>& ctx, const Label& a,
                                 const Label& b, int depth);

template <class F>
MultiTensor<F> braid_oracle_tensor2(const AlgebraCtx<F>& ctx,
                                    const MultiTensor<F>& t, int depth) {
    MultiTensor<F> out(ctx, 2);
    for (const auto& [key, c] : t.terms)
        out += braid_pair_oracle(ctx, key[0], key[1], depth).scaled(c);
    return out;
}

// Independent recursion for the braiding, built only from the structural
// moves: the flip on 0-forms, naturality of d, the two multiplicativity
// rules, and the one-form expansion
//   R(u dx_l (x) c) = alpha(c) (x) (d(u x_l) - d(u) x_l).
// It never consults the closed form above, which is what makes comparing the
// two meaningful.
template <class F>
MultiTensor<F> braid_pair_oracle(const AlgebraCtx<F>& ctx, const Label& a,
                                 const Label& b, int depth) {
    if (depth > 200)
        throw MalformedInputError(
            "braiding recursion exceeded its depth bound; input malformed");
    std::uint32_t i = a.form_degree();
    std::uint32_t j = b.form_degree();
    const int next = depth + 1;

    if (j == 0) {
        if (i == 0) {
            MultiTensor<F> out(ctx, 2);
            out.terms.emplace(std::vector<Label>{b, a}, ctx.one());
            return out;
        }
        if (i == 1) {
            DiffForm<F> cbar = alpha_form(label_form(ctx, b));
            auto u = Polynomial<typename F::Elem>::monomial(ctx.nvars(), a.exp,
                                                            ctx.one());
            std::uint32_t letter = a.word[0];
            DiffForm<F> f1 =
                d(form_from(ctx, u * ctx.var_poly(letter),
                            std::vector<std::uint32_t>{}));
            DiffForm<F> f2 = d(form_from(ctx, u, {})) *
                             form_from(ctx, ctx.var_poly(letter), {});
            return outer2(cbar, f1 - f2);
        }
        // i >= 2: peel the last letter; R(w dx_l (x) v) has the same first
        // factors as R(w (x) alpha(v)) with dx_l reattached on the right.
        std::uint32_t letter = a.word.back();
        std::vector<std::uint32_t> headword(a.word.begin(), a.word.end() - 1);
        DiffForm<F> head = form_from(
            ctx,
            Polynomial<typename F::Elem>::monomial(ctx.nvars(), a.exp, ctx.one()),
            headword);
        DiffForm<F> vbar = alpha_form(label_form(ctx, b));
        MultiTensor<F> T = braid_oracle_tensor2(ctx, outer2(head, vbar), next);
        DiffForm<F> dxl = form_from(ctx, ctx.one_poly(), {letter});
        MultiTensor<F> out(ctx, 2);
        for (const auto& [key, c] : T.terms) {
            DiffForm<F> second = label_form(ctx, key[1]) * dxl;
            for (const auto& [l2, c2] : second.coords)
                add_to(out.terms, std::vector<Label>{key[0], l2},
                       typename F::Elem(c * c2));
        }
        return out;
    }

    // j >= 1: write b = kappa dv with v the last letter. Combining
    // naturality of the tensor differential with the multiplicativity rules
    // expresses R(a (x) kappa dv) through strictly smaller second factors:
    //   R(a (x) kappa dv) = (-1)^(i+j-1) [ d R(a (x) kappa v)
    //                                    - R(da (x) kappa v)
    //                                    - (-1)^i R(a (x) (d kappa) v) ].
    std::uint32_t letter = b.word.back();
    std::vector<std::uint32_t> headword(b.word.begin(), b.word.end() - 1);
    DiffForm<F> kappa = form_from(
        ctx,
        Polynomial<typename F::Elem>::monomial(ctx.nvars(), b.exp, ctx.one()),
        headword);
    DiffForm<F> v0 = form_from(ctx, ctx.var_poly(letter), {});
    DiffForm<F> af = label_form(ctx, a);
    DiffForm<F> da = d(af);
    DiffForm<F> kv = kappa * v0;

    MultiTensor<F> A1 =
        tensor_differential(braid_oracle_tensor2(ctx, outer2(af, kv), next));
    MultiTensor<F> A2 = braid_oracle_tensor2(ctx, outer2(da, kv), next);

    // T = R(a (x) d kappa), again by naturality of d.
    MultiTensor<F> T =
        tensor_differential(braid_oracle_tensor2(ctx, outer2(af, kappa), next)) -
        braid_oracle_tensor2(ctx, outer2(da, kappa), next);
    if (i % 2 == 1) T = -T;

    // A3 = R(a (x) (d kappa) v): move the 0-form v through the result of T
    // with the compatibility rule, using the oracle itself on (factor, v).
    MultiTensor<F> A3(ctx, 2);
    for (const auto& [key, c] : T.terms) {
        MultiTensor<F> rqv =
            braid_oracle_tensor2(ctx, outer2(label_form(ctx, key[1]), v0), next);
        for (const auto& [key2, c2] : rqv.terms) {
            DiffForm<F> first = label_form(ctx, key[0]) * label_form(ctx, key2[0]);
            for (const auto& [l1, c3] : first.coords)
                add_to(A3.terms, std::vector<Label>{l1, key2[1]},
                       typename F::Elem(c * c2 * c3));
        }
    }

    MultiTensor<F> res = A1 - A2 - (i % 2 == 0 ? A3 : -A3);
    if ((i + j - 1) % 2 == 1) res = -res;
    return res;
}

// Braiding of a pair of basis labels, cached on the context. Corrupted
// results are never cached.
template <class F>
BraidPairResult<F> braid_pair(const AlgebraCtx<F>& ctx, const Label& a,
                              const Label& b, BraidKind kind,
                              bool corrupt = false) {
    auto key = std::make_tuple(a, b, static_cast<int>(kind));
    if (!corrupt) {
        auto it = ctx.cache_braid.find(key);
        if (it != ctx.cache_braid.end()) return it->second;
    }
    MultiTensor<F> r = (kind == BraidKind::Closed)
                           ? braid_pair_closed_impl(ctx, a, b, corrupt)
                           : braid_pair_oracle(ctx, a, b, 0);
    BraidPairResult<F> flat;
    flat.reserve(r.terms.size());
    for (const auto& [k, c] : r.terms)
        flat.emplace_back(std::make_pair(k[0], k[1]), c);
    if (!corrupt) ctx.cache_braid.emplace(std::move(key), flat);
    return flat;
}

// Apply the braiding to factors (pos, pos+1) of a tensor.
template <class F>
MultiTensor<F> braid_at(const MultiTensor<F>& t, std::size_t pos,
                        BraidKind kind = BraidKind::Closed,
                        bool corrupt = false) {
    const auto& ctx = *t.ctx;
    if (pos + 1 >= t.arity)
        throw MalformedInputError("braiding position out of range");
    MultiTensor<F> out(ctx, t.arity);
    for (const auto& [key, c] : t.terms) {
        auto pr = braid_pair(ctx, key[pos], key[pos + 1], kind, corrupt);
        for (const auto& [lp, c2] : pr) {
            auto key2 = key;
            key2[pos] = lp.first;
            key2[pos + 1] = lp.second;
            add_to(out.terms, key2, typename F::Elem(c * c2));
        }
    }
    return out;
}

template <class F>
MultiTensor<F> braid(const MultiTensor<F>& t, BraidKind kind = BraidKind::Closed,
                     bool corrupt = false) {
    if (t.arity != 2)
        throw MalformedInputError("the braiding itself acts on 2-tensors; use "
                                  "braid_at for higher arity");
    return braid_at(t, 0, kind, corrupt);
}

// Matrix of the braiding applied at factors (pos, pos+1) of a tensor-power
// block, in the block's enumeration basis. Labels below the block's window
// project to zero; a label above the window means the window was not stable
// and is an error here.
template <class F>
Matrix<typename F::Elem> braid_position_matrix(const AlgebraCtx<F>& ctx,
                                               const PowerBlock<F>& blk,
                                               std::size_t pos,
                                               BraidKind kind = BraidKind::Closed) {
    Matrix<typename F::Elem> m(blk.basis.size(), blk.basis.size(), ctx.zero());
    for (std::size_t col = 0; col < blk.basis.size(); ++col) {
        const auto& key = blk.basis[col];
        auto pr = braid_pair(ctx, key[pos], key[pos + 1], kind);
        for (const auto& [lp, c] : pr) {
            if (blk.window.below(lp.first) || blk.window.below(lp.second)) continue;
            if (blk.window.above(lp.first) || blk.window.above(lp.second))
                throw WindowUnstableError(
                    "the braiding leaves the requested window on basis vector " +
                    tuple_to_string(ctx, ctx.one(), key));
            auto key2 = key;
            key2[pos] = lp.first;
            key2[pos + 1] = lp.second;
            auto it = blk.index.find(key2);
            if (it == blk.index.end())
                throw MalformedInputError(
                    "braiding image left its graded block; basis vector " +
                    tuple_to_string(ctx, ctx.one(), key));
            m.at(it->second, col) += c;
        }
    }
    return m;
}

template <class F>
Matrix<typename F::Elem> braid_matrix(const AlgebraCtx<F>& ctx,
                                      const PowerBlock<F>& blk,
                                      BraidKind kind = BraidKind::Closed) {
    if (blk.arity != 2)
        throw MalformedInputError("braid_matrix expects a 2-fold block");
    return braid_position_matrix(ctx, blk, 0, kind);
}

template <class F>
Matrix<typename F::Elem> braid_inverse(const AlgebraCtx<F>& ctx,
                                       const Matrix<typename F::Elem>& m) {
    return inverse_matrix(m, ctx.zero(), ctx.one());
}

}  // namespace braidforms
