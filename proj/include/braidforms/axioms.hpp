#pragma once

#include <string>
#include <vector>

#include "braiding.hpp"

namespace braidforms {

struct AxiomFailure {
    std::string axiom;
    std::string witness;
};

struct AxiomReport {
    std::size_t checked = 0;
    std::size_t naturality_maps = 0;
    std::size_t naturality_skipped = 0;
    std::vector<AxiomFailure> failures;

    bool ok() const { return failures.empty(); }
};

template <class K>
Polynomial<K> scale_poly(const Polynomial<K>& p, const K& c, const K& one) {
    Polynomial<K> out(p.nvars());
    for (const auto& [e, coeff] : p.terms())
        out.add_term(e, K(coeff * elem_pow(c, total_degree(e), one)));
    return out;
}

// The algebra endomorphism x_i -> c x_i, extended to forms: a basis label
// picks up c to its variable degree.
template <class F>
DiffForm<F> scale_variables(const DiffForm<F>& w, const typename F::Elem& c) {
    const auto& ctx = *w.ctx;
    DiffForm<F> out(ctx);
    for (const auto& [l, v] : w.coords)
        add_to(out.coords, l,
               typename F::Elem(v * elem_pow(c, l.var_degree(), ctx.one())));
    return out;
}

// Scaling by c is only a morphism of the whole structure when it commutes
// with alpha and preserves the power relations.
template <class F>
bool scaling_is_morphism(const AlgebraCtx<F>& ctx, const typename F::Elem& c) {
    for (std::size_t i = 0; i < ctx.nvars(); ++i) {
        auto ax = ctx.alpha_poly(ctx.var_poly(i));
        auto lhs = ctx.reduce_poly(scale_poly(ax, c, ctx.one()));
        auto rhs = ctx.reduce_poly(ctx.alpha_poly(ctx.var_poly(i).scaled(c)));
        if (!(lhs == rhs)) return false;
    }
    for (const auto& r : ctx.endo().relations) {
        auto lhs = poly_pow(ctx.var_poly(r.var).scaled(c), r.power, ctx.one());
        auto rhs = scale_poly(r.rhs, c, ctx.one());
        if (!(ctx.reduce_poly(lhs - rhs).is_zero())) return false;
    }
    return true;
}

namespace detail {

template <class F>
std::vector<std::pair<Label, Label>> degree_pairs(const AlgebraCtx<F>& ctx,
                                                  std::uint32_t max_d,
                                                  std::uint32_t max_f) {
    std::vector<std::pair<Label, Label>> out;
    auto ls = basis_labels(ctx, max_d, max_f);
    for (const Label& a : ls)
        for (const Label& b : ls) {
            if (a.form_degree() + b.form_degree() > max_f) continue;
            if (ctx.graded() && a.var_degree() + b.var_degree() > max_d) continue;
            out.emplace_back(a, b);
        }
    return out;
}

template <class F>
std::vector<std::vector<Label>> degree_triples(const AlgebraCtx<F>& ctx,
                                               std::uint32_t max_d,
                                               std::uint32_t max_f) {
    std::vector<std::vector<Label>> out;
    auto ls = basis_labels(ctx, max_d, max_f);
    for (const Label& a : ls)
        for (const Label& b : ls) {
            if (a.form_degree() + b.form_degree() > max_f) continue;
            if (ctx.graded() && a.var_degree() + b.var_degree() > max_d) continue;
            for (const Label& c : ls) {
                if (a.form_degree() + b.form_degree() + c.form_degree() > max_f)
                    continue;
                if (ctx.graded() && a.var_degree() + b.var_degree() +
                                            c.var_degree() >
                                        max_d)
                    continue;
                out.push_back({a, b, c});
            }
        }
    return out;
}

}  // namespace detail

// Verify the braiding axioms exactly on every basis tensor within the given
// total degree bounds: the unit conditions, multiplication compatibility on
// triples, the braid equation on triples, mu after R equals mu, commutation
// with the tensor differential, and naturality under variable scalings.
// Stops recording (and working) once failure_cap failures have been found.
template <class F>
AxiomReport check_axioms(const AlgebraCtx<F>& ctx, std::uint32_t max_d,
                         std::uint32_t max_f,
                         BraidKind kind = BraidKind::Closed,
                         bool corrupt = false, std::size_t failure_cap = 8) {
    AxiomReport rep;
    const auto one = ctx.one();
    auto full = [&] { return rep.failures.size() >= failure_cap; };
    auto note = [&](const char* axiom, const std::string& witness) {
        if (!full()) rep.failures.push_back({axiom, witness});
    };
    auto rbraid = [&](const MultiTensor<F>& t, std::size_t pos) {
        return braid_at(t, pos, kind, corrupt);
    };

    Label unit_label{Exponents(ctx.nvars(), 0), {}};
    auto labels = basis_labels(ctx, max_d, max_f);
    auto pairs = detail::degree_pairs(ctx, max_d, max_f);
    auto triples = detail::degree_triples(ctx, max_d, max_f);

    for (const Label& a : labels) {
        if (full()) return rep;
        auto fa = label_form(ctx, a);
        auto u = label_form(ctx, unit_label);
        ++rep.checked;
        if (rbraid(outer2(u, fa), 0) != outer2(fa, u))
            note("unit-left", to_string(fa));
        ++rep.checked;
        if (rbraid(outer2(fa, u), 0) != outer2(u, fa))
            note("unit-right", to_string(fa));
    }

    for (const auto& [a, b] : pairs) {
        if (full()) return rep;
        auto t = outer2(label_form(ctx, a), label_form(ctx, b));
        ++rep.checked;
        if (mu_at(rbraid(t, 0), 0) != mu_at(t, 0))
            note("multiplication-after-braiding", tuple_to_string(ctx, one, {a, b}));
        if (a.form_degree() + b.form_degree() + 1 <= ctx.max_form_degree()) {
            ++rep.checked;
            if (tensor_differential(rbraid(t, 0)) != rbraid(tensor_differential(t), 0))
                note("differential-commutation", tuple_to_string(ctx, one, {a, b}));
        }
    }

    for (const auto& key : triples) {
        if (full()) return rep;
        auto t = outer(ctx, {label_form(ctx, key[0]), label_form(ctx, key[1]),
                             label_form(ctx, key[2])});
        ++rep.checked;
        if (rbraid(mu_at(t, 1), 0) != mu_at(rbraid(rbraid(t, 0), 1), 0))
            note("product-compatibility-left", tuple_to_string(ctx, one, key));
        ++rep.checked;
        if (rbraid(mu_at(t, 0), 0) != mu_at(rbraid(rbraid(t, 1), 0), 1))
            note("product-compatibility-right", tuple_to_string(ctx, one, key));
        ++rep.checked;
        if (rbraid(rbraid(rbraid(t, 0), 1), 0) !=
            rbraid(rbraid(rbraid(t, 1), 0), 1))
            note("braid-equation", tuple_to_string(ctx, one, key));
    }

    for (long probe : {2L, -1L}) {
        if (full()) return rep;
        auto c = ctx.field().from_long(probe);
        if (!scaling_is_morphism(ctx, c)) {
            ++rep.naturality_skipped;
            continue;
        }
        ++rep.naturality_maps;
        auto phi = [&](const Label& l) {
            return scale_variables(label_form(ctx, l), c);
        };
        for (const auto& [a, b] : pairs) {
            if (full()) return rep;
            auto t = outer2(label_form(ctx, a), label_form(ctx, b));
            ++rep.checked;
            if (apply_at(apply_at(rbraid(t, 0), 0, phi), 1, phi) !=
                rbraid(apply_at(apply_at(t, 0, phi), 1, phi), 0))
                note("scaling-naturality", tuple_to_string(ctx, one, {a, b}));
        }
    }
    return rep;
}

}  // namespace braidforms
