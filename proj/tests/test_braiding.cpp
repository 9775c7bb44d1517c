#include <catch2/catch_amalgamated.hpp>

#include "braidforms/braiding.hpp"

using namespace braidforms;

namespace {

AlgebraCtx<RationalFunctionField>& qx_ctx() {
    static AlgebraCtx<RationalFunctionField> ctx(
        RationalFunctionField{}, {"x"},
        EndoSpec<RatFn>::diagonal({RatFn::parameter()}), 8, 6);
    return ctx;
}

AlgebraCtx<RationalsField>& swap_ctx() {
    static AlgebraCtx<RationalsField> ctx(
        RationalsField{}, {"x", "y"},
        EndoSpec<Rational>::linear({{0, 1}, {1, 0}}), 6, 6);
    return ctx;
}

AlgebraCtx<RationalsField>& invol_ctx() {
    static AlgebraCtx<RationalsField> ctx = [] {
        Polynomial<Rational> image(1);
        image.add_term(Exponents{0}, Rational(1));
        image.add_term(Exponents{1}, Rational(-1));
        auto endo = EndoSpec<Rational>::general({image});
        Polynomial<Rational> rhs(1);
        rhs.add_term(Exponents{1}, Rational(1));
        endo.relations.push_back({0, 2, rhs});
        return AlgebraCtx<RationalsField>(RationalsField{}, {"x"},
                                          std::move(endo), 6, 6);
    }();
    return ctx;
}

AlgebraCtx<RationalsField>& qneg_ctx() {
    static AlgebraCtx<RationalsField> ctx(
        RationalsField{std::optional<Rational>(Rational(-1))}, {"x"},
        EndoSpec<Rational>::diagonal({Rational(-1)}), 6, 6);
    return ctx;
}

template <class F>
std::vector<Label> labels_within(const AlgebraCtx<F>& ctx, std::uint32_t max_d,
                                 std::uint32_t max_n) {
    std::vector<Label> out;
    for (const auto& key : ctx.block_keys(max_d, max_n))
        for (const Label& l : ctx.block(key).basis) out.push_back(l);
    return out;
}

template <class F>
MultiTensor<F> pair_tensor(const AlgebraCtx<F>& ctx, const Label& a,
                           const Label& b) {
    return outer2(label_form(ctx, a), label_form(ctx, b));
}

template <class F>
DiffForm<F> xpow_form(const AlgebraCtx<F>& ctx, std::uint32_t n,
                      std::vector<std::uint32_t> word = {}) {
    Exponents e(ctx.nvars(), 0);
    e[0] = n;
    return form_from(ctx,
                     Polynomial<typename F::Elem>::monomial(ctx.nvars(), e,
                                                            ctx.one()),
                     word);
}

// Pairs of basis labels with bounded total degrees.
template <class F>
std::vector<std::pair<Label, Label>> label_pairs(const AlgebraCtx<F>& ctx,
                                                 std::uint32_t max_d,
                                                 std::uint32_t max_f) {
    std::vector<std::pair<Label, Label>> out;
    auto ls = labels_within(ctx, max_d, max_f);
    for (const Label& a : ls)
        for (const Label& b : ls) {
            if (a.form_degree() + b.form_degree() > max_f) continue;
            if (ctx.graded() && a.var_degree() + b.var_degree() > max_d) continue;
            out.emplace_back(a, b);
        }
    return out;
}

}  // namespace

TEST_CASE("braiding of a one-form past a variable") {
    auto& ctx = qx_ctx();
    auto t = outer2(xpow_form(ctx, 0, {0}), xpow_form(ctx, 1));
    auto r = braid(t);
    REQUIRE(to_string(r) == "q*x (x) dx");
}

TEST_CASE("braiding of a variable past a one-form") {
    auto& ctx = qx_ctx();
    auto q = RatFn::parameter();
    auto one = ctx.one();
    // R(x^n (x) x^m dx) = x^m dx (x) x^n + (1 - q^n) x^(m+1) (x) x^(n-1) dx
    for (std::uint32_t n = 1; n <= 3; ++n)
        for (std::uint32_t m = 0; m <= 3; ++m) {
            auto r = braid(outer2(xpow_form(ctx, n), xpow_form(ctx, m, {0})));
            auto expect = outer2(xpow_form(ctx, m, {0}), xpow_form(ctx, n));
            RatFn c = one - elem_pow(RatFn(q), n, one);
            expect += outer2(xpow_form(ctx, m + 1), xpow_form(ctx, n - 1, {0}))
                          .scaled(c);
            REQUIRE(r == expect);
        }
}

TEST_CASE("unit axioms") {
    auto check = [](auto& ctx) {
        std::uint32_t d_hi = ctx.graded() ? 4 : 0;
        for (const Label& a : labels_within(ctx, d_hi, 2)) {
            auto t1 = pair_tensor(ctx, Label{Exponents(ctx.nvars(), 0), {}}, a);
            auto e1 = pair_tensor(ctx, a, Label{Exponents(ctx.nvars(), 0), {}});
            REQUIRE(braid(t1) == e1);
            REQUIRE(braid(e1) == t1);
        }
    };
    check(qx_ctx());
    check(swap_ctx());
    check(invol_ctx());
}

TEST_CASE("multiplication absorbs the braiding") {
    auto check = [](auto& ctx) {
        for (const auto& [a, b] : label_pairs(ctx, 5, 3)) {
            auto t = pair_tensor(ctx, a, b);
            REQUIRE(mu_at(braid(t), 0) == mu_at(t, 0));
        }
    };
    check(qx_ctx());
    check(swap_ctx());
    check(invol_ctx());
    check(qneg_ctx());
}

TEST_CASE("braiding is a map of complexes") {
    auto check = [](auto& ctx) {
        for (const auto& [a, b] : label_pairs(ctx, 5, 2)) {
            auto t = pair_tensor(ctx, a, b);
            REQUIRE(tensor_differential(braid(t)) == braid(tensor_differential(t)));
        }
    };
    check(qx_ctx());
    check(swap_ctx());
    check(invol_ctx());
    check(qneg_ctx());
}

TEST_CASE("compatibility with multiplication") {
    auto check = [](auto& ctx) {
        auto ls = labels_within(ctx, ctx.graded() ? 2 : 0, 1);
        for (const Label& a : ls)
            for (const Label& b : ls)
                for (const Label& c : ls) {
                    if (a.form_degree() + b.form_degree() + c.form_degree() > 3)
                        continue;
                    if (ctx.graded() &&
                        a.var_degree() + b.var_degree() + c.var_degree() > 6)
                        continue;
                    auto t = outer(ctx, {label_form(ctx, a), label_form(ctx, b),
                                         label_form(ctx, c)});
                    // R (1 (x) mu) = (mu (x) 1) (1 (x) R) (R (x) 1)
                    REQUIRE(braid(mu_at(t, 1)) ==
                            mu_at(braid_at(braid_at(t, 0), 1), 0));
                    // R (mu (x) 1) = (1 (x) mu) (R (x) 1) (1 (x) R)
                    REQUIRE(braid(mu_at(t, 0)) ==
                            mu_at(braid_at(braid_at(t, 1), 0), 1));
                }
    };
    check(qx_ctx());
    check(swap_ctx());
    check(invol_ctx());
}

TEST_CASE("braid equation on triples") {
    auto check = [](auto& ctx) {
        auto ls = labels_within(ctx, ctx.graded() ? 2 : 0, 1);
        for (const Label& a : ls)
            for (const Label& b : ls)
                for (const Label& c : ls) {
                    if (ctx.graded() &&
                        a.var_degree() + b.var_degree() + c.var_degree() > 6)
                        continue;
                    auto t = outer(ctx, {label_form(ctx, a), label_form(ctx, b),
                                         label_form(ctx, c)});
                    auto lhs = braid_at(braid_at(braid_at(t, 0), 1), 0);
                    auto rhs = braid_at(braid_at(braid_at(t, 1), 0), 1);
                    REQUIRE(lhs == rhs);
                }
    };
    check(qx_ctx());
    check(swap_ctx());
    check(invol_ctx());
}

TEST_CASE("recursion oracle agrees with the closed form") {
    auto check = [](auto& ctx, std::uint32_t max_d, std::uint32_t max_f) {
        for (const auto& [a, b] : label_pairs(ctx, max_d, max_f)) {
            auto t = pair_tensor(ctx, a, b);
            REQUIRE(braid(t, BraidKind::Oracle) == braid(t, BraidKind::Closed));
        }
    };
    check(qx_ctx(), 4, 2);
    check(swap_ctx(), 4, 2);
    check(invol_ctx(), 0, 2);
    check(qneg_ctx(), 4, 2);
}

TEST_CASE("oracle handles a first-order context") {
    Polynomial<Rational> sq(1);
    sq.add_term(Exponents{2}, Rational(1));
    AlgebraCtx<RationalsField> ctx(RationalsField{}, {"x"},
                                   EndoSpec<Rational>::general({sq}), 12, 1);
    for (const auto& [a, b] : label_pairs(ctx, 3, 1)) {
        auto t = pair_tensor(ctx, a, b);
        REQUIRE(braid(t, BraidKind::Oracle) == braid(t, BraidKind::Closed));
    }
}

TEST_CASE("corrupted braiding really is corrupt") {
    auto& ctx = qx_ctx();
    auto t = outer2(xpow_form(ctx, 1), xpow_form(ctx, 1));
    REQUIRE(mu_at(braid(t, BraidKind::Closed, true), 0) != mu_at(t, 0));
    // and the cache was not poisoned by the corrupt call
    REQUIRE(mu_at(braid(t), 0) == mu_at(t, 0));
}

TEST_CASE("braiding matrices on tensor-power blocks") {
    auto& ctx = qx_ctx();
    auto blk = enumerate_block(ctx, 2, 2, 1);
    REQUIRE(blk.basis.size() == 4);

    auto m = braid_matrix(ctx, blk);
    // matrix columns match the elementwise braiding
    for (std::size_t col = 0; col < blk.basis.size(); ++col) {
        auto img = braid(pair_tensor(ctx, blk.basis[col][0], blk.basis[col][1]));
        for (const auto& [key, c] : img.terms)
            REQUIRE(m.at(blk.index.at(key), col) == c);
    }

    auto inv = braid_inverse(ctx, m);
    auto id = Matrix<RatFn>::identity(blk.basis.size(), ctx.zero(), ctx.one());
    REQUIRE(matmul(m, inv, ctx.zero()) == id);
    REQUIRE(matmul(inv, m, ctx.zero()) == id);
}

TEST_CASE("a braiding matrix can be singular") {
    AlgebraCtx<RationalsField> ctx(
        RationalsField{std::optional<Rational>(Rational(0))}, {"x"},
        EndoSpec<Rational>::diagonal({Rational(0)}), 6, 6);
    auto blk = enumerate_block(ctx, 2, 2, 2);
    REQUIRE(blk.basis.size() == 1);
    auto m = braid_matrix(ctx, blk);
    REQUIRE(is_zero(m.at(0, 0)));
    REQUIRE_THROWS_AS(braid_inverse(ctx, m), SingularBlockError);
}

TEST_CASE("window stability is checked") {
    auto& ctx = qneg_ctx();
    Window w;
    w.f_hi = 1;
    auto blk = enumerate_block(ctx, 2, 3, 2, w);
    bool has_xdx_dx = false;
    for (const auto& key : blk.basis)
        if (key[0] == Label{{1}, {0}} && key[1] == Label{{0}, {0}})
            has_xdx_dx = true;
    REQUIRE(has_xdx_dx);
    REQUIRE_THROWS_AS(braid_matrix(ctx, blk), WindowUnstableError);

    // the full window on the same degrees is stable
    auto full = enumerate_block(ctx, 2, 3, 2);
    REQUIRE_NOTHROW(braid_matrix(ctx, full));
}

TEST_CASE("tensor printing") {
    auto& ctx = qx_ctx();
    auto t = outer2(xpow_form(ctx, 1).scaled(RatFn::parameter()),
                    xpow_form(ctx, 0, {0}));
    REQUIRE(to_string(t) == "q*x (x) dx");
    MultiTensor<RationalFunctionField> z(ctx, 2);
    REQUIRE(to_string(z) == "0");
}
