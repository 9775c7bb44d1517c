#pragma once

#include <map>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "braiding.hpp"

namespace braidforms {

struct RepFailure {
    std::string what;
};

struct RepReport {
    std::size_t blocks = 0;
    std::size_t checked = 0;
    bool alpha_involutive = false;
    std::vector<RepFailure> failures;

    bool ok() const { return failures.empty(); }
};

// Braid-group generators acting on the blocks of one tensor power of the
// form algebra. sigma(d, f, i) is the matrix of the braiding applied to
// factors (i-1, i), indexed from 1, on the block of total variable degree d
// (or -1 when the context is form-graded only) and total form degree f.
// Blocks and matrices are built on demand and cached per session.
template <class F>
class BraidRep {
   public:
    using Elem = typename F::Elem;

    BraidRep(const AlgebraCtx<F>& ctx, std::size_t arity,
             Window window = Window{}, BraidKind kind = BraidKind::Closed)
        : ctx_(&ctx), arity_(arity), window_(window), kind_(kind) {
        if (arity_ < 2)
            throw MalformedInputError("braid generators act on arity >= 2");
        if (ctx.mode() == BlockMode::FirstOrder)
            throw UnsupportedContextError(
                "generator matrices need blocks stable under the braiding; a "
                "non-graded endomorphism without relations has none");
    }

    const AlgebraCtx<F>& ctx() const { return *ctx_; }
    std::size_t arity() const { return arity_; }
    std::size_t generators() const { return arity_ - 1; }

    const PowerBlock<F>& block(std::int32_t var_deg, std::uint32_t form_deg) {
        auto key = std::make_pair(var_deg, form_deg);
        auto it = blocks_.find(key);
        if (it == blocks_.end())
            it = blocks_
                     .emplace(key, enumerate_block(*ctx_, arity_, var_deg,
                                                   form_deg, window_))
                     .first;
        return it->second;
    }

    const Matrix<Elem>& sigma(std::int32_t var_deg, std::uint32_t form_deg,
                              std::size_t i) {
        if (i < 1 || i >= arity_)
            throw MalformedInputError("braid generator index out of range");
        auto key = std::make_tuple(var_deg, form_deg, i);
        auto it = sigmas_.find(key);
        if (it == sigmas_.end()) {
            const auto& blk = block(var_deg, form_deg);
            it = sigmas_
                     .emplace(key,
                              braid_position_matrix(*ctx_, blk, i - 1, kind_))
                     .first;
        }
        return it->second;
    }

    Matrix<Elem> sigma_inverse(std::int32_t var_deg, std::uint32_t form_deg,
                               std::size_t i) {
        return inverse_matrix(sigma(var_deg, form_deg, i), ctx_->zero(),
                              ctx_->one());
    }

   private:
    const AlgebraCtx<F>* ctx_;
    std::size_t arity_;
    Window window_;
    BraidKind kind_;
    std::map<std::pair<std::int32_t, std::uint32_t>, PowerBlock<F>> blocks_;
    std::map<std::tuple<std::int32_t, std::uint32_t, std::size_t>, Matrix<Elem>>
        sigmas_;
};

// Keys (total variable degree, total form degree) of the tensor-power blocks
// within the given bounds; variable degree is the sentinel -1 when the
// context is form-graded only.
template <class F>
std::vector<std::pair<std::int32_t, std::uint32_t>> rep_block_keys(
    const AlgebraCtx<F>& ctx, std::uint32_t max_d, std::uint32_t max_f) {
    std::vector<std::pair<std::int32_t, std::uint32_t>> keys;
    if (ctx.mode() == BlockMode::FiniteDim) {
        for (std::uint32_t f = 0; f <= max_f; ++f) keys.emplace_back(-1, f);
        return keys;
    }
    for (std::uint32_t f = 0; f <= max_f; ++f)
        for (std::uint32_t d = f; d <= max_d; ++d)
            keys.emplace_back(static_cast<std::int32_t>(d), f);
    return keys;
}

namespace detail {

template <class F>
std::string rep_block_name(const BraidRep<F>& rep, std::int32_t var_deg,
                           std::uint32_t form_deg) {
    return "block(arity " + std::to_string(rep.arity()) + ", var degree " +
           std::to_string(var_deg) + ", form degree " +
           std::to_string(form_deg) + ")";
}

}  // namespace detail

// Exact matrix-level verification: every generator invertible, far-apart
// generators commute, and adjacent generators satisfy the braid relation.
template <class F>
RepReport verify_braid_relations(
    BraidRep<F>& rep,
    const std::vector<std::pair<std::int32_t, std::uint32_t>>& keys) {
    RepReport out;
    const auto& ctx = rep.ctx();
    for (const auto& [d, f] : keys) {
        const auto& blk = rep.block(d, f);
        ++out.blocks;
        if (blk.basis.empty()) continue;
        std::string name = detail::rep_block_name(rep, d, f);
        std::size_t g = rep.generators();
        for (std::size_t i = 1; i <= g; ++i) {
            ++out.checked;
            try {
                auto inv = rep.sigma_inverse(d, f, i);
                auto id = Matrix<typename F::Elem>::identity(
                    blk.basis.size(), ctx.zero(), ctx.one());
                if (!(matmul(rep.sigma(d, f, i), inv, ctx.zero()) == id))
                    out.failures.push_back(
                        {"sigma_" + std::to_string(i) +
                         " inverse does not verify on " + name});
            } catch (const SingularBlockError&) {
                out.failures.push_back({"sigma_" + std::to_string(i) +
                                        " is singular on " + name});
            }
        }
        for (std::size_t i = 1; i <= g; ++i)
            for (std::size_t j = i + 1; j <= g; ++j) {
                const auto& si = rep.sigma(d, f, i);
                const auto& sj = rep.sigma(d, f, j);
                ++out.checked;
                if (j == i + 1) {
                    auto lhs = matmul(matmul(si, sj, ctx.zero()), si, ctx.zero());
                    auto rhs = matmul(matmul(sj, si, ctx.zero()), sj, ctx.zero());
                    if (!(lhs == rhs))
                        out.failures.push_back(
                            {"braid relation fails for sigma_" +
                             std::to_string(i) + ", sigma_" + std::to_string(j) +
                             " on " + name});
                } else {
                    if (!(matmul(si, sj, ctx.zero()) == matmul(sj, si, ctx.zero())))
                        out.failures.push_back(
                            {"distant generators sigma_" + std::to_string(i) +
                             ", sigma_" + std::to_string(j) +
                             " do not commute on " + name});
                }
            }
    }
    return out;
}

// When alpha is an involution the braiding squares to the identity and the
// blocks carry symmetric-group representations; check both statements.
template <class F>
RepReport verify_involution(
    BraidRep<F>& rep,
    const std::vector<std::pair<std::int32_t, std::uint32_t>>& keys) {
    RepReport out;
    const auto& ctx = rep.ctx();
    out.alpha_involutive = true;
    for (std::size_t i = 0; i < ctx.nvars(); ++i) {
        auto twice = ctx.reduce_poly(ctx.alpha_poly(ctx.alpha_poly(ctx.var_poly(i))));
        if (!(twice == ctx.reduce_poly(ctx.var_poly(i))))
            out.alpha_involutive = false;
    }
    if (!out.alpha_involutive)
        out.failures.push_back(
            {"alpha is not an involution; sigma_i^2 = 1 is not expected"});
    for (const auto& [d, f] : keys) {
        const auto& blk = rep.block(d, f);
        ++out.blocks;
        if (blk.basis.empty()) continue;
        auto id = Matrix<typename F::Elem>::identity(blk.basis.size(),
                                                     ctx.zero(), ctx.one());
        for (std::size_t i = 1; i <= rep.generators(); ++i) {
            ++out.checked;
            const auto& s = rep.sigma(d, f, i);
            if (!(matmul(s, s, ctx.zero()) == id))
                out.failures.push_back(
                    {"sigma_" + std::to_string(i) + " squared is not the identity on " +
                     detail::rep_block_name(rep, d, f)});
        }
    }
    return out;
}

}  // namespace braidforms
