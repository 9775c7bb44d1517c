#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "endo.hpp"
#include "linalg.hpp"
#include "polynomial.hpp"

namespace braidforms {

// Basis label of a form monomial: coefficient monomial exponents plus the
// word of letters. The letter word (i_1..i_n) stands for dx_{i_1}..dx_{i_n}.
struct Label {
    Exponents exp;
    std::vector<std::uint32_t> word;

    std::uint32_t form_degree() const {
        return static_cast<std::uint32_t>(word.size());
    }
    std::uint32_t var_degree() const {
        return total_degree(exp) + static_cast<std::uint32_t>(word.size());
    }

    friend bool operator==(const Label&, const Label&) = default;
    friend auto operator<=>(const Label&, const Label&) = default;
};

// Order used for form coordinates: by form degree, then variable degree, then
// plain (exponents, word) order. Within a single block this coincides with
// the plain order.
struct LabelOrder {
    bool operator()(const Label& a, const Label& b) const {
        if (a.word.size() != b.word.size()) return a.word.size() < b.word.size();
        std::uint32_t da = a.var_degree(), db = b.var_degree();
        if (da != db) return da < db;
        return a < b;
    }
};

struct LabelVecOrder {
    bool operator()(const std::vector<Label>& a, const std::vector<Label>& b) const {
        return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                            LabelOrder{});
    }
};

// Key of one finite-dimensional block. var_deg is -1 when the context grades
// by form degree only (all variables carry power relations).
struct BlockKey {
    std::uint32_t form_deg = 0;
    std::int32_t var_deg = 0;

    friend bool operator==(const BlockKey&, const BlockKey&) = default;
    friend auto operator<=>(const BlockKey&, const BlockKey&) = default;
};

enum class BlockMode { Graded, FiniteDim, FirstOrder };

// Quotient basis of one block together with the projection from the raw span
// (all coefficient-monomial times word labels) onto it. Relations eliminate
// the largest labels, so the basis keeps the smallest ones.
template <class K>
struct WordBlockBasis {
    BlockKey key;
    std::vector<Label> raw;
    std::vector<Label> basis;
    std::map<Label, std::size_t> raw_index;
    std::map<Label, std::size_t> basis_index;
    // raw index -> expansion over basis indices
    std::vector<std::vector<std::pair<std::size_t, K>>> expand;

    std::size_t dim() const { return basis.size(); }
};

inline void enumerate_exponents_total(std::size_t m, std::uint32_t total,
                                      Exponents& cur, std::size_t at,
                                      std::vector<Exponents>& out) {
    if (at + 1 == m) {
        cur[at] = total;
        out.push_back(cur);
        return;
    }
    for (std::uint32_t v = 0; v <= total; ++v) {
        cur[at] = v;
        enumerate_exponents_total(m, total - v, cur, at + 1, out);
    }
}

inline std::vector<Exponents> exponents_with_total(std::size_t m, std::uint32_t total) {
    std::vector<Exponents> out;
    Exponents cur(m, 0);
    enumerate_exponents_total(m, total, cur, 0, out);
    return out;
}

inline std::vector<Exponents> exponents_in_box(const std::vector<std::uint32_t>& bound) {
    std::vector<Exponents> out;
    Exponents cur(bound.size(), 0);
    std::size_t m = bound.size();
    while (true) {
        out.push_back(cur);
        std::size_t i = 0;
        while (i < m) {
            if (++cur[i] < bound[i]) break;
            cur[i] = 0;
            ++i;
        }
        if (i == m) break;
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline std::vector<std::vector<std::uint32_t>> words_of_length(std::size_t m,
                                                               std::size_t n) {
    std::vector<std::vector<std::uint32_t>> out;
    std::vector<std::uint32_t> cur(n, 0);
    if (n == 0) {
        out.push_back(cur);
        return out;
    }
    while (true) {
        out.push_back(cur);
        std::size_t i = n;
        while (i > 0) {
            --i;
            if (++cur[i] < m) break;
            cur[i] = 0;
            if (i == 0) return out;
        }
    }
}

// The algebra context: coefficient field, variables, endomorphism, optional
// power relations, and the degree caps (D for variable degree, N for form
// degree). All block bases and the label-level operation caches live here.
template <class F>
class AlgebraCtx {
   public:
    using Field = F;
    using Elem = typename F::Elem;
    using Poly = Polynomial<Elem>;

    AlgebraCtx(F field, std::vector<std::string> variables, EndoSpec<Elem> endo,
               std::uint32_t max_var_degree, std::uint32_t max_form_degree)
        : field_(std::move(field)),
          vars_(std::move(variables)),
          endo_(std::move(endo)),
          cap_d_(max_var_degree),
          cap_n_(max_form_degree) {
        if (vars_.empty()) throw ConfigError("a context needs at least one variable");
        for (std::size_t i = 0; i < vars_.size(); ++i)
            for (std::size_t j = i + 1; j < vars_.size(); ++j)
                if (vars_[i] == vars_[j]) throw ConfigError("duplicate variable name");
        validate_endo(endo_, vars_.size(), field_);

        std::size_t m = vars_.size();
        letter_images_.resize(m);
        for (std::size_t j = 0; j < m; ++j) {
            auto d_img = d_poly(endo_image(endo_, m, j, field_));
            for (std::size_t k = 0; k < m; ++k)
                if (!d_img[k].is_zero())
                    letter_images_[j].emplace_back(static_cast<std::uint32_t>(k),
                                                   d_img[k]);
        }

        decide_mode();
        build_generators();
    }

    AlgebraCtx(const AlgebraCtx&) = delete;
    AlgebraCtx& operator=(const AlgebraCtx&) = delete;

    const F& field() const { return field_; }
    std::size_t nvars() const { return vars_.size(); }
    const std::vector<std::string>& variables() const { return vars_; }
    const EndoSpec<Elem>& endo() const { return endo_; }
    std::uint32_t max_var_degree() const { return cap_d_; }
    std::uint32_t max_form_degree() const { return cap_n_; }
    BlockMode mode() const { return mode_; }
    bool graded() const { return mode_ != BlockMode::FiniteDim; }

    Elem zero() const { return field_.zero(); }
    Elem one() const { return field_.one(); }
    Poly zero_poly() const { return Poly(nvars()); }
    Poly one_poly() const { return Poly::constant(nvars(), one()); }
    Poly var_poly(std::size_t i) const {
        return Poly::variable(nvars(), i, one());
    }

    Poly reduce_poly(const Poly& p) const { return reduce(p, endo_.relations); }
    Poly alpha_poly(const Poly& p) const { return apply_endo(p, endo_, field_); }
    Poly alpha_pow_poly(Poly p, std::uint32_t n) const {
        for (std::uint32_t k = 0; k < n; ++k) p = alpha_poly(p);
        return p;
    }

    // d(alpha(x_j)) expanded over letters, with reduced coefficients.
    const std::vector<std::pair<std::uint32_t, Poly>>& letter_image(std::size_t j) const {
        return letter_images_[j];
    }

    // Letter coefficients of d(p): d(p) = sum_k (result[k]) dx_k, derived from
    // the twisted product rule d(uv) = alpha(v) du + u dv applied to each
    // monomial in variable order.
    std::vector<Poly> d_poly(const Poly& p) const {
        std::size_t m = p.nvars();
        std::vector<Poly> out(m, Poly(m));
        for (const auto& [e, c] : p.terms()) {
            for (std::size_t i = 0; i < m; ++i) {
                if (e[i] == 0) continue;
                Exponents pre(m, 0), suf(m, 0);
                for (std::size_t t = 0; t < i; ++t) pre[t] = e[t];
                for (std::size_t t = i + 1; t < m; ++t) suf[t] = e[t];
                Poly coeff = Poly::monomial(m, pre, c) * dpow(i, e[i]) *
                             alpha_poly(Poly::monomial(m, suf, one()));
                out[i] += coeff;
            }
        }
        for (auto& q : out) q = reduce_poly(q);
        return out;
    }

    BlockKey key_of(const Label& l) const {
        if (mode_ == BlockMode::FiniteDim) return {l.form_degree(), -1};
        return {l.form_degree(), static_cast<std::int32_t>(l.var_degree())};
    }

    // Caps are checked on every block access, so any computation that would
    // leave the configured range fails loudly instead of truncating.
    void check_caps(const BlockKey& key) const {
        if (key.form_deg > cap_n_)
            throw CapExceededError("form degree " + std::to_string(key.form_deg) +
                                   " exceeds the cap " + std::to_string(cap_n_));
        if (mode_ != BlockMode::FiniteDim &&
            key.var_deg > static_cast<std::int32_t>(cap_d_))
            throw CapExceededError("variable degree " + std::to_string(key.var_deg) +
                                   " exceeds the cap " + std::to_string(cap_d_));
    }

    const WordBlockBasis<Elem>& block(const BlockKey& key) const {
        check_caps(key);
        auto it = blocks_.find(key);
        if (it == blocks_.end())
            it = blocks_.emplace(key, build_block(key)).first;
        return *it->second;
    }

    // All block keys with form degree <= max_n (and variable degree <= max_d
    // where the context is graded), in ascending order.
    std::vector<BlockKey> block_keys(std::uint32_t max_d, std::uint32_t max_n) const {
        std::vector<BlockKey> keys;
        std::uint32_t n_hi = std::min(max_n, cap_n_);
        if (mode_ == BlockMode::FiniteDim) {
            for (std::uint32_t n = 0; n <= n_hi; ++n) keys.push_back({n, -1});
            return keys;
        }
        if (mode_ == BlockMode::FirstOrder) n_hi = std::min<std::uint32_t>(n_hi, 1);
        std::uint32_t d_hi = std::min(max_d, cap_d_);
        for (std::uint32_t n = 0; n <= n_hi; ++n)
            for (std::uint32_t d = n; d <= d_hi; ++d)
                keys.push_back({n, static_cast<std::int32_t>(d)});
        return keys;
    }

    // Label-level caches shared by the form and braiding layers.
    mutable std::map<Label, std::vector<std::pair<Label, Elem>>> cache_alpha;
    mutable std::map<Label, std::vector<std::pair<Label, Elem>>> cache_homI;
    mutable std::map<std::tuple<Label, Label, int>,
                     std::vector<std::pair<std::pair<Label, Label>, Elem>>>
        cache_braid;

   private:
    // sum_{j<k} x_i^j alpha(x_i^(k-1-j)), the coefficient of dx_i in d(x_i^k)
    const Poly& dpow(std::size_t i, std::uint32_t k) const {
        auto key = std::make_pair(i, k);
        auto it = dpow_cache_.find(key);
        if (it != dpow_cache_.end()) return it->second;
        std::size_t m = nvars();
        Poly xi = var_poly(i);
        std::vector<Poly> apow{one_poly()};
        Poly axi = alpha_poly(xi);
        for (std::uint32_t t = 1; t < k; ++t)
            apow.push_back(reduce_poly(apow.back() * axi));
        Poly acc(m);
        Poly xpow = one_poly();
        for (std::uint32_t j = 0; j < k; ++j) {
            acc += xpow * apow[k - 1 - j];
            xpow = reduce_poly(xpow * xi);
        }
        acc = reduce_poly(acc);
        return dpow_cache_.emplace(key, std::move(acc)).first->second;
    }

    bool endo_is_graded() const {
        switch (endo_.kind) {
            case EndoSpec<Elem>::Kind::Diagonal:
            case EndoSpec<Elem>::Kind::Linear:
                return true;
            case EndoSpec<Elem>::Kind::General:
                for (const auto& img : endo_.images)
                    if (!img.is_zero() && !img.is_homogeneous(1)) return false;
                return true;
        }
        return false;
    }

    void decide_mode() {
        std::size_t m = nvars();
        std::size_t related = endo_.relations.size();
        if (related == m) {
            mode_ = BlockMode::FiniteDim;
            return;
        }
        if (related != 0)
            throw UnsupportedContextError(
                "power relations must cover every variable or none");
        if (endo_is_graded()) {
            mode_ = BlockMode::Graded;
            return;
        }
        mode_ = BlockMode::FirstOrder;
        if (cap_n_ > 1)
            throw ConfigError(
                "a non-graded endomorphism without relations supports only "
                "form degree <= 1; lower the form-degree cap to 1");
    }

    struct OneFormGen {
        std::vector<Poly> coeff;  // letter -> coefficient, reduced
        std::uint32_t hom_degree = 0;
    };
    struct TwoFormGen {
        // (first letter, second letter, coefficient), reduced
        std::vector<std::tuple<std::uint32_t, std::uint32_t, Poly>> entries;
        std::uint32_t hom_degree = 0;
    };

    void build_generators() {
        std::size_t m = nvars();

        // Degree-1 consequences of the defining bimodule relations. For a
        // pair of variables, (alpha(x_i) - x_i) dx_j - (alpha(x_j) - x_j) dx_i
        // lies in the relation span; for a power relation, d of it does.
        std::vector<Poly> h;
        for (std::size_t i = 0; i < m; ++i)
            h.push_back(reduce_poly(alpha_poly(var_poly(i)) - var_poly(i)));
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = i + 1; j < m; ++j) {
                OneFormGen g;
                g.coeff.assign(m, zero_poly());
                g.coeff[j] = h[i];
                g.coeff[i] = -h[j];
                push_one_gen(std::move(g));
            }
        for (const auto& r : endo_.relations) {
            Poly lhs = poly_pow(var_poly(r.var), r.power, one());
            auto dl = d_poly(lhs);
            auto dr = d_poly(r.rhs);
            OneFormGen g;
            g.coeff.assign(m, zero_poly());
            for (std::size_t k = 0; k < m; ++k) g.coeff[k] = dl[k] - dr[k];
            push_one_gen(std::move(g));
        }

        // Degree-2 generators dx_i dx_j + d(alpha(x_j)) dx_i, one per ordered
        // pair of letters.
        for (std::uint32_t i = 0; i < m; ++i)
            for (std::uint32_t j = 0; j < m; ++j) {
                TwoFormGen g;
                g.entries.emplace_back(i, j, one_poly());
                for (const auto& [k, gpoly] : letter_images_[j])
                    g.entries.emplace_back(k, i, gpoly);
                if (mode_ != BlockMode::FiniteDim) g.hom_degree = 0;
                two_gens_.push_back(std::move(g));
            }
    }

    void push_one_gen(OneFormGen g) {
        bool all_zero = true;
        for (const auto& p : g.coeff)
            if (!p.is_zero()) all_zero = false;
        if (all_zero) return;
        if (mode_ != BlockMode::FiniteDim) {
            std::optional<std::uint32_t> hd;
            for (const auto& p : g.coeff) {
                if (p.is_zero()) continue;
                std::uint32_t d = p.degree();
                if (!p.is_homogeneous(d) || (hd && *hd != d))
                    throw UnsupportedContextError(
                        "degree-1 relation rows are not homogeneous; this context "
                        "cannot be sliced into graded blocks");
                hd = d;
            }
            g.hom_degree = *hd;
        }
        one_gens_.push_back(std::move(g));
    }

    std::vector<Exponents> coefficient_monomials(std::int32_t total) const {
        if (mode_ == BlockMode::FiniteDim) {
            std::vector<std::uint32_t> bound(nvars(), 0);
            for (std::size_t i = 0; i < nvars(); ++i) bound[i] = 1;
            for (const auto& r : endo_.relations) bound[r.var] = r.power;
            return exponents_in_box(bound);
        }
        if (total < 0) return {};
        return exponents_with_total(nvars(), static_cast<std::uint32_t>(total));
    }

    std::unique_ptr<WordBlockBasis<Elem>> build_block(const BlockKey& key) const {
        std::uint32_t n = key.form_deg;
        if (mode_ == BlockMode::FirstOrder && n >= 2)
            throw UnsupportedContextError(
                "form degree >= 2 is unsupported for a non-graded endomorphism "
                "without relations");

        auto b = std::make_unique<WordBlockBasis<Elem>>();
        b->key = key;

        std::size_t m = nvars();
        std::vector<Exponents> exps;
        if (mode_ == BlockMode::FiniteDim)
            exps = coefficient_monomials(0);
        else {
            std::int32_t coeff_total = key.var_deg - static_cast<std::int32_t>(n);
            if (coeff_total < 0) coeff_total = -1;  // empty block
            exps = coefficient_monomials(coeff_total);
        }
        auto words = words_of_length(m, n);
        for (const auto& e : exps)
            for (const auto& w : words) b->raw.push_back({e, w});
        std::sort(b->raw.begin(), b->raw.end());
        for (std::size_t i = 0; i < b->raw.size(); ++i) b->raw_index.emplace(b->raw[i], i);

        std::vector<std::vector<Elem>> rows;
        auto emit = [&](const std::map<Label, Elem>& entries) {
            if (entries.empty()) return;
            std::vector<Elem> row(b->raw.size(), zero());
            for (const auto& [l, c] : entries) row[b->raw_index.at(l)] = c;
            rows.push_back(std::move(row));
        };
        auto spread = [&](std::map<Label, Elem>& entries, const Poly& coeff,
                          const std::vector<std::uint32_t>& word) {
            for (const auto& [e, c] : coeff.terms()) add_to(entries, Label{e, word}, c);
        };

        if (n >= 1) collect_one_gen_rows(key, n, emit, spread);
        if (n >= 2) collect_two_gen_rows(key, n, emit, spread);

        if (rows.empty()) {
            b->basis = b->raw;
        } else {
            Matrix<Elem> mrows(rows.size(), b->raw.size(), zero());
            for (std::size_t r = 0; r < rows.size(); ++r)
                for (std::size_t c = 0; c < b->raw.size(); ++c)
                    mrows.at(r, c) = rows[r][c];
            std::vector<std::size_t> order(b->raw.size());
            for (std::size_t i = 0; i < order.size(); ++i)
                order[i] = b->raw.size() - 1 - i;
            std::vector<std::size_t> pivots = rref(mrows, order);
            std::vector<bool> is_pivot(b->raw.size(), false);
            for (std::size_t c : pivots) is_pivot[c] = true;
            for (std::size_t c = 0; c < b->raw.size(); ++c)
                if (!is_pivot[c]) b->basis.push_back(b->raw[c]);

            std::map<std::size_t, std::size_t> col_to_basis;
            for (std::size_t c = 0, bi = 0; c < b->raw.size(); ++c)
                if (!is_pivot[c]) col_to_basis[c] = bi++;

            b->expand.assign(b->raw.size(), {});
            for (std::size_t c = 0; c < b->raw.size(); ++c)
                if (!is_pivot[c]) b->expand[c] = {{col_to_basis[c], one()}};
            for (std::size_t r = 0; r < pivots.size(); ++r) {
                std::size_t pcol = pivots[r];
                for (std::size_t c = 0; c < b->raw.size(); ++c) {
                    if (is_pivot[c] || is_zero(mrows.at(r, c))) continue;
                    b->expand[pcol].emplace_back(col_to_basis[c], Elem(-mrows.at(r, c)));
                }
            }
        }
        if (b->expand.empty()) {
            b->expand.assign(b->raw.size(), {});
            for (std::size_t c = 0; c < b->raw.size(); ++c)
                b->expand[c] = {{c, one()}};
        }
        for (std::size_t i = 0; i < b->basis.size(); ++i)
            b->basis_index.emplace(b->basis[i], i);
        return b;
    }

    template <class Emit, class Spread>
    void collect_one_gen_rows(const BlockKey& key, std::uint32_t n, Emit& emit,
                              Spread& spread) const {
        std::size_t m = nvars();
        for (const auto& g : one_gens_) {
            for (std::uint32_t p = 0; p + 1 <= n; ++p) {
                std::uint32_t s = n - 1 - p;
                std::vector<Poly> tw(m, zero_poly());
                for (std::size_t k = 0; k < m; ++k)
                    if (!g.coeff[k].is_zero())
                        tw[k] = alpha_pow_poly(g.coeff[k], p);
                std::int32_t gamma_total =
                    mode_ == BlockMode::FiniteDim
                        ? 0
                        : key.var_deg - static_cast<std::int32_t>(n) -
                              static_cast<std::int32_t>(g.hom_degree);
                for (const auto& gamma : coefficient_monomials(gamma_total)) {
                    Poly gm = Poly::monomial(m, gamma, one());
                    for (const auto& w : words_of_length(m, p))
                        for (const auto& wp : words_of_length(m, s)) {
                            std::map<Label, Elem> entries;
                            for (std::uint32_t k = 0; k < m; ++k) {
                                if (tw[k].is_zero()) continue;
                                std::vector<std::uint32_t> word = w;
                                word.push_back(k);
                                word.insert(word.end(), wp.begin(), wp.end());
                                spread(entries, reduce_poly(gm * tw[k]), word);
                            }
                            emit(entries);
                        }
                }
            }
        }
    }

    template <class Emit, class Spread>
    void collect_two_gen_rows(const BlockKey& key, std::uint32_t n, Emit& emit,
                              Spread& spread) const {
        std::size_t m = nvars();
        for (const auto& g : two_gens_) {
            for (std::uint32_t p = 0; p + 2 <= n; ++p) {
                std::uint32_t s = n - 2 - p;
                std::vector<std::tuple<std::uint32_t, std::uint32_t, Poly>> tw;
                for (const auto& [k1, k2, poly] : g.entries)
                    tw.emplace_back(k1, k2, alpha_pow_poly(poly, p));
                std::int32_t gamma_total =
                    mode_ == BlockMode::FiniteDim
                        ? 0
                        : key.var_deg - static_cast<std::int32_t>(n) -
                              static_cast<std::int32_t>(g.hom_degree);
                for (const auto& gamma : coefficient_monomials(gamma_total)) {
                    Poly gm = Poly::monomial(m, gamma, one());
                    for (const auto& w : words_of_length(m, p))
                        for (const auto& wp : words_of_length(m, s)) {
                            std::map<Label, Elem> entries;
                            for (const auto& [k1, k2, poly] : tw) {
                                std::vector<std::uint32_t> word = w;
                                word.push_back(k1);
                                word.push_back(k2);
                                word.insert(word.end(), wp.begin(), wp.end());
                                spread(entries, reduce_poly(gm * poly), word);
                            }
                            emit(entries);
                        }
                }
            }
        }
    }

    F field_;
    std::vector<std::string> vars_;
    EndoSpec<Elem> endo_;
    std::uint32_t cap_d_;
    std::uint32_t cap_n_;
    BlockMode mode_ = BlockMode::Graded;
    std::vector<std::vector<std::pair<std::uint32_t, Poly>>> letter_images_;
    std::vector<OneFormGen> one_gens_;
    std::vector<TwoFormGen> two_gens_;
    mutable std::map<std::pair<std::size_t, std::uint32_t>, Poly> dpow_cache_;
    mutable std::map<BlockKey, std::unique_ptr<WordBlockBasis<Elem>>> blocks_;
};

// All block basis labels with form degree <= max_n (and variable degree
// <= max_d where the context is graded), in block order.
template <class F>
std::vector<Label> basis_labels(const AlgebraCtx<F>& ctx, std::uint32_t max_d,
                                std::uint32_t max_n) {
    std::vector<Label> out;
    for (const auto& key : ctx.block_keys(max_d, max_n))
        for (const Label& l : ctx.block(key).basis) out.push_back(l);
    return out;
}

}  // namespace braidforms
