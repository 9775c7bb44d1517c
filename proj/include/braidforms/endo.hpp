#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "polynomial.hpp"

namespace braidforms {

// Power relation x_i^power = rhs(x_i) with rhs univariate in x_i of degree
// strictly below power. At most one relation per variable.
template <class K>
struct Relation {
    std::size_t var = 0;
    std::uint32_t power = 1;
    Polynomial<K> rhs;
};

// Algebra endomorphism of k[x_1..x_m], optionally together with the power
// relations that cut the algebra down. Diagonal and Linear are special cases
// kept explicit because they guarantee a graded endomorphism.
template <class K>
struct EndoSpec {
    enum class Kind { Diagonal, Linear, General };

    Kind kind = Kind::Diagonal;
    std::vector<K> diag;                  // Diagonal: image of x_i is diag[i]*x_i
    std::vector<std::vector<K>> mat;      // Linear: image of x_i is sum_j mat[i][j]*x_j
    std::vector<Polynomial<K>> images;    // General: arbitrary image polynomials
    std::vector<Relation<K>> relations;

    static EndoSpec diagonal(std::vector<K> qs) {
        EndoSpec e;
        e.kind = Kind::Diagonal;
        e.diag = std::move(qs);
        return e;
    }

    static EndoSpec linear(std::vector<std::vector<K>> m) {
        EndoSpec e;
        e.kind = Kind::Linear;
        e.mat = std::move(m);
        return e;
    }

    static EndoSpec general(std::vector<Polynomial<K>> imgs) {
        EndoSpec e;
        e.kind = Kind::General;
        e.images = std::move(imgs);
        return e;
    }
};

// Rewrite every monomial until all exponents respect the relations. Each
// rewrite strictly lowers the exponent of the rewritten variable, so this
// terminates.
template <class K>
Polynomial<K> reduce(const Polynomial<K>& p, const std::vector<Relation<K>>& rels) {
    if (rels.empty()) return p;
    std::vector<const Relation<K>*> by_var(p.nvars(), nullptr);
    for (const auto& r : rels) by_var[r.var] = &r;

    Polynomial<K> out(p.nvars());
    std::vector<std::pair<Exponents, K>> work(p.terms().begin(), p.terms().end());
    while (!work.empty()) {
        auto [e, c] = std::move(work.back());
        work.pop_back();
        std::size_t hot = p.nvars();
        for (std::size_t i = 0; i < p.nvars(); ++i)
            if (by_var[i] && e[i] >= by_var[i]->power) {
                hot = i;
                break;
            }
        if (hot == p.nvars()) {
            out.add_term(e, c);
            continue;
        }
        const Relation<K>& r = *by_var[hot];
        Exponents base = e;
        base[hot] -= r.power;
        for (const auto& [re, rc] : r.rhs.terms()) {
            Exponents ne = base;
            for (std::size_t i = 0; i < ne.size(); ++i) ne[i] += re[i];
            work.emplace_back(std::move(ne), K(c * rc));
        }
    }
    return out;
}

template <class K, class F>
Polynomial<K> endo_image(const EndoSpec<K>& endo, std::size_t nvars, std::size_t i,
                         const F& field) {
    switch (endo.kind) {
        case EndoSpec<K>::Kind::Diagonal:
            return Polynomial<K>::variable(nvars, i, field.one()).scaled(endo.diag[i]);
        case EndoSpec<K>::Kind::Linear: {
            Polynomial<K> img(nvars);
            for (std::size_t j = 0; j < nvars; ++j)
                img += Polynomial<K>::variable(nvars, j, field.one())
                           .scaled(endo.mat[i][j]);
            return img;
        }
        case EndoSpec<K>::Kind::General:
            return endo.images[i];
    }
    throw MalformedInputError("unknown endomorphism kind");
}

// Apply the endomorphism as a ring map and reduce along the relations.
template <class K, class F>
Polynomial<K> apply_endo(const Polynomial<K>& p, const EndoSpec<K>& endo,
                         const F& field) {
    std::size_t m = p.nvars();
    Polynomial<K> out(m);
    for (const auto& [e, c] : p.terms()) {
        Polynomial<K> prod = Polynomial<K>::constant(m, field.one());
        for (std::size_t i = 0; i < m; ++i) {
            if (e[i] == 0) continue;
            prod = prod * poly_pow(endo_image(endo, m, i, field), e[i], field.one());
            prod = reduce(prod, endo.relations);
        }
        out += prod.scaled(c);
    }
    return reduce(out, endo.relations);
}

// Shape and compatibility checks, run once when a context is built.
template <class K, class F>
void validate_endo(const EndoSpec<K>& endo, std::size_t nvars, const F& field) {
    switch (endo.kind) {
        case EndoSpec<K>::Kind::Diagonal:
            if (endo.diag.size() != nvars)
                throw ConfigError("diagonal endomorphism entry count mismatch");
            break;
        case EndoSpec<K>::Kind::Linear:
            if (endo.mat.size() != nvars)
                throw ConfigError("endomorphism matrix row count mismatch");
            for (const auto& row : endo.mat)
                if (row.size() != nvars)
                    throw ConfigError("endomorphism matrix column count mismatch");
            break;
        case EndoSpec<K>::Kind::General:
            if (endo.images.size() != nvars)
                throw ConfigError("endomorphism image count mismatch");
            for (const auto& img : endo.images)
                if (img.nvars() != nvars)
                    throw ConfigError("endomorphism image variable count mismatch");
            break;
    }

    std::vector<bool> seen(nvars, false);
    for (const auto& r : endo.relations) {
        if (r.var >= nvars) throw ConfigError("relation names an unknown variable");
        if (seen[r.var]) throw ConfigError("two relations on one variable");
        seen[r.var] = true;
        if (r.power < 1) throw ConfigError("relation power must be at least 1");
        if (r.rhs.nvars() != nvars)
            throw ConfigError("relation rhs variable count mismatch");
        for (const auto& [e, c] : r.rhs.terms()) {
            for (std::size_t i = 0; i < nvars; ++i)
                if (i != r.var && e[i] != 0)
                    throw ConfigError("relation rhs must be univariate in its variable");
            if (e[r.var] >= r.power)
                throw ConfigError("relation rhs degree must be below the power");
        }
    }

    // The endomorphism must descend to the quotient: applying it to
    // x^power - rhs has to reduce to zero.
    for (const auto& r : endo.relations) {
        Polynomial<K> lhs =
            poly_pow(Polynomial<K>::variable(nvars, r.var, field.one()), r.power,
                     field.one()) -
            r.rhs;
        if (!apply_endo(lhs, endo, field).is_zero())
            throw ConfigError("endomorphism does not preserve the relations");
    }
}

}  // namespace braidforms
