#pragma once

#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "context.hpp"
#include "parse.hpp"

namespace braidforms {

// Parsed configuration document, still field-agnostic: scalar-valued entries
// stay as source text until the field is known.
struct ConfigData {
    enum class FieldKind { Rationals, Prime, RationalFunctions };

    FieldKind field_kind = FieldKind::Rationals;
    std::uint64_t prime = 0;
    std::optional<std::string> q_value;
    std::vector<std::string> variables;
    std::optional<std::vector<std::string>> diagonal;
    std::optional<std::vector<std::vector<std::string>>> matrix;
    std::optional<std::vector<std::string>> images;
    struct Rel {
        std::string var;
        std::uint32_t power = 0;
        std::string rhs;
    };
    std::vector<Rel> relations;
    std::uint32_t var_degree_cap = 0;
    std::uint32_t form_degree_cap = 0;
};

namespace detail {

inline void require_keys(const nlohmann::json& j,
                         const std::vector<std::string>& allowed,
                         const std::string& where) {
    if (!j.is_object()) throw ConfigError(where + " must be a JSON object");
    for (const auto& [key, val] : j.items()) {
        bool ok = false;
        for (const auto& a : allowed) ok = ok || key == a;
        if (!ok) throw ConfigError("unknown key \"" + key + "\" in " + where);
    }
}

inline std::string scalar_text(const nlohmann::json& v, const std::string& where) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_integer())
        return std::to_string(v.get<long long>());
    throw ConfigError(where + " entries must be strings or integers");
}

inline bool valid_variable_name(const std::string& s) {
    if (s.empty()) return false;
    if (!(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_'))
        return false;
    for (char ch : s)
        if (!(std::isalnum(static_cast<unsigned char>(ch)) || ch == '_'))
            return false;
    if (s[0] == 'd') return false;  // collides with the letter syntax dx
    if (s == "q") return false;     // reserved for the field parameter
    return true;
}

}  // namespace detail

inline ConfigData config_from_json(const nlohmann::json& j) {
    detail::require_keys(
        j, {"field", "q_value", "variables", "endo", "relations", "caps"},
        "the config");
    ConfigData cfg;

    if (!j.contains("field")) throw ConfigError("config needs \"field\"");
    const auto& f = j.at("field");
    if (f.is_string() && f.get<std::string>() == "Q") {
        cfg.field_kind = ConfigData::FieldKind::Rationals;
    } else if (f.is_object() && f.contains("Fp")) {
        detail::require_keys(f, {"Fp"}, "\"field\"");
        if (!f.at("Fp").is_number_integer() || f.at("Fp").get<long long>() <= 0)
            throw ConfigError("\"Fp\" must be a positive prime");
        cfg.field_kind = ConfigData::FieldKind::Prime;
        cfg.prime = f.at("Fp").get<std::uint64_t>();
    } else if (f.is_object() && f.contains("Qq")) {
        detail::require_keys(f, {"Qq"}, "\"field\"");
        if (!f.at("Qq").is_boolean() || !f.at("Qq").get<bool>())
            throw ConfigError("\"Qq\" must be true");
        cfg.field_kind = ConfigData::FieldKind::RationalFunctions;
    } else {
        throw ConfigError(
            "\"field\" must be \"Q\", {\"Fp\": p}, or {\"Qq\": true}");
    }

    if (j.contains("q_value")) {
        if (!j.at("q_value").is_string())
            throw ConfigError("\"q_value\" must be a scalar string");
        if (cfg.field_kind == ConfigData::FieldKind::RationalFunctions)
            throw ConfigError("Q(q) carries q already; \"q_value\" is for Q or Fp");
        cfg.q_value = j.at("q_value").get<std::string>();
    }

    if (!j.contains("variables") || !j.at("variables").is_array() ||
        j.at("variables").empty())
        throw ConfigError("config needs a nonempty \"variables\" array");
    for (const auto& v : j.at("variables")) {
        if (!v.is_string() || !detail::valid_variable_name(v.get<std::string>()))
            throw ConfigError(
                "variable names must be identifiers not starting with 'd' and "
                "distinct from 'q'");
        cfg.variables.push_back(v.get<std::string>());
    }

    if (!j.contains("endo")) throw ConfigError("config needs \"endo\"");
    const auto& e = j.at("endo");
    detail::require_keys(e, {"diagonal", "matrix", "images"}, "\"endo\"");
    int given = (e.contains("diagonal") ? 1 : 0) + (e.contains("matrix") ? 1 : 0) +
                (e.contains("images") ? 1 : 0);
    if (given != 1)
        throw ConfigError(
            "\"endo\" needs exactly one of \"diagonal\", \"matrix\", \"images\"");
    if (e.contains("diagonal")) {
        if (!e.at("diagonal").is_array())
            throw ConfigError("\"diagonal\" must be an array");
        cfg.diagonal.emplace();
        for (const auto& v : e.at("diagonal"))
            cfg.diagonal->push_back(detail::scalar_text(v, "\"diagonal\""));
    } else if (e.contains("matrix")) {
        if (!e.at("matrix").is_array())
            throw ConfigError("\"matrix\" must be an array of rows");
        cfg.matrix.emplace();
        for (const auto& row : e.at("matrix")) {
            if (!row.is_array())
                throw ConfigError("\"matrix\" must be an array of rows");
            cfg.matrix->emplace_back();
            for (const auto& v : row)
                cfg.matrix->back().push_back(detail::scalar_text(v, "\"matrix\""));
        }
    } else {
        if (!e.at("images").is_array())
            throw ConfigError("\"images\" must be an array of expressions");
        cfg.images.emplace();
        for (const auto& v : e.at("images")) {
            if (!v.is_string())
                throw ConfigError("\"images\" entries must be expression strings");
            cfg.images->push_back(v.get<std::string>());
        }
    }

    if (j.contains("relations")) {
        if (!j.at("relations").is_array())
            throw ConfigError("\"relations\" must be an array");
        for (const auto& r : j.at("relations")) {
            detail::require_keys(r, {"var", "power", "rhs"}, "a relation");
            if (!r.contains("var") || !r.at("var").is_string() ||
                !r.contains("power") || !r.at("power").is_number_integer() ||
                !r.contains("rhs") || !r.at("rhs").is_string())
                throw ConfigError(
                    "a relation needs \"var\" (name), \"power\" (integer), "
                    "\"rhs\" (expression)");
            long long p = r.at("power").get<long long>();
            if (p < 1 || p > 64)
                throw ConfigError("relation powers must lie in 1..64");
            cfg.relations.push_back({r.at("var").get<std::string>(),
                                     static_cast<std::uint32_t>(p),
                                     r.at("rhs").get<std::string>()});
        }
    }

    if (!j.contains("caps")) throw ConfigError("config needs \"caps\"");
    const auto& c = j.at("caps");
    detail::require_keys(c, {"var_degree", "form_degree"}, "\"caps\"");
    if (!c.contains("var_degree") || !c.at("var_degree").is_number_integer() ||
        !c.contains("form_degree") || !c.at("form_degree").is_number_integer())
        throw ConfigError("\"caps\" needs integer \"var_degree\" and \"form_degree\"");
    long long d = c.at("var_degree").get<long long>();
    long long n = c.at("form_degree").get<long long>();
    if (d < 0 || n < 0 || d > 64 || n > 16)
        throw ConfigError("caps out of range (var_degree <= 64, form_degree <= 16)");
    cfg.var_degree_cap = static_cast<std::uint32_t>(d);
    cfg.form_degree_cap = static_cast<std::uint32_t>(n);
    return cfg;
}

inline ConfigData load_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot read config file: " + path);
    nlohmann::json j;
    try {
        f >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("config is not valid JSON: " + std::string(e.what()));
    }
    return config_from_json(j);
}

namespace detail {

template <class F>
EndoSpec<typename F::Elem> endo_from_config(const F& field,
                                            const ConfigData& cfg) {
    using Elem = typename F::Elem;
    std::size_t m = cfg.variables.size();
    EndoSpec<Elem> endo;
    if (cfg.diagonal) {
        std::vector<Elem> qs;
        for (const auto& s : *cfg.diagonal) qs.push_back(parse_scalar(field, s));
        endo = EndoSpec<Elem>::diagonal(std::move(qs));
    } else if (cfg.matrix) {
        std::vector<std::vector<Elem>> rows;
        for (const auto& r : *cfg.matrix) {
            rows.emplace_back();
            for (const auto& s : r) rows.back().push_back(parse_scalar(field, s));
        }
        endo = EndoSpec<Elem>::linear(std::move(rows));
    } else {
        std::vector<Polynomial<Elem>> imgs;
        for (const auto& s : *cfg.images)
            imgs.push_back(parse_polynomial(field, cfg.variables, s));
        endo = EndoSpec<Elem>::general(std::move(imgs));
    }
    for (const auto& r : cfg.relations) {
        std::size_t vi = m;
        for (std::size_t i = 0; i < m; ++i)
            if (cfg.variables[i] == r.var) vi = i;
        if (vi == m)
            throw ConfigError("relation names unknown variable \"" + r.var + "\"");
        endo.relations.push_back(
            {vi, r.power, parse_polynomial(field, cfg.variables, r.rhs)});
    }
    return endo;
}

}  // namespace detail

// Build the context for the configured field and hand it to fn. The field
// type differs per configuration, so fn must be generic over it.
template <class Fn>
auto with_context(const ConfigData& cfg, Fn&& fn) {
    switch (cfg.field_kind) {
        case ConfigData::FieldKind::Rationals: {
            RationalsField field;
            if (cfg.q_value)
                field.q = parse_scalar(field, *cfg.q_value, /*allow_q=*/false);
            AlgebraCtx<RationalsField> ctx(
                field, cfg.variables, detail::endo_from_config(field, cfg),
                cfg.var_degree_cap, cfg.form_degree_cap);
            return fn(ctx);
        }
        case ConfigData::FieldKind::Prime: {
            PrimeField field(cfg.prime);
            if (cfg.q_value)
                field.q = parse_scalar(field, *cfg.q_value, /*allow_q=*/false);
            AlgebraCtx<PrimeField> ctx(
                field, cfg.variables, detail::endo_from_config(field, cfg),
                cfg.var_degree_cap, cfg.form_degree_cap);
            return fn(ctx);
        }
        case ConfigData::FieldKind::RationalFunctions:
        default: {
            RationalFunctionField field;
            AlgebraCtx<RationalFunctionField> ctx(
                field, cfg.variables, detail::endo_from_config(field, cfg),
                cfg.var_degree_cap, cfg.form_degree_cap);
            return fn(ctx);
        }
    }
}

}  // namespace braidforms
