#pragma once

#include <fstream>
#include <string>

#include <json.hpp>

#include "braidrep.hpp"

namespace braidforms {

inline std::string field_label(const RationalsField&) { return "Q"; }
inline std::string field_label(const PrimeField& f) {
    return "F_" + std::to_string(f.p);
}
inline std::string field_label(const RationalFunctionField&) { return "Q(q)"; }

// One block of generator matrices as a JSON document: block coordinates,
// field, printed basis tuples, and per-generator dense entry matrices with
// entries in the canonical scalar syntax.
template <class F>
nlohmann::json rep_to_json(BraidRep<F>& rep, std::int32_t var_deg,
                           std::uint32_t form_deg) {
    const auto& ctx = rep.ctx();
    const auto& blk = rep.block(var_deg, form_deg);
    nlohmann::json j;
    j["block"] = {{"arity", rep.arity()},
                  {"var_degree", var_deg},
                  {"form_degree", form_deg}};
    j["field"] = field_label(ctx.field());
    auto basis = nlohmann::json::array();
    for (const auto& key : blk.basis)
        basis.push_back(tuple_to_string(ctx, ctx.one(), key));
    j["basis"] = std::move(basis);
    auto gens = nlohmann::json::object();
    for (std::size_t i = 1; i <= rep.generators(); ++i) {
        const auto& m = rep.sigma(var_deg, form_deg, i);
        auto rows = nlohmann::json::array();
        for (std::size_t r = 0; r < m.rows; ++r) {
            auto row = nlohmann::json::array();
            for (std::size_t c = 0; c < m.cols; ++c)
                row.push_back(scalar_to_string(m.at(r, c)));
            rows.push_back(std::move(row));
        }
        gens["sigma_" + std::to_string(i)] = std::move(rows);
    }
    j["generators"] = std::move(gens);
    return j;
}

// CSV export in long form, one nonzero entry per line. Only fields whose
// scalars print as plain rationals qualify; entries mentioning the parameter
// q cannot round-trip through CSV and are rejected.
template <class F>
std::string rep_to_csv(BraidRep<F>& rep, std::int32_t var_deg,
                       std::uint32_t form_deg) {
    std::string out = "generator,row,col,entry\n";
    for (std::size_t i = 1; i <= rep.generators(); ++i) {
        const auto& m = rep.sigma(var_deg, form_deg, i);
        for (std::size_t r = 0; r < m.rows; ++r)
            for (std::size_t c = 0; c < m.cols; ++c) {
                if (is_zero(m.at(r, c))) continue;
                std::string entry = scalar_to_string(m.at(r, c));
                if (entry.find('q') != std::string::npos)
                    throw ConfigError(
                        "CSV export needs plain rational entries; this block "
                        "has entries in q, use --format json");
                out += "sigma_" + std::to_string(i) + "," + std::to_string(r) +
                       "," + std::to_string(c) + "," + entry + "\n";
            }
    }
    return out;
}

inline void write_text_file(const std::string& path, const std::string& body) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot open output file: " + path);
    f << body;
    if (!f) throw ConfigError("write failed: " + path);
}

}  // namespace braidforms
