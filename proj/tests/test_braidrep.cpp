#include <catch2/catch_amalgamated.hpp>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "braidforms/braidforms.hpp"

using namespace braidforms;

namespace {

AlgebraCtx<RationalFunctionField>& qx_ctx() {
    static AlgebraCtx<RationalFunctionField> ctx(
        RationalFunctionField{}, {"x"},
        EndoSpec<RatFn>::diagonal({RatFn::parameter()}), 6, 4);
    return ctx;
}

AlgebraCtx<RationalsField>& swap_ctx() {
    static AlgebraCtx<RationalsField> ctx(
        RationalsField{}, {"x", "y"},
        EndoSpec<Rational>::linear({{0, 1}, {1, 0}}), 5, 4);
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
                                          std::move(endo), 6, 3);
    }();
    return ctx;
}

AlgebraCtx<RationalsField>& qneg_ctx() {
    static AlgebraCtx<RationalsField> ctx(
        RationalsField{std::optional<Rational>(Rational(-1))}, {"x"},
        EndoSpec<Rational>::diagonal({Rational(-1)}), 6, 4);
    return ctx;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("rep block keys cover the degree range") {
    auto keys = rep_block_keys(qx_ctx(), 3, 1);
    std::vector<std::pair<std::int32_t, std::uint32_t>> want = {
        {0, 0}, {1, 0}, {2, 0}, {3, 0}, {1, 1}, {2, 1}, {3, 1}};
    CHECK(keys == want);

    auto fd = rep_block_keys(invol_ctx(), 9, 2);
    std::vector<std::pair<std::int32_t, std::uint32_t>> want_fd = {
        {-1, 0}, {-1, 1}, {-1, 2}};
    CHECK(fd == want_fd);
}

TEST_CASE("generator matrices act on the expected blocks") {
    BraidRep<RationalFunctionField> rep(qx_ctx(), 3);
    CHECK(rep.generators() == 2);
    const auto& blk = rep.block(2, 1);
    CHECK(blk.basis.size() == 9);
    const auto& s1 = rep.sigma(2, 1, 1);
    CHECK(s1.rows == 9);
    CHECK(s1.cols == 9);
    CHECK_THROWS_AS(rep.sigma(2, 1, 0), MalformedInputError);
    CHECK_THROWS_AS(rep.sigma(2, 1, 3), MalformedInputError);
    CHECK_THROWS_AS(BraidRep<RationalFunctionField>(qx_ctx(), 1),
                    MalformedInputError);

    // sigma_1 on the block must match braiding the first two factors of each
    // basis tuple directly.
    for (std::size_t j = 0; j < blk.basis.size(); ++j) {
        auto t = outer(qx_ctx(), {label_form(qx_ctx(), blk.basis[j][0]),
                                  label_form(qx_ctx(), blk.basis[j][1]),
                                  label_form(qx_ctx(), blk.basis[j][2])});
        auto image = braid_at(t, 0);
        for (const auto& [labels, c] : image.terms) {
            auto it = blk.index.find(labels);
            REQUIRE(it != blk.index.end());
            CHECK(s1.at(it->second, j) == c);
        }
    }
}

TEST_CASE("braid relations hold on tensor cubes") {
    BraidRep<RationalFunctionField> rep(qx_ctx(), 3);
    auto keys = rep_block_keys(qx_ctx(), 3, 2);
    auto report = verify_braid_relations(rep, keys);
    CHECK(report.ok());
    CHECK(report.blocks == keys.size());
    CHECK(report.checked > 0);
}

TEST_CASE("distant generators commute at arity four") {
    BraidRep<RationalsField> rep(qneg_ctx(), 4);
    auto report = verify_braid_relations(rep, {{2, 1}, {3, 2}});
    CHECK(report.ok());
}

TEST_CASE("involution checker separates degree-zero blocks from the rest") {
    // alpha(x) = 1 - x squares to the identity, and sigma_i^2 = 1 does hold
    // on blocks of total form degree 0, where the braiding is the plain
    // flip. In positive form degree it fails: R(x (x) dx) picks up the
    // I-correction (2x - 1) (x) dx, which makes sigma_1 unipotent rather
    // than involutive. The checker must find exactly that split.
    BraidRep<RationalsField> rep2(invol_ctx(), 2);
    auto degree_zero = verify_involution(rep2, {{-1, 0}});
    CHECK(degree_zero.alpha_involutive);
    CHECK(degree_zero.ok());
    CHECK(degree_zero.checked > 0);

    auto keys = rep_block_keys(invol_ctx(), 0, 2);
    auto report = verify_involution(rep2, keys);
    CHECK(report.alpha_involutive);
    CHECK_FALSE(report.ok());
    REQUIRE_FALSE(report.failures.empty());
    CHECK(report.failures[0].what.find("squared") != std::string::npos);

    // Direct witness on the form-degree-1 block, independent of the matrix
    // route: R^2(x (x) dx) != x (x) dx.
    auto t = outer2(label_form(invol_ctx(), Label{Exponents{1}, {}}),
                    label_form(invol_ctx(), Label{Exponents{0}, {0}}));
    CHECK(braid(braid(t)) != t);

    BraidRep<RationalsField> rep3(invol_ctx(), 3);
    auto report3 = verify_involution(rep3, keys);
    CHECK(report3.alpha_involutive);
    CHECK_FALSE(report3.ok());

    BraidRep<RationalsField> swap_rep(swap_ctx(), 3);
    auto swap_zero = verify_involution(
        swap_rep, {{0, 0}, {1, 0}, {2, 0}, {3, 0}});
    CHECK(swap_zero.alpha_involutive);
    CHECK(swap_zero.ok());
    auto swap_report =
        verify_involution(swap_rep, rep_block_keys(swap_ctx(), 3, 1));
    CHECK(swap_report.alpha_involutive);
    CHECK_FALSE(swap_report.ok());

    // alpha = id is the one involution with sigma_i^2 = 1 everywhere: the
    // I-correction vanishes identically and R is the signed flip.
    AlgebraCtx<RationalsField> id_ctx(
        RationalsField{}, {"x", "y"},
        EndoSpec<Rational>::diagonal({Rational(1), Rational(1)}), 4, 3);
    BraidRep<RationalsField> id_rep(id_ctx, 2);
    auto id_report = verify_involution(id_rep, rep_block_keys(id_ctx, 4, 3));
    CHECK(id_report.alpha_involutive);
    CHECK(id_report.ok());
}

TEST_CASE("non-involutive alpha is reported") {
    BraidRep<RationalFunctionField> rep(qx_ctx(), 2);
    auto report = verify_involution(rep, {{1, 1}});
    CHECK_FALSE(report.alpha_involutive);
    CHECK_FALSE(report.ok());
}

TEST_CASE("axiom checker accepts the braiding and flags corruption") {
    auto clean = check_axioms(qx_ctx(), 2, 1);
    CHECK(clean.ok());
    CHECK(clean.checked > 0);
    CHECK(clean.naturality_maps > 0);

    auto corrupt = check_axioms(qx_ctx(), 2, 1, BraidKind::Closed, true);
    CHECK_FALSE(corrupt.ok());

    // Scaling is not an algebra-map candidate here, so it is skipped, not
    // failed: alpha(x) = 1 - x does not commute with x -> c x.
    auto fd = check_axioms(invol_ctx(), 0, 1);
    CHECK(fd.ok());
    CHECK(fd.naturality_skipped > 0);
}

TEST_CASE("window restriction keeps stable blocks and rejects leaky ones") {
    Window low;
    low.f_hi = 1;
    BraidRep<RationalsField> rep(qneg_ctx(), 2, low);
    CHECK_THROWS_AS(rep.sigma(3, 2, 1), WindowUnstableError);

    BraidRep<RationalsField> full(qneg_ctx(), 2);
    CHECK_NOTHROW(full.sigma(3, 2, 1));
}

TEST_CASE("json export carries the block data") {
    BraidRep<RationalFunctionField> rep(qx_ctx(), 3);
    auto doc = rep_to_json(rep, 2, 1);
    CHECK(doc["field"] == "Q(q)");
    CHECK(doc["block"]["arity"] == 3);
    CHECK(doc["block"]["var_degree"] == 2);
    CHECK(doc["block"]["form_degree"] == 1);
    CHECK(doc["basis"].size() == 9);
    CHECK(doc["generators"].size() == 2);
    CHECK(doc["generators"]["sigma_1"].size() == 9);
    CHECK(doc["generators"]["sigma_2"][0].size() == 9);

    const auto& s2 = rep.sigma(2, 1, 2);
    bool all_match = true;
    for (std::size_t r = 0; r < s2.rows; ++r)
        for (std::size_t c = 0; c < s2.cols; ++c)
            if (doc["generators"]["sigma_2"][r][c] !=
                scalar_to_string(s2.at(r, c)))
                all_match = false;
    CHECK(all_match);

    auto empty = rep_to_json(rep, 0, 1);
    CHECK(empty["basis"].empty());
    CHECK(empty["generators"]["sigma_1"].empty());
}

TEST_CASE("csv export lists nonzero entries and rejects rational functions") {
    BraidRep<RationalsField> rep(swap_ctx(), 2);
    auto csv = rep_to_csv(rep, 1, 1);
    std::istringstream lines(csv);
    std::string line;
    REQUIRE(std::getline(lines, line));
    CHECK(line == "generator,row,col,entry");
    std::size_t data_lines = 0;
    while (std::getline(lines, line)) {
        ++data_lines;
        CHECK(line.rfind("sigma_1,", 0) == 0);
        CHECK(line.substr(line.rfind(',') + 1) == "1");
    }
    // sigma_1 permutes (1, dx) <-> (dx, 1) and (1, dy) <-> (dy, 1).
    CHECK(data_lines == 4);

    BraidRep<RationalFunctionField> qrep(qx_ctx(), 3);
    CHECK_THROWS_AS(rep_to_csv(qrep, 2, 1), ConfigError);

    auto empty_csv = rep_to_csv(rep, 0, 1);
    CHECK(empty_csv == "generator,row,col,entry\n");
}

TEST_CASE("text files are written verbatim") {
    std::string path = "/tmp/braidforms_export_check.txt";
    write_text_file(path, "payload\n1,2\n");
    CHECK(slurp(path) == "payload\n1,2\n");
    std::remove(path.c_str());
    CHECK_THROWS_AS(write_text_file("/nonexistent-dir/out.txt", "x"),
                    ConfigError);
}
