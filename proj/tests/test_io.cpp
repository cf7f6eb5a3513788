#include <doctest.h>

#include "gridpm/constructions.hpp"
#include "gridpm/io.hpp"
#include "test_util.hpp"

#ifndef GRIDPM_FIXTURES
#define GRIDPM_FIXTURES "tests/fixtures"
#endif

using namespace gridpm;

namespace {

Permutation perm(std::initializer_list<int> v) { return Permutation(std::vector<int>(v)); }

std::string fixture(const std::string& name) {
    return read_file(std::string(GRIDPM_FIXTURES) + "/" + name);
}

}  // namespace

TEST_CASE("permutation text format") {
    CHECK(parse_permutation("1 5 3 4 2\n") == perm({1, 5, 3, 4, 2}));
    CHECK(parse_permutation("\n") == Permutation{});
    CHECK(parse_permutation("") == Permutation{});
    CHECK(format_permutation(perm({1, 5, 3, 4, 2})) == "1 5 3 4 2\n");
    CHECK_THROWS_AS(parse_permutation("1 1 2\n"), parse_error);
    CHECK_THROWS_AS(parse_permutation("1 x 2\n"), parse_error);
    CHECK_THROWS_AS(parse_permutation("1 2\n3\n"), parse_error);
}

TEST_CASE("matrix text format flips to Cartesian rows") {
    const GriddingMatrix m = parse_matrix("+ -\n. +\n");
    CHECK(m.at(1, 2).kind() == EntryKind::inc);
    CHECK(m.at(2, 2).kind() == EntryKind::dec);
    CHECK(m.at(1, 1).is_empty_class());
    CHECK(m.at(2, 1).kind() == EntryKind::inc);
    CHECK(format_matrix(m) == "+ -\n. +\n");
}

TEST_CASE("matrix tokens") {
    const GriddingMatrix m = parse_matrix("Av(321)! F{21;132} .\n");
    CHECK(m.at(1, 1).kind() == EntryKind::av);
    CHECK(m.at(1, 1).basis() == perm({3, 2, 1}));
    CHECK(m.at(1, 1).declared_bounded_gridwidth() == Tristate::yes);
    CHECK(m.at(2, 1).kind() == EntryKind::finite);
    CHECK(m.at(2, 1).contains(perm({1, 3, 2})));
    CHECK(m.at(3, 1).is_empty_class());
    CHECK(format_matrix(m) == "Av(321)! F{1;12;21;132}! .\n");
    CHECK(parse_matrix(format_matrix(m)) == m);

    CHECK_THROWS_AS(parse_matrix("?\n"), parse_error);
    CHECK_THROWS_AS(parse_matrix("+ +\n+\n"), parse_error);
    CHECK_THROWS_AS(parse_matrix(""), parse_error);
    CHECK_THROWS_AS(parse_matrix("Av(11)\n"), parse_error);
}

TEST_CASE("gridded text format") {
    const GriddingMatrix m = parse_matrix(fixture("incinc.grm"));
    const std::string text = fixture("p213_incinc.grd");
    const GriddedPermutation g = parse_gridded(text, m);
    CHECK(g.perm() == perm({2, 1, 3}));
    CHECK(g.gridding().col_cuts == std::vector<int>{0, 1, 3});
    CHECK(format_gridded(g) == text);

    CHECK_THROWS_AS(parse_gridded("2 1 3\ncols: 2\nrows:\n", m), parse_error);  // invalid cells
    CHECK_THROWS_AS(parse_gridded("2 1 3\ncols:\nrows:\n", m), parse_error);    // cut count
    CHECK_THROWS_AS(parse_gridded("2 1 3\n", m), parse_error);
}

TEST_CASE("fixture files round-trip byte-identically") {
    for (const char* name : {"t15342.perm", "p231.perm", "p12.perm", "t21.perm", "p213.perm",
                             "p2413.perm", "p321.perm", "big9.perm"})
        CHECK(format_permutation(parse_permutation(fixture(name))) == fixture(name));
    for (const char* name :
         {"cyc22.grm", "row_idi.grm", "row_ii.grm", "col_aia.grm", "st3_ii.grm", "st3_ai.grm",
          "incinc.grm"})
        CHECK(format_matrix(parse_matrix(fixture(name))) == fixture(name));
    const GriddingMatrix st3 = parse_matrix(fixture("st3_ii.grm"));
    CHECK(format_gridded(parse_gridded(fixture("base_pattern.grd"), st3)) ==
          fixture("base_pattern.grd"));
    const GriddingMatrix st3a = parse_matrix(fixture("st3_ai.grm"));
    CHECK(format_gridded(parse_gridded(fixture("base_text.grd"), st3a)) == fixture("base_text.grd"));
    const GriddingMatrix inc2 = parse_matrix(fixture("incinc.grm"));
    CHECK(format_gridded(parse_gridded(fixture("p213_incinc.grd"), inc2)) ==
          fixture("p213_incinc.grd"));
}

TEST_CASE("DIMACS summaries") {
    const CnfSummary s = parse_dimacs(fixture("tiny.cnf"));
    CHECK(s.variables == 2);
    CHECK(s.clauses == 1);
    CHECK_THROWS_AS(parse_dimacs("p cnf 2 2\n1 0\n"), parse_error);  // count mismatch
    CHECK_THROWS_AS(parse_dimacs("1 2 0\n"), parse_error);           // missing header
    CHECK_THROWS_AS(parse_dimacs("p cnf 1 1\nx 0\n"), parse_error);
}

TEST_CASE("JSON serializations") {
    const DichotomyVerdict v{Verdict::np_complete, {{1, 1}, {2, 1}}, "cell graph contains a cycle"};
    const auto vj = to_json(v);
    CHECK(vj["verdict"] == "NPComplete");
    CHECK(vj["witness"][1][0] == 2);

    const GridTree t = GridTree::join(GridTree::leaf({1, 2}), GridTree::leaf({2, 1}));
    const auto tj = to_json(t);
    CHECK(tj["l"] == nlohmann::json::array({1, 2}));
    CHECK(tj["r"] == nlohmann::json::array({2, 1}));

    const SignedPermutation s{perm({2, 1}), {-1, 1}};
    CHECK(signed_permutation_from_json(to_json(s)) == s);

    const GriddingMatrix m = parse_matrix(fixture("col_aia.grm"));
    CHECK(matrix_from_json(to_json(m)) == m);
}

TEST_CASE("hardness instance JSON round-trips") {
    const GriddingMatrix st3 = parse_matrix(fixture("st3_ii.grm"));
    const GriddingMatrix st3a = parse_matrix(fixture("st3_ai.grm"));
    const GriddedPermutation bp = parse_gridded(fixture("base_pattern.grd"), st3);
    const GriddedPermutation bt = parse_gridded(fixture("base_text.grd"), st3a);
    const HardnessInstance inst =
        build_hardness_instance(parse_matrix(fixture("cyc22.grm")), bp, bt);

    const HardnessInstance back = instance_from_json(to_json(inst));
    CHECK(back.pattern_star == inst.pattern_star);
    CHECK(back.text_star == inst.text_star);
    CHECK(back.provenance.path == inst.provenance.path);
    CHECK(back.provenance.f == inst.provenance.f);
    CHECK(back.provenance.g == inst.provenance.g);
    CHECK(back.provenance.anchor_cell == inst.provenance.anchor_cell);
    CHECK(back.provenance.anchor_length == inst.provenance.anchor_length);
    CHECK(back.provenance.steps == inst.provenance.steps);
}
