#include <doctest.h>

#include <bit>
#include <climits>
#include <cstdlib>
#include <random>

#include "gridpm/width.hpp"
#include "test_util.hpp"

using namespace gridpm;
using testutil::column_matrix;
using testutil::matrix_of;
using testutil::row_matrix;

namespace {

Permutation perm(std::initializer_list<int> v) { return Permutation(std::vector<int>(v)); }

const ClassEntry I = ClassEntry::inc();
const ClassEntry D = ClassEntry::dec();
const ClassEntry E = ClassEntry::empty();

// Independent path-width route: caterpillar trees as a subset recursion
// peeling one point at a time.
int caterpillar_pw_oracle(const Permutation& p) {
    const int n = p.size();
    if (n == 0) return 0;
    const auto pts = p.points();
    const unsigned full = (1u << n) - 1;
    std::vector<int> f(full + 1, 0);
    auto gc = [&](unsigned mask) {
        PointSet s;
        for (int i = 0; i < n; ++i)
            if (mask >> i & 1u) s.push_back(pts[static_cast<size_t>(i)]);
        return grid_complexity(s);
    };
    for (unsigned mask = 1; mask <= full; ++mask) {
        if (std::popcount(mask) == 1) {
            f[mask] = 1;
            continue;
        }
        int best = INT_MAX;
        for (int q = 0; q < n; ++q)
            if (mask >> q & 1u) best = std::min(best, f[mask ^ (1u << q)]);
        f[mask] = std::max(gc(mask), best);
    }
    return f[full];
}

}  // namespace

TEST_CASE("intervalicity") {
    CHECK(intervalicity({1, 2, 3, 7, 8}) == 2);
    CHECK(intervalicity({}) == 0);
    CHECK(intervalicity({4, 5, 6}) == 1);
    CHECK(intervalicity({2, 4, 6}) == 3);
}

TEST_CASE("grid complexity") {
    CHECK(grid_complexity({{1, 1}, {2, 2}}) == 1);
    CHECK(grid_complexity({{1, 1}, {3, 3}}) == 2);
    CHECK(grid_complexity({{1, 2}, {2, 1}, {4, 4}}) == 2);
    CHECK(grid_complexity({}) == 0);
}

TEST_CASE("path-width under orderings") {
    CHECK(pw_under_ordering(Permutation::identity(6), Permutation::identity(6)) == 1);
    CHECK_THROWS_AS(pw_under_ordering(Permutation::identity(3), Permutation::identity(4)),
                    std::invalid_argument);

    for (int k = 1; k <= 6; ++k) {
        const Permutation alt =
            monotone_alternation(2 * k, Direction::increasing, Direction::increasing);
        CHECK(horizontal_pw(alt) == k);
        CHECK(horizontal_pw(alt) >= (k + 1) / 2);
    }

    for (const auto& p : testutil::all_permutations(5)) {
        const PwOrdering best = exact_pathwidth_ordering(p);
        CHECK(pw_under_ordering(p, best.ordering) == best.achieved_width);
    }
}

TEST_CASE("one extra element shifts intervalicity by at most one") {
    std::mt19937_64 rng(13);
    for (int rep = 0; rep < 200; ++rep) {
        std::vector<int> s;
        for (int v = 1; v <= 30; ++v)
            if (rng() % 2) s.push_back(v);
        std::vector<int> missing;
        for (int v = 1; v <= 30; ++v)
            if (std::find(s.begin(), s.end(), v) == s.end()) missing.push_back(v);
        if (missing.empty()) continue;
        const int added = missing[rng() % missing.size()];
        std::vector<int> bigger = s;
        bigger.push_back(added);
        CHECK(std::abs(intervalicity(bigger) - intervalicity(s)) <= 1);
    }
}

TEST_CASE("vertical path-width transposes to horizontal") {
    for (const auto& p : testutil::all_permutations_up_to(5))
        CHECK(vertical_pw(p) == horizontal_pw(apply_symmetry(p, Symmetry::inverse)));
}

TEST_CASE("exact width oracle") {
    CHECK(exact_width_oracle(Permutation::identity(7), WidthMode::pathwidth) == 1);
    CHECK(exact_width_oracle(perm({2, 4, 1, 3}), WidthMode::pathwidth) == 2);
    CHECK(exact_width_oracle(perm({2, 4, 1, 3}), WidthMode::gridwidth) == 2);
    CHECK(exact_width_oracle(Permutation{}, WidthMode::pathwidth) == 0);
    CHECK_THROWS_AS(exact_width_oracle(Permutation::identity(9), WidthMode::gridwidth),
                    std::invalid_argument);
}

TEST_CASE("grid-width is at most path-width") {
    for (int n = 1; n <= 6; ++n)
        for (const auto& p : testutil::all_permutations(n)) {
            const int gw = exact_width_oracle(p, WidthMode::gridwidth);
            const int pw = exact_width_oracle(p, WidthMode::pathwidth);
            CHECK(gw <= pw);
            CHECK(gw >= 1);
        }
}

TEST_CASE("ordering minimum equals caterpillar-tree path-width") {
    for (int n = 1; n <= 5; ++n)
        for (const auto& p : testutil::all_permutations(n))
            CHECK(exact_width_oracle(p, WidthMode::pathwidth) == caterpillar_pw_oracle(p));
}

TEST_CASE("forest ordering respects the dimension bound") {
    std::mt19937_64 rng(5);

    {
        const GriddingMatrix m = row_matrix({I});
        const GriddedPermutation g = random_gridded(m, 6, rng);
        const auto o = consistent_orientation(m);
        REQUIRE(o.has_value());
        const PwOrdering res = forest_pw_ordering(g, *o);
        CHECK(res.achieved_width == 1);
    }

    const GriddingMatrix forest32 =
        matrix_of({{E, D, E}, {I, I, E}});  // path through (1,1),(2,1),(2,2)
    const auto o32 = consistent_orientation(forest32);
    REQUIRE(o32.has_value());
    for (int rep = 0; rep < 50; ++rep) {
        const int n = 1 + static_cast<int>(rng() % 20);
        const GriddedPermutation g = random_gridded(forest32, n, rng);
        const PwOrdering res = forest_pw_ordering(g, *o32);
        CHECK(res.achieved_width <= 3);
        CHECK(res.achieved_width == pw_under_ordering(g.perm(), res.ordering));
    }

    // Disconnected forest: components drain at different times, so sink
    // selection has to skip fully emptied ones.
    const GriddingMatrix split = matrix_of({{E, E, D, D},
                                            {E, E, D, E},
                                            {I, I, E, E},
                                            {I, E, E, E}});
    const auto osplit = consistent_orientation(split);
    REQUIRE(osplit.has_value());
    for (int rep = 0; rep < 50; ++rep) {
        const int n = 2 + static_cast<int>(rng() % 16);
        const GriddedPermutation g = random_gridded(split, n, rng);
        const PwOrdering res = forest_pw_ordering(g, *osplit);
        CHECK(res.achieved_width <= 4);
        CHECK(res.achieved_width == pw_under_ordering(g.perm(), res.ordering));
    }

    CHECK_THROWS_AS(
        forest_pw_ordering(random_gridded(matrix_of({{I, I}, {I, I}}), 4, rng),
                           Orientation{{1, 1}, {1, 1}}),
        std::invalid_argument);
}

TEST_CASE("grid tree basics") {
    const Permutation p = Permutation::identity(5);
    const GridTree cat = GridTree::caterpillar(p.points());
    CHECK(cat.is_binary());
    CHECK(cat.is_caterpillar());
    CHECK(cat.leaf_count() == 5);
    CHECK(tree_width_of(cat) == 1);

    const GridTree single = GridTree::leaf({1, 1});
    CHECK(tree_width_of(single) == 1);

    for (const auto& q : testutil::all_permutations(5)) {
        const Permutation sigma = exact_pathwidth_ordering(q).ordering;
        const GridTree t = GridTree::from_ordering(q, sigma);
        CHECK(t.is_caterpillar());
        CHECK(tree_width_of(t) == pw_under_ordering(q, sigma));
    }
}

TEST_CASE("alternation probe sizes") {
    CHECK(least_absent_alternation_size(ClassEntry::av(perm({2, 1})), Axis::horizontal, 8) == 2);
    CHECK_FALSE(
        least_absent_alternation_size(ClassEntry::av(perm({3, 2, 1})), Axis::horizontal, 18)
            .has_value());
}

namespace {

void check_tree_shape(const GeneralTreeResult& res, const GriddedPermutation& g) {
    CHECK(res.tree.is_binary());
    CHECK(res.tree.leaf_count() == g.size());
    auto leaves = res.tree.leaves();
    std::sort(leaves.begin(), leaves.end());
    CHECK(leaves == g.perm().points());
    CHECK(tree_width_of(res.tree) <= res.width_bound);
}

}  // namespace

TEST_CASE("general grid tree construction") {
    std::mt19937_64 rng(9);

    SUBCASE("single increasing cell gives a width-1 caterpillar") {
        const GriddedPermutation g = random_gridded(row_matrix({I}), 7, rng);
        const auto res = build_general_grid_tree(g);
        check_tree_shape(res, g);
        CHECK(tree_width_of(res.tree) == 1);
        CHECK(res.components == 1);
    }

    SUBCASE("two stacked increasing cells") {
        const GriddingMatrix m = column_matrix({I, I});
        for (int rep = 0; rep < 20; ++rep) {
            const GriddedPermutation g = random_gridded(m, 2 + static_cast<int>(rng() % 7), rng);
            const auto res = build_general_grid_tree(g);
            check_tree_shape(res, g);
            if (g.size() <= kExactWidthMaxN)
                CHECK(tree_width_of(res.tree) >=
                      exact_width_oracle(g.perm(), WidthMode::gridwidth));
        }
    }

    SUBCASE("avoider cell with an increasing child") {
        const GriddingMatrix m = column_matrix({ClassEntry::av(perm({3, 2, 1})), I});
        const GriddedPermutation g(perm({2, 3, 1, 4, 5}), m, Gridding{{0, 5}, {0, 3, 5}});
        const auto res = build_general_grid_tree(g);
        check_tree_shape(res, g);
    }

    SUBCASE("root with both row and column children") {
        const GriddingMatrix m = matrix_of({{I, E}, {I, I}});
        const GriddedPermutation g(perm({1, 3, 2}), m, Gridding{{0, 2, 3}, {0, 2, 3}});
        const auto res = build_general_grid_tree(g);
        check_tree_shape(res, g);
    }

    SUBCASE("disconnected components are paired") {
        const GriddingMatrix m = matrix_of({{E, I}, {D, E}});
        for (int rep = 0; rep < 10; ++rep) {
            const GriddedPermutation g = random_gridded(m, 4 + static_cast<int>(rng() % 6), rng);
            const auto res = build_general_grid_tree(g);
            check_tree_shape(res, g);
            CHECK(res.components >= 1);
        }
    }

    SUBCASE("bumper-ended paths are rejected") {
        const ClassEntry a = ClassEntry::av(perm({3, 2, 1}));
        const GriddingMatrix m = column_matrix({a, I, a});
        const GriddedPermutation g(perm({2, 3, 1, 4, 6, 5, 7}), m, Gridding{{0, 7}, {0, 3, 4, 7}});
        CHECK_THROWS_AS(build_general_grid_tree(g), std::invalid_argument);
    }

    SUBCASE("finite entries are rejected") {
        const GriddingMatrix m = row_matrix({ClassEntry::finite({perm({2, 1})}), I});
        const GriddedPermutation g(perm({2, 1, 3}), m, Gridding{{0, 2, 3}, {0, 3}});
        CHECK_THROWS_AS(build_general_grid_tree(g), std::invalid_argument);
    }
}

TEST_CASE("plus-shaped matrix forces the avoider cell to be the root") {
    // Bumpers point into the center cell, so only it can serve as the root;
    // it then has children along both its row and its column.
    const ClassEntry a = ClassEntry::av(perm({3, 2, 1}));
    const GriddingMatrix m = matrix_of({{E, I, E}, {I, a, I}, {E, I, E}});
    const GriddedPermutation g(perm({3, 4, 1, 2, 6, 5, 9, 10, 7, 8}), m,
                               Gridding{{0, 2, 8, 10}, {0, 2, 8, 10}});
    const auto res = build_general_grid_tree(g);
    CHECK(res.tree.is_binary());
    CHECK(res.tree.leaf_count() == 10);
    auto leaves = res.tree.leaves();
    std::sort(leaves.begin(), leaves.end());
    CHECK(leaves == g.perm().points());
    CHECK(tree_width_of(res.tree) <= res.width_bound);
    // h(root) = 1 + four unit children, root tree width 1, bound 4 * 1 * 5.
    CHECK(res.width_bound == 20);
}

TEST_CASE("general tree over a four-cell staircase path") {
    // Deep parent chain: h doubles along the path, bound 4 * g * h(root).
    std::mt19937_64 rng(41);
    const GriddingMatrix st2 = matrix_of({{E, I, I}, {I, I, E}});
    for (int rep = 0; rep < 25; ++rep) {
        const GriddedPermutation g = random_gridded(st2, 4 + static_cast<int>(rng() % 12), rng);
        const auto res = build_general_grid_tree(g);
        CHECK(res.tree.is_binary());
        CHECK(res.tree.leaf_count() == g.size());
        auto leaves = res.tree.leaves();
        std::sort(leaves.begin(), leaves.end());
        CHECK(leaves == g.perm().points());
        CHECK(tree_width_of(res.tree) <= res.width_bound);
    }
    // With one point in every cell, the chain gives h = 4 at the root.
    const GriddedPermutation one_each(perm({1, 2, 3, 4}), st2,
                                      Gridding{{0, 1, 3, 4}, {0, 2, 4}});
    const auto res = build_general_grid_tree(one_each);
    CHECK(res.width_bound == 16);
    CHECK(tree_width_of(res.tree) <= 16);
}

TEST_CASE("forest ordering width is at least the exact path-width") {
    std::mt19937_64 rng(37);
    const GriddingMatrix m = matrix_of({{E, D, E}, {I, I, E}});
    const auto o = consistent_orientation(m);
    REQUIRE(o.has_value());
    for (int rep = 0; rep < 30; ++rep) {
        const GriddedPermutation g = random_gridded(m, 2 + static_cast<int>(rng() % 7), rng);
        const PwOrdering res = forest_pw_ordering(g, *o);
        CHECK(res.achieved_width >= exact_width_oracle(g.perm(), WidthMode::pathwidth));
    }
}

TEST_CASE("general tree bound against the oracle on small instances") {
    std::mt19937_64 rng(31);
    const GriddingMatrix m = matrix_of({{E, D, E}, {I, I, E}});
    for (int rep = 0; rep < 20; ++rep) {
        const GriddedPermutation g = random_gridded(m, 3 + static_cast<int>(rng() % 6), rng);
        const auto res = build_general_grid_tree(g);
        check_tree_shape(res, g);
        CHECK(tree_width_of(res.tree) >= exact_width_oracle(g.perm(), WidthMode::gridwidth));
    }
}
