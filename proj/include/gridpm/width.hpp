#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "gridpm/analysis.hpp"
#include "gridpm/grid.hpp"

namespace gridpm {

/// Number of maximal runs of consecutive integers; 0 for the empty set.
int intervalicity(const std::vector<int>& values);

/// Max of the intervalicities of the x- and y-projections.
int grid_complexity(const PointSet& s);

/// Max grid-complexity over the prefixes of the point sequence
/// (sigma_1, p[sigma_1]), ..., (sigma_i, p[sigma_i]).
int pw_under_ordering(const Permutation& p, const Permutation& sigma);

/// Path-width in left-to-right order.
int horizontal_pw(const Permutation& p);

/// Path-width in bottom-to-top order.
int vertical_pw(const Permutation& p);

enum class WidthMode { pathwidth, gridwidth };

/// Hard cap on exhaustive width searches.
inline constexpr int kExactWidthMaxN = 8;

/// Exact width by exhaustive search: path-width as the minimum of
/// pw_under_ordering over all orderings, grid-width by memoized search over
/// point subsets. Lengths above kExactWidthMaxN are rejected.
int exact_width_oracle(const Permutation& p, WidthMode mode);

/// An ordering together with the width it achieves.
struct PwOrdering {
    Permutation ordering;
    int achieved_width = 0;
};

/// Width-minimal ordering (first in lexicographic enumeration order among
/// minimizers). Subject to the exhaustive-search cap.
PwOrdering exact_pathwidth_ordering(const Permutation& p);

/// Ordering built from the oriented forest structure of the gridding; the
/// achieved width is at most max(matrix width, matrix height).
PwOrdering forest_pw_ordering(const GriddedPermutation& g, const Orientation& o);

/// Rooted binary tree with leaves labeled by the points of a permutation.
class GridTree {
  public:
    struct Node {
        int left = -1;
        int right = -1;
        Point point;  // leaves only

        bool is_leaf() const { return left < 0; }
    };

    static GridTree leaf(Point p);
    static GridTree join(const GridTree& a, const GridTree& b);

    /// Caterpillar whose leaves top-to-bottom are the given points.
    static GridTree caterpillar(const std::vector<Point>& leaves_top_to_bottom);

    /// Caterpillar matching an ordering: the i-th added leaf is
    /// (sigma_i, p[sigma_i]), earliest leaves deepest.
    static GridTree from_ordering(const Permutation& p, const Permutation& sigma);

    bool empty() const { return nodes_.empty(); }
    int root() const { return root_; }
    const Node& node(int id) const { return nodes_[static_cast<size_t>(id)]; }
    int node_count() const { return static_cast<int>(nodes_.size()); }
    int leaf_count() const;

    std::vector<Point> leaves() const;
    PointSet leaf_points(int id) const;

    bool is_binary() const;
    bool is_caterpillar() const;

  private:
    int add(Node n);

    std::vector<Node> nodes_;
    int root_ = -1;
};

/// Max over nodes of the grid-complexity of the node's leaf set.
int tree_width_of(const GridTree& t);

/// Supplies a grid tree for one cell's standardized content.
using EntryTreeProvider =
    std::function<GridTree(Cell cell, const Permutation& standardized_content)>;

/// Optimal tree for small or monotone contents, left-to-right caterpillar
/// otherwise.
GridTree default_entry_tree(Cell cell, const Permutation& standardized_content);

struct GeneralTreeResult {
    GridTree tree;
    long long width_bound = 0;  // 4 * g * h(root) per component, plus pairing cost
    int components = 0;
};

/// Grid tree for a gridded permutation over a forest matrix without
/// bumper-ended paths. Cells whose content is empty are treated as empty
/// entries; every remaining entry must be infinite with a usable propagation
/// constant.
GeneralTreeResult build_general_grid_tree(const GriddedPermutation& g,
                                          const EntryTreeProvider& entry_trees = default_entry_tree);

/// Least size s such that no monotone alternation of size s along the axis
/// belongs to the entry's class; nullopt when every probed size has one.
std::optional<int> least_absent_alternation_size(const ClassEntry& e, Axis axis, int probe_limit);

}  // namespace gridpm
