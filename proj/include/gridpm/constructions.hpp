#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "gridpm/analysis.hpp"
#include "gridpm/grid.hpp"

namespace gridpm {

/// Permutation with a sign on each entry.
struct SignedPermutation {
    Permutation perm;
    std::vector<int> signs;  // +1 / -1 per position

    static SignedPermutation identity(int n);

    int size() const { return perm.size(); }
    /// Signed value at a position: sign * |value|.
    int at(int pos) const { return signs[static_cast<size_t>(pos) - 1] * perm.value_at(pos); }

    SignedPermutation inverse() const;

    friend bool operator==(const SignedPermutation&, const SignedPermutation&) = default;
};

/// The (k+1) x k staircase: entry c on the diagonal cells (i, i), entry d on
/// the cells (i+1, i), everything else empty.
GriddingMatrix staircase_matrix(int k, const ClassEntry& c, const ClassEntry& d);

/// Number of steps when the matrix is a staircase shape, nullopt otherwise.
std::optional<int> staircase_steps(const GriddingMatrix& m);

/// The k-step lane: two points per nonempty staircase cell, row-adjacent cell
/// pairs forming 1423 and column-adjacent pairs forming 1342.
GriddedPermutation make_lane(int k);

/// Wrap a staircase-gridded permutation between two lanes, block-diagonally
/// inside each cell, keeping the original staircase shape.
GriddedPermutation confine(const GriddedPermutation& g);

GriddingMatrix fg_transform(const GriddingMatrix& m, const SignedPermutation& f,
                            const SignedPermutation& g);
GriddedPermutation fg_transform(const GriddedPermutation& gp, const SignedPermutation& f,
                                const SignedPermutation& g);

/// Signed permutations mapping the matching staircase onto a matrix whose
/// cell graph is a proper turning path of even length starting with a row
/// share. The matrix must have no empty rows or columns.
std::pair<SignedPermutation, SignedPermutation> derive_fg(const GriddingMatrix& m_path,
                                                          const Orientation& o);

/// Restriction of a path-shaped matrix to a window of the given cell count
/// whose first two cells share a row, compacted to drop empty rows and
/// columns. nullopt when no window qualifies.
std::optional<GriddingMatrix> extract_staircase_path(const GriddingMatrix& m, int cells);

struct AnchoredPair {
    Permutation pattern;
    Permutation text;
    int anchor_length = 0;  // p + 1
    GriddedPermutation pattern_gridded;  // over the pattern's matrix, cuts widened at the cell
    GriddedPermutation text_gridded;
};

/// Insert two monotone runs of length p+1 hugging the given cell's corners
/// into both permutations, p being the longest monotone subpermutation of the
/// text. Increasing runs at the lower-left and upper-right corners for an Inc
/// cell, decreasing runs at the other two corners for a Dec cell.
AnchoredPair add_anchors(const GriddedPermutation& p, const GriddedPermutation& t, Cell cell);

struct HardnessProvenance {
    GriddingMatrix source;
    GriddingMatrix path;
    SignedPermutation f;
    SignedPermutation g;
    Cell anchor_cell;
    int anchor_length = 0;
    int steps = 0;
};

struct HardnessInstance {
    Permutation pattern_star;
    Permutation text_star;
    HardnessProvenance provenance;
};

/// Full reduction pipeline: confine the base pair, build and window the path
/// matrix, transform both sides onto it, then anchor the first path cell.
/// The base pattern must be gridded over a staircase of an odd number of
/// steps 2c+1 and the base text over the same shape; m must be monotone with
/// a cyclic cell graph.
HardnessInstance build_hardness_instance(const GriddingMatrix& m, const GriddedPermutation& base_pattern,
                                         const GriddedPermutation& base_text);

/// Permutation of length k^3 gridded over a path-shaped monotone matrix of k
/// cells: one block of k^2 points per cell, consecutive blocks interleaved
/// into alternations, non-adjacent blocks of a shared line concatenated in
/// path order.
GriddedPermutation path_witness(const GriddingMatrix& m);

}  // namespace gridpm
