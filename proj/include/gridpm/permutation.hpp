#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace gridpm {

struct Point {
    int x = 0;
    int y = 0;

    friend bool operator==(const Point&, const Point&) = default;
    friend auto operator<=>(const Point&, const Point&) = default;
};

// A point set with pairwise distinct x and distinct y coordinates, kept
// sorted by x.
using PointSet = std::vector<Point>;

/// A permutation of 1..n, stored as the value sequence. Position i (1-based)
/// carries the point (i, value_at(i)). Immutable after construction.
class Permutation {
  public:
    Permutation() = default;
    explicit Permutation(std::vector<int> values);

    static Permutation identity(int n);
    static Permutation decreasing(int n);

    int size() const { return static_cast<int>(vals_.size()); }
    bool empty() const { return vals_.empty(); }
    int value_at(int pos) const { return vals_[static_cast<size_t>(pos) - 1]; }
    const std::vector<int>& values() const { return vals_; }

    /// Position holding a given value (1-based), O(n).
    int position_of(int value) const;

    PointSet points() const;

    friend bool operator==(const Permutation&, const Permutation&) = default;
    friend auto operator<=>(const Permutation&, const Permutation&) = default;

  private:
    std::vector<int> vals_;
};

/// Positions (1-based, strictly increasing) of an occurrence in a text.
struct Occurrence {
    std::vector<int> positions;

    friend bool operator==(const Occurrence&, const Occurrence&) = default;
};

enum class Symmetry { reverse, complement, inverse };
enum class Direction { increasing, decreasing };
enum class Axis { horizontal, vertical };

/// Unique permutation order-isomorphic to a point set.
Permutation standardize(const PointSet& s);

Permutation apply_symmetry(const Permutation& p, Symmetry which);

/// Extra per-point restriction for occurrence search: allowed(pattern_pos,
/// text_pos) gates which text positions each pattern position may use.
using PositionFilter = std::function<bool(int, int)>;

/// First occurrence of pattern in text in lexicographic position order, or
/// nullopt. The filter, when given, prunes candidate placements.
std::optional<Occurrence> contains_brute(const Permutation& pattern,
                                         const Permutation& text,
                                         const PositionFilter& allowed = {});

/// All occurrences, lexicographic by position vector. max_count == 0 means
/// unbounded.
std::vector<Occurrence> enumerate_occurrences(const Permutation& pattern,
                                              const Permutation& text,
                                              const PositionFilter& allowed = {},
                                              size_t max_count = 0);

/// Check that positions select a subsequence of text order-isomorphic to
/// pattern.
bool occurrence_valid(const Permutation& pattern, const Permutation& text,
                      const Occurrence& occ);

/// Longest monotone subsequence length, O(n log n).
int lis_length(const Permutation& p, Direction dir);

/// Positions (1-based) of one longest monotone subsequence.
std::vector<int> lis_positions(const Permutation& p, Direction dir);

/// Horizontal: every even value precedes every odd value. Vertical: the
/// inverse is a horizontal alternation.
bool is_alternation(const Permutation& p, Axis axis);

/// The four monotone alternation shapes: a run of the even values followed by
/// a run of the odd values, each half increasing or decreasing.
Permutation monotone_alternation(int size, Direction evens, Direction odds);

/// Monotone alternation contained in an alternation of size 2m, of size at
/// least 2*floor(m^(1/4)). Input must be an alternation of even size.
Permutation extract_monotone_alternation(const Permutation& p, Axis axis);

std::string to_string(const Permutation& p);

}  // namespace gridpm
