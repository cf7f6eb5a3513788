#pragma once

#include <optional>
#include <random>
#include <vector>

#include "gridpm/permutation.hpp"

namespace gridpm {

enum class Tristate { yes, no, unknown };

enum class EntryKind { empty, inc, dec, av, finite };

/// One entry of a gridding matrix: a permutation class drawn from the
/// supported shapes. The empty entry is the class holding only the empty
/// permutation. Finite entries store their downward closure.
class ClassEntry {
  public:
    ClassEntry() = default;

    static ClassEntry empty();
    static ClassEntry inc();
    static ClassEntry dec();
    static ClassEntry av(Permutation basis);
    static ClassEntry finite(std::vector<Permutation> members);

    EntryKind kind() const { return kind_; }
    bool is_empty_class() const { return kind_ == EntryKind::empty; }
    bool is_monotone() const { return kind_ == EntryKind::inc || kind_ == EntryKind::dec; }
    bool is_infinite() const;

    const Permutation& basis() const { return basis_; }
    const std::vector<Permutation>& members() const { return members_; }
    int max_member_length() const;

    /// Membership test for the class.
    bool contains(const Permutation& p) const;

    Tristate declared_bounded_gridwidth() const { return declared_bgw_; }
    ClassEntry with_declared_bounded_gridwidth(Tristate t) const;

    /// Entry after a point-set symmetry of the cell.
    ClassEntry transformed(Symmetry op) const;

    friend bool operator==(const ClassEntry& a, const ClassEntry& b);

  private:
    EntryKind kind_ = EntryKind::empty;
    Permutation basis_;                   // av
    std::vector<Permutation> members_;    // finite, downward closed, sorted
    Tristate declared_bgw_ = Tristate::yes;
};

bool entry_contains(const ClassEntry& e, const Permutation& p);

/// k x l matrix of class entries, Cartesian addressing: column i in 1..k,
/// row j in 1..l with row 1 at the bottom.
class GriddingMatrix {
  public:
    GriddingMatrix() = default;
    GriddingMatrix(int width, int height);
    GriddingMatrix(int width, int height, std::vector<ClassEntry> entries);

    int width() const { return width_; }
    int height() const { return height_; }

    const ClassEntry& at(int col, int row) const;
    void set(int col, int row, ClassEntry e);

    bool is_monotone() const;

    friend bool operator==(const GriddingMatrix&, const GriddingMatrix&);

  private:
    size_t index(int col, int row) const;

    int width_ = 0;
    int height_ = 0;
    std::vector<ClassEntry> entries_;
};

/// Cut vectors 0 = c_0 <= ... <= c_k = n and 0 = r_0 <= ... <= r_l = n.
/// Column interval I_i = (c_{i-1}, c_i], row interval J_j = (r_{j-1}, r_j].
struct Gridding {
    std::vector<int> col_cuts;
    std::vector<int> row_cuts;

    int columns() const { return static_cast<int>(col_cuts.size()) - 1; }
    int rows() const { return static_cast<int>(row_cuts.size()) - 1; }

    /// Column whose interval holds position x (1-based).
    int column_of(int x) const;
    int row_of(int y) const;

    friend bool operator==(const Gridding&, const Gridding&) = default;
};

bool validate_gridding(const Permutation& p, const GriddingMatrix& m, const Gridding& g);

/// Lexicographically first valid gridding (column cuts major, then row cuts),
/// or nullopt. Exhaustive search, exponential in k + l.
std::optional<Gridding> find_gridding(const Permutation& p, const GriddingMatrix& m);

/// A permutation with a fixed valid gridding; validated at construction.
class GriddedPermutation {
  public:
    GriddedPermutation() = default;
    GriddedPermutation(Permutation perm, GriddingMatrix matrix, Gridding gridding);

    const Permutation& perm() const { return perm_; }
    const GriddingMatrix& matrix() const { return matrix_; }
    const Gridding& gridding() const { return gridding_; }

    int size() const { return perm_.size(); }

    PointSet cell_points(int col, int row) const;
    /// Cell (column, row) holding the point at text position x.
    std::pair<int, int> cell_of_position(int x) const;

    friend bool operator==(const GriddedPermutation&, const GriddedPermutation&) = default;

  private:
    Permutation perm_;
    GriddingMatrix matrix_;
    Gridding gridding_;
};

/// Uniform-ish random member of Grid(m) of length n with an explicit
/// gridding; deterministic for a fixed generator state.
GriddedPermutation random_gridded(const GriddingMatrix& m, int n, std::mt19937_64& rng);

/// Random member of a class entry of a given length (rejection-free greedy
/// insertion for Av entries).
Permutation random_class_member(const ClassEntry& e, int length, std::mt19937_64& rng);

}  // namespace gridpm
