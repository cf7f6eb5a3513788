#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gridpm/grid.hpp"

namespace gridpm {

struct Cell {
    int col = 0;
    int row = 0;

    friend bool operator==(const Cell&, const Cell&) = default;
    friend auto operator<=>(const Cell&, const Cell&) = default;
};

/// Graph on the infinite-class cells of a matrix; two cells are adjacent when
/// they share a row or column and every cell strictly between them is finite
/// or empty.
struct CellGraph {
    std::vector<Cell> vertices;               // sorted (col, row)
    std::vector<std::vector<int>> adjacency;  // by vertex index, sorted

    int vertex_index(Cell c) const;  // -1 if absent
    bool adjacent(int a, int b) const;
    size_t edge_count() const;
};

CellGraph build_cell_graph(const GriddingMatrix& m);

struct StructureReport {
    bool is_forest = false;
    std::vector<Cell> cycle;                    // a witness when not a forest
    std::vector<std::vector<Cell>> components;  // vertex partition
};

StructureReport analyze_structure(const CellGraph& g);

/// No three consecutive cells of the path share a row or column, and
/// consecutive cells are adjacent in g.
bool is_proper_turning_path(const CellGraph& g, const std::vector<Cell>& path);

/// Traversal order when the graph is a single path over all its vertices,
/// nullopt otherwise. Single vertices count as paths.
std::optional<std::vector<Cell>> cell_graph_path(const CellGraph& g);

/// Column and row signs; every Inc cell needs product +1, every Dec cell -1.
struct Orientation {
    std::vector<int> col_sign;  // index 0 = column 1
    std::vector<int> row_sign;

    int col(int i) const { return col_sign[static_cast<size_t>(i) - 1]; }
    int row(int j) const { return row_sign[static_cast<size_t>(j) - 1]; }
};

bool orientation_consistent(const GriddingMatrix& m, const Orientation& o);

/// Solve the sign constraints by parity union-find; free components get +1.
/// Requires a monotone matrix. nullopt when contradictory.
std::optional<Orientation> consistent_orientation(const GriddingMatrix& m);

/// Blow-up replacing each Inc entry by a q x q diagonal of Inc, each Dec
/// entry by a q x q anti-diagonal of Dec. Requires a monotone matrix.
GriddingMatrix refine(const GriddingMatrix& m, int q);

/// Whether the entry's class has unbounded path-width in left-to-right
/// (horizontal) or bottom-to-top (vertical) ordering. Definite for every
/// supported entry kind.
Tristate hpw_unbounded(const ClassEntry& e, Axis axis);

/// Ordered pair (p, q): q's entry has unbounded horizontal path-width and
/// shares p's column, or unbounded vertical path-width and shares p's row.
bool is_bumper(const GriddingMatrix& m, Cell p, Cell q);

/// Some path p_1..p_k (k >= 2) in the cell graph with (p_2, p_1) and
/// (p_{k-1}, p_k) both bumpers; the cell graph must be a forest.
std::optional<std::vector<Cell>> find_bumper_ended_path(const GriddingMatrix& m);

/// Result of the path construction on a cyclic monotone matrix.
struct PathMatrixResult {
    GriddingMatrix matrix;
    std::vector<Cell> path;  // traversal order
    Cell shifted_block;      // cell of the reduced matrix whose block was shifted
    int block_col_lo = 0;    // the block's ranges in output coordinates
    int block_col_hi = 0;
    int block_row_lo = 0;
    int block_row_hi = 0;
};

/// From a monotone matrix with a cyclic cell graph, a matrix whose grid class
/// is contained in Grid(m) and whose cell graph is a proper turning path with
/// at least p vertices.
PathMatrixResult path_matrix(const GriddingMatrix& m, int p);

/// From a bumper-ended path in a matrix of infinite entries, a monotone
/// matrix (2x2 blocks) whose grid class is contained in Grid(m) and whose
/// cell graph contains a cycle.
GriddingMatrix bumper_cycle_matrix(const GriddingMatrix& m, const std::vector<Cell>& path);

enum class Verdict { polynomial_time, np_complete, inconclusive };

struct DichotomyVerdict {
    Verdict verdict = Verdict::inconclusive;
    std::vector<Cell> witness;  // cycle or bumper-ended path
    std::string reason;
};

/// Finite entries are dropped first. Any remaining entry without a declared
/// bounded grid-width yields inconclusive; otherwise a cycle or bumper-ended
/// path means NP-complete and a bumper-free forest means polynomial time.
DichotomyVerdict classify(const GriddingMatrix& m);

std::string to_string(Verdict v);

}  // namespace gridpm
