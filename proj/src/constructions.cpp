#include "gridpm/constructions.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <numeric>
#include <stdexcept>

namespace gridpm {

SignedPermutation SignedPermutation::identity(int n) {
    return {Permutation::identity(n), std::vector<int>(static_cast<size_t>(n), 1)};
}

SignedPermutation SignedPermutation::inverse() const {
    const int n = size();
    SignedPermutation out{apply_symmetry(perm, Symmetry::inverse),
                          std::vector<int>(static_cast<size_t>(n), 1)};
    for (int i = 1; i <= n; ++i)
        out.signs[static_cast<size_t>(perm.value_at(i)) - 1] = signs[static_cast<size_t>(i) - 1];
    return out;
}

GriddingMatrix staircase_matrix(int k, const ClassEntry& c, const ClassEntry& d) {
    if (k < 1) throw std::invalid_argument("staircase needs at least one step");
    if (c.is_empty_class() || d.is_empty_class())
        throw std::invalid_argument("staircase entries must be nonempty");
    GriddingMatrix m(k + 1, k);
    for (int i = 1; i <= k; ++i) {
        m.set(i, i, c);
        m.set(i + 1, i, d);
    }
    return m;
}

std::optional<int> staircase_steps(const GriddingMatrix& m) {
    const int k = m.height();
    if (m.width() != k + 1) return std::nullopt;
    for (int i = 1; i <= k + 1; ++i)
        for (int j = 1; j <= k; ++j) {
            const bool on_stairs = i == j || i == j + 1;
            if (on_stairs != !m.at(i, j).is_empty_class()) return std::nullopt;
        }
    return k;
}

GriddedPermutation make_lane(int k) {
    if (k < 1) throw std::invalid_argument("lane needs at least one step");
    const int n = 4 * k;
    std::vector<int> vals(static_cast<size_t>(n), 0);
    // Cell (j, j) holds the pair P, cell (j+1, j) the pair Q; P brackets Q in
    // height inside row j, Q brackets the next P in width inside column j+1.
    for (int j = 1; j <= k; ++j) {
        const int p1x = j == 1 ? 1 : 4 * j - 4;
        const int p2x = j == 1 ? 2 : 4 * j - 3;
        const int q1x = 4 * j - 1;
        const int q2x = j < k ? 4 * j + 2 : 4 * k;
        vals[static_cast<size_t>(p1x) - 1] = 4 * j - 3;
        vals[static_cast<size_t>(q1x) - 1] = 4 * j - 2;
        vals[static_cast<size_t>(q2x) - 1] = 4 * j - 1;
        vals[static_cast<size_t>(p2x) - 1] = 4 * j;
    }
    Gridding g;
    g.col_cuts.push_back(0);
    g.col_cuts.push_back(2);
    for (int j = 2; j <= k; ++j) g.col_cuts.push_back(2 + 4 * (j - 1));
    g.col_cuts.push_back(n);
    g.row_cuts.push_back(0);
    for (int j = 1; j <= k; ++j) g.row_cuts.push_back(4 * j);
    return GriddedPermutation(Permutation(std::move(vals)),
                              staircase_matrix(k, ClassEntry::inc(), ClassEntry::inc()),
                              std::move(g));
}

namespace {

struct TaggedPoint {
    int col = 0;
    int row = 0;
    int group = 0;  // 0 = lower lane, 1 = payload, 2 = upper lane
    int src_x = 0;
    int src_y = 0;
};

}  // namespace

GriddedPermutation confine(const GriddedPermutation& g) {
    const auto steps = staircase_steps(g.matrix());
    if (!steps) throw std::invalid_argument("confining needs a staircase-shaped matrix");
    const int k = *steps;

    const GriddedPermutation lane = make_lane(k);
    std::vector<TaggedPoint> pts;
    auto absorb = [&](const GriddedPermutation& src, int group) {
        for (int x = 1; x <= src.size(); ++x) {
            const auto [ci, rj] = src.cell_of_position(x);
            pts.push_back({ci, rj, group, x, src.perm().value_at(x)});
        }
    };
    absorb(lane, 0);
    absorb(g, 1);
    absorb(lane, 2);

    // Inside each cell the three groups stack block-diagonally, so ordering
    // by (line, group, source coordinate) realizes the layout.
    const int n = static_cast<int>(pts.size());
    std::vector<int> order(static_cast<size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    auto ix = [&](int i) { return static_cast<size_t>(i); };

    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return std::tuple(pts[ix(a)].col, pts[ix(a)].group, pts[ix(a)].src_x) <
               std::tuple(pts[ix(b)].col, pts[ix(b)].group, pts[ix(b)].src_x);
    });
    std::vector<int> xcoord(static_cast<size_t>(n));
    for (int r = 0; r < n; ++r) xcoord[ix(order[ix(r)])] = r + 1;

    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return std::tuple(pts[ix(a)].row, pts[ix(a)].group, pts[ix(a)].src_y) <
               std::tuple(pts[ix(b)].row, pts[ix(b)].group, pts[ix(b)].src_y);
    });
    std::vector<int> ycoord(static_cast<size_t>(n));
    for (int r = 0; r < n; ++r) ycoord[ix(order[ix(r)])] = r + 1;

    std::vector<int> vals(static_cast<size_t>(n), 0);
    for (int i = 0; i < n; ++i) vals[ix(xcoord[ix(i)]) - 1] = ycoord[ix(i)];

    Gridding cuts;
    cuts.col_cuts.assign(static_cast<size_t>(k + 1) + 1, 0);
    cuts.row_cuts.assign(static_cast<size_t>(k) + 1, 0);
    for (const auto& p : pts) {
        ++cuts.col_cuts[static_cast<size_t>(p.col)];
        ++cuts.row_cuts[static_cast<size_t>(p.row)];
    }
    for (size_t i = 1; i < cuts.col_cuts.size(); ++i) cuts.col_cuts[i] += cuts.col_cuts[i - 1];
    for (size_t j = 1; j < cuts.row_cuts.size(); ++j) cuts.row_cuts[j] += cuts.row_cuts[j - 1];

    return GriddedPermutation(Permutation(std::move(vals)), g.matrix(), std::move(cuts));
}

namespace {

ClassEntry flip_entry(const ClassEntry& e, bool flip_x, bool flip_y) {
    ClassEntry out = e;
    if (flip_x) out = out.transformed(Symmetry::reverse);
    if (flip_y) out = out.transformed(Symmetry::complement);
    return out;
}

void check_signed_dimensions(const GriddingMatrix& m, const SignedPermutation& f,
                             const SignedPermutation& g) {
    if (f.size() != m.width() || g.size() != m.height())
        throw std::invalid_argument("signed permutation lengths must match matrix dimensions");
}

}  // namespace

GriddingMatrix fg_transform(const GriddingMatrix& m, const SignedPermutation& f,
                            const SignedPermutation& g) {
    check_signed_dimensions(m, f, g);
    GriddingMatrix out(m.width(), m.height());
    for (int i = 1; i <= m.width(); ++i)
        for (int j = 1; j <= m.height(); ++j) {
            const int fi = f.at(i);
            const int gj = g.at(j);
            out.set(i, j, flip_entry(m.at(std::abs(fi), std::abs(gj)), fi < 0, gj < 0));
        }
    return out;
}

GriddedPermutation fg_transform(const GriddedPermutation& gp, const SignedPermutation& f,
                                const SignedPermutation& g) {
    const GriddingMatrix& m = gp.matrix();
    check_signed_dimensions(m, f, g);
    const auto& cuts = gp.gridding();
    const int k = m.width();
    const int l = m.height();

    auto width_of = [&](int col) {
        return cuts.col_cuts[static_cast<size_t>(col)] - cuts.col_cuts[static_cast<size_t>(col) - 1];
    };
    auto height_of = [&](int row) {
        return cuts.row_cuts[static_cast<size_t>(row)] - cuts.row_cuts[static_cast<size_t>(row) - 1];
    };

    // Start of each new band, and the placement of each old band inside the
    // transformed order.
    std::vector<int> new_col_start(static_cast<size_t>(k) + 1, 0);
    std::vector<int> col_slot(static_cast<size_t>(k) + 1, 0);  // old col -> new col
    int acc = 0;
    for (int i = 1; i <= k; ++i) {
        new_col_start[static_cast<size_t>(i)] = acc;
        acc += width_of(std::abs(f.at(i)));
        col_slot[static_cast<size_t>(std::abs(f.at(i)))] = i;
    }
    std::vector<int> new_row_start(static_cast<size_t>(l) + 1, 0);
    std::vector<int> row_slot(static_cast<size_t>(l) + 1, 0);
    acc = 0;
    for (int j = 1; j <= l; ++j) {
        new_row_start[static_cast<size_t>(j)] = acc;
        acc += height_of(std::abs(g.at(j)));
        row_slot[static_cast<size_t>(std::abs(g.at(j)))] = j;
    }

    const Permutation& p = gp.perm();
    const int n = p.size();
    std::vector<int> vals(static_cast<size_t>(n), 0);
    for (int x = 1; x <= n; ++x) {
        const int y = p.value_at(x);
        const int a = cuts.column_of(x);
        const int b = cuts.row_of(y);
        const int i = col_slot[static_cast<size_t>(a)];
        const int j = row_slot[static_cast<size_t>(b)];
        const int dx = x - cuts.col_cuts[static_cast<size_t>(a) - 1] - 1;
        const int dy = y - cuts.row_cuts[static_cast<size_t>(b) - 1] - 1;
        const int nx =
            new_col_start[static_cast<size_t>(i)] + (f.at(i) > 0 ? dx : width_of(a) - 1 - dx) + 1;
        const int ny =
            new_row_start[static_cast<size_t>(j)] + (g.at(j) > 0 ? dy : height_of(b) - 1 - dy) + 1;
        vals[static_cast<size_t>(nx) - 1] = ny;
    }

    Gridding ncuts;
    ncuts.col_cuts.push_back(0);
    for (int i = 1; i <= k; ++i)
        ncuts.col_cuts.push_back(new_col_start[static_cast<size_t>(i)] +
                                 width_of(std::abs(f.at(i))));
    ncuts.row_cuts.push_back(0);
    for (int j = 1; j <= l; ++j)
        ncuts.row_cuts.push_back(new_row_start[static_cast<size_t>(j)] +
                                 height_of(std::abs(g.at(j))));

    return GriddedPermutation(Permutation(std::move(vals)), fg_transform(m, f, g),
                              std::move(ncuts));
}

namespace {

// Path traversal oriented so the first two cells share a row; nullopt when
// neither direction starts with a row share.
std::optional<std::vector<Cell>> row_started_path(const GriddingMatrix& m) {
    auto path = cell_graph_path(build_cell_graph(m));
    if (!path || path->size() < 2) return std::nullopt;
    if ((*path)[0].row == (*path)[1].row) return path;
    std::reverse(path->begin(), path->end());
    if ((*path)[0].row == (*path)[1].row) return path;
    return std::nullopt;
}

}  // namespace

std::pair<SignedPermutation, SignedPermutation> derive_fg(const GriddingMatrix& m_path,
                                                          const Orientation& o) {
    auto path = row_started_path(m_path);
    if (!path) throw std::invalid_argument("cell graph is not a row-started path");
    if (!is_proper_turning_path(build_cell_graph(m_path), *path))
        throw std::invalid_argument("cell graph path is not proper turning");
    if (path->size() % 2 != 0) throw std::invalid_argument("path length must be even");
    if (!orientation_consistent(m_path, o))
        throw std::invalid_argument("orientation does not fit the matrix");

    std::vector<int> cols, rows;  // visit order, deduplicated
    for (const Cell& c : *path) {
        if (cols.empty() || cols.back() != c.col) cols.push_back(c.col);
        if (rows.empty() || rows.back() != c.row) rows.push_back(c.row);
    }
    if (static_cast<int>(cols.size()) != m_path.width() ||
        static_cast<int>(rows.size()) != m_path.height())
        throw std::invalid_argument("path must visit every row and column of the matrix");

    SignedPermutation f{Permutation::identity(m_path.width()),
                        std::vector<int>(static_cast<size_t>(m_path.width()), 1)};
    std::vector<int> fvals(static_cast<size_t>(m_path.width()), 0);
    for (size_t a = 0; a < cols.size(); ++a) {
        fvals[static_cast<size_t>(cols[a]) - 1] = static_cast<int>(a) + 1;
        f.signs[static_cast<size_t>(cols[a]) - 1] = o.col(cols[a]);
    }
    f.perm = Permutation(fvals);

    SignedPermutation g{Permutation::identity(m_path.height()),
                        std::vector<int>(static_cast<size_t>(m_path.height()), 1)};
    std::vector<int> gvals(static_cast<size_t>(m_path.height()), 0);
    for (size_t b = 0; b < rows.size(); ++b) {
        gvals[static_cast<size_t>(rows[b]) - 1] = static_cast<int>(b) + 1;
        g.signs[static_cast<size_t>(rows[b]) - 1] = o.row(rows[b]);
    }
    g.perm = Permutation(gvals);
    return {f, g};
}

std::optional<GriddingMatrix> extract_staircase_path(const GriddingMatrix& m, int cells) {
    if (cells < 2) return std::nullopt;
    auto whole = cell_graph_path(build_cell_graph(m));
    if (!whole || static_cast<int>(whole->size()) < cells) return std::nullopt;

    for (size_t offset = 0; offset + static_cast<size_t>(cells) <= whole->size(); ++offset) {
        std::vector<Cell> window(whole->begin() + static_cast<long>(offset),
                                 whole->begin() + static_cast<long>(offset) + cells);
        if (window[0].row != window[1].row) {
            std::reverse(window.begin(), window.end());
            if (window[0].row != window[1].row) continue;
        }

        GriddingMatrix cut(m.width(), m.height());
        for (const Cell& c : window) cut.set(c.col, c.row, m.at(c.col, c.row));

        // Compact away rows and columns that became empty.
        std::vector<int> colmap(static_cast<size_t>(m.width()) + 1, 0);
        std::vector<int> rowmap(static_cast<size_t>(m.height()) + 1, 0);
        int nc = 0, nr = 0;
        for (int i = 1; i <= m.width(); ++i) {
            bool used = false;
            for (int j = 1; j <= m.height(); ++j) used |= !cut.at(i, j).is_empty_class();
            if (used) colmap[static_cast<size_t>(i)] = ++nc;
        }
        for (int j = 1; j <= m.height(); ++j) {
            bool used = false;
            for (int i = 1; i <= m.width(); ++i) used |= !cut.at(i, j).is_empty_class();
            if (used) rowmap[static_cast<size_t>(j)] = ++nr;
        }
        GriddingMatrix compact(nc, nr);
        for (int i = 1; i <= m.width(); ++i)
            for (int j = 1; j <= m.height(); ++j)
                if (!cut.at(i, j).is_empty_class())
                    compact.set(colmap[static_cast<size_t>(i)], rowmap[static_cast<size_t>(j)],
                                cut.at(i, j));

        auto got = row_started_path(compact);
        if (!got || static_cast<int>(got->size()) != cells) continue;
        if (!is_proper_turning_path(build_cell_graph(compact), *got)) continue;

        // Every line must be visited in one contiguous stretch, or the
        // staircase correspondence breaks down.
        std::vector<int> cols, rows;
        for (const Cell& c : *got) {
            if (cols.empty() || cols.back() != c.col) cols.push_back(c.col);
            if (rows.empty() || rows.back() != c.row) rows.push_back(c.row);
        }
        std::vector<int> csorted = cols, rsorted = rows;
        std::sort(csorted.begin(), csorted.end());
        std::sort(rsorted.begin(), rsorted.end());
        if (static_cast<int>(cols.size()) != compact.width() ||
            static_cast<int>(rows.size()) != compact.height() ||
            std::adjacent_find(csorted.begin(), csorted.end()) != csorted.end() ||
            std::adjacent_find(rsorted.begin(), rsorted.end()) != rsorted.end())
            continue;
        return compact;
    }
    return std::nullopt;
}

namespace {

Gridding widen_at_cell(const Gridding& cuts, Cell cell, int count) {
    Gridding out = cuts;
    for (size_t i = static_cast<size_t>(cell.col); i < out.col_cuts.size(); ++i)
        out.col_cuts[i] += 2 * count;
    for (size_t j = static_cast<size_t>(cell.row); j < out.row_cuts.size(); ++j)
        out.row_cuts[j] += 2 * count;
    return out;
}

Permutation insert_anchor_runs(const Permutation& p, const Gridding& cuts, Cell cell,
                               bool increasing, int count) {
    const int n = p.size();
    const int lo_x = cuts.col_cuts[static_cast<size_t>(cell.col) - 1] + 1;
    const int hi_x = cuts.col_cuts[static_cast<size_t>(cell.col)];
    const int lo_y = cuts.row_cuts[static_cast<size_t>(cell.row) - 1] + 1;
    const int hi_y = cuts.row_cuts[static_cast<size_t>(cell.row)];

    std::vector<int> vals(static_cast<size_t>(n) + 2 * static_cast<size_t>(count), 0);
    auto shift = [count](int v, int lo, int hi) {
        return v + (v >= lo ? count : 0) + (v > hi ? count : 0);
    };
    for (int x = 1; x <= n; ++x)
        vals[static_cast<size_t>(shift(x, lo_x, hi_x)) - 1] = shift(p.value_at(x), lo_y, hi_y);

    for (int a = 0; a < count; ++a) {
        if (increasing) {
            vals[static_cast<size_t>(lo_x + a) - 1] = lo_y + a;
            vals[static_cast<size_t>(hi_x + count + 1 + a) - 1] = hi_y + count + 1 + a;
        } else {
            vals[static_cast<size_t>(lo_x + a) - 1] = hi_y + 2 * count - a;
            vals[static_cast<size_t>(hi_x + count + 1 + a) - 1] = lo_y + count - 1 - a;
        }
    }
    return Permutation(std::move(vals));
}

}  // namespace

AnchoredPair add_anchors(const GriddedPermutation& p, const GriddedPermutation& t, Cell cell) {
    if (p.matrix().width() != t.matrix().width() || p.matrix().height() != t.matrix().height())
        throw std::invalid_argument("gridding dimensions differ");
    if (p.cell_points(cell.col, cell.row).empty() || t.cell_points(cell.col, cell.row).empty())
        throw std::invalid_argument("anchor cell must be nonempty in both permutations");
    const ClassEntry& entry = p.matrix().at(cell.col, cell.row);
    if (!entry.is_monotone())
        throw std::invalid_argument("anchor cell entry must be Inc or Dec in the pattern matrix");
    const bool increasing = entry.kind() == EntryKind::inc;

    const int longest = std::max(lis_length(t.perm(), Direction::increasing),
                                 lis_length(t.perm(), Direction::decreasing));
    const int count = longest + 1;

    AnchoredPair out;
    out.anchor_length = count;
    out.pattern = insert_anchor_runs(p.perm(), p.gridding(), cell, increasing, count);
    out.text = insert_anchor_runs(t.perm(), t.gridding(), cell, increasing, count);
    out.pattern_gridded =
        GriddedPermutation(out.pattern, p.matrix(), widen_at_cell(p.gridding(), cell, count));
    out.text_gridded =
        GriddedPermutation(out.text, t.matrix(), widen_at_cell(t.gridding(), cell, count));
    return out;
}

HardnessInstance build_hardness_instance(const GriddingMatrix& m,
                                         const GriddedPermutation& base_pattern,
                                         const GriddedPermutation& base_text) {
    const auto steps_p = staircase_steps(base_pattern.matrix());
    const auto steps_t = staircase_steps(base_text.matrix());
    if (!steps_p || !steps_t || *steps_p != *steps_t)
        throw std::invalid_argument("base pair must be gridded over staircases of equal step count");
    const int steps = *steps_p;
    if (steps % 2 == 0) throw std::invalid_argument("staircase step count must be odd (2c + 1)");
    const int c = (steps - 1) / 2;
    if (!m.is_monotone()) throw std::invalid_argument("source matrix must be monotone");

    const GriddedPermutation confined_p = confine(base_pattern);
    const GriddedPermutation confined_t = confine(base_text);

    const int path_len = 4 * c + 2;
    const PathMatrixResult pm = path_matrix(m, path_len);
    const auto window = extract_staircase_path(pm.matrix, path_len);
    if (!window)
        throw std::logic_error("no row-started window of the requested length in the path matrix");

    const auto orientation = consistent_orientation(*window);
    if (!orientation) throw std::logic_error("path window has no consistent orientation");
    const auto [f, g] = derive_fg(*window, *orientation);

    const GriddedPermutation tp = fg_transform(confined_p, f, g);
    const GriddedPermutation tt = fg_transform(confined_t, f, g);
    if (!(tp.matrix() == *window))
        throw std::logic_error("transformed staircase does not match the path window");

    const Cell first_cell = (*row_started_path(*window))[0];
    AnchoredPair anchored = add_anchors(tp, tt, first_cell);

    HardnessInstance inst;
    inst.pattern_star = std::move(anchored.pattern);
    inst.text_star = std::move(anchored.text);
    inst.provenance = {m, *window, f, g, first_cell, anchored.anchor_length, steps};
    return inst;
}

GriddedPermutation path_witness(const GriddingMatrix& m) {
    if (!m.is_monotone()) throw std::invalid_argument("path witness needs a monotone matrix");
    auto path_opt = cell_graph_path(build_cell_graph(m));
    if (!path_opt) throw std::invalid_argument("cell graph is not a path");
    const std::vector<Cell>& path = *path_opt;
    const int k = static_cast<int>(path.size());
    const int bs = k * k;  // block size
    const int n = k * bs;

    // Per line, the sequence of (block, index) entries; adjacent blocks weave
    // one-for-one, the upper (resp. right) block leading, later blocks append.
    struct Slot {
        int block;
        int idx;
    };
    auto weave = [&](std::vector<Slot>& order, int prev_block, int new_block, bool new_leads) {
        if (prev_block < 0) {
            for (int i = 0; i < bs; ++i) order.push_back({new_block, i});
            return;
        }
        std::vector<Slot> next;
        int emitted = 0;
        for (const Slot& s : order) {
            if (s.block == prev_block) {
                if (new_leads) {
                    next.push_back({new_block, emitted++});
                    next.push_back(s);
                } else {
                    next.push_back(s);
                    next.push_back({new_block, emitted++});
                }
            } else {
                next.push_back(s);
            }
        }
        order = std::move(next);
    };

    std::vector<std::vector<Slot>> col_order(static_cast<size_t>(m.width()) + 1);
    std::vector<std::vector<Slot>> row_order(static_cast<size_t>(m.height()) + 1);
    std::vector<int> last_in_col(static_cast<size_t>(m.width()) + 1, -1);
    std::vector<int> last_in_row(static_cast<size_t>(m.height()) + 1, -1);

    for (int b = 0; b < k; ++b) {
        const Cell cell = path[static_cast<size_t>(b)];
        {
            const int prev = last_in_col[static_cast<size_t>(cell.col)];
            const bool adjacent = prev == b - 1 && prev >= 0;
            const bool above = prev >= 0 && cell.row > path[static_cast<size_t>(prev)].row;
            weave(col_order[static_cast<size_t>(cell.col)], adjacent ? prev : -1, b,
                  adjacent && above);
            last_in_col[static_cast<size_t>(cell.col)] = b;
        }
        {
            const int prev = last_in_row[static_cast<size_t>(cell.row)];
            const bool adjacent = prev == b - 1 && prev >= 0;
            const bool right = prev >= 0 && cell.col > path[static_cast<size_t>(prev)].col;
            weave(row_order[static_cast<size_t>(cell.row)], adjacent ? prev : -1, b,
                  adjacent && right);
            last_in_row[static_cast<size_t>(cell.row)] = b;
        }
    }

    // Point identity: index 0..bs-1 in x order; Dec blocks map y index j to x
    // index bs-1-j, Inc blocks keep j.
    std::vector<std::vector<int>> px(static_cast<size_t>(k)), py(static_cast<size_t>(k));
    for (int b = 0; b < k; ++b) {
        px[static_cast<size_t>(b)].assign(static_cast<size_t>(bs), 0);
        py[static_cast<size_t>(b)].assign(static_cast<size_t>(bs), 0);
    }
    int xcursor = 0;
    Gridding cuts;
    cuts.col_cuts.push_back(0);
    for (int i = 1; i <= m.width(); ++i) {
        for (const Slot& s : col_order[static_cast<size_t>(i)])
            px[static_cast<size_t>(s.block)][static_cast<size_t>(s.idx)] = ++xcursor;
        cuts.col_cuts.push_back(xcursor);
    }
    int ycursor = 0;
    cuts.row_cuts.push_back(0);
    for (int j = 1; j <= m.height(); ++j) {
        for (const Slot& s : row_order[static_cast<size_t>(j)]) {
            const Cell cell = path[static_cast<size_t>(s.block)];
            const bool inc = m.at(cell.col, cell.row).kind() == EntryKind::inc;
            const int xidx = inc ? s.idx : bs - 1 - s.idx;
            py[static_cast<size_t>(s.block)][static_cast<size_t>(xidx)] = ++ycursor;
        }
        cuts.row_cuts.push_back(ycursor);
    }

    std::vector<int> vals(static_cast<size_t>(n), 0);
    for (int b = 0; b < k; ++b)
        for (int i = 0; i < bs; ++i)
            vals[static_cast<size_t>(px[static_cast<size_t>(b)][static_cast<size_t>(i)]) - 1] =
                py[static_cast<size_t>(b)][static_cast<size_t>(i)];

    return GriddedPermutation(Permutation(std::move(vals)), m, std::move(cuts));
}

}  // namespace gridpm
