#include "gridpm/analysis.hpp"

#include <algorithm>
#include <array>
#include <cassert>
#include <deque>
#include <functional>
#include <numeric>
#include <stdexcept>

namespace gridpm {

namespace {

bool shares_column(Cell a, Cell b) { return a.col == b.col; }

}  // namespace

int CellGraph::vertex_index(Cell c) const {
    auto it = std::lower_bound(vertices.begin(), vertices.end(), c);
    if (it == vertices.end() || !(*it == c)) return -1;
    return static_cast<int>(it - vertices.begin());
}

bool CellGraph::adjacent(int a, int b) const {
    const auto& n = adjacency[static_cast<size_t>(a)];
    return std::binary_search(n.begin(), n.end(), b);
}

size_t CellGraph::edge_count() const {
    size_t twice = 0;
    for (const auto& n : adjacency) twice += n.size();
    return twice / 2;
}

CellGraph build_cell_graph(const GriddingMatrix& m) {
    CellGraph g;
    for (int i = 1; i <= m.width(); ++i)
        for (int j = 1; j <= m.height(); ++j)
            if (m.at(i, j).is_infinite()) g.vertices.push_back({i, j});
    std::sort(g.vertices.begin(), g.vertices.end());
    g.adjacency.assign(g.vertices.size(), {});

    auto link = [&](Cell a, Cell b) {
        int ia = g.vertex_index(a), ib = g.vertex_index(b);
        g.adjacency[static_cast<size_t>(ia)].push_back(ib);
        g.adjacency[static_cast<size_t>(ib)].push_back(ia);
    };

    // Consecutive infinite cells along a line are adjacent; finite or empty
    // cells in between do not block.
    for (int i = 1; i <= m.width(); ++i) {
        Cell prev{0, 0};
        bool have = false;
        for (int j = 1; j <= m.height(); ++j)
            if (m.at(i, j).is_infinite()) {
                if (have) link(prev, {i, j});
                prev = {i, j};
                have = true;
            }
    }
    for (int j = 1; j <= m.height(); ++j) {
        Cell prev{0, 0};
        bool have = false;
        for (int i = 1; i <= m.width(); ++i)
            if (m.at(i, j).is_infinite()) {
                if (have) link(prev, {i, j});
                prev = {i, j};
                have = true;
            }
    }
    for (auto& n : g.adjacency) std::sort(n.begin(), n.end());
    return g;
}

StructureReport analyze_structure(const CellGraph& g) {
    StructureReport rep;
    const int n = static_cast<int>(g.vertices.size());
    std::vector<int> state(static_cast<size_t>(n), 0);  // 0 new, 1 active, 2 done
    std::vector<int> parent(static_cast<size_t>(n), -1);
    rep.is_forest = true;

    for (int s = 0; s < n; ++s) {
        if (state[static_cast<size_t>(s)] != 0) continue;
        rep.components.emplace_back();
        std::vector<int> stack{s};
        parent[static_cast<size_t>(s)] = -1;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            if (state[static_cast<size_t>(u)] != 0) continue;
            state[static_cast<size_t>(u)] = 1;
            rep.components.back().push_back(g.vertices[static_cast<size_t>(u)]);
            for (int v : g.adjacency[static_cast<size_t>(u)]) {
                if (v == parent[static_cast<size_t>(u)]) continue;
                if (state[static_cast<size_t>(v)] == 0) {
                    parent[static_cast<size_t>(v)] = u;
                    stack.push_back(v);
                } else if (rep.is_forest) {
                    // Back edge: walk both ends up to their meeting point.
                    rep.is_forest = false;
                    std::vector<int> pa, pb;
                    for (int x = u; x != -1; x = parent[static_cast<size_t>(x)]) pa.push_back(x);
                    for (int x = v; x != -1; x = parent[static_cast<size_t>(x)]) pb.push_back(x);
                    std::reverse(pa.begin(), pa.end());
                    std::reverse(pb.begin(), pb.end());
                    size_t common = 0;
                    while (common + 1 < pa.size() && common + 1 < pb.size() &&
                           pa[common + 1] == pb[common + 1])
                        ++common;
                    std::vector<int> cyc(pa.begin() + static_cast<long>(common), pa.end());
                    for (size_t i = pb.size(); i-- > common + 1;) cyc.push_back(pb[i]);
                    for (int x : cyc) rep.cycle.push_back(g.vertices[static_cast<size_t>(x)]);
                }
            }
        }
    }
    // The meeting-point walk above needs full ancestor chains, so a vertex may
    // appear mid-stack; normalize per-component vertex order.
    for (auto& comp : rep.components) std::sort(comp.begin(), comp.end());
    return rep;
}

bool is_proper_turning_path(const CellGraph& g, const std::vector<Cell>& path) {
    if (path.empty()) return false;
    for (size_t i = 0; i + 1 < path.size(); ++i) {
        int a = g.vertex_index(path[i]);
        int b = g.vertex_index(path[i + 1]);
        if (a < 0 || b < 0 || !g.adjacent(a, b)) return false;
    }
    for (size_t i = 0; i + 2 < path.size(); ++i) {
        const Cell &a = path[i], &b = path[i + 1], &c = path[i + 2];
        if ((a.col == b.col && b.col == c.col) || (a.row == b.row && b.row == c.row)) return false;
    }
    return true;
}

bool orientation_consistent(const GriddingMatrix& m, const Orientation& o) {
    if (static_cast<int>(o.col_sign.size()) != m.width() ||
        static_cast<int>(o.row_sign.size()) != m.height())
        return false;
    for (int i = 1; i <= m.width(); ++i)
        for (int j = 1; j <= m.height(); ++j) {
            const auto& e = m.at(i, j);
            if (e.kind() == EntryKind::inc && o.col(i) * o.row(j) != 1) return false;
            if (e.kind() == EntryKind::dec && o.col(i) * o.row(j) != -1) return false;
        }
    return true;
}

namespace {

// Union-find with parity to the root; smaller id wins root ties so free
// variables deterministically end up +1.
struct ParityDsu {
    std::vector<int> parent, size_, parity;

    explicit ParityDsu(int n)
        : parent(static_cast<size_t>(n)), size_(static_cast<size_t>(n), 1),
          parity(static_cast<size_t>(n), 0) {
        std::iota(parent.begin(), parent.end(), 0);
    }

    std::pair<int, int> find(int x) {
        int p = 0;
        int r = x;
        while (parent[static_cast<size_t>(r)] != r) {
            p ^= parity[static_cast<size_t>(r)];
            r = parent[static_cast<size_t>(r)];
        }
        // Path compression keeping parities relative to the root.
        int cur = x, cp = p;
        while (parent[static_cast<size_t>(cur)] != cur) {
            int next = parent[static_cast<size_t>(cur)];
            int np = cp ^ parity[static_cast<size_t>(cur)];
            parent[static_cast<size_t>(cur)] = r;
            parity[static_cast<size_t>(cur)] = cp;
            cur = next;
            cp = np;
        }
        return {r, p};
    }

    bool merge(int a, int b, int rel) {
        auto [ra, pa] = find(a);
        auto [rb, pb] = find(b);
        if (ra == rb) return (pa ^ pb) == rel;
        if (size_[static_cast<size_t>(ra)] < size_[static_cast<size_t>(rb)] ||
            (size_[static_cast<size_t>(ra)] == size_[static_cast<size_t>(rb)] && rb < ra)) {
            std::swap(ra, rb);
            std::swap(pa, pb);
        }
        parent[static_cast<size_t>(rb)] = ra;
        parity[static_cast<size_t>(rb)] = pa ^ pb ^ rel;
        size_[static_cast<size_t>(ra)] += size_[static_cast<size_t>(rb)];
        return true;
    }
};

}  // namespace

std::optional<Orientation> consistent_orientation(const GriddingMatrix& m) {
    if (!m.is_monotone())
        throw std::invalid_argument("consistent orientation needs a monotone matrix");
    const int k = m.width();
    const int l = m.height();
    ParityDsu dsu(k + l);
    for (int i = 1; i <= k; ++i)
        for (int j = 1; j <= l; ++j) {
            const auto& e = m.at(i, j);
            if (e.is_empty_class()) continue;
            const int rel = e.kind() == EntryKind::inc ? 0 : 1;
            if (!dsu.merge(i - 1, k + j - 1, rel)) return std::nullopt;
        }
    Orientation o;
    o.col_sign.resize(static_cast<size_t>(k));
    o.row_sign.resize(static_cast<size_t>(l));
    for (int i = 0; i < k; ++i) o.col_sign[static_cast<size_t>(i)] = dsu.find(i).second ? -1 : 1;
    for (int j = 0; j < l; ++j)
        o.row_sign[static_cast<size_t>(j)] = dsu.find(k + j).second ? -1 : 1;
    return o;
}

GriddingMatrix refine(const GriddingMatrix& m, int q) {
    if (!m.is_monotone()) throw std::invalid_argument("refinement needs a monotone matrix");
    if (q < 1) throw std::invalid_argument("refinement factor must be >= 1");
    GriddingMatrix out(m.width() * q, m.height() * q);
    for (int i = 1; i <= m.width(); ++i)
        for (int j = 1; j <= m.height(); ++j) {
            const auto& e = m.at(i, j);
            if (e.is_empty_class()) continue;
            for (int s = 1; s <= q; ++s) {
                const int col = (i - 1) * q + s;
                const int row = e.kind() == EntryKind::inc ? (j - 1) * q + s
                                                           : (j - 1) * q + (q + 1 - s);
                out.set(col, row, e);
            }
        }
    return out;
}

namespace {

GriddingMatrix juxtaposition(Axis axis, const ClassEntry& a, const ClassEntry& b) {
    // Horizontal: [a b] in one row; vertical: a below b in one column.
    GriddingMatrix m(axis == Axis::horizontal ? 2 : 1, axis == Axis::horizontal ? 1 : 2);
    if (axis == Axis::horizontal) {
        m.set(1, 1, a);
        m.set(2, 1, b);
    } else {
        m.set(1, 1, a);
        m.set(1, 2, b);
    }
    return m;
}

const std::array<std::pair<ClassEntry, ClassEntry>, 4>& monotone_pairs() {
    static const std::array<std::pair<ClassEntry, ClassEntry>, 4> pairs = {
        std::pair{ClassEntry::inc(), ClassEntry::inc()},
        std::pair{ClassEntry::inc(), ClassEntry::dec()},
        std::pair{ClassEntry::dec(), ClassEntry::inc()},
        std::pair{ClassEntry::dec(), ClassEntry::dec()},
    };
    return pairs;
}

// First monotone pair (C, D) with Grid of their juxtaposition contained in
// the entry's class, i.e. the basis is not juxtaposition-griddable.
std::optional<std::pair<ClassEntry, ClassEntry>> contained_juxtaposition(const ClassEntry& e,
                                                                         Axis axis) {
    if (e.kind() != EntryKind::av) return std::nullopt;
    for (const auto& [c, d] : monotone_pairs())
        if (!find_gridding(e.basis(), juxtaposition(axis, c, d)).has_value()) return {{c, d}};
    return std::nullopt;
}

}  // namespace

Tristate hpw_unbounded(const ClassEntry& e, Axis axis) {
    switch (e.kind()) {
        case EntryKind::empty:
        case EntryKind::finite:
        case EntryKind::inc:
        case EntryKind::dec:
            return Tristate::no;
        case EntryKind::av:
            return contained_juxtaposition(e, axis).has_value() ? Tristate::yes : Tristate::no;
    }
    return Tristate::unknown;
}

bool is_bumper(const GriddingMatrix& m, Cell p, Cell q) {
    if (!m.at(p.col, p.row).is_infinite() || !m.at(q.col, q.row).is_infinite())
        throw std::invalid_argument("bumper endpoints must be cell-graph vertices");
    if (p == q) return false;
    if (p.col == q.col && hpw_unbounded(m.at(q.col, q.row), Axis::horizontal) == Tristate::yes)
        return true;
    if (p.row == q.row && hpw_unbounded(m.at(q.col, q.row), Axis::vertical) == Tristate::yes)
        return true;
    return false;
}

namespace {

// Unique tree path between two vertices of a forest, empty if disconnected.
std::vector<int> tree_path(const CellGraph& g, int from, int to) {
    std::vector<int> parent(g.vertices.size(), -2);
    std::deque<int> queue{from};
    parent[static_cast<size_t>(from)] = -1;
    while (!queue.empty()) {
        int u = queue.front();
        queue.pop_front();
        if (u == to) break;
        for (int v : g.adjacency[static_cast<size_t>(u)])
            if (parent[static_cast<size_t>(v)] == -2) {
                parent[static_cast<size_t>(v)] = u;
                queue.push_back(v);
            }
    }
    if (parent[static_cast<size_t>(to)] == -2) return {};
    std::vector<int> path;
    for (int x = to; x != -1; x = parent[static_cast<size_t>(x)]) path.push_back(x);
    std::reverse(path.begin(), path.end());
    return path;
}

}  // namespace

std::optional<std::vector<Cell>> find_bumper_ended_path(const GriddingMatrix& m) {
    CellGraph g = build_cell_graph(m);
    if (!analyze_structure(g).is_forest)
        throw std::invalid_argument("bumper-ended path search expects a forest");
    const int n = static_cast<int>(g.vertices.size());
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            if (a == b) continue;
            auto path = tree_path(g, a, b);
            if (path.size() < 2) continue;
            Cell p1 = g.vertices[static_cast<size_t>(path[0])];
            Cell p2 = g.vertices[static_cast<size_t>(path[1])];
            Cell qk = g.vertices[static_cast<size_t>(path[path.size() - 1])];
            Cell qk1 = g.vertices[static_cast<size_t>(path[path.size() - 2])];
            if (is_bumper(m, p2, p1) && is_bumper(m, qk1, qk)) {
                std::vector<Cell> cells;
                cells.reserve(path.size());
                for (int idx : path) cells.push_back(g.vertices[static_cast<size_t>(idx)]);
                return cells;
            }
        }
    return std::nullopt;
}

std::optional<std::vector<Cell>> cell_graph_path(const CellGraph& g) {
    const int n = static_cast<int>(g.vertices.size());
    if (n == 0) return std::nullopt;
    if (n == 1)
        return g.adjacency[0].empty() ? std::optional{std::vector<Cell>{g.vertices[0]}}
                                      : std::nullopt;
    int start = -1;
    for (int v = 0; v < n; ++v) {
        if (g.adjacency[static_cast<size_t>(v)].size() > 2) return std::nullopt;
        if (g.adjacency[static_cast<size_t>(v)].size() == 1 && start == -1) start = v;
    }
    if (start == -1) return std::nullopt;
    std::vector<Cell> path;
    int prev = -1, cur = start;
    while (true) {
        path.push_back(g.vertices[static_cast<size_t>(cur)]);
        int next = -1;
        for (int w : g.adjacency[static_cast<size_t>(cur)])
            if (w != prev) next = w;
        if (next == -1) break;
        prev = cur;
        cur = next;
    }
    if (static_cast<int>(path.size()) != n) return std::nullopt;
    return path;
}

namespace {

// Walk a graph that should be a single cycle through all vertices; empty
// result otherwise.
std::vector<Cell> extract_cycle(const CellGraph& g) {
    const int n = static_cast<int>(g.vertices.size());
    if (n < 3) return {};
    for (int v = 0; v < n; ++v)
        if (g.adjacency[static_cast<size_t>(v)].size() != 2) return {};
    std::vector<Cell> cyc;
    int prev = -1, cur = 0;
    do {
        cyc.push_back(g.vertices[static_cast<size_t>(cur)]);
        int next = -1;
        for (int w : g.adjacency[static_cast<size_t>(cur)])
            if (w != prev) {
                next = w;
                break;
            }
        prev = cur;
        cur = next;
    } while (cur != 0);
    if (static_cast<int>(cyc.size()) != n) return {};
    return cyc;
}

bool is_proper_turning_cycle(const std::vector<Cell>& cyc) {
    const size_t n = cyc.size();
    if (n < 4) return false;
    for (size_t i = 0; i < n; ++i) {
        const Cell &a = cyc[i], &b = cyc[(i + 1) % n], &c = cyc[(i + 2) % n];
        if ((a.col == b.col && b.col == c.col) || (a.row == b.row && b.row == c.row)) return false;
    }
    return true;
}

// Keep only the turn cells of some cycle, emptying everything else, until the
// cell graph is exactly a proper turning cycle.
GriddingMatrix reduce_to_proper_turning_cycle(GriddingMatrix m) {
    const int guard = m.width() * m.height() + 2;
    for (int iter = 0; iter < guard; ++iter) {
        CellGraph g = build_cell_graph(m);
        auto whole = extract_cycle(g);
        if (!whole.empty() && is_proper_turning_cycle(whole)) return m;

        StructureReport rep = analyze_structure(g);
        if (rep.is_forest) throw std::invalid_argument("cell graph has no cycle");
        const auto& cyc = rep.cycle;
        const size_t t = cyc.size();
        std::vector<Cell> turns;
        for (size_t i = 0; i < t; ++i) {
            const Cell &a = cyc[(i + t - 1) % t], &b = cyc[i], &c = cyc[(i + 1) % t];
            const bool straight =
                (a.col == b.col && b.col == c.col) || (a.row == b.row && b.row == c.row);
            if (!straight) turns.push_back(b);
        }
        GriddingMatrix next(m.width(), m.height());
        for (const Cell& c : turns) next.set(c.col, c.row, m.at(c.col, c.row));
        m = next;
    }
    throw std::logic_error("cycle reduction did not converge");
}

}  // namespace

PathMatrixResult path_matrix(const GriddingMatrix& m, int p) {
    if (!m.is_monotone()) throw std::invalid_argument("path construction needs a monotone matrix");
    if (p < 1) throw std::invalid_argument("path length parameter must be >= 1");

    GriddingMatrix base = reduce_to_proper_turning_cycle(m);
    auto ori = consistent_orientation(base);
    if (!ori) {
        // The doubled matrix always orients; its cell graph lifts the odd
        // cycle to a single cycle of twice the length.
        base = reduce_to_proper_turning_cycle(refine(base, 2));
        ori = consistent_orientation(base);
        if (!ori) throw std::logic_error("doubled cycle matrix failed to orient");
    }

    const int k = base.width();
    const int l = base.height();
    GriddingMatrix out = refine(base, p);

    Cell block{0, 0};
    for (int i = 1; i <= k && block.col == 0; ++i)
        for (int j = 1; j <= l; ++j)
            if (!base.at(i, j).is_empty_class()) {
                block = {i, j};
                break;
            }

    // Column of the block with a given label, honoring the orientation's
    // left-to-right or right-to-left labeling; same for rows.
    auto block_col = [&](int label) {
        return ori->col(block.col) > 0 ? (block.col - 1) * p + label
                                       : (block.col - 1) * p + (p + 1 - label);
    };
    auto block_row = [&](int label) {
        return ori->row(block.row) > 0 ? (block.row - 1) * p + label
                                       : (block.row - 1) * p + (p + 1 - label);
    };

    for (int s = 1; s <= p; ++s)
        for (int u = 1; u <= p; ++u)
            out.set((block.col - 1) * p + s, (block.row - 1) * p + u, ClassEntry::empty());
    for (int s = 1; s + 1 <= p; ++s)
        out.set(block_col(s), block_row(s + 1), base.at(block.col, block.row));

    PathMatrixResult res;
    res.matrix = out;
    res.shifted_block = block;
    res.block_col_lo = (block.col - 1) * p + 1;
    res.block_col_hi = block.col * p;
    res.block_row_lo = (block.row - 1) * p + 1;
    res.block_row_hi = block.row * p;
    auto path = cell_graph_path(build_cell_graph(out));
    if (!path) throw std::logic_error("path construction did not produce a path");
    res.path = *path;
    return res;
}

GriddingMatrix bumper_cycle_matrix(const GriddingMatrix& m, const std::vector<Cell>& path) {
    if (path.size() < 2) throw std::invalid_argument("path too short");
    CellGraph g = build_cell_graph(m);
    for (size_t i = 0; i + 1 < path.size(); ++i) {
        int a = g.vertex_index(path[i]);
        int b = g.vertex_index(path[i + 1]);
        if (a < 0 || b < 0 || !g.adjacent(a, b))
            throw std::invalid_argument("not a path in the cell graph");
    }
    if (!is_bumper(m, path[1], path[0]) ||
        !is_bumper(m, path[path.size() - 2], path[path.size() - 1]))
        throw std::invalid_argument("path is not bumper-ended");

    // Monotone subclass per entry: Inc when the class keeps containing long
    // increasing permutations, Dec otherwise.
    constexpr int probe_len = 8;
    auto monotone_subclass = [&](const ClassEntry& e) {
        return e.contains(Permutation::identity(probe_len)) ? ClassEntry::inc() : ClassEntry::dec();
    };

    GriddingMatrix out(2 * m.width(), 2 * m.height());
    auto place = [&](Cell cell, int dc, int dr, const ClassEntry& e) {
        out.set(2 * (cell.col - 1) + dc, 2 * (cell.row - 1) + dr, e);
    };

    for (size_t i = 0; i < path.size(); ++i) {
        const Cell cell = path[i];
        const ClassEntry& e = m.at(cell.col, cell.row);
        const bool endpoint = i == 0 || i + 1 == path.size();
        if (!endpoint) {
            ClassEntry c = monotone_subclass(e);
            if (c.kind() == EntryKind::inc) {
                place(cell, 1, 1, c);
                place(cell, 2, 2, c);
            } else {
                place(cell, 1, 2, c);
                place(cell, 2, 1, c);
            }
            continue;
        }
        const Cell neighbor = i == 0 ? path[1] : path[path.size() - 2];
        const Axis axis = shares_column(cell, neighbor) ? Axis::horizontal : Axis::vertical;
        auto juxta = contained_juxtaposition(e, axis);
        if (!juxta) throw std::logic_error("bumper endpoint lost its juxtaposition");
        if (axis == Axis::horizontal) {
            place(cell, 1, 1, juxta->first);
            place(cell, 2, 1, juxta->second);
        } else {
            place(cell, 1, 1, juxta->first);
            place(cell, 1, 2, juxta->second);
        }
    }
    return out;
}

DichotomyVerdict classify(const GriddingMatrix& m) {
    GriddingMatrix stripped(m.width(), m.height());
    for (int i = 1; i <= m.width(); ++i)
        for (int j = 1; j <= m.height(); ++j)
            if (m.at(i, j).is_infinite()) stripped.set(i, j, m.at(i, j));

    DichotomyVerdict v;
    for (int i = 1; i <= stripped.width(); ++i)
        for (int j = 1; j <= stripped.height(); ++j) {
            const auto& e = stripped.at(i, j);
            if (e.is_empty_class()) continue;
            if (e.declared_bounded_gridwidth() != Tristate::yes) {
                v.verdict = Verdict::inconclusive;
                v.reason = "entry at (" + std::to_string(i) + "," + std::to_string(j) +
                           ") has no declared bounded grid-width";
                return v;
            }
        }

    CellGraph g = build_cell_graph(stripped);
    StructureReport rep = analyze_structure(g);
    if (!rep.is_forest) {
        v.verdict = Verdict::np_complete;
        v.witness = rep.cycle;
        v.reason = "cell graph contains a cycle";
        return v;
    }
    if (auto path = find_bumper_ended_path(stripped)) {
        v.verdict = Verdict::np_complete;
        v.witness = *path;
        v.reason = "cell graph contains a bumper-ended path";
        return v;
    }
    v.verdict = Verdict::polynomial_time;
    v.reason = "cell graph is a forest without a bumper-ended path";
    return v;
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::polynomial_time:
            return "PolynomialTime";
        case Verdict::np_complete:
            return "NPComplete";
        case Verdict::inconclusive:
            return "Inconclusive";
    }
    return "Inconclusive";
}

}  // namespace gridpm
