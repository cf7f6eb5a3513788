#include "gridpm/width.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <climits>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

namespace gridpm {

int intervalicity(const std::vector<int>& values) {
    if (values.empty()) return 0;
    std::vector<int> v = values;
    std::sort(v.begin(), v.end());
    int runs = 1;
    for (size_t i = 1; i < v.size(); ++i)
        if (v[i] != v[i - 1] + 1) ++runs;
    return runs;
}

int grid_complexity(const PointSet& s) {
    std::vector<int> xs, ys;
    xs.reserve(s.size());
    ys.reserve(s.size());
    for (const Point& p : s) {
        xs.push_back(p.x);
        ys.push_back(p.y);
    }
    return std::max(intervalicity(xs), intervalicity(ys));
}

namespace {

// Run counts maintained under single-element insertion; the change is +1, 0
// or -1 depending on which neighbors are present.
struct RunCounter {
    std::vector<char> present;  // index v+1, with sentinels at both ends
    int runs = 0;

    explicit RunCounter(int universe) : present(static_cast<size_t>(universe) + 3, 0) {}

    void insert(int v) {
        const bool l = present[static_cast<size_t>(v) - 1 + 1];
        const bool r = present[static_cast<size_t>(v) + 1 + 1];
        present[static_cast<size_t>(v) + 1] = 1;
        runs += 1 - static_cast<int>(l) - static_cast<int>(r);
    }
};

}  // namespace

int pw_under_ordering(const Permutation& p, const Permutation& sigma) {
    const int n = p.size();
    if (sigma.size() != n) throw std::invalid_argument("ordering length mismatch");
    RunCounter rx(n), ry(n);
    int best = 0;
    for (int i = 1; i <= n; ++i) {
        const int x = sigma.value_at(i);
        rx.insert(x);
        ry.insert(p.value_at(x));
        best = std::max(best, std::max(rx.runs, ry.runs));
    }
    return best;
}

int horizontal_pw(const Permutation& p) { return pw_under_ordering(p, Permutation::identity(p.size())); }

int vertical_pw(const Permutation& p) {
    return pw_under_ordering(p, apply_symmetry(p, Symmetry::inverse));
}

namespace {

void check_oracle_size(const Permutation& p) {
    if (p.size() > kExactWidthMaxN)
        throw std::invalid_argument("exact width search limited to length " +
                                    std::to_string(kExactWidthMaxN));
}

int mask_grid_complexity(const PointSet& pts, unsigned mask) {
    PointSet s;
    for (size_t i = 0; i < pts.size(); ++i)
        if (mask >> i & 1u) s.push_back(pts[i]);
    return grid_complexity(s);
}

// Subset dynamic program over point masks; split[] records an optimal child
// for tree reconstruction.
void gridwidth_dp(const PointSet& pts, std::vector<int>& f, std::vector<unsigned>& split) {
    const int n = static_cast<int>(pts.size());
    const unsigned full = (1u << n) - 1;
    f.assign(full + 1, 0);
    split.assign(full + 1, 0);
    for (unsigned mask = 1; mask <= full; ++mask) {
        if (std::popcount(mask) == 1) {
            f[mask] = 1;
            continue;
        }
        const unsigned low = mask & (~mask + 1);
        int best = INT_MAX;
        unsigned best_sub = 0;
        for (unsigned sub = (mask - 1) & mask; sub > 0; sub = (sub - 1) & mask) {
            if (!(sub & low)) continue;
            if (sub == mask) continue;
            const int cand = std::max(f[sub], f[mask ^ sub]);
            if (cand < best) {
                best = cand;
                best_sub = sub;
            }
        }
        f[mask] = std::max(mask_grid_complexity(pts, mask), best);
        split[mask] = best_sub;
    }
}

GridTree rebuild_tree(const PointSet& pts, const std::vector<unsigned>& split, unsigned mask) {
    if (std::popcount(mask) == 1) {
        const int i = std::countr_zero(mask);
        return GridTree::leaf(pts[static_cast<size_t>(i)]);
    }
    const unsigned sub = split[mask];
    return GridTree::join(rebuild_tree(pts, split, sub), rebuild_tree(pts, split, mask ^ sub));
}

}  // namespace

int exact_width_oracle(const Permutation& p, WidthMode mode) {
    check_oracle_size(p);
    const int n = p.size();
    if (n == 0) return 0;
    if (mode == WidthMode::pathwidth) return exact_pathwidth_ordering(p).achieved_width;

    std::vector<int> f;
    std::vector<unsigned> split;
    gridwidth_dp(p.points(), f, split);
    return f[(1u << n) - 1];
}

PwOrdering exact_pathwidth_ordering(const Permutation& p) {
    check_oracle_size(p);
    const int n = p.size();
    if (n == 0) return {Permutation{}, 0};
    std::vector<int> seq(static_cast<size_t>(n));
    std::iota(seq.begin(), seq.end(), 1);
    PwOrdering best{Permutation(seq), pw_under_ordering(p, Permutation(seq))};
    std::vector<int> cur = seq;
    while (std::next_permutation(cur.begin(), cur.end())) {
        Permutation sigma(cur);
        const int w = pw_under_ordering(p, sigma);
        if (w < best.achieved_width) best = {sigma, w};
    }
    return best;
}

PwOrdering forest_pw_ordering(const GriddedPermutation& g, const Orientation& o) {
    const GriddingMatrix& m = g.matrix();
    if (!m.is_monotone()) throw std::invalid_argument("forest ordering needs a monotone matrix");
    if (!analyze_structure(build_cell_graph(m)).is_forest)
        throw std::invalid_argument("cell graph is not a forest");
    if (!orientation_consistent(m, o))
        throw std::invalid_argument("orientation does not fit the matrix");

    const Permutation& p = g.perm();
    const int n = p.size();
    const int k = m.width();
    const int l = m.height();

    std::vector<int> inv(static_cast<size_t>(n) + 1, 0);
    for (int x = 1; x <= n; ++x) inv[static_cast<size_t>(p.value_at(x))] = x;

    // Current column and row intervals; invariant: they cover exactly the
    // positions/values of the not-yet-removed points.
    std::vector<int> clo(static_cast<size_t>(k) + 1), chi(static_cast<size_t>(k) + 1);
    std::vector<int> rlo(static_cast<size_t>(l) + 1), rhi(static_cast<size_t>(l) + 1);
    for (int i = 1; i <= k; ++i) {
        clo[static_cast<size_t>(i)] = g.gridding().col_cuts[static_cast<size_t>(i) - 1] + 1;
        chi[static_cast<size_t>(i)] = g.gridding().col_cuts[static_cast<size_t>(i)];
    }
    for (int j = 1; j <= l; ++j) {
        rlo[static_cast<size_t>(j)] = g.gridding().row_cuts[static_cast<size_t>(j) - 1] + 1;
        rhi[static_cast<size_t>(j)] = g.gridding().row_cuts[static_cast<size_t>(j)];
    }

    std::vector<std::vector<int>> col_cells(static_cast<size_t>(k) + 1);  // rows, ascending
    std::vector<std::vector<int>> row_cells(static_cast<size_t>(l) + 1);  // cols, ascending
    for (int i = 1; i <= k; ++i)
        for (int j = 1; j <= l; ++j)
            if (!m.at(i, j).is_empty_class()) {
                col_cells[static_cast<size_t>(i)].push_back(j);
                row_cells[static_cast<size_t>(j)].push_back(i);
            }

    auto col_extreme_x = [&](int i) { return o.col(i) > 0 ? chi[static_cast<size_t>(i)] : clo[static_cast<size_t>(i)]; };
    auto row_extreme_y = [&](int j) { return o.row(j) > 0 ? rhi[static_cast<size_t>(j)] : rlo[static_cast<size_t>(j)]; };
    auto col_empty = [&](int i) { return clo[static_cast<size_t>(i)] > chi[static_cast<size_t>(i)]; };
    auto row_empty = [&](int j) { return rlo[static_cast<size_t>(j)] > rhi[static_cast<size_t>(j)]; };

    std::vector<int> removal;
    removal.reserve(static_cast<size_t>(n));

    for (int step = 0; step < n; ++step) {
        // Orient each line's path toward the cell holding its extremal point;
        // count outgoing edges per cell.
        std::map<std::pair<int, int>, int> outdeg;
        for (int i = 1; i <= k; ++i)
            for (int j : col_cells[static_cast<size_t>(i)]) outdeg[{i, j}];

        for (int i = 1; i <= k; ++i) {
            const auto& cells = col_cells[static_cast<size_t>(i)];
            if (cells.size() < 2 || col_empty(i)) continue;
            const int y = p.value_at(col_extreme_x(i));
            const int jstar = g.gridding().row_of(y);
            for (size_t a = 0; a + 1 < cells.size(); ++a) {
                const int ja = cells[a], jb = cells[a + 1];
                if (jb <= jstar)
                    ++outdeg[{i, ja}];
                else
                    ++outdeg[{i, jb}];
            }
        }
        for (int j = 1; j <= l; ++j) {
            const auto& cells = row_cells[static_cast<size_t>(j)];
            if (cells.size() < 2 || row_empty(j)) continue;
            const int x = inv[static_cast<size_t>(row_extreme_y(j))];
            const int istar = g.gridding().column_of(x);
            for (size_t a = 0; a + 1 < cells.size(); ++a) {
                const int ia = cells[a], ib = cells[a + 1];
                if (ib <= istar)
                    ++outdeg[{ia, j}];
                else
                    ++outdeg[{ib, j}];
            }
        }

        bool removed = false;
        for (const auto& [cell, deg] : outdeg) {
            if (deg != 0) continue;
            const auto [i, j] = cell;
            if (col_empty(i) || row_empty(j)) continue;
            const int x = col_extreme_x(i);
            const int y = row_extreme_y(j);
            if (g.gridding().row_of(p.value_at(x)) != j) continue;
            if (g.gridding().column_of(inv[static_cast<size_t>(y)]) != i) continue;
            assert(p.value_at(x) == y);
            removal.push_back(x);
            if (o.col(i) > 0)
                --chi[static_cast<size_t>(i)];
            else
                ++clo[static_cast<size_t>(i)];
            if (o.row(j) > 0)
                --rhi[static_cast<size_t>(j)];
            else
                ++rlo[static_cast<size_t>(j)];
            removed = true;
            break;
        }
        if (!removed) throw std::logic_error("no removable extremal point found");
    }

    std::reverse(removal.begin(), removal.end());
    Permutation sigma(removal);
    return {sigma, pw_under_ordering(p, sigma)};
}

int GridTree::add(Node n) {
    nodes_.push_back(n);
    return static_cast<int>(nodes_.size()) - 1;
}

GridTree GridTree::leaf(Point p) {
    GridTree t;
    t.root_ = t.add(Node{-1, -1, p});
    return t;
}

GridTree GridTree::join(const GridTree& a, const GridTree& b) {
    if (a.empty()) return b;
    if (b.empty()) return a;
    GridTree t;
    t.nodes_ = a.nodes_;
    const int offset = static_cast<int>(t.nodes_.size());
    for (Node n : b.nodes_) {
        if (!n.is_leaf()) {
            n.left += offset;
            n.right += offset;
        }
        t.nodes_.push_back(n);
    }
    t.root_ = t.add(Node{a.root_, b.root_ + offset, Point{}});
    return t;
}

GridTree GridTree::caterpillar(const std::vector<Point>& leaves_top_to_bottom) {
    if (leaves_top_to_bottom.empty()) return GridTree{};
    GridTree acc = leaf(leaves_top_to_bottom.back());
    for (size_t i = leaves_top_to_bottom.size() - 1; i-- > 0;)
        acc = join(leaf(leaves_top_to_bottom[i]), acc);
    return acc;
}

GridTree GridTree::from_ordering(const Permutation& p, const Permutation& sigma) {
    if (p.size() != sigma.size()) throw std::invalid_argument("ordering length mismatch");
    std::vector<Point> top_to_bottom;
    for (int i = p.size(); i >= 1; --i) {
        const int x = sigma.value_at(i);
        top_to_bottom.push_back({x, p.value_at(x)});
    }
    return caterpillar(top_to_bottom);
}

int GridTree::leaf_count() const {
    int c = 0;
    for (const Node& n : nodes_)
        if (n.is_leaf()) ++c;
    return c;
}

std::vector<Point> GridTree::leaves() const {
    std::vector<Point> out;
    for (const Node& n : nodes_)
        if (n.is_leaf()) out.push_back(n.point);
    return out;
}

PointSet GridTree::leaf_points(int id) const {
    PointSet out;
    std::vector<int> stack{id};
    while (!stack.empty()) {
        const Node& n = nodes_[static_cast<size_t>(stack.back())];
        stack.pop_back();
        if (n.is_leaf())
            out.push_back(n.point);
        else {
            stack.push_back(n.left);
            stack.push_back(n.right);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool GridTree::is_binary() const {
    if (empty()) return true;
    std::vector<char> seen(nodes_.size(), 0);
    std::vector<int> stack{root_};
    int visited = 0;
    while (!stack.empty()) {
        const int id = stack.back();
        stack.pop_back();
        if (id < 0 || id >= node_count() || seen[static_cast<size_t>(id)]) return false;
        seen[static_cast<size_t>(id)] = 1;
        ++visited;
        const Node& n = nodes_[static_cast<size_t>(id)];
        const bool has_left = n.left >= 0, has_right = n.right >= 0;
        if (has_left != has_right) return false;
        if (has_left) {
            stack.push_back(n.left);
            stack.push_back(n.right);
        }
    }
    return visited == node_count();
}

bool GridTree::is_caterpillar() const {
    for (int id = 0; id < node_count(); ++id) {
        const Node& n = nodes_[static_cast<size_t>(id)];
        if (n.is_leaf()) continue;
        if (!nodes_[static_cast<size_t>(n.left)].is_leaf() &&
            !nodes_[static_cast<size_t>(n.right)].is_leaf())
            return false;
    }
    return true;
}

namespace {

struct Coords {
    std::vector<int> xs, ys;  // sorted
};

int merge_width(const GridTree& t, int id, std::vector<Coords>& memo, int& best) {
    const auto& n = t.node(id);
    if (n.is_leaf()) {
        memo[static_cast<size_t>(id)] = {{n.point.x}, {n.point.y}};
        best = std::max(best, 1);
        return 1;
    }
    merge_width(t, n.left, memo, best);
    merge_width(t, n.right, memo, best);
    Coords& a = memo[static_cast<size_t>(n.left)];
    Coords& b = memo[static_cast<size_t>(n.right)];
    Coords c;
    c.xs.resize(a.xs.size() + b.xs.size());
    std::merge(a.xs.begin(), a.xs.end(), b.xs.begin(), b.xs.end(), c.xs.begin());
    c.ys.resize(a.ys.size() + b.ys.size());
    std::merge(a.ys.begin(), a.ys.end(), b.ys.begin(), b.ys.end(), c.ys.begin());
    auto runs = [](const std::vector<int>& v) {
        int r = v.empty() ? 0 : 1;
        for (size_t i = 1; i < v.size(); ++i)
            if (v[i] != v[i - 1] + 1) ++r;
        return r;
    };
    const int w = std::max(runs(c.xs), runs(c.ys));
    best = std::max(best, w);
    memo[static_cast<size_t>(id)] = std::move(c);
    a = Coords{};
    b = Coords{};
    return w;
}

}  // namespace

int tree_width_of(const GridTree& t) {
    if (t.empty()) return 0;
    std::vector<Coords> memo(static_cast<size_t>(t.node_count()));
    int best = 0;
    merge_width(t, t.root(), memo, best);
    return best;
}

GridTree default_entry_tree(Cell, const Permutation& q) {
    const int n = q.size();
    if (n == 0) return GridTree{};
    const auto pts = q.points();
    bool inc = true, dec = true;
    for (int i = 2; i <= n; ++i) {
        inc &= q.value_at(i) > q.value_at(i - 1);
        dec &= q.value_at(i) < q.value_at(i - 1);
    }
    if (inc || dec || n > kExactWidthMaxN) return GridTree::caterpillar(pts);
    std::vector<int> f;
    std::vector<unsigned> split;
    gridwidth_dp(pts, f, split);
    return rebuild_tree(pts, split, (1u << n) - 1);
}

std::optional<int> least_absent_alternation_size(const ClassEntry& e, Axis axis, int probe_limit) {
    for (int s = 1; s <= probe_limit; ++s) {
        bool any = false;
        for (Direction evens : {Direction::increasing, Direction::decreasing})
            for (Direction odds : {Direction::increasing, Direction::decreasing}) {
                Permutation alt = monotone_alternation(s, evens, odds);
                if (axis == Axis::vertical) alt = apply_symmetry(alt, Symmetry::inverse);
                if (e.contains(alt)) {
                    any = true;
                    break;
                }
            }
        if (!any) return s;
    }
    return std::nullopt;
}

namespace {

long long propagation_constant(const ClassEntry& e, Axis axis) {
    if (e.is_monotone()) return 1;
    if (e.kind() == EntryKind::av) {
        const int limit = 2 * e.basis().size() * e.basis().size();
        if (auto l = least_absent_alternation_size(e, axis, limit)) return 2 * *l - 1;
        throw std::invalid_argument("entry has unbounded path-width along the needed axis");
    }
    throw std::invalid_argument("unsupported entry kind for tree construction");
}

struct ComponentBuild {
    GridTree tree;
    long long bound = 0;
};

// One tree component of the cell graph together with the host gridded
// permutation.
class TreeBuilder {
  public:
    TreeBuilder(const GriddedPermutation& g, const GriddingMatrix& m,
                const std::vector<Cell>& cells, const EntryTreeProvider& provider)
        : g_(g), m_(m), cells_(cells), provider_(provider) {
        graph_ = build_cell_graph(m_);
        for (const Cell& c : cells_) cell_pts_[c] = g_.cell_points(c.col, c.row);
    }

    ComponentBuild run() {
        pick_root();
        build_tm();
        compute_h();
        build_point_forest();
        return assemble();
    }

  private:
    std::vector<Cell> path_to(Cell from, Cell to) const {
        std::map<Cell, Cell> parent;
        std::vector<Cell> queue{from};
        parent[from] = from;
        for (size_t qi = 0; qi < queue.size(); ++qi) {
            const Cell u = queue[qi];
            if (u == to) break;
            const int ui = graph_.vertex_index(u);
            for (int vi : graph_.adjacency[static_cast<size_t>(ui)]) {
                const Cell v = graph_.vertices[static_cast<size_t>(vi)];
                if (!parent.count(v)) {
                    parent[v] = u;
                    queue.push_back(v);
                }
            }
        }
        std::vector<Cell> path;
        for (Cell x = to;; x = parent.at(x)) {
            path.push_back(x);
            if (x == from) break;
        }
        std::reverse(path.begin(), path.end());
        return path;
    }

    void pick_root() {
        for (const Cell& r : cells_) {
            bool ok = true;
            for (const Cell& q : cells_) {
                if (q == r) continue;
                auto path = path_to(r, q);
                if (path.size() >= 2 &&
                    is_bumper(m_, path[path.size() - 2], path[path.size() - 1])) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                root_ = r;
                return;
            }
        }
        throw std::invalid_argument("component has a bumper toward every candidate root");
    }

    void build_tm() {
        for (const Cell& v : cells_) {
            if (v == root_) continue;
            auto path = path_to(v, root_);
            Cell parent = path[1];
            for (size_t i = 1; i < path.size(); ++i)
                if (path[i].col == v.col || path[i].row == v.row) parent = path[i];
            tm_parent_[v] = parent;
            tm_children_[parent].push_back(v);
        }
    }

    void compute_h() {
        // Bottom-up over T_M; depth from the root gives a safe order.
        std::map<Cell, int> depth;
        std::function<int(Cell)> dep = [&](Cell v) {
            if (v == root_) return 0;
            auto it = depth.find(v);
            if (it != depth.end()) return it->second;
            const int d = dep(tm_parent_.at(v)) + 1;
            depth[v] = d;
            return d;
        };
        std::vector<Cell> order = cells_;
        std::sort(order.begin(), order.end(),
                  [&](Cell a, Cell b) { return dep(a) > dep(b); });
        for (const Cell& v : order) {
            long long h = 1;
            for (const Cell& w : tm_children_[v]) {
                const Axis axis = w.col == v.col ? Axis::horizontal : Axis::vertical;
                h += propagation_constant(m_.at(w.col, w.row), axis) * h_.at(w);
            }
            h_[v] = h;
        }
    }

    void build_point_forest() {
        for (const Cell& v : cells_) {
            if (v == root_) continue;
            const Cell w = tm_parent_.at(v);
            const PointSet& own = cell_pts_.at(v);
            const PointSet& up = cell_pts_.at(w);
            const bool by_column = v.col == w.col;
            for (const Point& p : own) {
                Point parent = up.front();
                bool found = false;
                if (by_column) {
                    for (const Point& q : up)
                        if (q.x > p.x && (!found || q.x < parent.x)) {
                            parent = q;
                            found = true;
                        }
                    if (!found)
                        for (const Point& q : up)
                            if (q.x > parent.x) parent = q;
                } else {
                    for (const Point& q : up)
                        if (q.y > p.y && (!found || q.y < parent.y)) {
                            parent = q;
                            found = true;
                        }
                    if (!found)
                        for (const Point& q : up)
                            if (q.y > parent.y) parent = q;
                }
                if (by_column)
                    col_children_[parent].push_back(p);
                else
                    row_children_[parent].push_back(p);
            }
        }
    }

    GridTree point_tree(const Point& p) {
        auto cit = col_children_.find(p);
        auto rit = row_children_.find(p);
        const bool has_c = cit != col_children_.end() && !cit->second.empty();
        const bool has_r = rit != row_children_.end() && !rit->second.empty();
        if (!has_c && !has_r) return GridTree::leaf(p);

        GridTree inner = GridTree::leaf(p);
        if (has_r) {
            // Caterpillar top-to-bottom = points top-to-bottom (y descending).
            std::vector<Point> pts = rit->second;
            pts.push_back(p);
            std::sort(pts.begin(), pts.end(),
                      [](const Point& a, const Point& b) { return a.y > b.y; });
            inner = fold_caterpillar(pts, p, GridTree::leaf(p));
        }
        if (has_c) {
            // Caterpillar top-to-bottom = points left-to-right (x ascending);
            // the slot of p holds the row-side tree when both exist.
            std::vector<Point> pts = cit->second;
            pts.push_back(p);
            std::sort(pts.begin(), pts.end());
            inner = fold_caterpillar(pts, p, inner);
        }
        return inner;
    }

    GridTree fold_caterpillar(const std::vector<Point>& order, const Point& self,
                              GridTree self_tree) {
        auto item = [&](const Point& q) {
            return q == self ? self_tree : point_tree(q);
        };
        GridTree acc = item(order.back());
        for (size_t i = order.size() - 1; i-- > 0;) acc = GridTree::join(item(order[i]), acc);
        return acc;
    }

    ComponentBuild assemble() {
        const PointSet& rpts = cell_pts_.at(root_);
        const Permutation std_root = standardize(rpts);
        GridTree provided = provider_(root_, std_root);
        if (provided.leaf_count() != static_cast<int>(rpts.size()))
            throw std::invalid_argument("entry tree has the wrong number of leaves");
        const long long g_width = std::max(1, tree_width_of(provided));

        // Leaf (a, b) of the provided tree refers to the point of x-rank a.
        PointSet by_x = rpts;
        std::sort(by_x.begin(), by_x.end());
        std::function<GridTree(int)> rebuild = [&](int id) -> GridTree {
            const auto& n = provided.node(id);
            if (n.is_leaf())
                return point_tree(by_x[static_cast<size_t>(n.point.x) - 1]);
            return GridTree::join(rebuild(n.left), rebuild(n.right));
        };
        ComponentBuild out;
        out.tree = rebuild(provided.root());
        out.bound = 4 * g_width * h_.at(root_);
        return out;
    }

    const GriddedPermutation& g_;
    const GriddingMatrix& m_;
    std::vector<Cell> cells_;
    const EntryTreeProvider& provider_;
    CellGraph graph_;
    Cell root_{};
    std::map<Cell, PointSet> cell_pts_;
    std::map<Cell, Cell> tm_parent_;
    std::map<Cell, std::vector<Cell>> tm_children_;
    std::map<Cell, long long> h_;
    std::map<Point, std::vector<Point>> col_children_;
    std::map<Point, std::vector<Point>> row_children_;
};

}  // namespace

GeneralTreeResult build_general_grid_tree(const GriddedPermutation& g,
                                          const EntryTreeProvider& entry_trees) {
    // Cells with no points are dropped from the matrix for this construction.
    GriddingMatrix m(g.matrix().width(), g.matrix().height());
    for (int i = 1; i <= m.width(); ++i)
        for (int j = 1; j <= m.height(); ++j) {
            const auto& e = g.matrix().at(i, j);
            if (e.is_empty_class()) continue;
            if (g.cell_points(i, j).empty()) continue;
            if (!e.is_infinite())
                throw std::invalid_argument("tree construction needs infinite entries only");
            m.set(i, j, e);
        }

    CellGraph graph = build_cell_graph(m);
    StructureReport rep = analyze_structure(graph);
    if (!rep.is_forest) throw std::invalid_argument("cell graph is not a forest");
    if (find_bumper_ended_path(m).has_value())
        throw std::invalid_argument("cell graph contains a bumper-ended path");

    GeneralTreeResult res;
    res.components = static_cast<int>(rep.components.size());
    if (rep.components.empty()) {
        if (g.size() != 0) throw std::logic_error("points without any infinite cell");
        return res;
    }

    std::vector<ComponentBuild> parts;
    for (const auto& comp : rep.components)
        parts.push_back(TreeBuilder(g, m, comp, entry_trees).run());

    long long bound = 0;
    for (const auto& part : parts) bound = std::max(bound, part.bound);

    // Balanced pairing of component trees.
    std::vector<GridTree> layer;
    for (auto& part : parts) layer.push_back(std::move(part.tree));
    int pairings = 0;
    while (layer.size() > 1) {
        std::vector<GridTree> next;
        for (size_t i = 0; i + 1 < layer.size(); i += 2)
            next.push_back(GridTree::join(layer[i], layer[i + 1]));
        if (layer.size() % 2 == 1) next.push_back(layer.back());
        layer = std::move(next);
        ++pairings;
    }
    res.tree = std::move(layer.front());
    res.width_bound = bound + static_cast<long long>(pairings) *
                                  std::max(g.matrix().width(), g.matrix().height());
    return res;
}

}  // namespace gridpm
