#include "gridpm/grid.hpp"

#include <algorithm>
#include <cassert>
#include <set>
#include <stdexcept>

namespace gridpm {

namespace {

bool is_increasing(const Permutation& p) {
    for (int i = 2; i <= p.size(); ++i)
        if (p.value_at(i) < p.value_at(i - 1)) return false;
    return true;
}

bool is_decreasing(const Permutation& p) {
    for (int i = 2; i <= p.size(); ++i)
        if (p.value_at(i) > p.value_at(i - 1)) return false;
    return true;
}

// All patterns contained in p, via subset standardization.
std::set<Permutation> downward_closure(const std::vector<Permutation>& members) {
    std::set<Permutation> out;
    for (const auto& m : members) {
        const auto pts = m.points();
        const int n = m.size();
        if (n > 20) throw std::invalid_argument("finite entry member too long");
        for (unsigned long long mask = 0; mask < (1ull << n); ++mask) {
            PointSet sub;
            for (int i = 0; i < n; ++i)
                if (mask >> i & 1) sub.push_back(pts[static_cast<size_t>(i)]);
            out.insert(standardize(sub));
        }
    }
    out.insert(Permutation{});
    return out;
}

}  // namespace

ClassEntry ClassEntry::empty() { return ClassEntry(); }

ClassEntry ClassEntry::inc() {
    ClassEntry e;
    e.kind_ = EntryKind::inc;
    return e;
}

ClassEntry ClassEntry::dec() {
    ClassEntry e;
    e.kind_ = EntryKind::dec;
    return e;
}

ClassEntry ClassEntry::av(Permutation basis) {
    if (basis.empty()) throw std::invalid_argument("Av basis must be nonempty");
    ClassEntry e;
    e.kind_ = EntryKind::av;
    e.basis_ = std::move(basis);
    e.declared_bgw_ = Tristate::unknown;
    return e;
}

ClassEntry ClassEntry::finite(std::vector<Permutation> members) {
    ClassEntry e;
    e.kind_ = EntryKind::finite;
    auto closed = downward_closure(members);
    e.members_.assign(closed.begin(), closed.end());
    std::sort(e.members_.begin(), e.members_.end(), [](const Permutation& a, const Permutation& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a.values() < b.values();
    });
    return e;
}

bool ClassEntry::is_infinite() const {
    switch (kind_) {
        case EntryKind::inc:
        case EntryKind::dec:
            return true;
        case EntryKind::av:
            // Av(1) holds only the empty permutation; longer bases leave all
            // increasing or all decreasing permutations.
            return basis_.size() >= 2;
        case EntryKind::empty:
        case EntryKind::finite:
            return false;
    }
    return false;
}

int ClassEntry::max_member_length() const {
    switch (kind_) {
        case EntryKind::empty:
            return 0;
        case EntryKind::av:
            return basis_.size() >= 2 ? -1 : 0;  // -1 = unbounded
        case EntryKind::inc:
        case EntryKind::dec:
            return -1;
        case EntryKind::finite:
            return members_.empty() ? 0 : members_.back().size();
    }
    return 0;
}

bool ClassEntry::contains(const Permutation& p) const {
    switch (kind_) {
        case EntryKind::empty:
            return p.empty();
        case EntryKind::inc:
            return is_increasing(p);
        case EntryKind::dec:
            return is_decreasing(p);
        case EntryKind::av:
            return !contains_brute(basis_, p).has_value();
        case EntryKind::finite:
            return std::binary_search(
                members_.begin(), members_.end(), p,
                [](const Permutation& a, const Permutation& b) {
                    if (a.size() != b.size()) return a.size() < b.size();
                    return a.values() < b.values();
                });
    }
    return false;
}

ClassEntry ClassEntry::with_declared_bounded_gridwidth(Tristate t) const {
    ClassEntry e = *this;
    e.declared_bgw_ = t;
    return e;
}

ClassEntry ClassEntry::transformed(Symmetry op) const {
    switch (kind_) {
        case EntryKind::empty:
            return *this;
        case EntryKind::inc:
            return op == Symmetry::inverse
                       ? *this
                       : ClassEntry::dec().with_declared_bounded_gridwidth(declared_bgw_);
        case EntryKind::dec:
            return op == Symmetry::inverse
                       ? *this
                       : ClassEntry::inc().with_declared_bounded_gridwidth(declared_bgw_);
        case EntryKind::av:
            return ClassEntry::av(apply_symmetry(basis_, op))
                .with_declared_bounded_gridwidth(declared_bgw_);
        case EntryKind::finite: {
            std::vector<Permutation> mapped;
            mapped.reserve(members_.size());
            for (const auto& m : members_) mapped.push_back(apply_symmetry(m, op));
            return ClassEntry::finite(std::move(mapped))
                .with_declared_bounded_gridwidth(declared_bgw_);
        }
    }
    return *this;
}

bool operator==(const ClassEntry& a, const ClassEntry& b) {
    if (a.kind_ != b.kind_) {
        return false;
    }
    switch (a.kind_) {
        case EntryKind::av:
            return a.basis_ == b.basis_;
        case EntryKind::finite:
            return a.members_ == b.members_;
        default:
            return true;
    }
}

bool entry_contains(const ClassEntry& e, const Permutation& p) { return e.contains(p); }

GriddingMatrix::GriddingMatrix(int width, int height)
    : GriddingMatrix(width, height,
                     std::vector<ClassEntry>(static_cast<size_t>(width) *
                                             static_cast<size_t>(height))) {}

GriddingMatrix::GriddingMatrix(int width, int height, std::vector<ClassEntry> entries)
    : width_(width), height_(height), entries_(std::move(entries)) {
    if (width_ < 1 || height_ < 1) throw std::invalid_argument("matrix dimensions must be >= 1");
    if (entries_.size() != static_cast<size_t>(width_) * static_cast<size_t>(height_))
        throw std::invalid_argument("entry count mismatch");
}

size_t GriddingMatrix::index(int col, int row) const {
    if (col < 1 || col > width_ || row < 1 || row > height_)
        throw std::out_of_range("cell index out of range");
    return static_cast<size_t>(row - 1) * static_cast<size_t>(width_) +
           static_cast<size_t>(col - 1);
}

const ClassEntry& GriddingMatrix::at(int col, int row) const { return entries_[index(col, row)]; }

void GriddingMatrix::set(int col, int row, ClassEntry e) { entries_[index(col, row)] = std::move(e); }

bool GriddingMatrix::is_monotone() const {
    for (const auto& e : entries_)
        if (!(e.is_empty_class() || e.is_monotone())) return false;
    return true;
}

bool operator==(const GriddingMatrix& a, const GriddingMatrix& b) {
    return a.width_ == b.width_ && a.height_ == b.height_ && a.entries_ == b.entries_;
}

int Gridding::column_of(int x) const {
    for (int i = 1; i <= columns(); ++i)
        if (x > col_cuts[static_cast<size_t>(i) - 1] && x <= col_cuts[static_cast<size_t>(i)])
            return i;
    throw std::out_of_range("position outside gridding");
}

int Gridding::row_of(int y) const {
    for (int j = 1; j <= rows(); ++j)
        if (y > row_cuts[static_cast<size_t>(j) - 1] && y <= row_cuts[static_cast<size_t>(j)])
            return j;
    throw std::out_of_range("value outside gridding");
}

namespace {

bool cuts_well_formed(const std::vector<int>& cuts, int n) {
    if (cuts.size() < 2 || cuts.front() != 0 || cuts.back() != n) return false;
    for (size_t i = 1; i < cuts.size(); ++i)
        if (cuts[i] < cuts[i - 1]) return false;
    return true;
}

PointSet restrict_points(const Permutation& p, int x_lo, int x_hi, int y_lo, int y_hi) {
    PointSet s;
    for (int x = x_lo + 1; x <= x_hi; ++x) {
        const int y = p.value_at(x);
        if (y > y_lo && y <= y_hi) s.push_back({x, y});
    }
    return s;
}

}  // namespace

bool validate_gridding(const Permutation& p, const GriddingMatrix& m, const Gridding& g) {
    const int n = p.size();
    if (static_cast<int>(g.col_cuts.size()) != m.width() + 1 ||
        static_cast<int>(g.row_cuts.size()) != m.height() + 1)
        throw std::invalid_argument("cut vector lengths do not match matrix dimensions");
    if (!cuts_well_formed(g.col_cuts, n) || !cuts_well_formed(g.row_cuts, n))
        throw std::invalid_argument("malformed cut vectors");
    for (int i = 1; i <= m.width(); ++i)
        for (int j = 1; j <= m.height(); ++j) {
            const auto pts = restrict_points(p, g.col_cuts[static_cast<size_t>(i) - 1],
                                             g.col_cuts[static_cast<size_t>(i)],
                                             g.row_cuts[static_cast<size_t>(j) - 1],
                                             g.row_cuts[static_cast<size_t>(j)]);
            if (!m.at(i, j).contains(standardize(pts))) return false;
        }
    return true;
}

std::optional<Gridding> find_gridding(const Permutation& p, const GriddingMatrix& m) {
    const int n = p.size();
    const int k = m.width();
    const int l = m.height();

    std::vector<int> ccuts(static_cast<size_t>(k) + 1, 0);
    std::vector<int> rcuts(static_cast<size_t>(l) + 1, 0);
    ccuts.back() = n;
    rcuts.back() = n;

    // Row cuts are chosen innermost with per-row validation so a bad early
    // row prunes the remaining choices.
    std::function<bool(int)> choose_row = [&](int j) -> bool {
        if (j == l) {
            for (int i = 1; i <= k; ++i) {
                const auto pts =
                    restrict_points(p, ccuts[static_cast<size_t>(i) - 1],
                                    ccuts[static_cast<size_t>(i)],
                                    rcuts[static_cast<size_t>(l) - 1], n);
                if (!m.at(i, l).contains(standardize(pts))) return false;
            }
            return true;
        }
        for (int r = rcuts[static_cast<size_t>(j) - 1]; r <= n; ++r) {
            rcuts[static_cast<size_t>(j)] = r;
            bool ok = true;
            for (int i = 1; i <= k && ok; ++i) {
                const auto pts =
                    restrict_points(p, ccuts[static_cast<size_t>(i) - 1],
                                    ccuts[static_cast<size_t>(i)],
                                    rcuts[static_cast<size_t>(j) - 1], r);
                ok = m.at(i, j).contains(standardize(pts));
            }
            if (ok && choose_row(j + 1)) return true;
        }
        return false;
    };

    std::function<bool(int)> choose_col = [&](int i) -> bool {
        if (i == k) return choose_row(1);
        for (int c = ccuts[static_cast<size_t>(i) - 1]; c <= n; ++c) {
            ccuts[static_cast<size_t>(i)] = c;
            if (choose_col(i + 1)) return true;
        }
        return false;
    };

    if (choose_col(1)) return Gridding{ccuts, rcuts};
    return std::nullopt;
}

GriddedPermutation::GriddedPermutation(Permutation perm, GriddingMatrix matrix, Gridding gridding)
    : perm_(std::move(perm)), matrix_(std::move(matrix)), gridding_(std::move(gridding)) {
    if (!validate_gridding(perm_, matrix_, gridding_))
        throw std::invalid_argument("gridding does not satisfy the matrix entries");
}

PointSet GriddedPermutation::cell_points(int col, int row) const {
    if (col < 1 || col > matrix_.width() || row < 1 || row > matrix_.height())
        throw std::out_of_range("cell index out of range");
    return restrict_points(perm_, gridding_.col_cuts[static_cast<size_t>(col) - 1],
                           gridding_.col_cuts[static_cast<size_t>(col)],
                           gridding_.row_cuts[static_cast<size_t>(row) - 1],
                           gridding_.row_cuts[static_cast<size_t>(row)]);
}

std::pair<int, int> GriddedPermutation::cell_of_position(int x) const {
    return {gridding_.column_of(x), gridding_.row_of(perm_.value_at(x))};
}

Permutation random_class_member(const ClassEntry& e, int length, std::mt19937_64& rng) {
    switch (e.kind()) {
        case EntryKind::empty:
            if (length != 0) throw std::invalid_argument("empty entry admits only length 0");
            return Permutation{};
        case EntryKind::inc:
            return Permutation::identity(length);
        case EntryKind::dec:
            return Permutation::decreasing(length);
        case EntryKind::finite: {
            std::vector<Permutation> fits;
            for (const auto& m : e.members())
                if (m.size() == length) fits.push_back(m);
            if (fits.empty()) throw std::invalid_argument("finite entry has no member of that length");
            std::uniform_int_distribution<size_t> pick(0, fits.size() - 1);
            return fits[pick(rng)];
        }
        case EntryKind::av: {
            // Grow one value at a time; every avoider extends by some single
            // insertion, so the candidate list is never empty.
            Permutation cur{};
            for (int len = 1; len <= length; ++len) {
                std::vector<Permutation> options;
                for (int pos = 0; pos < len; ++pos)
                    for (int val = 1; val <= len; ++val) {
                        std::vector<int> v;
                        v.reserve(static_cast<size_t>(len));
                        for (int i = 1; i < len; ++i) {
                            int old = cur.value_at(i);
                            v.push_back(old >= val ? old + 1 : old);
                        }
                        v.insert(v.begin() + pos, val);
                        Permutation cand(std::move(v));
                        if (e.contains(cand)) options.push_back(std::move(cand));
                    }
                std::uniform_int_distribution<size_t> pick(0, options.size() - 1);
                cur = options[pick(rng)];
            }
            return cur;
        }
    }
    throw std::logic_error("unhandled entry kind");
}

GriddedPermutation random_gridded(const GriddingMatrix& m, int n, std::mt19937_64& rng) {
    const int k = m.width();
    const int l = m.height();
    struct CellRef {
        int col, row, cap;
    };
    std::vector<CellRef> cells;
    for (int i = 1; i <= k; ++i)
        for (int j = 1; j <= l; ++j)
            if (!m.at(i, j).is_empty_class()) cells.push_back({i, j, m.at(i, j).max_member_length()});
    if (cells.empty() && n > 0) throw std::invalid_argument("matrix admits no points");

    std::vector<int> count(cells.size(), 0);
    std::uniform_int_distribution<size_t> pick_cell(0, cells.empty() ? 0 : cells.size() - 1);
    for (int t = 0; t < n; ++t) {
        for (int tries = 0;; ++tries) {
            if (tries > 10000) throw std::runtime_error("cannot distribute points over finite entries");
            size_t c = pick_cell(rng);
            if (cells[c].cap >= 0 && count[c] >= cells[c].cap) continue;
            ++count[c];
            break;
        }
    }

    // x slots: per column, shuffle the multiset of its cells; likewise y per
    // row. Each cell then realizes a random member of its entry on its slots.
    std::vector<std::vector<int>> xs(cells.size()), ys(cells.size());
    int xcursor = 0;
    std::vector<int> col_width(static_cast<size_t>(k) + 1, 0);
    for (int i = 1; i <= k; ++i) {
        std::vector<size_t> owners;
        for (size_t c = 0; c < cells.size(); ++c)
            if (cells[c].col == i) owners.insert(owners.end(), static_cast<size_t>(count[c]), c);
        std::shuffle(owners.begin(), owners.end(), rng);
        for (size_t o : owners) xs[o].push_back(++xcursor);
        col_width[static_cast<size_t>(i)] = static_cast<int>(owners.size());
    }
    int ycursor = 0;
    std::vector<int> row_height(static_cast<size_t>(l) + 1, 0);
    for (int j = 1; j <= l; ++j) {
        std::vector<size_t> owners;
        for (size_t c = 0; c < cells.size(); ++c)
            if (cells[c].row == j) owners.insert(owners.end(), static_cast<size_t>(count[c]), c);
        std::shuffle(owners.begin(), owners.end(), rng);
        for (size_t o : owners) ys[o].push_back(++ycursor);
        row_height[static_cast<size_t>(j)] = static_cast<int>(owners.size());
    }

    std::vector<int> vals(static_cast<size_t>(n), 0);
    for (size_t c = 0; c < cells.size(); ++c) {
        Permutation pat = random_class_member(m.at(cells[c].col, cells[c].row), count[c], rng);
        for (int a = 1; a <= count[c]; ++a)
            vals[static_cast<size_t>(xs[c][static_cast<size_t>(a) - 1]) - 1] =
                ys[c][static_cast<size_t>(pat.value_at(a)) - 1];
    }

    Gridding g;
    g.col_cuts.assign(static_cast<size_t>(k) + 1, 0);
    for (int i = 1; i <= k; ++i)
        g.col_cuts[static_cast<size_t>(i)] =
            g.col_cuts[static_cast<size_t>(i) - 1] + col_width[static_cast<size_t>(i)];
    g.row_cuts.assign(static_cast<size_t>(l) + 1, 0);
    for (int j = 1; j <= l; ++j)
        g.row_cuts[static_cast<size_t>(j)] =
            g.row_cuts[static_cast<size_t>(j) - 1] + row_height[static_cast<size_t>(j)];
    return GriddedPermutation(Permutation(std::move(vals)), m, std::move(g));
}

}  // namespace gridpm
