#include "gridpm/permutation.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <stdexcept>

namespace gridpm {

Permutation::Permutation(std::vector<int> values) : vals_(std::move(values)) {
    const int n = static_cast<int>(vals_.size());
    std::vector<char> seen(static_cast<size_t>(n) + 1, 0);
    for (int v : vals_) {
        if (v < 1 || v > n || seen[static_cast<size_t>(v)])
            throw std::invalid_argument("not a permutation of 1..n");
        seen[static_cast<size_t>(v)] = 1;
    }
}

Permutation Permutation::identity(int n) {
    std::vector<int> v(static_cast<size_t>(n));
    std::iota(v.begin(), v.end(), 1);
    return Permutation(std::move(v));
}

Permutation Permutation::decreasing(int n) {
    std::vector<int> v(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) v[static_cast<size_t>(i)] = n - i;
    return Permutation(std::move(v));
}

int Permutation::position_of(int value) const {
    for (int i = 1; i <= size(); ++i)
        if (value_at(i) == value) return i;
    throw std::out_of_range("value not present");
}

PointSet Permutation::points() const {
    PointSet s;
    s.reserve(vals_.size());
    for (int i = 1; i <= size(); ++i) s.push_back({i, value_at(i)});
    return s;
}

Permutation standardize(const PointSet& s) {
    const int n = static_cast<int>(s.size());
    std::vector<int> by_x(static_cast<size_t>(n)), by_y(static_cast<size_t>(n));
    std::iota(by_x.begin(), by_x.end(), 0);
    by_y = by_x;
    auto ix = [&](int i) { return static_cast<size_t>(i); };
    std::sort(by_x.begin(), by_x.end(),
              [&](int a, int b) { return s[ix(a)].x < s[ix(b)].x; });
    std::sort(by_y.begin(), by_y.end(),
              [&](int a, int b) { return s[ix(a)].y < s[ix(b)].y; });
    for (int i = 1; i < n; ++i) {
        if (s[ix(by_x[ix(i)])].x == s[ix(by_x[ix(i - 1)])].x ||
            s[ix(by_y[ix(i)])].y == s[ix(by_y[ix(i - 1)])].y)
            throw std::invalid_argument("point set has a repeated coordinate");
    }
    std::vector<int> yrank(static_cast<size_t>(n));
    for (int r = 0; r < n; ++r) yrank[ix(by_y[ix(r)])] = r + 1;
    std::vector<int> vals(static_cast<size_t>(n));
    for (int r = 0; r < n; ++r) vals[ix(r)] = yrank[ix(by_x[ix(r)])];
    return Permutation(std::move(vals));
}

Permutation apply_symmetry(const Permutation& p, Symmetry which) {
    const int n = p.size();
    std::vector<int> v(static_cast<size_t>(n));
    switch (which) {
        case Symmetry::reverse:
            for (int i = 1; i <= n; ++i)
                v[static_cast<size_t>(i) - 1] = p.value_at(n - i + 1);
            break;
        case Symmetry::complement:
            for (int i = 1; i <= n; ++i)
                v[static_cast<size_t>(i) - 1] = n + 1 - p.value_at(i);
            break;
        case Symmetry::inverse:
            for (int i = 1; i <= n; ++i)
                v[static_cast<size_t>(p.value_at(i)) - 1] = i;
            break;
    }
    return Permutation(std::move(v));
}

namespace {

// Depth-first search over strictly increasing position choices; visiting
// candidates in increasing order makes the first full match lexicographically
// minimal. Returns false from the callback to keep enumerating.
bool search_occurrences(const Permutation& pattern, const Permutation& text,
                        const PositionFilter& allowed,
                        const std::function<bool(const Occurrence&)>& emit) {
    const int k = pattern.size();
    const int n = text.size();
    if (k > n) return false;
    if (k == 0) return emit(Occurrence{});

    std::vector<int> chosen;  // text positions, 1-based
    chosen.reserve(static_cast<size_t>(k));

    // ranks[d] = number of already-chosen pattern values below pattern value
    // at depth d; used for the incremental order-isomorphism check.
    std::function<bool(int)> go = [&](int depth) -> bool {
        if (depth == k) return emit(Occurrence{chosen});
        const int pv = pattern.value_at(depth + 1);
        int start = chosen.empty() ? 1 : chosen.back() + 1;
        // Remaining pattern points need n - start + 1 >= k - depth.
        for (int pos = start; pos + (k - depth - 1) <= n; ++pos) {
            if (allowed && !allowed(depth + 1, pos)) continue;
            const int tv = text.value_at(pos);
            bool ok = true;
            for (int d = 0; d < depth && ok; ++d) {
                const bool below = pattern.value_at(d + 1) < pv;
                const bool tbelow = text.value_at(chosen[static_cast<size_t>(d)]) < tv;
                ok = below == tbelow;
            }
            if (!ok) continue;
            chosen.push_back(pos);
            if (go(depth + 1)) return true;
            chosen.pop_back();
        }
        return false;
    };
    return go(0);
}

}  // namespace

std::optional<Occurrence> contains_brute(const Permutation& pattern,
                                         const Permutation& text,
                                         const PositionFilter& allowed) {
    if (pattern.size() > text.size()) return std::nullopt;
    std::optional<Occurrence> found;
    search_occurrences(pattern, text, allowed, [&](const Occurrence& o) {
        found = o;
        return true;
    });
    return found;
}

std::vector<Occurrence> enumerate_occurrences(const Permutation& pattern,
                                              const Permutation& text,
                                              const PositionFilter& allowed,
                                              size_t max_count) {
    std::vector<Occurrence> all;
    if (pattern.size() > text.size()) return all;
    search_occurrences(pattern, text, allowed, [&](const Occurrence& o) {
        all.push_back(o);
        return max_count != 0 && all.size() >= max_count;
    });
    return all;
}

bool occurrence_valid(const Permutation& pattern, const Permutation& text,
                      const Occurrence& occ) {
    const int k = pattern.size();
    if (static_cast<int>(occ.positions.size()) != k) return false;
    for (int i = 0; i < k; ++i) {
        const int pos = occ.positions[static_cast<size_t>(i)];
        if (pos < 1 || pos > text.size()) return false;
        if (i > 0 && pos <= occ.positions[static_cast<size_t>(i) - 1]) return false;
    }
    for (int a = 0; a < k; ++a)
        for (int b = a + 1; b < k; ++b) {
            const bool pb = pattern.value_at(a + 1) < pattern.value_at(b + 1);
            const bool tb = text.value_at(occ.positions[static_cast<size_t>(a)]) <
                            text.value_at(occ.positions[static_cast<size_t>(b)]);
            if (pb != tb) return false;
        }
    return true;
}

namespace {

// Patience-sorting LIS with predecessor links; comparisons flipped for the
// decreasing direction.
std::vector<int> lis_impl(const std::vector<int>& seq, bool increasing) {
    const int n = static_cast<int>(seq.size());
    std::vector<int> tails;       // index of smallest tail per length
    std::vector<int> prev(static_cast<size_t>(n), -1);
    auto key = [&](int i) { return increasing ? seq[static_cast<size_t>(i)]
                                              : -seq[static_cast<size_t>(i)]; };
    for (int i = 0; i < n; ++i) {
        auto it = std::lower_bound(tails.begin(), tails.end(), i,
                                   [&](int a, int b) { return key(a) < key(b); });
        if (it != tails.begin()) prev[static_cast<size_t>(i)] = *(it - 1);
        if (it == tails.end())
            tails.push_back(i);
        else
            *it = i;
    }
    std::vector<int> out;
    if (tails.empty()) return out;
    for (int i = tails.back(); i != -1; i = prev[static_cast<size_t>(i)])
        out.push_back(i + 1);
    std::reverse(out.begin(), out.end());
    return out;
}

}  // namespace

int lis_length(const Permutation& p, Direction dir) {
    return static_cast<int>(lis_positions(p, dir).size());
}

std::vector<int> lis_positions(const Permutation& p, Direction dir) {
    return lis_impl(p.values(), dir == Direction::increasing);
}

bool is_alternation(const Permutation& p, Axis axis) {
    if (axis == Axis::vertical)
        return is_alternation(apply_symmetry(p, Symmetry::inverse), Axis::horizontal);
    bool seen_odd = false;
    for (int v : p.values()) {
        if (v % 2 == 1)
            seen_odd = true;
        else if (seen_odd)
            return false;
    }
    return true;
}

Permutation monotone_alternation(int size, Direction evens, Direction odds) {
    if (size < 0) throw std::invalid_argument("negative size");
    const int ne = size / 2;       // even values 2,4,...
    const int no = size - ne;      // odd values 1,3,...
    std::vector<int> v;
    v.reserve(static_cast<size_t>(size));
    for (int i = 0; i < ne; ++i)
        v.push_back(evens == Direction::increasing ? 2 * (i + 1) : 2 * (ne - i));
    for (int i = 0; i < no; ++i)
        v.push_back(odds == Direction::increasing ? 2 * i + 1 : 2 * (no - 1 - i) + 1);
    return Permutation(std::move(v));
}

namespace {

// Keep only the alternation pairs whose odd value is listed; partners are the
// odd value + 1. Input points are those of a horizontal alternation.
PointSet restrict_alternation(const Permutation& p, const std::vector<int>& odd_values) {
    PointSet out;
    for (int v : odd_values) {
        out.push_back({p.position_of(v), v});
        out.push_back({p.position_of(v + 1), v + 1});
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

Permutation extract_monotone_alternation(const Permutation& p, Axis axis) {
    if (!is_alternation(p, axis) || p.size() % 2 != 0)
        throw std::invalid_argument("input is not an alternation of even size");
    if (axis == Axis::vertical) {
        Permutation q =
            extract_monotone_alternation(apply_symmetry(p, Symmetry::inverse), Axis::horizontal);
        return apply_symmetry(q, Symmetry::inverse);
    }
    if (p.empty()) return p;

    // Pass 1: monotone subsequence of the odd entries, pairs re-attached.
    std::vector<int> odd_seq;
    for (int v : p.values())
        if (v % 2 == 1) odd_seq.push_back(v);
    Permutation odds = standardize([&] {
        PointSet s;
        for (size_t i = 0; i < odd_seq.size(); ++i)
            s.push_back({static_cast<int>(i) + 1, odd_seq[i]});
        return s;
    }());
    auto inc1 = lis_positions(odds, Direction::increasing);
    auto dec1 = lis_positions(odds, Direction::decreasing);
    const auto& keep1 = inc1.size() >= dec1.size() ? inc1 : dec1;
    std::vector<int> odd_vals;
    for (int pos : keep1) odd_vals.push_back(odd_seq[static_cast<size_t>(pos) - 1]);
    std::sort(odd_vals.begin(), odd_vals.end());
    Permutation mid = standardize(restrict_alternation(p, odd_vals));

    // Pass 2: same sweep on the even entries of the intermediate alternation.
    std::vector<int> even_seq;
    for (int v : mid.values())
        if (v % 2 == 0) even_seq.push_back(v);
    Permutation evens = standardize([&] {
        PointSet s;
        for (size_t i = 0; i < even_seq.size(); ++i)
            s.push_back({static_cast<int>(i) + 1, even_seq[i]});
        return s;
    }());
    auto inc2 = lis_positions(evens, Direction::increasing);
    auto dec2 = lis_positions(evens, Direction::decreasing);
    const auto& keep2 = inc2.size() >= dec2.size() ? inc2 : dec2;
    std::vector<int> odd_vals2;
    for (int pos : keep2) odd_vals2.push_back(even_seq[static_cast<size_t>(pos) - 1] - 1);
    std::sort(odd_vals2.begin(), odd_vals2.end());
    return standardize(restrict_alternation(mid, odd_vals2));
}

std::string to_string(const Permutation& p) {
    std::string out;
    for (int i = 1; i <= p.size(); ++i) {
        if (i > 1) out += ' ';
        out += std::to_string(p.value_at(i));
    }
    return out;
}

}  // namespace gridpm
