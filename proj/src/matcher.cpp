#include "gridpm/matcher.hpp"

#include <algorithm>
#include <unordered_map>
#include <vector>

namespace gridpm {

namespace {

// Sorted run decomposition of a set of values in 1..k. A run endpoint is
// "live" while the neighboring gap still holds unplaced values; only live
// endpoints constrain future placements, so states store just their images.
std::vector<int> live_boundaries(const std::vector<char>& in_set, int k) {
    std::vector<std::pair<int, int>> runs;
    int v = 1;
    while (v <= k) {
        if (!in_set[static_cast<size_t>(v)]) {
            ++v;
            continue;
        }
        const int a = v;
        while (v + 1 <= k && in_set[static_cast<size_t>(v) + 1]) ++v;
        runs.emplace_back(a, v);
        ++v;
    }
    std::vector<int> live;
    for (size_t r = 0; r < runs.size(); ++r) {
        const auto [a, b] = runs[r];
        const bool left_live = r > 0 || a > 1;
        const bool right_live = r + 1 < runs.size() || b < k;
        if (a == b) {
            if (left_live || right_live) live.push_back(a);
        } else {
            if (left_live) live.push_back(a);
            if (right_live) live.push_back(b);
        }
    }
    return live;
}

struct StateHash {
    size_t operator()(const std::vector<int>& v) const {
        size_t h = 1469598103934665603ull;
        for (int x : v) {
            h ^= static_cast<size_t>(x) + 0x9e3779b97f4a7c15ull;
            h *= 1099511628211ull;
        }
        return h;
    }
};

struct Layer {
    std::vector<std::vector<int>> states;
    std::vector<std::pair<int, int>> parent;  // (state in previous layer, text position)
    std::unordered_map<std::vector<int>, int, StateHash> index;

    int intern(std::vector<int> s, int from, int pos) {
        auto it = index.find(s);
        if (it != index.end()) return it->second;
        const int id = static_cast<int>(states.size());
        index.emplace(s, id);
        states.push_back(std::move(s));
        parent.emplace_back(from, pos);
        return id;
    }
};

MatchResult dp_match(const MatchRequest& req, const PwOrdering& ordering) {
    const Permutation& pat = req.pattern;
    const Permutation& text = req.text;
    const int k = pat.size();
    const int n = text.size();
    MatchResult res;
    if (k > n) return res;
    if (k == 0) {
        res.contained = true;
        if (req.want_witness) res.witness = Occurrence{};
        return res;
    }

    const Permutation& sigma = ordering.ordering;
    if (sigma.size() != k) throw std::invalid_argument("ordering length mismatch");

    // Static per-step structure of the embedded prefix.
    std::vector<std::vector<int>> live_x(static_cast<size_t>(k) + 1);
    std::vector<std::vector<int>> live_y(static_cast<size_t>(k) + 1);
    std::vector<char> in_x(static_cast<size_t>(k) + 2, 0), in_y(static_cast<size_t>(k) + 2, 0);
    std::vector<int> px(static_cast<size_t>(k) + 1), py(static_cast<size_t>(k) + 1);
    std::vector<int> pred_x(static_cast<size_t>(k) + 1, 0), succ_x(static_cast<size_t>(k) + 1, 0);
    std::vector<int> pred_y(static_cast<size_t>(k) + 1, 0), succ_y(static_cast<size_t>(k) + 1, 0);
    for (int t = 1; t <= k; ++t) {
        const int x = sigma.value_at(t);
        const int y = pat.value_at(x);
        px[static_cast<size_t>(t)] = x;
        py[static_cast<size_t>(t)] = y;
        for (int v = x - 1; v >= 1; --v)
            if (in_x[static_cast<size_t>(v)]) {
                pred_x[static_cast<size_t>(t)] = v;
                break;
            }
        for (int v = x + 1; v <= k; ++v)
            if (in_x[static_cast<size_t>(v)]) {
                succ_x[static_cast<size_t>(t)] = v;
                break;
            }
        for (int v = y - 1; v >= 1; --v)
            if (in_y[static_cast<size_t>(v)]) {
                pred_y[static_cast<size_t>(t)] = v;
                break;
            }
        for (int v = y + 1; v <= k; ++v)
            if (in_y[static_cast<size_t>(v)]) {
                succ_y[static_cast<size_t>(t)] = v;
                break;
            }
        in_x[static_cast<size_t>(x)] = 1;
        in_y[static_cast<size_t>(y)] = 1;
        live_x[static_cast<size_t>(t)] = live_boundaries(in_x, k);
        live_y[static_cast<size_t>(t)] = live_boundaries(in_y, k);
    }

    // Index of a pattern value inside a live list.
    auto position_in = [](const std::vector<int>& live, int v) {
        auto it = std::lower_bound(live.begin(), live.end(), v);
        return it != live.end() && *it == v ? static_cast<int>(it - live.begin()) : -1;
    };

    std::vector<Layer> layers(static_cast<size_t>(k) + 1);
    layers[0].intern({}, -1, -1);

    for (int t = 0; t < k; ++t) {
        const Layer& cur = layers[static_cast<size_t>(t)];
        Layer& next = layers[static_cast<size_t>(t) + 1];
        const auto& lx = live_x[static_cast<size_t>(t)];
        const auto& ly = live_y[static_cast<size_t>(t)];
        const auto& nlx = live_x[static_cast<size_t>(t) + 1];
        const auto& nly = live_y[static_cast<size_t>(t) + 1];
        const size_t x_off = lx.size();  // y images follow x images in a state

        const int pxv = px[static_cast<size_t>(t) + 1];
        const int pyv = py[static_cast<size_t>(t) + 1];
        const int ipx = pred_x[static_cast<size_t>(t) + 1];
        const int isx = succ_x[static_cast<size_t>(t) + 1];
        const int ipy = pred_y[static_cast<size_t>(t) + 1];
        const int isy = succ_y[static_cast<size_t>(t) + 1];
        const int ipx_i = ipx ? position_in(lx, ipx) : -1;
        const int isx_i = isx ? position_in(lx, isx) : -1;
        const int ipy_i = ipy ? position_in(ly, ipy) : -1;
        const int isy_i = isy ? position_in(ly, isy) : -1;

        // Where each boundary of the next layer comes from.
        std::vector<int> map_x, map_y;  // -1 = the new point
        for (int v : nlx) map_x.push_back(v == pxv ? -1 : position_in(lx, v));
        for (int v : nly) map_y.push_back(v == pyv ? -1 : position_in(ly, v));

        for (int si = 0; si < static_cast<int>(cur.states.size()); ++si) {
            const auto& s = cur.states[static_cast<size_t>(si)];
            const int lo_x = ipx_i >= 0 ? s[static_cast<size_t>(ipx_i)] : 0;
            const int hi_x = isx_i >= 0 ? s[static_cast<size_t>(isx_i)] : n + 1;
            const int lo_y = ipy_i >= 0 ? s[x_off + static_cast<size_t>(ipy_i)] : 0;
            const int hi_y = isy_i >= 0 ? s[x_off + static_cast<size_t>(isy_i)] : n + 1;
            for (int u = lo_x + 1; u < hi_x; ++u) {
                ++res.stats.transitions;
                const int v = text.value_at(u);
                if (v <= lo_y || v >= hi_y) continue;
                std::vector<int> ns;
                ns.reserve(map_x.size() + map_y.size());
                for (int sidx : map_x) ns.push_back(sidx < 0 ? u : s[static_cast<size_t>(sidx)]);
                for (int sidx : map_y)
                    ns.push_back(sidx < 0 ? v : s[x_off + static_cast<size_t>(sidx)]);
                next.intern(std::move(ns), si, u);
                if (req.max_states && next.states.size() > req.max_states)
                    throw resource_limit_error("dp state limit exceeded");
            }
        }
        res.stats.states += next.states.size();
        res.stats.peak_layer = std::max<uint64_t>(res.stats.peak_layer, next.states.size());
        if (next.states.empty()) return res;
    }

    res.contained = true;
    if (req.want_witness) {
        std::vector<int> positions(static_cast<size_t>(k), 0);
        int state = 0;
        for (int t = k; t >= 1; --t) {
            const auto [prev, pos] = layers[static_cast<size_t>(t)].parent[static_cast<size_t>(state)];
            positions[static_cast<size_t>(px[static_cast<size_t>(t)]) - 1] = pos;
            state = prev;
        }
        res.witness = Occurrence{positions};
    }
    return res;
}

}  // namespace

MatchResult match(const MatchRequest& req) {
    if (req.strategy == MatchStrategy::brute) {
        MatchResult res;
        auto occ = contains_brute(req.pattern, req.text);
        res.contained = occ.has_value();
        if (req.want_witness) res.witness = occ;
        return res;
    }
    PwOrdering ordering;
    if (req.ordering) {
        ordering = *req.ordering;
    } else if (req.pattern.size() <= kExactWidthMaxN) {
        ordering = exact_pathwidth_ordering(req.pattern);
    } else {
        throw resource_limit_error("dp strategy needs an explicit ordering for patterns longer than " +
                                   std::to_string(kExactWidthMaxN));
    }
    return dp_match(req, ordering);
}

std::optional<Occurrence> grid_preserving_match(const GriddedPermutation& p,
                                                const GriddedPermutation& t) {
    if (p.matrix().width() != t.matrix().width() || p.matrix().height() != t.matrix().height())
        throw std::invalid_argument("gridding dimensions differ");
    const auto& pg = p.gridding();
    const auto& tg = t.gridding();
    const Permutation& pp = p.perm();
    const Permutation& tp = t.perm();
    PositionFilter cell_match = [&](int pat_pos, int text_pos) {
        return pg.column_of(pat_pos) == tg.column_of(text_pos) &&
               pg.row_of(pp.value_at(pat_pos)) == tg.row_of(tp.value_at(text_pos));
    };
    return contains_brute(pp, tp, cell_match);
}

}  // namespace gridpm
