#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>

#include "gridpm/grid.hpp"
#include "gridpm/width.hpp"

namespace gridpm {

/// Thrown when a tunable resource limit is exceeded (CLI exit code 3).
class resource_limit_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

enum class MatchStrategy { brute, dp };

struct MatchRequest {
    Permutation pattern;
    Permutation text;
    MatchStrategy strategy = MatchStrategy::brute;
    std::optional<PwOrdering> ordering;  // dp only; computed when absent
    bool want_witness = false;
    uint64_t max_states = 0;  // 0 = unlimited
};

struct MatchStats {
    uint64_t states = 0;       // distinct states over all steps
    uint64_t transitions = 0;  // candidate placements examined
    uint64_t peak_layer = 0;   // largest single-step state count
};

struct MatchResult {
    bool contained = false;
    std::optional<Occurrence> witness;
    MatchStats stats;
};

/// Decide containment with the requested engine. The dp engine walks the
/// pattern in the ordering's sequence, keeping only the text images of the
/// boundaries of the embedded prefix's x- and y-intervals.
MatchResult match(const MatchRequest& req);

/// Occurrence mapping each pattern cell into the equally indexed text cell,
/// or nullopt. Matrices must have equal dimensions.
std::optional<Occurrence> grid_preserving_match(const GriddedPermutation& p,
                                                const GriddedPermutation& t);

}  // namespace gridpm
