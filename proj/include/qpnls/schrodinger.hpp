#pragma once

// Linear Schrödinger group on quasiperiodic data and the exact space-time
// L^4 norm obtained by grouping frequency pairs with equal (sum, sum of squares).

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "qpnls/omega.hpp"
#include "qpnls/qp_function.hpp"

namespace qpnls {

/// Multiplies the coefficient at k by exp(-i t k^2).
QPFunction propagate(const QPFunction& g, double t);

/// Exact integer square root, or nullopt if s is not a perfect square.
std::optional<Int> exact_sqrt(Int s);

using FrequencyPair = std::pair<OmegaElement, OmegaElement>;

/// All (l1, l2) in the lattice with l1 + l2 = p and l1^2 + l2^2 = q.
struct ResonancePairSet {
    OmegaElement p;
    OmegaElement q;
    std::vector<FrequencyPair> pairs;  // sorted, at most 4
};

ResonancePairSet enumerate_pairs(const OmegaElement& p, const OmegaElement& q);

/// Grouping key (l1 + l2, l1^2 + l2^2) of an ordered frequency pair.
struct PairKey {
    OmegaElement p;
    OmegaElement q;
    friend auto operator<=>(const PairKey&, const PairKey&) = default;
};

inline PairKey pair_key(const OmegaElement& l1, const OmegaElement& l2) {
    return {l1 + l2, square(l1) + square(l2)};
}

/// ||S(t)g||_{L^4_{t,x}} via sum_{p,q} |sum_{A_{p,q}} g(l1) g(l2)|^2, raised to 1/4.
/// The result does not depend on `workers`.
double strichartz_l4_norm(const QPFunction& g, unsigned workers = 1);

/// strichartz_l4_norm(g) / l2_norm(g); rejects the zero function.
double strichartz_ratio(const QPFunction& g, unsigned workers = 1);

/// Trapezoid estimate of the double mean of |S(t)g(x)|^4 over t in [-T, T],
/// x in [-L, L], each axis split into `steps` intervals, raised to 1/4.
double l4_norm_ergodic_crosscheck(const QPFunction& g, double time_half_width, double space_half_width,
                                  std::size_t steps, unsigned workers = 1);

struct ApqAuditResult {
    long long box = 0;
    std::size_t ordered_pairs = 0;
    std::size_t keys = 0;
    std::size_t max_cardinality = 0;
    std::size_t mismatches = 0;
    std::map<std::size_t, std::size_t> cardinality_histogram;
};

/// Groups every ordered pair with coordinates in [-box, box] by its key and
/// checks that enumerate_pairs reproduces each group exactly.
ApqAuditResult apq_audit(long long box, unsigned workers = 1);

}  // namespace qpnls
