#pragma once

// Near-resonant cubic interactions k1 - k2 + k3 = k with small phase
// Phi = 2 (k1 - k)(k3 - k), and the Pell-equation family that populates them.

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "qpnls/omega.hpp"

namespace qpnls {

using BigInt = boost::multiprecision::cpp_int;

struct ResonanceQuadruple {
    OmegaElement k1;
    OmegaElement k2;
    OmegaElement k3;
    OmegaElement k;
    OmegaElement phi;

    friend bool operator==(const ResonanceQuadruple&, const ResonanceQuadruple&) = default;
    friend auto operator<=>(const ResonanceQuadruple&, const ResonanceQuadruple&) = default;
};

/// 2 (k1 - k)(k3 - k), exact.
OmegaElement phi(const OmegaElement& k1, const OmegaElement& k3, const OmegaElement& k);

/// Completes (k1, k3, k) with k2 = k1 + k3 - k and the exact phase.
ResonanceQuadruple make_quadruple(const OmegaElement& k1, const OmegaElement& k3, const OmegaElement& k);

inline bool in_box(const OmegaElement& v, Int n) { return v.kx <= n && v.kx >= -n && v.ky <= n && v.ky >= -n; }

/// Membership in Gamma(k, N) with |Phi| <= phi_bound. Rechecks every defining
/// relation, including the stored phase.
bool in_gamma(const ResonanceQuadruple& quad, long long n, const Rational& phi_bound);

/// The reduced predicate a, b, c, d in [-N, N] with |ab + 2cd + sqrt(2)(ad + bc)| <= bound.
/// With a = k1x - kx, b = k3x - kx, c = k1y - ky, d = k3y - ky this is |Phi/2| <= bound.
bool in_reduced_gamma(Int a, Int b, Int c, Int d, long long n, const Rational& bound);

inline constexpr long long kDefaultMaxN = 96;
inline constexpr long long kHardMaxN = 1LL << 20;

struct GammaOptions {
    Rational phi_bound{1};
    unsigned workers = 1;
    long long max_n = kDefaultMaxN;  // raise explicitly for larger boxes
    bool collect = false;            // also return the sorted quadruples
};

struct GammaCount {
    std::uint64_t count = 0;
    std::vector<ResonanceQuadruple> quadruples;
};

/// Exhaustive count of Gamma(k, N): all k1, k3 in the box with k2 in the box
/// and |Phi| <= phi_bound.
GammaCount gamma_count_bruteforce(const OmegaElement& k, long long n, const GammaOptions& options = {});

struct PellSolution {
    BigInt a;
    BigInt c;
    friend bool operator==(const PellSolution&, const PellSolution&) = default;
};

inline bool satisfies_pell(const BigInt& a, const BigInt& c) { return a * a - 2 * c * c == 1; }

/// The first `count` outputs of (a, c) -> (3a + 4c, 2a + 3c) starting at (3, 2).
std::vector<PellSolution> pell_sequence(std::size_t count);

/// Every recursion output with a, c <= max_coord, increasing. The trivial
/// solution (1, 0) is prepended only when asked for.
std::vector<PellSolution> pell_solutions(const BigInt& max_coord, bool include_trivial = false);

/// floor(log(N) / log(3 + 2 sqrt 2)), the expected number of solutions up to N.
std::size_t pell_count_estimate(double max_coord);

/// All integer (p, q) with |p|, |q| <= max_abs and |p + sqrt(2) q| <= bound,
/// sorted by q then p. Runs in O(max_abs) plus output size.
std::vector<std::pair<Int, Int>> strip_points(Int max_abs, const Rational& bound);

struct ConstructOptions {
    Rational phi_bound{1};
    bool include_trivial_pell = false;
};

/// Near-resonant quadruples built from Pell solutions (all sign variants with
/// k1 in the box): k1 = k + (a, c) and
/// k3 = k + (b, d) where (b, d) solves [[a, 2c], [c, a]] (b, d) = (p, q) for
/// strip points |p + sqrt(2) q| <= phi_bound / 2. Every output is verified
/// against in_gamma. Requires |kx|, |ky| <= N/2.
std::vector<ResonanceQuadruple> gamma_lower_bound_construct(const OmegaElement& k, long long n,
                                                            const ConstructOptions& options = {});

}  // namespace qpnls
