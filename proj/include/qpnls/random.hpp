#pragma once

// Seeded data generation for audits. Everything is derived from the raw
// std::mt19937_64 stream (whose output is fixed by the C++ standard) with the
// conversions spelled out below, so audits are reproducible across
// implementations:
//   uniform01  = (x >> 11) * 2^-53
//   below(n)   = x % n, redrawing while x >= 2^64 - (2^64 mod n)
//   gaussian   = Box-Muller on (1 - uniform01, uniform01), both outputs used
//                as the real and imaginary parts of one complex amplitude

#include <cstddef>
#include <cstdint>
#include <random>

#include "qpnls/qp_function.hpp"

namespace qpnls {

class AuditRng {
public:
    explicit AuditRng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }
    double uniform01();
    std::uint64_t below(std::uint64_t n);
    Complex complex_gaussian();

private:
    std::mt19937_64 engine_;
};

/// `support` distinct frequencies drawn uniformly without replacement from
/// [-coord_max, coord_max]^2, each with a complex standard Gaussian amplitude.
QPFunction random_qp_function(AuditRng& rng, std::size_t support, long long coord_max);

}  // namespace qpnls
