#include "qpnls/random.hpp"

#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>

namespace qpnls {

double AuditRng::uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

std::uint64_t AuditRng::below(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("below(0)");
    const std::uint64_t limit = -((-n) % n);  // 2^64 - (2^64 mod n), 0 when n divides 2^64
    for (;;) {
        std::uint64_t x = next();
        if (limit == 0 || x < limit) return x % n;
    }
}

Complex AuditRng::complex_gaussian() {
    const double u1 = 1.0 - uniform01();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    return {r * std::cos(angle), r * std::sin(angle)};
}

QPFunction random_qp_function(AuditRng& rng, std::size_t support, long long coord_max) {
    if (coord_max < 0) throw std::invalid_argument("coordinate bound must be non-negative");
    const std::uint64_t side = static_cast<std::uint64_t>(2 * coord_max + 1);
    const std::uint64_t cells = side * side;
    if (support > cells) throw std::invalid_argument("support larger than the coordinate box");

    std::set<std::uint64_t> seen;
    QPFunction::CoeffMap coeffs;
    while (coeffs.size() < support) {
        std::uint64_t cell = rng.below(cells);
        if (!seen.insert(cell).second) continue;
        OmegaElement k{static_cast<Int>(cell / side) - coord_max, static_cast<Int>(cell % side) - coord_max};
        Complex amp = rng.complex_gaussian();
        if (amp == Complex(0, 0)) amp = Complex(1, 0);
        coeffs.emplace(k, amp);
    }
    return QPFunction(std::move(coeffs));
}

}  // namespace qpnls
