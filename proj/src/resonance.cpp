#include "qpnls/resonance.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "qpnls/parallel.hpp"

namespace qpnls {

OmegaElement phi(const OmegaElement& k1, const OmegaElement& k3, const OmegaElement& k) {
    return OmegaElement{2, 0} * ((k1 - k) * (k3 - k));
}

ResonanceQuadruple make_quadruple(const OmegaElement& k1, const OmegaElement& k3, const OmegaElement& k) {
    return {k1, k1 + k3 - k, k3, k, phi(k1, k3, k)};
}

bool in_gamma(const ResonanceQuadruple& quad, long long n, const Rational& phi_bound) {
    if (quad.k1 - quad.k2 + quad.k3 != quad.k) return false;
    if (quad.phi != phi(quad.k1, quad.k3, quad.k)) return false;
    if (!in_box(quad.k1, n) || !in_box(quad.k2, n) || !in_box(quad.k3, n)) return false;
    return abs_leq(quad.phi, phi_bound);
}

bool in_reduced_gamma(Int a, Int b, Int c, Int d, long long n, const Rational& bound) {
    for (Int v : {a, b, c, d})
        if (v > n || v < -n) return false;
    using namespace checked;
    OmegaElement value{add(mul(a, b), mul(2, mul(c, d))), add(mul(a, d), mul(b, c))};
    return abs_leq(value, bound);
}

GammaCount gamma_count_bruteforce(const OmegaElement& k, long long n, const GammaOptions& options) {
    if (n < 0) throw std::invalid_argument("N must be non-negative");
    if (options.max_n > kHardMaxN) throw std::invalid_argument("max_n exceeds the supported envelope");
    if (n > options.max_n)
        throw std::invalid_argument("N = " + std::to_string(n) + " exceeds the enumeration cap " +
                                    std::to_string(options.max_n));

    GammaCount result;
    // k2 = k1 + k3 - k cannot reach the box once |k| > 3N.
    if (!in_box(k, 3 * static_cast<Int>(n))) return result;

    const long long side = 2 * n + 1;
    const std::size_t cells = static_cast<std::size_t>(side * side);
    const std::size_t chunks = chunk_count(cells, options.workers);
    std::vector<std::uint64_t> counts(chunks, 0);
    std::vector<std::vector<ResonanceQuadruple>> streams(chunks);
    const Int N = n;

    for_each_chunk(cells, options.workers, [&](std::size_t chunk, std::size_t begin, std::size_t end) {
        std::uint64_t local = 0;
        for (std::size_t cell = begin; cell < end; ++cell) {
            const Int x1 = static_cast<Int>(cell / side) - N;
            const Int y1 = static_cast<Int>(cell % side) - N;
            const Int ax = x1 - k.kx, ay = y1 - k.ky;
            // Rows of k3 for which k2 stays in the box.
            const Int x3_lo = std::max(-N, -N - ax), x3_hi = std::min(N, N - ax);
            const Int y3_lo = std::max(-N, -N - ay), y3_hi = std::min(N, N - ay);
            for (Int x3 = x3_lo; x3 <= x3_hi; ++x3) {
                const Int bx = x3 - k.kx;
                for (Int y3 = y3_lo; y3 <= y3_hi; ++y3) {
                    const Int by = y3 - k.ky;
                    const OmegaElement ph{2 * (ax * bx + 2 * ay * by), 2 * (ax * by + ay * bx)};
                    if (!abs_leq(ph, options.phi_bound)) continue;
                    ++local;
                    if (options.collect) {
                        OmegaElement k1{x1, y1}, k3{x3, y3};
                        streams[chunk].push_back({k1, k1 + k3 - k, k3, k, ph});
                    }
                }
            }
        }
        counts[chunk] = local;
    });

    for (std::size_t c = 0; c < chunks; ++c) {
        result.count += counts[c];
        if (options.collect)
            result.quadruples.insert(result.quadruples.end(), streams[c].begin(), streams[c].end());
    }
    if (options.collect) std::sort(result.quadruples.begin(), result.quadruples.end());
    return result;
}

std::vector<PellSolution> pell_sequence(std::size_t count) {
    std::vector<PellSolution> out;
    out.reserve(count);
    BigInt a = 3, c = 2;
    for (std::size_t i = 0; i < count; ++i) {
        out.push_back({a, c});
        BigInt next_a = 3 * a + 4 * c;
        c = 2 * a + 3 * c;
        a = std::move(next_a);
    }
    return out;
}

std::vector<PellSolution> pell_solutions(const BigInt& max_coord, bool include_trivial) {
    std::vector<PellSolution> out;
    if (include_trivial && max_coord >= 1) out.push_back({1, 0});
    // a > c along the recursion, so a bounds the pair.
    BigInt a = 3, c = 2;
    while (a <= max_coord) {
        out.push_back({a, c});
        BigInt next_a = 3 * a + 4 * c;
        c = 2 * a + 3 * c;
        a = std::move(next_a);
    }
    return out;
}

std::size_t pell_count_estimate(double max_coord) {
    if (max_coord < 1) return 0;
    const double growth = std::log(3.0 + 2.0 * std::sqrt(2.0));
    return static_cast<std::size_t>(std::floor(std::log(max_coord) / growth));
}

std::vector<std::pair<Int, Int>> strip_points(Int max_abs, const Rational& bound) {
    if (max_abs < 0) throw std::invalid_argument("strip max_abs must be non-negative");
    using namespace checked;
    std::vector<std::pair<Int, Int>> out;
    const long double width = static_cast<long double>(bound.num) / static_cast<long double>(bound.den);
    const long double root2 = std::sqrt(2.0L);

    for (Int q = -max_abs; q <= max_abs; ++q) {
        const Int dq = mul(bound.den, q);
        // Lowest p with d p + sqrt(2) d q >= -n and highest with <= n, found by
        // exact sign tests around a floating guess.
        const long double center = -root2 * static_cast<long double>(q);
        Int lo = static_cast<Int>(std::floor(center - width)) - 2;
        while (sign(add(mul(bound.den, lo), bound.num), dq) < 0) ++lo;
        while (sign(add(mul(bound.den, lo - 1), bound.num), dq) >= 0) --lo;
        Int hi = static_cast<Int>(std::ceil(center + width)) + 2;
        while (sign(sub(mul(bound.den, hi), bound.num), dq) > 0) --hi;
        while (sign(sub(mul(bound.den, hi + 1), bound.num), dq) <= 0) ++hi;
        lo = std::max(lo, -max_abs);
        hi = std::min(hi, max_abs);
        for (Int p = lo; p <= hi; ++p) out.emplace_back(p, q);
    }
    return out;
}

std::vector<ResonanceQuadruple> gamma_lower_bound_construct(const OmegaElement& k, long long n,
                                                            const ConstructOptions& options) {
    if (n <= 0) throw std::invalid_argument("N must be positive");
    const Int N = n;
    if (2 * (k.kx < 0 ? -k.kx : k.kx) > N || 2 * (k.ky < 0 ? -k.ky : k.ky) > N)
        throw std::invalid_argument("the construction needs |kx|, |ky| <= N/2");

    // Phi = 2 (p + sqrt(2) q), so the strip half-width is phi_bound / 2.
    const Rational strip_bound(options.phi_bound.num, checked::mul(2, options.phi_bound.den));

    std::vector<ResonanceQuadruple> out;
    // Any solution with k + (±a, ±c) in the box takes part; that needs a <= 3N/2.
    for (const auto& sol : pell_solutions(BigInt(2 * n), options.include_trivial_pell)) {
        const Int a0 = static_cast<Int>(static_cast<long long>(sol.a));
        const Int c0 = static_cast<Int>(static_cast<long long>(sol.c));
        std::vector<std::pair<Int, Int>> variants;
        for (Int sa : {1, -1})
            for (Int sc : {1, -1}) variants.emplace_back(sa * a0, sc * c0);
        std::sort(variants.begin(), variants.end());
        variants.erase(std::unique(variants.begin(), variants.end()), variants.end());

        for (auto [a, c] : variants) {
            const Int abs_a = a < 0 ? -a : a, abs_c = c < 0 ? -c : c;
            // |b|, |d| <= 3N/2 when k3 is in the box, which bounds |p| and |q|.
            const Int reach = checked::mul(abs_a + 2 * abs_c, 2 * N);
            const OmegaElement k1 = k + OmegaElement{a, c};
            if (!in_box(k1, N)) continue;
            for (auto [p, q] : strip_points(reach, strip_bound)) {
                // Inverse of [[a, 2c], [c, a]], which has determinant a^2 - 2c^2 = 1.
                using namespace checked;
                const Int b = sub(mul(a, p), mul(2, mul(c, q)));
                const Int d = add(mul(-c, p), mul(a, q));
                const OmegaElement k3 = k + OmegaElement{b, d};
                if (!in_box(k3, N)) continue;
                ResonanceQuadruple quad = make_quadruple(k1, k3, k);
                if (!in_box(quad.k2, N)) continue;
                if (!in_gamma(quad, n, options.phi_bound))
                    throw std::logic_error("constructed quadruple failed Gamma membership: " + format(k1) + ", " +
                                           format(k3));
                out.push_back(quad);
            }
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace qpnls
