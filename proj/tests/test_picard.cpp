#include <doctest.h>

#include <cmath>
#include <set>

#include "qpnls/picard.hpp"
#include "qpnls/random.hpp"
#include "qpnls/resonance.hpp"

using namespace qpnls;

TEST_CASE("time factor") {
    CHECK(resonance_time_factor({0, 0}, 1.5) == Complex(1.5, 0));
    // int_0^t exp(i s Phi) ds for Phi = 1.
    const Complex expected = (std::polar(1.0, 2.0) - 1.0) / Complex(0, 1);
    CHECK(std::abs(resonance_time_factor({1, 0}, 2.0) - expected) <= 1e-15);
    const double phi = std::sqrt(2.0) * 3 - 1;
    const Complex e2 = (std::polar(1.0, -0.7 * phi) - 1.0) / Complex(0, phi);
    CHECK(std::abs(resonance_time_factor({-1, 3}, -0.7) - e2) <= 1e-15);
    // Tiny nonzero phases from Pell conjugates a - c sqrt 2 = 1 / (a + c sqrt 2).
    for (const auto& s : pell_sequence(14)) {
        const OmegaElement small{static_cast<long long>(s.a), -static_cast<long long>(s.c)};
        if (std::fabs(embed(small)) > 1e-8) continue;
        for (double t : {1.0, -2.0, 0.25}) CHECK(std::abs(resonance_time_factor(small, t) - t) <= 1e-7 * std::fabs(t));
    }
}

TEST_CASE("closed form basics") {
    QPFunction one{{OmegaElement{2, -1}, Complex(1, 0)}};
    const QPFunction g = picard_first_iterate(one, 0.8, 1.0);
    REQUIRE(g.size() == 1);
    CHECK(std::abs(g.coefficient({2, -1})) == doctest::Approx(0.8).epsilon(1e-15));
    CHECK(picard_first_iterate(cosine_pair_datum(), 0.0).empty());
}

TEST_CASE("closed form against the quadrature oracle") {
    const QPFunction u0 = cosine_pair_datum();
    CHECK(max_coefficient_deviation(picard_first_iterate(u0, 1.0), quadrature_oracle(u0, 1.0, 2.0, 10000)) <= 1e-8);
    QPFunction one{{OmegaElement{1, 1}, Complex(0.3, -0.4)}};
    CHECK(max_coefficient_deviation(picard_first_iterate(one, 1.0), quadrature_oracle(one, 1.0, 2.0, 10000)) <=
          1e-8);
    CHECK_THROWS(quadrature_oracle(u0, 1.0, 2.0, 7));

    // Supports up to 6, |t| <= 2, coordinates up to 5.
    AuditRng rng(23);
    for (int i = 0; i < 12; ++i) {
        const QPFunction u = random_qp_function(rng, 1 + rng.below(6), 5);
        const double t = 4 * rng.uniform01() - 2;
        const QPFunction closed = picard_first_iterate(u, t, 2.0);
        const QPFunction oracle = quadrature_oracle(u, t, 2.0, 20000);
        const double size = std::max(1.0, std::pow(l2_norm(u), 3));
        CHECK(max_coefficient_deviation(closed, oracle) <= 1e-8 * size);
    }
}

TEST_CASE("oracle is linear in lambda") {
    const QPFunction u0 = cosine_pair_datum();
    const QPFunction a = quadrature_oracle(u0, 1.0, 2.0, 200), b = quadrature_oracle(u0, 1.0, 1.0, 200);
    CHECK(max_coefficient_deviation(a, scale(b, 2.0)) <= 1e-12);
}

TEST_CASE("support and contributions") {
    AuditRng rng(8);
    for (int i = 0; i < 20; ++i) {
        const QPFunction u = random_qp_function(rng, 1 + rng.below(8), 6);
        std::set<OmegaElement> reachable;
        for (const auto& [a, ca] : u.coeffs())
            for (const auto& [b, cb] : u.coeffs())
                for (const auto& [c, cc] : u.coeffs()) reachable.insert(a - b + c);
        const QPFunction g = picard_first_iterate(u, 1.3);
        for (const auto& [k, c] : g.coeffs()) CHECK(reachable.count(k) == 1);
        CHECK(picard_first_iterate(u, 1.3, 2.0, 4) == g);

        const auto terms = picard_terms(u, 1.3);
        std::size_t total = 0;
        for (const auto& term : terms) {
            Complex acc{};
            for (const auto& c : term.contributions) {
                CHECK(c.k1 - c.k2 + c.k3 == term.k);
                CHECK(c.phi == phi(c.k1, c.k3, term.k));
                const Complex w = resonance_time_factor(c.phi, 1.3) * u.coefficient(c.k1) *
                                  std::conj(u.coefficient(c.k2)) * u.coefficient(c.k3);
                CHECK(std::abs(w - c.weight) <= 1e-15 * std::max(1.0, std::abs(w)));
                acc += c.weight;
            }
            total += term.contributions.size();
            const Complex expected = 2.0 * std::polar(1.0, -1.3 * embed(square(term.k))) * acc;
            CHECK(std::abs(g.coefficient(term.k) - expected) <= 1e-12 * std::max(1.0, std::abs(expected)));
        }
        CHECK(total == u.size() * u.size() * u.size());
    }
}

TEST_CASE("resonant split") {
    AuditRng rng(31);
    for (int i = 0; i < 20; ++i) {
        const QPFunction u = random_qp_function(rng, 1 + rng.below(8), 6);
        const QPFunction full = picard_first_iterate(u, 0.9);
        auto [near, far] = resonant_split(u, 0.9, 2.0, Rational(1));
        CHECK(max_coefficient_deviation(plus(near, far), full) <= 1e-12);
        auto [all, none] = resonant_split(u, 0.9, 2.0, Rational(1000000));
        CHECK(none.empty());
        CHECK(max_coefficient_deviation(all, full) <= 1e-12);
    }
    QPFunction one{{OmegaElement{4, 1}, Complex(1, 1)}};
    auto [near, far] = resonant_split(one, 1.0, 2.0, Rational(0));
    CHECK(far.empty());
    CHECK(near.size() == 1);

    // Regression value for cos x + cos sqrt2 x, t = 1, lambda = 2, |Phi| <= 1.
    const QPFunction u0 = cosine_pair_datum();
    auto [n0, f0] = resonant_split(u0, 1.0, 2.0, Rational(1));
    const double fraction = std::pow(l2_norm(n0), 2) / std::pow(l2_norm(picard_first_iterate(u0, 1.0)), 2);
    CHECK(fraction == doctest::Approx(0.710976387599566).epsilon(1e-12));
    CHECK(l2_norm(picard_first_iterate(u0, 1.0)) == doctest::Approx(4.19261482562402).epsilon(1e-12));
}
