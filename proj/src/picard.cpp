#include "qpnls/picard.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qpnls/parallel.hpp"
#include "qpnls/phase.hpp"
#include "qpnls/resonance.hpp"
#include "qpnls/schrodinger.hpp"

namespace qpnls {

namespace {

using Triple = std::pair<OmegaElement, PicardContribution>;

// Contributions of every ordered triple in the support, tagged with their
// output frequency, in serial (k1, k2, k3) order.
std::vector<Triple> collect_triples(const QPFunction& u0, double t, unsigned workers) {
    const std::vector<std::pair<OmegaElement, Complex>> terms(u0.coeffs().begin(), u0.coeffs().end());
    const std::size_t n = terms.size();
    std::vector<std::vector<Triple>> partial(chunk_count(n, workers));
    for_each_chunk(n, workers, [&](std::size_t chunk, std::size_t begin, std::size_t end) {
        auto& out = partial[chunk];
        out.reserve((end - begin) * n * n);
        for (std::size_t i = begin; i < end; ++i) {
            const auto& [k1, c1] = terms[i];
            for (const auto& [k2, c2] : terms) {
                for (const auto& [k3, c3] : terms) {
                    const OmegaElement k = k1 - k2 + k3;
                    const OmegaElement ph = phi(k1, k3, k);
                    const Complex w = resonance_time_factor(ph, t) * c1 * std::conj(c2) * c3;
                    out.push_back({k, {k1, k2, k3, ph, w}});
                }
            }
        }
    });
    std::vector<Triple> all;
    all.reserve(n * n * n);
    for (auto& part : partial) all.insert(all.end(), part.begin(), part.end());
    std::stable_sort(all.begin(), all.end(), [](const Triple& a, const Triple& b) { return a.first < b.first; });
    return all;
}

Complex outer_phase(const OmegaElement& k, double t) { return std::polar(1.0, -reduced_phase(t, square(k))); }

}  // namespace

Complex resonance_time_factor(const OmegaElement& phase, double t) {
    if (phase.is_zero()) return Complex(t, 0.0);
    const long double freq = embed_extended(phase);
    // theta / 2 = t Phi / 2. Small arguments are taken directly so a tiny Phi
    // keeps full relative accuracy; large ones are reduced per component.
    long double half = static_cast<long double>(t) / 2 * freq;
    double half_angle = std::fabs(half) < 64 * std::numbers::pi ? static_cast<double>(half)
                                                                 : reduced_phase(t / 2, phase);
    // (exp(i theta) - 1) / (i Phi) = exp(i theta/2) * 2 sin(theta/2) / Phi
    return std::polar(1.0, half_angle) * (2.0 * std::sin(half_angle) / static_cast<double>(freq));
}

std::vector<PicardTerm> picard_terms(const QPFunction& u0, double t) {
    std::vector<PicardTerm> out;
    for (auto& [k, contribution] : collect_triples(u0, t, 1)) {
        if (out.empty() || out.back().k != k) out.push_back({k, {}});
        out.back().contributions.push_back(contribution);
    }
    return out;
}

QPFunction picard_first_iterate(const QPFunction& u0, double t, double lambda, unsigned workers) {
    QPFunction::CoeffMap coeffs;
    const auto triples = collect_triples(u0, t, workers);
    for (std::size_t i = 0; i < triples.size();) {
        const OmegaElement& k = triples[i].first;
        Complex sum{};
        std::size_t j = i;
        for (; j < triples.size() && triples[j].first == k; ++j) sum += triples[j].second.weight;
        coeffs.emplace(k, lambda * outer_phase(k, t) * sum);
        i = j;
    }
    return QPFunction(std::move(coeffs));
}

std::pair<QPFunction, QPFunction> resonant_split(const QPFunction& u0, double t, double lambda,
                                                 const Rational& phi_bound) {
    QPFunction::CoeffMap near, far;
    const auto triples = collect_triples(u0, t, 1);
    for (std::size_t i = 0; i < triples.size();) {
        const OmegaElement& k = triples[i].first;
        Complex near_sum{}, far_sum{};
        bool any_near = false, any_far = false;
        std::size_t j = i;
        for (; j < triples.size() && triples[j].first == k; ++j) {
            const auto& c = triples[j].second;
            if (abs_leq(c.phi, phi_bound)) {
                near_sum += c.weight;
                any_near = true;
            } else {
                far_sum += c.weight;
                any_far = true;
            }
        }
        const Complex factor = lambda * outer_phase(k, t);
        if (any_near) near.emplace(k, factor * near_sum);
        if (any_far) far.emplace(k, factor * far_sum);
        i = j;
    }
    return {QPFunction(std::move(near)), QPFunction(std::move(far))};
}

QPFunction quadrature_oracle(const QPFunction& u0, double t, double lambda, std::size_t steps) {
    if (steps < 2 || steps % 2 != 0) throw std::invalid_argument("Simpson quadrature needs an even step count >= 2");
    const double h = t / static_cast<double>(steps);
    std::map<OmegaElement, std::complex<long double>> acc;
    for (std::size_t j = 0; j <= steps; ++j) {
        const double s = h * static_cast<double>(j);
        const long double w = (j == 0 || j == steps) ? 1.0L : (j % 2 == 1 ? 4.0L : 2.0L);
        const QPFunction v = propagate(u0, s);
        const QPFunction cubic = multiply(multiply(v, conjugate(v)), v);
        const QPFunction evolved = propagate(cubic, t - s);
        for (const auto& [k, c] : evolved.coeffs()) acc[k] += w * std::complex<long double>(c);
    }
    QPFunction::CoeffMap coeffs;
    const long double factor = static_cast<long double>(lambda) * static_cast<long double>(h) / 3.0L;
    for (const auto& [k, c] : acc) coeffs.emplace(k, Complex(c * factor));
    return QPFunction(std::move(coeffs));
}

double max_coefficient_deviation(const QPFunction& u, const QPFunction& v) {
    double worst = 0;
    for (const auto& [k, c] : u.coeffs()) worst = std::max(worst, std::abs(c - v.coefficient(k)));
    for (const auto& [k, c] : v.coeffs()) worst = std::max(worst, std::abs(u.coefficient(k) - c));
    return worst;
}

}  // namespace qpnls
