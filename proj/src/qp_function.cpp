#include "qpnls/qp_function.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qpnls {

namespace {

void drop_zeros(QPFunction::CoeffMap& m) {
    std::erase_if(m, [](const auto& kv) { return kv.second == Complex(0.0, 0.0); });
}

}  // namespace

QPFunction::QPFunction(CoeffMap coeffs) : coeffs_(std::move(coeffs)) { drop_zeros(coeffs_); }

QPFunction::QPFunction(std::initializer_list<std::pair<const OmegaElement, Complex>> terms) {
    for (const auto& [k, c] : terms) coeffs_[k] += c;
    drop_zeros(coeffs_);
}

Complex QPFunction::coefficient(const OmegaElement& k) const {
    auto it = coeffs_.find(k);
    return it == coeffs_.end() ? Complex{} : it->second;
}

std::vector<OmegaElement> QPFunction::support() const {
    std::vector<OmegaElement> out;
    out.reserve(coeffs_.size());
    for (const auto& kv : coeffs_) out.push_back(kv.first);
    return out;
}

double QPFunction::max_abs_frequency() const {
    double m = 0;
    for (const auto& kv : coeffs_) m = std::max(m, std::abs(embed(kv.first)));
    return m;
}

Complex QPFunction::operator()(double x) const { return evaluate(*this, x); }

QPFunction cosine_pair_datum() {
    return QPFunction{{{1, 0}, 0.5}, {{-1, 0}, 0.5}, {{0, 1}, 0.5}, {{0, -1}, 0.5}};
}

Complex evaluate(const QPFunction& u, double x) {
    Complex sum{};
    for (const auto& [k, c] : u.coeffs()) sum += c * std::polar(1.0, embed(k) * x);
    return sum;
}

QPFunction multiply(const QPFunction& u, const QPFunction& v) {
    QPFunction::CoeffMap w;
    for (const auto& [l, a] : u.coeffs())
        for (const auto& [m, b] : v.coeffs()) w[l + m] += a * b;
    return QPFunction(std::move(w));
}

QPFunction conjugate(const QPFunction& u) {
    QPFunction::CoeffMap w;
    for (const auto& [k, c] : u.coeffs()) w.emplace(-k, std::conj(c));
    return QPFunction(std::move(w));
}

QPFunction scale(const QPFunction& u, Complex factor) {
    QPFunction::CoeffMap w;
    for (const auto& [k, c] : u.coeffs()) w.emplace(k, c * factor);
    return QPFunction(std::move(w));
}

QPFunction plus(const QPFunction& u, const QPFunction& v) {
    QPFunction::CoeffMap w = u.coeffs();
    for (const auto& [k, c] : v.coeffs()) w[k] += c;
    return QPFunction(std::move(w));
}

double l2_norm(const QPFunction& u) {
    double sum = 0;
    for (const auto& kv : u.coeffs()) sum += std::norm(kv.second);
    return std::sqrt(sum);
}

double even_lp_norm(const QPFunction& u, int p) {
    if (p < 2 || p % 2 != 0) throw std::invalid_argument("even_lp_norm needs an even p >= 2");
    QPFunction power = u;
    for (int i = 1; i < p / 2; ++i) power = multiply(power, u);
    return std::pow(l2_norm(power), 2.0 / p);
}

Complex ergodic_average(const RealFunction& f, double half_width, std::size_t steps) {
    if (steps < 2) throw std::invalid_argument("ergodic_average needs at least 2 steps");
    if (!(half_width > 0)) throw std::invalid_argument("ergodic_average needs L > 0");
    const long double a = -static_cast<long double>(half_width);
    const long double h = 2.0L * half_width / static_cast<long double>(steps);
    std::complex<long double> acc = 0.5L * std::complex<long double>(f(-half_width));
    for (std::size_t j = 1; j < steps; ++j) {
        acc += std::complex<long double>(f(static_cast<double>(a + h * static_cast<long double>(j))));
    }
    acc += 0.5L * std::complex<long double>(f(half_width));
    return Complex(acc / static_cast<long double>(steps));
}

Complex fourier_coefficient_estimate(const RealFunction& f, const OmegaElement& k, double half_width,
                                     std::size_t steps) {
    const double freq = embed(k);
    return ergodic_average([&](double x) { return f(x) * std::polar(1.0, -freq * x); }, half_width, steps);
}

LpEstimate lp_norm_estimate(const QPFunction& u, double p, double half_width, std::size_t steps) {
    if (!(p >= 1)) throw std::invalid_argument("lp_norm_estimate needs p >= 1");
    if (steps < 2) throw std::invalid_argument("lp_norm_estimate needs at least 2 steps");
    auto at = [&](double L, std::size_t n) {
        Complex mean = ergodic_average([&](double x) { return Complex(std::pow(std::abs(evaluate(u, x)), p)); }, L,
                                       std::max<std::size_t>(n, 2));
        return std::pow(std::max(mean.real(), 0.0), 1.0 / p);
    };
    return {at(half_width, steps), at(half_width / 4, steps / 4), at(half_width / 2, steps / 2)};
}

std::size_t default_steps(double max_frequency, double half_width) {
    double n = std::ceil(2.0 * half_width * max_frequency / 0.1);
    return std::max<std::size_t>(2, static_cast<std::size_t>(n));
}

}  // namespace qpnls
