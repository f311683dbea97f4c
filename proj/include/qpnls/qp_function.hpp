#pragma once

// Quasiperiodic trigonometric polynomials u(x) = sum_k u_k exp(i k x) with
// frequencies k in Z + sqrt(2) Z.

#include <complex>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <map>
#include <utility>
#include <vector>

#include "qpnls/omega.hpp"

namespace qpnls {

using Complex = std::complex<double>;

class QPFunction {
public:
    using CoeffMap = std::map<OmegaElement, Complex>;

    QPFunction() = default;
    explicit QPFunction(CoeffMap coeffs);
    QPFunction(std::initializer_list<std::pair<const OmegaElement, Complex>> terms);

    const CoeffMap& coeffs() const { return coeffs_; }
    Complex coefficient(const OmegaElement& k) const;
    std::vector<OmegaElement> support() const;
    std::size_t size() const { return coeffs_.size(); }
    bool empty() const { return coeffs_.empty(); }

    /// Largest |k| over the frequency set; 0 for the empty function.
    double max_abs_frequency() const;

    Complex operator()(double x) const;

    friend bool operator==(const QPFunction&, const QPFunction&) = default;

private:
    CoeffMap coeffs_;  // never holds an exact zero
};

/// cos(x) + cos(sqrt(2) x).
QPFunction cosine_pair_datum();

Complex evaluate(const QPFunction& u, double x);

/// Cauchy product over the lattice. Exact zeros are dropped, nothing else.
QPFunction multiply(const QPFunction& u, const QPFunction& v);

/// Coefficients of the pointwise complex conjugate: conj(u_{-k}) at k.
QPFunction conjugate(const QPFunction& u);

QPFunction scale(const QPFunction& u, Complex factor);
QPFunction plus(const QPFunction& u, const QPFunction& v);

/// (sum_k |u_k|^2)^(1/2)
double l2_norm(const QPFunction& u);

/// Exact mean-value norm for even integer p, (||u^(p/2)||_2)^(2/p).
double even_lp_norm(const QPFunction& u, int p);

using RealFunction = std::function<Complex(double)>;

/// Trapezoid approximation of (1/2L) * integral_{-L}^{L} f(x) dx on `steps`
/// equal subintervals.
Complex ergodic_average(const RealFunction& f, double half_width, std::size_t steps);

Complex fourier_coefficient_estimate(const RealFunction& f, const OmegaElement& k, double half_width,
                                     std::size_t steps);

struct LpEstimate {
    double value = 0;       // at L
    double at_quarter = 0;  // at L/4
    double at_half = 0;     // at L/2
};

LpEstimate lp_norm_estimate(const QPFunction& u, double p, double half_width, std::size_t steps);

/// Step count with max_frequency * dx <= 0.1 on [-L, L].
std::size_t default_steps(double max_frequency, double half_width);

}  // namespace qpnls
