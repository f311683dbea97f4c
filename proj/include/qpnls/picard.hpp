#pragma once

// First nonlinear Picard iterate of i u_t + u_xx = lambda |u|^2 u:
//
//   g(t) = lambda * int_0^t S(t - s) (|S(s) u0|^2 S(s) u0) ds,
//
// whose coefficient at k is
//
//   lambda * exp(-i t k^2) * sum_{k1 - k2 + k3 = k} T(Phi, t) u0(k1) conj(u0(k2)) u0(k3),
//   T(Phi, t) = int_0^t exp(i s Phi) ds,  Phi = 2 (k1 - k)(k3 - k).

#include <cstddef>
#include <utility>
#include <vector>

#include "qpnls/omega.hpp"
#include "qpnls/qp_function.hpp"

namespace qpnls {

inline constexpr double kDefaultNonlinearity = 2.0;

/// int_0^t exp(i s Phi) ds. Exactly t when Phi is the lattice zero.
Complex resonance_time_factor(const OmegaElement& phase, double t);

struct PicardContribution {
    OmegaElement k1, k2, k3;
    OmegaElement phi;
    Complex weight;  // T(Phi, t) u0(k1) conj(u0(k2)) u0(k3), before lambda and the outer phase
};

struct PicardTerm {
    OmegaElement k;
    std::vector<PicardContribution> contributions;
};

/// Per-frequency breakdown of the iterate, sorted by k.
std::vector<PicardTerm> picard_terms(const QPFunction& u0, double t);

QPFunction picard_first_iterate(const QPFunction& u0, double t, double lambda = kDefaultNonlinearity,
                                unsigned workers = 1);

/// The iterate split by whether |Phi| <= phi_bound (first) or not (second).
std::pair<QPFunction, QPFunction> resonant_split(const QPFunction& u0, double t, double lambda,
                                                 const Rational& phi_bound);

/// Composite Simpson integration of the Duhamel integral in s, using only
/// propagate, multiply and conjugate. `steps` must be even.
QPFunction quadrature_oracle(const QPFunction& u0, double t, double lambda, std::size_t steps);

/// Largest coefficient-wise |u_k - v_k| over the union of supports.
double max_coefficient_deviation(const QPFunction& u, const QPFunction& v);

}  // namespace qpnls
