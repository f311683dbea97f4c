#pragma once

// Reduction of large oscillation phases modulo 2*pi in quad precision.
// Valid while |t| * |n| stays below ~1e12 with sub-1e-15 absolute error.

#include "qpnls/omega.hpp"

namespace qpnls {

/// t * n reduced to [-pi, pi).
double reduced_phase(double t, Int n);

/// t * n * sqrt(2) reduced to [-pi, pi).
double reduced_phase_sqrt2(double t, Int n);

/// t * embed(k) reduced to [-2pi, 2pi); each component is reduced separately.
inline double reduced_phase(double t, const OmegaElement& k) {
    return reduced_phase(t, k.kx) + reduced_phase_sqrt2(t, k.ky);
}

}  // namespace qpnls
