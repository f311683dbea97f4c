#include "qpnls/phase.hpp"

namespace qpnls {

namespace {

using Quad = __float128;

// Three-double splits of 2*pi and sqrt(2); their sum carries ~160 bits.
const Quad kTwoPi = Quad(6.283185307179586) + Quad(2.4492935982947064e-16) + Quad(-5.989539619436679e-33);
const Quad kPi = kTwoPi / 2;
const Quad kSqrt2 = Quad(1.4142135623730951) + Quad(-9.667293313452913e-17) + Quad(4.1386753086994136e-33);

double reduce(Quad x) {
    Quad turns = x / kTwoPi;
    Int whole = static_cast<Int>(turns);  // truncates toward zero
    Quad r = x - static_cast<Quad>(whole) * kTwoPi;
    while (r >= kPi) r -= kTwoPi;
    while (r < -kPi) r += kTwoPi;
    return static_cast<double>(r);
}

}  // namespace

double reduced_phase(double t, Int n) {
    if (t == 0 || n == 0) return 0.0;
    return reduce(static_cast<Quad>(t) * static_cast<Quad>(n));
}

double reduced_phase_sqrt2(double t, Int n) {
    if (t == 0 || n == 0) return 0.0;
    return reduce(static_cast<Quad>(t) * static_cast<Quad>(n) * kSqrt2);
}

}  // namespace qpnls
