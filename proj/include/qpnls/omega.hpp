#pragma once

// Exact arithmetic in the ring Z + sqrt(2) Z.

#include <compare>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace qpnls {

using Int = __int128;

class OverflowError : public std::overflow_error {
public:
    using std::overflow_error::overflow_error;
};

namespace checked {

inline Int add(Int a, Int b) {
    Int r;
    if (__builtin_add_overflow(a, b, &r)) throw OverflowError("128-bit overflow in addition");
    return r;
}

inline Int sub(Int a, Int b) {
    Int r;
    if (__builtin_sub_overflow(a, b, &r)) throw OverflowError("128-bit overflow in subtraction");
    return r;
}

inline Int mul(Int a, Int b) {
    Int r;
    if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("128-bit overflow in multiplication");
    return r;
}

inline Int neg(Int a) { return sub(0, a); }

}  // namespace checked

std::string to_string(Int v);
Int parse_int(std::string_view s);

/// Non-negative exact ratio num/den with den > 0.
struct Rational {
    Int num = 0;
    Int den = 1;

    Rational() = default;
    Rational(Int n, Int d = 1);

    static Rational parse(std::string_view s);  // "1", "1/2"
    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
    std::string str() const;
    friend bool operator==(const Rational&, const Rational&) = default;
};

/// k = kx + sqrt(2) * ky, stored exactly as an integer pair.
struct OmegaElement {
    Int kx = 0;
    Int ky = 0;

    constexpr OmegaElement() = default;
    constexpr OmegaElement(Int x, Int y) : kx(x), ky(y) {}

    bool is_zero() const { return kx == 0 && ky == 0; }

    // Lexicographic on (kx, ky). This is a storage order, not the order of
    // the reals; use cmp() for the latter.
    friend bool operator==(const OmegaElement&, const OmegaElement&) = default;
    friend auto operator<=>(const OmegaElement&, const OmegaElement&) = default;
};

OmegaElement add(const OmegaElement& a, const OmegaElement& b);
OmegaElement sub(const OmegaElement& a, const OmegaElement& b);
OmegaElement neg(const OmegaElement& a);
OmegaElement mul(const OmegaElement& a, const OmegaElement& b);
OmegaElement square(const OmegaElement& k);

/// kx^2 - 2 ky^2, the product of k with its Galois conjugate.
Int norm(const OmegaElement& k);

inline OmegaElement operator+(const OmegaElement& a, const OmegaElement& b) { return add(a, b); }
inline OmegaElement operator-(const OmegaElement& a, const OmegaElement& b) { return sub(a, b); }
inline OmegaElement operator-(const OmegaElement& a) { return neg(a); }
inline OmegaElement operator*(const OmegaElement& a, const OmegaElement& b) { return mul(a, b); }

/// Nearest double to kx + sqrt(2) ky. Near-cancelling inputs go through the
/// conjugate so the result keeps full relative accuracy.
double embed(const OmegaElement& k);

/// Same value in extended precision.
long double embed_extended(const OmegaElement& k);

/// Exact sign of a + sqrt(2) b.
int sign(Int a, Int b);
inline int sign(const OmegaElement& k) { return sign(k.kx, k.ky); }

/// Exact test |k| <= bound, decided in integers.
bool abs_leq(const OmegaElement& k, const Rational& bound);

/// Ordering of the real values of a and b, decided exactly.
std::strong_ordering cmp(const OmegaElement& a, const OmegaElement& b);

/// Text form "kx+ky√2", e.g. "3-2√2". With ascii=true the radical is "r2".
std::string format(const OmegaElement& k, bool ascii = false);

/// Accepts the text form above (either radical spelling, either term may be
/// omitted, "√2" alone means ky = 1) and the pair form "kx,ky".
OmegaElement parse_omega(std::string_view s);

}  // namespace qpnls

template <>
struct std::hash<qpnls::OmegaElement> {
    std::size_t operator()(const qpnls::OmegaElement& k) const noexcept {
        auto lo = [](qpnls::Int v) { return static_cast<std::uint64_t>(v) ^ static_cast<std::uint64_t>(v >> 64); };
        std::uint64_t h = lo(k.kx) * 0x9E3779B97F4A7C15ULL;
        h ^= lo(k.ky) + 0x7F4A7C159E3779B9ULL + (h << 6) + (h >> 2);
        return static_cast<std::size_t>(h);
    }
};
