#include "qpnls/omega.hpp"

#include <algorithm>
#include <cmath>

namespace qpnls {

namespace {

constexpr long double kSqrt2L = 1.414213562373095048801688724209698079L;
constexpr std::string_view kRadicalUtf8 = "\xE2\x88\x9A" "2";
constexpr std::string_view kRadicalAscii = "r2";

Int gcd(Int a, Int b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        Int t = a % b;
        a = b;
        b = t;
    }
    return a;
}

}  // namespace

std::string to_string(Int v) {
    if (v == 0) return "0";
    bool negative = v < 0;
    // Work with the negative magnitude so INT128_MIN is representable.
    Int m = negative ? v : -v;
    std::string digits;
    while (m != 0) {
        digits.push_back(static_cast<char>('0' - static_cast<int>(m % 10)));
        m /= 10;
    }
    if (negative) digits.push_back('-');
    std::reverse(digits.begin(), digits.end());
    return digits;
}

Int parse_int(std::string_view s) {
    if (s.empty()) throw std::invalid_argument("empty integer");
    bool negative = false;
    std::size_t i = 0;
    if (s[0] == '+' || s[0] == '-') {
        negative = s[0] == '-';
        i = 1;
    }
    if (i == s.size()) throw std::invalid_argument("malformed integer '" + std::string(s) + "'");
    Int v = 0;
    for (; i < s.size(); ++i) {
        char ch = s[i];
        if (ch < '0' || ch > '9') throw std::invalid_argument("malformed integer '" + std::string(s) + "'");
        v = checked::sub(checked::mul(v, 10), ch - '0');
    }
    return negative ? v : checked::neg(v);
}

Rational::Rational(Int n, Int d) : num(n), den(d) {
    if (den <= 0) throw std::invalid_argument("rational denominator must be positive");
    if (num < 0) throw std::invalid_argument("rational bound must be non-negative");
    Int g = gcd(num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
}

Rational Rational::parse(std::string_view s) {
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        return Rational(parse_int(s.substr(0, slash)), parse_int(s.substr(slash + 1)));
    }
    if (auto dot = s.find('.'); dot != std::string_view::npos) {
        std::string digits(s.substr(0, dot));
        std::string_view frac = s.substr(dot + 1);
        digits += frac;
        Int den = 1;
        for (std::size_t i = 0; i < frac.size(); ++i) den = checked::mul(den, 10);
        if (digits.empty() || digits == "+" || digits == "-") digits += "0";
        return Rational(parse_int(digits), den);
    }
    return Rational(parse_int(s), 1);
}

std::string Rational::str() const {
    if (den == 1) return to_string(num);
    return to_string(num) + "/" + to_string(den);
}

OmegaElement add(const OmegaElement& a, const OmegaElement& b) {
    return {checked::add(a.kx, b.kx), checked::add(a.ky, b.ky)};
}

OmegaElement sub(const OmegaElement& a, const OmegaElement& b) {
    return {checked::sub(a.kx, b.kx), checked::sub(a.ky, b.ky)};
}

OmegaElement neg(const OmegaElement& a) { return {checked::neg(a.kx), checked::neg(a.ky)}; }

// (a + √2 b)(c + √2 d) = (ac + 2bd) + √2 (ad + bc)
OmegaElement mul(const OmegaElement& a, const OmegaElement& b) {
    Int x = checked::add(checked::mul(a.kx, b.kx), checked::mul(2, checked::mul(a.ky, b.ky)));
    Int y = checked::add(checked::mul(a.kx, b.ky), checked::mul(a.ky, b.kx));
    return {x, y};
}

OmegaElement square(const OmegaElement& k) {
    Int x = checked::add(checked::mul(k.kx, k.kx), checked::mul(2, checked::mul(k.ky, k.ky)));
    Int y = checked::mul(2, checked::mul(k.kx, k.ky));
    return {x, y};
}

Int norm(const OmegaElement& k) {
    return checked::sub(checked::mul(k.kx, k.kx), checked::mul(2, checked::mul(k.ky, k.ky)));
}

long double embed_extended(const OmegaElement& k) {
    auto x = static_cast<long double>(k.kx);
    auto y = static_cast<long double>(k.ky);
    bool cancels = (k.kx > 0 && k.ky < 0) || (k.kx < 0 && k.ky > 0);
    if (!cancels) return x + kSqrt2L * y;
    try {
        // kx + √2 ky = norm / (kx - √2 ky), and the denominator does not cancel.
        return static_cast<long double>(norm(k)) / (x - kSqrt2L * y);
    } catch (const OverflowError&) {
        return x + kSqrt2L * y;
    }
}

double embed(const OmegaElement& k) { return static_cast<double>(embed_extended(k)); }

int sign(Int a, Int b) {
    if (a >= 0 && b >= 0) return (a == 0 && b == 0) ? 0 : 1;
    if (a <= 0 && b <= 0) return -1;
    // Opposite signs: compare a^2 with 2 b^2. Equality would make √2 rational.
    Int a2 = checked::mul(a, a);
    Int b2 = checked::mul(2, checked::mul(b, b));
    if (a > 0) return a2 > b2 ? 1 : -1;
    return b2 > a2 ? 1 : -1;
}

bool abs_leq(const OmegaElement& k, const Rational& bound) {
    // |kx + √2 ky| <= n/d  <=>  -n <= d kx + √2 d ky <= n
    Int x = checked::mul(bound.den, k.kx);
    Int y = checked::mul(bound.den, k.ky);
    return sign(checked::sub(x, bound.num), y) <= 0 && sign(checked::add(x, bound.num), y) >= 0;
}

std::strong_ordering cmp(const OmegaElement& a, const OmegaElement& b) {
    int s = sign(sub(a, b));
    if (s < 0) return std::strong_ordering::less;
    if (s > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

std::string format(const OmegaElement& k, bool ascii) {
    std::string out = to_string(k.kx);
    if (k.ky < 0) {
        out += "-";
        out += to_string(k.ky).substr(1);
    } else {
        out += "+";
        out += to_string(k.ky);
    }
    out += ascii ? kRadicalAscii : kRadicalUtf8;
    return out;
}

OmegaElement parse_omega(std::string_view text) {
    std::string s;
    for (char ch : text)
        if (ch != ' ') s.push_back(ch);
    if (s.empty()) throw std::invalid_argument("empty lattice element");

    if (auto comma = s.find(','); comma != std::string::npos) {
        return {parse_int(std::string_view(s).substr(0, comma)), parse_int(std::string_view(s).substr(comma + 1))};
    }

    std::size_t rad_len = 0;
    if (s.ends_with(kRadicalUtf8)) rad_len = kRadicalUtf8.size();
    else if (s.ends_with(kRadicalAscii)) rad_len = kRadicalAscii.size();
    if (rad_len == 0) return {parse_int(s), 0};

    std::string_view body = std::string_view(s).substr(0, s.size() - rad_len);
    if (body.ends_with('*')) body.remove_suffix(1);

    std::size_t split = std::string_view::npos;
    for (std::size_t i = body.size(); i-- > 1;) {
        if (body[i] == '+' || body[i] == '-') {
            split = i;
            break;
        }
    }
    std::string_view x_part = split == std::string_view::npos ? std::string_view{} : body.substr(0, split);
    std::string_view y_part = split == std::string_view::npos ? body : body.substr(split);

    Int ky;
    if (y_part.empty() || y_part == "+") ky = 1;
    else if (y_part == "-") ky = -1;
    else ky = parse_int(y_part);
    Int kx = x_part.empty() ? 0 : parse_int(x_part);
    return {kx, ky};
}

}  // namespace qpnls
