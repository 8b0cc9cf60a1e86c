#include "mgof/numerics/rational.hpp"

#include <stdexcept>

namespace mgof::num {

Rational make_rational(long long numerator, long long denominator) {
    if (denominator == 0) throw std::invalid_argument("zero denominator");
    return Rational(BigInt(numerator), BigInt(denominator));
}

Rational parse_rational(std::string_view text) {
    auto digits = [](std::string_view s) {
        if (s.starts_with('-') || s.starts_with('+')) s.remove_prefix(1);
        return !s.empty() && s.find_first_not_of("0123456789") == std::string_view::npos;
    };
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        const auto num = text.substr(0, slash);
        const auto den = text.substr(slash + 1);
        if (!digits(num) || !digits(den)) throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
        BigInt d{std::string(den)};
        if (d == 0) throw std::invalid_argument("zero denominator");
        return Rational(BigInt(std::string(num)), d);
    }
    if (auto dot = text.find('.'); dot != std::string_view::npos) {
        const auto whole = text.substr(0, dot);
        const auto frac = text.substr(dot + 1);
        if (!(whole.empty() || whole == "-" || digits(whole)) || !(frac.empty() || digits(frac)) ||
            (whole.empty() && frac.empty()))
            throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
        const bool negative = whole.starts_with('-');
        BigInt scale = 1;
        for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
        BigInt w = (whole.empty() || whole == "-") ? BigInt(0) : BigInt(std::string(whole));
        if (negative) w = -w;
        BigInt f = frac.empty() ? BigInt(0) : BigInt(std::string(frac));
        Rational q(w * scale + f, scale);
        return negative ? Rational(-q) : q;
    }
    if (!digits(text)) throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
    return Rational(BigInt(std::string(text)));
}

std::string to_string(const Rational& q) { return q.str(); }

double to_double(const Rational& q) { return q.convert_to<double>(); }

}  // namespace mgof::num
