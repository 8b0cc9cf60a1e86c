#include "mgof/numerics/chisq.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace mgof::num {

namespace {

constexpr double eps = 1e-16;

// Series for P(a, x); converges quickly for x < a + 1.
double p_series(double a, double x) {
    double term = 1.0 / a;
    double sum = term;
    for (int n = 1; n < 10000; ++n) {
        term *= x / (a + n);
        sum += term;
        if (std::abs(term) < std::abs(sum) * eps) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Modified Lentz continued fraction for Q(a, x); used for x >= a + 1.
double q_fraction(double a, double x) {
    constexpr double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 10000; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < eps) break;
    }
    return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

void check(double a, double x) {
    if (!(a > 0.0)) throw std::invalid_argument("incomplete gamma needs a > 0");
    if (!(x >= 0.0)) throw std::invalid_argument("incomplete gamma needs x >= 0");
}

}  // namespace

double gamma_p(double a, double x) {
    check(a, x);
    if (x == 0.0) return 0.0;
    if (std::isinf(x)) return 1.0;
    return x < a + 1.0 ? p_series(a, x) : 1.0 - q_fraction(a, x);
}

double gamma_q(double a, double x) {
    check(a, x);
    if (x == 0.0) return 1.0;
    if (std::isinf(x)) return 0.0;
    return x < a + 1.0 ? 1.0 - p_series(a, x) : q_fraction(a, x);
}

double chisq_sf(double x, int df) {
    if (df < 1) throw std::invalid_argument("chi-square needs df >= 1");
    if (std::isnan(x)) throw std::invalid_argument("chi-square statistic is NaN");
    if (x <= 0.0) return 1.0;
    return gamma_q(0.5 * df, 0.5 * x);
}

}  // namespace mgof::num
