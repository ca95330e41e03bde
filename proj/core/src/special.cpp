#include "cdw/special.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace cdw::special {

namespace {

constexpr double kSeriesCutoff = 3.0;

// erf(x) = 2/sqrt(pi) exp(-x^2) sum_n 2^n x^(2n+1) / (1*3*...*(2n+1)).
// All terms positive, so there is no cancellation on [0, 3].
double erf_series(double x) {
    const double x2 = x * x;
    double term = x;
    double sum = x;
    for (int n = 1; n < 200; ++n) {
        term *= 2.0 * x2 / (2.0 * n + 1.0);
        sum += term;
        if (term < sum * std::numeric_limits<double>::epsilon() * 0.25) break;
    }
    return 2.0 / std::sqrt(std::numbers::pi) * std::exp(-x2) * sum;
}

// erfc(x) = exp(-x^2)/sqrt(pi) * 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + ...)))),
// evaluated with the modified Lentz algorithm. x > 0.
double erfc_continued_fraction(double x) {
    constexpr double tiny = 1e-300;
    double f = x;
    double c = x;
    double d = 0.0;
    for (int k = 1; k < 500; ++k) {
        const double a = 0.5 * k;
        d = x + a * d;
        if (std::abs(d) < tiny) d = tiny;
        c = x + a / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = c * d;
        f *= delta;
        if (std::abs(delta - 1.0) < 1e-16) break;
    }
    return std::exp(-x * x) / (std::sqrt(std::numbers::pi) * f);
}

}  // namespace

double erf(double x) {
    if (std::isnan(x)) return x;
    const double ax = std::abs(x);
    double v;
    if (ax <= kSeriesCutoff)
        v = erf_series(ax);
    else
        v = 1.0 - erfc_continued_fraction(ax);
    return x < 0.0 ? -v : v;
}

double erfc(double x) {
    if (std::isnan(x)) return x;
    if (x < 0.0) return 2.0 - erfc(-x);
    if (x <= kSeriesCutoff) return 1.0 - erf_series(x);
    return erfc_continued_fraction(x);
}

}  // namespace cdw::special
