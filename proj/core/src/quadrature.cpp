#include "cdw/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "cdw/errors.hpp"

namespace cdw::quadrature {

Rule1D gauss_legendre(int n) {
    require(n >= 1, "gauss_legendre: order must be >= 1");
    Rule1D rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        // Tricomi initial guess, then Newton on P_n.
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            double p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        // recompute derivative at the converged root
        double p0 = 1.0;
        double p1 = x;
        for (int k = 2; k <= n; ++k) {
            const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
    return rule;
}

Rule1D composite_gauss_legendre(const std::vector<double>& breakpoints, int order) {
    require(breakpoints.size() >= 2, "composite_gauss_legendre: need at least 2 breakpoints");
    const Rule1D ref = gauss_legendre(order);
    Rule1D rule;
    rule.nodes.reserve((breakpoints.size() - 1) * ref.size());
    rule.weights.reserve((breakpoints.size() - 1) * ref.size());
    for (std::size_t p = 0; p + 1 < breakpoints.size(); ++p) {
        const double a = breakpoints[p];
        const double b = breakpoints[p + 1];
        require(b > a, "composite_gauss_legendre: breakpoints must be strictly increasing");
        const double mid = 0.5 * (a + b);
        const double half = 0.5 * (b - a);
        for (std::size_t k = 0; k < ref.size(); ++k) {
            rule.nodes.push_back(mid + half * ref.nodes[k]);
            rule.weights.push_back(half * ref.weights[k]);
        }
    }
    return rule;
}

Rule1D composite_gauss_legendre(double a, double b, int panels, int order) {
    require(panels >= 1, "composite_gauss_legendre: panels must be >= 1");
    require(b > a, "composite_gauss_legendre: empty interval");
    std::vector<double> bp(panels + 1);
    for (int p = 0; p <= panels; ++p) bp[p] = a + (b - a) * p / panels;
    bp.back() = b;
    return composite_gauss_legendre(bp, order);
}

}  // namespace cdw::quadrature
