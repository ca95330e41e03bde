#pragma once

#include <cstddef>
#include <vector>

namespace cdw::quadrature {

// Nodes and weights on a line segment (or the reference interval [-1, 1]).
struct Rule1D {
    std::vector<double> nodes;
    std::vector<double> weights;

    [[nodiscard]] std::size_t size() const noexcept { return nodes.size(); }
};

// n-point Gauss-Legendre rule on [-1, 1]; exact for polynomials of degree 2n-1.
[[nodiscard]] Rule1D gauss_legendre(int n);

// Composite Gauss-Legendre on [a, b] with `panels` equal panels of `order` nodes.
[[nodiscard]] Rule1D composite_gauss_legendre(double a, double b, int panels, int order);

// Composite Gauss-Legendre over arbitrary sorted breakpoints.
[[nodiscard]] Rule1D composite_gauss_legendre(const std::vector<double>& breakpoints, int order);

// Tensor product of two 1-D rules; point (i, j) has weight wx[i] * wy[j].
struct TensorRule2D {
    Rule1D x;
    Rule1D y;

    template <class F>
    [[nodiscard]] double integrate(F&& f) const {
        double total = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            double row = 0.0;
            for (std::size_t j = 0; j < y.size(); ++j) row += y.weights[j] * f(x.nodes[i], y.nodes[j]);
            total += x.weights[i] * row;
        }
        return total;
    }
};

}  // namespace cdw::quadrature
