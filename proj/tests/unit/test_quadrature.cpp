#include <cmath>
#include <numbers>

#include "doctest.h"
#include "cdw/errors.hpp"
#include "cdw/quadrature.hpp"

using namespace cdw::quadrature;
using std::numbers::pi;

TEST_SUITE("quadrature") {

TEST_CASE("Gauss-Legendre is exact to degree 2n-1") {
    for (int n : {1, 2, 3, 5, 8, 20, 40}) {
        const auto r = gauss_legendre(n);
        REQUIRE(r.size() == static_cast<std::size_t>(n));
        for (int deg = 0; deg <= 2 * n - 1; ++deg) {
            double s = 0.0;
            for (std::size_t i = 0; i < r.size(); ++i) s += r.weights[i] * std::pow(r.nodes[i], deg);
            const double exact = deg % 2 ? 0.0 : 2.0 / (deg + 1);
            CHECK(s == doctest::Approx(exact).epsilon(1e-13).scale(1.0));
        }
    }
}

TEST_CASE("nodes are sorted and symmetric") {
    const auto r = gauss_legendre(9);
    for (std::size_t i = 0; i + 1 < r.size(); ++i) CHECK(r.nodes[i] < r.nodes[i + 1]);
    for (std::size_t i = 0; i < r.size(); ++i) {
        CHECK(r.nodes[i] == doctest::Approx(-r.nodes[r.size() - 1 - i]).epsilon(1e-15).scale(1.0));
        CHECK(r.weights[i] > 0.0);
    }
    CHECK(r.nodes[4] == 0.0);
}

TEST_CASE("composite rule integrates a Gaussian") {
    const auto r = composite_gauss_legendre(-20 * pi, 20 * pi, 160, 8);
    double s = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) s += r.weights[i] * std::exp(-2 * r.nodes[i] * r.nodes[i]);
    CHECK(s == doctest::Approx(std::sqrt(pi / 2)).epsilon(1e-13));
}

TEST_CASE("breakpoint rule matches uniform panels") {
    const auto a = composite_gauss_legendre(0.0, 3.0, 3, 6);
    const auto b = composite_gauss_legendre(std::vector<double>{0.0, 1.0, 2.0, 3.0}, 6);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a.nodes[i] == doctest::Approx(b.nodes[i]).epsilon(1e-15));
        CHECK(a.weights[i] == doctest::Approx(b.weights[i]).epsilon(1e-15));
    }
}

TEST_CASE("tensor rule integrates a separable product") {
    TensorRule2D t{composite_gauss_legendre(0.0, 1.0, 2, 5), composite_gauss_legendre(0.0, pi, 4, 5)};
    const double v = t.integrate([](double x, double y) { return x * x * std::sin(y); });
    CHECK(v == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("invalid rules are rejected") {
    CHECK_THROWS_AS((void)gauss_legendre(0), cdw::DomainError);
    CHECK_THROWS_AS((void)composite_gauss_legendre(1.0, 0.0, 2, 4), cdw::DomainError);
    CHECK_THROWS_AS((void)composite_gauss_legendre(0.0, 1.0, 0, 4), cdw::DomainError);
    CHECK_THROWS_AS((void)composite_gauss_legendre(std::vector<double>{0.0, 2.0, 1.0}, 4), cdw::DomainError);
}

}
