#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <sstream>
#include <vector>

#include "doctest.h"
#include "cdw/chain_evolver.hpp"
#include "cdw/errors.hpp"

using namespace cdw;
using namespace cdw::evolver;
using std::numbers::pi;
using C = std::complex<double>;

namespace {

const C I{0.0, 1.0};

model::PhysicalParams free_params() {
    model::PhysicalParams p;
    p.mu_E = 0.0;
    p.omega_p_sq = 0.0;
    return p;
}

ComplexField constant_field(std::size_t n, C v, double dx = 0.1) {
    ComplexField f;
    f.values.assign(n, v);
    f.dx = dx;
    f.x0 = -0.5 * dx * static_cast<double>(n - 1);
    return f;
}

ComplexField random_field(std::size_t n, std::mt19937_64& rng, double dx = 0.05) {
    std::normal_distribution<double> g;
    ComplexField f;
    f.dx = dx;
    f.x0 = -1.0;
    for (std::size_t j = 0; j < n; ++j) f.values.emplace_back(g(rng), g(rng));
    return f;
}

using Matrix = std::vector<std::vector<C>>;

Matrix zeros(std::size_t n) { return Matrix(n, std::vector<C>(n, 0.0)); }

std::vector<C> apply(const Matrix& m, const std::vector<C>& v) {
    std::vector<C> out(v.size(), 0.0);
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j) out[i] += m[i][j] * v[j];
    return out;
}

// Interior rows of the printed two-level Laplacian written as explicit
// matrices: A acts on level n (c_{j+1} - c_{j-1} - 2 c_j), B on level n+1.
void printed_operators(std::size_t n, Matrix& A, Matrix& B) {
    A = zeros(n);
    B = zeros(n);
    for (std::size_t j = 1; j + 1 < n; ++j) {
        A[j][j + 1] += 1.0;
        A[j][j - 1] -= 1.0;
        A[j][j] -= 2.0;
        B[j][j + 1] += 1.0;
        B[j][j - 1] += 1.0;
        B[j][j] -= 2.0;
    }
}

// Dense Gaussian elimination with partial pivoting.
std::vector<C> dense_solve(Matrix m, std::vector<C> b) {
    const std::size_t n = b.size();
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::abs(m[i][k]) > std::abs(m[piv][k])) piv = i;
        std::swap(m[k], m[piv]);
        std::swap(b[k], b[piv]);
        for (std::size_t i = k + 1; i < n; ++i) {
            const C f = m[i][k] / m[k][k];
            for (std::size_t j = k; j < n; ++j) m[i][j] -= f * m[k][j];
            b[i] -= f * b[k];
        }
    }
    std::vector<C> x(n);
    for (std::size_t i = n; i-- > 0;) {
        C s = b[i];
        for (std::size_t j = i + 1; j < n; ++j) s -= m[i][j] * x[j];
        x[i] = s / m[i][i];
    }
    return x;
}

double max_diff(const std::vector<C>& a, const std::vector<C>& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

Trajectory make_traj(std::vector<double> m, std::vector<double> nrm = {}) {
    Trajectory t;
    if (nrm.empty()) nrm.assign(m.size(), 1.0);
    for (std::size_t i = 0; i < m.size(); ++i) t.times.push_back(static_cast<double>(i));
    t.mean_phase = std::move(m);
    t.norm = std::move(nrm);
    return t;
}

}  // namespace

TEST_SUITE("chain_evolver") {

TEST_CASE("scheme names round-trip") {
    for (auto k : {SchemeKind::CrankNicolsonAsPrinted, SchemeKind::DufortFrankelAsPrinted,
                   SchemeKind::CrankNicolsonStandard, SchemeKind::DufortFrankelStandard})
        CHECK(scheme_from_string(to_string(k)) == k);
    CHECK_THROWS_AS((void)scheme_from_string("leapfrog"), DomainError);
}

TEST_CASE("field validation") {
    ComplexField f = constant_field(2, 1.0);
    CHECK_THROWS_AS(f.validate(), DomainError);
    f = constant_field(5, 1.0);
    f.dx = 0.0;
    CHECK_THROWS_AS(f.validate(), DomainError);
    f = constant_field(5, 1.0);
    f.values[2] = C(NAN, 0.0);
    CHECK_THROWS_AS(f.validate(), DomainError);

    const auto a = constant_field(5, 1.0);
    const auto b = constant_field(6, 1.0);
    CHECK_THROWS_AS((void)step_dufort_frankel_printed(a, b, free_params(), 0.1), DomainError);
}

TEST_CASE("printed Crank-Nicolson: trivial fields") {
    const auto p = free_params();
    const auto c = constant_field(9, C(0.3, -0.7));
    const auto out = step_crank_nicolson_printed(c, c, p, 0.01);
    // the printed stencil keeps -2 c_j from the explicit half, so a flat field drifts
    const double coef = p.hbar / (p.D * c.dx * c.dx);
    const C flat = c.values[0] + C(0.0, 0.01) * coef * (-2.0) * c.values[0];
    CHECK(out.values.front() == c.values.front());
    CHECK(out.values.back() == c.values.back());
    for (std::size_t j = 1; j + 1 < c.size(); ++j) CHECK(std::abs(out.values[j] - flat) < 1e-15);

    const auto z = constant_field(9, 0.0);
    CHECK(max_diff(step_crank_nicolson_printed(z, z, p, 0.01).values, z.values) == 0.0);
}

TEST_CASE("printed Crank-Nicolson matches a matrix-form evaluation") {
    std::mt19937_64 rng(11);
    auto p = free_params();
    p.mu_E = 0.3;
    p.omega_p_sq = 2.0;
    p.theta = 0.4;
    p.D = 1.7;
    p.hbar = 0.8;
    const std::size_t n = 12;
    const auto prev = random_field(n, rng);
    const auto curr = random_field(n, rng);
    const double dt = 1e-4;
    Matrix A, B;
    printed_operators(n, A, B);
    const double coef = p.hbar / (p.D * curr.dx * curr.dx);

    for (int sweeps : {1, 2, 3}) {
        std::vector<C> iterate = curr.values;
        for (int s = 0; s < sweeps; ++s) {
            const auto Ac = apply(A, curr.values);
            const auto Bn = apply(B, iterate);
            std::vector<C> next = curr.values;
            for (std::size_t j = 1; j + 1 < n; ++j) {
                const double V = model::washboard_potential(curr.x(j), p);
                next[j] = prev.values[j] + I * dt * (coef * (Ac[j] + Bn[j]) - 2.0 * V / p.hbar * curr.values[j]);
            }
            iterate = next;
        }
        StepOptions o;
        o.sweeps = sweeps;
        const auto got = step_crank_nicolson_printed(prev, curr, p, dt, o);
        CHECK(max_diff(got.values, iterate) < 1e-12);
    }
}

TEST_CASE("printed Crank-Nicolson: single impulse") {
    // As printed, with the first iterate equal to level n, the k-1 neighbour
    // collects both Laplacian pieces and the k+1 neighbour none.
    const auto p = free_params();
    const std::size_t n = 11, k = 5;
    auto imp = constant_field(n, 0.0, 0.1);
    imp.values[k] = 1.0;
    const double dt = 1e-6;
    const auto out = step_crank_nicolson_printed(imp, imp, p, dt);
    const C coef = I * dt * p.hbar / (p.D * 0.01);
    CHECK(std::abs(out.values[k - 1] - 2.0 * coef) < 1e-15);
    CHECK(std::abs(out.values[k + 1]) < 1e-15);
    CHECK(std::abs(out.values[k] - (1.0 - 4.0 * coef)) < 1e-15);

    // matrix form of the same step
    Matrix A, B;
    printed_operators(n, A, B);
    const auto Ai = apply(A, imp.values), Bi = apply(B, imp.values);
    for (std::size_t j = 1; j + 1 < n; ++j) CHECK(std::abs(out.values[j] - (imp.values[j] + coef * (Ai[j] + Bi[j]))) < 1e-15);
}

TEST_CASE("printed DuFort-Frankel reproduces its algebra term by term") {
    std::mt19937_64 rng(3);
    auto p = free_params();
    p.mu_E = 0.05;
    p.omega_p_sq = 1.3;
    p.theta = -0.2;
    const std::size_t n = 40;
    for (int trial = 0; trial < 20; ++trial) {
        const auto prev = random_field(n, rng);
        const auto curr = random_field(n, rng);
        const double dt = 1e-3 * (trial + 1);
        const C R = -I * dt * p.hbar / (2.0 * p.D * curr.dx * curr.dx);
        const auto got = step_dufort_frankel_printed(prev, curr, p, dt);
        for (std::size_t j = 1; j + 1 < n; ++j) {
            const double V = model::washboard_potential(curr.x(j), p);
            const C ref = 2.0 * R / (1.0 + 2.0 * R) * (curr.values[j - 1] - curr.values[j + 1]) +
                          (1.0 - 2.0 * R) / (1.0 + 2.0 * R) * prev.values[j] -
                          I * dt * (V / p.hbar) * curr.values[j];
            CHECK(std::abs(got.values[j] - ref) <= 1e-13 * (1.0 + std::abs(ref)));
        }
        CHECK(got.values.front() == curr.values.front());
        CHECK(got.values.back() == curr.values.back());
    }
}

TEST_CASE("printed DuFort-Frankel does not preserve constants") {
    const auto p = free_params();
    const C c0(0.6, 0.2);
    const auto c = constant_field(8, c0);
    const double dt = 0.01;
    const C R = -I * dt * p.hbar / (2.0 * p.D * c.dx * c.dx);
    const auto out = step_dufort_frankel_printed(c, c, p, dt);
    for (std::size_t j = 1; j + 1 < 8; ++j) CHECK(std::abs(out.values[j] - (1.0 - 2.0 * R) / (1.0 + 2.0 * R) * c0) < 1e-15);
    CHECK(std::abs(out.values[3] - c0) > 1e-3);

    const auto z = constant_field(8, 0.0);
    CHECK(max_diff(step_dufort_frankel_printed(z, z, p, dt).values, z.values) == 0.0);

    std::mt19937_64 rng(5);
    const auto prev = random_field(8, rng), curr = random_field(8, rng);
    const auto tiny = step_dufort_frankel_printed(prev, curr, p, 1e-14);
    for (std::size_t j = 1; j + 1 < 8; ++j) CHECK(std::abs(tiny.values[j] - prev.values[j]) < 1e-9);
}

TEST_CASE("standard schemes: constants, zeros and wrong kinds") {
    const auto p = free_params();
    const C c0(-0.4, 0.9);
    const auto c = constant_field(10, c0);
    const auto df = step_standard(SchemeKind::DufortFrankelStandard, c, c, p, 0.05);
    CHECK(max_diff(df.values, c.values) < 1e-15);
    const auto cn = step_standard(SchemeKind::CrankNicolsonStandard, c, c, p, 0.05);
    CHECK(max_diff(cn.values, c.values) < 1e-14);
    const auto z = constant_field(10, 0.0);
    CHECK(max_diff(step_standard(SchemeKind::CrankNicolsonStandard, z, z, p, 0.05).values, z.values) == 0.0);
    CHECK(max_diff(step_standard(SchemeKind::DufortFrankelStandard, z, z, p, 0.05).values, z.values) == 0.0);
    CHECK_THROWS_AS((void)step_standard(SchemeKind::CrankNicolsonAsPrinted, c, c, p, 0.05), DomainError);
}

TEST_CASE("standard Crank-Nicolson solves the Cayley system") {
    std::mt19937_64 rng(9);
    auto p = free_params();
    p.mu_E = 0.2;
    p.omega_p_sq = 1.0;
    p.D = 1.3;
    p.hbar = 0.9;
    const std::size_t n = 14;
    const auto curr = random_field(n, rng, 0.2);
    const double dt = 0.03;

    for (auto bc : {Boundary::Dirichlet, Boundary::Periodic}) {
        const bool periodic = bc == Boundary::Periodic;
        // H = -(hbar^2/D) Laplacian + V, frozen ends or wrapped neighbours
        const double a = p.hbar * p.hbar / (p.D * curr.dx * curr.dx);
        Matrix lhs = zeros(n), rhs_m = zeros(n);
        for (std::size_t j = 0; j < n; ++j) {
            const bool frozen = !periodic && (j == 0 || j + 1 == n);
            if (frozen) {
                lhs[j][j] = 1.0;
                rhs_m[j][j] = 1.0;
                continue;
            }
            const double V = model::washboard_potential(curr.x(j), p);
            const std::size_t l = (j + n - 1) % n, r = (j + 1) % n;
            const C h = I * dt / (2.0 * p.hbar);
            lhs[j][j] = 1.0 + h * (2 * a + V);
            rhs_m[j][j] = 1.0 - h * (2 * a + V);
            lhs[j][l] += -h * a;
            lhs[j][r] += -h * a;
            rhs_m[j][l] += h * a;
            rhs_m[j][r] += h * a;
        }
        const auto ref = dense_solve(lhs, apply(rhs_m, curr.values));
        StepOptions o;
        o.boundary = bc;
        const auto got = step_standard(SchemeKind::CrankNicolsonStandard, curr, curr, p, dt, o);
        CHECK(max_diff(got.values, ref) < 1e-12);
        if (periodic) {
            CHECK(norm(got) == doctest::Approx(norm(curr)).epsilon(1e-13));
        }
    }
}

TEST_CASE("standard DuFort-Frankel neighbour sum") {
    std::mt19937_64 rng(21);
    auto p = free_params();
    p.mu_E = 0.1;
    const std::size_t n = 16;
    const auto prev = random_field(n, rng), curr = random_field(n, rng);
    const double dt = 2e-3;
    const auto got = step_standard(SchemeKind::DufortFrankelStandard, prev, curr, p, dt);
    const C r = I * p.hbar * dt / (p.D * curr.dx * curr.dx);
    for (std::size_t j = 1; j + 1 < n; ++j) {
        const double V = model::washboard_potential(curr.x(j), p);
        // (new - prev)/(2dt) = (i hbar/D)(c+ + c- - new - prev)/dx^2 - i V c / hbar
        const C lhs = (got.values[j] - prev.values[j]) / (2 * dt);
        const C rhs = I * p.hbar / p.D *
                          (curr.values[j + 1] + curr.values[j - 1] - got.values[j] - prev.values[j]) /
                          (curr.dx * curr.dx) -
                      I * V / p.hbar * curr.values[j];
        CHECK(std::abs(lhs - rhs) < 1e-9 * (1.0 + std::abs(r)));
    }
}

TEST_CASE("property: every stepper approaches the identity linearly as dt -> 0") {
    std::mt19937_64 rng(4);
    auto p = free_params();
    p.mu_E = 0.1;
    p.omega_p_sq = 1.0;
    const auto f = random_field(20, rng, 0.3);
    for (auto k : {SchemeKind::CrankNicolsonAsPrinted, SchemeKind::DufortFrankelAsPrinted,
                   SchemeKind::CrankNicolsonStandard, SchemeKind::DufortFrankelStandard}) {
        const double d1 = max_diff(step(k, f, f, p, 1e-4).values, f.values);
        const double d2 = max_diff(step(k, f, f, p, 1e-5).values, f.values);
        CHECK(d1 > 0.0);
        CHECK(d1 / d2 == doctest::Approx(10.0).epsilon(0.05));
    }
}

TEST_CASE("property: Dirichlet end values are invariant") {
    std::mt19937_64 rng(8);
    auto p = free_params();
    p.mu_E = 0.2;
    const auto prev = random_field(15, rng), curr = random_field(15, rng);
    for (auto k : {SchemeKind::CrankNicolsonAsPrinted, SchemeKind::DufortFrankelAsPrinted,
                   SchemeKind::CrankNicolsonStandard, SchemeKind::DufortFrankelStandard}) {
        const auto out = step(k, prev, curr, p, 1e-3);
        CHECK(out.values.front() == curr.values.front());
        CHECK(out.values.back() == curr.values.back());
    }
}

TEST_CASE("property: standard Crank-Nicolson is unitary per step") {
    std::mt19937_64 rng(12);
    auto p = free_params();
    p.mu_E = 0.3;
    p.omega_p_sq = 1.0;
    for (int trial = 0; trial < 10; ++trial) {
        auto f = random_field(64, rng, 0.1);
        f.values.front() = 0.0;
        f.values.back() = 0.0;
        const auto g = step_standard(SchemeKind::CrankNicolsonStandard, f, f, p, 0.05 * (trial + 1));
        CHECK(norm(g) == doctest::Approx(norm(f)).epsilon(1e-13));
    }
}

TEST_CASE("packet, norm and mean phase") {
    const auto g = gaussian_packet(201, -10.0, 10.0, 1.0, 0.0);
    CHECK(norm(g) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::abs(mean_phase(g)) < 1e-14);
    const auto h = gaussian_packet(201, -10.0, 10.0, 2.0, 1.5);
    CHECK(mean_phase(h) == doctest::Approx(1.5).epsilon(1e-12));

    ComplexField spike = constant_field(5, 0.0, pi);
    spike.x0 = -2 * pi;
    spike.values[4] = 1.0;  // x = 2 pi
    CHECK(mean_phase(spike) == doctest::Approx(2 * pi));
    spike.values[2] = 1.0;  // x = 0
    CHECK(mean_phase(spike) == doctest::Approx(pi));
    CHECK_THROWS_AS((void)mean_phase(constant_field(5, 0.0)), DomainError);
}

TEST_CASE("evolve bookkeeping") {
    const auto z = constant_field(7, 0.0);
    const auto t = evolve(SchemeKind::DufortFrankelStandard, z, free_params(), {}, 0.1, 1);
    CHECK(t.size() == 2);
    CHECK(t.norm[0] == 0.0);
    CHECK(t.norm[1] == 0.0);
    CHECK_FALSE(t.truncated);

    const auto g = gaussian_packet(65, -4.0, 4.0);
    const auto u = evolve(SchemeKind::CrankNicolsonStandard, g, free_params(), {}, 0.01, 25);
    REQUIRE(u.size() == 26);
    for (std::size_t i = 1; i < u.size(); ++i) CHECK(u.times[i] > u.times[i - 1]);
    CHECK(u.times.back() == doctest::Approx(0.25));
    CHECK_THROWS_AS((void)evolve(SchemeKind::CrankNicolsonStandard, g, free_params(), {}, 0.01, 0), DomainError);
}

TEST_CASE("evolve marks overflow") {
    model::PhysicalParams p;
    const auto g = gaussian_packet(129, -4 * pi, 4 * pi);
    const auto t = evolve(SchemeKind::CrankNicolsonAsPrinted, g, p, {}, 0.05, 5000);
    CHECK(t.truncated);
    REQUIRE(t.overflow_step);
    CHECK(t.size() == *t.overflow_step);
    CHECK(detect_blowup(t, 10.0).has_value());
}

TEST_CASE("drive enters through theta(t)") {
    // a_D = 0 with theta0 versus a_D > 0: the first step sees theta0 only
    model::PhysicalParams p;
    p.theta = 0.5;
    model::FieldDriveParams d;
    const auto g = gaussian_packet(65, -4.0, 4.0);
    const auto a = evolve(SchemeKind::CrankNicolsonStandard, g, p, d, 0.01, 1);
    d.a_D = 3.0;
    const auto b = evolve(SchemeKind::CrankNicolsonStandard, g, p, d, 0.01, 1);
    CHECK(a.mean_phase[1] == b.mean_phase[1]);
    const auto c = evolve(SchemeKind::CrankNicolsonStandard, g, p, d, 0.01, 200);
    d.a_D = 0.0;
    const auto e = evolve(SchemeKind::CrankNicolsonStandard, g, p, d, 0.01, 200);
    CHECK(c.mean_phase.back() != e.mean_phase.back());
}

TEST_CASE("blow-up detection") {
    CHECK_FALSE(detect_blowup(make_traj({0, 0, 0}, {1, 1, 1}), 10.0).has_value());
    CHECK(detect_blowup(make_traj({0, 0, 0}, {1, 2, 20}), 10.0) == std::optional<std::size_t>(2));
    CHECK(detect_blowup(make_traj({0, 0}, {1, INFINITY}), 10.0) == std::optional<std::size_t>(1));
    CHECK_THROWS_AS((void)detect_blowup(make_traj({0}, {1}), 1.0), DomainError);

    model::PhysicalParams p;
    p.theta = 1.0;
    const auto g = gaussian_packet(257, -4 * pi, 4 * pi);
    const auto t = evolve(SchemeKind::DufortFrankelStandard, g, p, {}, 0.01, 2000);
    CHECK_FALSE(detect_blowup(t, 10.0).has_value());
}

TEST_CASE("resonance detection") {
    std::vector<double> drift, wave;
    for (int i = 0; i < 200; ++i) {
        drift.push_back(0.05 * i);
        wave.push_back(pi * std::sin(0.2 * i));
    }
    CHECK_FALSE(detect_resonance(make_traj(drift), 200));
    CHECK(detect_resonance(make_traj(wave), 200));
    std::vector<double> big = wave;
    for (auto& v : big) v *= 2.5;
    CHECK_FALSE(detect_resonance(make_traj(big), 200));
    CHECK_THROWS_AS((void)detect_resonance(make_traj(wave), 3), DomainError);
    CHECK_THROWS_AS((void)detect_resonance(make_traj(wave), 500), DomainError);
}

TEST_CASE("property: sub-threshold drive never crosses a well") {
    for (double theta : {0.3, 1.0, 2.0, 3.0}) {
        model::PhysicalParams p;
        p.theta = theta;
        const auto g = gaussian_packet(257, -4 * pi, 4 * pi);
        const auto t = evolve(SchemeKind::CrankNicolsonStandard, g, p, {}, 0.02, 2000);
        for (double m : t.mean_phase) CHECK(std::abs(m) < 2 * pi);
        CHECK(detect_resonance(t, t.size()));
    }
}

TEST_CASE("trajectory csv") {
    const auto t = make_traj({0.5, -0.25}, {1.0, 1.0});
    std::ostringstream os;
    write_trajectory_csv(os, t);
    CHECK(os.str() ==
          "t,mean_phase,norm\n"
          "0.000000000000000e+00,5.000000000000000e-01,1.000000000000000e+00\n"
          "1.000000000000000e+00,-2.500000000000000e-01,1.000000000000000e+00\n");
}

}
