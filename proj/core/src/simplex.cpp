#include "cdw/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "cdw/errors.hpp"

namespace cdw::optim {

namespace {

struct Vertex {
    std::vector<double> x;
    double f;
};

}  // namespace

SimplexResult nelder_mead(const Objective& f, std::vector<double> x0, const SimplexOptions& opts,
                          const Projection& project) {
    const std::size_t n = x0.size();
    require(n >= 1, "nelder_mead: empty parameter vector");

    const double dn = static_cast<double>(n);
    const double rho = 1.0;
    const double chi = opts.adaptive ? 1.0 + 2.0 / dn : 2.0;
    const double gamma = opts.adaptive ? 0.75 - 0.5 / dn : 0.5;
    const double sigma = opts.adaptive ? 1.0 - 1.0 / dn : 0.5;

    std::size_t evals = 0;
    auto eval = [&](std::vector<double>& x) {
        if (project) project(x);
        ++evals;
        const double v = f(x);
        return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
    };

    std::vector<Vertex> s;
    s.reserve(n + 1);
    {
        Vertex v{x0, 0.0};
        v.f = eval(v.x);
        s.push_back(std::move(v));
    }
    for (std::size_t i = 0; i < n; ++i) {
        Vertex v{x0, 0.0};
        const double step = x0[i] != 0.0 ? opts.initial_step * std::max(1.0, std::abs(x0[i]))
                                         : opts.initial_step;
        v.x[i] += step;
        v.f = eval(v.x);
        s.push_back(std::move(v));
    }

    auto by_f = [](const Vertex& a, const Vertex& b) { return a.f < b.f; };
    std::vector<double> centroid(n), xr(n), xe(n), xc(n);
    bool converged = false;

    while (evals < opts.max_evals) {
        std::stable_sort(s.begin(), s.end(), by_f);

        double x_spread = 0.0;
        for (std::size_t i = 1; i <= n; ++i)
            for (std::size_t k = 0; k < n; ++k)
                x_spread = std::max(x_spread, std::abs(s[i].x[k] - s[0].x[k]));
        const double f_spread = s[n].f - s[0].f;
        if (f_spread <= opts.f_tol && x_spread <= opts.x_tol) {
            converged = true;
            break;
        }

        std::fill(centroid.begin(), centroid.end(), 0.0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < n; ++k) centroid[k] += s[i].x[k];
        for (double& c : centroid) c /= dn;

        Vertex& worst = s[n];
        for (std::size_t k = 0; k < n; ++k) xr[k] = centroid[k] + rho * (centroid[k] - worst.x[k]);
        const double fr = eval(xr);

        if (fr < s[0].f) {
            for (std::size_t k = 0; k < n; ++k) xe[k] = centroid[k] + chi * (xr[k] - centroid[k]);
            const double fe = eval(xe);
            if (fe < fr) {
                worst.x = xe;
                worst.f = fe;
            } else {
                worst.x = xr;
                worst.f = fr;
            }
            continue;
        }
        if (fr < s[n - 1].f) {
            worst.x = xr;
            worst.f = fr;
            continue;
        }

        const bool outside = fr < worst.f;
        for (std::size_t k = 0; k < n; ++k)
            xc[k] = outside ? centroid[k] + gamma * (xr[k] - centroid[k])
                            : centroid[k] - gamma * (centroid[k] - worst.x[k]);
        const double fc = eval(xc);
        if (fc < (outside ? fr : worst.f)) {
            worst.x = xc;
            worst.f = fc;
            continue;
        }

        for (std::size_t i = 1; i <= n; ++i) {
            for (std::size_t k = 0; k < n; ++k) s[i].x[k] = s[0].x[k] + sigma * (s[i].x[k] - s[0].x[k]);
            s[i].f = eval(s[i].x);
        }
    }

    const auto best = std::min_element(s.begin(), s.end(), by_f);
    return {best->x, best->f, evals, converged};
}

}  // namespace cdw::optim
