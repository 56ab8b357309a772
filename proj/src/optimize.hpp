#ifndef SPINSQ_OPTIMIZE_HPP
#define SPINSQ_OPTIMIZE_HPP

// Small deterministic derivative-free minimizers shared by the algebra
// search and the angle solver. Header-internal to src/.

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <vector>

namespace spinsq::detail {

struct NmResult {
    std::vector<double> x;
    double fval = 0.0;
};

// Standard Nelder-Mead with fixed coefficients (reflect 1, expand 2,
// contract 1/2, shrink 1/2). Deterministic for a given start and step.
inline NmResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                            std::vector<double> x0, double step,
                            int max_iter = 600, double ftol = 1e-16, double xtol = 1e-12) {
    const size_t n = x0.size();
    std::vector<std::vector<double>> pts(n + 1, x0);
    for (size_t i = 0; i < n; ++i) pts[i + 1][i] += step;
    std::vector<double> fv(n + 1);
    for (size_t i = 0; i <= n; ++i) fv[i] = f(pts[i]);

    std::vector<size_t> order(n + 1);
    for (int it = 0; it < max_iter; ++it) {
        std::iota(order.begin(), order.end(), size_t{0});
        std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return fv[a] < fv[b]; });
        {
            std::vector<std::vector<double>> p2(n + 1);
            std::vector<double> f2(n + 1);
            for (size_t i = 0; i <= n; ++i) { p2[i] = pts[order[i]]; f2[i] = fv[order[i]]; }
            pts.swap(p2); fv.swap(f2);
        }
        double spread = 0.0;
        for (size_t i = 0; i <= n; ++i)
            for (size_t d = 0; d < n; ++d)
                spread = std::max(spread, std::abs(pts[i][d] - pts[0][d]));
        if (fv[n] - fv[0] <= ftol && spread <= xtol) break;

        std::vector<double> centroid(n, 0.0);
        for (size_t i = 0; i < n; ++i)
            for (size_t d = 0; d < n; ++d) centroid[d] += pts[i][d] / static_cast<double>(n);

        auto blend = [&](double t) {            // centroid + t*(centroid - worst)
            std::vector<double> p(n);
            for (size_t d = 0; d < n; ++d) p[d] = centroid[d] + t * (centroid[d] - pts[n][d]);
            return p;
        };

        auto xr = blend(1.0);
        double fr = f(xr);
        if (fr < fv[0]) {
            auto xe = blend(2.0);
            double fe = f(xe);
            if (fe < fr) { pts[n] = xe; fv[n] = fe; }
            else         { pts[n] = xr; fv[n] = fr; }
        } else if (fr < fv[n - 1]) {
            pts[n] = xr; fv[n] = fr;
        } else {
            auto xc = blend(-0.5);
            double fc = f(xc);
            if (fc < fv[n]) { pts[n] = xc; fv[n] = fc; }
            else {
                for (size_t i = 1; i <= n; ++i) {
                    for (size_t d = 0; d < n; ++d)
                        pts[i][d] = pts[0][d] + 0.5 * (pts[i][d] - pts[0][d]);
                    fv[i] = f(pts[i]);
                }
            }
        }
    }
    size_t best = 0;
    for (size_t i = 1; i <= n; ++i)
        if (fv[i] < fv[best]) best = i;
    return {pts[best], fv[best]};
}

// Golden-section minimization of a unimodal scalar function on [a, b] to a
// relative abscissa tolerance.
inline std::pair<double, double> golden_section(const std::function<double(double)>& f,
                                                double a, double b, double rel_tol) {
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = f(c), fd = f(d);
    const double scale = std::max(std::abs(a), std::abs(b));
    while (b - a > rel_tol * scale) {
        if (fc < fd) {
            b = d; d = c; fd = fc;
            c = b - invphi * (b - a);
            fc = f(c);
        } else {
            a = c; c = d; fc = fd;
            d = a + invphi * (b - a);
            fd = f(d);
        }
    }
    double xm = 0.5 * (a + b);
    return {xm, f(xm)};
}

} // namespace spinsq::detail

#endif
