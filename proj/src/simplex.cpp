#include "simplex.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace risflow::detail {

SimplexResult solve_dense(const DenseLp& lp, double tol, std::size_t max_iterations, std::size_t bland_after) {
    const std::size_t m = lp.rows;
    const std::size_t n = lp.cols;
    const std::size_t width = n + m;
    if (lp.a.size() != m * n || lp.b.size() != m || lp.c.size() != n) throw std::invalid_argument("dense LP shape mismatch");
    for (double v : lp.b) {
        if (v < 0.0) throw std::invalid_argument("dense LP requires b >= 0");
    }

    std::vector<double> t(m * width, 0.0);
    std::vector<double> rhs = lp.b;
    std::vector<std::size_t> basis(m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) t[i * width + j] = lp.a[i * n + j];
        t[i * width + n + i] = 1.0;
        basis[i] = n + i;
    }
    // Reduced costs of the maximization, stored negated: entering candidates are < 0.
    std::vector<double> obj(width, 0.0);
    for (std::size_t j = 0; j < n; ++j) obj[j] = -lp.c[j];
    double z = 0.0;

    SimplexResult res;
    std::vector<std::size_t> nz;
    nz.reserve(width);
    for (;;) {
        if (res.iterations >= max_iterations) {
            res.status = SimplexStatus::IterationLimit;
            break;
        }
        const bool bland = res.degenerate_pivots >= bland_after;
        res.used_bland = res.used_bland || bland;

        std::size_t enter = width;
        double best = -tol;
        for (std::size_t j = 0; j < width; ++j) {
            if (obj[j] < best) {
                enter = j;
                if (bland) break;
                best = obj[j];
            }
        }
        if (enter == width) break;

        std::size_t leave = m;
        double best_ratio = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            const double aij = t[i * width + enter];
            if (aij <= tol) continue;
            const double ratio = rhs[i] / aij;
            if (leave == m || ratio < best_ratio - 1e-12 ||
                (ratio <= best_ratio + 1e-12 && basis[i] < basis[leave])) {
                leave = i;
                best_ratio = ratio;
            }
        }
        if (leave == m) {
            res.status = SimplexStatus::Unbounded;
            return res;
        }
        if (best_ratio <= tol) ++res.degenerate_pivots;

        double* prow = &t[leave * width];
        const double inv = 1.0 / prow[enter];
        nz.clear();
        for (std::size_t j = 0; j < width; ++j) {
            if (prow[j] != 0.0) {
                prow[j] *= inv;
                nz.push_back(j);
            }
        }
        rhs[leave] *= inv;
        prow[enter] = 1.0;

        for (std::size_t i = 0; i < m; ++i) {
            if (i == leave) continue;
            double* row = &t[i * width];
            const double f = row[enter];
            if (f == 0.0) continue;
            for (std::size_t j : nz) row[j] -= f * prow[j];
            row[enter] = 0.0;
            rhs[i] -= f * rhs[leave];
            if (rhs[i] < 0.0 && rhs[i] > -tol) rhs[i] = 0.0;
        }
        const double f = obj[enter];
        for (std::size_t j : nz) obj[j] -= f * prow[j];
        obj[enter] = 0.0;
        z -= f * rhs[leave];
        basis[leave] = enter;
        ++res.iterations;
    }

    res.x.assign(n, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        if (basis[i] < n) res.x[basis[i]] = std::max(rhs[i], 0.0);
    }
    res.objective = z;
    return res;
}

}  // namespace risflow::detail
