#pragma once

#include <cstddef>
#include <vector>

namespace risflow::detail {

enum class SimplexStatus { Optimal, Unbounded, IterationLimit };

struct SimplexResult {
    SimplexStatus status = SimplexStatus::Optimal;
    std::vector<double> x;
    double objective = 0.0;
    std::size_t iterations = 0;
    std::size_t degenerate_pivots = 0;
    bool used_bland = false;
};

/// maximize c.x subject to A x <= b, x >= 0, with b >= 0 so the slack basis
/// is a feasible start. `a` is row-major, rows x cols.
struct DenseLp {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> a;
    std::vector<double> b;
    std::vector<double> c;
};

/// Primal tableau simplex, Dantzig pricing, switching to Bland's rule once
/// `bland_after` degenerate pivots have been taken.
SimplexResult solve_dense(const DenseLp& lp, double tol, std::size_t max_iterations, std::size_t bland_after);

}  // namespace risflow::detail
