#include "majam/chain_lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "majam/types.hpp"

namespace majam {

LpResult solve_lp_feasible_origin(const Eigen::VectorXd& cost, const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                                  int max_pivots)
{
    const Eigen::Index rows = A.rows();
    const Eigen::Index vars = A.cols();
    require_dims(cost.size() == vars, "LP cost vs constraint columns");
    require_dims(b.size() == rows, "LP rhs vs constraint rows");
    if ((b.array() < 0.0).any()) throw std::invalid_argument("LP rhs must be nonnegative");

    constexpr double tol = 1e-12;
    const Eigen::Index cols = vars + rows;

    // [A I | b] with the reduced-cost row last.
    Eigen::MatrixXd tab = Eigen::MatrixXd::Zero(rows + 1, cols + 1);
    tab.topLeftCorner(rows, vars) = A;
    tab.block(0, vars, rows, rows).setIdentity();
    tab.topRightCorner(rows, 1) = b;
    tab.bottomLeftCorner(1, vars) = cost.transpose();

    std::vector<Eigen::Index> basis(static_cast<std::size_t>(rows));
    for (Eigen::Index r = 0; r < rows; ++r) basis[static_cast<std::size_t>(r)] = vars + r;

    LpResult result;
    for (;;) {
        Eigen::Index entering = -1;
        for (Eigen::Index j = 0; j < cols; ++j) {
            if (tab(rows, j) < -tol) {
                entering = j;
                break;
            }
        }
        if (entering < 0) break;
        if (result.pivots >= max_pivots) {
            result.status = LpStatus::IterationLimit;
            break;
        }

        Eigen::Index leaving = -1;
        double best_ratio = std::numeric_limits<double>::infinity();
        for (Eigen::Index r = 0; r < rows; ++r) {
            const double a = tab(r, entering);
            if (a <= tol) continue;
            const double ratio = tab(r, cols) / a;
            if (ratio < best_ratio - tol ||
                (std::abs(ratio - best_ratio) <= tol && leaving >= 0 &&
                 basis[static_cast<std::size_t>(r)] < basis[static_cast<std::size_t>(leaving)])) {
                best_ratio = ratio;
                leaving = r;
            }
        }
        if (leaving < 0) {
            result.status = LpStatus::Unbounded;
            break;
        }

        tab.row(leaving) /= tab(leaving, entering);
        for (Eigen::Index r = 0; r <= rows; ++r) {
            if (r == leaving) continue;
            const double f = tab(r, entering);
            if (f != 0.0) tab.row(r) -= f * tab.row(leaving);
        }
        basis[static_cast<std::size_t>(leaving)] = entering;
        ++result.pivots;
    }

    result.x = Eigen::VectorXd::Zero(vars);
    for (Eigen::Index r = 0; r < rows; ++r) {
        const auto j = basis[static_cast<std::size_t>(r)];
        if (j < vars) result.x[j] = std::max(0.0, tab(r, cols));
    }
    result.objective = cost.dot(result.x);
    return result;
}

Eigen::VectorXd solve_chain_lp(const ChainProblem& p)
{
    const Eigen::Index n = p.current.size();
    require_dims(p.cost.size() == n && p.lower.size() == n && p.upper.size() == n, "chain LP vectors");

    const double scale = p.cost.cwiseAbs().maxCoeff();
    if (n == 0 || !(scale > 0.0)) return p.current;

    // Shift to w = y - current and split w = w+ - w-, so the origin is feasible.
    const Eigen::Index rows = 2 * n + (n - 1);
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(rows, 2 * n);
    Eigen::VectorXd b(rows);
    Eigen::Index r = 0;
    for (Eigen::Index m = 0; m < n; ++m, ++r) {
        A(r, m) = 1.0;
        A(r, n + m) = -1.0;
        b[r] = std::max(0.0, p.upper[m] - p.current[m]);
    }
    for (Eigen::Index m = 0; m < n; ++m, ++r) {
        A(r, m) = -1.0;
        A(r, n + m) = 1.0;
        b[r] = std::max(0.0, p.current[m] - p.lower[m]);
    }
    for (Eigen::Index m = 1; m < n; ++m, ++r) {
        // w_{m-1} - w_m <= gap_m - min_gap
        A(r, m - 1) = 1.0;
        A(r, n + m - 1) = -1.0;
        A(r, m) = -1.0;
        A(r, n + m) = 1.0;
        b[r] = std::max(0.0, p.current[m] - p.current[m - 1] - p.min_gap);
    }

    Eigen::VectorXd cost(2 * n);
    cost << p.cost / scale, -p.cost / scale;

    const auto lp = solve_lp_feasible_origin(cost, A, b);
    if (lp.status != LpStatus::Optimal) throw std::runtime_error("chain LP did not reach an optimal vertex");
    return p.current + lp.x.head(n) - lp.x.tail(n);
}

} // namespace majam
