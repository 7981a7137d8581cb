#pragma once

#include <Eigen/Core>

namespace majam {

enum class LpStatus { Optimal, Unbounded, IterationLimit };

struct LpResult
{
    LpStatus status = LpStatus::Optimal;
    Eigen::VectorXd x;
    double objective = 0.0;
    int pivots = 0;
};

// Dense tableau simplex for
//     minimize c^T x  subject to  A x <= b,  x >= 0,
// with b >= 0 so the slack basis is a feasible start. Bland's rule keeps
// degenerate problems from cycling.
LpResult solve_lp_feasible_origin(const Eigen::VectorXd& cost, const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                                  int max_pivots = 10000);

// The y-coordinate block of the linearized position step:
//     minimize sum_m cost_m y_m
//     subject to lower_m <= y_m <= upper_m,  y_m - y_{m-1} >= min_gap.
// `current` must be feasible; it is the returned point when no improving
// direction exists.
struct ChainProblem
{
    Eigen::VectorXd cost;
    Eigen::VectorXd current;
    Eigen::VectorXd lower;
    Eigen::VectorXd upper;
    double min_gap = 0.0;
};

Eigen::VectorXd solve_chain_lp(const ChainProblem& problem);

} // namespace majam
