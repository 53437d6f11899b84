#pragma once

#include <optional>

#include <Eigen/Core>

namespace isoper {

struct LpSolution {
    Eigen::VectorXd x;
    double objective;
};

// Dense tableau simplex for
//     maximize c . x  subject to  A x <= b,  x >= 0,
// with b >= 0 so the origin is feasible. Bland's rule guards against
// cycling. Returns nullopt if the problem is unbounded.
std::optional<LpSolution> maximize(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                                   const Eigen::VectorXd& c);

} // namespace isoper
