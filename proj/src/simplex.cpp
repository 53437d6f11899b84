#include "isoper/simplex.hpp"

#include <cassert>
#include <limits>
#include <vector>

namespace isoper {

std::optional<LpSolution> maximize(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                                   const Eigen::VectorXd& c)
{
    const Eigen::Index m = A.rows();
    const Eigen::Index n = A.cols();
    assert(b.size() == m && c.size() == n);
    assert((b.array() >= 0.0).all());

    // Rows 0..m-1: constraints with slack columns; row m: reduced costs.
    Eigen::MatrixXd T = Eigen::MatrixXd::Zero(m + 1, n + m + 1);
    T.topLeftCorner(m, n) = A;
    T.block(0, n, m, m).setIdentity();
    T.col(n + m).head(m) = b;
    T.row(m).head(n) = -c.transpose();

    std::vector<Eigen::Index> basis(static_cast<std::size_t>(m));
    for (Eigen::Index i = 0; i < m; ++i) basis[static_cast<std::size_t>(i)] = n + i;

    constexpr double eps = 1e-12;
    const Eigen::Index rhs = n + m;
    for (int iter = 0; iter < 100000; ++iter) {
        Eigen::Index entering = -1;
        for (Eigen::Index j = 0; j < n + m; ++j) {
            if (T(m, j) < -eps) {
                entering = j;
                break;
            }
        }
        if (entering < 0) break;

        Eigen::Index leaving = -1;
        double best = std::numeric_limits<double>::infinity();
        for (Eigen::Index i = 0; i < m; ++i) {
            if (T(i, entering) > eps) {
                const double ratio = T(i, rhs) / T(i, entering);
                if (ratio < best - eps ||
                    (ratio <= best + eps && leaving >= 0 &&
                     basis[static_cast<std::size_t>(i)] < basis[static_cast<std::size_t>(leaving)])) {
                    best = ratio;
                    leaving = i;
                }
            }
        }
        if (leaving < 0) return std::nullopt;

        T.row(leaving) /= T(leaving, entering);
        for (Eigen::Index i = 0; i <= m; ++i) {
            if (i != leaving && T(i, entering) != 0.0) T.row(i) -= T(i, entering) * T.row(leaving);
        }
        basis[static_cast<std::size_t>(leaving)] = entering;
    }

    LpSolution sol{Eigen::VectorXd::Zero(n), T(m, rhs)};
    for (Eigen::Index i = 0; i < m; ++i) {
        const Eigen::Index var = basis[static_cast<std::size_t>(i)];
        if (var < n) sol.x(var) = T(i, rhs);
    }
    return sol;
}

} // namespace isoper
