#include "fwmav/care.hpp"

#include <cmath>
#include <cstdio>

#include <Eigen/Dense>

namespace fwmav {

Eigen::MatrixXd solve_care(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                           const Eigen::MatrixXd& q, const Eigen::MatrixXd& r) {
    const auto n = a.rows();
    if (a.cols() != n || b.rows() != n || q.rows() != n || q.cols() != n ||
        r.rows() != b.cols() || r.cols() != b.cols())
        throw RiccatiError("Riccati solve: inconsistent matrix dimensions");

    const Eigen::LLT<Eigen::MatrixXd> r_llt(r);
    if (r_llt.info() != Eigen::Success)
        throw RiccatiError("Riccati solve: R is not positive definite");
    const Eigen::MatrixXd b_rinv_bt = b * r_llt.solve(b.transpose());

    Eigen::MatrixXd h(2 * n, 2 * n);
    h << a, -b_rinv_bt, -q, -a.transpose();

    // Newton iteration for sign(H), Z <- (Z/c + c Z^-1)/2, with determinant
    // scaling computed in log space to survive the wide dynamic range.
    Eigen::MatrixXd z = h;
    bool converged = false;
    for (int it = 0; it < kCareMaxIterations; ++it) {
        const Eigen::PartialPivLU<Eigen::MatrixXd> lu(z);
        double log_det = 0.0;
        for (Eigen::Index i = 0; i < 2 * n; ++i)
            log_det += std::log(std::abs(lu.matrixLU()(i, i)));
        double c = std::exp(log_det / static_cast<double>(2 * n));
        if (!std::isfinite(c) || c <= 0.0) c = 1.0;

        const Eigen::MatrixXd z_inv = lu.solve(Eigen::MatrixXd::Identity(2 * n, 2 * n));
        const Eigen::MatrixXd z_next = 0.5 * (z / c + c * z_inv);
        const double delta = (z_next - z).norm() / std::max(1.0, z_next.norm());
        z = z_next;
        if (delta < kCareTolerance) {
            converged = true;
            break;
        }
    }
    if (!converged)
        throw RiccatiError("Riccati solve: sign iteration did not converge within limit");

    // sign(H) projects onto the stable invariant subspace; solve the stacked
    // least-squares system for P.
    Eigen::MatrixXd lhs(2 * n, n), rhs(2 * n, n);
    lhs.topRows(n) = z.topRightCorner(n, n);
    lhs.bottomRows(n) = z.bottomRightCorner(n, n) + Eigen::MatrixXd::Identity(n, n);
    rhs.topRows(n) = -(z.topLeftCorner(n, n) + Eigen::MatrixXd::Identity(n, n));
    rhs.bottomRows(n) = -z.bottomLeftCorner(n, n);

    Eigen::MatrixXd p = lhs.colPivHouseholderQr().solve(rhs);
    p = 0.5 * (p + p.transpose()).eval();

    const Eigen::MatrixXd residual =
        a.transpose() * p + p * a - p * b_rinv_bt * p + q;
    const double scale = std::max({1.0, q.norm(), p.norm()});
    if (!(residual.norm() / scale < 1e-8)) {
        char msg[128];
        std::snprintf(msg, sizeof msg,
                      "Riccati solve: residual %.3e exceeds tolerance (scale %.3e)",
                      residual.norm(), scale);
        throw RiccatiError(msg);
    }
    return p;
}

}  // namespace fwmav
