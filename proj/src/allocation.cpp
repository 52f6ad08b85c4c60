#include "fwmav/allocation.hpp"

#include <cmath>
#include <cstdio>

#include <Eigen/Geometry>
#include <Eigen/SVD>

namespace fwmav {

bool OffsetSpec::is_zero() const {
    auto all_zero = [](const std::optional<std::array<double, 4>>& v) {
        if (!v) return true;
        for (double x : *v)
            if (x != 0.0) return false;
        return true;
    };
    return d_beta == 0.0 && d_gamma == 0.0 && d_l == 0.0 && d_fw.isZero(0.0) &&
           all_zero(d_beta_per_wing) && all_zero(d_gamma_per_wing) && all_zero(d_l_per_wing);
}

OffsetSpec OffsetSpec::case1() {
    OffsetSpec s;
    s.d_beta = 10.0 * M_PI / 180.0;
    s.d_gamma = 10.0 * M_PI / 180.0;
    s.d_l = 5.0e-3;
    return s;
}

OffsetSpec OffsetSpec::case2(double mass, double gravity) {
    OffsetSpec s;
    s.d_fw << 0.0, -mass * gravity / 4.0 / 3.0, 0.0, 0.0;
    return s;
}

Eigen::Matrix4d MixingMatrix::stacked() const {
    Eigen::Matrix4d s;
    s.row(0) = m.row(2);
    s.bottomRows<3>() = m.bottomRows<3>();
    return s;
}

MixingMatrix build_mixing_matrix(const WingGeometry& geom, const OffsetSpec& offsets) {
    // Corner signs and azimuths of the four wings.
    static constexpr double kSignA[4] = {+1.0, -1.0, -1.0, +1.0};
    static constexpr double kSignB[4] = {+1.0, +1.0, -1.0, -1.0};

    MixingMatrix mix;
    for (int i = 0; i < 4; ++i) {
        const double d_beta = offsets.d_beta_per_wing ? (*offsets.d_beta_per_wing)[i]
                                                      : offsets.d_beta;
        const double d_gamma = offsets.d_gamma_per_wing ? (*offsets.d_gamma_per_wing)[i]
                                                        : offsets.d_gamma;
        const double d_l = offsets.d_l_per_wing ? (*offsets.d_l_per_wing)[i] : offsets.d_l;

        const double beta_i = -(geom.beta + d_beta);
        const double base_gamma = (i == 0)   ? geom.gamma
                                  : (i == 1) ? M_PI - geom.gamma
                                  : (i == 2) ? M_PI + geom.gamma
                                             : 2.0 * M_PI - geom.gamma;
        const double gamma_i = base_gamma + d_gamma;
        const double l_i = geom.l + d_l;

        const double cb = std::cos(beta_i), sb = std::sin(beta_i);
        const double cg = std::cos(gamma_i), sg = std::sin(gamma_i);

        const Eigen::Vector3d e{cg * sb, sg * sb, cb};
        const Eigen::Vector3d p = Eigen::Vector3d{kSignA[i] * geom.a, kSignB[i] * geom.b, 0.0} +
                                  l_i * Eigen::Vector3d{cg * cb, sg * cb, -sb};

        mix.m.col(i).head<3>() = e;
        mix.m.col(i).tail<3>() = p.cross(e);
    }
    return mix;
}

Wrench body_wrench(const MixingMatrix& mix, const Eigen::Vector4d& wing_forces) {
    const Eigen::Matrix<double, 6, 1> w = mix.m * wing_forces;
    return {w.head<3>(), w.tail<3>()};
}

Wrench offset_wrench(const MixingMatrix& nominal, const MixingMatrix& perturbed,
                     const OffsetSpec& offsets, const Eigen::Vector4d& wing_forces) {
    const Eigen::Matrix<double, 6, 4> dm = perturbed.m - nominal.m;
    const Eigen::Matrix<double, 6, 1> w = -nominal.m * offsets.d_fw - dm * wing_forces;
    return {w.head<3>(), w.tail<3>()};
}

Allocator::Allocator(const MixingMatrix& mix) : stacked_(mix.stacked()), lu_(stacked_) {
    const Eigen::JacobiSVD<Eigen::Matrix4d> svd(stacked_);
    const double smin = svd.singularValues()(3);
    const double smax = svd.singularValues()(0);
    condition_ = smin > 0.0 ? smax / smin : std::numeric_limits<double>::infinity();
    if (!(condition_ < kAllocationConditionLimit)) {
        char msg[160];
        std::snprintf(msg, sizeof msg,
                      "stacked allocation matrix is singular or ill-conditioned "
                      "(condition number %.3e, limit %.1e)",
                      condition_, kAllocationConditionLimit);
        throw SingularAllocationError(msg);
    }
}

Eigen::Vector4d Allocator::wing_forces(double f_z, const Eigen::Vector3d& tau) const {
    Eigen::Vector4d rhs;
    rhs << f_z, tau;
    // One step of iterative refinement: the plant integrates the residual of
    // this solve as a phantom wrench, so drive it as close to zero as double
    // precision allows.
    Eigen::Vector4d x = lu_.solve(rhs);
    x += lu_.solve(rhs - stacked_ * x);
    return x;
}

Eigen::Vector4d Allocator::stacked_wrench(const Eigen::Vector4d& wing_forces) const {
    return stacked_ * wing_forces;
}

Eigen::Vector4d inverse_allocation(const MixingMatrix& mix, double f_z,
                                   const Eigen::Vector3d& tau) {
    return Allocator(mix).wing_forces(f_z, tau);
}

double WingForceModel::amplitude(double force) const {
    double v = v_hover + (force - f_hover) / k_v;
    if (clamp_enabled) v = std::clamp(v, v_min, v_max);
    return v;
}

Eigen::Vector4d WingForceModel::forces(const Eigen::Vector4d& amplitudes) const {
    Eigen::Vector4d f;
    for (int i = 0; i < 4; ++i) f(i) = force(amplitudes(i));
    return f;
}

Eigen::Vector4d WingForceModel::amplitudes(const Eigen::Vector4d& forces) const {
    Eigen::Vector4d v;
    for (int i = 0; i < 4; ++i) v(i) = amplitude(forces(i));
    return v;
}

WingForceModel WingForceModel::from_hover_point(double mass, double gravity, double beta,
                                                double v_hover) {
    WingForceModel m;
    m.v_hover = v_hover;
    m.f_hover = mass * gravity / (4.0 * std::cos(beta));
    m.k_v = m.f_hover / v_hover;
    return m;
}

}  // namespace fwmav
