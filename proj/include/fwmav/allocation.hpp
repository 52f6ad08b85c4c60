#pragma once

#include <array>
#include <optional>

#include <Eigen/Core>
#include <Eigen/LU>

#include "fwmav/errors.hpp"

namespace fwmav {

// Nominal geometry of the four paired wing units. Wing i sits at the corner
// (+-a, +-b) of the frame and carries a stroke-plane arm of length l whose
// force axis is tilted by beta about the local wing-Y axis; gamma is the
// azimuth of wing 1, the remaining wings follow by reflection:
//   gamma_1 = gamma, gamma_2 = pi - gamma, gamma_3 = pi + gamma,
//   gamma_4 = 2 pi - gamma, and every wing uses tilt -beta.
struct WingGeometry {
    double a{20.0e-3};                    // frame half-length along X (m)
    double b{5.0e-3};                     // frame half-width along Y (m)
    double beta{20.0 * M_PI / 180.0};     // wing tilt (rad)
    double gamma{60.0 * M_PI / 180.0};    // wing-1 azimuth (rad)
    double l{40.0e-3};                    // arm from corner to wing centroid (m)
};

// Installation and modeling errors. The scalar misalignments apply uniformly
// to all four wings unless a per-wing override is supplied: the tilt error
// adds to the magnitude of the (negative) wing tilt, the azimuth error adds
// to each gamma_i, and the arm error adds to l. d_fw is a constant per-wing
// force error of the amplitude-to-force model.
struct OffsetSpec {
    double d_beta{0.0};   // tilt misalignment (rad)
    double d_gamma{0.0};  // azimuth misalignment (rad)
    double d_l{0.0};      // arm-length error (m)
    Eigen::Vector4d d_fw{Eigen::Vector4d::Zero()};  // wing-force model error (N)
    std::optional<std::array<double, 4>> d_beta_per_wing;
    std::optional<std::array<double, 4>> d_gamma_per_wing;
    std::optional<std::array<double, 4>> d_l_per_wing;

    bool is_zero() const;

    // Uniform 10 deg tilt and azimuth misalignment plus 5 mm arm error.
    static OffsetSpec case1();
    // Wing 2 produces one third of a hover-share (m g / 4) less force than
    // modeled; no geometric misalignment.
    static OffsetSpec case2(double mass, double gravity);
};

// Columns map per-wing scalar forces to the body wrench [force; torque]:
// column i is [e_i; p_i x e_i] with e_i the wing force direction and p_i the
// wing centroid position in body coordinates.
struct MixingMatrix {
    Eigen::Matrix<double, 6, 4> m{Eigen::Matrix<double, 6, 4>::Zero()};

    Eigen::Matrix<double, 3, 4> force_rows() const { return m.topRows<3>(); }
    Eigen::Matrix<double, 3, 4> torque_rows() const { return m.bottomRows<3>(); }

    // Vertical-force row stacked over the torque rows; the 4x4 system the
    // allocator inverts. Horizontal force rows are not controllable and are
    // left out by construction.
    Eigen::Matrix4d stacked() const;
};

// Body wrench produced by per-wing forces f_w.
struct Wrench {
    Eigen::Vector3d force{Eigen::Vector3d::Zero()};    // N
    Eigen::Vector3d torque{Eigen::Vector3d::Zero()};   // N m
};

MixingMatrix build_mixing_matrix(const WingGeometry& geom, const OffsetSpec& offsets = {});

Wrench body_wrench(const MixingMatrix& mix, const Eigen::Vector4d& wing_forces);

// First-order offset wrench [f_o; tau_o] ~= -M d_fw - dM f_w, where M is the
// nominal matrix and dM = perturbed - nominal. Drops the bilinear dM * d_fw
// term of the exact product (M + dM)(f_w + d_fw).
Wrench offset_wrench(const MixingMatrix& nominal, const MixingMatrix& perturbed,
                     const OffsetSpec& offsets, const Eigen::Vector4d& wing_forces);

// Ill-conditioning threshold for the stacked allocation matrix.
inline constexpr double kAllocationConditionLimit = 1e8;

// Inverts the stacked allocation system once and reuses the factorization.
// Throws SingularAllocationError at construction when the stacked matrix has
// condition number >= kAllocationConditionLimit (e.g. beta = 0, which zeroes
// the yaw row).
class Allocator {
public:
    explicit Allocator(const MixingMatrix& mix);

    // Per-wing force demands realizing (f_z, tau).
    Eigen::Vector4d wing_forces(double f_z, const Eigen::Vector3d& tau) const;

    // Forward map: the (f_z, tau) realized by given per-wing forces.
    Eigen::Vector4d stacked_wrench(const Eigen::Vector4d& wing_forces) const;

    double condition_number() const { return condition_; }

private:
    Eigen::Matrix4d stacked_;
    Eigen::PartialPivLU<Eigen::Matrix4d> lu_;
    double condition_{0.0};
};

// One-shot convenience wrapper around Allocator.
Eigen::Vector4d inverse_allocation(const MixingMatrix& mix, double f_z,
                                   const Eigen::Vector3d& tau);

// Affine amplitude-to-force model around the hover point: each wing produces
// f = f_hover + k_v (V - v_hover). The inverse clamps to [v_min, v_max] only
// when clamping is enabled; by default demands pass through untouched.
struct WingForceModel {
    double k_v{0.0};      // force slope (N/V)
    double v_hover{20.0}; // hover amplitude (V)
    double f_hover{0.0};  // hover force share (N)
    bool clamp_enabled{false};
    double v_min{0.0};    // V
    double v_max{40.0};   // V

    double force(double amplitude) const { return f_hover + k_v * (amplitude - v_hover); }
    double amplitude(double force) const;

    Eigen::Vector4d forces(const Eigen::Vector4d& amplitudes) const;
    Eigen::Vector4d amplitudes(const Eigen::Vector4d& forces) const;

    // Model anchored at the hover share m g / (4 cos beta) with slope
    // f_hover / v_hover, so zero demanded force maps to zero amplitude.
    static WingForceModel from_hover_point(double mass, double gravity, double beta,
                                           double v_hover = 20.0);
};

}  // namespace fwmav
