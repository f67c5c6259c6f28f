#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <span>
#include <vector>

#include "cvcap/errors.hpp"
#include "cvcap/gaussian.hpp"

namespace cvcap {

/// Noise of the teleportation channel induced by a bipartite resource:
/// the output state picks up displacement sqrt(2)*mean_f and noise 2*gamma_f.
struct TeleportNoise {
  Eigen::Vector2d mean_f;
  Eigen::Matrix2d gamma_f;
};

/// Thermal-like channel: isotropic noise N per quadrature, zero displacement.
struct ThermalLikeChannel {
  double n_param;

  explicit ThermalLikeChannel(double n) : n_param(n) {
    if (n < 0.0) {
      throw validation_error("thermal channel parameter N must be >= 0");
    }
  }
};

/// Beam-splitter loss with transmissivity eta in [0, 1].
struct LossModel {
  double eta;

  explicit LossModel(double eta_in) : eta(eta_in) {
    if (!(eta >= 0.0 && eta <= 1.0)) {
      throw validation_error("transmissivity eta must lie in [0, 1]");
    }
  }
};

/// Two-mode squeezed vacuum (EPR state) with squeezing amplitude r:
/// zero mean and CM
///   (1/2) [[cosh 2r, 0, sinh 2r, 0], [0, cosh 2r, 0, -sinh 2r],
///          [sinh 2r, 0, cosh 2r, 0], [0, -sinh 2r, 0, cosh 2r]].
inline GaussianState epr_cm(double r) {
  if (r < 0.0) {
    throw validation_error("squeezing amplitude r must be >= 0");
  }
  const double c = std::cosh(2.0 * r);
  const double s = std::sinh(2.0 * r);
  Eigen::Matrix4d m;
  m << c, 0, s, 0,
       0, c, 0, -s,
       s, 0, c, 0,
       0, -s, 0, c;
  return GaussianState(Eigen::Vector4d::Zero(), CovMatrix(0.5 * m));
}

/// Orthogonal symplectic change of basis to the collective quadratures
/// (q_-, p_-, q_+, p_+) with q_+- = (q_A +- q_B)/sqrt(2).
inline Eigen::Matrix4d collective_transform() {
  const double s = 1.0 / std::sqrt(2.0);
  Eigen::Matrix4d r;
  r <<  s, 0, s, 0,
        0, s, 0, s,
       -s, 0, s, 0,
        0, -s, 0, s;
  return r;
}

/// Channel noise (m_f, gamma_f) induced by a two-mode resource state:
/// transform to collective quadratures, gamma~ = R^T gamma R and m~ = R^T m,
/// then read off the (q_-, p_+) rows/columns.
inline TeleportNoise noise_from_resource(const GaussianState& resource) {
  if (resource.cm.dim() != 4) {
    throw validation_error("teleportation resource must be a two-mode state");
  }
  const Eigen::Matrix4d r = collective_transform();
  const Eigen::Matrix4d gamma_c = r.transpose() * resource.cm.mat() * r;
  const Eigen::Vector4d mean_c = r.transpose() * resource.mean;
  TeleportNoise noise;
  noise.mean_f << mean_c(0), mean_c(3);
  noise.gamma_f << gamma_c(0, 0), gamma_c(0, 3),
                   gamma_c(3, 0), gamma_c(3, 3);
  return noise;
}

/// Teleportation map on a single-mode Gaussian state:
/// mean += sqrt(2) m_f, cm += 2 gamma_f.
inline GaussianState apply_teleport(const GaussianState& input,
                                    const TeleportNoise& noise) {
  if (input.cm.dim() != 2) {
    throw validation_error("apply_teleport expects a single-mode input state");
  }
  const Eigen::Vector2d mean =
      input.mean + std::sqrt(2.0) * noise.mean_f;
  const Eigen::Matrix2d cm =
      input.cm.mat() + 2.0 * noise.gamma_f;
  return GaussianState(mean, CovMatrix(cm));
}

/// Beam-splitter loss a -> sqrt(eta) a + sqrt(1-eta) v on the selected modes:
/// the mode's rows/columns scale by sqrt(eta) and (1-eta)/2 * I is added to
/// its diagonal block.
inline GaussianState apply_loss(const GaussianState& state, const LossModel& loss,
                                std::span<const int> modes) {
  const double eta = loss.eta;
  const double root = std::sqrt(eta);
  Eigen::MatrixXd cm = state.cm.mat();
  Eigen::VectorXd mean = state.mean;
  for (int mode : modes) {
    if (mode < 0 || mode >= state.modes()) {
      throw validation_error("loss mode index out of range");
    }
    cm.row(2 * mode) *= root;
    cm.row(2 * mode + 1) *= root;
    cm.col(2 * mode) *= root;
    cm.col(2 * mode + 1) *= root;
    cm(2 * mode, 2 * mode) += (1.0 - eta) * kVacuumVariance;
    cm(2 * mode + 1, 2 * mode + 1) += (1.0 - eta) * kVacuumVariance;
    mean(2 * mode) *= root;
    mean(2 * mode + 1) *= root;
  }
  return GaussianState(mean, CovMatrix(cm));
}

inline GaussianState apply_loss(const GaussianState& state, const LossModel& loss,
                                std::initializer_list<int> modes) {
  return apply_loss(state, loss, std::span<const int>(modes.begin(), modes.size()));
}

/// Loss applied to every mode of the state.
inline GaussianState apply_loss_all(const GaussianState& state,
                                    const LossModel& loss) {
  std::vector<int> modes(static_cast<std::size_t>(state.modes()));
  for (int i = 0; i < state.modes(); ++i) {
    modes[static_cast<std::size_t>(i)] = i;
  }
  return apply_loss(state, loss, modes);
}

/// Attenuating channel on a single-mode state:
/// cm -> eta cm + (1-eta)/2 I, mean -> sqrt(eta) mean, eta in (0, 1].
inline GaussianState apply_attenuator(const GaussianState& state, double eta) {
  if (!(eta > 0.0 && eta <= 1.0)) {
    throw validation_error("attenuator transmissivity must lie in (0, 1]");
  }
  if (state.cm.dim() != 2) {
    throw validation_error("apply_attenuator expects a single-mode state");
  }
  const Eigen::Matrix2d cm = eta * state.cm.mat() +
                             (1.0 - eta) * kVacuumVariance * Eigen::Matrix2d::Identity();
  return GaussianState(std::sqrt(eta) * state.mean, CovMatrix(cm));
}

/// Linear amplifier on a single-mode state:
/// cm -> G cm + (G-1)/2 I, mean -> sqrt(G) mean, gain G >= 1.
inline GaussianState apply_amplifier(const GaussianState& state, double gain) {
  if (!(gain >= 1.0)) {
    throw validation_error("amplifier gain must be >= 1");
  }
  if (state.cm.dim() != 2) {
    throw validation_error("apply_amplifier expects a single-mode state");
  }
  const Eigen::Matrix2d cm = gain * state.cm.mat() +
                             (gain - 1.0) * kVacuumVariance * Eigen::Matrix2d::Identity();
  return GaussianState(std::sqrt(gain) * state.mean, CovMatrix(cm));
}

/// Default tolerance for recognizing thermal-like channel noise.
inline constexpr double kThermalTol = 1e-9;

/// Extracts the thermal-like parameter N with 2 gamma_f = N * I and m_f = 0.
/// Anisotropic or displaced noise is rejected: the closed-form capacity
/// bounds do not apply to it.
inline ThermalLikeChannel thermal_n(const TeleportNoise& noise,
                                    double tol = kThermalTol) {
  const Eigen::Matrix2d doubled = 2.0 * noise.gamma_f;
  const double n = doubled(0, 0);
  const double deviation =
      (doubled - n * Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff();
  if (deviation > tol) {
    throw shape_error("channel noise is not thermal-like: anisotropic gamma_f");
  }
  if (noise.mean_f.cwiseAbs().maxCoeff() > tol) {
    throw shape_error("channel noise is not thermal-like: nonzero displacement");
  }
  return ThermalLikeChannel(n);
}

}  // namespace cvcap
