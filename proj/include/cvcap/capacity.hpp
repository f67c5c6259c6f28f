#pragma once

#include <cmath>
#include <vector>

#include "cvcap/errors.hpp"
#include "cvcap/gaussian.hpp"
#include "cvcap/multiplex.hpp"
#include "cvcap/teleport.hpp"

namespace cvcap {

/// Gaussian coherent-information lower bound on the quantum capacity of the
/// thermal-like teleportation channel, in q-nats: max{0, -1 - ln N}.
inline double qg_single(double n_param) {
  if (!(n_param > 0.0)) {
    throw validation_error("thermal parameter N must be > 0");
  }
  return std::max(0.0, -1.0 - std::log(n_param));
}

/// Attenuator-simulation upper bound, in q-nats:
/// max{0, ln(1-N) - ln N} for N < 1, zero for N >= 1.
inline double qa_single(double n_param) {
  if (!(n_param > 0.0)) {
    throw validation_error("thermal parameter N must be > 0");
  }
  if (n_param >= 1.0) {
    return 0.0;
  }
  return std::max(0.0, std::log1p(-n_param) - std::log(n_param));
}

/// Logarithmic-negativity upper bound on the two-way assisted capacity, in
/// q-nats: max{0, -ln N}. Equals 2r for a lossless EPR resource.
inline double qe_single(double n_param) {
  if (!(n_param > 0.0)) {
    throw validation_error("thermal parameter N must be > 0");
  }
  return std::max(0.0, -std::log(n_param));
}

/// Thermal parameter of the channel after symmetric beam-splitter loss:
/// N = eta e^{-2r} + (1 - eta).
inline double n_from_loss(double r, double eta) {
  if (r < 0.0) {
    throw validation_error("squeezing amplitude r must be >= 0");
  }
  if (!(eta >= 0.0 && eta <= 1.0)) {
    throw validation_error("transmissivity eta must lie in [0, 1]");
  }
  return eta * std::exp(-2.0 * r) + (1.0 - eta);
}

/// q-nats -> qubits, for display only.
inline double qnats_to_qubits(double qnats) { return qnats / std::log(2.0); }

namespace finite_s {

inline void check_args(double n_param, double s) {
  if (!(n_param > 0.0)) {
    throw validation_error("thermal parameter N must be > 0");
  }
  if (s < 0.0) {
    throw validation_error("purification squeezing s must be >= 0");
  }
}

/// Symplectic eigenvalue of the reduced output CM: nu^B = N + cosh(2s)/2.
inline double nu_b(double n_param, double s) {
  check_args(n_param, s);
  return n_param + 0.5 * std::cosh(2.0 * s);
}

/// Larger symplectic eigenvalue of the CJ-state CM gamma^BC_s.
inline double nu_bc_plus(double n_param, double s) {
  check_args(n_param, s);
  const double c = std::cosh(2.0 * s);
  const double root = std::sqrt(1.0 + n_param * n_param + 2.0 * n_param * c);
  return 0.5 * std::sqrt(1.0 + 2.0 * n_param * n_param + 2.0 * n_param * c +
                         2.0 * n_param * root);
}

/// Smaller symplectic eigenvalue of gamma^BC_s, via the exact product
/// nu_+ nu_- = (2 N cosh 2s + 1)/4. The direct minus branch cancels
/// catastrophically for large s.
inline double nu_bc_minus(double n_param, double s) {
  const double c = std::cosh(2.0 * s);
  return (2.0 * n_param * c + 1.0) / (4.0 * nu_bc_plus(n_param, s));
}

/// Larger symplectic eigenvalue of the partially time-reversed CJ state.
inline double cj_d_plus(double n_param, double s) {
  check_args(n_param, s);
  const double c2 = std::cosh(2.0 * s);
  const double c4 = std::cosh(4.0 * s);
  const double root =
      std::sqrt(4.0 * n_param * n_param - 2.0 + 2.0 * c4);
  return 0.5 * std::sqrt(2.0 * n_param * n_param + 2.0 * n_param * c2 + c4 +
                         (n_param + c2) * root);
}

/// Smaller symplectic eigenvalue of the reversed CJ state, via the exact
/// product d_+ d_- = (2 N cosh 2s + 1)/4.
inline double cj_d_minus(double n_param, double s) {
  const double c2 = std::cosh(2.0 * s);
  return (2.0 * n_param * c2 + 1.0) / (4.0 * cj_d_plus(n_param, s));
}

}  // namespace finite_s

/// CM of the Choi-Jamiolkowski state gamma^BC_s: the thermal-like channel
/// applied to one arm of an EPR state with squeezing s. Equals the EPR CM
/// plus diag(N, N, 0, 0).
inline CovMatrix cj_cm(double n_param, double s) {
  finite_s::check_args(n_param, s);
  Eigen::Matrix4d m = epr_cm(s).cm.mat();
  m(0, 0) += n_param;
  m(1, 1) += n_param;
  return CovMatrix(m);
}

/// Coherent information of the thermal-like channel over an EPR purification
/// with finite squeezing s:
///   I(s) = g(nu^B - 1/2) - g(nu^BC_+ - 1/2) - g(nu^BC_- - 1/2).
/// Increasing in s with limit -1 - ln N; the limit is returned directly once
/// cosh(2s) would overflow.
inline double coherent_information_finite_s(double n_param, double s) {
  finite_s::check_args(n_param, s);
  if (2.0 * s > 700.0) {
    return -1.0 - std::log(n_param);
  }
  const double wb = finite_s::nu_b(n_param, s) - 0.5;
  const double wp = finite_s::nu_bc_plus(n_param, s) - 0.5;
  const double wm = finite_s::nu_bc_minus(n_param, s) - 0.5;
  return g_entropy(wb) - g_entropy(std::max(0.0, wp)) -
         g_entropy(std::max(0.0, wm));
}

/// Logarithmic negativity of the CJ state at finite purification squeezing:
/// max{0, -ln(2 d_-)} = max{0, ln(2 d_+) - ln(2 N cosh 2s + 1)}.
/// Converges to max{0, -ln N} as s -> infinity.
inline double log_negativity_finite_s(double n_param, double s) {
  finite_s::check_args(n_param, s);
  if (4.0 * s > 700.0) {
    return std::max(0.0, -std::log(n_param));
  }
  const double c2 = std::cosh(2.0 * s);
  const double d_plus = finite_s::cj_d_plus(n_param, s);
  return std::max(0.0, std::log(2.0 * d_plus) -
                           std::log(2.0 * n_param * c2 + 1.0));
}

/// Per-mode capacity entries of a multiplexed teleportation channel.
struct ModeCapacity {
  int k;
  double r;
  double n;
  double qg;
  double qa;
  double qe;
};

/// Per-mode and total capacity bounds for a squeezing distribution under
/// symmetric loss eta.
struct CapacityReport {
  std::vector<ModeCapacity> per_mode;
  double total_qg = 0.0;
  double total_qa = 0.0;
  double total_qe = 0.0;
  double eta = 1.0;
};

inline CapacityReport report(const SqueezingDistribution& dist, double eta) {
  if (!(eta >= 0.0 && eta <= 1.0)) {
    throw validation_error("transmissivity eta must lie in [0, 1]");
  }
  CapacityReport rep;
  rep.eta = eta;
  rep.per_mode.reserve(dist.r.size());
  int k = 0;
  for (double r : dist.r) {
    const double n = n_from_loss(r, eta);
    ModeCapacity mode{k, r, n, qg_single(n), qa_single(n), qe_single(n)};
    rep.total_qg += mode.qg;
    rep.total_qa += mode.qa;
    rep.total_qe += mode.qe;
    rep.per_mode.push_back(mode);
    ++k;
  }
  return rep;
}

}  // namespace cvcap
