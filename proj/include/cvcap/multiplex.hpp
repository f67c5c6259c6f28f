#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "cvcap/errors.hpp"

namespace cvcap {

enum class Family { pdc, flat, custom };

inline const char* family_name(Family f) {
  switch (f) {
    case Family::pdc: return "pdc";
    case Family::flat: return "flat";
    case Family::custom: return "custom";
  }
  return "?";
}

/// Ordered list of per-mode squeezing amplitudes r_k >= 0 with its family tag.
struct SqueezingDistribution {
  std::vector<double> r;
  Family family = Family::custom;
  double gain = 0.0;   // B for pdc, per-mode r for flat
  double decay = 0.0;  // mu for pdc
};

/// Mean photon number per arm.
struct EnergyBudget {
  double n_ph;
};

inline constexpr int kPdcModeCap = 10000;

/// Number of modes kept for a pdc distribution with decay mu: modes are
/// included until r_k < 1e-6 * r_0, capped at kPdcModeCap.
inline int pdc_truncation_modes(double mu) {
  if (!(mu >= 0.0 && mu < 1.0)) {
    throw validation_error("pdc decay mu must lie in [0, 1)");
  }
  if (mu == 0.0) {
    return 1;
  }
  const double k = std::ceil(6.0 * std::log(10.0) / -std::log(mu));
  return std::clamp(static_cast<int>(k), 1, kPdcModeCap);
}

/// PDC family r_k = B sqrt(1 - mu^2) mu^k, k = 0..n-1. The k = 0 origin makes
/// the normalized weights satisfy sum_k lambda_k^2 -> 1 as n -> infinity.
inline SqueezingDistribution pdc_distribution(double gain, double decay, int modes) {
  if (gain < 0.0) {
    throw validation_error("pdc gain B must be >= 0");
  }
  if (!(decay >= 0.0 && decay < 1.0)) {
    throw validation_error("pdc decay mu must lie in [0, 1)");
  }
  if (modes < 1) {
    throw validation_error("pdc mode count must be >= 1");
  }
  SqueezingDistribution dist;
  dist.family = Family::pdc;
  dist.gain = gain;
  dist.decay = decay;
  dist.r.resize(static_cast<std::size_t>(modes));
  const double front = gain * std::sqrt(1.0 - decay * decay);
  double factor = 1.0;
  for (int k = 0; k < modes; ++k) {
    dist.r[static_cast<std::size_t>(k)] = front * factor;
    factor *= decay;
  }
  // Drop trailing modes below the truncation floor, keeping at least one.
  const double floor = std::max(1e-6 * front, 1e-12);
  while (dist.r.size() > 1 && dist.r.back() < floor) {
    dist.r.pop_back();
  }
  return dist;
}

/// PDC family truncated automatically per pdc_truncation_modes.
inline SqueezingDistribution pdc_distribution(double gain, double decay) {
  return pdc_distribution(gain, decay, pdc_truncation_modes(decay));
}

/// Flat family: K modes with identical squeezing r.
inline SqueezingDistribution flat_distribution(int modes, double r) {
  if (modes < 1) {
    throw validation_error("flat mode count K must be >= 1");
  }
  if (r < 0.0) {
    throw validation_error("squeezing amplitude r must be >= 0");
  }
  SqueezingDistribution dist;
  dist.family = Family::flat;
  dist.gain = r;
  dist.r.assign(static_cast<std::size_t>(modes), r);
  return dist;
}

inline SqueezingDistribution custom_distribution(std::vector<double> r) {
  for (double rk : r) {
    if (rk < 0.0) {
      throw validation_error("squeezing amplitudes must be >= 0");
    }
  }
  SqueezingDistribution dist;
  dist.family = Family::custom;
  dist.r = std::move(r);
  return dist;
}

/// Mean photon number per arm: <n_ph> = sum_k sinh^2(r_k).
inline EnergyBudget mean_photon(const SqueezingDistribution& dist) {
  double total = 0.0;
  for (double r : dist.r) {
    const double s = std::sinh(r);
    total += s * s;
  }
  return EnergyBudget{total};
}

/// Effective mode number K = 1 / sum_k lambda_k^4 with normalized weights
/// lambda_k = r_k / sqrt(sum_j r_j^2). Scale invariant.
inline double effective_mode_number(const SqueezingDistribution& dist) {
  double sum_sq = 0.0;
  for (double r : dist.r) {
    sum_sq += r * r;
  }
  if (sum_sq <= 0.0) {
    throw validation_error("effective mode number undefined for an all-zero distribution");
  }
  double sum_quad = 0.0;
  for (double r : dist.r) {
    const double w = r * r / sum_sq;
    sum_quad += w * w;
  }
  return 1.0 / sum_quad;
}

/// Squeezing in dB: -10 log10(e^{-2r}) = 20 r log10(e).
inline double squeezing_db(double r) {
  if (r < 0.0) {
    throw validation_error("squeezing amplitude r must be >= 0");
  }
  return 20.0 * r / std::log(10.0);
}

inline double db_to_r(double db) {
  if (db < 0.0) {
    throw validation_error("squeezing in dB must be >= 0");
  }
  return db * std::log(10.0) / 20.0;
}

/// Flat distribution with total mean photon number n_ph:
/// closed form r = arcsinh(sqrt(n_ph / K)).
inline SqueezingDistribution gain_for_energy_flat(int modes, double n_ph) {
  if (n_ph < 0.0) {
    throw validation_error("target mean photon number must be >= 0");
  }
  if (modes < 1) {
    throw validation_error("flat mode count K must be >= 1");
  }
  return flat_distribution(modes, std::asinh(std::sqrt(n_ph / modes)));
}

/// PDC distribution with decay mu tuned by bisection on the gain B so that
/// mean_photon matches n_ph to 1e-10 relative.
inline SqueezingDistribution gain_for_energy_pdc(double mu, double n_ph,
                                                 int modes = 0) {
  if (n_ph < 0.0) {
    throw validation_error("target mean photon number must be >= 0");
  }
  if (modes <= 0) {
    modes = pdc_truncation_modes(mu);
  }
  if (n_ph == 0.0) {
    return pdc_distribution(0.0, mu, modes);
  }
  const double front = std::sqrt(1.0 - mu * mu);
  std::vector<double> lambdas(static_cast<std::size_t>(modes));
  double factor = 1.0;
  for (int k = 0; k < modes; ++k) {
    lambdas[static_cast<std::size_t>(k)] = front * factor;
    factor *= mu;
  }
  const auto energy = [&lambdas](double b) {
    double total = 0.0;
    for (double lam : lambdas) {
      const double s = std::sinh(b * lam);
      total += s * s;
    }
    return total;
  };
  double hi = 1.0;
  int doublings = 0;
  while (energy(hi) < n_ph) {
    hi *= 2.0;
    if (++doublings > 64) {
      throw numeric_error("gain_for_energy_pdc: failed to bracket the gain");
    }
  }
  double lo = 0.0;
  bool converged = false;
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (energy(mid) < n_ph) {
      lo = mid;
    } else {
      hi = mid;
    }
    // Run the interval down to rounding so that downstream optimizers see
    // noise well below their comparison thresholds.
    if (hi - lo <= 1e-15 * hi ||
        std::abs(energy(0.5 * (lo + hi)) - n_ph) <= 1e-13 * n_ph) {
      converged = true;
      break;
    }
  }
  if (!converged) {
    throw numeric_error("gain_for_energy_pdc: bisection did not converge in 200 steps");
  }
  return pdc_distribution(0.5 * (lo + hi), mu, modes);
}

}  // namespace cvcap
