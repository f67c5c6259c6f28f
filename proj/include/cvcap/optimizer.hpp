#pragma once

#include <cmath>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "cvcap/capacity.hpp"
#include "cvcap/errors.hpp"
#include "cvcap/multiplex.hpp"

namespace cvcap {

enum class Bound { QG, QA, QE };

inline const char* bound_name(Bound b) {
  switch (b) {
    case Bound::QG: return "QG";
    case Bound::QA: return "QA";
    case Bound::QE: return "QE";
  }
  return "?";
}

inline double bound_single(Bound b, double n_param) {
  switch (b) {
    case Bound::QG: return qg_single(n_param);
    case Bound::QA: return qa_single(n_param);
    case Bound::QE: return qe_single(n_param);
  }
  throw validation_error("unknown capacity bound");
}

/// Per-mode energy below which the single-mode bound is zero.
/// QG: sinh^2(1/2); QA: 1/8; QE: 0.
inline double zero_capacity_threshold(Bound b) {
  switch (b) {
    case Bound::QG: {
      const double s = std::sinh(0.5);
      return s * s;
    }
    case Bound::QA: return 0.125;
    case Bound::QE: return 0.0;
  }
  throw validation_error("unknown capacity bound");
}

/// Flat-coding bound for K modes sharing energy n_ph under loss eta,
/// in q-nats: K * q(N(r, eta)) with r = arcsinh(sqrt(n_ph / K)).
inline double q_flat(int k, double n_ph, double eta, Bound bound) {
  if (k < 1) {
    throw validation_error("flat mode count K must be >= 1");
  }
  if (n_ph < 0.0) {
    throw validation_error("mean photon number must be >= 0");
  }
  if (n_ph == 0.0) {
    return 0.0;
  }
  const double r = std::asinh(std::sqrt(n_ph / k));
  return k * bound_single(bound, n_from_loss(r, eta));
}

/// Derivative d q~ / d n of the unclamped single-mode bound with respect to
/// the per-mode photon number n, at r = arcsinh(sqrt(n)), lossless:
///   QG, QE: 1 / sqrt(n (1+n))
///   QA:     e^{2r} / (e^{2r} - 1) / sqrt(n (1+n)).
inline double dq_dn(Bound bound, double n) {
  if (!(n > 0.0)) {
    throw validation_error("per-mode photon number must be > 0");
  }
  const double base = 1.0 / std::sqrt(n * (1.0 + n));
  if (bound == Bound::QA) {
    const double e2r = std::exp(2.0 * std::asinh(std::sqrt(n)));
    return e2r / (e2r - 1.0) * base;
  }
  return base;
}

/// Result of a constrained capacity optimization at fixed energy.
struct OptResult {
  Family family = Family::flat;
  double best_k = 1.0;  // integer-valued for flat, effective K for pdc
  double r = 0.0;       // per-mode squeezing (flat) or r_0 (pdc)
  double gain_b = 0.0;  // pdc gain B
  double mu = 0.0;      // pdc decay
  double best_value = 0.0;
  Bound bound = Bound::QG;
  double n_ph = 0.0;
  double eta = 1.0;
  double lagrange_multiplier = 0.0;  // dq~/dn at the per-mode optimum, 0 below threshold
};

/// Integer search for the flat mode number maximizing the chosen bound at
/// fixed energy, over K in [1, ceil(10 n_ph) + 10]. Ties break toward
/// smaller K.
inline OptResult optimize_flat(double n_ph, double eta, Bound bound) {
  if (!(n_ph > 0.0)) {
    throw validation_error("mean photon number must be > 0");
  }
  const int k_max = static_cast<int>(std::ceil(10.0 * n_ph)) + 10;
  OptResult result;
  result.family = Family::flat;
  result.bound = bound;
  result.n_ph = n_ph;
  result.eta = eta;
  int best_k = 1;
  double best_value = q_flat(1, n_ph, eta, bound);
  for (int k = 2; k <= k_max; ++k) {
    const double value = q_flat(k, n_ph, eta, bound);
    if (value > best_value) {
      best_value = value;
      best_k = k;
    }
  }
  result.best_k = best_k;
  result.r = std::asinh(std::sqrt(n_ph / best_k));
  result.best_value = best_value;
  const double n_per_mode = n_ph / best_k;
  result.lagrange_multiplier =
      best_value > 0.0 ? dq_dn(bound, n_per_mode) : 0.0;
  return result;
}

/// Default decay grid for the pdc optimizer: 512 uniform points in
/// [0, 0.995] (effective K up to ~400).
inline const std::vector<double>& default_mu_grid() {
  static const std::vector<double> grid = [] {
    std::vector<double> g(512);
    for (std::size_t i = 0; i < g.size(); ++i) {
      g[i] = 0.995 * static_cast<double>(i) / 511.0;
    }
    return g;
  }();
  return grid;
}

/// Grid search over the pdc decay mu, solving the gain B per point so the
/// distribution carries energy n_ph, maximizing the chosen bound.
inline OptResult optimize_pdc(double n_ph, double eta, Bound bound,
                              std::span<const double> mu_grid = {}) {
  if (!(n_ph > 0.0)) {
    throw validation_error("mean photon number must be > 0");
  }
  std::span<const double> grid =
      mu_grid.empty() ? std::span<const double>(default_mu_grid()) : mu_grid;
  OptResult result;
  result.family = Family::pdc;
  result.bound = bound;
  result.n_ph = n_ph;
  result.eta = eta;
  double best_value = -1.0;
  SqueezingDistribution best_dist;
  for (double mu : grid) {
    const SqueezingDistribution dist = gain_for_energy_pdc(mu, n_ph);
    double value = 0.0;
    for (double r : dist.r) {
      value += bound_single(bound, n_from_loss(r, eta));
    }
    if (value > best_value) {
      best_value = value;
      best_dist = dist;
    }
  }
  result.best_value = best_value;
  result.mu = best_dist.decay;
  result.gain_b = best_dist.gain;
  result.r = best_dist.r.empty() ? 0.0 : best_dist.r.front();
  result.best_k = effective_mode_number(best_dist);
  const double n_top = std::sinh(result.r) * std::sinh(result.r);
  result.lagrange_multiplier =
      (best_value > 0.0 && n_top > 0.0) ? dq_dn(bound, n_top) : 0.0;
  return result;
}

/// Appendix-C stationarity residuals d q~(r(n_k)) / d n_k per mode. A
/// distribution is stationary under the energy constraint iff all residuals
/// coincide. Every mode must lie strictly above the zero-capacity threshold.
inline std::vector<double> lagrange_residual(const SqueezingDistribution& dist,
                                             Bound bound) {
  const double threshold = zero_capacity_threshold(bound);
  std::vector<double> residuals;
  residuals.reserve(dist.r.size());
  for (std::size_t k = 0; k < dist.r.size(); ++k) {
    const double s = std::sinh(dist.r[k]);
    const double n = s * s;
    if (!(n > threshold)) {
      throw validation_error("lagrange_residual: mode " + std::to_string(k) +
                             " is at or below the zero-capacity threshold");
    }
    residuals.push_back(dq_dn(bound, n));
  }
  return residuals;
}

struct Bracket {
  double lo;
  double hi;
};

/// Single-mode bound as a function of the mean photon number.
inline double single_mode_bound(Bound bound, double n_ph, double eta) {
  if (n_ph == 0.0) {
    return 0.0;
  }
  const double r = std::asinh(std::sqrt(n_ph));
  return bound_single(bound, n_from_loss(r, eta));
}

/// Smallest mean photon number with positive single-mode capacity, located
/// by bisection to 1e-8 absolute. The capacity must be zero at bracket.lo
/// and positive at bracket.hi.
inline double find_threshold(Bound bound, double eta, Bracket bracket) {
  if (!(bracket.lo >= 0.0 && bracket.hi > bracket.lo)) {
    throw validation_error("invalid threshold bracket");
  }
  const auto positive = [&](double n) {
    return single_mode_bound(bound, n, eta) > 0.0;
  };
  if (positive(bracket.lo) || !positive(bracket.hi)) {
    throw bracketing_error(
        "find_threshold: capacity positivity does not change on the bracket");
  }
  double lo = bracket.lo;
  double hi = bracket.hi;
  for (int iter = 0; iter < 200 && hi - lo > 1e-8; ++iter) {
    const double mid = 0.5 * (lo + hi);
    (positive(mid) ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

/// Crossover energy where curve_a first exceeds curve_b. Handles curves that
/// coincide below the crossover (predicate bisection on a - b > 1e-12).
inline double find_crossover(const std::function<double(double)>& curve_a,
                             const std::function<double(double)>& curve_b,
                             Bracket bracket) {
  if (!(bracket.hi > bracket.lo)) {
    throw validation_error("invalid crossover bracket");
  }
  const auto above = [&](double n) {
    return curve_a(n) - curve_b(n) > 1e-12;
  };
  if (above(bracket.lo) || !above(bracket.hi)) {
    throw bracketing_error("find_crossover: no crossing inside the bracket");
  }
  double lo = bracket.lo;
  double hi = bracket.hi;
  for (int iter = 0; iter < 100 && hi - lo > 1e-6; ++iter) {
    const double mid = 0.5 * (lo + hi);
    (above(mid) ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

/// Curve n_ph -> pdc-optimized bound at fixed eta, for crossover searches.
inline std::function<double(double)> pdc_optimized_curve(Bound bound, double eta) {
  return [bound, eta](double n_ph) {
    return optimize_pdc(n_ph, eta, bound).best_value;
  };
}

inline std::function<double(double)> single_mode_curve(Bound bound, double eta) {
  return [bound, eta](double n_ph) {
    return single_mode_bound(bound, n_ph, eta);
  };
}

/// Squeezing maximizing the per-photon rate q(N(r, eta)) / sinh^2(r), found
/// by golden-section search on the positive-capacity interval. Defined for
/// QG (eta > 1 - 1/e) and QA (eta > 1/2); the QE rate has no interior
/// maximum.
inline double optimal_mode_squeezing(double eta, Bound bound) {
  if (!(eta > 0.0 && eta <= 1.0)) {
    throw validation_error("transmissivity eta must lie in (0, 1]");
  }
  double n_star;  // threshold on N below which the bound is positive
  switch (bound) {
    case Bound::QG: n_star = std::exp(-1.0); break;
    case Bound::QA: n_star = 0.5; break;
    default:
      throw validation_error(
          "optimal_mode_squeezing: per-photon QE rate diverges as r -> 0");
  }
  // N(r, eta) decreases to 1 - eta as r grows; positive capacity needs
  // 1 - eta < n_star.
  if (!(1.0 - eta < n_star)) {
    throw validation_error(
        "optimal_mode_squeezing: capacity is zero for every r at this eta");
  }
  const double r_threshold = -0.5 * std::log((n_star - (1.0 - eta)) / eta);
  double lo = r_threshold + 1e-9;
  double hi = r_threshold + 25.0;
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  const auto rate = [&](double r) {
    const double s = std::sinh(r);
    return bound_single(bound, n_from_loss(r, eta)) / (s * s);
  };
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = rate(x1);
  double f2 = rate(x2);
  for (int iter = 0; iter < 300 && hi - lo > 1e-12; ++iter) {
    if (f1 > f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = rate(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = rate(x2);
    }
  }
  return 0.5 * (lo + hi);
}

/// One record of a parameter sweep.
struct SweepRow {
  double x;
  double qg;
  double qa;
  double qe;
  double k_opt;
  double r_opt;
};

struct SweepResult {
  std::vector<SweepRow> rows;
};

enum class SweepKind { fixed_flat, fixed_pdc, optimal_flat, optimal_pdc };

/// Distribution family evaluated per sweep point. Fixed families keep their
/// shape parameter and are re-tuned to the energy of each point; optimal
/// families re-optimize the shape for the requested bound.
struct SweepFamilySpec {
  SweepKind kind = SweepKind::fixed_flat;
  int flat_k = 1;
  double pdc_mu = 0.0;
  Bound opt_bound = Bound::QG;

  static SweepFamilySpec flat(int k) {
    return SweepFamilySpec{SweepKind::fixed_flat, k, 0.0, Bound::QG};
  }
  static SweepFamilySpec pdc(double mu) {
    return SweepFamilySpec{SweepKind::fixed_pdc, 1, mu, Bound::QG};
  }
  static SweepFamilySpec opt_flat(Bound b) {
    return SweepFamilySpec{SweepKind::optimal_flat, 1, 0.0, b};
  }
  static SweepFamilySpec opt_pdc(Bound b) {
    return SweepFamilySpec{SweepKind::optimal_pdc, 1, 0.0, b};
  }
};

namespace detail {

inline SweepRow evaluate_point(const SweepFamilySpec& family, double x,
                               double n_ph, double eta) {
  SweepRow row{x, 0.0, 0.0, 0.0, 0.0, 0.0};
  SqueezingDistribution dist;
  switch (family.kind) {
    case SweepKind::fixed_flat:
      dist = gain_for_energy_flat(family.flat_k, n_ph);
      row.k_opt = family.flat_k;
      break;
    case SweepKind::fixed_pdc: {
      dist = gain_for_energy_pdc(family.pdc_mu, n_ph);
      // The normalized weights do not depend on the gain, so the effective K
      // of the family is well defined even at zero energy.
      row.k_opt = effective_mode_number(pdc_distribution(1.0, family.pdc_mu));
      break;
    }
    case SweepKind::optimal_flat: {
      if (n_ph == 0.0) {
        dist = flat_distribution(1, 0.0);
        row.k_opt = 1.0;
        break;
      }
      const OptResult opt = optimize_flat(n_ph, eta, family.opt_bound);
      dist = flat_distribution(static_cast<int>(opt.best_k), opt.r);
      row.k_opt = opt.best_k;
      break;
    }
    case SweepKind::optimal_pdc: {
      if (n_ph == 0.0) {
        dist = flat_distribution(1, 0.0);
        row.k_opt = 1.0;
        break;
      }
      const OptResult opt = optimize_pdc(n_ph, eta, family.opt_bound);
      dist = pdc_distribution(opt.gain_b, opt.mu);
      row.k_opt = opt.best_k;
      break;
    }
  }
  const CapacityReport rep = report(dist, eta);
  row.qg = rep.total_qg;
  row.qa = rep.total_qa;
  row.qe = rep.total_qe;
  row.r_opt = dist.r.empty() ? 0.0 : dist.r.front();
  return row;
}

inline void check_grid(const std::vector<double>& grid) {
  if (grid.empty()) {
    throw validation_error("sweep grid must be non-empty");
  }
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) {
      throw validation_error("sweep grid must be strictly ascending");
    }
  }
}

}  // namespace detail

/// Capacity bounds versus energy at fixed loss. Rows are emitted per grid
/// point, families in the given order.
inline SweepResult sweep_energy(const std::vector<double>& n_ph_grid, double eta,
                                const std::vector<SweepFamilySpec>& families) {
  detail::check_grid(n_ph_grid);
  SweepResult result;
  result.rows.reserve(n_ph_grid.size() * families.size());
  for (double n_ph : n_ph_grid) {
    if (n_ph < 0.0) {
      throw validation_error("mean photon number must be >= 0");
    }
    for (const SweepFamilySpec& family : families) {
      result.rows.push_back(detail::evaluate_point(family, n_ph, n_ph, eta));
    }
  }
  return result;
}

/// Capacity bounds versus transmissivity at fixed energy.
inline SweepResult sweep_loss(const std::vector<double>& eta_grid, double n_ph,
                              const std::vector<SweepFamilySpec>& families) {
  detail::check_grid(eta_grid);
  if (n_ph < 0.0) {
    throw validation_error("mean photon number must be >= 0");
  }
  SweepResult result;
  result.rows.reserve(eta_grid.size() * families.size());
  for (double eta : eta_grid) {
    if (!(eta >= 0.0 && eta <= 1.0)) {
      throw validation_error("transmissivity eta must lie in [0, 1]");
    }
    for (const SweepFamilySpec& family : families) {
      result.rows.push_back(detail::evaluate_point(family, eta, n_ph, eta));
    }
  }
  return result;
}

}  // namespace cvcap
