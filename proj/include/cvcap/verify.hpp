#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cvcap/capacity.hpp"
#include "cvcap/gaussian.hpp"
#include "cvcap/optimizer.hpp"

namespace cvcap {

struct CheckResult {
  std::string name;
  bool pass;
  std::string detail;
};

namespace verify_detail {

inline CheckResult make(const std::string& name, bool pass, double metric,
                        double limit) {
  std::ostringstream oss;
  oss.precision(3);
  oss << std::scientific << "worst " << metric << " vs limit " << limit;
  return CheckResult{name, pass, oss.str()};
}

inline const std::vector<double>& n_grid() {
  static const std::vector<double> grid{0.05, 0.1, 0.2, 0.3};
  return grid;
}

/// Appendix A: finite-s coherent information converges to -1 - ln N.
inline CheckResult coherent_info_convergence() {
  double worst = 0.0;
  for (double n : n_grid()) {
    const double limit = -1.0 - std::log(n);
    worst = std::max(worst,
                     std::abs(coherent_information_finite_s(n, 8.0) - limit));
  }
  return make("appendix-a coherent-information convergence at s=8", worst < 2e-3,
              worst, 2e-3);
}

/// Appendix A: the coherent information increases with the purification
/// squeezing s.
inline CheckResult coherent_info_monotone() {
  bool pass = true;
  for (double n : n_grid()) {
    double previous = coherent_information_finite_s(n, 0.0);
    for (int s = 1; s <= 8; ++s) {
      const double current = coherent_information_finite_s(n, s);
      if (!(current > previous)) {
        pass = false;
      }
      previous = current;
    }
  }
  return CheckResult{"appendix-a coherent information increasing in s", pass,
                     "s in {0..8}, N in {0.05, 0.1, 0.2, 0.3}"};
}

/// Appendix B: finite-s log negativity converges to -ln N.
inline CheckResult negativity_convergence() {
  double worst = 0.0;
  for (double n : n_grid()) {
    const double limit = -std::log(n);
    worst =
        std::max(worst, std::abs(log_negativity_finite_s(n, 8.0) - limit));
  }
  return make("appendix-b log-negativity convergence at s=8", worst < 2e-3,
              worst, 2e-3);
}

/// Appendix B: closed-form negativity matches the general eigensolver route
/// through the partially time-reversed CJ state.
inline CheckResult negativity_cross_check() {
  double worst = 0.0;
  for (double n : {0.05, 0.2, 0.5, 0.9}) {
    for (double s : {0.0, 0.5, 1.0, 2.0, 4.0}) {
      const double closed = log_negativity_finite_s(n, s);
      const double eigen = log_negativity(cj_cm(n, s));
      worst = std::max(worst, std::abs(closed - eigen));
    }
  }
  return make("appendix-b closed form vs eigensolver", worst <= 1e-9, worst,
              1e-9);
}

/// Appendix C: optimize_flat solutions are stationary points of the
/// Lagrange conditions (equal residuals across modes).
inline CheckResult stationarity() {
  double worst = 0.0;
  for (Bound bound : {Bound::QG, Bound::QA}) {
    for (double n_ph : {5.0, 30.0, 120.0}) {
      const OptResult opt = optimize_flat(n_ph, 1.0, bound);
      const SqueezingDistribution dist =
          flat_distribution(static_cast<int>(opt.best_k), opt.r);
      const std::vector<double> res = lagrange_residual(dist, bound);
      const auto [lo, hi] = std::minmax_element(res.begin(), res.end());
      worst = std::max(worst, *hi - *lo);
    }
  }
  return make("appendix-c stationarity of flat optima", worst < 1e-9, worst,
              1e-9);
}

/// Appendix C: the printed derivatives dq~/dn match central finite
/// differences of q~(r(n)).
inline CheckResult derivative_check() {
  const auto q_tilde = [](Bound bound, double n) {
    const double r = std::asinh(std::sqrt(n));
    switch (bound) {
      case Bound::QG: return 2.0 * r - 1.0;
      case Bound::QA: return 2.0 * r + std::log1p(-std::exp(-2.0 * r));
      default: return 2.0 * r;
    }
  };
  double worst = 0.0;
  const double h = 1e-6;
  for (Bound bound : {Bound::QG, Bound::QA}) {
    for (int i = 0; i <= 24; ++i) {
      const double n = 0.2 + (5.0 - 0.2) * i / 24.0;
      const double fd =
          (q_tilde(bound, n + h) - q_tilde(bound, n - h)) / (2.0 * h);
      worst = std::max(worst, std::abs(fd - dq_dn(bound, n)));
    }
  }
  return make("appendix-c derivatives vs finite differences", worst < 1e-6,
              worst, 1e-6);
}

/// Appendix C: the flat distribution dominates every energy-preserving
/// non-flat perturbation whose modes stay above threshold.
inline CheckResult flat_dominance(std::uint64_t seed, int trials) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> k_dist(2, 40);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  int violations = 0;
  for (int trial = 0; trial < trials; ++trial) {
    const Bound bound = (trial % 2 == 0) ? Bound::QG : Bound::QA;
    const double threshold = zero_capacity_threshold(bound);
    const int k = k_dist(rng);
    const double n_mode = threshold * 1.05 + 5.0 * unit(rng);
    // Zero-sum perturbation of the per-mode photon numbers, scaled to keep
    // every mode above threshold.
    std::vector<double> delta(static_cast<std::size_t>(k));
    double mean = 0.0;
    for (double& d : delta) {
      d = 2.0 * unit(rng) - 1.0;
      mean += d;
    }
    mean /= k;
    double max_abs = 0.0;
    for (double& d : delta) {
      d -= mean;
      max_abs = std::max(max_abs, std::abs(d));
    }
    if (max_abs == 0.0) {
      continue;
    }
    const double scale = 0.5 * (n_mode - threshold * 1.01) / max_abs;
    std::vector<double> r_flat(static_cast<std::size_t>(k));
    std::vector<double> r_pert(static_cast<std::size_t>(k));
    for (int j = 0; j < k; ++j) {
      r_flat[static_cast<std::size_t>(j)] = std::asinh(std::sqrt(n_mode));
      r_pert[static_cast<std::size_t>(j)] = std::asinh(
          std::sqrt(n_mode + scale * delta[static_cast<std::size_t>(j)]));
    }
    const auto value = [&](const std::vector<double>& rs) {
      double total = 0.0;
      for (double r : rs) {
        total += bound_single(bound, n_from_loss(r, 1.0));
      }
      return total;
    };
    const double flat_value = value(r_flat);
    const double pert_value = value(r_pert);
    const bool nontrivial = scale * max_abs > 1e-9;
    if (pert_value > flat_value || (nontrivial && !(flat_value > pert_value))) {
      ++violations;
    }
  }
  std::ostringstream oss;
  oss << violations << " violations in " << trials << " trials";
  return CheckResult{"appendix-c flat distribution dominance", violations == 0,
                     oss.str()};
}

}  // namespace verify_detail

/// Appendix A/B convergence checks and Appendix C stationarity checks.
inline std::vector<CheckResult> run_verification(std::uint64_t seed = 20120427,
                                                 int trials = 500) {
  return {verify_detail::coherent_info_convergence(),
          verify_detail::coherent_info_monotone(),
          verify_detail::negativity_convergence(),
          verify_detail::negativity_cross_check(),
          verify_detail::stationarity(),
          verify_detail::derivative_check(),
          verify_detail::flat_dominance(seed, trials)};
}

}  // namespace cvcap
