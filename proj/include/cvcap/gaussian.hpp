#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>
#include <vector>

#include "cvcap/errors.hpp"

namespace cvcap {

/// Vacuum quadrature variance in the hbar = 1 convention used throughout.
inline constexpr double kVacuumVariance = 0.5;

/// Absolute tolerance on symplectic eigenvalues for the physicality check
/// nu_j >= 1/2.
inline constexpr double kPhysicalityTol = 1e-9;

/// Relative tolerance for the symmetry check of covariance matrices.
inline constexpr double kSymmetryTol = 1e-12;

/// Covariance matrix of an n-mode bosonic state, quadratures ordered
/// (q_1, p_1, ..., q_n, p_n). Entries are dimensionless variances with
/// vacuum = 1/2 on the diagonal.
class CovMatrix {
 public:
  explicit CovMatrix(Eigen::MatrixXd m) : mat_(std::move(m)) {
    if (mat_.rows() != mat_.cols()) {
      throw validation_error("covariance matrix must be square");
    }
    if (mat_.rows() < 2 || mat_.rows() % 2 != 0) {
      throw validation_error("covariance matrix dimension must be even and >= 2");
    }
    const double scale = std::max(1.0, mat_.cwiseAbs().maxCoeff());
    const double asym = (mat_ - mat_.transpose()).cwiseAbs().maxCoeff();
    if (asym > kSymmetryTol * scale) {
      throw validation_error("covariance matrix is not symmetric");
    }
    mat_ = ((mat_ + mat_.transpose()) / 2.0).eval();
  }

  static CovMatrix vacuum(int n_modes) {
    return CovMatrix(kVacuumVariance *
                     Eigen::MatrixXd::Identity(2 * n_modes, 2 * n_modes));
  }

  int dim() const { return static_cast<int>(mat_.rows()); }
  int modes() const { return dim() / 2; }
  const Eigen::MatrixXd& mat() const { return mat_; }

 private:
  Eigen::MatrixXd mat_;
};

/// Symplectic spectrum of a CM: n nonnegative values, sorted descending.
/// Physical states satisfy nu_j >= 1/2.
struct SymplecticSpectrum {
  std::vector<double> values;

  double min() const { return values.back(); }
  double max() const { return values.front(); }
};

/// Block-diagonal symplectic form Omega + ... + Omega with
/// Omega = [[0, -1], [1, 0]].
inline Eigen::MatrixXd symplectic_form(int n_modes) {
  Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(2 * n_modes, 2 * n_modes);
  for (int k = 0; k < n_modes; ++k) {
    omega(2 * k, 2 * k + 1) = -1.0;
    omega(2 * k + 1, 2 * k) = 1.0;
  }
  return omega;
}

/// Symplectic eigenvalues of a CM: the positive imaginary parts of the
/// eigenvalues of Omega * gamma, which come in pairs +-i nu_j.
///
/// For positive-definite gamma they are computed as the singular values of
/// the antisymmetric matrix L^T Omega L with gamma = L L^T. Diagonalizing
/// Omega * gamma directly loses all accuracy for strongly squeezed states
/// (its eigenvectors become parallel, amplifying rounding by e^{4r}); the
/// Cholesky route keeps the error at eps * ||gamma||. Non-positive-definite
/// input falls back to the complex eigensolver.
inline SymplecticSpectrum symplectic_eigenvalues(const CovMatrix& cm) {
  const int n = cm.modes();
  std::vector<double> magnitudes(static_cast<std::size_t>(2 * n));
  const Eigen::LLT<Eigen::MatrixXd> llt(cm.mat());
  if (llt.info() == Eigen::Success) {
    const Eigen::MatrixXd l = llt.matrixL();
    const Eigen::MatrixXd m = l.transpose() * symplectic_form(n) * l;
    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
    for (int i = 0; i < 2 * n; ++i) {
      magnitudes[static_cast<std::size_t>(i)] = svd.singularValues()[i];
    }
  } else {
    const Eigen::MatrixXd product = symplectic_form(n) * cm.mat();
    Eigen::EigenSolver<Eigen::MatrixXd> solver(product,
                                               /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success) {
      std::ostringstream oss;
      oss << "eigensolver failed to converge on Omega*gamma =\n" << product;
      throw numeric_error(oss.str());
    }
    for (int i = 0; i < 2 * n; ++i) {
      magnitudes[static_cast<std::size_t>(i)] =
          std::abs(solver.eigenvalues()[i].imag());
    }
  }
  // The 2n magnitudes form n nearly-identical pairs; averaging each pair
  // cancels asymmetric rounding.
  std::sort(magnitudes.begin(), magnitudes.end(), std::greater<>());
  SymplecticSpectrum spectrum;
  spectrum.values.reserve(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    spectrum.values.push_back((magnitudes[static_cast<std::size_t>(2 * j)] +
                               magnitudes[static_cast<std::size_t>(2 * j + 1)]) /
                              2.0);
  }
  return spectrum;
}

/// Physicality slack: 1e-9 absolute for order-one CMs, widening with the
/// matrix norm once eigensolver rounding exceeds that (extreme squeezing).
inline double physicality_slack(const CovMatrix& cm, double tol = kPhysicalityTol) {
  return std::max(tol, 2e-13 * cm.mat().cwiseAbs().maxCoeff());
}

/// Resolution radius of the symplectic spectrum around nu = 1/2: entry
/// rounding of size eps * ||gamma|| moves nu by up to eps * ||gamma||^2, so
/// smaller deviations from purity are not determined by the stored matrix.
inline double nu_resolution(const CovMatrix& cm) {
  constexpr double eps = 2.220446049250313e-16;
  const double scale = cm.mat().cwiseAbs().maxCoeff();
  return std::max(kPhysicalityTol, 8.0 * eps * std::max(scale, scale * scale));
}

/// Smallest eigenvalue of the Hermitian matrix gamma + (i/2) Omega. The
/// uncertainty relation in this form (>= 0 iff all nu_j >= 1/2) stays
/// decidable at absolute accuracy eps * ||gamma|| for any squeezing, unlike
/// the symplectic spectrum itself.
inline double min_uncertainty_eigenvalue(const CovMatrix& cm) {
  using Complex = std::complex<double>;
  Eigen::MatrixXcd h = cm.mat().cast<Complex>() +
                       Complex(0.0, 0.5) *
                           symplectic_form(cm.modes()).cast<Complex>();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
      h, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw numeric_error("Hermitian eigensolver failed on gamma + i/2 Omega");
  }
  return solver.eigenvalues().minCoeff();
}

inline bool is_physical(const CovMatrix& cm, double tol = kPhysicalityTol) {
  return min_uncertainty_eigenvalue(cm) >= -physicality_slack(cm, tol);
}

/// n-mode Gaussian state: first moments plus covariance matrix.
struct GaussianState {
  Eigen::VectorXd mean;
  CovMatrix cm;

  GaussianState(Eigen::VectorXd mean_in, CovMatrix cm_in)
      : mean(std::move(mean_in)), cm(std::move(cm_in)) {
    if (mean.size() != cm.dim()) {
      throw validation_error("mean vector length must equal CM dimension");
    }
    if (!is_physical(cm)) {
      throw validation_error("covariance matrix violates the uncertainty relation");
    }
  }

  static GaussianState vacuum(int n_modes) {
    return GaussianState(Eigen::VectorXd::Zero(2 * n_modes),
                         CovMatrix::vacuum(n_modes));
  }

  int modes() const { return cm.modes(); }
};

/// Bosonic entropy function g(w) = (w+1)ln(w+1) - w ln(w), in q-nats.
///
/// Evaluated as w*log1p(1/w) + log1p(w): the textbook form cancels
/// catastrophically once w exceeds ~1/eps.
inline double g_entropy(double w) {
  if (w < 0.0) {
    throw validation_error("g_entropy requires w >= 0");
  }
  if (w == 0.0) {
    return 0.0;
  }
  return w * std::log1p(1.0 / w) + std::log1p(w);
}

/// Von Neumann entropy of a Gaussian state in q-nats:
/// sum_j g(nu_j - 1/2) over the symplectic spectrum.
inline double von_neumann_entropy(const CovMatrix& cm) {
  if (!is_physical(cm)) {
    throw validation_error("unphysical CM: symplectic eigenvalue below 1/2");
  }
  const SymplecticSpectrum spectrum = symplectic_eigenvalues(cm);
  const double resolution = nu_resolution(cm);
  double entropy = 0.0;
  for (double nu : spectrum.values) {
    // Deviations from purity below the spectrum's resolution count as pure.
    const double w = nu - kVacuumVariance;
    entropy += w <= resolution ? 0.0 : g_entropy(w);
  }
  return entropy;
}

/// Partial time reversal of a two-mode CM: flips the sign of the selected
/// mode's p quadrature (row and column). Involution.
inline CovMatrix partial_time_reversal(const CovMatrix& cm, int mode_index) {
  if (cm.dim() != 4) {
    throw validation_error("partial_time_reversal requires a two-mode CM");
  }
  if (mode_index < 0 || mode_index > 1) {
    throw validation_error("mode index out of range for a two-mode CM");
  }
  Eigen::MatrixXd flipped = cm.mat();
  const int p = 2 * mode_index + 1;
  flipped.row(p) *= -1.0;
  flipped.col(p) *= -1.0;
  return CovMatrix(flipped);
}

/// Logarithmic negativity of a two-mode Gaussian state in q-nats:
/// max{0, -ln(2 d_-)} with d_- the smallest symplectic eigenvalue of the
/// partially time-reversed CM.
inline double log_negativity(const CovMatrix& cm) {
  if (cm.dim() != 4) {
    throw validation_error("log_negativity requires a two-mode CM");
  }
  if (!is_physical(cm)) {
    throw validation_error("log_negativity requires a physical CM");
  }
  const double d_min = symplectic_eigenvalues(partial_time_reversal(cm, 1)).min();
  return std::max(0.0, -std::log(2.0 * d_min));
}

}  // namespace cvcap
