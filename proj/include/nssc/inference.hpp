#pragma once
#include <nssc/core.hpp>

#include <algorithm>
#include <cmath>
#include <vector>

namespace nssc {

struct InnerBudget {
  int max_iters = 2000;
  double tol = 1e-8;
};

struct InferenceConfig {
  double lambda = 1.0;
  double sigma0_sq = 0.01;
  double init_var = 1.0;
  int max_outer_iters = 20;
  double outer_tol = 1e-6;
  InnerBudget inner;
};

struct InferenceResult {
  SparseCode code;
  NoiseField noise;
  std::vector<double> energy_trace;
  bool converged = false;
};

namespace detail {

// 0.5 * sum_i w_i (f_i - (Phi a)_i)^2 + lambda |a|_1
inline double weighted_objective(const Vec& f, const Mat& phi, const Vec& w, const Vec& a,
                                 double lambda) {
  const Vec r = f - phi * a;
  double quad = 0.0;
  for (int i = 0; i < r.size(); ++i) quad += w[i] * r[i] * r[i];
  double l1 = 0.0;
  for (int j = 0; j < a.size(); ++j) l1 += std::abs(a[j]);
  return 0.5 * quad + lambda * l1;
}

// Largest eigenvalue of Phi^T diag(w) Phi by power iteration.
inline double weighted_gram_norm(const Mat& phi, const Vec& w) {
  const int k = static_cast<int>(phi.cols());
  Vec v = Vec::Ones(k) / std::sqrt(static_cast<double>(k));
  double lam = 0.0;
  for (int it = 0; it < 30; ++it) {
    Vec u = phi.transpose() * (w.asDiagonal() * (phi * v));
    const double norm = u.norm();
    if (norm == 0.0) return 0.0;
    v = u / norm;
    lam = norm;
  }
  return lam;
}

inline double soft_threshold(double x, double t) {
  if (x > t) return x - t;
  if (x < -t) return x + t;
  return 0.0;
}

}  // namespace detail

// Approximate minimizer of 0.5 * sum w_i (f_i - (Phi a)_i)^2 + lambda |a|_1
// with w_i = 1/sigma_i^2 (0 at masked pixels). Monotone FISTA: the proximal
// point is only accepted when it improves the best objective so far, so the
// returned objective never exceeds the starting (or zero-code) objective.
inline SparseCode solve_weighted_l1(const Patch& patch, const Dictionary& dict,
                                    const NoiseField& noise, double lambda,
                                    const InnerBudget& budget = {}, const Vec* warm = nullptr) {
  const int n = static_cast<int>(patch.values.size());
  const int k = dict.k();
  NSSC_REQUIRE(n == dict.n(), "patch length != dictionary N");
  NSSC_REQUIRE(noise.ext_var.size() == n, "noise field length != patch length");
  NSSC_REQUIRE(lambda >= 0.0, "lambda must be nonnegative");
  NSSC_REQUIRE(patch.values.allFinite(), "patch has non-finite values");
  NSSC_REQUIRE(dict.atoms.allFinite(), "dictionary has non-finite entries");

  Vec w(n);
  for (int i = 0; i < n; ++i) {
    w[i] = noise.weight(i);
    NSSC_REQUIRE(std::isfinite(w[i]) && w[i] >= 0.0, "invalid noise weight");
  }

  SparseCode out;
  out.lambda = lambda;

  double lips = detail::weighted_gram_norm(dict.atoms, w) * 1.05;
  if (lips <= 0.0) {  // no usable data: l1 term alone
    out.coefficients = Vec::Zero(k);
    return out;
  }

  const double f_zero = detail::weighted_objective(patch.values, dict.atoms, w, Vec::Zero(k), lambda);
  Vec a = (warm && warm->size() == k) ? *warm : Vec::Zero(k);
  double f_a = detail::weighted_objective(patch.values, dict.atoms, w, a, lambda);
  if (f_zero < f_a) {
    a = Vec::Zero(k);
    f_a = f_zero;
  }

  Vec y = a;
  Vec a_prev = a;
  double t = 1.0;
  int rejects = 0;
  for (int it = 0; it < budget.max_iters; ++it) {
    const Vec grad = dict.atoms.transpose() * (w.asDiagonal() * (dict.atoms * y - patch.values));
    Vec z(k);
    for (int j = 0; j < k; ++j) z[j] = detail::soft_threshold(y[j] - grad[j] / lips, lambda / lips);
    const double fixed_point_res = (z - y).lpNorm<Eigen::Infinity>();

    const double f_z = detail::weighted_objective(patch.values, dict.atoms, w, z, lambda);
    a_prev = a;
    if (f_z <= f_a) {
      a = z;
      f_a = f_z;
      rejects = 0;
    } else if (++rejects >= 3) {  // step size was too optimistic
      lips *= 2.0;
      t = 1.0;
      y = a;
      rejects = 0;
      continue;
    }

    if (fixed_point_res <= budget.tol) break;

    const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
    y = a + (t / t_next) * (z - a) + ((t - 1.0) / t_next) * (a - a_prev);
    t = t_next;
  }

  out.coefficients = a;
  return out;
}

// Per-pixel exact minimizer of log(sigma0^2 + s) + r^2 / (2 (sigma0^2 + s))
// over s >= 0: interior optimum at total variance r^2/2, clipped at the floor.
// Masked pixels are left untouched and stay masked.
inline NoiseField update_noise_variances(const Patch& patch, const Dictionary& dict,
                                         const SparseCode& code, const NoiseField& prev) {
  const int n = static_cast<int>(patch.values.size());
  NSSC_REQUIRE(prev.sigma0_sq > 0.0, "sigma0_sq must be positive");
  NSSC_REQUIRE(prev.ext_var.size() == n, "noise field length != patch length");

  const Vec fhat = reconstruct(dict, code);
  NoiseField next = prev;
  for (int i = 0; i < n; ++i) {
    if (next.masked(i)) continue;
    const double r = patch.values[i] - fhat[i];
    const double half_rsq = 0.5 * r * r;
    next.ext_var[i] = half_rsq > prev.sigma0_sq ? half_rsq - prev.sigma0_sq : 0.0;
  }
  return next;
}

// Alternates the weighted l2-l1 solve (codes) with the closed-form variance
// update until the energy decrease falls below outer_tol (relative) or the
// iteration budget runs out.
inline InferenceResult infer(const Patch& patch, const Dictionary& dict,
                             const InferenceConfig& cfg,
                             const std::vector<bool>& mask = {}) {
  const int n = static_cast<int>(patch.values.size());
  NSSC_REQUIRE(n == dict.n(), "patch length != dictionary N");
  NSSC_REQUIRE(cfg.max_outer_iters >= 1, "max_outer_iters must be >= 1");
  NSSC_REQUIRE(cfg.outer_tol > 0.0, "outer_tol must be positive");
  NSSC_REQUIRE(mask.empty() || static_cast<int>(mask.size()) == n,
               "mask length != patch length");

  InferenceResult res;
  res.noise.sigma0_sq = cfg.sigma0_sq;
  res.noise.ext_var = Vec::Constant(n, cfg.init_var);
  res.noise.mask = mask;
  res.code.lambda = cfg.lambda;
  res.code.coefficients = Vec::Zero(dict.k());

  double e = energy(patch, dict, res.code, res.noise);
  res.energy_trace.push_back(e);
  for (int it = 0; it < cfg.max_outer_iters; ++it) {
    res.code = solve_weighted_l1(patch, dict, res.noise, cfg.lambda, cfg.inner,
                                 &res.code.coefficients);
    res.noise = update_noise_variances(patch, dict, res.code, res.noise);
    const double e_next = energy(patch, dict, res.code, res.noise);
    res.energy_trace.push_back(e_next);
    if (e - e_next <= cfg.outer_tol * std::max(1.0, std::abs(e))) {
      res.converged = true;
      e = e_next;
      break;
    }
    e = e_next;
  }
  return res;
}

// Classical fixed-variance sparse coding baseline: one weighted solve with a
// uniform variance and no hyperparameter update.
inline SparseCode infer_fixed_variance(const Patch& patch, const Dictionary& dict,
                                       double sigma_sq, double lambda,
                                       const InnerBudget& budget = {},
                                       const std::vector<bool>& mask = {}) {
  NSSC_REQUIRE(sigma_sq > 0.0, "sigma_sq must be positive");
  NoiseField nf = uniform_noise(static_cast<int>(patch.values.size()), sigma_sq);
  nf.mask = mask;
  return solve_weighted_l1(patch, dict, nf, lambda, budget);
}

}  // namespace nssc
