#pragma once
#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace nssc {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

struct ContractViolation : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

#define NSSC_REQUIRE(cond, msg)                          \
  do {                                                   \
    if (!(cond)) throw ::nssc::ContractViolation((msg)); \
  } while (0)

// K atoms stored as columns of an N x K matrix, N = patch_h * patch_w.
struct Dictionary {
  int patch_h = 0;
  int patch_w = 0;
  Mat atoms;

  int n() const { return patch_h * patch_w; }
  int k() const { return static_cast<int>(atoms.cols()); }
};

struct Patch {
  Vec values;
  double scale = 1.0;   // multiply to undo normalization
  double offset = 0.0;  // add back after scaling
};

struct SparseCode {
  Vec coefficients;
  double lambda = 1.0;
};

// Per-pixel variance sigma_i^2 = sigma0_sq + ext_var[i]; masked pixels carry
// infinite variance, i.e. weight exactly zero.
struct NoiseField {
  double sigma0_sq = 0.01;
  Vec ext_var;
  std::vector<bool> mask;

  bool masked(int i) const { return !mask.empty() && mask[i]; }
  double total_var(int i) const { return sigma0_sq + ext_var[i]; }
  double weight(int i) const { return masked(i) ? 0.0 : 1.0 / total_var(i); }
};

// Subtracts the mean and divides by the (population) standard deviation,
// folding both into the patch's offset/scale so the transform can be undone.
// Moments are taken over unmasked pixels only; masked entries are zeroed so
// their stored values can never leak into downstream arithmetic. Patches with
// std below 1e-12 keep scale as-is (no division).
inline Patch normalize_patch(const Patch& p, const std::vector<bool>& mask = {}) {
  const int n = static_cast<int>(p.values.size());
  NSSC_REQUIRE(mask.empty() || static_cast<int>(mask.size()) == n, "mask length != patch length");

  double sum = 0.0;
  int count = 0;
  for (int i = 0; i < n; ++i) {
    if (!mask.empty() && mask[i]) continue;
    sum += p.values[i];
    ++count;
  }
  const double mean = count > 0 ? sum / count : 0.0;
  double var = 0.0;
  for (int i = 0; i < n; ++i) {
    if (!mask.empty() && mask[i]) continue;
    const double d = p.values[i] - mean;
    var += d * d;
  }
  const double sd = count > 0 ? std::sqrt(var / count) : 0.0;
  const double s = sd < 1e-12 ? 1.0 : sd;

  Patch out;
  out.values = Vec::Zero(n);
  for (int i = 0; i < n; ++i) {
    if (!mask.empty() && mask[i]) continue;
    out.values[i] = (p.values[i] - mean) / s;
  }
  out.offset = p.offset + mean * p.scale;
  out.scale = p.scale * s;
  return out;
}

inline NoiseField uniform_noise(int n, double sigma0_sq, double ext = 0.0) {
  NSSC_REQUIRE(sigma0_sq > 0.0, "sigma0_sq must be positive");
  NoiseField nf;
  nf.sigma0_sq = sigma0_sq;
  nf.ext_var = Vec::Constant(n, ext);
  return nf;
}

inline Vec reconstruct(const Dictionary& dict, const SparseCode& code) {
  NSSC_REQUIRE(dict.atoms.rows() == dict.n(), "dictionary atoms/patch_dims mismatch");
  NSSC_REQUIRE(code.coefficients.size() == dict.k(), "code length != atom count");
  return dict.atoms * code.coefficients;
}

inline double energy(const Patch& patch, const Dictionary& dict, const SparseCode& code,
                     const NoiseField& noise) {
  const int n = static_cast<int>(patch.values.size());
  NSSC_REQUIRE(n == dict.n(), "patch length != dictionary N");
  NSSC_REQUIRE(noise.ext_var.size() == n, "noise field length != patch length");
  NSSC_REQUIRE(noise.mask.empty() || static_cast<int>(noise.mask.size()) == n,
               "mask length != patch length");
  NSSC_REQUIRE(noise.sigma0_sq > 0.0, "sigma0_sq must be positive");

  const Vec fhat = reconstruct(dict, code);
  double e = 0.0;
  for (int i = 0; i < n; ++i) {
    if (noise.masked(i)) continue;
    const double var = noise.total_var(i);
    const double r = patch.values[i] - fhat[i];
    e += std::log(var) + r * r / (2.0 * var);
  }
  double l1 = 0.0;
  for (int j = 0; j < code.coefficients.size(); ++j) l1 += std::abs(code.coefficients[j]);
  return e + code.lambda * l1;
}

// Rescales every atom to unit l2 norm. Zero atoms cannot be normalized; their
// indices are appended to *zero_atoms (if given) so the caller can re-seed them.
inline Dictionary normalize_atoms(Dictionary dict, std::vector<int>* zero_atoms = nullptr) {
  for (int j = 0; j < dict.k(); ++j) {
    const double norm = dict.atoms.col(j).norm();
    if (norm == 0.0) {
      if (zero_atoms) zero_atoms->push_back(j);
      continue;
    }
    NSSC_REQUIRE(std::isfinite(norm), "atom has non-finite entries");
    dict.atoms.col(j) /= norm;
  }
  return dict;
}

}  // namespace nssc
