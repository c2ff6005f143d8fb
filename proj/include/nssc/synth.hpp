#pragma once
#include <nssc/depth_map.hpp>
#include <nssc/learning.hpp>
#include <nssc/stereo.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace nssc {

// Piecewise-constant map: a base level plus rects random axis-aligned
// rectangles, each painted with its own level in [0, level_span).
inline DepthMap make_piecewise_map(int h, int w, int rects, double level_span, Rng& rng) {
  NSSC_REQUIRE(h > 0 && w > 0 && level_span > 0.0, "bad piecewise-map params");
  std::uniform_real_distribution<double> level(0.0, level_span);
  DepthMap m = DepthMap::constant(h, w, level(rng));
  std::uniform_int_distribution<int> pick_r(0, h - 1), pick_c(0, w - 1);
  for (int k = 0; k < rects; ++k) {
    int r0 = pick_r(rng), r1 = pick_r(rng);
    int c0 = pick_c(rng), c1 = pick_c(rng);
    if (r0 > r1) std::swap(r0, r1);
    if (c0 > c1) std::swap(c0, c1);
    const double v = level(rng);
    for (int r = r0; r <= r1; ++r) {
      for (int c = c0; c <= c1; ++c) m.at(r, c) = v;
    }
  }
  return m;
}

struct CorruptionResult {
  DepthMap map;
  std::vector<std::uint8_t> corrupted;  // ground-truth locations
  std::vector<double> true_var;         // per-pixel injected variance
};

// Corrupts a random fraction of pixels with zero-mean Gaussian noise whose
// variance is drawn uniformly from (0, 1) per pixel.
inline CorruptionResult corrupt_pixels(const DepthMap& map, double fraction, Rng& rng) {
  NSSC_REQUIRE(map.valid(), "malformed map");
  NSSC_REQUIRE(fraction >= 0.0 && fraction <= 1.0, "fraction out of range");
  CorruptionResult out;
  out.map = map;
  out.corrupted.assign(map.values.size(), 0);
  out.true_var.assign(map.values.size(), 0.0);

  const int n_corrupt = static_cast<int>(std::llround(fraction * map.values.size()));
  std::vector<size_t> idx(map.values.size());
  for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::shuffle(idx.begin(), idx.end(), rng);
  std::uniform_real_distribution<double> var(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int k = 0; k < n_corrupt; ++k) {
    const size_t i = idx[k];
    const double v = var(rng);
    out.map.values[i] += std::sqrt(v) * gauss(rng);
    out.corrupted[i] = 1;
    out.true_var[i] = v;
  }
  return out;
}

// Dictionary of zero-mean, unit-norm random atoms (zero mean keeps sparse
// combinations invariant under patch mean-subtraction).
inline Dictionary make_planted_dictionary(int patch_h, int patch_w, int atom_count, Rng& rng) {
  Dictionary d = random_unit_dictionary(patch_h, patch_w, atom_count, rng);
  for (int j = 0; j < d.k(); ++j) {
    d.atoms.col(j).array() -= d.atoms.col(j).mean();
    d.atoms.col(j) /= d.atoms.col(j).norm();
  }
  return d;
}

// Patch-sized maps synthesized as sparse combinations of planted atoms, with
// mask_fraction of the pixels overwritten by the missing-pixel sentinel 0.
inline std::vector<DepthMap> make_planted_maps(const Dictionary& dict, int n_maps, int sparsity,
                                               double mask_fraction, Rng& rng) {
  NSSC_REQUIRE(sparsity >= 1 && sparsity <= dict.k(), "bad sparsity");
  std::uniform_int_distribution<int> pick_atom(0, dict.k() - 1);
  std::uniform_real_distribution<double> amp(0.75, 1.5);
  std::bernoulli_distribution flip(0.5);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  std::vector<DepthMap> maps;
  maps.reserve(n_maps);
  for (int s = 0; s < n_maps; ++s) {
    Vec a = Vec::Zero(dict.k());
    for (int t = 0; t < sparsity; ++t) {
      int j = pick_atom(rng);
      while (a[j] != 0.0) j = pick_atom(rng);
      a[j] = (flip(rng) ? 1.0 : -1.0) * amp(rng);
    }
    const Vec f = dict.atoms * a;
    DepthMap m;
    m.height = dict.patch_h;
    m.width = dict.patch_w;
    m.values.resize(f.size());
    for (int i = 0; i < f.size(); ++i) {
      m.values[i] = unit(rng) < mask_fraction ? 0.0 : f[i];
    }
    maps.push_back(std::move(m));
  }
  return maps;
}

struct StereogramResult {
  StereoPair pair;
  DisparityField truth;
};

// Random-dot stereogram: the right image is iid dots, the left is built so
// L(r,c) = R(r, c + d(r,c)) wherever the match lands in bounds (fresh dots
// elsewhere). corrupt_fraction of left pixels are then saturated to imitate
// specular highlights.
inline StereogramResult make_stereogram(const DisparityField& truth, double corrupt_fraction,
                                        Rng& rng) {
  StereogramResult out;
  out.truth = truth;
  out.pair.height = truth.height;
  out.pair.width = truth.width;
  const size_t npix = static_cast<size_t>(truth.height) * truth.width;
  out.pair.right.resize(npix);
  out.pair.left.resize(npix);

  std::uniform_int_distribution<int> dot(0, 255);
  for (size_t i = 0; i < npix; ++i) out.pair.right[i] = static_cast<double>(dot(rng));
  for (int r = 0; r < truth.height; ++r) {
    for (int c = 0; c < truth.width; ++c) {
      const int cr = c + truth.at(r, c);
      out.pair.left[static_cast<size_t>(r) * truth.width + c] =
          (cr >= 0 && cr < truth.width) ? out.pair.rt(r, cr) : static_cast<double>(dot(rng));
    }
  }

  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (size_t i = 0; i < npix; ++i) {
    if (unit(rng) < corrupt_fraction) out.pair.left[i] = 255.0;
  }
  return out;
}

// Piecewise-constant disparity ground truth: background label plus a few
// random rectangles at other labels.
inline DisparityField make_disparity_truth(int h, int w, LabelRange range, int rects, Rng& rng) {
  std::uniform_int_distribution<int> label(range.d_min, range.d_max);
  DisparityField f;
  f.height = h;
  f.width = w;
  f.range = range;
  f.labels.assign(static_cast<size_t>(h) * w, label(rng));
  std::uniform_int_distribution<int> pick_r(0, h - 1), pick_c(0, w - 1);
  for (int k = 0; k < rects; ++k) {
    int r0 = pick_r(rng), r1 = pick_r(rng);
    int c0 = pick_c(rng), c1 = pick_c(rng);
    if (r0 > r1) std::swap(r0, r1);
    if (c0 > c1) std::swap(c0, c1);
    const int v = label(rng);
    for (int r = r0; r <= r1; ++r) {
      for (int c = c0; c <= c1; ++c) f.at(r, c) = v;
    }
  }
  return f;
}

}  // namespace nssc
