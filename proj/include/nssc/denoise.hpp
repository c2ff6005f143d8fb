#pragma once
#include <nssc/depth_map.hpp>
#include <nssc/inference.hpp>
#include <nssc/parallel.hpp>

#include <cstdint>
#include <vector>

namespace nssc {

struct PlacedPatch {
  Patch patch;             // normalized window (offset/scale undo it)
  std::vector<bool> mask;  // empty when the map has no missing pixels
  int row = 0;
  int col = 0;
};

struct DenoiseResult {
  DepthMap denoised;
  std::vector<double> variance_map;   // aggregated external variance, map units
  std::vector<int> overlap;           // windows covering each pixel
  std::vector<std::uint8_t> unfilled; // pixels covered by no usable window
};

struct DenoiseOptions {
  InferenceConfig inference;
  int stride = 1;
  int workers = 1;
};

// Every fully interior window at the given stride, row-major, each normalized
// with its mean/std recorded. Windows inherit the map's missing-pixel mask.
inline std::vector<PlacedPatch> extract_patches(const DepthMap& map, int patch_h, int patch_w,
                                                int stride) {
  NSSC_REQUIRE(map.valid(), "malformed map");
  NSSC_REQUIRE(stride >= 1, "stride must be >= 1");
  NSSC_REQUIRE(map.height >= patch_h && map.width >= patch_w, "map smaller than patch");

  const int n = patch_h * patch_w;
  const bool has_mask = !map.missing_mask.empty();
  std::vector<PlacedPatch> out;
  for (int r0 = 0; r0 + patch_h <= map.height; r0 += stride) {
    for (int c0 = 0; c0 + patch_w <= map.width; c0 += stride) {
      PlacedPatch pp;
      pp.row = r0;
      pp.col = c0;
      Patch raw;
      raw.values = Vec(n);
      if (has_mask) pp.mask.assign(n, false);
      for (int r = 0; r < patch_h; ++r) {
        for (int c = 0; c < patch_w; ++c) {
          const int i = r * patch_w + c;
          raw.values[i] = map.at(r0 + r, c0 + c);
          if (has_mask) pp.mask[i] = map.missing(r0 + r, c0 + c);
        }
      }
      pp.patch = normalize_patch(raw, pp.mask);
      out.push_back(std::move(pp));
    }
  }
  return out;
}

// Overlapping-window sparse inference: each window is inferred independently,
// reconstructions are un-normalized and averaged per pixel, and the inferred
// external variances (scaled back to map units) are averaged the same way.
// Fully masked windows are skipped; pixels no surviving window covers keep
// their input value and are flagged unfilled.
inline DenoiseResult denoise_map(const DepthMap& map, const Dictionary& dict,
                                 const DenoiseOptions& opt = {}) {
  auto windows = extract_patches(map, dict.patch_h, dict.patch_w, opt.stride);

  std::vector<char> usable(windows.size(), 0);
  int usable_count = 0;
  for (size_t i = 0; i < windows.size(); ++i) {
    bool all_masked = !windows[i].mask.empty();
    if (all_masked) {
      for (bool m : windows[i].mask) {
        if (!m) {
          all_masked = false;
          break;
        }
      }
    }
    usable[i] = all_masked ? 0 : 1;
    usable_count += usable[i];
  }
  NSSC_REQUIRE(usable_count > 0, "no usable data: every window is fully masked");

  std::vector<InferenceResult> inferred(windows.size());
  parallel_for(static_cast<int>(windows.size()), opt.workers, [&](int i) {
    if (!usable[i]) return;
    inferred[i] = infer(windows[i].patch, dict, opt.inference, windows[i].mask);
  });

  const size_t npix = map.values.size();
  std::vector<double> value_sum(npix, 0.0), var_sum(npix, 0.0);
  std::vector<int> count(npix, 0);
  for (size_t wi = 0; wi < windows.size(); ++wi) {
    if (!usable[wi]) continue;
    const PlacedPatch& pp = windows[wi];
    const Vec recon = reconstruct(dict, inferred[wi].code);
    const NoiseField& noise = inferred[wi].noise;
    for (int r = 0; r < dict.patch_h; ++r) {
      for (int c = 0; c < dict.patch_w; ++c) {
        const int i = r * dict.patch_w + c;
        const size_t px = static_cast<size_t>(pp.row + r) * map.width + (pp.col + c);
        value_sum[px] += pp.patch.offset + pp.patch.scale * recon[i];
        if (!noise.masked(i)) {
          var_sum[px] += noise.ext_var[i] * pp.patch.scale * pp.patch.scale;
        }
        count[px] += 1;
      }
    }
  }

  DenoiseResult res;
  res.denoised = map;
  res.denoised.missing_mask.clear();
  res.variance_map.assign(npix, 0.0);
  res.overlap = std::move(count);
  res.unfilled.assign(npix, 0);
  for (size_t px = 0; px < npix; ++px) {
    if (res.overlap[px] > 0) {
      res.denoised.values[px] = value_sum[px] / res.overlap[px];
      res.variance_map[px] = var_sum[px] / res.overlap[px];
    } else {
      res.unfilled[px] = 1;
    }
  }
  return res;
}

inline DenoiseResult inpaint(const DepthMap& map, const std::vector<std::uint8_t>& mask,
                             const Dictionary& dict, const DenoiseOptions& opt = {}) {
  NSSC_REQUIRE(mask.size() == map.values.size(), "mask dims != map dims");
  DepthMap masked = map;
  masked.missing_mask = mask;
  return denoise_map(masked, dict, opt);
}

}  // namespace nssc
