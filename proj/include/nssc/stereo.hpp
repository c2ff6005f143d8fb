#pragma once
#include <nssc/denoise.hpp>
#include <nssc/depth_map.hpp>
#include <nssc/max_flow.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

namespace nssc {

struct StereoPair {
  int height = 0;
  int width = 0;
  std::vector<double> left;
  std::vector<double> right;

  double l(int r, int c) const { return left[static_cast<size_t>(r) * width + c]; }
  double rt(int r, int c) const { return right[static_cast<size_t>(r) * width + c]; }
  bool valid() const {
    return height > 0 && width > 0 &&
           left.size() == static_cast<size_t>(height) * width && right.size() == left.size();
  }
};

struct LabelRange {
  int d_min = 0;
  int d_max = 0;
  int count() const { return d_max - d_min + 1; }
};

struct DisparityField {
  int height = 0;
  int width = 0;
  LabelRange range;
  std::vector<int> labels;

  int at(int r, int c) const { return labels[static_cast<size_t>(r) * width + c]; }
  int& at(int r, int c) { return labels[static_cast<size_t>(r) * width + c]; }
};

struct PottsConfig {
  double potts_k = 20.0;
  double contrast_threshold = 5.0;
  double data_weight_sq = 0.5;  // stationary rho^2 for the no-prior data term
};

// Squared intensity difference between a reference pixel and its
// disparity-shifted match along the row. match_dir picks which way the label
// shifts the column in the other image.
inline double data_cost(const StereoPair& pair, int r, int c, int f, int match_dir = 1) {
  const int cr = c + match_dir * f;
  NSSC_REQUIRE(r >= 0 && r < pair.height && c >= 0 && c < pair.width, "pixel out of range");
  NSSC_REQUIRE(cr >= 0 && cr < pair.width, "matched column out of range");
  const double d = pair.l(r, c) - pair.rt(r, cr);
  return d * d;
}

struct DataCostTable {
  int height = 0;
  int width = 0;
  LabelRange range;
  std::vector<double> cost;  // ((r * width + c) * labels + (f - d_min))

  double at(int r, int c, int f) const {
    return cost[(static_cast<size_t>(r) * width + c) * range.count() + (f - range.d_min)];
  }
};

// Precomputes every pixel/label cost. Labels whose match falls outside the
// image get the row's maximum in-bounds cost so border labels cannot win by
// default.
inline DataCostTable data_cost_table(const StereoPair& pair, LabelRange range,
                                     int match_dir = 1) {
  NSSC_REQUIRE(pair.valid(), "malformed stereo pair");
  NSSC_REQUIRE(range.d_min <= range.d_max, "empty label range");
  DataCostTable t;
  t.height = pair.height;
  t.width = pair.width;
  t.range = range;
  const int labels = range.count();
  t.cost.assign(static_cast<size_t>(pair.height) * pair.width * labels, -1.0);

  for (int r = 0; r < pair.height; ++r) {
    double row_max = 0.0;
    for (int c = 0; c < pair.width; ++c) {
      for (int f = range.d_min; f <= range.d_max; ++f) {
        const int cr = c + match_dir * f;
        if (cr < 0 || cr >= pair.width) continue;
        const double d = pair.l(r, c) - pair.rt(r, cr);
        const double cost = d * d;
        t.cost[(static_cast<size_t>(r) * pair.width + c) * labels + (f - range.d_min)] = cost;
        row_max = std::max(row_max, cost);
      }
    }
    for (int c = 0; c < pair.width; ++c) {
      for (int f = 0; f < labels; ++f) {
        double& cell = t.cost[(static_cast<size_t>(r) * pair.width + c) * labels + f];
        if (cell < 0.0) cell = row_max;
      }
    }
  }
  return t;
}

// Contrast-gated Potts weight between 4-adjacent pixels of the reference
// image: 2K under the contrast threshold (strictly), K at or above it.
inline double potts_weight(const StereoPair& pair, int r1, int c1, int r2, int c2,
                           const PottsConfig& cfg) {
  NSSC_REQUIRE(std::abs(r1 - r2) + std::abs(c1 - c2) == 1, "pixels not 4-adjacent");
  const double diff = std::abs(pair.l(r1, c1) - pair.l(r2, c2));
  return diff < cfg.contrast_threshold ? 2.0 * cfg.potts_k : cfg.potts_k;
}

// Window expectation of the squared data-cost deviation around the prior
// disparity: mean of (D(f) - D(round(fhat)))^2 over integer labels strictly
// inside (fhat - sigma, fhat + sigma), floored at floor_sq.
inline double estimate_rho_sq(const DataCostTable& table, int r, int c, double fhat,
                              double sigma, double floor_sq) {
  NSSC_REQUIRE(sigma > 0.0, "sigma must be positive");
  const int f0 = std::clamp(static_cast<int>(std::lround(fhat)), table.range.d_min,
                            table.range.d_max);
  const double d0 = table.at(r, c, f0);
  double sum = 0.0;
  int m = 0;
  for (int f = table.range.d_min; f <= table.range.d_max; ++f) {
    if (f <= fhat - sigma || f >= fhat + sigma) continue;
    const double d = table.at(r, c, f) - d0;
    sum += d * d;
    ++m;
  }
  if (m == 0) return floor_sq;
  return std::max(sum / m, floor_sq);
}

struct UnaryCosts {
  int height = 0;
  int width = 0;
  LabelRange range;
  std::vector<double> cost;
  bool has_prior = false;
  std::vector<double> prior_mean;  // fhat per pixel (real-valued)
  std::vector<double> prior_var;   // sigma_i^2 per pixel
  std::vector<double> data_var;    // rho(sigma_i)^2 per pixel

  double at(int r, int c, int f) const {
    return cost[(static_cast<size_t>(r) * width + c) * range.count() + (f - range.d_min)];
  }
};

// First-iteration unaries: pure data term over the stationary variance.
inline UnaryCosts build_unary(const DataCostTable& table, const PottsConfig& cfg) {
  NSSC_REQUIRE(cfg.data_weight_sq > 0.0, "data_weight_sq must be positive");
  UnaryCosts u;
  u.height = table.height;
  u.width = table.width;
  u.range = table.range;
  u.cost.resize(table.cost.size());
  const double inv = 1.0 / (2.0 * cfg.data_weight_sq);
  for (size_t i = 0; i < table.cost.size(); ++i) u.cost[i] = table.cost[i] * inv;
  return u;
}

inline std::vector<double> estimate_data_var(const DataCostTable& table,
                                             const std::vector<double>& prior_mean,
                                             const std::vector<double>& prior_var,
                                             double floor_sq) {
  const size_t npix = static_cast<size_t>(table.height) * table.width;
  NSSC_REQUIRE(prior_mean.size() == npix && prior_var.size() == npix, "prior dims mismatch");
  std::vector<double> rho(npix);
  for (int r = 0; r < table.height; ++r) {
    for (int c = 0; c < table.width; ++c) {
      const size_t i = static_cast<size_t>(r) * table.width + c;
      rho[i] = estimate_rho_sq(table, r, c, prior_mean[i], std::sqrt(prior_var[i]), floor_sq);
    }
  }
  return rho;
}

// Unaries with the sparse-prior feedback: data term over the per-pixel window
// variance plus the Gaussian pull (f - fhat)^2 / (2 sigma^2) toward the prior.
inline UnaryCosts build_unary(const DataCostTable& table, const PottsConfig& cfg,
                              const std::vector<double>& prior_mean,
                              const std::vector<double>& prior_var,
                              const std::vector<double>& data_var) {
  const size_t npix = static_cast<size_t>(table.height) * table.width;
  NSSC_REQUIRE(prior_mean.size() == npix && prior_var.size() == npix && data_var.size() == npix,
               "prior dims mismatch");
  UnaryCosts u;
  u.height = table.height;
  u.width = table.width;
  u.range = table.range;
  u.has_prior = true;
  u.prior_mean = prior_mean;
  u.prior_var = prior_var;
  u.data_var = data_var;
  const int labels = table.range.count();
  u.cost.resize(table.cost.size());
  for (size_t i = 0; i < npix; ++i) {
    NSSC_REQUIRE(prior_var[i] > 0.0 && data_var[i] > 0.0, "nonpositive prior variance");
    const double inv_data = 1.0 / (2.0 * data_var[i]);
    const double inv_prior = 1.0 / (2.0 * prior_var[i]);
    for (int fi = 0; fi < labels; ++fi) {
      const double f = table.range.d_min + fi;
      const double pull = f - prior_mean[i];
      u.cost[i * labels + fi] = table.cost[i * labels + fi] * inv_data + pull * pull * inv_prior;
    }
  }
  return u;
}

// The stationary variance is the floor: feedback can flatten the data term at
// unreliable pixels but never sharpens it past the no-prior baseline.
inline UnaryCosts build_unary(const DataCostTable& table, const PottsConfig& cfg,
                              const std::vector<double>& prior_mean,
                              const std::vector<double>& prior_var) {
  return build_unary(table, cfg, prior_mean, prior_var,
                     estimate_data_var(table, prior_mean, prior_var, cfg.data_weight_sq));
}

namespace detail {

// Potts weights for right/down grid edges, from the reference image.
struct EdgeWeights {
  int height = 0, width = 0;
  std::vector<double> right, down;

  EdgeWeights(const StereoPair& pair, const PottsConfig& cfg)
      : height(pair.height), width(pair.width) {
    right.assign(static_cast<size_t>(height) * width, 0.0);
    down.assign(static_cast<size_t>(height) * width, 0.0);
    for (int r = 0; r < height; ++r) {
      for (int c = 0; c < width; ++c) {
        if (c + 1 < width) {
          right[static_cast<size_t>(r) * width + c] = potts_weight(pair, r, c, r, c + 1, cfg);
        }
        if (r + 1 < height) {
          down[static_cast<size_t>(r) * width + c] = potts_weight(pair, r, c, r + 1, c, cfg);
        }
      }
    }
  }
};

inline double labeling_energy(const UnaryCosts& unary, const EdgeWeights& w,
                              const DisparityField& f) {
  double e = 0.0;
  for (int r = 0; r < f.height; ++r) {
    for (int c = 0; c < f.width; ++c) {
      e += unary.at(r, c, f.at(r, c));
      if (c + 1 < f.width && f.at(r, c) != f.at(r, c + 1)) {
        e += w.right[static_cast<size_t>(r) * f.width + c];
      }
      if (r + 1 < f.height && f.at(r, c) != f.at(r + 1, c)) {
        e += w.down[static_cast<size_t>(r) * f.width + c];
      }
    }
  }
  return e;
}

}  // namespace detail

// Eq-11-style energy of a labeling: unary terms plus contrast-gated Potts
// disagreement costs over the 4-neighborhood.
inline double mrf_energy(const UnaryCosts& unary, const StereoPair& pair, const PottsConfig& cfg,
                         const DisparityField& f) {
  NSSC_REQUIRE(f.height == unary.height && f.width == unary.width, "labeling dims mismatch");
  detail::EdgeWeights w(pair, cfg);
  return detail::labeling_energy(unary, w, f);
}

inline DisparityField wta_labeling(const UnaryCosts& unary) {
  DisparityField f;
  f.height = unary.height;
  f.width = unary.width;
  f.range = unary.range;
  f.labels.assign(static_cast<size_t>(f.height) * f.width, unary.range.d_min);
  for (int r = 0; r < f.height; ++r) {
    for (int c = 0; c < f.width; ++c) {
      double best = unary.at(r, c, unary.range.d_min);
      int best_f = unary.range.d_min;
      for (int lab = unary.range.d_min + 1; lab <= unary.range.d_max; ++lab) {
        const double v = unary.at(r, c, lab);
        if (v < best) {
          best = v;
          best_f = lab;
        }
      }
      f.at(r, c) = best_f;
    }
  }
  return f;
}

struct SwapMove {
  int alpha = 0, beta = 0;
  double energy = 0.0;  // energy after the accepted move
};

// Alpha-beta swap with exact per-move min-cuts. Each candidate relabeling is
// accepted only when it strictly lowers the full energy, so the energy is
// non-increasing move by move; sweeps repeat until none is accepted.
inline DisparityField solve_mrf_swap(const UnaryCosts& unary, const PottsConfig& cfg,
                                     const StereoPair& pair, const DisparityField& init,
                                     std::vector<SwapMove>* moves = nullptr,
                                     int max_sweeps = 20) {
  NSSC_REQUIRE(init.height == unary.height && init.width == unary.width, "init dims mismatch");
  for (int lab : init.labels) {
    NSSC_REQUIRE(lab >= unary.range.d_min && lab <= unary.range.d_max, "init label out of range");
  }

  const int h = unary.height, w = unary.width;
  const detail::EdgeWeights weights(pair, cfg);
  DisparityField cur = init;
  cur.range = unary.range;
  double cur_energy = detail::labeling_energy(unary, weights, cur);

  const int dr[4] = {-1, 1, 0, 0};
  const int dc[4] = {0, 0, -1, 1};
  auto edge_w = [&](int r, int c, int r2, int c2) {
    if (r2 == r && c2 == c + 1) return weights.right[static_cast<size_t>(r) * w + c];
    if (r2 == r && c2 == c - 1) return weights.right[static_cast<size_t>(r2) * w + c2];
    if (r2 == r + 1 && c2 == c) return weights.down[static_cast<size_t>(r) * w + c];
    return weights.down[static_cast<size_t>(r2) * w + c2];
  };

  std::vector<int> node_of(static_cast<size_t>(h) * w);
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    bool any_accepted = false;
    for (int alpha = unary.range.d_min; alpha <= unary.range.d_max; ++alpha) {
      for (int beta = alpha + 1; beta <= unary.range.d_max; ++beta) {
        std::vector<int> pixels;
        for (int i = 0; i < h * w; ++i) {
          if (cur.labels[i] == alpha || cur.labels[i] == beta) {
            node_of[i] = static_cast<int>(pixels.size());
            pixels.push_back(i);
          } else {
            node_of[i] = -1;
          }
        }
        if (pixels.empty()) continue;

        const int s = static_cast<int>(pixels.size());
        FlowNetwork net(s + 2);
        const int src = s, sink = s + 1;
        for (int p = 0; p < s; ++p) {
          const int i = pixels[p];
          const int r = i / w, c = i % w;
          double to_alpha = unary.at(r, c, alpha);  // paid when p lands on the sink side
          double to_beta = unary.at(r, c, beta);    // paid when p lands on the source side
          for (int d = 0; d < 4; ++d) {
            const int r2 = r + dr[d], c2 = c + dc[d];
            if (r2 < 0 || r2 >= h || c2 < 0 || c2 >= w) continue;
            const int j = r2 * w + c2;
            const double wq = edge_w(r, c, r2, c2);
            if (node_of[j] >= 0) {
              if (j > i) net.add_edge(p, node_of[j], wq, wq);
            } else {
              if (cur.labels[j] != alpha) to_alpha += wq;
              if (cur.labels[j] != beta) to_beta += wq;
            }
          }
          net.add_edge(src, p, to_alpha);
          net.add_edge(p, sink, to_beta);
        }

        net.max_flow(src, sink);
        const auto source_side = net.min_cut_source_side();
        DisparityField cand = cur;
        for (int p = 0; p < s; ++p) {
          cand.labels[pixels[p]] = source_side[p] ? beta : alpha;
        }
        const double cand_energy = detail::labeling_energy(unary, weights, cand);
        if (cand_energy < cur_energy) {
          cur = std::move(cand);
          cur_energy = cand_energy;
          any_accepted = true;
          if (moves) moves->push_back({alpha, beta, cur_energy});
        }
      }
    }
    if (!any_accepted) break;
  }
  return cur;
}

struct StereoConfig {
  PottsConfig potts;
  LabelRange range;
  int match_dir = 1;
  int outer = 3;
  DenoiseOptions denoise;
  int max_sweeps = 20;
};

struct StereoIteration {
  DisparityField labels;
  double energy = 0.0;       // MRF energy under that iteration's unaries
  int pixels_changed = -1;   // vs previous iteration (-1 for the baseline)
};

struct TwoLayerResult {
  DisparityField labels;
  std::vector<double> variance;  // per-pixel prior variance from the last pass
  std::vector<StereoIteration> trace;
};

// Two-layer alternation: a Potts MRF over disparities (middle layer) and
// sparse-prior inference over the current disparity map (upper layer) feeding
// back per-pixel prior means, variances, and window data variances.
inline TwoLayerResult two_layer_infer(const StereoPair& pair, const Dictionary& dict,
                                      const StereoConfig& cfg) {
  NSSC_REQUIRE(pair.valid(), "malformed stereo pair");
  if (cfg.outer > 0) {
    NSSC_REQUIRE(pair.height >= dict.patch_h && pair.width >= dict.patch_w,
                 "images smaller than one dictionary patch");
  }

  const DataCostTable table = data_cost_table(pair, cfg.range, cfg.match_dir);
  const UnaryCosts base = build_unary(table, cfg.potts);

  TwoLayerResult out;
  DisparityField cur =
      solve_mrf_swap(base, cfg.potts, pair, wta_labeling(base), nullptr, cfg.max_sweeps);
  out.trace.push_back({cur, mrf_energy(base, pair, cfg.potts, cur), -1});
  out.variance.assign(static_cast<size_t>(pair.height) * pair.width, 0.0);
  if (cfg.outer == 0) {
    out.labels = cur;
    return out;
  }

  // Data-term flatness is sticky: once a pixel's window variance marks its
  // data cost as unreliable, later passes over the repaired map cannot restore
  // full data confidence there and undo the repair.
  std::vector<double> data_var;
  for (int it = 1; it <= cfg.outer; ++it) {
    DepthMap dm;
    dm.height = pair.height;
    dm.width = pair.width;
    dm.values.assign(cur.labels.begin(), cur.labels.end());
    const DenoiseResult den = denoise_map(dm, dict, cfg.denoise);

    std::vector<double> prior_var(den.variance_map.size());
    for (size_t i = 0; i < prior_var.size(); ++i) {
      prior_var[i] = den.variance_map[i] + cfg.denoise.inference.sigma0_sq;
    }
    const std::vector<double> est = estimate_data_var(table, den.denoised.values, prior_var,
                                                      cfg.potts.data_weight_sq);
    if (data_var.empty()) {
      data_var = est;
    } else {
      for (size_t i = 0; i < data_var.size(); ++i) data_var[i] = std::max(data_var[i], est[i]);
    }
    const UnaryCosts unary =
        build_unary(table, cfg.potts, den.denoised.values, prior_var, data_var);

    DisparityField next = solve_mrf_swap(unary, cfg.potts, pair, cur, nullptr, cfg.max_sweeps);
    int changed = 0;
    for (size_t i = 0; i < next.labels.size(); ++i) changed += next.labels[i] != cur.labels[i];
    out.trace.push_back({next, mrf_energy(unary, pair, cfg.potts, next), changed});
    out.variance = prior_var;
    cur = std::move(next);
    if (changed == 0) break;
  }
  out.labels = cur;
  return out;
}

// Fraction of non-excluded pixels whose estimate differs from ground truth by
// more than the threshold.
inline double bad_pixel_rate(const std::vector<double>& est, const std::vector<double>& gt,
                             double threshold, const std::vector<std::uint8_t>& exclude = {}) {
  NSSC_REQUIRE(est.size() == gt.size(), "dims mismatch");
  NSSC_REQUIRE(exclude.empty() || exclude.size() == est.size(), "exclude mask dims mismatch");
  long long total = 0, bad = 0;
  for (size_t i = 0; i < est.size(); ++i) {
    if (!exclude.empty() && exclude[i]) continue;
    ++total;
    if (std::abs(est[i] - gt[i]) > threshold) ++bad;
  }
  NSSC_REQUIRE(total > 0, "all pixels excluded: bad-pixel rate undefined");
  return static_cast<double>(bad) / static_cast<double>(total);
}

inline double bad_pixel_rate(const DisparityField& est, const DisparityField& gt,
                             double threshold, const std::vector<std::uint8_t>& exclude = {}) {
  NSSC_REQUIRE(est.height == gt.height && est.width == gt.width, "dims mismatch");
  std::vector<double> a(est.labels.begin(), est.labels.end());
  std::vector<double> b(gt.labels.begin(), gt.labels.end());
  return bad_pixel_rate(a, b, threshold, exclude);
}

}  // namespace nssc
