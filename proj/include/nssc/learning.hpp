#pragma once
#include <nssc/depth_map.hpp>
#include <nssc/inference.hpp>
#include <nssc/parallel.hpp>

#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

namespace nssc {

using Rng = std::mt19937_64;

enum class MissingPixelMode {
  Approach1,  // sentinel pixels masked out (infinite variance)
  Approach2,  // sentinel pixels treated as data
};

struct TrainConfig {
  int patch_h = 16;
  int patch_w = 16;
  int atom_count = 256;
  int batch_size = 100;
  double learning_rate = 0.05;
  int num_iterations = 1000;
  MissingPixelMode missing = MissingPixelMode::Approach2;
  double missing_sentinel = 0.0;
  std::uint64_t rng_seed = 0;
  InferenceConfig inference;
  int dead_atom_iters = 500;
  int workers = 1;
};

struct TrainingReport {
  std::vector<double> mean_energy;
  Dictionary dictionary;
  int iterations_completed = 0;
};

struct TrainingSample {
  Patch patch;  // raw window values
  std::vector<bool> mask;
};

inline Dictionary random_unit_dictionary(int patch_h, int patch_w, int atom_count, Rng& rng) {
  NSSC_REQUIRE(patch_h > 0 && patch_w > 0 && atom_count > 0, "bad dictionary dims");
  Dictionary d;
  d.patch_h = patch_h;
  d.patch_w = patch_w;
  d.atoms = Mat(patch_h * patch_w, atom_count);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int j = 0; j < atom_count; ++j) {
    for (int i = 0; i < d.atoms.rows(); ++i) d.atoms(i, j) = gauss(rng);
    d.atoms.col(j) /= d.atoms.col(j).norm();
  }
  return d;
}

inline std::vector<TrainingSample> sample_patches(const std::vector<DepthMap>& maps,
                                                  const TrainConfig& cfg, Rng& rng) {
  NSSC_REQUIRE(!maps.empty(), "no maps to sample from");
  for (const auto& m : maps) {
    NSSC_REQUIRE(m.valid(), "malformed map");
    NSSC_REQUIRE(m.height >= cfg.patch_h && m.width >= cfg.patch_w, "map smaller than patch");
  }

  std::uniform_int_distribution<int> pick_map(0, static_cast<int>(maps.size()) - 1);
  const int n = cfg.patch_h * cfg.patch_w;
  std::vector<TrainingSample> batch;
  batch.reserve(cfg.batch_size);
  for (int b = 0; b < cfg.batch_size; ++b) {
    const DepthMap& m = maps[pick_map(rng)];
    std::uniform_int_distribution<int> pick_r(0, m.height - cfg.patch_h);
    std::uniform_int_distribution<int> pick_c(0, m.width - cfg.patch_w);
    const int r0 = pick_r(rng);
    const int c0 = pick_c(rng);

    TrainingSample s;
    s.patch.values = Vec(n);
    if (cfg.missing == MissingPixelMode::Approach1) s.mask.assign(n, false);
    for (int r = 0; r < cfg.patch_h; ++r) {
      for (int c = 0; c < cfg.patch_w; ++c) {
        const int i = r * cfg.patch_w + c;
        const double v = m.at(r0 + r, c0 + c);
        s.patch.values[i] = v;
        if (cfg.missing == MissingPixelMode::Approach1) {
          s.mask[i] = m.missing(r0 + r, c0 + c) || v == cfg.missing_sentinel;
        }
      }
    }
    batch.push_back(std::move(s));
  }
  return batch;
}

// d(energy)/d(atoms): -w_i r_i a_j per entry, laid out like Dictionary::atoms
// (N x K). Masked pixels have weight 0, so their rows are exactly zero.
inline Mat learning_gradient(const Patch& patch, const Dictionary& dict, const SparseCode& code,
                             const NoiseField& noise) {
  const int n = static_cast<int>(patch.values.size());
  NSSC_REQUIRE(n == dict.n(), "patch length != dictionary N");
  NSSC_REQUIRE(noise.ext_var.size() == n, "noise field length != patch length");

  const Vec fhat = reconstruct(dict, code);
  Vec wr(n);
  for (int i = 0; i < n; ++i) wr[i] = -noise.weight(i) * (patch.values[i] - fhat[i]);
  return wr * code.coefficients.transpose();
}

inline TrainingReport train(const std::vector<DepthMap>& maps, const TrainConfig& cfg) {
  NSSC_REQUIRE(!maps.empty(), "no training maps");
  NSSC_REQUIRE(cfg.learning_rate >= 0.0, "negative learning rate");
  NSSC_REQUIRE(cfg.atom_count >= 1 && cfg.batch_size >= 1 && cfg.num_iterations >= 1,
               "bad training config");

  Rng rng(cfg.rng_seed);
  TrainingReport report;
  report.dictionary = random_unit_dictionary(cfg.patch_h, cfg.patch_w, cfg.atom_count, rng);
  Dictionary& dict = report.dictionary;
  const int k = dict.k();
  const double decay_T = cfg.num_iterations / 2.0;
  std::normal_distribution<double> gauss(0.0, 1.0);

  auto fresh_atom = [&](int j) {
    for (int i = 0; i < dict.atoms.rows(); ++i) dict.atoms(i, j) = gauss(rng);
    dict.atoms.col(j) /= dict.atoms.col(j).norm();
  };

  std::vector<int> idle(k, 0);
  for (int t = 0; t < cfg.num_iterations; ++t) {
    const double lr = cfg.learning_rate / (1.0 + t / decay_T);
    auto batch = sample_patches(maps, cfg, rng);

    std::vector<Patch> prepared(batch.size());
    std::vector<InferenceResult> inferred(batch.size());
    parallel_for(static_cast<int>(batch.size()), cfg.workers, [&](int b) {
      prepared[b] = normalize_patch(batch[b].patch, batch[b].mask);
      inferred[b] = infer(prepared[b], dict, cfg.inference, batch[b].mask);
    });

    Mat grad = Mat::Zero(dict.n(), k);
    double energy_sum = 0.0;
    std::vector<bool> used(k, false);
    for (size_t b = 0; b < batch.size(); ++b) {
      grad += learning_gradient(prepared[b], dict, inferred[b].code, inferred[b].noise);
      energy_sum += inferred[b].energy_trace.back();
      for (int j = 0; j < k; ++j) {
        if (inferred[b].code.coefficients[j] != 0.0) used[j] = true;
      }
    }
    grad /= static_cast<double>(batch.size());

    const double mean_energy = energy_sum / static_cast<double>(batch.size());
    if (!std::isfinite(mean_energy) || !grad.allFinite()) {
      throw std::runtime_error("training diverged at iteration " + std::to_string(t));
    }
    report.mean_energy.push_back(mean_energy);

    dict.atoms -= lr * grad;
    std::vector<int> zero_atoms;
    dict = normalize_atoms(std::move(dict), &zero_atoms);
    for (int j : zero_atoms) fresh_atom(j);

    for (int j = 0; j < k; ++j) {
      idle[j] = used[j] ? 0 : idle[j] + 1;
      if (idle[j] >= cfg.dead_atom_iters) {
        fresh_atom(j);
        idle[j] = 0;
      }
    }
    report.iterations_completed = t + 1;
  }
  return report;
}

}  // namespace nssc
