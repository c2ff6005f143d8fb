#include <nssc/nssc.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

using nlohmann::json;
using namespace nssc;

namespace {

int default_workers() {
  const unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : static_cast<int>(n);
}

DepthMap read_map(const std::string& path, bool zero_missing = false) {
  DepthMap m;
  if (path.ends_with(".pfm")) {
    m = read_pfm(path).map;
    if (zero_missing) {
      m.missing_mask.resize(m.values.size());
      for (size_t i = 0; i < m.values.size(); ++i) m.missing_mask[i] = m.values[i] == 0.0;
    }
  } else {
    m = read_pgm(path, zero_missing).map;
  }
  return m;
}

void write_map(const std::string& path, const DepthMap& m, const std::string& format,
               int maxval) {
  const bool pfm = format == "pfm" || (format.empty() && path.ends_with(".pfm"));
  if (pfm) {
    write_pfm(path, m);
  } else {
    write_pgm(path, m, maxval);
  }
}

void scale_values(DepthMap& m, double divisor) {
  if (divisor == 1.0) return;
  for (auto& v : m.values) v /= divisor;
}

std::string fmt_metric(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

struct Sidecar {
  json meta;

  Sidecar(const std::string& subcommand, std::uint64_t seed, int argc, char** argv) {
    meta["tool"] = "nssc";
    meta["subcommand"] = subcommand;
    meta["seed"] = seed;
    meta["argv"] = json::array();
    for (int i = 0; i < argc; ++i) meta["argv"].push_back(argv[i]);
  }

  void emit(const std::string& artifact) const {
    json j = meta;
    j["artifact"] = artifact;
    std::ofstream out(artifact + ".meta.json", std::ios::trunc);
    if (!out) throw IoError("cannot open " + artifact + ".meta.json for writing");
    out << j.dump(2) << "\n";
    if (!out) throw IoError("short write to " + artifact + ".meta.json");
  }
};

void write_csv(const std::string& path, const std::string& header,
               const std::vector<std::string>& rows, const Sidecar& side) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << header << "\n";
  for (const auto& r : rows) out << r << "\n";
  if (!out) throw IoError("short write to " + path);
  side.emit(path);
}

struct PatchDims {
  int h = 8, w = 8;
};

PatchDims parse_patch(const std::string& s) {
  PatchDims d;
  char sep = 0;
  std::istringstream in(s);
  if (!(in >> d.h >> sep >> d.w) || sep != 'x' || d.h <= 0 || d.w <= 0 || !in.eof()) {
    throw ContractViolation("bad --patch '" + s + "', want HxW");
  }
  return d;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"non-stationary sparse coding of depth maps"};
  app.require_subcommand(1);

  std::uint64_t seed = 0;
  int workers = default_workers();
  std::string out_format;
  app.add_option("--seed", seed, "rng seed")->capture_default_str();
  app.add_option("--workers", workers, "worker threads (1 = bit-exact)")->capture_default_str();
  app.add_option("--format", out_format, "output map format")
      ->check(CLI::IsMember({"pgm", "pfm"}));

  double lambda = 1.0, sigma0_sq = 0.01;
  app.add_option("--lambda", lambda, "sparsity weight")->capture_default_str();
  app.add_option("--sigma0-sq", sigma0_sq, "stationary noise variance")->capture_default_str();

  // learn
  auto* learn = app.add_subcommand("learn", "train a dictionary on depth maps");
  std::vector<std::string> learn_inputs;
  std::string patch_str = "8x8", dict_out = "dictionary.nsd", learn_csv;
  int atoms = 64, iters = 1000, batch = 100, approach = 2;
  double lr = 0.05;
  learn->add_option("inputs", learn_inputs, "training maps")->required()->expected(-1);
  learn->add_option("--patch", patch_str, "patch size HxW")->capture_default_str();
  learn->add_option("--atoms", atoms, "dictionary size")->capture_default_str();
  learn->add_option("--iters", iters, "training iterations")->capture_default_str();
  learn->add_option("--batch", batch, "patches per iteration")->capture_default_str();
  learn->add_option("--lr", lr, "learning rate")->capture_default_str();
  learn->add_option("--approach", approach, "missing pixels: 1 mask, 2 sentinel data")
      ->check(CLI::IsMember({1, 2}));
  learn->add_option("--dict", dict_out, "output dictionary path")->capture_default_str();
  learn->add_option("--csv-out", learn_csv, "energy trace CSV");

  // denoise / inpaint
  auto* denoise = app.add_subcommand("denoise", "denoise a depth map");
  auto* inpaint_cmd = app.add_subcommand("inpaint", "fill masked pixels of a depth map");
  std::string in_path, dict_path, out_path, var_out, mask_path, gt_path;
  int stride = 1;
  bool zero_missing = false;
  double peak = 0.0;
  for (auto* cmd : {denoise, inpaint_cmd}) {
    cmd->add_option("input", in_path, "input map")->required();
    cmd->add_option("--dict", dict_path, "dictionary path")->required();
    cmd->add_option("--out", out_path, "output map path")->required();
    cmd->add_option("--var-out", var_out, "variance map PFM path");
    cmd->add_option("--stride", stride, "window stride")->capture_default_str();
    cmd->add_option("--gt", gt_path, "clean reference for PSNR");
    cmd->add_option("--peak", peak, "PSNR peak (default: reference dynamic range)");
  }
  denoise->add_flag("--zero-missing", zero_missing, "treat 0-valued pixels as missing");
  inpaint_cmd->add_option("--mask", mask_path, "missing-pixel mask (nonzero = missing)");
  inpaint_cmd->add_flag("--zero-missing", zero_missing, "mask 0-valued input pixels");

  // stereo
  auto* stereo = app.add_subcommand("stereo", "two-layer disparity inference");
  std::string left_path, right_path, stereo_gt, stereo_csv;
  int dmin = 0, dmax = 15, outer = 3, match_dir = 1, max_sweeps = 20;
  double potts_k = 20.0, contrast_thresh = 5.0, rho_sq = 0.5;
  double gt_scale = 1.0, bad_thresh = 1.0, out_scale = 1.0;
  bool gt_zero_missing = false;
  stereo->add_option("--left", left_path, "left (reference) image")->required();
  stereo->add_option("--right", right_path, "right image")->required();
  stereo->add_option("--dict", dict_path, "dictionary path (needed when --outer > 0)");
  stereo->add_option("--out", out_path, "disparity map path")->required();
  stereo->add_option("--var-out", var_out, "prior variance PFM path");
  stereo->add_option("--csv-out", stereo_csv, "per-iteration CSV");
  stereo->add_option("--dmin", dmin, "smallest disparity")->capture_default_str();
  stereo->add_option("--dmax", dmax, "largest disparity")->capture_default_str();
  stereo->add_option("--outer", outer, "sparse-prior feedback rounds")->capture_default_str();
  stereo->add_option("--match-dir", match_dir, "column shift sign of the match")
      ->check(CLI::IsMember({1, -1}));
  stereo->add_option("--potts-k", potts_k, "potts weight K")->capture_default_str();
  stereo->add_option("--contrast-thresh", contrast_thresh, "contrast gate threshold")
      ->capture_default_str();
  stereo->add_option("--rho-sq", rho_sq, "stationary data variance")->capture_default_str();
  stereo->add_option("--max-sweeps", max_sweeps, "swap sweeps per solve")->capture_default_str();
  stereo->add_option("--stride", stride, "denoise window stride")->capture_default_str();
  stereo->add_option("--gt", stereo_gt, "ground-truth disparity map");
  stereo->add_option("--gt-scale", gt_scale, "divide ground-truth values by this")
      ->capture_default_str();
  stereo->add_option("--bad-thresh", bad_thresh, "bad-pixel threshold")->capture_default_str();
  stereo->add_option("--out-scale", out_scale, "multiply written disparities by this")
      ->capture_default_str();
  stereo->add_flag("--gt-zero-missing", gt_zero_missing, "exclude 0-valued ground-truth pixels");

  // eval
  auto* eval = app.add_subcommand("eval", "compare two maps");
  std::string ref_path, test_path, eval_csv;
  double ref_scale = 1.0, test_scale = 1.0;
  eval->add_option("--ref", ref_path, "reference map")->required();
  eval->add_option("--test", test_path, "map under test")->required();
  eval->add_option("--ref-scale", ref_scale, "divide reference values by this")
      ->capture_default_str();
  eval->add_option("--test-scale", test_scale, "divide test values by this")
      ->capture_default_str();
  eval->add_option("--peak", peak, "PSNR peak (default: reference dynamic range)");
  eval->add_option("--bad-thresh", bad_thresh, "bad-pixel threshold")->capture_default_str();
  eval->add_option("--csv-out", eval_csv, "metrics CSV");
  eval->add_flag("--zero-missing", zero_missing, "exclude 0-valued reference pixels");

  // synth
  auto* synth = app.add_subcommand("synth", "synthetic data generators");
  synth->require_subcommand(1);
  auto* piecewise = synth->add_subcommand("piecewise", "piecewise-constant depth map");
  int sh = 100, sw = 100, rects = 8;
  double span = 10.0;
  piecewise->add_option("--height", sh, "map height")->capture_default_str();
  piecewise->add_option("--width", sw, "map width")->capture_default_str();
  piecewise->add_option("--rects", rects, "rectangle count")->capture_default_str();
  piecewise->add_option("--span", span, "level span")->capture_default_str();
  piecewise->add_option("--out", out_path, "output map")->required();

  auto* corrupt = synth->add_subcommand("corrupt", "corrupt a fraction of pixels");
  double fraction = 0.01;
  std::string truth_out;
  corrupt->add_option("input", in_path, "clean map")->required();
  corrupt->add_option("--fraction", fraction, "corrupted fraction")->capture_default_str();
  corrupt->add_option("--out", out_path, "corrupted map")->required();
  corrupt->add_option("--truth-out", truth_out, "corruption mask PGM");
  corrupt->add_option("--var-out", var_out, "injected variance PFM");

  auto* stereogram = synth->add_subcommand("stereogram", "random-dot stereogram");
  stereogram->add_option("--height", sh, "image height")->capture_default_str();
  stereogram->add_option("--width", sw, "image width")->capture_default_str();
  stereogram->add_option("--dmin", dmin, "smallest disparity")->capture_default_str();
  stereogram->add_option("--dmax", dmax, "largest disparity")->capture_default_str();
  stereogram->add_option("--rects", rects, "rectangle count")->capture_default_str();
  stereogram->add_option("--fraction", fraction, "corrupted left-pixel fraction")
      ->capture_default_str();
  stereogram->add_option("--left-out", left_path, "left image PGM")->required();
  stereogram->add_option("--right-out", right_path, "right image PGM")->required();
  stereogram->add_option("--gt-out", gt_path, "ground-truth disparity PGM")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*learn) {
      const PatchDims pd = parse_patch(patch_str);
      std::vector<DepthMap> maps;
      for (const auto& p : learn_inputs) maps.push_back(read_map(p));

      TrainConfig cfg;
      cfg.patch_h = pd.h;
      cfg.patch_w = pd.w;
      cfg.atom_count = atoms;
      cfg.batch_size = batch;
      cfg.learning_rate = lr;
      cfg.num_iterations = iters;
      cfg.missing = approach == 1 ? MissingPixelMode::Approach1 : MissingPixelMode::Approach2;
      cfg.rng_seed = seed;
      cfg.inference.lambda = lambda;
      cfg.inference.sigma0_sq = sigma0_sq;
      cfg.workers = workers;
      const TrainingReport report = train(maps, cfg);

      Sidecar side("learn", seed, argc, argv);
      side.meta["config"] = {{"patch_h", pd.h},     {"patch_w", pd.w},
                             {"atoms", atoms},      {"batch", batch},
                             {"lr", lr},            {"iters", iters},
                             {"approach", approach}, {"lambda", lambda},
                             {"sigma0_sq", sigma0_sq}, {"workers", workers},
                             {"inputs", learn_inputs}};
      write_dictionary(dict_out, report.dictionary);
      side.emit(dict_out);
      if (!learn_csv.empty()) {
        std::vector<std::string> rows;
        for (size_t i = 0; i < report.mean_energy.size(); ++i) {
          rows.push_back(std::to_string(i) + "," + fmt_metric(report.mean_energy[i]));
        }
        write_csv(learn_csv, "iter,mean_energy", rows, side);
      }
      std::cout << "trained " << atoms << " atoms over " << report.iterations_completed
                << " iterations, mean energy " << fmt_metric(report.mean_energy.back()) << "\n";
    } else if (*denoise || *inpaint_cmd) {
      const bool filling = static_cast<bool>(*inpaint_cmd);
      DepthMap input = read_map(in_path, zero_missing);
      const Dictionary dict = read_dictionary(dict_path);

      DenoiseOptions opt;
      opt.inference.lambda = lambda;
      opt.inference.sigma0_sq = sigma0_sq;
      opt.stride = stride;
      opt.workers = workers;

      DenoiseResult res;
      if (filling && !mask_path.empty()) {
        const DepthMap mask_map = read_map(mask_path);
        std::vector<std::uint8_t> mask(mask_map.values.size());
        for (size_t i = 0; i < mask.size(); ++i) mask[i] = mask_map.values[i] != 0.0;
        res = inpaint(input, mask, dict, opt);
      } else {
        res = denoise_map(input, dict, opt);
      }

      Sidecar side(filling ? "inpaint" : "denoise", seed, argc, argv);
      side.meta["config"] = {{"dict", dict_path},   {"lambda", lambda},
                             {"sigma0_sq", sigma0_sq}, {"stride", stride},
                             {"workers", workers},  {"input", in_path},
                             {"mask", mask_path},   {"zero_missing", zero_missing}};
      write_map(out_path, res.denoised, out_format, 255);
      side.emit(out_path);
      if (!var_out.empty()) {
        DepthMap vm;
        vm.height = input.height;
        vm.width = input.width;
        vm.values = res.variance_map;
        write_pfm(var_out, vm);
        side.emit(var_out);
      }

      int unfilled = 0;
      for (auto u : res.unfilled) unfilled += u;
      const DepthMap reference = gt_path.empty() ? input : read_map(gt_path);
      const double pk = peak > 0.0 ? peak : dynamic_range(reference.values);
      std::cout << "psnr_vs_input_db " << fmt_metric(psnr(input.values, res.denoised.values, pk))
                << "\n";
      if (!gt_path.empty()) {
        std::cout << "psnr_vs_gt_db "
                  << fmt_metric(psnr(reference.values, res.denoised.values, pk)) << "\n";
        std::cout << "psnr_input_vs_gt_db "
                  << fmt_metric(psnr(reference.values, input.values, pk)) << "\n";
      }
      std::cout << "unfilled_pixels " << unfilled << "\n";
    } else if (*stereo) {
      StereoPair pair;
      const DepthMap lm = read_map(left_path);
      const DepthMap rm = read_map(right_path);
      pair.height = lm.height;
      pair.width = lm.width;
      pair.left = lm.values;
      pair.right = rm.values;

      StereoConfig cfg;
      cfg.potts.potts_k = potts_k;
      cfg.potts.contrast_threshold = contrast_thresh;
      cfg.potts.data_weight_sq = rho_sq;
      cfg.range = {dmin, dmax};
      cfg.match_dir = match_dir;
      cfg.outer = outer;
      cfg.max_sweeps = max_sweeps;
      cfg.denoise.inference.lambda = lambda;
      cfg.denoise.inference.sigma0_sq = sigma0_sq;
      cfg.denoise.stride = stride;
      cfg.denoise.workers = workers;

      Dictionary dict;
      if (outer > 0) {
        if (dict_path.empty()) throw ContractViolation("--dict is required when --outer > 0");
        dict = read_dictionary(dict_path);
      }
      const TwoLayerResult res = two_layer_infer(pair, dict, cfg);

      DepthMap gt;
      std::vector<std::uint8_t> exclude;
      if (!stereo_gt.empty()) {
        gt = read_map(stereo_gt, gt_zero_missing);
        scale_values(gt, gt_scale);
        exclude = gt.missing_mask;
      }

      Sidecar side("stereo", seed, argc, argv);
      side.meta["config"] = {{"left", left_path},     {"right", right_path},
                             {"dict", dict_path},     {"dmin", dmin},
                             {"dmax", dmax},          {"outer", outer},
                             {"match_dir", match_dir}, {"potts_k", potts_k},
                             {"contrast_thresh", contrast_thresh},
                             {"rho_sq", rho_sq},      {"max_sweeps", max_sweeps},
                             {"lambda", lambda},      {"sigma0_sq", sigma0_sq},
                             {"stride", stride},      {"workers", workers}};

      DepthMap disp;
      disp.height = pair.height;
      disp.width = pair.width;
      disp.values.assign(res.labels.labels.begin(), res.labels.labels.end());
      for (auto& v : disp.values) v *= out_scale;
      const int maxval = std::max(255, static_cast<int>(std::lround(dmax * out_scale)));
      write_map(out_path, disp, out_format, maxval);
      side.emit(out_path);
      if (!var_out.empty()) {
        DepthMap vm;
        vm.height = pair.height;
        vm.width = pair.width;
        vm.values = res.variance;
        write_pfm(var_out, vm);
        side.emit(var_out);
      }

      auto iteration_bad = [&](const DisparityField& f) {
        std::vector<double> est(f.labels.begin(), f.labels.end());
        return bad_pixel_rate(est, gt.values, bad_thresh, exclude);
      };
      if (!stereo_csv.empty()) {
        std::vector<std::string> rows;
        for (size_t i = 0; i < res.trace.size(); ++i) {
          std::string row = std::to_string(i) + "," + fmt_metric(res.trace[i].energy) + "," +
                            std::to_string(res.trace[i].pixels_changed);
          if (!stereo_gt.empty()) {
            row += "," + fmt_metric(100.0 * iteration_bad(res.trace[i].labels));
          }
          rows.push_back(row);
        }
        const std::string header = stereo_gt.empty() ? "iter,energy,pixels_changed"
                                                     : "iter,energy,pixels_changed,bad_pct";
        write_csv(stereo_csv, header, rows, side);
      }

      std::cout << "outer_iterations " << res.trace.size() - 1 << "\n";
      std::cout << "final_energy " << fmt_metric(res.trace.back().energy) << "\n";
      if (!stereo_gt.empty()) {
        std::cout << "bad_pixel_pct " << fmt_metric(100.0 * iteration_bad(res.labels)) << "\n";
      }
    } else if (*eval) {
      DepthMap ref = read_map(ref_path, zero_missing);
      DepthMap test = read_map(test_path);
      scale_values(ref, ref_scale);
      scale_values(test, test_scale);
      const double pk = peak > 0.0 ? peak : dynamic_range(ref.values);
      const double db = psnr(ref.values, test.values, pk);
      const double bad =
          100.0 * bad_pixel_rate(test.values, ref.values, bad_thresh, ref.missing_mask);
      std::cout << "psnr_db " << fmt_metric(db) << "\n";
      std::cout << "bad_pixel_pct " << fmt_metric(bad) << "\n";
      if (!eval_csv.empty()) {
        Sidecar side("eval", seed, argc, argv);
        side.meta["config"] = {{"ref", ref_path}, {"test", test_path}, {"peak", pk},
                               {"bad_thresh", bad_thresh}};
        write_csv(eval_csv, "metric,value",
                  {"psnr_db," + fmt_metric(db), "bad_pixel_pct," + fmt_metric(bad)}, side);
      }
    } else if (*piecewise) {
      Rng rng(seed);
      const DepthMap m = make_piecewise_map(sh, sw, rects, span, rng);
      Sidecar side("synth piecewise", seed, argc, argv);
      side.meta["config"] = {{"height", sh}, {"width", sw}, {"rects", rects}, {"span", span}};
      write_map(out_path, m, out_format, 255);
      side.emit(out_path);
    } else if (*corrupt) {
      Rng rng(seed);
      const DepthMap clean = read_map(in_path);
      const CorruptionResult res = corrupt_pixels(clean, fraction, rng);
      Sidecar side("synth corrupt", seed, argc, argv);
      side.meta["config"] = {{"input", in_path}, {"fraction", fraction}};
      write_map(out_path, res.map, out_format, 255);
      side.emit(out_path);
      if (!truth_out.empty()) {
        DepthMap tm;
        tm.height = clean.height;
        tm.width = clean.width;
        tm.values.assign(res.corrupted.begin(), res.corrupted.end());
        write_pgm(truth_out, tm, 1);
        side.emit(truth_out);
      }
      if (!var_out.empty()) {
        DepthMap vm;
        vm.height = clean.height;
        vm.width = clean.width;
        vm.values = res.true_var;
        write_pfm(var_out, vm);
        side.emit(var_out);
      }
    } else if (*stereogram) {
      Rng rng(seed);
      const DisparityField truth = make_disparity_truth(sh, sw, {dmin, dmax}, rects, rng);
      const StereogramResult res = make_stereogram(truth, fraction, rng);
      Sidecar side("synth stereogram", seed, argc, argv);
      side.meta["config"] = {{"height", sh},   {"width", sw},         {"dmin", dmin},
                             {"dmax", dmax},   {"rects", rects},      {"fraction", fraction}};
      DepthMap img;
      img.height = sh;
      img.width = sw;
      img.values = res.pair.left;
      write_pgm(left_path, img, 255);
      side.emit(left_path);
      img.values = res.pair.right;
      write_pgm(right_path, img, 255);
      side.emit(right_path);
      img.values.assign(truth.labels.begin(), truth.labels.end());
      write_pgm(gt_path, img, std::max(255, dmax));
      side.emit(gt_path);
    }
  } catch (const std::exception& e) {
    std::cerr << json{{"error", e.what()}}.dump() << "\n";
    return 1;
  }
  return 0;
}
