// Copyright 2026 Proxylight Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "cli.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"
#include "proxylight/dataset.hpp"
#include "proxylight/fusion.hpp"
#include "proxylight/image.hpp"
#include "proxylight/metrics.hpp"

namespace proxylight::cli {

namespace fs = std::filesystem;

namespace {

enum class LogLevel { quiet = 0, info = 1, debug = 2 };

// PROXYLIGHT_LOG: quiet|info|debug (default info). Read per call so tests
// can flip it between invocations.
LogLevel log_level() {
  const char* env = std::getenv("PROXYLIGHT_LOG");
  if (!env) return LogLevel::info;
  std::string v(env);
  std::transform(v.begin(), v.end(), v.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (v == "quiet" || v == "error" || v == "0") return LogLevel::quiet;
  if (v == "debug" || v == "trace" || v == "2") return LogLevel::debug;
  return LogLevel::info;
}

void info(const std::string& msg) {
  if (log_level() >= LogLevel::info) std::cout << msg << "\n";
}

void debug(const std::string& msg) {
  if (log_level() >= LogLevel::debug) std::cerr << msg << "\n";
}

void warn(const std::string& msg) { std::cerr << "warning: " << msg << "\n"; }

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

std::string params_line(const TranslationParams& p) {
  return std::string("mode=") + to_string(p.mode) + " lambda_l=" + num(p.lambda_l) +
         " lambda_u=" + num(p.lambda_u) + " gamma=" + num(p.gamma);
}

ImageFormat parse_format(const std::string& name) {
  if (name == "png") return ImageFormat::png;
  if (name == "jpeg" || name == "jpg") return ImageFormat::jpeg;
  throw std::invalid_argument("unknown format '" + name + "' (expected png or jpeg)");
}

struct TranslateArgs {
  std::string well, low, out;
  TranslationParams params;
  std::string mode = "ours";
  std::string format;
};

struct GenerateArgs {
  std::string well_dir, pool_dir, out_dir;
  std::vector<std::string> pool;
  TranslationParams params;
  std::string mode = "ours";
  std::string format = "png";
  std::uint64_t seed = 0;
  int workers = 0;
};

struct SweepArgs {
  std::string well, low, out;
  std::vector<std::string> cells;
};

struct EvalArgs {
  std::string pred_dir, gt_dir, out;
  double beta_sq = 0.3;
  bool depth = false;
};

void add_param_options(CLI::App* cmd, TranslationParams& params, std::string& mode) {
  cmd->add_option("--lambda-l", params.lambda_l, "lower band fraction (inner cutoff)")
      ->capture_default_str();
  cmd->add_option("--lambda-u", params.lambda_u, "upper band fraction (outer cutoff)")
      ->capture_default_str();
  cmd->add_option("--gamma", params.gamma, "darkening exponent, >= 1")->capture_default_str();
  cmd->add_option("--mode", mode, "fusion mode: ours, fda, rect or lowpass")
      ->capture_default_str();
}

int run_translate(TranslateArgs& a) {
  a.params.mode = parse_mode(a.mode);
  a.params.validate();
  const ImageFormat format =
      a.format.empty() ? format_from_extension(a.out) : parse_format(a.format);

  const RasterImage well = load_image(a.well);
  const RasterImage low = load_image(a.low);
  const TranslationResult result = translate(well, low, a.params);
  save_image(result.image, a.out, format);

  info(params_line(a.params));
  if (result.degenerate_band)
    warn("fusion band is empty; output is pure gamma darkening");
  info("wrote " + a.out);
  return 0;
}

int run_generate(GenerateArgs& a) {
  a.params.mode = parse_mode(a.mode);
  a.params.validate();
  if (a.pool_dir.empty() == a.pool.empty())
    throw std::invalid_argument("exactly one of --pool-dir or --pool is required");

  std::vector<fs::path> pool_paths;
  if (!a.pool.empty())
    pool_paths.assign(a.pool.begin(), a.pool.end());
  else
    pool_paths = list_images(a.pool_dir);
  if (pool_paths.empty())
    throw std::invalid_argument("exemplar pool is empty: " + a.pool_dir);
  const LowLightPool pool = load_pool(pool_paths);

  const std::vector<fs::path> inputs = list_images(a.well_dir);

  GenerateOptions options;
  options.params = a.params;
  options.seed = a.seed;
  options.workers = a.workers;
  options.format = parse_format(a.format);
  options.out_dir = a.out_dir;

  const DatasetManifest manifest = generate(inputs, pool, options);

  for (const auto& e : manifest.entries) debug("wrote " + e.output_path);
  for (const auto& f : manifest.failures)
    std::cerr << "failed: " << f.input_path << ": " << f.error << "\n";
  const std::size_t degenerate =
      static_cast<std::size_t>(std::count_if(manifest.entries.begin(), manifest.entries.end(),
                                             [](const ManifestEntry& e) { return e.degenerate_band; }));
  if (degenerate > 0)
    warn(std::to_string(degenerate) + " output(s) had an empty fusion band");

  info(params_line(a.params) + " seed=" + std::to_string(a.seed));
  info("manifest: " + (fs::path(a.out_dir) / "manifest.jsonl").string());
  if (log_level() >= LogLevel::info)
    std::cout << manifest.entries.size() << " ok, " << manifest.failures.size() << " failed\n";
  return 0;
}

TranslationParams parse_cell(const std::string& text) {
  // mode,lambda_l,lambda_u,gamma
  std::vector<std::string> parts;
  std::string::size_type start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    parts.push_back(text.substr(start, comma == std::string::npos ? comma : comma - start));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (parts.size() != 4)
    throw std::invalid_argument("bad --cell '" + text + "' (expected mode,lambda_l,lambda_u,gamma)");
  TranslationParams p;
  p.mode = parse_mode(parts[0]);
  try {
    std::size_t pos = 0;
    p.lambda_l = std::stod(parts[1], &pos);
    if (pos != parts[1].size()) throw std::invalid_argument(parts[1]);
    p.lambda_u = std::stod(parts[2], &pos);
    if (pos != parts[2].size()) throw std::invalid_argument(parts[2]);
    p.gamma = std::stod(parts[3], &pos);
    if (pos != parts[3].size()) throw std::invalid_argument(parts[3]);
  } catch (const std::exception&) {
    throw std::invalid_argument("bad number in --cell '" + text + "'");
  }
  p.validate();
  return p;
}

// The stock grid walks the ablation variants: untapered band, taper reaching
// DC, taper with the inner cutoff, then a wide band.
std::vector<TranslationParams> default_sweep_grid() {
  std::vector<TranslationParams> grid;
  const double gamma = 2.5;
  grid.push_back({0.0, 0.1, gamma, Mode::rect});
  grid.push_back({0.0, 0.1, gamma, Mode::ours});
  grid.push_back({0.01, 0.1, gamma, Mode::ours});
  grid.push_back({0.01, 0.5, gamma, Mode::ours});
  return grid;
}

int run_sweep(SweepArgs& a) {
  std::vector<TranslationParams> grid;
  if (a.cells.empty())
    grid = default_sweep_grid();
  else
    for (const auto& cell : a.cells) grid.push_back(parse_cell(cell));

  const ImageFormat format = format_from_extension(a.out);
  const RasterImage well = load_image(a.well);
  const RasterImage low = load_image(a.low);
  const SweepResult result = sweep(well, low, grid);
  save_image(result.sheet, a.out, format);

  const fs::path out_path(a.out);
  const fs::path cells_path =
      out_path.parent_path() / (out_path.stem().string() + "_cells.jsonl");
  std::ofstream cells_out(cells_path, std::ios::binary);
  if (!cells_out)
    throw std::runtime_error("cannot open cell manifest for writing: " + cells_path.string());
  for (std::size_t k = 0; k < result.cells.size(); ++k) {
    const SweepCell& cell = result.cells[k];
    nlohmann::ordered_json j;
    j["cell"] = k;
    j["row"] = cell.row;
    j["col"] = cell.col;
    j["lambda_l"] = cell.params.lambda_l;
    j["lambda_u"] = cell.params.lambda_u;
    j["gamma"] = cell.params.gamma;
    j["mode"] = to_string(cell.params.mode);
    j["degenerate_band"] = cell.degenerate_band;
    cells_out << j.dump() << '\n';
    if (cell.degenerate_band)
      warn("cell " + std::to_string(k) + " (" + params_line(cell.params) + ") has an empty band");
  }
  cells_out.flush();
  if (!cells_out) throw std::runtime_error("failed writing cell manifest: " + cells_path.string());

  info(std::to_string(result.cells.size()) + " cells in a " + std::to_string(result.rows) + "x" +
       std::to_string(result.cols) + " sheet");
  info("wrote " + a.out);
  info("cells: " + cells_path.string());
  return 0;
}

int run_eval(EvalArgs& a) {
  const std::vector<fs::path> preds = list_images(a.pred_dir);

  std::map<std::string, fs::path> gt_by_stem;
  for (const auto& p : list_images(a.gt_dir)) gt_by_stem.emplace(p.stem().string(), p);

  std::ofstream report(a.out, std::ios::binary);
  if (!report) throw std::runtime_error("cannot open report for writing: " + a.out);

  auto emit_metric = [&](const std::string& pair, const char* metric, double value,
                         bool undefined_recall = false) {
    nlohmann::ordered_json j;
    j["pair"] = pair;
    j["metric"] = metric;
    j["value"] = value;
    if (undefined_recall) j["undefined_recall"] = true;
    report << j.dump() << '\n';
  };
  auto emit_skip = [&](const std::string& pair, const std::string& reason) {
    nlohmann::ordered_json j;
    j["pair"] = pair;
    j["skipped"] = reason;
    report << j.dump() << '\n';
    debug("skipped " + pair + ": " + reason);
  };

  std::size_t ok = 0, skipped = 0;
  for (const auto& pred_path : preds) {
    const std::string stem = pred_path.stem().string();
    const auto it = gt_by_stem.find(stem);
    if (it == gt_by_stem.end()) {
      emit_skip(stem, "no ground-truth file with this stem");
      ++skipped;
      continue;
    }
    GrayMap pred, gt;
    try {
      pred = to_gray(load_image(pred_path));
      gt = to_gray(load_image(it->second));
    } catch (const std::exception& e) {
      emit_skip(stem, e.what());
      ++skipped;
      continue;
    }
    if (pred.height != gt.height || pred.width != gt.width) {
      emit_skip(stem, "size mismatch");
      ++skipped;
      continue;
    }

    if (a.depth) {
      try {
        const DepthMetrics d = depth_metrics(pred, gt);
        emit_metric(stem, "delta1", d.delta1);
        emit_metric(stem, "delta2", d.delta2);
        emit_metric(stem, "delta3", d.delta3);
        emit_metric(stem, "rel", d.rel);
        emit_metric(stem, "rmse", d.rmse);
      } catch (const std::invalid_argument& e) {
        emit_skip(stem, e.what());
        ++skipped;
        continue;
      }
    } else {
      GrayMap gt_binary = gt;
      for (double& v : gt_binary.values) v = v >= 0.5 ? 1.0 : 0.0;
      emit_metric(stem, "mae", mae(pred, gt));
      const FMeasureResult f = f_measure(pred, gt_binary, a.beta_sq);
      emit_metric(stem, "f_measure", f.value, f.undefined_recall);
    }
    ++ok;
  }
  report.flush();
  if (!report) throw std::runtime_error("failed writing report: " + a.out);

  info("report: " + a.out);
  if (log_level() >= LogLevel::info)
    std::cout << ok << " pairs, " << skipped << " skipped\n";
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args) {
  CLI::App app{"Fourier band-pass translation of well-lit photos into low-light proxies"};
  app.name("proxylight");
  app.require_subcommand(1);

  TranslateArgs ta;
  CLI::App* translate_cmd =
      app.add_subcommand("translate", "translate one well-lit image into a low-light proxy");
  translate_cmd->add_option("--well", ta.well, "well-lit input image")->required();
  translate_cmd->add_option("--low", ta.low, "low-light exemplar image")->required();
  translate_cmd->add_option("--out", ta.out, "output image path")->required();
  add_param_options(translate_cmd, ta.params, ta.mode);
  translate_cmd->add_option("--format", ta.format, "output format: png or jpeg (default: from --out extension)");

  GenerateArgs ga;
  CLI::App* generate_cmd =
      app.add_subcommand("generate", "translate a whole directory against an exemplar pool");
  generate_cmd->add_option("--well-dir", ga.well_dir, "directory of well-lit inputs")->required();
  generate_cmd->add_option("--pool-dir", ga.pool_dir, "directory of low-light exemplars");
  generate_cmd->add_option("--pool", ga.pool, "explicit low-light exemplar files");
  generate_cmd->add_option("--out-dir", ga.out_dir, "output directory")->required();
  add_param_options(generate_cmd, ga.params, ga.mode);
  generate_cmd->add_option("--seed", ga.seed, "exemplar sampling seed")->capture_default_str();
  generate_cmd->add_option("--workers", ga.workers, "worker threads (0 = hardware)")
      ->capture_default_str();
  generate_cmd->add_option("--format", ga.format, "output format: png or jpeg")
      ->capture_default_str();

  SweepArgs sa;
  CLI::App* sweep_cmd =
      app.add_subcommand("sweep", "tile translations across a parameter grid into a contact sheet");
  sweep_cmd->add_option("--well", sa.well, "well-lit input image")->required();
  sweep_cmd->add_option("--low", sa.low, "low-light exemplar image")->required();
  sweep_cmd->add_option("--out", sa.out, "contact sheet path")->required();
  sweep_cmd->add_option("--cell", sa.cells,
                        "grid cell as mode,lambda_l,lambda_u,gamma (repeatable; "
                        "default: the four-cell ablation grid at gamma 2.5)");

  EvalArgs ea;
  CLI::App* eval_cmd =
      app.add_subcommand("eval", "score prediction maps against ground truth by filename stem");
  eval_cmd->add_option("--pred-dir", ea.pred_dir, "directory of predicted maps")->required();
  eval_cmd->add_option("--gt-dir", ea.gt_dir, "directory of ground-truth maps")->required();
  eval_cmd->add_option("--out", ea.out, "report path (one JSON record per line)")->required();
  eval_cmd->add_option("--beta-sq", ea.beta_sq, "beta^2 weight in the F-measure")
      ->capture_default_str();
  eval_cmd->add_flag("--depth", ea.depth, "score depth metrics instead of MAE/F-measure");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
    if (translate_cmd->parsed()) return run_translate(ta);
    if (generate_cmd->parsed()) return run_generate(ga);
    if (sweep_cmd->parsed()) return run_sweep(sa);
    if (eval_cmd->parsed()) return run_eval(ea);
    return 2;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace proxylight::cli
