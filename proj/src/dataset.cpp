// Copyright 2026 Proxylight Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "proxylight/dataset.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <tuple>

#include "json.hpp"

namespace proxylight {

namespace fs = std::filesystem;

namespace {

std::string gamma_label(double gamma) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", gamma);
  return buf;
}

nlohmann::ordered_json entry_json(const ManifestEntry& e) {
  nlohmann::ordered_json j;
  j["input_path"] = e.input_path;
  j["exemplar_path"] = e.exemplar_path;
  j["lambda_l"] = e.lambda_l;
  j["lambda_u"] = e.lambda_u;
  j["gamma"] = e.gamma;
  j["mode"] = to_string(e.mode);
  j["seed"] = e.seed;
  j["output_path"] = e.output_path;
  j["degenerate_band"] = e.degenerate_band;
  return j;
}

}  // namespace

LowLightPool load_pool(const std::vector<fs::path>& paths) {
  if (paths.empty()) throw std::invalid_argument("exemplar pool is empty");
  LowLightPool pool;
  pool.paths = paths;
  pool.images.reserve(paths.size());
  for (const auto& p : paths) pool.images.push_back(load_image(p));
  return pool;
}

std::size_t exemplar_index(std::uint64_t seed, std::uint64_t input_index, std::size_t pool_size) {
  if (pool_size == 0) throw std::invalid_argument("exemplar_index: empty pool");
  if (pool_size == 1) return 0;
  // input_index-th output of a splitmix64 stream started at seed.
  std::uint64_t x = seed + 0x9E3779B97F4A7C15ULL * (input_index + 1);
  x ^= x >> 30;
  x *= 0xBF58476D1CE4E5B9ULL;
  x ^= x >> 27;
  x *= 0x94D049BB133111EBULL;
  x ^= x >> 31;
  return static_cast<std::size_t>(x % pool_size);
}

DatasetManifest generate(const std::vector<fs::path>& well_inputs, const LowLightPool& pool,
                         const GenerateOptions& options) {
  options.params.validate();
  if (pool.size() == 0) throw std::invalid_argument("generate: exemplar pool is empty");
  if (pool.images.size() != pool.paths.size())
    throw std::invalid_argument("generate: pool images and paths disagree");
  if (options.out_dir.empty()) throw std::invalid_argument("generate: output directory not set");
  fs::create_directories(options.out_dir);

  // Names are assigned in input order before any work starts, so stem
  // collisions resolve the same way regardless of scheduling.
  const std::size_t n = well_inputs.size();
  const char* ext = options.format == ImageFormat::png ? ".png" : ".jpg";
  std::vector<std::string> names(n);
  std::map<std::string, int> used;
  for (std::size_t i = 0; i < n; ++i) {
    std::string base = well_inputs[i].stem().string() + "__prx__" +
                       to_string(options.params.mode) + "__g" + gamma_label(options.params.gamma);
    const int k = ++used[base];
    if (k > 1) base += "_" + std::to_string(k);
    names[i] = base + ext;
  }

  struct Slot {
    ManifestEntry entry;
    FailedEntry failure;
    bool ok = false;
  };
  std::vector<Slot> slots(n);
  std::atomic<std::size_t> cursor{0};

  // Exemplar spectra are shape-dependent but input-independent, so a small
  // pool serving many same-sized inputs transforms each exemplar once.
  // Computing under the lock keeps a spectrum from being built twice.
  std::map<std::tuple<std::size_t, int, int, int>, std::shared_ptr<const ImageSpectrum>> spectra;
  std::mutex spectra_mutex;
  auto exemplar_for = [&](std::size_t pick, const RasterImage& well) {
    const std::tuple<std::size_t, int, int, int> key{pick, well.height, well.width, well.channels};
    std::lock_guard<std::mutex> lock(spectra_mutex);
    auto it = spectra.find(key);
    if (it == spectra.end())
      it = spectra
               .emplace(key, std::make_shared<const ImageSpectrum>(exemplar_spectrum(
                                 pool.images[pick], well.height, well.width, well.channels)))
               .first;
    return it->second;
  };

  auto work = [&]() {
    for (;;) {
      const std::size_t i = cursor.fetch_add(1);
      if (i >= n) return;
      Slot& slot = slots[i];
      try {
        const RasterImage well = load_image(well_inputs[i]);
        const std::size_t pick = exemplar_index(options.seed, i, pool.size());
        const std::shared_ptr<const ImageSpectrum> low_spectrum = exemplar_for(pick, well);
        const TranslationResult result = translate(well, *low_spectrum, options.params);
        save_image(result.image, options.out_dir / names[i], options.format);
        slot.entry = ManifestEntry{well_inputs[i].string(),
                                   pool.paths[pick].string(),
                                   options.params.lambda_l,
                                   options.params.lambda_u,
                                   options.params.gamma,
                                   options.params.mode,
                                   options.seed,
                                   names[i],
                                   result.degenerate_band};
        slot.ok = true;
      } catch (const std::exception& e) {
        slot.failure = FailedEntry{well_inputs[i].string(), e.what()};
      }
    }
  };

  int workers = options.workers > 0 ? options.workers
                                    : static_cast<int>(std::thread::hardware_concurrency());
  workers = std::max(workers, 1);
  if (n > 0) workers = std::min<int>(workers, static_cast<int>(n));
  if (workers <= 1 || n <= 1) {
    work();
  } else {
    std::vector<std::thread> threads;
    threads.reserve(static_cast<std::size_t>(workers));
    for (int t = 0; t < workers; ++t) threads.emplace_back(work);
    for (auto& th : threads) th.join();
  }

  DatasetManifest manifest;
  for (const Slot& slot : slots) {
    if (slot.ok)
      manifest.entries.push_back(slot.entry);
    else
      manifest.failures.push_back(slot.failure);
  }
  write_manifest(manifest, options.out_dir / "manifest.jsonl");
  return manifest;
}

void write_manifest(const DatasetManifest& manifest, const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open manifest for writing: " + path.string());
  for (const auto& e : manifest.entries) out << entry_json(e).dump() << '\n';
  for (const auto& f : manifest.failures) {
    nlohmann::ordered_json j;
    j["input_path"] = f.input_path;
    j["error"] = f.error;
    out << j.dump() << '\n';
  }
  out.flush();
  if (!out) throw std::runtime_error("failed writing manifest: " + path.string());
}

DatasetManifest read_manifest(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open manifest: " + path.string());
  DatasetManifest manifest;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      if (j.contains("error")) {
        manifest.failures.push_back(
            FailedEntry{j.at("input_path").get<std::string>(), j.at("error").get<std::string>()});
        continue;
      }
      ManifestEntry e;
      e.input_path = j.at("input_path").get<std::string>();
      e.exemplar_path = j.at("exemplar_path").get<std::string>();
      e.lambda_l = j.at("lambda_l").get<double>();
      e.lambda_u = j.at("lambda_u").get<double>();
      e.gamma = j.at("gamma").get<double>();
      e.mode = parse_mode(j.at("mode").get<std::string>());
      e.seed = j.at("seed").get<std::uint64_t>();
      e.output_path = j.at("output_path").get<std::string>();
      e.degenerate_band = j.at("degenerate_band").get<bool>();
      manifest.entries.push_back(std::move(e));
    } catch (const nlohmann::json::exception& ex) {
      throw std::runtime_error("bad manifest record at " + path.string() + ":" +
                               std::to_string(line_no) + ": " + ex.what());
    }
  }
  return manifest;
}

std::vector<fs::path> list_images(const fs::path& dir) {
  if (!fs::is_directory(dir))
    throw std::invalid_argument("not a directory: " + dir.string());
  std::vector<fs::path> out;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    std::string ext = entry.path().extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (ext == ".png" || ext == ".jpg" || ext == ".jpeg") out.push_back(entry.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

SweepResult sweep(const RasterImage& well, const RasterImage& low,
                  const std::vector<TranslationParams>& grid) {
  if (grid.empty()) throw std::invalid_argument("sweep: empty parameter grid");
  if (!well.valid()) throw std::invalid_argument("sweep: empty input image");

  const int n = static_cast<int>(grid.size());
  const int cols = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n))));
  const int rows = (n + cols - 1) / cols;
  const int gutter = 2;
  const int h = well.height;
  const int w = well.width;

  SweepResult result;
  result.rows = rows;
  result.cols = cols;
  result.sheet = RasterImage(rows * h + gutter * (rows - 1), cols * w + gutter * (cols - 1),
                             well.channels, 0.0);
  result.cells.reserve(grid.size());

  // One exemplar serves every cell, so its spectrum is computed once.
  const ImageSpectrum low_spectrum = exemplar_spectrum(low, h, w, well.channels);
  for (int k = 0; k < n; ++k) {
    const TranslationResult t = translate(well, low_spectrum, grid[static_cast<std::size_t>(k)]);
    const int row = k / cols;
    const int col = k % cols;
    const int r0 = row * (h + gutter);
    const int c0 = col * (w + gutter);
    for (int r = 0; r < h; ++r)
      for (int c = 0; c < w; ++c)
        for (int ch = 0; ch < well.channels; ++ch)
          result.sheet.at(r0 + r, c0 + c, ch) = t.image.at(r, c, ch);
    result.cells.push_back(SweepCell{row, col, grid[static_cast<std::size_t>(k)], t.degenerate_band});
  }
  return result;
}

}  // namespace proxylight
