// Copyright 2026 Proxylight Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "proxylight/fusion.hpp"
#include "proxylight/image.hpp"

namespace proxylight {

// Ordered set of real low-light exemplars, decoded up front so batch runs
// pay the decode cost once.
struct LowLightPool {
  std::vector<std::filesystem::path> paths;
  std::vector<RasterImage> images;

  std::size_t size() const { return paths.size(); }
};

// Decodes every path into a pool. Throws on an empty list or a bad file.
LowLightPool load_pool(const std::vector<std::filesystem::path>& paths);

// Deterministic uniform pick of an exemplar for one input. Every input index
// gets its own generator state derived from (seed, index), so assignments do
// not depend on processing order or worker count. A single-image pool skips
// sampling entirely.
std::size_t exemplar_index(std::uint64_t seed, std::uint64_t input_index, std::size_t pool_size);

struct ManifestEntry {
  std::string input_path;
  std::string exemplar_path;
  double lambda_l = 0.0;
  double lambda_u = 0.0;
  double gamma = 1.0;
  Mode mode = Mode::ours;
  std::uint64_t seed = 0;
  std::string output_path;  // relative to the manifest's directory
  bool degenerate_band = false;
};

struct FailedEntry {
  std::string input_path;
  std::string error;
};

struct DatasetManifest {
  std::vector<ManifestEntry> entries;   // in input order
  std::vector<FailedEntry> failures;    // in input order
};

struct GenerateOptions {
  TranslationParams params;
  std::uint64_t seed = 0;
  int workers = 0;  // <= 0 picks the hardware thread count
  ImageFormat format = ImageFormat::png;
  std::filesystem::path out_dir;
};

// Batch translation of a well-lit list against an exemplar pool. Outputs are
// named <input_stem>__prx__<mode>__g<gamma>.<ext> (with a numeric suffix on
// stem collisions) and a manifest.jsonl is written to out_dir. Per-input
// failures are recorded and skipped, never fatal. Results are bit-identical
// across reruns and worker counts for fixed inputs and seed.
DatasetManifest generate(const std::vector<std::filesystem::path>& well_inputs,
                         const LowLightPool& pool, const GenerateOptions& options);

// One JSON object per line; failure records carry an "error" field instead
// of the output fields.
void write_manifest(const DatasetManifest& manifest, const std::filesystem::path& path);
DatasetManifest read_manifest(const std::filesystem::path& path);

// Sorted list of the png/jpg/jpeg files directly inside dir.
std::vector<std::filesystem::path> list_images(const std::filesystem::path& dir);

struct SweepCell {
  int row = 0;
  int col = 0;
  TranslationParams params;
  bool degenerate_band = false;
};

struct SweepResult {
  RasterImage sheet;
  std::vector<SweepCell> cells;  // row-major
  int rows = 0;
  int cols = 0;
};

// Translates one image under every parameter set and tiles the results
// row-major on a near-square grid with 2-pixel black gutters. A single-cell
// grid yields exactly that translated image.
SweepResult sweep(const RasterImage& well, const RasterImage& low,
                  const std::vector<TranslationParams>& grid);

}  // namespace proxylight
