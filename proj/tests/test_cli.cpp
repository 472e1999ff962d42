// Copyright 2026 Proxylight Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <vector>

#include "cli.hpp"
#include "doctest.h"
#include "json.hpp"
#include "proxylight/dataset.hpp"
#include "proxylight/image.hpp"
#include "testutil.hpp"

namespace fs = std::filesystem;
using proxylight::RasterImage;

namespace {

// Keeps the CLI's info chatter out of the doctest output.
struct LogQuiet {
  LogQuiet() { ::setenv("PROXYLIGHT_LOG", "quiet", 1); }
  ~LogQuiet() { ::unsetenv("PROXYLIGHT_LOG"); }
};

struct CoutCapture {
  std::stringstream ss;
  std::streambuf* old;
  CoutCapture() : old(std::cout.rdbuf(ss.rdbuf())) {}
  ~CoutCapture() { std::cout.rdbuf(old); }
  std::string text() const { return ss.str(); }
};

int run(std::vector<std::string> args) { return proxylight::cli::run(args); }

void write_natural(const fs::path& path, int h, int w, std::uint64_t seed) {
  save_image(proxylight::synth_natural_image(h, w, 3, seed), path,
             proxylight::format_from_extension(path));
}

void write_dark(const fs::path& path, int h, int w, std::uint64_t seed) {
  save_image(proxylight::synth_dark_image(h, w, 3, seed), path,
             proxylight::format_from_extension(path));
}

void write_gray(const fs::path& path, const std::vector<double>& values, int h, int w) {
  RasterImage img(h, w, 1, 0.0);
  img.data = values;
  save_image(img, path, proxylight::ImageFormat::png);
}

std::vector<nlohmann::json> read_jsonl(const fs::path& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::vector<nlohmann::json> lines;
  std::string line;
  while (std::getline(in, line))
    if (!line.empty()) lines.push_back(nlohmann::json::parse(line));
  return lines;
}

}  // namespace

TEST_CASE("bad arguments exit with 2 before touching the filesystem") {
  LogQuiet quiet;
  CHECK(run({"translate", "--well", "a.png", "--low", "b.png", "--out", "c.png",
             "--lambda-l", "0.2", "--lambda-u", "0.1"}) == 2);
  CHECK(run({"translate", "--well", "a.png", "--low", "b.png", "--out", "c.png",
             "--gamma", "0.5"}) == 2);
  CHECK(run({"translate", "--well", "a.png", "--low", "b.png", "--out", "c.png",
             "--mode", "wave"}) == 2);
  CHECK(run({"translate", "--well", "a.png", "--low", "b.png", "--out", "c.png",
             "--format", "bmp"}) == 2);
  CHECK(run({"translate", "--well", "a.png"}) == 2);              // missing required
  CHECK(run({"translate", "--no-such-flag"}) == 2);
  CHECK(run({"frobnicate"}) == 2);                                 // unknown subcommand
  CHECK(run({}) == 2);                                             // subcommand required
}

TEST_CASE("--help exits 0") {
  CoutCapture capture;
  CHECK(run({"--help"}) == 0);
  CHECK(run({"translate", "--help"}) == 0);
  CHECK(capture.text().find("translate") != std::string::npos);
}

TEST_CASE("translate writes a proxy and reports missing inputs as runtime failures") {
  LogQuiet quiet;
  testutil::TempDir tmp("cli_tr");
  write_natural(tmp / "well.png", 32, 32, 1);
  write_dark(tmp / "low.png", 32, 32, 2);

  CHECK(run({"translate", "--well", (tmp / "well.png").string(), "--low",
             (tmp / "low.png").string(), "--out", (tmp / "out.png").string()}) == 0);
  const RasterImage out = proxylight::load_image(tmp / "out.png");
  CHECK(out.height == 32);
  CHECK(out.width == 32);
  CHECK(out.channels == 3);

  // Proxies are darker than their sources at the default gamma.
  const RasterImage well = proxylight::load_image(tmp / "well.png");
  CHECK(out.mean() < well.mean());

  CHECK(run({"translate", "--well", (tmp / "absent.png").string(), "--low",
             (tmp / "low.png").string(), "--out", (tmp / "out2.png").string()}) == 1);
  CHECK_FALSE(fs::exists(tmp / "out2.png"));
}

TEST_CASE("translate honors --format over the output extension") {
  LogQuiet quiet;
  testutil::TempDir tmp("cli_fmt");
  write_natural(tmp / "well.png", 16, 16, 1);
  write_dark(tmp / "low.png", 16, 16, 2);

  CHECK(run({"translate", "--well", (tmp / "well.png").string(), "--low",
             (tmp / "low.png").string(), "--out", (tmp / "out.dat").string(), "--format",
             "jpg"}) == 0);
  // A jpeg signature, despite the odd extension.
  std::ifstream in(tmp / "out.dat", std::ios::binary);
  unsigned char sig[2] = {0, 0};
  in.read(reinterpret_cast<char*>(sig), 2);
  CHECK(sig[0] == 0xFF);
  CHECK(sig[1] == 0xD8);
}

TEST_CASE("a tiny image degenerates to darkening but still succeeds") {
  LogQuiet quiet;
  testutil::TempDir tmp("cli_degen");
  write_natural(tmp / "well.png", 8, 8, 1);
  write_dark(tmp / "low.png", 8, 8, 2);
  CHECK(run({"translate", "--well", (tmp / "well.png").string(), "--low",
             (tmp / "low.png").string(), "--out", (tmp / "out.png").string()}) == 0);
  CHECK(fs::exists(tmp / "out.png"));
}

TEST_CASE("generate builds a dataset with a manifest") {
  LogQuiet quiet;
  testutil::TempDir tmp("cli_gen");
  fs::create_directories(tmp / "well");
  fs::create_directories(tmp / "pool");
  write_natural(tmp / "well/a.png", 16, 16, 1);
  write_natural(tmp / "well/b.png", 16, 16, 2);
  write_dark(tmp / "pool/d.png", 16, 16, 3);

  CHECK(run({"generate", "--well-dir", (tmp / "well").string(), "--pool-dir",
             (tmp / "pool").string(), "--out-dir", (tmp / "out").string(), "--seed", "7"}) == 0);
  const proxylight::DatasetManifest m = proxylight::read_manifest(tmp / "out/manifest.jsonl");
  CHECK(m.entries.size() == 2);
  CHECK(m.failures.empty());
  for (const auto& e : m.entries) {
    CHECK(e.seed == 7);
    CHECK(fs::exists(tmp / "out" / e.output_path));
  }

  SUBCASE("an explicit --pool list works too") {
    CHECK(run({"generate", "--well-dir", (tmp / "well").string(), "--pool",
               (tmp / "pool/d.png").string(), "--out-dir", (tmp / "out2").string()}) == 0);
    CHECK(proxylight::read_manifest(tmp / "out2/manifest.jsonl").entries.size() == 2);
  }

  SUBCASE("pool flags are mutually exclusive and mandatory") {
    CHECK(run({"generate", "--well-dir", (tmp / "well").string(), "--out-dir",
               (tmp / "x").string()}) == 2);
    CHECK(run({"generate", "--well-dir", (tmp / "well").string(), "--pool-dir",
               (tmp / "pool").string(), "--pool", (tmp / "pool/d.png").string(), "--out-dir",
               (tmp / "x").string()}) == 2);
  }

  SUBCASE("an imageless pool directory is an argument error") {
    fs::create_directories(tmp / "empty_pool");
    CHECK(run({"generate", "--well-dir", (tmp / "well").string(), "--pool-dir",
               (tmp / "empty_pool").string(), "--out-dir", (tmp / "x").string()}) == 2);
  }
}

TEST_CASE("generate on an empty input directory reports zero work") {
  testutil::TempDir tmp("cli_gen0");
  fs::create_directories(tmp / "well");
  fs::create_directories(tmp / "pool");
  write_dark(tmp / "pool/d.png", 16, 16, 1);

  ::setenv("PROXYLIGHT_LOG", "info", 1);
  int code = 0;
  std::string text;
  {
    CoutCapture capture;
    code = run({"generate", "--well-dir", (tmp / "well").string(), "--pool-dir",
                (tmp / "pool").string(), "--out-dir", (tmp / "out").string()});
    text = capture.text();
  }
  ::unsetenv("PROXYLIGHT_LOG");
  CHECK(code == 0);
  CHECK(text.find("0 ok, 0 failed") != std::string::npos);
  CHECK(proxylight::read_manifest(tmp / "out/manifest.jsonl").entries.empty());
}

TEST_CASE("sweep produces a contact sheet and a cell manifest") {
  LogQuiet quiet;
  testutil::TempDir tmp("cli_sweep");
  write_natural(tmp / "well.png", 16, 12, 1);
  write_dark(tmp / "low.png", 16, 12, 2);

  SUBCASE("the default grid has four cells") {
    CHECK(run({"sweep", "--well", (tmp / "well.png").string(), "--low",
               (tmp / "low.png").string(), "--out", (tmp / "sheet.png").string()}) == 0);
    const RasterImage sheet = proxylight::load_image(tmp / "sheet.png");
    CHECK(sheet.height == 2 * 16 + 2);
    CHECK(sheet.width == 2 * 12 + 2);

    const auto cells = read_jsonl(tmp / "sheet_cells.jsonl");
    REQUIRE(cells.size() == 4);
    CHECK(cells[0]["mode"] == "rect");
    CHECK(cells[1]["mode"] == "ours");
    CHECK(cells[2]["lambda_l"] == 0.01);
    CHECK(cells[3]["lambda_u"] == 0.5);
    for (const auto& c : cells) CHECK(c["gamma"] == 2.5);
    CHECK(cells[3]["row"] == 1);
    CHECK(cells[3]["col"] == 1);
  }

  SUBCASE("explicit cells override the grid") {
    CHECK(run({"sweep", "--well", (tmp / "well.png").string(), "--low",
               (tmp / "low.png").string(), "--out", (tmp / "one.png").string(), "--cell",
               "rect,0,0.1,1"}) == 0);
    const RasterImage sheet = proxylight::load_image(tmp / "one.png");
    CHECK(sheet.height == 16);
    CHECK(sheet.width == 12);
    CHECK(read_jsonl(tmp / "one_cells.jsonl").size() == 1);
  }

  SUBCASE("malformed cells exit 2") {
    const std::vector<std::string> bad = {"ours,0.2,0.1,2.5", "ours,xx,0.1,2", "ours,0.1",
                                          "nope,0,0.1,2"};
    for (const auto& cell : bad)
      CHECK(run({"sweep", "--well", (tmp / "well.png").string(), "--low",
                 (tmp / "low.png").string(), "--out", (tmp / "bad.png").string(), "--cell",
                 cell}) == 2);
  }
}

TEST_CASE("eval pairs maps by stem and writes one record per metric") {
  LogQuiet quiet;
  testutil::TempDir tmp("cli_eval");
  fs::create_directories(tmp / "pred");
  fs::create_directories(tmp / "gt");

  // a: perfect binary match; b: no ground truth.
  const std::vector<double> binary = {1, 1, 0, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0};
  write_gray(tmp / "pred/a.png", binary, 4, 4);
  write_gray(tmp / "gt/a.png", binary, 4, 4);
  write_gray(tmp / "pred/b.png", binary, 4, 4);

  CHECK(run({"eval", "--pred-dir", (tmp / "pred").string(), "--gt-dir", (tmp / "gt").string(),
             "--out", (tmp / "report.jsonl").string()}) == 0);
  const auto lines = read_jsonl(tmp / "report.jsonl");
  REQUIRE(lines.size() == 3);
  CHECK(lines[0]["pair"] == "a");
  CHECK(lines[0]["metric"] == "mae");
  CHECK(lines[0]["value"] == 0.0);
  CHECK(lines[1]["metric"] == "f_measure");
  CHECK(lines[1]["value"] == 1.0);
  CHECK(lines[2]["pair"] == "b");
  CHECK(lines[2].contains("skipped"));
}

TEST_CASE("eval skips mismatched sizes but keeps going") {
  LogQuiet quiet;
  testutil::TempDir tmp("cli_eval_sz");
  fs::create_directories(tmp / "pred");
  fs::create_directories(tmp / "gt");
  write_gray(tmp / "pred/a.png", std::vector<double>(16, 0.5), 4, 4);
  write_gray(tmp / "gt/a.png", std::vector<double>(36, 0.5), 6, 6);
  write_gray(tmp / "pred/c.png", std::vector<double>(16, 1.0), 4, 4);
  write_gray(tmp / "gt/c.png", std::vector<double>(16, 1.0), 4, 4);

  CHECK(run({"eval", "--pred-dir", (tmp / "pred").string(), "--gt-dir", (tmp / "gt").string(),
             "--out", (tmp / "report.jsonl").string()}) == 0);
  const auto lines = read_jsonl(tmp / "report.jsonl");
  REQUIRE(lines.size() == 3);
  CHECK(lines[0]["pair"] == "a");
  CHECK(lines[0]["skipped"] == "size mismatch");
  CHECK(lines[1]["pair"] == "c");
}

TEST_CASE("eval --depth emits the five depth metrics") {
  LogQuiet quiet;
  testutil::TempDir tmp("cli_depth");
  fs::create_directories(tmp / "pred");
  fs::create_directories(tmp / "gt");
  write_gray(tmp / "pred/d.png", std::vector<double>(16, 0.5), 4, 4);
  write_gray(tmp / "gt/d.png", std::vector<double>(16, 0.5), 4, 4);

  CHECK(run({"eval", "--pred-dir", (tmp / "pred").string(), "--gt-dir", (tmp / "gt").string(),
             "--out", (tmp / "report.jsonl").string(), "--depth"}) == 0);
  const auto lines = read_jsonl(tmp / "report.jsonl");
  REQUIRE(lines.size() == 5);
  CHECK(lines[0]["metric"] == "delta1");
  CHECK(lines[0]["value"] == 1.0);
  CHECK(lines[3]["metric"] == "rel");
  CHECK(lines[3]["value"] == 0.0);
  CHECK(lines[4]["metric"] == "rmse");
  CHECK(lines[4]["value"] == 0.0);
}
