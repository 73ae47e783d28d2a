#include "specmosaic/dataset.hpp"

#include <string>

#include <json.hpp>

#include "specmosaic/demosaic.hpp"
#include "specmosaic/error.hpp"
#include "specmosaic/io.hpp"
#include "specmosaic/parallel.hpp"
#include "specmosaic/sfa.hpp"
#include "specmosaic/version.hpp"

namespace specmosaic {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

std::vector<PatchOrigin> patch_origins(std::size_t height, std::size_t width, std::size_t patch_h,
                                       std::size_t patch_w, std::size_t stride, std::size_t period) {
  if (period == 0) throw AlignmentError("period must be at least 1");
  if (patch_h == 0 || patch_w == 0 || stride == 0) {
    throw AlignmentError("patch size and stride must be positive");
  }
  if (patch_h % period != 0 || patch_w % period != 0 || stride % period != 0) {
    throw AlignmentError("patch " + std::to_string(patch_h) + "x" + std::to_string(patch_w) +
                         " with stride " + std::to_string(stride) +
                         " is not aligned to SFA period " + std::to_string(period));
  }
  if (patch_h > height || patch_w > width) {
    throw BoundsError("patch " + std::to_string(patch_h) + "x" + std::to_string(patch_w) +
                      " does not fit in " + std::to_string(height) + "x" + std::to_string(width));
  }
  std::vector<PatchOrigin> out;
  const std::size_t rows = (height - patch_h) / stride + 1;
  const std::size_t cols = (width - patch_w) / stride + 1;
  out.reserve(rows * cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) out.push_back({r * stride, c * stride, patch_h, patch_w});
  }
  return out;
}

std::vector<Patch> patchify(const SpectralCube& cube, std::size_t patch_h, std::size_t patch_w,
                            std::size_t stride, std::size_t period) {
  std::vector<Patch> out;
  for (const auto& origin : patch_origins(cube.height(), cube.width(), patch_h, patch_w, stride, period)) {
    out.push_back({origin, crop_aligned(cube, origin, period)});
  }
  return out;
}

AugmentResult augment_cube(const SpectralCube& cube) {
  AugmentResult result;
  const bool square = cube.height() == cube.width();
  for (D4 op : kAllD4) {
    if (!square && swaps_axes(op)) continue;
    result.variants.emplace_back(op, transform_d4(cube, op));
  }
  if (!square) {
    result.warning = "non-square cube " + std::to_string(cube.height()) + "x" +
                     std::to_string(cube.width()) +
                     ": only identity, rot180, flip_h and flip_v are emitted";
  }
  return result;
}

std::string record_to_json(const PairRecord& r) {
  ordered_json j;
  j["mosaic"] = r.mosaic;
  j["cube"] = r.cube;
  j["source"] = r.source;
  j["origin"] = {r.origin_row, r.origin_col};
  j["aug"] = r.aug;
  j["hard"] = r.hard ? ordered_json(*r.hard) : ordered_json(nullptr);
  j["count"] = r.count ? ordered_json(*r.count) : ordered_json(nullptr);
  return j.dump();
}

PairRecord record_from_json(const std::string& line) {
  try {
    const auto j = nlohmann::json::parse(line);
    PairRecord r;
    r.mosaic = j.at("mosaic").get<std::string>();
    r.cube = j.at("cube").get<std::string>();
    r.source = j.value("source", std::string{});
    if (j.contains("origin")) {
      const auto origin = j.at("origin").get<std::vector<std::size_t>>();
      if (origin.size() != 2) throw FormatError("origin must be [row, col]");
      r.origin_row = origin[0];
      r.origin_col = origin[1];
    }
    r.aug = j.value("aug", std::string("identity"));
    if (j.contains("hard") && !j["hard"].is_null()) r.hard = j["hard"].get<bool>();
    if (j.contains("count") && !j["count"].is_null()) r.count = j["count"].get<std::size_t>();
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("malformed manifest record: ") + e.what());
  }
}

PairManifest read_manifest(const fs::path& path) {
  const std::string text = read_file(path);
  PairManifest manifest;
  manifest.directory = path.has_parent_path() ? path.parent_path() : fs::path(".");
  std::size_t start = 0;
  std::size_t line_no = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string::npos) end = text.size();
    const std::string line = text.substr(start, end - start);
    start = end + 1;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      manifest.records.push_back(record_from_json(line));
    } catch (const FormatError& e) {
      throw FormatError(path.string() + ": line " + std::to_string(line_no + 1) + ": " + e.what());
    }
    ++line_no;
  }
  return manifest;
}

void write_manifest(const PairManifest& manifest, const fs::path& path) {
  std::string text;
  for (const auto& r : manifest.records) text += record_to_json(r) + "\n";
  write_file_atomic(path, text);
}

namespace {

std::string patch_stem(const std::string& source, D4 op, const PatchOrigin& origin) {
  return source + "_" + std::string(to_string(op)) + "_r" + std::to_string(origin.row) + "_c" +
         std::to_string(origin.col);
}

void ensure_directory(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw IoError("cannot create output directory " + dir.string() +
                  (ec ? ": " + ec.message() : std::string{}));
  }
}

// Path of target relative to dir, with '/' separators.
std::string relative_to(const fs::path& target, const fs::path& dir) {
  const fs::path t = fs::absolute(target).lexically_normal();
  const fs::path d = fs::absolute(dir).lexically_normal();
  return t.lexically_relative(d).generic_string();
}

}  // namespace

PairManifest make_pseudo_pairs(const std::vector<PseudoSource>& sources, const SfaPattern& pattern,
                               const PairConfig& config, const fs::path& out_dir) {
  ensure_directory(out_dir / "cubes");
  ensure_directory(out_dir / "mosaics");

  std::vector<std::vector<PairRecord>> per_source(sources.size());
  std::vector<std::optional<std::string>> warnings(sources.size());
  parallel_for(sources.size(), [&](std::size_t i) {
    try {
      const CubeFile input = read_cube_file(sources[i].path);
      if (input.cube.bands() != pattern.bands()) {
        throw ShapeError("cube has " + std::to_string(input.cube.bands()) +
                         " bands but the pattern needs " + std::to_string(pattern.bands()));
      }
      std::vector<std::pair<D4, SpectralCube>> variants;
      if (config.augment) {
        AugmentResult aug = augment_cube(input.cube);
        warnings[i] = aug.warning;
        variants = std::move(aug.variants);
      } else {
        variants.emplace_back(D4::kIdentity, input.cube);
      }

      CubeMetadata cube_meta = input.metadata;
      cube_meta.pattern = pattern;
      const CubeMetadata mosaic_meta{pattern, std::nullopt};

      for (const auto& [op, cube] : variants) {
        std::vector<Patch> patches;
        if (config.patch) {
          const auto [ph, pw] = *config.patch;
          patches = patchify(cube, ph, pw, config.stride.value_or(ph), pattern.period());
        } else {
          patches.push_back({{0, 0, cube.height(), cube.width()}, cube});
        }
        for (const auto& patch : patches) {
          const std::string stem = patch_stem(sources[i].id, op, patch.origin);
          PairRecord record;
          record.cube = "cubes/" + stem;
          record.mosaic = "mosaics/" + stem;
          record.source = sources[i].id;
          record.origin_row = patch.origin.row;
          record.origin_col = patch.origin.col;
          record.aug = std::string(to_string(op));
          write_cube(patch.cube, out_dir / record.cube, cube_meta);
          write_mosaic(remosaic(patch.cube, pattern), out_dir / record.mosaic, mosaic_meta);
          per_source[i].push_back(std::move(record));
        }
      }
    } catch (const RecordError&) {
      throw;
    } catch (const std::exception& e) {
      throw RecordError(i, sources[i].path.string() + ": " + e.what());
    }
  });

  PairManifest manifest;
  manifest.directory = out_dir;
  for (std::size_t i = 0; i < sources.size(); ++i) {
    if (warnings[i] && config.on_warning) config.on_warning(sources[i].id + ": " + *warnings[i]);
    for (auto& r : per_source[i]) manifest.records.push_back(std::move(r));
  }
  write_manifest(manifest, out_dir / "manifest.jsonl");
  return manifest;
}

FilterResult filter_hard(const PairManifest& manifest, const ComparisonPolicy& policy,
                         const FreqParams& fparams, const SelectionParams& sparams,
                         const fs::path& out_manifest) {
  auto load = [&](std::size_t i) -> PatchPair {
    const PairRecord& r = manifest.records[i];
    SpectralCube label = read_cube(manifest.resolve(r.cube));
    if (policy.against_dir) {
      return {std::move(label), read_cube(*policy.against_dir / r.cube)};
    }
    const CubeFile m = read_cube_file(manifest.resolve(r.mosaic));
    if (m.cube.bands() != 1) throw FormatError(r.mosaic + ": mosaic must have 1 band");
    if (!m.metadata.pattern) throw FormatError(r.mosaic + ": mosaic sidecar carries no SFA pattern");
    const MosaicImage mos(m.cube.height(), m.cube.width(),
                          std::vector<double>(m.cube.data().begin(), m.cube.data().end()));
    return {std::move(label), wb_bilinear(mos, *m.metadata.pattern)};
  };

  FilterResult result;
  result.report = select_hard(manifest.records.size(), load, fparams, sparams);

  const fs::path out_dir = out_manifest.has_parent_path() ? out_manifest.parent_path() : fs::path(".");
  ensure_directory(out_dir);
  result.all.directory = out_dir;
  result.hard.directory = out_dir;
  for (std::size_t i = 0; i < manifest.records.size(); ++i) {
    PairRecord r = manifest.records[i];
    r.cube = relative_to(manifest.resolve(r.cube), out_dir);
    r.mosaic = relative_to(manifest.resolve(r.mosaic), out_dir);
    r.count = result.report.verdicts[i].count;
    r.hard = result.report.verdicts[i].is_hard;
    if (*r.hard) result.hard.records.push_back(r);
    result.all.records.push_back(std::move(r));
  }

  write_manifest(result.hard, out_manifest);

  ordered_json side;
  side["tool_version"] = kToolVersion;
  side["policy"] = policy.against_dir ? "against" : "wb_bilinear";
  side["freq_params"] = {{"epsilon", fparams.epsilon},
                         {"blur_sigma", fparams.blur_sigma},
                         {"blur_radius", fparams.blur_radius},
                         {"r_low", fparams.r_low},
                         {"r_high", fparams.r_high}};
  side["selection_params"] = {{"t_var", sparams.t_var}, {"t_cnt", sparams.t_cnt}};
  const CountSummary summary = summarize_counts(result.report.verdicts);
  ordered_json pct = ordered_json::object();
  for (const auto& [p, c] : summary.percentiles) pct["p" + std::to_string(p)] = c;
  side["count_summary"] = {{"n", summary.n},     {"min", summary.min},   {"max", summary.max},
                           {"mean", summary.mean}, {"percentiles", pct}};
  side["hard_total"] = result.hard.records.size();
  ordered_json records = ordered_json::array();
  for (std::size_t i = 0; i < result.all.records.size(); ++i) {
    const auto& r = result.all.records[i];
    records.push_back({{"index", i}, {"cube", r.cube}, {"count", *r.count}, {"hard", *r.hard}});
  }
  side["records"] = std::move(records);
  write_file_atomic(fs::path(out_manifest.string() + ".verdicts.json"), side.dump(2) + "\n");
  return result;
}

}  // namespace specmosaic
