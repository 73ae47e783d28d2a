#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "specmosaic/freqsel.hpp"
#include "specmosaic/geometry.hpp"
#include "specmosaic/types.hpp"

namespace specmosaic {

struct Patch {
  PatchOrigin origin;
  SpectralCube cube;
};

/// Window origins at (r * stride, c * stride) that fit entirely, row-major.
/// Throws AlignmentError unless patch_h, patch_w and stride are positive
/// multiples of period, BoundsError if no window fits.
std::vector<PatchOrigin> patch_origins(std::size_t height, std::size_t width, std::size_t patch_h,
                                       std::size_t patch_w, std::size_t stride, std::size_t period);

std::vector<Patch> patchify(const SpectralCube& cube, std::size_t patch_h, std::size_t patch_w,
                            std::size_t stride, std::size_t period);

struct AugmentResult {
  std::vector<std::pair<D4, SpectralCube>> variants;
  std::optional<std::string> warning;
};

/// All eight D4 variants in kAllD4 order. Non-square cubes get only identity,
/// rot180, flip_h and flip_v, plus a warning.
AugmentResult augment_cube(const SpectralCube& cube);

/// One line of a pair manifest. Paths are relative to the manifest directory.
struct PairRecord {
  std::string mosaic;
  std::string cube;
  std::string source;
  std::size_t origin_row = 0;
  std::size_t origin_col = 0;
  std::string aug = "identity";
  std::optional<bool> hard;
  std::optional<std::size_t> count;

  bool operator==(const PairRecord&) const = default;
};

struct PairManifest {
  std::filesystem::path directory;  // paths in records resolve against this
  std::vector<PairRecord> records;

  std::filesystem::path resolve(const std::string& relative) const { return directory / relative; }
};

/// JSON-lines, one record per line.
PairManifest read_manifest(const std::filesystem::path& path);
void write_manifest(const PairManifest& manifest, const std::filesystem::path& path);

/// Serialized form of a single record (one manifest line, no newline).
std::string record_to_json(const PairRecord& record);
PairRecord record_from_json(const std::string& line);

struct PairConfig {
  bool augment = false;
  std::optional<std::pair<std::size_t, std::size_t>> patch;  // (h, w); whole cube if unset
  std::optional<std::size_t> stride;                         // defaults to patch height
  std::function<void(const std::string&)> on_warning;          // e.g. non-square augmentation
};

struct PseudoSource {
  std::string id;
  std::filesystem::path path;  // cube file base
};

/// Augments, patchifies and remosaics every source cube, writing
/// <out>/cubes/*, <out>/mosaics/* and <out>/manifest.jsonl.
/// Record order: source, then augmentation, then patch (row-major).
PairManifest make_pseudo_pairs(const std::vector<PseudoSource>& sources, const SfaPattern& pattern,
                               const PairConfig& config, const std::filesystem::path& out_dir);

/// Which cube a pseudo label is compared against.
struct ComparisonPolicy {
  /// Unset: wb_bilinear of the record's own mosaic. Set: a cube file at the
  /// same relative path as the record's cube, rooted at this directory.
  std::optional<std::filesystem::path> against_dir;
};

struct FilterResult {
  PairManifest all;   // every record, with hard/count filled in
  PairManifest hard;  // only hard records, original order
  SelectionReport report;
};

/// Runs hard-patch selection over a manifest. Writes the hard subset to
/// out_manifest and every verdict to out_manifest + ".verdicts.json".
FilterResult filter_hard(const PairManifest& manifest, const ComparisonPolicy& policy,
                         const FreqParams& fparams, const SelectionParams& sparams,
                         const std::filesystem::path& out_manifest);

}  // namespace specmosaic
