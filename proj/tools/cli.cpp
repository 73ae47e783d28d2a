#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <functional>
#include <optional>
#include <ostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "specmosaic/specmosaic.hpp"

namespace specmosaic::cli {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

namespace {

struct FreqFlags {
  FreqParams freq;
  SelectionParams sel;

  void add_freq(CLI::App* cmd) {
    cmd->add_option("--eps", freq.epsilon, "Log-magnitude guard epsilon")->capture_default_str();
    cmd->add_option("--sigma", freq.blur_sigma, "Gaussian blur sigma (bins)")->capture_default_str();
    cmd->add_option("--radius", freq.blur_radius, "Gaussian blur half-width (bins)")->capture_default_str();
    cmd->add_option("--r-low", freq.r_low, "Bandpass inner radius, fraction of min(H,W)/2")
        ->capture_default_str();
    cmd->add_option("--r-high", freq.r_high, "Bandpass outer radius, fraction of min(H,W)/2")
        ->capture_default_str();
  }
  void add_selection(CLI::App* cmd) {
    cmd->add_option("--t-var", sel.t_var, "Frequency intensity threshold")->capture_default_str();
    cmd->add_option("--t-cnt", sel.t_cnt, "Bin-count threshold")->capture_default_str();
  }
};

SfaPattern resolve_pattern(const std::optional<std::string>& spec, const CubeMetadata& meta,
                           const std::string& input) {
  if (spec) return parse_pattern_spec(*spec);
  if (meta.pattern) return *meta.pattern;
  throw ValidationError(input + ": no --pattern given and the sidecar carries none");
}

MosaicImage load_mosaic_any(const fs::path& path, CubeMetadata& meta) {
  if (path.extension() == ".pgm") return read_pgm16(path);
  CubeFile f = read_cube_file(path);
  if (f.cube.bands() != 1) {
    throw FormatError(path.string() + ": expected a single-band mosaic, found " +
                      std::to_string(f.cube.bands()) + " bands");
  }
  meta = f.metadata;
  return MosaicImage(f.cube.height(), f.cube.width(),
                     std::vector<double>(f.cube.data().begin(), f.cube.data().end()));
}

ordered_json number_or_inf(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

std::vector<PseudoSource> list_cube_dir(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw IoError(dir.string() + " is not a directory");
  std::vector<PseudoSource> sources;
  for (const auto& entry : fs::directory_iterator(dir)) {
    const fs::path p = entry.path();
    if (p.extension() != ".json") continue;
    const fs::path base = cube_base(p);
    if (!fs::exists(payload_path(base))) continue;
    sources.push_back({base.filename().string(), base});
  }
  std::sort(sources.begin(), sources.end(),
            [](const PseudoSource& a, const PseudoSource& b) { return a.id < b.id; });
  if (sources.empty()) throw IoError("no cube files (*.json + *.bsq) in " + dir.string());
  return sources;
}

// A metrics input line: a manifest record (reconstruct with WB) or an
// explicit {"reconstruction": ..., "reference": ...} pair.
struct MetricsEntry {
  std::optional<fs::path> reconstruction;
  std::optional<fs::path> mosaic;
  fs::path reference;
};

std::vector<MetricsEntry> read_metrics_list(const fs::path& list) {
  const fs::path dir = list.has_parent_path() ? list.parent_path() : fs::path(".");
  const std::string text = read_file(list);
  std::vector<MetricsEntry> entries;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string::npos) end = text.size();
    const std::string line = text.substr(start, end - start);
    start = end + 1;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw FormatError(list.string() + ": line " + std::to_string(entries.size() + 1) + ": " + e.what());
    }
    MetricsEntry entry;
    if (j.contains("reconstruction") && j.contains("reference")) {
      entry.reconstruction = dir / j["reconstruction"].get<std::string>();
      entry.reference = dir / j["reference"].get<std::string>();
    } else if (j.contains("mosaic") && j.contains("cube")) {
      entry.mosaic = dir / j["mosaic"].get<std::string>();
      entry.reference = dir / j["cube"].get<std::string>();
    } else {
      throw FormatError(list.string() + ": line " + std::to_string(entries.size() + 1) +
                        ": expected reconstruction/reference or mosaic/cube keys");
    }
    entries.push_back(std::move(entry));
  }
  return entries;
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spectral filter array toolkit: mosaicing, WB demosaicing, pseudo-pair datasets, "
               "frequency-domain hard patch selection and quality metrics.",
               "specmosaic"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));

  // mosaic
  std::string in_path, in_b, out_path;
  std::optional<std::string> pattern_spec;
  auto* c_mosaic = app.add_subcommand("mosaic", "Sample a cube through an SFA pattern");
  c_mosaic->add_option("cube", in_path, "Input cube file")->required();
  c_mosaic->add_option("--pattern", pattern_spec, "NxN or a JSON pattern file");
  c_mosaic->add_option("-o,--output", out_path, "Output mosaic cube file")->required();

  auto* c_demosaic = app.add_subcommand("demosaic", "WB bilinear reconstruction of a mosaic");
  c_demosaic->add_option("mosaic", in_path, "Mosaic cube file or 16-bit PGM")->required();
  c_demosaic->add_option("--pattern", pattern_spec, "NxN or a JSON pattern file");
  c_demosaic->add_option("-o,--output", out_path, "Output cube file")->required();

  std::vector<std::size_t> patch_dims;
  std::optional<std::size_t> stride;
  bool augment = false;
  auto* c_pairs = app.add_subcommand("pairs", "Build the pseudo-paired dataset from label cubes");
  c_pairs->add_option("cube-dir", in_path, "Directory of pseudo-label cube files")->required();
  c_pairs->add_option("--pattern", pattern_spec, "NxN or a JSON pattern file")->required();
  c_pairs->add_flag("--augment", augment, "Add the D4 flips and rotations");
  c_pairs->add_option("--patch", patch_dims, "Patch height and width")->expected(2);
  c_pairs->add_option("--stride", stride, "Patch stride (defaults to patch height)");
  c_pairs->add_option("-o,--output", out_path, "Output directory")->required();

  FreqFlags flags;
  std::optional<std::string> against;
  auto* c_select = app.add_subcommand("select-hard", "Keep only hard patches of a pair manifest");
  c_select->add_option("manifest", in_path, "Input manifest (JSON lines)")->required();
  flags.add_freq(c_select);
  flags.add_selection(c_select);
  c_select->add_option("--against", against,
                       "Compare labels with cubes under this directory instead of WB output");
  c_select->add_option("-o,--output", out_path, "Output manifest")->required();

  std::optional<std::string> pgm_path;
  auto* c_fvmap = app.add_subcommand("fvmap", "Frequency variation map of two cubes");
  c_fvmap->add_option("cube-a", in_path, "First cube")->required();
  c_fvmap->add_option("cube-b", in_b, "Second cube")->required();
  flags.add_freq(c_fvmap);
  c_fvmap->add_option("-o,--output", out_path, "Output single-band cube file")->required();
  c_fvmap->add_option("--pgm", pgm_path, "Also write an 8-bit PGM preview");

  bool clamp = false;
  double peak = 1.0;
  auto* c_metrics = app.add_subcommand("metrics", "PSNR / SSIM / SAM over a manifest or pair list");
  c_metrics->add_option("list", in_path, "Manifest or pair list (JSON lines)")->required();
  c_metrics->add_flag("--clamp", clamp, "Clamp reconstructions to [0,1] first");
  c_metrics->add_option("--peak", peak, "PSNR peak value")->capture_default_str();
  c_metrics->add_option("-o,--output", out_path, "Output report (JSON)")->required();

  auto* c_patchify = app.add_subcommand("patchify", "Cut a cube into pattern-aligned patches");
  c_patchify->add_option("cube", in_path, "Input cube file")->required();
  c_patchify->add_option("--patch", patch_dims, "Patch height and width")->expected(2)->required();
  c_patchify->add_option("--stride", stride, "Patch stride (defaults to patch height)");
  c_patchify->add_option("--pattern", pattern_spec, "NxN or a JSON pattern file");
  c_patchify->add_option("-o,--output", out_path, "Output directory")->required();

  auto* c_validate = app.add_subcommand("validate", "Check a cube for non-finite or out-of-range values");
  c_validate->add_option("cube", in_path, "Input cube file")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (c_mosaic->parsed()) {
    const CubeFile in = read_cube_file(in_path);
    const SfaPattern pattern = resolve_pattern(pattern_spec, in.metadata, in_path);
    write_mosaic(mosaic(in.cube, pattern), out_path, {pattern, std::nullopt});
  } else if (c_demosaic->parsed()) {
    CubeMetadata meta;
    const MosaicImage m = load_mosaic_any(in_path, meta);
    const SfaPattern pattern = resolve_pattern(pattern_spec, meta, in_path);
    write_cube(wb_bilinear(m, pattern), out_path, {pattern, std::nullopt});
  } else if (c_pairs->parsed()) {
    PairConfig config;
    config.augment = augment;
    if (!patch_dims.empty()) config.patch = std::make_pair(patch_dims[0], patch_dims[1]);
    config.stride = stride;
    config.on_warning = [&](const std::string& w) { err << "warning: " << w << "\n"; };
    const auto manifest =
        make_pseudo_pairs(list_cube_dir(in_path), parse_pattern_spec(*pattern_spec), config, out_path);
    out << manifest.records.size() << " records written to "
        << (fs::path(out_path) / "manifest.jsonl").string() << "\n";
  } else if (c_select->parsed()) {
    ComparisonPolicy policy;
    if (against) policy.against_dir = *against;
    const auto result = filter_hard(read_manifest(in_path), policy, flags.freq, flags.sel, out_path);
    out << result.hard.records.size() << " of " << result.all.records.size()
        << " records selected as hard\n";
  } else if (c_fvmap->parsed()) {
    const auto map = frequency_variation_map(read_cube(in_path), read_cube(in_b), flags.freq);
    const auto& v = map.values;
    write_cube(SpectralCube(v.height(), v.width(), 1, std::vector<double>(v.data().begin(), v.data().end())),
               out_path);
    if (pgm_path) write_pgm8(v, *pgm_path);
  } else if (c_metrics->parsed()) {
    const auto entries = read_metrics_list(in_path);
    const auto report = evaluate_dataset(
        entries.size(),
        [&](std::size_t i) -> EvalPair {
          const MetricsEntry& e = entries[i];
          SpectralCube reference = read_cube(e.reference);
          if (e.reconstruction) return {read_cube(*e.reconstruction), std::move(reference)};
          const CubeFile m = read_cube_file(*e.mosaic);
          CubeMetadata meta = m.metadata;
          const SfaPattern pattern = resolve_pattern(std::nullopt, meta, e.mosaic->string());
          const MosaicImage mos(m.cube.height(), m.cube.width(),
                                std::vector<double>(m.cube.data().begin(), m.cube.data().end()));
          return {wb_bilinear(mos, pattern), std::move(reference)};
        },
        {peak, clamp});
    ordered_json j;
    j["tool_version"] = kToolVersion;
    j["peak"] = report.peak;
    j["clamp"] = clamp;
    j["mean_psnr"] = number_or_inf(report.mean_psnr);
    j["mean_ssim"] = report.mean_ssim;
    j["mean_sam"] = report.mean_sam;
    const fs::path list_dir = fs::path(in_path).has_parent_path() ? fs::path(in_path).parent_path()
                                                                   : fs::path(".");
    ordered_json per = ordered_json::array();
    for (std::size_t i = 0; i < report.per_image.size(); ++i) {
      const auto& m = report.per_image[i];
      per.push_back({{"index", i},
                     {"reference", entries[i].reference.lexically_relative(list_dir).generic_string()},
                     {"psnr", number_or_inf(m.psnr)},
                     {"ssim", m.ssim},
                     {"sam", m.sam}});
    }
    j["per_image"] = std::move(per);
    write_file_atomic(out_path, j.dump(2) + "\n");
  } else if (c_patchify->parsed()) {
    const CubeFile in = read_cube_file(in_path);
    const SfaPattern pattern = resolve_pattern(pattern_spec, in.metadata, in_path);
    const fs::path dir(out_path);
    fs::create_directories(dir);
    const std::string stem = cube_base(in_path).filename().string();
    std::string index;
    for (const auto& p : patchify(in.cube, patch_dims[0], patch_dims[1], stride.value_or(patch_dims[0]),
                                  pattern.period())) {
      const std::string name =
          stem + "_r" + std::to_string(p.origin.row) + "_c" + std::to_string(p.origin.col);
      CubeMetadata meta = in.metadata;
      meta.pattern = pattern;
      write_cube(p.cube, dir / name, meta);
      ordered_json line;
      line["cube"] = name;
      line["origin"] = {p.origin.row, p.origin.col};
      line["size"] = {p.origin.size_h, p.origin.size_w};
      index += line.dump() + "\n";
    }
    write_file_atomic(dir / "patches.jsonl", index);
  } else if (c_validate->parsed()) {
    // Non-finite payloads already fail inside read_cube.
    const ValidationReport report = validate_cube(read_cube(in_path));
    for (const auto& v : report.violations) {
      err << (v.kind == ViolationKind::kNonFinite ? "error: " : "warning: ") << v.message << "\n";
    }
    out << report.non_finite_count << " non-finite, " << report.out_of_range_count
        << " out of [0,1]\n";
    return report.fatal() ? kExitProcessing : kExitOk;
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    return dispatch(args, out, err);
  } catch (const RecordError& e) {
    err << "error: " << e.what() << "\n";
    return kExitProcessing;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitProcessing;
  }
}

}  // namespace specmosaic::cli
