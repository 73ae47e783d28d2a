#include "specmosaic/io.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <regex>
#include <sstream>

#include <json.hpp>

#include "specmosaic/error.hpp"

namespace specmosaic {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

namespace {

nlohmann::json parse_json(const std::string& text, const fs::path& origin) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(origin.string() + ": invalid JSON: " + e.what());
  }
}

SfaPattern pattern_from_json(const nlohmann::json& j, const fs::path& origin) {
  try {
    const auto period = j.at("period").get<std::size_t>();
    auto layout = j.at("band_at").get<std::vector<std::size_t>>();
    return SfaPattern(period, std::move(layout));
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(origin.string() + ": malformed pattern: " + e.what());
  } catch (const ValidationError& e) {
    throw FormatError(origin.string() + ": " + e.what());
  }
}

ordered_json pattern_to_json(const SfaPattern& pattern) {
  ordered_json j;
  j["period"] = pattern.period();
  j["band_at"] = std::vector<std::size_t>(pattern.layout().begin(), pattern.layout().end());
  return j;
}

void put_u32_le(std::string& out, std::uint32_t x) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((x >> (8 * i)) & 0xFFu));
}

std::uint32_t get_u32_le(const std::string& in, std::size_t at) {
  std::uint32_t x = 0;
  for (int i = 0; i < 4; ++i) x |= static_cast<std::uint32_t>(static_cast<unsigned char>(in[at + i])) << (8 * i);
  return x;
}

}  // namespace

fs::path cube_base(const fs::path& path) {
  const auto ext = path.extension();
  if (ext == ".json" || ext == ".bsq") {
    fs::path base = path;
    base.replace_extension();
    return base;
  }
  return path;
}

fs::path sidecar_path(const fs::path& base) { return fs::path(base.string() + ".json"); }
fs::path payload_path(const fs::path& base) { return fs::path(base.string() + ".bsq"); }

void write_file_atomic(const fs::path& path, const std::string& bytes) {
  const fs::path tmp = fs::path(path.string() + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("write failed for " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) throw IoError("cannot rename " + tmp.string() + " to " + path.string() + ": " + ec.message());
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_cube(const SpectralCube& cube, const fs::path& path, const CubeMetadata& metadata) {
  const fs::path base = cube_base(path);
  for (double x : cube.data()) {
    if (!std::isfinite(x)) throw ValidationError("refusing to write non-finite sample to " + base.string());
  }
  if (metadata.wavelengths_nm && metadata.wavelengths_nm->size() != cube.bands()) {
    throw ValidationError("wavelength list length does not match band count");
  }

  ordered_json side;
  side["height"] = cube.height();
  side["width"] = cube.width();
  side["bands"] = cube.bands();
  side["dtype"] = "f32le";
  side["interleave"] = "bsq";
  if (metadata.pattern) side["pattern"] = pattern_to_json(*metadata.pattern);
  if (metadata.wavelengths_nm) side["wavelengths_nm"] = *metadata.wavelengths_nm;

  std::string payload;
  payload.reserve(cube.size() * 4);
  for (double x : cube.data()) put_u32_le(payload, std::bit_cast<std::uint32_t>(static_cast<float>(x)));

  write_file_atomic(payload_path(base), payload);
  write_file_atomic(sidecar_path(base), side.dump(2) + "\n");
}

CubeFile read_cube_file(const fs::path& path) {
  const fs::path base = cube_base(path);
  const fs::path side_path = sidecar_path(base);
  if (!fs::exists(side_path)) throw IoError("missing sidecar " + side_path.string());
  const auto side = parse_json(read_file(side_path), side_path);

  std::size_t h = 0, w = 0, c = 0;
  CubeMetadata meta;
  try {
    h = side.at("height").get<std::size_t>();
    w = side.at("width").get<std::size_t>();
    c = side.at("bands").get<std::size_t>();
    if (side.at("dtype").get<std::string>() != "f32le") throw FormatError("dtype must be \"f32le\"");
    if (side.at("interleave").get<std::string>() != "bsq") throw FormatError("interleave must be \"bsq\"");
    if (side.contains("wavelengths_nm") && !side["wavelengths_nm"].is_null()) {
      meta.wavelengths_nm = side["wavelengths_nm"].get<std::vector<double>>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(side_path.string() + ": malformed sidecar: " + e.what());
  } catch (const FormatError& e) {
    throw FormatError(side_path.string() + ": " + e.what());
  }
  if (h == 0 || w == 0 || c == 0) throw FormatError(side_path.string() + ": dimensions must be positive");
  if (side.contains("pattern") && !side["pattern"].is_null()) {
    meta.pattern = pattern_from_json(side["pattern"], side_path);
  }
  if (meta.wavelengths_nm && meta.wavelengths_nm->size() != c) {
    throw FormatError(side_path.string() + ": wavelengths_nm has " +
                      std::to_string(meta.wavelengths_nm->size()) + " entries for " +
                      std::to_string(c) + " bands");
  }

  const fs::path data_path = payload_path(base);
  if (!fs::exists(data_path)) throw IoError("missing payload " + data_path.string());
  const std::string payload = read_file(data_path);
  const std::size_t expected = h * w * c * 4;
  if (payload.size() != expected) {
    throw FormatError(data_path.string() + ": payload length mismatch, expected " +
                      std::to_string(expected) + " bytes, found " + std::to_string(payload.size()));
  }
  std::vector<double> data(h * w * c);
  for (std::size_t i = 0; i < data.size(); ++i) {
    const float x = std::bit_cast<float>(get_u32_le(payload, 4 * i));
    if (!std::isfinite(x)) {
      throw ValidationError(data_path.string() + ": non-finite sample at index " + std::to_string(i));
    }
    data[i] = x;
  }
  return {SpectralCube(h, w, c, std::move(data)), std::move(meta)};
}

SpectralCube read_cube(const fs::path& path) { return read_cube_file(path).cube; }

void write_mosaic(const MosaicImage& m, const fs::path& path, const CubeMetadata& metadata) {
  write_cube(SpectralCube(m.height(), m.width(), 1, std::vector<double>(m.data().begin(), m.data().end())),
             path, metadata);
}

MosaicImage read_mosaic(const fs::path& path) {
  const SpectralCube cube = read_cube(path);
  if (cube.bands() != 1) {
    throw FormatError(cube_base(path).string() + ": a mosaic must have exactly 1 band, found " +
                      std::to_string(cube.bands()));
  }
  return MosaicImage(cube.height(), cube.width(),
                     std::vector<double>(cube.data().begin(), cube.data().end()));
}

MosaicImage read_pgm16(const fs::path& path) {
  const std::string bytes = read_file(path);
  if (bytes.size() < 2 || bytes[0] != 'P' || bytes[1] != '5') {
    throw FormatError(path.string() + ": wrong magic, expected binary PGM \"P5\"");
  }
  std::size_t pos = 2;
  auto next_token = [&]() -> std::size_t {
    for (;;) {
      while (pos < bytes.size() && std::isspace(static_cast<unsigned char>(bytes[pos]))) ++pos;
      if (pos < bytes.size() && bytes[pos] == '#') {
        while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
        continue;
      }
      break;
    }
    const std::size_t start = pos;
    while (pos < bytes.size() && std::isdigit(static_cast<unsigned char>(bytes[pos]))) ++pos;
    if (start == pos) throw FormatError(path.string() + ": malformed PGM header");
    return static_cast<std::size_t>(std::stoull(bytes.substr(start, pos - start)));
  };
  const std::size_t width = next_token();
  const std::size_t height = next_token();
  const std::size_t maxval = next_token();
  if (pos >= bytes.size() || !std::isspace(static_cast<unsigned char>(bytes[pos]))) {
    throw FormatError(path.string() + ": malformed PGM header");
  }
  ++pos;
  if (maxval != 65535) {
    throw UnsupportedDepthError(path.string() + ": unsupported PGM depth, maxval " +
                                std::to_string(maxval) + " (only 65535 is accepted)");
  }
  if (width == 0 || height == 0) throw FormatError(path.string() + ": empty PGM image");
  const std::size_t expected = width * height * 2;
  if (bytes.size() - pos < expected) {
    throw FormatError(path.string() + ": truncated PGM raster, expected " + std::to_string(expected) +
                      " bytes, found " + std::to_string(bytes.size() - pos));
  }
  MosaicImage out(height, width);
  auto data = out.data();
  for (std::size_t i = 0; i < data.size(); ++i) {
    const auto hi = static_cast<unsigned char>(bytes[pos + 2 * i]);
    const auto lo = static_cast<unsigned char>(bytes[pos + 2 * i + 1]);
    data[i] = static_cast<double>((hi << 8) | lo) / 65535.0;
  }
  return out;
}

void write_pgm8(const RealMap& map, const fs::path& path) {
  double peak = 0.0;
  for (double x : map.data()) peak = std::max(peak, x);
  std::string out = "P5\n" + std::to_string(map.width()) + " " + std::to_string(map.height()) + "\n255\n";
  for (double x : map.data()) {
    const double scaled = peak > 0.0 ? std::clamp(x / peak, 0.0, 1.0) * 255.0 : 0.0;
    out.push_back(static_cast<char>(static_cast<unsigned char>(std::lround(scaled))));
  }
  write_file_atomic(path, out);
}

SfaPattern parse_pattern_spec(const std::string& spec) {
  static const std::regex square(R"(^(\d+)x(\d+)$)");
  std::smatch m;
  if (std::regex_match(spec, m, square)) {
    if (m[1] != m[2]) throw ValidationError("pattern spec \"" + spec + "\" must be square (NxN)");
    const auto period = static_cast<std::size_t>(std::stoul(m[1]));
    if (period == 0) throw ValidationError("pattern period must be at least 1");
    return SfaPattern::row_major(period);
  }
  const fs::path file(spec);
  if (!fs::exists(file)) {
    throw IoError("pattern spec \"" + spec + "\" is neither NxN nor an existing JSON file");
  }
  return pattern_from_json(parse_json(read_file(file), file), file);
}

}  // namespace specmosaic
