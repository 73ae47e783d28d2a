#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "specmosaic/types.hpp"

namespace specmosaic {

/// Optional metadata carried in a cube's JSON sidecar.
struct CubeMetadata {
  std::optional<SfaPattern> pattern;
  std::optional<std::vector<double>> wavelengths_nm;
};

struct CubeFile {
  SpectralCube cube;
  CubeMetadata metadata;
};

/// A cube file is a pair: <base>.json (sidecar) and <base>.bsq (payload of
/// little-endian float32, band-sequential, row-major within band).
/// A trailing ".json" or ".bsq" on the argument is accepted and stripped.
std::filesystem::path cube_base(const std::filesystem::path& path);
std::filesystem::path sidecar_path(const std::filesystem::path& base);
std::filesystem::path payload_path(const std::filesystem::path& base);

/// Samples are rounded to float32. Both files are written through a temporary
/// and renamed into place. Throws ValidationError on non-finite samples.
void write_cube(const SpectralCube& cube, const std::filesystem::path& path,
                const CubeMetadata& metadata = {});

/// Throws IoError if a file is missing, FormatError on a malformed sidecar or
/// a payload of the wrong length, ValidationError on non-finite samples.
CubeFile read_cube_file(const std::filesystem::path& path);
SpectralCube read_cube(const std::filesystem::path& path);

/// Mosaics are stored as single-band cube files.
void write_mosaic(const MosaicImage& mosaic, const std::filesystem::path& path,
                  const CubeMetadata& metadata = {});
MosaicImage read_mosaic(const std::filesystem::path& path);

/// Binary 16-bit PGM ("P5", maxval 65535), big-endian samples, scaled by 1/65535.
MosaicImage read_pgm16(const std::filesystem::path& path);

/// Writes an 8-bit PGM scaled so the map maximum becomes 255. An all-zero
/// (or all non-positive) map is written black.
void write_pgm8(const RealMap& map, const std::filesystem::path& path);

/// Pattern spec: "NxN" for the row-major layout, or a path to a JSON file
/// {"period": N, "band_at": [...]}.
SfaPattern parse_pattern_spec(const std::string& spec);

/// Writes bytes via a sibling temporary file and an atomic rename.
void write_file_atomic(const std::filesystem::path& path, const std::string& bytes);
std::string read_file(const std::filesystem::path& path);

}  // namespace specmosaic
