#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "xvc/core.hpp"

namespace xvc {

/// Binary PPM (P6, maxval 255) codec — the zero-dependency raster baseline.
DenseFrame read_ppm(const std::filesystem::path& path);
void write_ppm(const DenseFrame& frame, const std::filesystem::path& path);

/// Reads every file in `dir` whose name matches `pattern` ('*' wildcards),
/// in lexicographic order. All frames must share dimensions; errors name
/// the offending file.
std::vector<DenseFrame> read_image_sequence(const std::filesystem::path& dir,
                                            std::string_view pattern = "*.ppm");

/// Writes frames as <prefix><index %06d>.ppm under dir (created if needed).
void write_image_sequence(const std::vector<DenseFrame>& frames,
                          const std::filesystem::path& dir, std::string_view prefix = "frame_");

// Sparse container ("XVC1"), little-endian throughout:
//   magic "XVC1" | version u16 | width u16 | height u16 | frame_count u32 |
//   fraction f64 | seed u64
// then per frame: sample_count u32, then per sample x u16, y u16, r,g,b u8,
// sorted by (y, x). The sort makes the encoding canonical: encode(decode(b))
// is byte-identical.

inline constexpr std::uint16_t kSparseContainerVersion = 1;

std::vector<std::uint8_t> encode_sparse(const SparseVideo& video);
SparseVideo decode_sparse(const std::vector<std::uint8_t>& bytes);

/// encode_sparse to a file; returns bytes written.
std::uint64_t write_sparse(const SparseVideo& video, const std::filesystem::path& path);
SparseVideo read_sparse(const std::filesystem::path& path);

}  // namespace xvc
