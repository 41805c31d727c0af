// SPDX-License-Identifier: MIT
#pragma once

#include "nlrta/tensor.hpp"

#include "json.hpp"

#include <cstdint>
#include <filesystem>

namespace nlrta {

/// DTEN container layout, all integers and reals little-endian:
///
///     bytes 0..3   "DTEN"
///     u32          format version (kDtenVersion)
///     u32          number of dimensions d >= 1
///     u64 x d      extents
///     f64 x N      payload, row-major, N = product of extents
inline constexpr std::uint32_t kDtenVersion = 1;

/// Throws IoError if the file cannot be written.
void save_tensor(const DenseTensor& x, const std::filesystem::path& path);

/// Throws FormatError (magic or version), DimensionOverflowError (extent
/// product), TruncatedPayloadError (short file), or IoError (cannot open).
[[nodiscard]] DenseTensor load_tensor(const std::filesystem::path& path);

/// `<path>.json`, the provenance sidecar of a DTEN file.
[[nodiscard]] std::filesystem::path sidecar_path(const std::filesystem::path& path);

void write_sidecar(const std::filesystem::path& path, const nlohmann::json& meta);

/// Empty object when no sidecar exists.
[[nodiscard]] nlohmann::json read_sidecar(const std::filesystem::path& path);

}  // namespace nlrta
