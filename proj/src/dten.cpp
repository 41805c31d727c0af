// SPDX-License-Identifier: MIT
#include "nlrta/dten.hpp"

#include "nlrta/error.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <limits>

namespace nlrta {

namespace {

constexpr std::array<char, 4> kMagic{'D', 'T', 'E', 'N'};

template <typename T>
T to_little(T v) {
    if constexpr (std::endian::native == std::endian::big) {
        auto bytes = std::bit_cast<std::array<unsigned char, sizeof(T)>>(v);
        std::reverse(bytes.begin(), bytes.end());
        return std::bit_cast<T>(bytes);
    }
    return v;
}

template <typename T>
void put(std::ostream& out, T v) {
    v = to_little(v);
    out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <typename T>
T get(std::istream& in, const std::filesystem::path& path) {
    T v{};
    if (!in.read(reinterpret_cast<char*>(&v), sizeof v)) {
        throw TruncatedPayloadError("DTEN header truncated: " + path.string());
    }
    return to_little(v);
}

}  // namespace

void save_tensor(const DenseTensor& x, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open for writing: " + path.string());
    out.write(kMagic.data(), kMagic.size());
    put<std::uint32_t>(out, kDtenVersion);
    put<std::uint32_t>(out, static_cast<std::uint32_t>(x.ndims()));
    for (std::size_t e : x.shape()) put<std::uint64_t>(out, e);
    if constexpr (std::endian::native == std::endian::little) {
        out.write(reinterpret_cast<const char*>(x.data().data()),
                  static_cast<std::streamsize>(x.size() * sizeof(double)));
    } else {
        for (double v : x.data()) put<double>(out, v);
    }
    out.flush();
    if (!out) throw IoError("write failed: " + path.string());
}

DenseTensor load_tensor(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open for reading: " + path.string());
    std::array<char, 4> magic{};
    if (!in.read(magic.data(), magic.size())) throw TruncatedPayloadError("DTEN header truncated: " + path.string());
    if (magic != kMagic) throw FormatError("not a DTEN file (bad magic): " + path.string());
    const auto version = get<std::uint32_t>(in, path);
    if (version != kDtenVersion) {
        throw FormatError("unsupported DTEN version " + std::to_string(version) + ": " + path.string());
    }
    const auto d = get<std::uint32_t>(in, path);
    if (d == 0) throw FormatError("DTEN file declares zero dimensions: " + path.string());
    Shape shape(d);
    std::uint64_t count = 1;
    constexpr std::uint64_t limit = std::numeric_limits<std::size_t>::max() / sizeof(double);
    for (auto& e : shape) {
        const auto ext = get<std::uint64_t>(in, path);
        if (ext == 0) throw FormatError("DTEN file declares a zero extent: " + path.string());
        if (ext > limit / count) throw DimensionOverflowError("DTEN extents overflow: " + path.string());
        count *= ext;
        e = static_cast<std::size_t>(ext);
    }
    // Check the remaining length before allocating.
    const auto here = in.tellg();
    in.seekg(0, std::ios::end);
    const auto end = in.tellg();
    in.seekg(here);
    if (static_cast<std::uint64_t>(end - here) < count * sizeof(double)) {
        throw TruncatedPayloadError("DTEN payload truncated: " + path.string());
    }
    std::vector<double> data(static_cast<std::size_t>(count));
    if (!in.read(reinterpret_cast<char*>(data.data()), static_cast<std::streamsize>(count * sizeof(double)))) {
        throw TruncatedPayloadError("DTEN payload truncated: " + path.string());
    }
    if constexpr (std::endian::native == std::endian::big) {
        for (double& v : data) v = to_little(v);
    }
    return DenseTensor(std::move(shape), std::move(data));
}

std::filesystem::path sidecar_path(const std::filesystem::path& path) {
    std::filesystem::path p = path;
    p += ".json";
    return p;
}

void write_sidecar(const std::filesystem::path& path, const nlohmann::json& meta) {
    std::ofstream out(sidecar_path(path));
    if (!out) throw IoError("cannot open for writing: " + sidecar_path(path).string());
    out << meta.dump(2) << '\n';
    if (!out) throw IoError("write failed: " + sidecar_path(path).string());
}

nlohmann::json read_sidecar(const std::filesystem::path& path) {
    const auto p = sidecar_path(path);
    if (!std::filesystem::exists(p)) return nlohmann::json::object();
    std::ifstream in(p);
    if (!in) throw IoError("cannot open for reading: " + p.string());
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw FormatError("malformed sidecar " + p.string() + ": " + e.what());
    }
}

}  // namespace nlrta
