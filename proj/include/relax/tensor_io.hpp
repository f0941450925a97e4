#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "relax/tensor.hpp"

namespace relax {

// RLT layout: "RLT1" | u8 rank | rank x u32 LE dims | product(dims) x f32 LE, row-major.
inline constexpr char kRltMagic[4] = {'R', 'L', 'T', '1'};

constexpr std::size_t rlt_header_size(std::size_t rank) noexcept { return 4 + 1 + 4 * rank; }

std::vector<std::uint8_t> encode_tensor(const Tensor& t);
Tensor decode_tensor(std::span<const std::uint8_t> bytes);

Tensor read_tensor(const std::filesystem::path& path);
void write_tensor(const Tensor& t, const std::filesystem::path& path);

// Binary PGM (P5, maxval 255); gray value is the region ID.
LabelMap decode_labelmap(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> encode_labelmap(const LabelMap& labels);

LabelMap read_labelmap(const std::filesystem::path& path);
void write_labelmap(const LabelMap& labels, const std::filesystem::path& path);

std::vector<std::uint8_t> read_file(const std::filesystem::path& path);
void write_file(std::span<const std::uint8_t> bytes, const std::filesystem::path& path);

}  // namespace relax
