#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "patternbench/matrix.hpp"

namespace patternbench {

/// On-disk layout of a .rbm file:
///   "RBM1" | u32 n (little-endian) | u8 kind | u8 encoding | payload
/// kind: 0 binary, 1 continuous. encoding: 0 float32 row-major little-endian,
/// 1 bit-packed rows (MSB first, each row padded to a byte boundary).
enum class RbmEncoding : std::uint8_t { Float32 = 0, BitPacked = 1 };

inline constexpr std::size_t kRbmHeaderSize = 10;

/// Bit-packed is the default for binary matrices, float32 for continuous.
RbmEncoding default_encoding(MatrixKind kind);

std::vector<std::uint8_t> encode_rbm(const Matrix& m, RbmEncoding encoding);
std::vector<std::uint8_t> encode_rbm(const Matrix& m);

/// Throws ParseError (with byte offset) on malformed input.
Matrix decode_rbm(std::span<const std::uint8_t> bytes);

void write_rbm(const std::filesystem::path& path, const Matrix& m, RbmEncoding encoding);
void write_rbm(const std::filesystem::path& path, const Matrix& m);
Matrix read_rbm(const std::filesystem::path& path);

}  // namespace patternbench
