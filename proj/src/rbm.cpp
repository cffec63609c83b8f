#include "patternbench/rbm.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>

#include "patternbench/errors.hpp"

namespace patternbench {

namespace {

constexpr char kMagic[4] = {'R', 'B', 'M', '1'};

void put_u32_le(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int b = 0; b < 4; ++b) out.push_back(static_cast<std::uint8_t>((v >> (8 * b)) & 0xffu));
}

std::uint32_t get_u32_le(std::span<const std::uint8_t> in, std::size_t pos) {
  std::uint32_t v = 0;
  for (int b = 0; b < 4; ++b) v |= static_cast<std::uint32_t>(in[pos + b]) << (8 * b);
  return v;
}

std::size_t packed_row_bytes(std::size_t n) { return (n + 7) / 8; }

}  // namespace

RbmEncoding default_encoding(MatrixKind kind) {
  return kind == MatrixKind::Binary ? RbmEncoding::BitPacked : RbmEncoding::Float32;
}

std::vector<std::uint8_t> encode_rbm(const Matrix& m, RbmEncoding encoding) {
  const std::size_t n = m.size();
  if (n > 0xffffffffu) throw DimensionError("matrix too large for the .rbm format");
  if (encoding == RbmEncoding::BitPacked && !m.is_binary()) {
    throw KindError("bit-packed encoding requires a binary matrix");
  }
  std::vector<std::uint8_t> out;
  out.insert(out.end(), std::begin(kMagic), std::end(kMagic));
  put_u32_le(out, static_cast<std::uint32_t>(n));
  out.push_back(static_cast<std::uint8_t>(m.kind()));
  out.push_back(static_cast<std::uint8_t>(encoding));

  if (encoding == RbmEncoding::Float32) {
    out.reserve(out.size() + 4 * n * n);
    for (float v : m.values()) put_u32_le(out, std::bit_cast<std::uint32_t>(v));
  } else {
    const std::size_t row_bytes = packed_row_bytes(n);
    out.reserve(out.size() + row_bytes * n);
    for (std::size_t i = 0; i < n; ++i) {
      const auto row = m.row(i);
      for (std::size_t byte = 0; byte < row_bytes; ++byte) {
        std::uint8_t packed = 0;
        for (std::size_t bit = 0; bit < 8; ++bit) {
          const std::size_t j = byte * 8 + bit;
          if (j < n && row[j] != 0.0f) packed |= static_cast<std::uint8_t>(0x80u >> bit);
        }
        out.push_back(packed);
      }
    }
  }
  return out;
}

std::vector<std::uint8_t> encode_rbm(const Matrix& m) {
  return encode_rbm(m, default_encoding(m.kind()));
}

Matrix decode_rbm(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kRbmHeaderSize) {
    throw ParseError("truncated .rbm header", bytes.size());
  }
  for (std::size_t k = 0; k < 4; ++k) {
    if (bytes[k] != static_cast<std::uint8_t>(kMagic[k])) {
      throw ParseError("bad .rbm magic", k);
    }
  }
  const std::size_t n = get_u32_le(bytes, 4);
  if (n > (std::size_t{1} << 16)) {
    throw ParseError("matrix size " + std::to_string(n) + " exceeds the supported maximum", 4);
  }
  const std::uint8_t kind_byte = bytes[8];
  const std::uint8_t enc_byte = bytes[9];
  if (kind_byte > 1) throw ParseError("unknown matrix kind " + std::to_string(kind_byte), 8);
  if (enc_byte > 1) throw ParseError("unknown encoding " + std::to_string(enc_byte), 9);
  const auto kind = static_cast<MatrixKind>(kind_byte);
  const auto encoding = static_cast<RbmEncoding>(enc_byte);
  if (encoding == RbmEncoding::BitPacked && kind != MatrixKind::Binary) {
    throw ParseError("bit-packed encoding declared for a continuous matrix", 9);
  }

  const std::size_t payload = encoding == RbmEncoding::Float32 ? 4 * n * n
                                                               : packed_row_bytes(n) * n;
  if (bytes.size() < kRbmHeaderSize + payload) {
    throw ParseError("truncated .rbm payload: expected " + std::to_string(payload) + " bytes",
                     bytes.size());
  }
  if (bytes.size() > kRbmHeaderSize + payload) {
    throw ParseError("trailing bytes after .rbm payload", kRbmHeaderSize + payload);
  }

  std::vector<float> values(n * n);
  if (encoding == RbmEncoding::Float32) {
    for (std::size_t k = 0; k < n * n; ++k) {
      const std::size_t pos = kRbmHeaderSize + 4 * k;
      const float v = std::bit_cast<float>(get_u32_le(bytes, pos));
      const bool ok = kind == MatrixKind::Binary ? (v == 0.0f || v == 1.0f)
                                                 : (v >= 0.0f && v <= 1.0f);
      if (!ok) throw ParseError("entry value " + std::to_string(v) + " invalid for kind", pos);
      values[k] = v;
    }
  } else {
    const std::size_t row_bytes = packed_row_bytes(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const std::uint8_t byte = bytes[kRbmHeaderSize + i * row_bytes + j / 8];
        values[i * n + j] = (byte & (0x80u >> (j % 8))) ? 1.0f : 0.0f;
      }
    }
  }

  if (auto bad = find_asymmetry(values, n)) {
    const std::size_t cell = bad->row * n + bad->col;
    const std::size_t offset = encoding == RbmEncoding::Float32
                                   ? kRbmHeaderSize + 4 * cell
                                   : kRbmHeaderSize + bad->row * packed_row_bytes(n) + bad->col / 8;
    throw ParseError("matrix is not symmetric at (" + std::to_string(bad->row) + "," +
                         std::to_string(bad->col) + ")",
                     offset);
  }
  return Matrix::from_upper(n, kind, values);
}

void write_rbm(const std::filesystem::path& path, const Matrix& m, RbmEncoding encoding) {
  const auto bytes = encode_rbm(m, encoding);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

void write_rbm(const std::filesystem::path& path, const Matrix& m) {
  write_rbm(path, m, default_encoding(m.kind()));
}

Matrix read_rbm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  try {
    return decode_rbm(bytes);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.detail(), e.offset());
  }
}

}  // namespace patternbench
