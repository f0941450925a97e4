#include "relax/tensor_io.hpp"

#include <bit>
#include <cctype>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>

#include "relax/errors.hpp"

namespace relax {
namespace {

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::uint32_t get_u32(const std::uint8_t* p) {
  return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

[[noreturn]] void format_error(std::size_t offset, const std::string& what) {
  throw FormatError("byte offset " + std::to_string(offset) + ": " + what);
}

// PGM header token reader; skips whitespace and '#' comments.
class PgmCursor {
 public:
  explicit PgmCursor(std::span<const std::uint8_t> b) : bytes_(b) {}

  std::size_t pos() const { return pos_; }
  void skip_magic() { pos_ = 2; }

  void skip_space() {
    while (pos_ < bytes_.size()) {
      const auto c = bytes_[pos_];
      if (c == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else if (std::isspace(c)) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  std::size_t number(const char* what) {
    skip_space();
    const std::size_t start = pos_;
    std::size_t v = 0;
    while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
      v = v * 10 + (bytes_[pos_] - '0');
      if (v > (1u << 30)) format_error(start, std::string(what) + " is too large");
      ++pos_;
    }
    if (pos_ == start) format_error(start, std::string("expected ") + what);
    return v;
  }

  // Exactly one whitespace byte separates maxval from the raster.
  void single_space() {
    if (pos_ >= bytes_.size() || !std::isspace(bytes_[pos_])) {
      format_error(pos_, "expected whitespace before raster");
    }
    ++pos_;
  }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

std::vector<std::uint8_t> encode_tensor(const Tensor& t) {
  std::vector<std::uint8_t> out;
  out.reserve(rlt_header_size(t.rank()) + 4 * t.size());
  out.insert(out.end(), std::begin(kRltMagic), std::end(kRltMagic));
  out.push_back(static_cast<std::uint8_t>(t.rank()));
  for (std::size_t d : t.shape()) {
    if (d > UINT32_MAX) throw ValidationError("dimension does not fit in u32");
    put_u32(out, static_cast<std::uint32_t>(d));
  }
  for (float v : t.data()) put_u32(out, std::bit_cast<std::uint32_t>(v));
  return out;
}

Tensor decode_tensor(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 5) format_error(bytes.size(), "truncated header");
  if (std::memcmp(bytes.data(), kRltMagic, 4) != 0) format_error(0, "bad magic, expected RLT1");
  const std::size_t rank = bytes[4];
  if (rank == 0) format_error(4, "rank must be at least 1");
  const std::size_t header = rlt_header_size(rank);
  if (bytes.size() < header) format_error(bytes.size(), "truncated shape");

  std::vector<std::size_t> shape(rank);
  std::size_t count = 1;
  for (std::size_t i = 0; i < rank; ++i) {
    const std::size_t offset = 5 + 4 * i;
    shape[i] = get_u32(bytes.data() + offset);
    if (shape[i] == 0) format_error(offset, "zero-sized dimension");
    if (count > (SIZE_MAX / 4) / shape[i]) format_error(offset, "shape overflows");
    count *= shape[i];
  }
  const std::size_t payload = bytes.size() - header;
  if (payload != 4 * count) {
    format_error(header, "payload holds " + std::to_string(payload) + " bytes, shape requires " +
                             std::to_string(4 * count));
  }

  std::vector<float> data(count);
  for (std::size_t i = 0; i < count; ++i) {
    data[i] = std::bit_cast<float>(get_u32(bytes.data() + header + 4 * i));
    if (!std::isfinite(data[i])) {
      throw ValidationError("non-finite value at byte offset " + std::to_string(header + 4 * i));
    }
  }
  return Tensor(std::move(shape), std::move(data));
}

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("read failed: " + path.string());
  return bytes;
}

void write_file(std::span<const std::uint8_t> bytes, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open for writing: " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failed: " + path.string());
}

Tensor read_tensor(const std::filesystem::path& path) {
  const auto bytes = read_file(path);
  try {
    return decode_tensor(bytes);
  } catch (const ValidationError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

void write_tensor(const Tensor& t, const std::filesystem::path& path) {
  write_file(encode_tensor(t), path);
}

LabelMap decode_labelmap(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P' || bytes[1] != '5') format_error(0, "expected P5 magic");
  PgmCursor cur(bytes);
  cur.skip_magic();
  const std::size_t w = cur.number("width");
  const std::size_t h = cur.number("height");
  cur.skip_space();
  const std::size_t maxval_pos = cur.pos();
  const std::size_t maxval = cur.number("maxval");
  if (maxval != 255) format_error(maxval_pos, "maxval must be 255, got " + std::to_string(maxval));
  if (w == 0 || h == 0) format_error(2, "dimensions must be positive");
  cur.single_space();

  const std::size_t raster = cur.pos();
  if (bytes.size() - raster < w * h) {
    format_error(bytes.size(), "truncated raster, expected " + std::to_string(w * h) + " bytes");
  }
  const auto pixels = bytes.subspan(raster, w * h);
  for (std::size_t i = 0; i < pixels.size(); ++i) {
    if (pixels[i] >= kRegionCount) {
      throw ValidationError("label " + std::to_string(pixels[i]) + " at byte offset " +
                            std::to_string(raster + i) + " is outside 0..8");
    }
  }
  return LabelMap(h, w, std::vector<std::uint8_t>(pixels.begin(), pixels.end()));
}

std::vector<std::uint8_t> encode_labelmap(const LabelMap& labels) {
  const std::string header =
      "P5\n" + std::to_string(labels.width()) + " " + std::to_string(labels.height()) + "\n255\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.insert(out.end(), labels.labels().begin(), labels.labels().end());
  return out;
}

LabelMap read_labelmap(const std::filesystem::path& path) {
  const auto bytes = read_file(path);
  try {
    return decode_labelmap(bytes);
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  } catch (const ValidationError& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

void write_labelmap(const LabelMap& labels, const std::filesystem::path& path) {
  write_file(encode_labelmap(labels), path);
}

}  // namespace relax
