#include "hwtv/image_io.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>
#include <limits>
#include <string>

#include "hwtv/error.hpp"

namespace hwtv {

namespace {

// Upper bound on either side; keeps width*height*4 well inside size_t and
// rejects garbage headers before attempting a huge allocation.
constexpr std::uint64_t kMaxSide = 1u << 20;
constexpr std::uint64_t kMaxPixels = std::uint64_t{1} << 30;

constexpr char kTvfMagic[4] = {'T', 'V', 'F', '1'};

using Kind = FormatError::Kind;

class PgmHeaderReader {
 public:
  PgmHeaderReader(std::span<const unsigned char> bytes, std::size_t start)
      : bytes_(bytes), pos_(start) {}

  std::size_t pos() const { return pos_; }

  void skip_whitespace_and_comments() {
    while (pos_ < bytes_.size()) {
      const unsigned char c = bytes_[pos_];
      if (c == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else if (std::isspace(c)) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  std::uint64_t read_uint(const char* field) {
    skip_whitespace_and_comments();
    const std::size_t start = pos_;
    if (pos_ >= bytes_.size()) {
      throw FormatError(Kind::MalformedHeader, pos_, std::string("PGM header ends before ") + field);
    }
    if (!std::isdigit(bytes_[pos_])) {
      throw FormatError(Kind::MalformedHeader, pos_, std::string("PGM ") + field + " is not a number");
    }
    std::uint64_t value = 0;
    while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
      value = value * 10 + (bytes_[pos_] - '0');
      if (value > kMaxPixels) {
        throw FormatError(Kind::DimensionOverflow, start, std::string("PGM ") + field + " too large");
      }
      ++pos_;
    }
    return value;
  }

 private:
  std::span<const unsigned char> bytes_;
  std::size_t pos_;
};

void check_dimensions(std::uint64_t width, std::uint64_t height, std::size_t offset) {
  if (width == 0 || height == 0) {
    throw FormatError(Kind::MalformedHeader, offset, "image dimensions must be positive");
  }
  if (width > kMaxSide || height > kMaxSide || width * height > kMaxPixels) {
    throw FormatError(Kind::DimensionOverflow, offset,
                      "image dimensions " + std::to_string(width) + "x" +
                          std::to_string(height) + " exceed supported size");
  }
}

std::uint32_t load_u32_le(const unsigned char* p) {
  return std::uint32_t{p[0]} | (std::uint32_t{p[1]} << 8) | (std::uint32_t{p[2]} << 16) |
         (std::uint32_t{p[3]} << 24);
}

void store_u32_le(std::uint32_t v, std::vector<unsigned char>& out) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<unsigned char>((v >> (8 * i)) & 0xff));
}

std::vector<unsigned char> slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string() + " for reading");
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("error reading " + path.string());
  return bytes;
}

}  // namespace

std::optional<ImageFormat> parse_format(std::string_view name) {
  if (name == "pgm8" || name == "pgm") return ImageFormat::Pgm8;
  if (name == "raw-f32" || name == "raw_f32" || name == "tvf") return ImageFormat::RawF32;
  return std::nullopt;
}

std::string_view format_name(ImageFormat format) {
  return format == ImageFormat::Pgm8 ? "pgm8" : "raw-f32";
}

std::optional<ImageFormat> sniff_format(std::span<const unsigned char> bytes) {
  if (bytes.size() >= 2 && bytes[0] == 'P' && bytes[1] == '5') return ImageFormat::Pgm8;
  if (bytes.size() >= 4 && std::memcmp(bytes.data(), kTvfMagic, 4) == 0) {
    return ImageFormat::RawF32;
  }
  return std::nullopt;
}

ImageBuffer decode_pgm8(std::span<const unsigned char> bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P' || bytes[1] != '5') {
    throw FormatError(Kind::MalformedHeader, 0, "missing PGM magic \"P5\"");
  }
  PgmHeaderReader reader(bytes, 2);
  const std::uint64_t width = reader.read_uint("width");
  const std::size_t dims_offset = reader.pos();
  const std::uint64_t height = reader.read_uint("height");
  const std::uint64_t maxval = reader.read_uint("maxval");
  std::size_t pos = reader.pos();
  if (maxval != 255) {
    throw FormatError(Kind::MalformedHeader, pos, "only maxval 255 is supported, got " +
                                                      std::to_string(maxval));
  }
  if (pos >= bytes.size() || !std::isspace(bytes[pos])) {
    throw FormatError(Kind::MalformedHeader, pos, "expected single whitespace after maxval");
  }
  ++pos;
  check_dimensions(width, height, dims_offset);

  const std::size_t count = static_cast<std::size_t>(width * height);
  if (bytes.size() - pos < count) {
    throw FormatError(Kind::TruncatedPayload, bytes.size(),
                      "PGM payload has " + std::to_string(bytes.size() - pos) +
                          " bytes, expected " + std::to_string(count));
  }
  std::vector<double> data(count);
  for (std::size_t i = 0; i < count; ++i) data[i] = bytes[pos + i] / 255.0;
  return ImageBuffer(width, height, std::move(data));
}

ImageBuffer decode_raw_f32(std::span<const unsigned char> bytes) {
  if (bytes.size() < 4 || std::memcmp(bytes.data(), kTvfMagic, 4) != 0) {
    throw FormatError(Kind::MalformedHeader, 0, "missing raw-f32 magic \"TVF1\"");
  }
  if (bytes.size() < 12) {
    throw FormatError(Kind::MalformedHeader, bytes.size(), "raw-f32 header is truncated");
  }
  const std::uint64_t width = load_u32_le(bytes.data() + 4);
  const std::uint64_t height = load_u32_le(bytes.data() + 8);
  check_dimensions(width, height, 4);

  const std::size_t count = static_cast<std::size_t>(width * height);
  const std::size_t payload = bytes.size() - 12;
  if (payload < count * 4) {
    throw FormatError(Kind::TruncatedPayload, bytes.size(),
                      "raw-f32 payload has " + std::to_string(payload) + " bytes, expected " +
                          std::to_string(count * 4));
  }
  std::vector<double> data(count);
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t offset = 12 + 4 * i;
    const float f = std::bit_cast<float>(load_u32_le(bytes.data() + offset));
    if (!std::isfinite(f)) {
      throw FormatError(Kind::InvalidSample, offset, "non-finite sample");
    }
    data[i] = f;
  }
  return ImageBuffer(width, height, std::move(data));
}

std::vector<unsigned char> encode_pgm8(const ImageBuffer& img) {
  img.require_finite("pgm8 export");
  const std::string header =
      "P5\n" + std::to_string(img.width()) + " " + std::to_string(img.height()) + "\n255\n";
  std::vector<unsigned char> out(header.begin(), header.end());
  out.reserve(out.size() + img.size());
  for (double v : img) {
    const double clamped = std::clamp(v, 0.0, 1.0);
    out.push_back(static_cast<unsigned char>(std::floor(clamped * 255.0 + 0.5)));
  }
  return out;
}

std::vector<unsigned char> encode_raw_f32(const ImageBuffer& img) {
  img.require_finite("raw-f32 export");
  if (img.width() > std::numeric_limits<std::uint32_t>::max() ||
      img.height() > std::numeric_limits<std::uint32_t>::max()) {
    throw InvalidArgument("image too large for raw-f32");
  }
  std::vector<unsigned char> out(kTvfMagic, kTvfMagic + 4);
  out.reserve(12 + 4 * img.size());
  store_u32_le(static_cast<std::uint32_t>(img.width()), out);
  store_u32_le(static_cast<std::uint32_t>(img.height()), out);
  for (double v : img) store_u32_le(std::bit_cast<std::uint32_t>(static_cast<float>(v)), out);
  return out;
}

ImageBuffer read_image(const std::filesystem::path& path, ImageFormat format) {
  const auto bytes = slurp(path);
  return format == ImageFormat::Pgm8 ? decode_pgm8(bytes) : decode_raw_f32(bytes);
}

ImageBuffer read_image(const std::filesystem::path& path) {
  const auto bytes = slurp(path);
  const auto format = sniff_format(bytes);
  if (!format) {
    throw FormatError(Kind::MalformedHeader, 0,
                      path.string() + ": unrecognized image format (expected P5 or TVF1)");
  }
  return *format == ImageFormat::Pgm8 ? decode_pgm8(bytes) : decode_raw_f32(bytes);
}

void write_image(const ImageBuffer& img, const std::filesystem::path& path, ImageFormat format) {
  const auto bytes = format == ImageFormat::Pgm8 ? encode_pgm8(img) : encode_raw_f32(img);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("error writing " + path.string());
}

}  // namespace hwtv
