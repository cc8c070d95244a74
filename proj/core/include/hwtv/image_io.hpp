#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "hwtv/image.hpp"

namespace hwtv {

// pgm8: binary PGM "P5" with maxval 255, samples mapped to v/255.
// raw_f32: magic "TVF1", u32 LE width, u32 LE height, then width*height
// little-endian IEEE-754 float samples in row-major order.
enum class ImageFormat { Pgm8, RawF32 };

std::optional<ImageFormat> parse_format(std::string_view name);
std::string_view format_name(ImageFormat format);

// Guesses the format from the leading magic bytes; nullopt if neither matches.
std::optional<ImageFormat> sniff_format(std::span<const unsigned char> bytes);

// Decoders for in-memory file contents. Throw FormatError with the failing
// byte offset.
ImageBuffer decode_pgm8(std::span<const unsigned char> bytes);
ImageBuffer decode_raw_f32(std::span<const unsigned char> bytes);

// Encoders. pgm8 clamps to [0,1] and quantizes round(v*255), halves rounding
// up. Both reject non-finite samples with InvalidArgument.
std::vector<unsigned char> encode_pgm8(const ImageBuffer& img);
std::vector<unsigned char> encode_raw_f32(const ImageBuffer& img);

ImageBuffer read_image(const std::filesystem::path& path, ImageFormat format);
// Reads a file whose format is determined by sniff_format.
ImageBuffer read_image(const std::filesystem::path& path);
void write_image(const ImageBuffer& img, const std::filesystem::path& path, ImageFormat format);

}  // namespace hwtv
