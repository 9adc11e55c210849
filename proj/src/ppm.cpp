#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include "srot/colortransfer.hpp"
#include "srot/error.hpp"

namespace srot {

namespace {

// Skips whitespace and '#' comments, then reads an unsigned decimal token.
long read_header_number(std::istream& in, const char* what) {
  int c = in.get();
  while (true) {
    if (c == '#') {
      while (c != '\n' && c != '\r' && c != EOF) c = in.get();
    } else if (c != EOF && std::isspace(c)) {
      c = in.get();
    } else {
      break;
    }
  }
  if (c == EOF || !std::isdigit(c)) throw InputError(std::string("ppm: expected ") + what);
  long value = 0;
  while (c != EOF && std::isdigit(c)) {
    value = value * 10 + (c - '0');
    if (value > 1'000'000) throw InputError(std::string("ppm: ") + what + " too large");
    c = in.get();
  }
  if (c != EOF) in.unget();
  return value;
}

}  // namespace

RGBImage::RGBImage(int w, int h) : width(w), height(h), pixels(3 * static_cast<std::size_t>(w) * h, 0) {
  if (w <= 0 || h <= 0) throw ConfigError("RGBImage: dimensions must be positive");
}

Color RGBImage::color(std::size_t p) const {
  return {pixels[3 * p] / 255.0, pixels[3 * p + 1] / 255.0, pixels[3 * p + 2] / 255.0};
}

void RGBImage::set(std::size_t p, std::uint8_t r, std::uint8_t g, std::uint8_t b) {
  pixels[3 * p] = r;
  pixels[3 * p + 1] = g;
  pixels[3 * p + 2] = b;
}

RGBImage read_ppm(std::istream& in) {
  char magic[2] = {0, 0};
  if (!in.read(magic, 2) || magic[0] != 'P' || magic[1] != '6') throw InputError("ppm: not a binary P6 file");
  const int next = in.peek();
  if (next == EOF || !(std::isspace(next) || next == '#')) throw InputError("ppm: malformed magic number");
  const long width = read_header_number(in, "width");
  const long height = read_header_number(in, "height");
  const long maxval = read_header_number(in, "maxval");
  if (width <= 0 || height <= 0) throw InputError("ppm: dimensions must be positive");
  if (maxval != 255) throw InputError("ppm: only maxval 255 is supported");
  const int sep = in.get();
  if (sep == EOF || !std::isspace(sep)) throw InputError("ppm: maxval must be followed by one whitespace byte");

  RGBImage image(static_cast<int>(width), static_cast<int>(height));
  if (!in.read(reinterpret_cast<char*>(image.pixels.data()), static_cast<std::streamsize>(image.pixels.size()))) {
    throw InputError("ppm: truncated pixel data");
  }
  return image;
}

RGBImage read_ppm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("ppm: cannot open " + path.string());
  return read_ppm(in);
}

void write_ppm(std::ostream& out, const RGBImage& image) {
  if (image.pixels.size() != 3 * image.pixel_count()) throw ConfigError("write_ppm: buffer size mismatch");
  out << "P6\n" << image.width << ' ' << image.height << "\n255\n";
  out.write(reinterpret_cast<const char*>(image.pixels.data()), static_cast<std::streamsize>(image.pixels.size()));
}

void write_ppm(const std::filesystem::path& path, const RGBImage& image) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("ppm: cannot write " + path.string());
  write_ppm(out, image);
  if (!out) throw InputError("ppm: write failed for " + path.string());
}

}  // namespace srot
