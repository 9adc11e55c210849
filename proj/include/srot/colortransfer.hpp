#pragma once

// Optimal-transport color transfer: quantize both images with k-means, move
// the source palette by the barycentric projection of a transport plan, and
// repaint the source pixels with the moved palette.

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <utility>
#include <vector>

#include "srot/core.hpp"

namespace srot {

using Color = std::array<double, 3>;  // RGB in [0,1]

struct RGBImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;  // row-major RGB triples

  RGBImage() = default;
  RGBImage(int w, int h);

  std::size_t pixel_count() const { return static_cast<std::size_t>(width) * static_cast<std::size_t>(height); }
  Color color(std::size_t p) const;
  void set(std::size_t p, std::uint8_t r, std::uint8_t g, std::uint8_t b);
  bool operator==(const RGBImage&) const = default;
};

/// Binary PPM (P6, maxval 255). Comments are accepted between header tokens
/// up to maxval; exactly one whitespace byte must follow maxval.
RGBImage read_ppm(std::istream& in);
RGBImage read_ppm(const std::filesystem::path& path);
void write_ppm(std::ostream& out, const RGBImage& image);
void write_ppm(const std::filesystem::path& path, const RGBImage& image);

struct QuantizedImage {
  std::vector<Color> centroids;
  std::vector<int> assignment;  // per pixel
  Vector histogram;             // assignment counts / pixel count
  int width = 0;
  int height = 0;
  bool reduced_k = false;  // requested k exceeded the number of distinct colors
};

/// Lloyd's k-means with k-means++ seeding on the image's distinct colors
/// (weighted by multiplicity). Empty clusters are re-seeded at the point
/// farthest from its centroid. Deterministic in (image, k, seed).
QuantizedImage kmeans_quantize(const RGBImage& image, int k, std::uint64_t seed, int max_iterations = 100);

/// Sum over pixels of the squared distance to the assigned centroid.
double distortion(const RGBImage& image, const QuantizedImage& q);

/// C_ij = ||x_i - y_j||_2 in RGB.
Matrix build_cost(const std::vector<Color>& source, const std::vector<Color>& reference);
Matrix build_cost(const QuantizedImage& source, const QuantizedImage& reference);

struct Projection {
  std::vector<Color> centroids;
  std::vector<bool> starved;  // row of T had zero mass; original centroid kept
};

/// x_i' = sum_j T_ij y_j / sum_j T_ij, clamped to [0,1]^3.
Projection barycentric_project(const Matrix& plan, const std::vector<Color>& reference,
                               const std::vector<Color>& source);

/// Repaints every pixel with its cluster's new color, 8-bit round-half-up.
RGBImage recolor(const QuantizedImage& source, const std::vector<Color>& centroids);

std::uint8_t to_byte(double channel);

struct SyntheticPair {
  RGBImage source;
  RGBImage reference;
  std::vector<Color> source_colors;     // in histogram order (0.1, 0.3, 0.6)
  std::vector<Color> reference_colors;  // in histogram order (0.6, 0.3, 0.1)
};

/// Two 3-color images whose exact quantization has histograms
/// (0.1, 0.3, 0.6) and (0.6, 0.3, 0.1).
SyntheticPair synth_three_color();

}  // namespace srot
