#include "srot/colortransfer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "srot/error.hpp"
#include "srot/rng.hpp"

namespace srot {

namespace {

double squared_distance(const Color& x, const Color& y) {
  const double d0 = x[0] - y[0];
  const double d1 = x[1] - y[1];
  const double d2 = x[2] - y[2];
  return d0 * d0 + d1 * d1 + d2 * d2;
}

std::uint32_t pack(const std::uint8_t* p) {
  return (static_cast<std::uint32_t>(p[0]) << 16) | (static_cast<std::uint32_t>(p[1]) << 8) | p[2];
}

Color unpack(std::uint32_t key) {
  return {static_cast<double>((key >> 16) & 0xff) / 255.0, static_cast<double>((key >> 8) & 0xff) / 255.0,
          static_cast<double>(key & 0xff) / 255.0};
}

// Index drawn with probability weights[k] / sum(weights).
std::size_t weighted_draw(const std::vector<double>& weights, Rng& rng) {
  double total = 0.0;
  for (double w : weights) total += w;
  const double target = rng.uniform() * total;
  double running = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t k = 0; k < weights.size(); ++k) {
    if (weights[k] <= 0.0) continue;
    running += weights[k];
    last_positive = k;
    if (target < running) return k;
  }
  return last_positive;
}

int nearest(const Color& x, const std::vector<Color>& centroids) {
  int best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < centroids.size(); ++c) {
    const double d = squared_distance(x, centroids[c]);
    if (d < best_d) {
      best_d = d;
      best = static_cast<int>(c);
    }
  }
  return best;
}

}  // namespace

QuantizedImage kmeans_quantize(const RGBImage& image, int k, std::uint64_t seed, int max_iterations) {
  if (k < 1) throw ConfigError("kmeans_quantize: k must be at least 1");
  if (image.pixel_count() == 0) throw ConfigError("kmeans_quantize: empty image");
  if (max_iterations < 1) throw ConfigError("kmeans_quantize: max_iterations must be at least 1");

  // Work on distinct colors weighted by multiplicity: identical to Lloyd on
  // the raw pixels, much cheaper on real images.
  std::map<std::uint32_t, double> counts;
  for (std::size_t p = 0; p < image.pixel_count(); ++p) counts[pack(&image.pixels[3 * p])] += 1.0;
  std::vector<Color> points;
  std::vector<double> weights;
  std::map<std::uint32_t, std::size_t> point_of;
  for (const auto& [key, count] : counts) {
    point_of[key] = points.size();
    points.push_back(unpack(key));
    weights.push_back(count);
  }

  QuantizedImage q;
  q.width = image.width;
  q.height = image.height;
  if (static_cast<std::size_t>(k) > points.size()) {
    k = static_cast<int>(points.size());
    q.reduced_k = true;
  }

  // k-means++ seeding.
  Rng rng(seed);
  std::vector<Color> centroids;
  centroids.push_back(points[weighted_draw(weights, rng)]);
  std::vector<double> closest(points.size());
  for (std::size_t p = 0; p < points.size(); ++p) closest[p] = squared_distance(points[p], centroids[0]);
  while (static_cast<int>(centroids.size()) < k) {
    std::vector<double> score(points.size());
    for (std::size_t p = 0; p < points.size(); ++p) score[p] = weights[p] * closest[p];
    const Color chosen = points[weighted_draw(score, rng)];
    centroids.push_back(chosen);
    for (std::size_t p = 0; p < points.size(); ++p) {
      closest[p] = std::min(closest[p], squared_distance(points[p], chosen));
    }
  }

  std::vector<int> label(points.size(), -1);
  for (int iter = 0; iter < max_iterations; ++iter) {
    bool changed = false;
    for (std::size_t p = 0; p < points.size(); ++p) {
      const int c = nearest(points[p], centroids);
      if (c != label[p]) {
        label[p] = c;
        changed = true;
      }
    }
    if (!changed) break;

    std::vector<Color> sums(static_cast<std::size_t>(k), Color{0.0, 0.0, 0.0});
    std::vector<double> mass(static_cast<std::size_t>(k), 0.0);
    for (std::size_t p = 0; p < points.size(); ++p) {
      auto& s = sums[static_cast<std::size_t>(label[p])];
      for (int ch = 0; ch < 3; ++ch) s[ch] += weights[p] * points[p][ch];
      mass[static_cast<std::size_t>(label[p])] += weights[p];
    }
    for (int c = 0; c < k; ++c) {
      const auto cu = static_cast<std::size_t>(c);
      if (mass[cu] > 0.0) {
        for (int ch = 0; ch < 3; ++ch) centroids[cu][ch] = sums[cu][ch] / mass[cu];
        continue;
      }
      // Empty cluster: move it onto the point farthest from its centroid.
      std::size_t far = 0;
      double far_d = -1.0;
      for (std::size_t p = 0; p < points.size(); ++p) {
        const double d = squared_distance(points[p], centroids[static_cast<std::size_t>(label[p])]);
        if (d > far_d) {
          far_d = d;
          far = p;
        }
      }
      centroids[cu] = points[far];
      label[far] = c;
    }
  }

  // Final centroids are the means of their clusters.
  std::vector<Color> sums(static_cast<std::size_t>(k), Color{0.0, 0.0, 0.0});
  std::vector<double> mass(static_cast<std::size_t>(k), 0.0);
  for (std::size_t p = 0; p < points.size(); ++p) {
    auto& s = sums[static_cast<std::size_t>(label[p])];
    for (int ch = 0; ch < 3; ++ch) s[ch] += weights[p] * points[p][ch];
    mass[static_cast<std::size_t>(label[p])] += weights[p];
  }
  for (int c = 0; c < k; ++c) {
    const auto cu = static_cast<std::size_t>(c);
    if (mass[cu] > 0.0) {
      for (int ch = 0; ch < 3; ++ch) centroids[cu][ch] = std::clamp(sums[cu][ch] / mass[cu], 0.0, 1.0);
    }
  }

  q.centroids = centroids;
  q.assignment.resize(image.pixel_count());
  q.histogram = Vector::Zero(k);
  for (std::size_t p = 0; p < image.pixel_count(); ++p) {
    const int c = label[point_of.at(pack(&image.pixels[3 * p]))];
    q.assignment[p] = c;
    q.histogram[c] += 1.0;
  }
  q.histogram /= static_cast<double>(image.pixel_count());
  return q;
}

double distortion(const RGBImage& image, const QuantizedImage& q) {
  double total = 0.0;
  for (std::size_t p = 0; p < image.pixel_count(); ++p) {
    total += squared_distance(image.color(p), q.centroids[static_cast<std::size_t>(q.assignment[p])]);
  }
  return total;
}

Matrix build_cost(const std::vector<Color>& source, const std::vector<Color>& reference) {
  Matrix c(static_cast<Index>(source.size()), static_cast<Index>(reference.size()));
  for (std::size_t i = 0; i < source.size(); ++i) {
    for (std::size_t j = 0; j < reference.size(); ++j) {
      c(static_cast<Index>(i), static_cast<Index>(j)) = std::sqrt(squared_distance(source[i], reference[j]));
    }
  }
  return c;
}

Matrix build_cost(const QuantizedImage& source, const QuantizedImage& reference) {
  return build_cost(source.centroids, reference.centroids);
}

Projection barycentric_project(const Matrix& plan, const std::vector<Color>& reference,
                               const std::vector<Color>& source) {
  if (plan.cols() != static_cast<Index>(reference.size()) || plan.rows() != static_cast<Index>(source.size())) {
    throw ConfigError("barycentric_project: plan shape does not match the palettes");
  }
  Projection out;
  out.centroids.resize(source.size());
  out.starved.assign(source.size(), false);
  for (Index i = 0; i < plan.rows(); ++i) {
    const auto iu = static_cast<std::size_t>(i);
    const double row_mass = plan.row(i).sum();
    if (!(row_mass > 0.0)) {
      out.centroids[iu] = source[iu];
      out.starved[iu] = true;
      continue;
    }
    Color x{0.0, 0.0, 0.0};
    for (Index j = 0; j < plan.cols(); ++j) {
      for (int ch = 0; ch < 3; ++ch) x[ch] += plan(i, j) * reference[static_cast<std::size_t>(j)][ch];
    }
    for (int ch = 0; ch < 3; ++ch) x[ch] = std::clamp(x[ch] / row_mass, 0.0, 1.0);
    out.centroids[iu] = x;
  }
  return out;
}

std::uint8_t to_byte(double channel) {
  const double scaled = std::floor(std::clamp(channel, 0.0, 1.0) * 255.0 + 0.5);
  return static_cast<std::uint8_t>(std::min(scaled, 255.0));
}

RGBImage recolor(const QuantizedImage& source, const std::vector<Color>& centroids) {
  if (centroids.size() != source.centroids.size()) throw ConfigError("recolor: centroid count mismatch");
  RGBImage out(source.width, source.height);
  for (std::size_t p = 0; p < out.pixel_count(); ++p) {
    const Color& c = centroids[static_cast<std::size_t>(source.assignment[p])];
    out.set(p, to_byte(c[0]), to_byte(c[1]), to_byte(c[2]));
  }
  return out;
}

SyntheticPair synth_three_color() {
  using Byte3 = std::array<std::uint8_t, 3>;
  const std::array<Byte3, 3> source = {Byte3{40, 70, 160}, Byte3{70, 160, 90}, Byte3{235, 220, 130}};
  const std::array<Byte3, 3> reference = {Byte3{210, 90, 50}, Byte3{120, 75, 45}, Byte3{130, 180, 230}};
  // 20 x 10 pixels in horizontal bands of 1, 3 and 6 rows (resp. 6, 3, 1).
  auto paint = [](const std::array<Byte3, 3>& colors, const std::array<int, 3>& band_rows) {
    RGBImage img(20, 10);
    int y = 0;
    for (int band = 0; band < 3; ++band) {
      for (int r = 0; r < band_rows[static_cast<std::size_t>(band)]; ++r, ++y) {
        for (int x = 0; x < img.width; ++x) {
          const auto& c = colors[static_cast<std::size_t>(band)];
          img.set(static_cast<std::size_t>(y) * static_cast<std::size_t>(img.width) + static_cast<std::size_t>(x), c[0],
                  c[1], c[2]);
        }
      }
    }
    return img;
  };
  auto to_colors = [](const std::array<Byte3, 3>& colors) {
    std::vector<Color> out;
    for (const auto& c : colors) out.push_back({c[0] / 255.0, c[1] / 255.0, c[2] / 255.0});
    return out;
  };
  return {paint(source, {1, 3, 6}), paint(reference, {6, 3, 1}), to_colors(source), to_colors(reference)};
}

}  // namespace srot
