#include "changeset/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "changeset/rng.hpp"

namespace changeset {

Rational::Rational(long long n, long long d) : num(n), den(d) {
  if (den <= 0) throw std::domain_error("Rational: denominator must be positive");
  if (num < 0) throw std::domain_error("Rational: radius must be nonnegative");
  const long long g = std::gcd(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
}

Rational Rational::parse(const std::string& text) {
  if (const auto slash = text.find('/'); slash != std::string::npos) {
    return Rational(std::stoll(text.substr(0, slash)), std::stoll(text.substr(slash + 1)));
  }
  if (const auto dot = text.find('.'); dot != std::string::npos) {
    const std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    long long den = 1;
    for (std::size_t i = dot + 1; i < text.size(); ++i) den *= 10;
    return Rational(std::stoll(digits), den);
  }
  return Rational(std::stoll(text), 1);
}

std::string Rational::str() const {
  return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
}

PointSet make_shape(const ShapeSpec& spec, Lattice lat) {
  if (!lat.contains(spec.center.row, spec.center.col))
    throw std::domain_error("make_shape: center outside the lattice");
  const long long num = spec.radius.num, den = spec.radius.den;
  const int reach = static_cast<int>(num / den);  // farthest integer offset on an axis

  auto inside = [&](long long di, long long dj) {
    di = di < 0 ? -di : di;
    dj = dj < 0 ? -dj : dj;
    switch (spec.norm) {
      case NormOrder::L1: return (di + dj) * den <= num;
      case NormOrder::LInf: return std::max(di, dj) * den <= num;
      case NormOrder::L2: return (di * di + dj * dj) * den * den <= num * num;
    }
    return false;
  };

  std::vector<std::uint32_t> cells;
  for (int di = -reach; di <= reach; ++di) {
    for (int dj = -reach; dj <= reach; ++dj) {
      if (!inside(di, dj)) continue;
      const int i = spec.center.row + di, j = spec.center.col + dj;
      if (!lat.contains(i, j))
        throw std::domain_error("make_shape: shape reaches (" + std::to_string(i) + "," +
                                std::to_string(j) + ") outside the lattice");
      cells.push_back(static_cast<std::uint32_t>(i - 1) * lat.cols + (j - 1));
    }
  }
  if (cells.empty()) throw std::domain_error("make_shape: shape is empty");
  std::sort(cells.begin(), cells.end());
  return PointSet::from_sorted_cells(lat, std::move(cells));
}

MeanSpec MeanSpec::parse(const std::string& name) {
  if (name == "zero") return {MeanKind::Zero, 0.0};
  if (name == "alt") return {MeanKind::Alt, 0.0};
  if (name == "drift") return {MeanKind::Drift, 0.0};
  if (name == "drift_plus_alt") return {MeanKind::DriftPlusAlt, 0.0};
  if (name.rfind("const(", 0) == 0 && name.back() == ')')
    return {MeanKind::Const, std::stod(name.substr(6, name.size() - 7))};
  throw std::domain_error("MeanSpec: unknown generator '" + name +
                          "' (expected zero|alt|drift|drift_plus_alt|const(c))");
}

std::string MeanSpec::name() const {
  switch (kind) {
    case MeanKind::Zero: return "zero";
    case MeanKind::Alt: return "alt";
    case MeanKind::Drift: return "drift";
    case MeanKind::DriftPlusAlt: return "drift_plus_alt";
    case MeanKind::Const: {
      char buf[64];
      std::snprintf(buf, sizeof(buf), "const(%g)", level);
      return buf;
    }
  }
  return "zero";
}

FrameSequence generate_labeled(Lattice lat, const std::vector<std::uint16_t>& labels,
                               const MeanModel& means,
                               const std::optional<NoiseSpec>& noise, int d) {
  if (d < 1) throw std::domain_error("generate: d must be >= 1");
  if (labels.size() != lat.cell_count())
    throw std::domain_error("generate: label map size mismatch");
  for (std::uint16_t l : labels)
    if (l >= means.block_count())
      throw std::domain_error("generate: label without a mean sequence");

  FrameSequence seq(lat.rows, lat.cols, d);
  const int m = lat.rows, n = lat.cols;
  const double sigma = noise ? std::sqrt(noise->sigma2) : 0.0;

  // Per-frame mean levels are shared across all cells of a block.
  std::vector<double> level(means.block_count());
  for (int k = 1; k <= d; ++k) {
    for (std::size_t b = 0; b < means.block_count(); ++b) level[b] = means.value(b, k);
    double* frame = seq.values().data() + static_cast<std::size_t>(k - 1) * m * n;
    if (noise) {
      const std::uint64_t seed = noise->seed;
      for (int i = 1; i <= m; ++i) {
        const std::size_t row_off = static_cast<std::size_t>(i - 1) * n;
        for (int j = 1; j <= n; ++j)
          frame[row_off + j - 1] =
              level[labels[row_off + j - 1]] +
              sigma * rng::normal(seed, static_cast<std::uint64_t>(k),
                                  static_cast<std::uint64_t>(i),
                                  static_cast<std::uint64_t>(j));
      }
    } else {
      for (std::size_t c = 0; c < static_cast<std::size_t>(m) * n; ++c)
        frame[c] = level[labels[c]];
    }
  }
  return seq;
}

FrameSequence generate(Lattice lat, const Partition& partition, const MeanModel& means,
                       const std::optional<NoiseSpec>& noise, int d) {
  if (!(partition.lattice() == lat))
    throw std::domain_error("generate: partition lattice mismatch");
  if (partition.block_count() != means.block_count())
    throw std::domain_error("generate: one mean sequence per block required, got " +
                            std::to_string(means.block_count()) + " for " +
                            std::to_string(partition.block_count()) + " blocks");
  // Adjacent blocks must differ at every k, otherwise they are not common
  // change sets relative to each other.
  for (std::size_t a = 0; a < partition.block_count(); ++a) {
    for (std::size_t b = a + 1; b < partition.block_count(); ++b) {
      if (!are_adjacent(partition.blocks()[a], partition.blocks()[b])) continue;
      for (int k = 1; k <= d; ++k)
        if (means.value(a, k) == means.value(b, k))
          throw std::domain_error("generate: adjacent blocks " + std::to_string(a) +
                                  " and " + std::to_string(b) +
                                  " share the mean at k=" + std::to_string(k));
    }
  }
  return generate_labeled(lat, partition.labels(), means, noise, d);
}

FrameSequence generate_uniform(Lattice lat, const MeanSpec& mean,
                               const std::optional<NoiseSpec>& noise, int d) {
  const std::vector<std::uint16_t> labels(lat.cell_count(), 0);
  return generate_labeled(lat, labels, MeanModel({mean}), noise, d);
}

double total_average_change(const MeanModel& means, std::size_t block_a,
                            std::size_t block_b, int d) {
  if (d < 1) throw std::domain_error("total_average_change: d must be >= 1");
  double sum = 0.0;
  for (int k = 1; k <= d; ++k) {
    const double delta = means.value(block_a, k) - means.value(block_b, k);
    sum += delta * delta;
  }
  return sum / d;
}

double noise_to_change_ratio(double sigma2, double delta2_inf, int window) {
  if (window < 4) throw std::domain_error("noise_to_change_ratio: N must be >= 4");
  if (!(delta2_inf > 0.0))
    throw std::domain_error(
        "noise_to_change_ratio: requires a common change (Delta^2 > 0)");
  return sigma2 / (static_cast<double>(window) * delta2_inf);
}

std::vector<double> frame_average(const FrameSequence& seq) {
  const std::size_t cells = static_cast<std::size_t>(seq.rows()) * seq.cols();
  std::vector<double> avg(cells, 0.0);
  for (int k = 1; k <= seq.frames(); ++k) {
    const double* frame = seq.frame(k);
    for (std::size_t c = 0; c < cells; ++c) avg[c] += frame[c];
  }
  for (double& v : avg) v /= seq.frames();
  return avg;
}

}  // namespace changeset
