#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "changeset/lattice.hpp"
#include "changeset/slicing.hpp"

namespace changeset {

/// Exact nonnegative rational, used for shape radii so that boundary
/// membership (e.g. w = 100/3) never flips on float rounding.
struct Rational {
  long long num = 0;
  long long den = 1;

  Rational() = default;
  Rational(long long n, long long d);

  /// Accepts "a/b", integers, and plain decimals ("33.5" -> 67/2).
  static Rational parse(const std::string& text);

  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string str() const;
};

enum class NormOrder { L1, L2, LInf };

/// Ball { u : ||u - center||_p <= radius } intersected with the lattice.
struct ShapeSpec {
  NormOrder norm = NormOrder::LInf;
  Rational radius;
  Point center;
};

/// All lattice points within the radius. Membership checks are exact integer
/// comparisons (squared for p=2). Throws if the ball is clipped by the
/// domain edge or comes out empty.
PointSet make_shape(const ShapeSpec& spec, Lattice lat);

enum class MeanKind { Zero, Const, Alt, Drift, DriftPlusAlt };

/// Named mean-level generator for one block: m_k as a function of the frame
/// index k.
struct MeanSpec {
  MeanKind kind = MeanKind::Zero;
  double level = 0.0;  // for Const

  double value(int k) const noexcept {
    switch (kind) {
      case MeanKind::Zero: return 0.0;
      case MeanKind::Const: return level;
      case MeanKind::Alt: return k % 2 == 0 ? 1.0 : -1.0;
      case MeanKind::Drift: return static_cast<double>(k);
      case MeanKind::DriftPlusAlt:
        return static_cast<double>(k) + (k % 2 == 0 ? 1.0 : -1.0);
    }
    return 0.0;
  }

  /// Accepts zero | alt | drift | drift_plus_alt | const(c).
  static MeanSpec parse(const std::string& name);
  std::string name() const;

  friend bool operator==(const MeanSpec&, const MeanSpec&) = default;
};

/// One mean sequence per partition block, in block order.
class MeanModel {
 public:
  explicit MeanModel(std::vector<MeanSpec> blocks) : blocks_(std::move(blocks)) {}

  std::size_t block_count() const noexcept { return blocks_.size(); }
  const MeanSpec& block(std::size_t idx) const { return blocks_.at(idx); }
  double value(std::size_t block_idx, int k) const { return blocks_.at(block_idx).value(k); }

 private:
  std::vector<MeanSpec> blocks_;
};

/// i.i.d. centered Gaussian noise, keyed by a 64-bit seed.
struct NoiseSpec {
  double sigma2 = 1.0;
  std::uint64_t seed = 0;

  NoiseSpec(double variance, std::uint64_t s) : sigma2(variance), seed(s) {
    if (!(sigma2 > 0.0))
      throw std::domain_error("NoiseSpec: variance must be positive");
  }
};

/// X_k(i,j) = m_k(block(i,j)) + eps_k(i,j) with eps i.i.d. N(0, sigma^2)
/// drawn from a counter-based generator keyed by (seed,k,i,j); passing
/// std::nullopt disables noise and yields the exact mean field. Adjacent
/// blocks must differ in mean at every k.
FrameSequence generate(Lattice lat, const Partition& partition, const MeanModel& means,
                       const std::optional<NoiseSpec>& noise, int d);

/// Noise-field variant without a partition: a single mean sequence over the
/// whole domain (the "no change set" scenario).
FrameSequence generate_uniform(Lattice lat, const MeanSpec& mean,
                               const std::optional<NoiseSpec>& noise, int d);

/// Label-map core shared by the two entry points above; labels are 0-based
/// block indices, row-major.
FrameSequence generate_labeled(Lattice lat, const std::vector<std::uint16_t>& labels,
                               const MeanModel& means,
                               const std::optional<NoiseSpec>& noise, int d);

/// Finite-d total average change sum_{k<=d} |m_k(a)-m_k(b)|^2 / d. For the
/// periodic generators this already equals the d -> infinity limit.
double total_average_change(const MeanModel& means, std::size_t block_a,
                            std::size_t block_b, int d);

/// rho = sigma^2 / (N * Delta^2_inf); requires a genuine change
/// (delta2_inf > 0).
double noise_to_change_ratio(double sigma2, double delta2_inf, int window);

/// Pointwise mean over frames, row-major rows*cols values.
std::vector<double> frame_average(const FrameSequence& seq);

}  // namespace changeset
