#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "changeset/synth.hpp"
#include "oracle_helpers.hpp"

using namespace changeset;

TEST_CASE("rational radii: parsing and reduction") {
  CHECK(Rational::parse("100/3").num == 100);
  CHECK(Rational::parse("100/3").den == 3);
  const Rational half = Rational::parse("33.5");
  CHECK(half.num == 67);
  CHECK(half.den == 2);
  CHECK(Rational::parse("7").num == 7);
  CHECK(Rational(4, 8).num == 1);
  CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
  CHECK_THROWS_AS(Rational(-1, 2), std::domain_error);
  CHECK(Rational(100, 3).str() == "100/3");
}

TEST_CASE("make_shape: small exact shapes") {
  const Lattice lat(10, 10);
  const PointSet box = make_shape({NormOrder::LInf, Rational(1, 1), {5, 5}}, lat);
  CHECK(box.size() == 9);
  for (int i = 4; i <= 6; ++i)
    for (int j = 4; j <= 6; ++j) CHECK(box.contains({i, j}));

  const PointSet plus = make_shape({NormOrder::L1, Rational(1, 1), {5, 5}}, lat);
  CHECK(plus ==
        PointSet(lat, {Point{4, 5}, Point{5, 4}, Point{5, 5}, Point{5, 6}, Point{6, 5}}));

  const PointSet dot = make_shape({NormOrder::L2, Rational(1, 2), {3, 3}}, lat);
  CHECK(dot == PointSet(lat, {Point{3, 3}}));
}

TEST_CASE("make_shape: the reference rectangle is the 67x67 block") {
  const Lattice lat(100, 100);
  const PointSet rect = make_shape({NormOrder::LInf, Rational(100, 3), {50, 50}}, lat);
  CHECK(rect.size() == 4489);
  CHECK(rect.contains({17, 17}));
  CHECK(rect.contains({83, 83}));
  CHECK_FALSE(rect.contains({16, 50}));
  CHECK_FALSE(rect.contains({50, 84}));
}

TEST_CASE("make_shape: clipping and bad centers are rejected") {
  const Lattice lat(10, 10);
  CHECK_THROWS_AS(make_shape({NormOrder::LInf, Rational(3, 1), {2, 5}}, lat),
                  std::domain_error);
  CHECK_THROWS_AS(make_shape({NormOrder::L1, Rational(2, 1), {5, 11}}, lat),
                  std::domain_error);
  CHECK_NOTHROW(make_shape({NormOrder::L1, Rational(4, 1), {5, 5}}, lat));
}

TEST_CASE("make_shape: symmetric under reflections through the center") {
  const Lattice lat(30, 30);
  for (const NormOrder norm : {NormOrder::L1, NormOrder::L2, NormOrder::LInf}) {
    const Point center{15, 15};
    const PointSet s = make_shape({norm, Rational(13, 3), center}, lat);
    for (const Point& p : s.points()) {
      CHECK(s.contains({2 * center.row - p.row, p.col}));
      CHECK(s.contains({p.row, 2 * center.col - p.col}));
      CHECK(s.contains({p.col - center.col + center.row, p.row - center.row + center.col}));
    }
  }
}

TEST_CASE("mean generators: values and parsing") {
  CHECK(MeanSpec{MeanKind::Drift}.value(7) == 7.0);
  CHECK(MeanSpec{MeanKind::DriftPlusAlt}.value(1) == 0.0);   // 1 + (-1)
  CHECK(MeanSpec{MeanKind::DriftPlusAlt}.value(2) == 3.0);   // 2 + 1
  CHECK(MeanSpec{MeanKind::Alt}.value(1) == -1.0);
  CHECK(MeanSpec{MeanKind::Alt}.value(2) == 1.0);
  CHECK(MeanSpec{MeanKind::Zero}.value(9) == 0.0);
  CHECK(MeanSpec::parse("const(2.5)").value(3) == 2.5);
  CHECK(MeanSpec::parse("drift_plus_alt").kind == MeanKind::DriftPlusAlt);
  CHECK(MeanSpec::parse(MeanSpec{MeanKind::Alt}.name()).kind == MeanKind::Alt);
  CHECK_THROWS_AS(MeanSpec::parse("linear"), std::domain_error);
}

TEST_CASE("generate: noiseless field equals the block means") {
  const Lattice lat(8, 8);
  const PointSet inner = make_shape({NormOrder::LInf, Rational(1, 1), {4, 4}}, lat);
  const Partition part(lat, {PointSet::full(lat).set_difference(inner), inner});
  const MeanModel means({MeanSpec{MeanKind::Drift}, MeanSpec{MeanKind::DriftPlusAlt}});

  const FrameSequence seq = generate(lat, part, means, std::nullopt, 4);
  CHECK(seq.at(1, 1, 1) == 1.0);
  CHECK(seq.at(1, 4, 4) == 0.0);
  CHECK(seq.at(2, 4, 4) == 3.0);
  CHECK(seq.at(4, 8, 8) == 4.0);
}

TEST_CASE("generate: reproducible, seed-sensitive, prefix-stable") {
  const Lattice lat(8, 8);
  const PointSet inner = make_shape({NormOrder::LInf, Rational(1, 1), {4, 4}}, lat);
  const Partition part(lat, {PointSet::full(lat).set_difference(inner), inner});
  const MeanModel means({MeanSpec{MeanKind::Zero}, MeanSpec{MeanKind::Alt}});

  const FrameSequence a = generate(lat, part, means, NoiseSpec(1.0, 77), 5);
  const FrameSequence b = generate(lat, part, means, NoiseSpec(1.0, 77), 5);
  CHECK(a.values() == b.values());

  const FrameSequence c = generate(lat, part, means, NoiseSpec(1.0, 78), 5);
  CHECK(a.values() != c.values());

  // Counter-based noise: generating fewer frames yields the same prefix.
  const FrameSequence head = generate(lat, part, means, NoiseSpec(1.0, 77), 2);
  CHECK(head.values() == a.prefix(2).values());
}

TEST_CASE("generate: first two moments of the noise match") {
  const Lattice lat(40, 40);
  const FrameSequence seq =
      generate_uniform(lat, MeanSpec{MeanKind::Zero}, NoiseSpec(1.0, 2024), 50);
  double sum = 0.0, sum2 = 0.0;
  for (double v : seq.values()) {
    sum += v;
    sum2 += v * v;
  }
  const double count = static_cast<double>(seq.values().size());
  const double mean = sum / count;
  const double var = sum2 / count - mean * mean;
  // 3 standard errors: 3/sqrt(80000) and 3*sqrt(2/80000).
  CHECK(std::abs(mean) < 0.0107);
  CHECK(std::abs(var - 1.0) < 0.0152);
}

TEST_CASE("generate: adjacent blocks must differ at every frame") {
  const Lattice lat(8, 8);
  const PointSet inner = make_shape({NormOrder::LInf, Rational(1, 1), {4, 4}}, lat);
  const Partition part(lat, {PointSet::full(lat).set_difference(inner), inner});
  CHECK_THROWS_AS(generate(lat, part,
                           MeanModel({MeanSpec{MeanKind::Drift}, MeanSpec{MeanKind::Drift}}),
                           std::nullopt, 3),
                  std::domain_error);
  // drift vs drift_plus_alt differ by (-1)^k != 0 for every k.
  CHECK_NOTHROW(generate(
      lat, part, MeanModel({MeanSpec{MeanKind::Drift}, MeanSpec{MeanKind::DriftPlusAlt}}),
      std::nullopt, 3));
  CHECK_THROWS_AS(
      generate(lat, part, MeanModel({MeanSpec{MeanKind::Drift}}), std::nullopt, 3),
      std::domain_error);
}

TEST_CASE("total_average_change: frozen values and symmetry") {
  const MeanModel means({MeanSpec{MeanKind::Drift}, MeanSpec{MeanKind::DriftPlusAlt},
                         MeanSpec{MeanKind::Const, 0.0}, MeanSpec{MeanKind::Const, 3.0}});
  CHECK(total_average_change(means, 0, 0, 10) == 0.0);
  for (int d : {1, 2, 5, 100}) CHECK(total_average_change(means, 0, 1, d) == 1.0);
  CHECK(total_average_change(means, 2, 3, 7) == 9.0);
  CHECK(total_average_change(means, 1, 0, 9) == total_average_change(means, 0, 1, 9));
  CHECK_THROWS_AS(total_average_change(means, 0, 1, 0), std::domain_error);
}

TEST_CASE("noise_to_change_ratio: frozen values and guards") {
  CHECK(noise_to_change_ratio(2.0, 1.0, 4) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(noise_to_change_ratio(2.0, 1.0, 6) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(noise_to_change_ratio(6.0, 1.5, 4) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK_THROWS_AS(noise_to_change_ratio(1.0, 0.0, 6), std::domain_error);
  CHECK_THROWS_AS(noise_to_change_ratio(1.0, 1.0, 3), std::domain_error);
}

TEST_CASE("frame_average: constants and alternating cancellation") {
  FrameSequence constant(4, 4, 3);
  for (double& v : constant.values()) v = 2.5;
  for (double v : frame_average(constant)) CHECK(v == 2.5);

  // Alternating -1,+1 over an even number of noiseless frames cancels.
  const Lattice lat(6, 6);
  const FrameSequence alt =
      generate_uniform(lat, MeanSpec{MeanKind::Alt}, std::nullopt, 10);
  for (double v : frame_average(alt)) CHECK(v == 0.0);

  // With an alternating background and a zero-mean block the average hides
  // the change set.
  const PointSet inner = make_shape({NormOrder::LInf, Rational(1, 1), {3, 3}}, lat);
  const Partition part(lat, {PointSet::full(lat).set_difference(inner), inner});
  const MeanModel means({MeanSpec{MeanKind::Alt}, MeanSpec{MeanKind::Zero}});
  const auto avg = generate(lat, part, means, std::nullopt, 10);
  for (double v : frame_average(avg)) CHECK(std::abs(v) <= 1e-12);
}

TEST_CASE("noise spec requires positive variance") {
  CHECK_THROWS_AS(NoiseSpec(0.0, 1), std::domain_error);
  CHECK_THROWS_AS(NoiseSpec(-1.0, 1), std::domain_error);
}
