#include <doctest.h>

#include <cmath>
#include <sstream>
#include <vector>

#include "nlrad/correlation.hpp"
#include "nlrad/recurrence.hpp"
#include "nlrad/rng.hpp"
#include "test_support.hpp"

using namespace nlrad;

TEST_CASE("recurrence matrix on two separated points") {
  auto traj = testing::make_trajectory({0.0, 1.0}, 1, Norm::Linf);
  const auto matrix = recurrence_matrix(traj, 0.5);
  CHECK(matrix.at(0, 0));
  CHECK(matrix.at(1, 1));
  CHECK_FALSE(matrix.at(0, 1));
  CHECK_FALSE(matrix.at(1, 0));
  CHECK(matrix.recurrence_rate() == 0.5);
  CHECK_THROWS_AS(recurrence_matrix(traj, 0.0), ArgumentError);
}

TEST_CASE("recurrence matrix of a constant trajectory is all true") {
  auto traj = testing::make_trajectory({2.0, 2.0, 2.0}, 1);
  const auto matrix = recurrence_matrix(traj, 0.1);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) CHECK(matrix.at(i, j));
  CHECK(matrix.recurrence_rate() == 1.0);
}

TEST_CASE("recurrence rate equals the correlation sum exactly") {
  Rng rng(23);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 10 + rng.next() % 40;
    const Norm norm =
        trial % 3 == 0 ? Norm::L1 : (trial % 3 == 1 ? Norm::L2 : Norm::Linf);
    const auto traj = testing::random_trajectory(rng, n, 1 + trial % 3, norm);
    for (double epsilon : {0.05, 0.2, 0.8, 2.0, 10.0}) {
      const auto matrix = recurrence_matrix(traj, epsilon);
      CHECK(matrix.recurrence_rate() == correlation_sum(traj, epsilon));
    }
  }
}

TEST_CASE("matrix is symmetric with a true diagonal") {
  Rng rng(24);
  const auto traj = testing::random_trajectory(rng, 40, 2, Norm::L2);
  const auto matrix = recurrence_matrix(traj, 1.0);
  for (std::size_t i = 0; i < matrix.n; ++i) {
    CHECK(matrix.at(i, i));
    for (std::size_t j = 0; j < matrix.n; ++j)
      CHECK(matrix.at(i, j) == matrix.at(j, i));
  }
}

TEST_CASE("diagonal histogram of a constant series") {
  TimeSeries series;
  series.values.assign(50, 3.14);
  const auto hist = diagonal_histogram(series, 0.5, 10);
  for (std::size_t m = 1; m <= 10; ++m) {
    const std::uint64_t expected = (50 - m + 1) * (50 - m + 1);
    CHECK(hist.at(m) == expected);
  }
}

TEST_CASE("diagonal histogram on the alternating toy series") {
  // Frozen from the brute-force oracle below.
  TimeSeries series{{0.0, 10.0, 0.0, 10.0}, 1.0};
  const auto expected =
      testing::brute_force_diagonal_counts(series.values, 1.0, 3);
  CHECK(expected[0] == 8);
  CHECK(expected[1] == 5);
  CHECK(expected[2] == 2);
  const auto hist = diagonal_histogram(series, 1.0, 3);
  for (std::size_t m = 1; m <= 3; ++m) CHECK(hist.at(m) == expected[m - 1]);
}

TEST_CASE("run-length counts equal the brute-force triple loop") {
  Rng rng(25);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t N = 10 + rng.next() % 41;
    TimeSeries series;
    series.values.resize(N);
    for (auto& v : series.values)
      v = std::round(rng.gaussian() * 3.0) / 2.0;  // coarse values force runs
    const double epsilon = 0.3 + rng.uniform() * 2.0;
    const std::size_t m_max = std::min<std::size_t>(10, N - 1);
    const auto expected = testing::brute_force_diagonal_counts(
        series.values, epsilon, m_max);
    const auto hist = diagonal_histogram(series, epsilon, m_max);
    for (std::size_t m = 1; m <= m_max; ++m)
      CHECK(hist.at(m) == expected[m - 1]);
    // Without self pairs as well.
    const auto expected_cross = testing::brute_force_diagonal_counts(
        series.values, epsilon, m_max, false);
    const auto cross = diagonal_histogram(series, epsilon, m_max, false);
    for (std::size_t m = 1; m <= m_max; ++m)
      CHECK(cross.at(m) == expected_cross[m - 1]);
  }
}

TEST_CASE("histogram counts are nonincreasing and bounded below by self pairs") {
  Rng rng(26);
  TimeSeries series;
  series.values.resize(200);
  for (auto& v : series.values) v = rng.gaussian();
  const auto hist = diagonal_histogram(series, 0.4, 12);
  for (std::size_t m = 2; m <= 12; ++m) CHECK(hist.at(m) <= hist.at(m - 1));
  for (std::size_t m = 1; m <= 12; ++m)
    CHECK(hist.at(m) >= 200 - m + 1);
  CHECK_THROWS_AS(diagonal_histogram(series, 0.4, 200), ArgumentError);
  CHECK_THROWS_AS(diagonal_histogram(series, -1.0, 5), ArgumentError);
}

TEST_CASE("k2 of a constant series is almost zero") {
  TimeSeries series;
  series.values.assign(1000, 1.0);
  const auto hist = diagonal_histogram(series, 0.5, 9);
  const auto estimate = k2_estimate(hist, 1.0, 2, 8);
  CHECK(std::abs(estimate.k2) < 0.01);
}

TEST_CASE("k2 recovers an exact exponential decay") {
  DiagonalHistogram hist;
  hist.epsilon = 1.0;
  hist.series_length = 1000000;
  hist.self_pairs = false;
  for (std::size_t m = 1; m <= 9; ++m)
    hist.counts.push_back(static_cast<std::uint64_t>(
        std::llround(1e15 * std::exp(-0.7 * static_cast<double>(m)))));
  const auto estimate = k2_estimate(hist, 1.0, 2, 8);
  CHECK(estimate.k2 == doctest::Approx(0.7).epsilon(1e-10));
  // dt rescales the rate.
  CHECK(k2_estimate(hist, 0.5, 2, 8).k2 ==
        doctest::Approx(1.4).epsilon(1e-10));
}

TEST_CASE("k2 enforces the count floor over [m_lo, m_hi+1]") {
  DiagonalHistogram hist;
  hist.epsilon = 0.1;
  hist.series_length = 100;
  hist.self_pairs = false;
  hist.counts = {500, 200, 80, 30, 12, 9, 4, 2, 1};  // m = 1..9
  CHECK_THROWS_AS(k2_estimate(hist, 1.0, 2, 8), InsufficientDataError);
  // A narrower fit stays above the floor.
  const auto estimate = k2_estimate(hist, 1.0, 2, 4);
  CHECK(estimate.k2 > 0.0);
  CHECK_THROWS_AS(k2_estimate(hist, 1.0, 4, 9), ArgumentError);  // beyond m_max
}

TEST_CASE("k2 is invariant under joint power-of-two scaling") {
  Rng rng(27);
  TimeSeries series;
  series.values.resize(800);
  for (auto& v : series.values) v = rng.gaussian();
  TimeSeries scaled = series;
  for (auto& v : scaled.values) v *= 8.0;
  const double epsilon = 0.8;
  const auto base =
      k2_estimate(diagonal_histogram(series, epsilon, 9), 1.0, 2, 8);
  const auto rescaled =
      k2_estimate(diagonal_histogram(scaled, epsilon * 8.0, 9), 1.0, 2, 8);
  CHECK(base.k2 == rescaled.k2);

  // Non-dyadic scale: rounding can only move measure-zero boundary cases.
  TimeSeries odd = series;
  for (auto& v : odd.values) v *= 3.7;
  const auto odd_scaled =
      k2_estimate(diagonal_histogram(odd, epsilon * 3.7, 9), 1.0, 2, 8);
  CHECK(odd_scaled.k2 == doctest::Approx(base.k2).epsilon(1e-9));
}

TEST_CASE("k2 curve flags starved radii instead of failing") {
  Rng rng(28);
  TimeSeries series;
  series.values.resize(300);
  for (auto& v : series.values) v = rng.gaussian();
  const auto curve = k2_curve(series, {1e-6, 1.0, 100.0});
  REQUIRE(curve.size() == 3);
  CHECK_FALSE(curve[0].ok);  // no neighbors that close
  CHECK(curve[1].ok);
  CHECK(curve[2].ok);  // saturated: every pair matches
  CHECK(std::abs(curve[2].k2) < 0.01);
}

TEST_CASE("recurrence exports") {
  auto traj = testing::make_trajectory({0.0, 1.0}, 1, Norm::Linf);
  const auto matrix = recurrence_matrix(traj, 0.5);
  std::ostringstream pbm;
  write_pbm(pbm, matrix);
  CHECK(pbm.str() == "P1\n2 2\n1 0\n0 1\n");

  std::ostringstream pairs;
  write_pairs_csv(pairs, matrix);
  CHECK(pairs.str() == "i,j\r\n0,0\r\n1,1\r\n");

  TimeSeries series{{0.0, 10.0, 0.0, 10.0}, 1.0};
  std::ostringstream hist_csv;
  write_histogram_csv(hist_csv, diagonal_histogram(series, 1.0, 2));
  CHECK(hist_csv.str() == "m,count\r\n1,8\r\n2,5\r\n");
}
