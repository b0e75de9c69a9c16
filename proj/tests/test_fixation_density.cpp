#include <cmath>

#include <catch2/catch_amalgamated.hpp>

#include "vsal/fixation_density.hpp"

using vsal::DensityParams;
using vsal::FixationRecord;
using vsal::SaliencyMap;

TEST_CASE("default_sigma_spatial uses the larger dimension") {
  CHECK(vsal::default_sigma_spatial(1280, 720) == Catch::Approx(38.4));
  CHECK(vsal::default_sigma_spatial(720, 1280) == Catch::Approx(38.4));
  CHECK(vsal::default_sigma_spatial(100, 100) == Catch::Approx(3.0));
}

TEST_CASE("single coincident fixation gives an exact Gaussian peak") {
  DensityParams params{4.0, 0.1, 1e-4};
  const std::vector<FixationRecord> fix = {{"s1", 1.0, 10.0, 10.0}};
  const SaliencyMap m = vsal::density_map(fix, 1.0, 32, 32, params);
  CHECK(m.at(10, 10) == Catch::Approx(1.0).margin(1e-12));
  CHECK(m.at(14, 10) == Catch::Approx(std::exp(-0.5)).margin(1e-9));
}

TEST_CASE("fixations before t are ignored") {
  DensityParams params{4.0, 0.1, 1e-4};
  const std::vector<FixationRecord> fix = {{"s1", 0.95, 10.0, 10.0}};
  const SaliencyMap m = vsal::density_map(fix, 1.0, 32, 32, params);
  CHECK(m.all_zero());
}

TEST_CASE("coincident fixations add up") {
  DensityParams params{4.0, 0.1, 1e-4};
  const std::vector<FixationRecord> fix = {{"s1", 1.0, 10.0, 10.0},
                                           {"s2", 1.0, 10.0, 10.0}};
  const SaliencyMap m = vsal::density_map(fix, 1.0, 32, 32, params);
  CHECK(m.at(10, 10) == Catch::Approx(2.0).margin(1e-12));
}

TEST_CASE("empty fixation list yields an all-zero raw map") {
  DensityParams params{4.0, 0.1, 1e-4};
  const SaliencyMap m = vsal::density_map({}, 0.0, 8, 8, params);
  CHECK(m.all_zero());
  CHECK(m.norm_state == vsal::NormState::Raw);
}

TEST_CASE("density map is non-negative and radially non-increasing") {
  DensityParams params{3.0, 0.1, 1e-4};
  const std::vector<FixationRecord> fix = {{"s1", 0.0, 16.0, 16.0}};
  const SaliencyMap m = vsal::density_map(fix, 0.0, 33, 33, params);
  CHECK(m.min_value() >= 0.0);
  // Along a ray from the fixation, values never increase with distance.
  for (int x = 17; x < 33; ++x) CHECK(m.at(x, 16) <= m.at(x - 1, 16));
  for (int y = 17; y < 33; ++y) CHECK(m.at(16, y) <= m.at(16, y - 1));
}

TEST_CASE("density map is additive over fixation sets") {
  DensityParams params{2.5, 0.1, 0.0};
  const std::vector<FixationRecord> f1 = {{"a", 0.01, 5.0, 6.0},
                                          {"b", 0.02, 12.0, 3.0}};
  const std::vector<FixationRecord> f2 = {{"c", 0.0, 9.0, 9.0}};
  std::vector<FixationRecord> both = f1;
  both.insert(both.end(), f2.begin(), f2.end());

  const SaliencyMap m1 = vsal::density_map(f1, 0.0, 16, 16, params);
  const SaliencyMap m2 = vsal::density_map(f2, 0.0, 16, 16, params);
  const SaliencyMap mb = vsal::density_map(both, 0.0, 16, 16, params);
  for (std::size_t i = 0; i < mb.values.size(); ++i)
    CHECK(mb.values[i] ==
          Catch::Approx(m1.values[i] + m2.values[i]).margin(1e-9));
}

TEST_CASE("temporal distance scales every pixel by the same factor") {
  DensityParams params{3.0, 0.1, 0.0};
  const SaliencyMap near =
      vsal::density_map({{"s", 0.02, 8.0, 8.0}}, 0.0, 16, 16, params);
  const SaliencyMap far =
      vsal::density_map({{"s", 0.06, 8.0, 8.0}}, 0.0, 16, 16, params);
  const double expected =
      std::exp(-(0.06 * 0.06 - 0.02 * 0.02) / (2.0 * 0.1 * 0.1));
  for (std::size_t i = 0; i < near.values.size(); ++i) {
    if (near.values[i] == 0.0) continue;
    CHECK(far.values[i] / near.values[i] ==
          Catch::Approx(expected).margin(1e-12));
    CHECK(far.values[i] < near.values[i]);
  }
}

TEST_CASE("temporal cutoff skips far-future fixations") {
  DensityParams params{3.0, 0.1, 1e-4};
  // exp(-(0.5)^2 / (2*0.01)) ~ 3.7e-6 < 1e-4, so this fixation is skipped.
  const SaliencyMap m =
      vsal::density_map({{"s", 0.5, 8.0, 8.0}}, 0.0, 16, 16, params);
  CHECK(m.all_zero());
}
