#include <random>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "support/selection_oracle.hpp"
#include "vsal/path_selection.hpp"
#include "vsal/saliency_map.hpp"

using vsal::SaliencyMap;
using vsal::SelectionMask;
using vsal::SelectionParams;
using vsal::SimilarityMatrix;

namespace {

// The worked 3x3 matrix used throughout: paths 1 and 2 are near-twins,
// path 3 is dissimilar to both.
SimilarityMatrix worked_matrix() {
  SimilarityMatrix sim(3);
  sim.entries = {1.0, 0.9, 0.1, 0.9, 1.0, 0.1, 0.1, 0.1, 1.0};
  return sim;
}

SelectionMask mask_of(std::vector<bool> bits) {
  SelectionMask m;
  m.alpha = std::move(bits);
  return m;
}

SimilarityMatrix random_similarity(std::mt19937& rng, int m) {
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  SimilarityMatrix sim(m);
  for (int i = 0; i < m; ++i) {
    sim.at(i, i) = 1.0;
    for (int j = i + 1; j < m; ++j) {
      const double v = dist(rng);
      sim.at(i, j) = v;
      sim.at(j, i) = v;
    }
  }
  return sim;
}

}  // namespace

TEST_CASE("similarity_matrix on simple map banks") {
  // Identical maps on every frame: similarity 1.
  SaliencyMap a(2, 2, {1.0, 2.0, 3.0, 4.0});
  const SimilarityMatrix same = vsal::similarity_matrix({{a, a}, {a, a}}, 2, 2);
  CHECK(same.at(0, 1) == Catch::Approx(1.0).margin(1e-9));
  CHECK(same.at(0, 0) == Catch::Approx(1.0).margin(1e-9));

  // Disjoint supports: similarity 0.
  SaliencyMap p(2, 2, {1.0, 0.0, 0.0, 0.0});
  SaliencyMap q(2, 2, {0.0, 0.0, 0.0, 1.0});
  const SimilarityMatrix disjoint = vsal::similarity_matrix({{p, q}}, 2, 2);
  CHECK(disjoint.at(0, 1) == Catch::Approx(0.0).margin(1e-12));

  // Uniform over 4 pixels vs all mass on one of them: 0.25.
  SaliencyMap uniform(2, 2, 1.0);
  const SimilarityMatrix quarter =
      vsal::similarity_matrix({{uniform, p}}, 2, 2);
  CHECK(quarter.at(0, 1) == Catch::Approx(0.25).margin(1e-12));

  // All-zero map cannot be normalized.
  SaliencyMap zero(2, 2, 0.0);
  CHECK_THROWS_AS(vsal::similarity_matrix({{a, zero}}, 2, 2),
                  vsal::AllZeroMap);
}

TEST_CASE("similarity is invariant to uniform rescaling of a predictor") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  std::vector<std::vector<SaliencyMap>> maps(3);
  for (auto& row : maps)
    for (int i = 0; i < 3; ++i) {
      SaliencyMap m(6, 6);
      for (double& v : m.values) v = dist(rng);
      row.push_back(std::move(m));
    }
  auto scaled = maps;
  for (auto& row : scaled)
    for (double& v : row[1].values) v *= 37.5;

  const SimilarityMatrix s1 = vsal::similarity_matrix(maps, 6, 6);
  const SimilarityMatrix s2 = vsal::similarity_matrix(scaled, 6, 6);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      CHECK(s1.at(i, j) == Catch::Approx(s2.at(i, j)).margin(1e-12));
}

TEST_CASE("representativeness on the worked matrix") {
  const SimilarityMatrix sim = worked_matrix();
  CHECK(vsal::representativeness(mask_of({true, true, true}), sim, 1e-8) ==
        0.0);

  SimilarityMatrix two(2);
  two.entries = {1.0, 0.9, 0.9, 1.0};
  CHECK(vsal::representativeness(mask_of({true, false}), two, 1e-8) ==
        Catch::Approx(0.9).margin(1e-6));

  CHECK(vsal::representativeness(mask_of({true, false, true}), sim, 1e-8) ==
        Catch::Approx(0.9).margin(1e-6));
}

TEST_CASE("diversity on simple masks") {
  const SimilarityMatrix sim = worked_matrix();
  CHECK(vsal::diversity(mask_of({false, true, false}), sim, 1e-8) == 0.0);

  SimilarityMatrix twins(2);
  twins.entries = {1.0, 1.0, 1.0, 1.0};
  CHECK(vsal::diversity(mask_of({true, true}), twins, 1e-8) ==
        Catch::Approx(0.0).margin(1e-9));

  SimilarityMatrix distinct(2);
  distinct.entries = {1.0, 0.1, 0.1, 1.0};
  CHECK(vsal::diversity(mask_of({true, true}), distinct, 1e-8) ==
        Catch::Approx(0.9).margin(1e-6));
}

TEST_CASE("objective values on the worked matrix") {
  const SimilarityMatrix sim = worked_matrix();
  const SelectionParams params{0.2, 1e-8};
  CHECK(vsal::objective(mask_of({true, false, true}), sim, params) ==
        Catch::Approx(1.08).margin(1e-6));
  CHECK(vsal::objective(mask_of({true, true, true}), sim, params) ==
        Catch::Approx(0.1267).margin(1e-3));
  CHECK(vsal::objective(mask_of({true, false, false}), sim, params) ==
        Catch::Approx(0.5).margin(1e-6));
}

TEST_CASE("objective terms stay within [0, 1 + lambda_d]") {
  std::mt19937 rng(17);
  const SelectionParams params{0.2, 1e-8};
  for (int trial = 0; trial < 50; ++trial) {
    const SimilarityMatrix sim = random_similarity(rng, 5);
    for (std::uint32_t code = 1; code < 32; ++code) {
      SelectionMask mask;
      mask.alpha.resize(5);
      for (int i = 0; i < 5; ++i) mask.alpha[i] = (code >> i) & 1u;
      const double r = vsal::representativeness(mask, sim, params.epsilon);
      const double d = vsal::diversity(mask, sim, params.epsilon);
      CHECK(r >= 0.0);
      CHECK(r <= 1.0);
      CHECK(d >= 0.0);
      CHECK(d <= 1.0);
      CHECK(vsal::objective(mask, sim, params) <= 1.0 + params.lambda_d);
    }
  }
}

TEST_CASE("select_exhaustive on the worked matrix picks {1,3}") {
  const SelectionMask mask =
      vsal::select_exhaustive(worked_matrix(), {0.2, 1e-8});
  CHECK(mask.alpha == std::vector<bool>{true, false, true});
}

TEST_CASE("select_exhaustive trivial and structured cases") {
  SimilarityMatrix one(1);
  one.entries = {1.0};
  CHECK(vsal::select_exhaustive(one, {0.2, 1e-8}).alpha ==
        std::vector<bool>{true});

  // No off-diagonal similarity: diversity dominates, everything selected.
  SimilarityMatrix ident(3);
  ident.entries = {1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0};
  CHECK(vsal::select_exhaustive(ident, {0.2, 1e-8}).alpha ==
        std::vector<bool>{true, true, true});

  SimilarityMatrix big(21);
  CHECK_THROWS_AS(vsal::select_exhaustive(big, {0.2, 1e-8}),
                  vsal::TooManyPaths);
}

TEST_CASE("select_exhaustive matches the brute-force oracle") {
  std::mt19937 rng(42);
  for (int trial = 0; trial < 30; ++trial) {
    const int m = 3 + static_cast<int>(rng() % 4);  // 3..6
    const SimilarityMatrix sim = random_similarity(rng, m);
    for (double lambda_d : {0.0, 0.2, 1.0}) {
      const SelectionMask got = vsal::select_exhaustive(sim, {lambda_d, 1e-8});
      const std::vector<int> want =
          oracle::best_mask_ref(sim.entries, m, lambda_d, 1e-8);
      for (int i = 0; i < m; ++i)
        CHECK(static_cast<int>(got.alpha[i]) == want[i]);
    }
  }
}

TEST_CASE("select_exhaustive dominates every mask") {
  std::mt19937 rng(33);
  const SelectionParams params{0.2, 1e-8};
  for (int trial = 0; trial < 10; ++trial) {
    const int m = 3 + static_cast<int>(rng() % 6);  // 3..8
    const SimilarityMatrix sim = random_similarity(rng, m);
    const SelectionMask best = vsal::select_exhaustive(sim, params);
    const double best_obj = vsal::objective(best, sim, params);
    for (std::uint32_t code = 1; code < (1u << m); ++code) {
      SelectionMask mask;
      mask.alpha.resize(m);
      for (int i = 0; i < m; ++i) mask.alpha[i] = (code >> i) & 1u;
      CHECK(best_obj >= vsal::objective(mask, sim, params));
    }
  }
}

TEST_CASE("exhaustive selection is permutation-equivariant") {
  std::mt19937 rng(81);
  const SelectionParams params{0.2, 1e-8};
  int checked = 0;
  while (checked < 10) {
    const int m = 4;
    const SimilarityMatrix sim = random_similarity(rng, m);
    // Only test matrices whose optimum is unique (ties depend on labels).
    const SelectionMask best = vsal::select_exhaustive(sim, params);
    const double best_obj = vsal::objective(best, sim, params);
    int hits = 0;
    for (std::uint32_t code = 1; code < (1u << m); ++code) {
      SelectionMask mask;
      mask.alpha.resize(m);
      for (int i = 0; i < m; ++i) mask.alpha[i] = (code >> i) & 1u;
      if (std::abs(vsal::objective(mask, sim, params) - best_obj) < 1e-9)
        ++hits;
    }
    if (hits != 1) continue;
    ++checked;

    std::vector<int> perm = {2, 0, 3, 1};
    SimilarityMatrix permuted(m);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        permuted.at(perm[i], perm[j]) = sim.at(i, j);
    const SelectionMask pbest = vsal::select_exhaustive(permuted, params);
    for (int i = 0; i < m; ++i)
      CHECK(pbest.alpha[perm[i]] == best.alpha[i]);
  }
}

TEST_CASE("select_greedy finds the worked-matrix optimum") {
  CHECK(vsal::select_greedy(worked_matrix(), {0.2, 1e-8}).alpha ==
        std::vector<bool>{true, false, true});

  SimilarityMatrix one(1);
  one.entries = {1.0};
  CHECK(vsal::select_greedy(one, {0.2, 1e-8}).alpha ==
        std::vector<bool>{true});
}

TEST_CASE("select_greedy never beats exhaustive, gap reported") {
  std::mt19937 rng(55);
  const SelectionParams params{0.2, 1e-8};
  double worst_gap = 0.0;
  for (int trial = 0; trial < 40; ++trial) {
    const int m = 3 + static_cast<int>(rng() % 6);  // 3..8
    const SimilarityMatrix sim = random_similarity(rng, m);
    const double ex =
        vsal::objective(vsal::select_exhaustive(sim, params), sim, params);
    const double gr =
        vsal::objective(vsal::select_greedy(sim, params), sim, params);
    CHECK(gr <= ex + 1e-12);
    worst_gap = std::max(worst_gap, ex - gr);
  }
  INFO("worst greedy-vs-exhaustive gap over 40 matrices: " << worst_gap);
  CHECK(worst_gap >= 0.0);
}
