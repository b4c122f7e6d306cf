#include <random>

#include "catch_amalgamated.hpp"
#include "support.hpp"

using namespace ghzent;

namespace {

GhzDiagonalState ghz_with_noise(int n, double x) {
  return mix_with_white_noise(GhzDiagonalState::pure_ghz(n), x);
}

// Pair rule spelled out with raw masks: every bipartition of {1..N} that puts
// i and j on different sides must have s = 1.
bool pair_rule_by_masks(const SVector& s, int n, int i, int j) {
  for (std::uint32_t b = 1; b < (1u << n); ++b) {
    if (b & (1u << (n - 1))) continue;  // side B never holds party N
    const bool i_in = b & (1u << (i - 1)), j_in = b & (1u << (j - 1));
    if (i_in == j_in) continue;
    std::uint32_t k = 0;
    for (int p = 1; p < n; ++p) k = (k << 1) | ((b >> (p - 1)) & 1u);
    if (!s[k]) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("pure GHZ is GHZ-distillable, white noise is fully separable") {
  for (int n = 2; n <= 8; ++n) {
    const auto c = classify(GhzDiagonalState::pure_ghz(n));
    CHECK(c.ghz_distillable);
    CHECK_FALSE(c.fully_separable);
    CHECK_FALSE(c.bound_entangled);
    CHECK(c.any_pair_distillable());
    const auto m = classify(GhzDiagonalState::maximally_mixed(n));
    CHECK(m.fully_separable);
    CHECK_FALSE(m.entangled());
  }
}

TEST_CASE("GHZ with white noise: threshold 1/(2^{N-1}+1)") {
  for (int n = 2; n <= 8; ++n) {
    const double x = 1.0 / (std::ldexp(1.0, n - 1) + 1.0);
    CHECK(can_distill_ghz(ghz_with_noise(n, x + 1e-6)));
    CHECK_FALSE(can_distill_ghz(ghz_with_noise(n, x - 1e-6)));
    CHECK(s_vector(ghz_with_noise(n, x - 1e-6)).all_zero());
  }
}

TEST_CASE("s_k = 0 exactly when the splitting has a PPT partial transpose") {
  std::mt19937_64 rng(31);
  int zeros = 0, ones = 0;
  for (int trial = 0; trial < 240; ++trial) {
    const int n = 2 + trial % 3;
    const auto s = oracle::random_family_member(rng, n);
    const auto rho = to_density_matrix(s);
    const auto sv = s_vector(s);
    for (const auto& p : enumerate_splittings(n)) {
      const double e = min_pt_eigenvalue(rho, p.side_b());
      CHECK((e >= -1e-10) == !sv.at(p));
      (sv.at(p) ? ones : zeros)++;
    }
  }
  CHECK(zeros > 50);
  CHECK(ones > 50);
}

TEST_CASE("pair rule agrees with the mask-level definition") {
  std::mt19937_64 rng(32);
  for (int n = 2; n <= 6; ++n)
    for (int trial = 0; trial < 30; ++trial) {
      const auto ks = oracle::random_chain_set(rng, n, 0.7);
      std::vector<std::uint8_t> bits(std::size_t{1} << (n - 1), 0);
      for (auto k : ks) bits[k] = 1;
      const SVector s(n, bits);
      for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
          CHECK(can_distill_pair(s, PartySet{i}, PartySet{j}) == pair_rule_by_masks(s, n, i, j));
    }
}

TEST_CASE("tripartite state inseparable only on A1-(A2A3) is bound entangled") {
  const auto s = GhzDiagonalState::from_map(3, 1.0 / 3.0, 0.0, {{0b01, 1.0 / 6.0}, {0b11, 1.0 / 6.0}});
  const auto c = classify(s);
  CHECK(c.bound_entangled);
  CHECK(is_bound_entangled(s));
  CHECK_FALSE(c.any_pair_distillable());
  CHECK(c.verdicts[0b10] == Verdict::distillable);
  CHECK(c.verdicts[0b01] == Verdict::separable);
  CHECK(c.verdicts[0b11] == Verdict::separable);
  CHECK(is_l_separable(s, PartyGrouping(3, {{1}, {2, 3}})) == false);
  CHECK(is_l_separable(s, PartyGrouping(3, {{1, 2}, {3}})));
}

TEST_CASE("l-separability") {
  const auto ghz = GhzDiagonalState::pure_ghz(4);
  for (const auto& g : enumerate_groupings(4)) CHECK(is_l_separable(ghz, g) == (g.n_groups() == 1));
  const auto mm = GhzDiagonalState::maximally_mixed(4);
  for (const auto& g : enumerate_groupings(4)) CHECK(is_l_separable(mm, g));
}

TEST_CASE("grouping into singletons reproduces the plain classification") {
  std::mt19937_64 rng(33);
  for (int n = 2; n <= 5; ++n)
    for (int trial = 0; trial < 10; ++trial) {
      const auto s = oracle::random_family_member(rng, n);
      const auto a = classify(s);
      const auto b = classify_under_grouping(s, PartyGrouping::singletons(n));
      CHECK(a.s == b.s);
      CHECK(a.pair_distillable == b.pair_distillable);
      CHECK(a.bound_entangled == b.bound_entangled);
    }
}

TEST_CASE("grouped signature keeps exactly the compatible splittings") {
  std::mt19937_64 rng(34);
  for (int trial = 0; trial < 20; ++trial) {
    const auto ks = oracle::random_chain_set(rng, 5, 0.5);
    std::vector<std::uint8_t> bits(16, 0);
    for (auto k : ks) bits[k] = 1;
    const SVector s(5, bits);
    for (const auto& g : enumerate_groupings(5)) {
      if (g.n_groups() < 2) continue;
      const auto r = grouped_signature(s, g);
      std::size_t ones = 0;
      for (std::uint32_t k = 1; k < r.size(); ++k) ones += r[k];
      std::size_t expected = 0;
      for (const auto& p : splittings_compatible_with(g)) expected += s.at(p);
      CHECK(ones == expected);
    }
  }
}

TEST_CASE("a single group is trivially separable") {
  const auto c = classify_under_grouping(GhzDiagonalState::pure_ghz(3), PartyGrouping(3, {{1, 2, 3}}));
  CHECK(c.fully_separable);
  CHECK_FALSE(c.any_pair_distillable());
}
