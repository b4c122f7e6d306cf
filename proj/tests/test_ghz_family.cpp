#include <cmath>
#include <random>

#include "catch_amalgamated.hpp"
#include "support.hpp"

using namespace ghzent;
using Catch::Matchers::WithinAbs;

TEST_CASE("GHZ basis vectors") {
  const auto v = ghz_basis_state("01", Sign::minus, 3);
  const double h = 1.0 / std::sqrt(2.0);
  CHECK_THAT(v[0b010].real(), WithinAbs(h, 1e-15));
  CHECK_THAT(v[0b101].real(), WithinAbs(-h, 1e-15));
  CHECK_THROWS_AS(ghz_basis_state("0", Sign::plus, 3), std::invalid_argument);

  for (int n = 2; n <= 4; ++n) {
    std::vector<StateVector> basis;
    for (std::uint32_t k = 0; k < (1u << (n - 1)); ++k)
      for (Sign s : {Sign::plus, Sign::minus}) basis.push_back(ghz_basis_state(n, k, s));
    for (std::size_t i = 0; i < basis.size(); ++i)
      for (std::size_t j = 0; j < basis.size(); ++j)
        CHECK_THAT(std::abs(basis[i].inner(basis[j])), WithinAbs(i == j ? 1.0 : 0.0, 1e-15));
  }
}

TEST_CASE("coefficient validation") {
  CHECK_THROWS_AS(GhzDiagonalState(3, 0.5, 0.0, {0.0, 0.1, 0.1, 0.1}), std::invalid_argument);
  CHECK_THROWS_AS(GhzDiagonalState(3, 0.2, 0.4, {0.0, 0.1, 0.1, 0.1}), std::invalid_argument);
  CHECK_THROWS_AS(GhzDiagonalState(3, 1.2, 0.0, {0.0, -0.1, 0.0, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(GhzDiagonalState(3, 1.0, 0.0, {0.0, 0.0}), std::invalid_argument);
  CHECK_NOTHROW(GhzDiagonalState::from_map(3, 1.0 / 3.0, 0.0, {{0b01, 1.0 / 6.0}, {0b11, 1.0 / 6.0}}));
  CHECK_THROWS_AS(GhzDiagonalState::from_map(3, 1.0, 0.0, {{4, 0.0}}), std::invalid_argument);
}

TEST_CASE("tripartite example matrix, elementwise") {
  // lambda0+ = 1/3, lambda_01 = lambda_11 = 1/6 (the rest 0)
  const auto s = GhzDiagonalState::from_map(3, 1.0 / 3.0, 0.0, {{0b01, 1.0 / 6.0}, {0b11, 1.0 / 6.0}});
  const auto rho = to_density_matrix(s);
  const double six = 1.0 / 6.0;
  // diagonal: |000>,|111> carry lambda0/2; |010>,|101> carry lambda_01; |110>,|001> carry lambda_11
  const double diag[8] = {six, six, six, 0.0, 0.0, six, six, six};
  for (std::size_t i = 0; i < 8; ++i) CHECK_THAT(rho(i, i).real(), WithinAbs(diag[i], 1e-15));
  CHECK_THAT(rho(0, 7).real(), WithinAbs(six, 1e-15));
  CHECK_THAT(rho(7, 0).real(), WithinAbs(six, 1e-15));
  CHECK(rho(1, 6) == complex(0.0));
  CHECK_THAT(min_eigenvalue(rho.matrix()), WithinAbs(0.0, 1e-12));
}

TEST_CASE("dense matrices agree with explicit projector sums") {
  std::mt19937_64 rng(21);
  for (int n : {2, 3, 4, 5}) {
    for (int trial = 0; trial < 10; ++trial) {
      const auto s = oracle::random_family_member(rng, n);
      CHECK(max_abs_diff(to_density_matrix(s).matrix(), oracle::family_matrix(s)) < 1e-15);
    }
  }
}

TEST_CASE("extraction inverts construction") {
  std::mt19937_64 rng(22);
  for (int n : {2, 3, 4, 5, 6}) {
    for (int trial = 0; trial < 10; ++trial) {
      const auto s = oracle::random_family_member(rng, n);
      const auto back = extract_coefficients(to_density_matrix(s));
      CHECK(back.approx_equal(s, 1e-14));
      CHECK_FALSE(back.sign_swapped());
    }
  }
}

TEST_CASE("extraction swaps signs when the minus sector dominates") {
  const auto minus = DensityMatrix::from_pure(ghz_basis_state(3, 0, Sign::minus));
  const auto s = extract_coefficients(minus);
  CHECK(s.sign_swapped());
  CHECK_THAT(s.lambda0_plus(), WithinAbs(1.0, 1e-15));
  CHECK_THAT(s.lambda0_minus(), WithinAbs(0.0, 1e-15));
}

TEST_CASE("depolarization of a product state") {
  // |0101> = |j 1> with j = 010 complemented, so it lands on lambda_101
  const auto rho = DensityMatrix::from_pure(basis_state(4, 0b0101));
  const auto s = depolarize(rho);
  for (std::uint32_t k = 1; k < 8; ++k) CHECK_THAT(s.lambda(k), WithinAbs(k == 0b101 ? 0.5 : 0.0, 1e-15));
  CHECK_THAT(s.lambda0_plus(), WithinAbs(0.0, 1e-15));
}

TEST_CASE("depolarization keeps lambda0 and 2 lambda_j of general states") {
  std::mt19937_64 rng(23);
  for (int n : {2, 3, 4}) {
    const std::size_t dim = std::size_t{1} << n;
    const auto u = oracle::random_unitary(rng, dim);
    const DensityMatrix rho(u * ComplexMatrix::diagonal(oracle::dirichlet(rng, std::vector<double>(dim, 1.0))) *
                            u.adjoint());
    const auto d = depolarized_matrix(rho);
    for (Sign sg : {Sign::plus, Sign::minus}) {
      const auto v = ghz_basis_state(n, 0, sg);
      CHECK_THAT(v.expectation(d.matrix()).real(), WithinAbs(v.expectation(rho.matrix()).real(), 1e-13));
    }
    for (std::uint32_t k = 1; k < (1u << (n - 1)); ++k) {
      const auto vp = ghz_basis_state(n, k, Sign::plus);
      const auto vm = ghz_basis_state(n, k, Sign::minus);
      const double before = (vp.expectation(rho.matrix()) + vm.expectation(rho.matrix())).real();
      const double after = (vp.expectation(d.matrix()) + vm.expectation(d.matrix())).real();
      CHECK_THAT(after, WithinAbs(before, 1e-13));
    }
    // idempotent
    CHECK(max_abs_diff(depolarized_matrix(d).matrix(), d.matrix()) < 1e-15);
  }
}

TEST_CASE("s-vector uses a strict inequality") {
  CHECK(s_bit(0.1, 0.3));
  CHECK_FALSE(s_bit(0.15, 0.3));
  CHECK_FALSE(s_bit(0.15 - 1e-13, 0.3));
  CHECK(s_bit(0.15 - 1e-11, 0.3));
  const auto s = s_vector(GhzDiagonalState::pure_ghz(4));
  CHECK(s.all_one());
  CHECK(s_vector(GhzDiagonalState::maximally_mixed(4)).all_zero());
}
