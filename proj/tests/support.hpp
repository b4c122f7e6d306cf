#pragma once

// Independent reference constructions used as oracles by the tests. They
// build everything from explicit bit strings rather than from the library's
// index helpers.

#include <cmath>
#include <complex>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "ghzent/ghzent.hpp"

namespace oracle {

using ghzent::ComplexMatrix;
using ghzent::complex;

// Bits of basis index i, qubit 1 first.
inline std::string bits_of(std::size_t i, int n) {
  std::string s(static_cast<std::size_t>(n), '0');
  for (int q = n - 1; q >= 0; --q, i >>= 1) s[static_cast<std::size_t>(q)] = (i & 1) ? '1' : '0';
  return s;
}

inline std::size_t index_of(const std::string& bits) { return std::stoul(bits, nullptr, 2); }

inline std::string flipped(std::string s) {
  for (char& c : s) c = c == '0' ? '1' : '0';
  return s;
}

// Dense rho from explicit projectors onto (|k0> +- |~k1>)/sqrt2.
inline ComplexMatrix family_matrix(const ghzent::GhzDiagonalState& s) {
  const int n = s.n_parties();
  const std::size_t dim = std::size_t{1} << n;
  ComplexMatrix m(dim);
  auto add_projector = [&](const std::string& chain, double sign, double w) {
    const std::size_t a = index_of(chain + "0");
    const std::size_t b = index_of(flipped(chain) + "1");
    m(a, a) += 0.5 * w;
    m(b, b) += 0.5 * w;
    m(a, b) += 0.5 * sign * w;
    m(b, a) += 0.5 * sign * w;
  };
  for (std::uint32_t k = 0; k < s.lambdas().size(); ++k) {
    const std::string chain = bits_of(k, n - 1);
    if (k == 0) {
      add_projector(chain, +1.0, s.lambda0_plus());
      add_projector(chain, -1.0, s.lambda0_minus());
    } else {
      add_projector(chain, +1.0, s.lambda(k));
      add_projector(chain, -1.0, s.lambda(k));
    }
  }
  return m;
}

// Partial transpose on the qubits listed in `which` (1-based), bit-string style.
inline ComplexMatrix partial_transpose(const ComplexMatrix& m, int n, const std::vector<int>& which) {
  ComplexMatrix out(m.dim());
  for (std::size_t r = 0; r < m.dim(); ++r)
    for (std::size_t c = 0; c < m.dim(); ++c) {
      std::string rb = bits_of(r, n), cb = bits_of(c, n);
      for (int q : which) std::swap(rb[static_cast<std::size_t>(q - 1)], cb[static_cast<std::size_t>(q - 1)]);
      out(index_of(rb), index_of(cb)) = m(r, c);
    }
  return out;
}

// Reduced state on `keep` (in that order).
inline ComplexMatrix partial_trace(const ComplexMatrix& m, int n, const std::vector<int>& keep) {
  const std::size_t kd = std::size_t{1} << keep.size();
  ComplexMatrix out(kd);
  for (std::size_t r = 0; r < m.dim(); ++r)
    for (std::size_t c = 0; c < m.dim(); ++c) {
      const std::string rb = bits_of(r, n), cb = bits_of(c, n);
      bool traced_equal = true;
      for (int q = 1; q <= n; ++q) {
        bool kept = false;
        for (int k : keep) kept = kept || k == q;
        if (!kept && rb[static_cast<std::size_t>(q - 1)] != cb[static_cast<std::size_t>(q - 1)]) traced_equal = false;
      }
      if (!traced_equal) continue;
      std::string rk, ck;
      for (int k : keep) {
        rk += rb[static_cast<std::size_t>(k - 1)];
        ck += cb[static_cast<std::size_t>(k - 1)];
      }
      out(index_of(rk), index_of(ck)) += m(r, c);
    }
  return out;
}

// Haar-ish random unitary by Gram-Schmidt on complex Gaussian columns.
inline ComplexMatrix random_unitary(std::mt19937_64& rng, std::size_t dim) {
  std::normal_distribution<double> g;
  std::vector<std::vector<complex>> cols(dim, std::vector<complex>(dim));
  for (auto& col : cols)
    for (auto& z : col) z = {g(rng), g(rng)};
  for (std::size_t j = 0; j < dim; ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      complex dot = 0.0;
      for (std::size_t r = 0; r < dim; ++r) dot += std::conj(cols[i][r]) * cols[j][r];
      for (std::size_t r = 0; r < dim; ++r) cols[j][r] -= dot * cols[i][r];
    }
    double norm = 0.0;
    for (auto& z : cols[j]) norm += std::norm(z);
    norm = std::sqrt(norm);
    for (auto& z : cols[j]) z /= norm;
  }
  ComplexMatrix u(dim);
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t c = 0; c < dim; ++c) u(r, c) = cols[c][r];
  return u;
}

inline std::vector<double> dirichlet(std::mt19937_64& rng, const std::vector<double>& alpha) {
  std::vector<double> x(alpha.size());
  double total = 0.0;
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    std::gamma_distribution<double> g(alpha[i], 1.0);
    x[i] = g(rng);
    total += x[i];
  }
  for (auto& v : x) v /= total;
  return x;
}

// Random family member: (lambda0+, lambda0-, 2 lambda_1, ...) ~ Dirichlet,
// with the GHZ weight boosted so that both signatures occur often.
inline ghzent::GhzDiagonalState random_family_member(std::mt19937_64& rng, int n) {
  const std::size_t slots = std::size_t{1} << (n - 1);
  std::vector<double> alpha(slots + 1, 1.0);
  alpha[0] = std::uniform_real_distribution<double>(0.5, 2.0 * static_cast<double>(slots))(rng);
  auto w = dirichlet(rng, alpha);
  if (w[0] < w[1]) std::swap(w[0], w[1]);
  std::vector<double> lambda(slots, 0.0);
  for (std::size_t k = 1; k < slots; ++k) lambda[k] = 0.5 * w[k + 1];
  return ghzent::GhzDiagonalState(n, w[0], w[1], std::move(lambda));
}

// Random subset of nontrivial chains, each included with probability p.
inline std::set<std::uint32_t> random_chain_set(std::mt19937_64& rng, int n, double p) {
  std::bernoulli_distribution coin(p);
  std::set<std::uint32_t> out;
  for (std::uint32_t k = 1; k <= ghzent::splitting_count(n); ++k)
    if (coin(rng)) out.insert(k);
  return out;
}

}  // namespace oracle
