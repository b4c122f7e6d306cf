#pragma once

// GHZ-diagonal N-qubit states
//
//   rho = sum_{s=+-} lambda0^s |Psi_0^s><Psi_0^s|
//       + sum_{k != 0} lambda_k (|Psi_k^+><Psi_k^+| + |Psi_k^-><Psi_k^-|)
//
// with |Psi_k^+-> = (|k_1..k_{N-1} 0> +- |~k_1..~k_{N-1} 1>) / sqrt(2).
// The chain k indexes the same bits as BipartiteSplitting, so lambda_k and
// the splitting P_k share an index.

#include <cmath>
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ghzent/common.hpp"
#include "ghzent/partitions.hpp"
#include "ghzent/qlinalg.hpp"

namespace ghzent {

enum class Sign { plus, minus };

namespace detail {

inline std::uint32_t chain_mask(int n_parties) { return (std::uint32_t{1} << (n_parties - 1)) - 1; }

// Basis indices of |k 0> and |~k 1>.
inline std::pair<std::size_t, std::size_t> ghz_pair_indices(int n_parties, std::uint32_t k) {
  const std::size_t lo = static_cast<std::size_t>(k) << 1;
  const std::size_t hi = (static_cast<std::size_t>(~k & chain_mask(n_parties)) << 1) | 1u;
  return {lo, hi};
}

}  // namespace detail

class GhzDiagonalState {
 public:
  // `lambda` has 2^{N-1} entries indexed by k; entry 0 is ignored and stored as 0.
  GhzDiagonalState(int n_parties, double lambda0_plus, double lambda0_minus, std::vector<double> lambda,
                   const Tolerances& tol = {})
      : n_(n_parties), plus_(lambda0_plus), minus_(lambda0_minus), lambda_(std::move(lambda)) {
    detail::check_party_count(n_parties);
    if (lambda_.size() != (std::size_t{1} << (n_parties - 1)))
      throw std::invalid_argument("expected " + std::to_string(std::size_t{1} << (n_parties - 1)) +
                                  " lambda slots for " + std::to_string(n_parties) + " parties");
    lambda_[0] = 0.0;
    validate(tol);
  }

  // Unlisted k default to 0.
  static GhzDiagonalState from_map(int n_parties, double lambda0_plus, double lambda0_minus,
                                   const std::map<std::uint32_t, double>& lambda, const Tolerances& tol = {}) {
    detail::check_party_count(n_parties);
    std::vector<double> v(std::size_t{1} << (n_parties - 1), 0.0);
    for (const auto& [k, value] : lambda) {
      if (k == 0 || k >= v.size()) throw std::invalid_argument("lambda index " + std::to_string(k) + " out of range");
      v[k] = value;
    }
    return GhzDiagonalState(n_parties, lambda0_plus, lambda0_minus, std::move(v), tol);
  }

  static GhzDiagonalState pure_ghz(int n_parties) {
    detail::check_party_count(n_parties);
    return GhzDiagonalState(n_parties, 1.0, 0.0, std::vector<double>(std::size_t{1} << (n_parties - 1), 0.0));
  }

  static GhzDiagonalState maximally_mixed(int n_parties) {
    detail::check_party_count(n_parties);
    const double w = std::ldexp(1.0, -n_parties);
    return GhzDiagonalState(n_parties, w, w, std::vector<double>(std::size_t{1} << (n_parties - 1), w));
  }

  int n_parties() const { return n_; }
  double lambda0_plus() const { return plus_; }
  double lambda0_minus() const { return minus_; }
  double lambda(std::uint32_t k) const { return lambda_.at(k); }
  std::span<const double> lambdas() const { return lambda_; }
  double delta() const { return plus_ - minus_; }

  // Set when extraction found lambda0^+ < lambda0^- and swapped the labels.
  bool sign_swapped() const { return swapped_; }
  GhzDiagonalState& mark_sign_swapped(bool v = true) {
    swapped_ = v;
    return *this;
  }

  double normalization() const {
    double s = plus_ + minus_;
    for (std::size_t k = 1; k < lambda_.size(); ++k) s += 2.0 * lambda_[k];
    return s;
  }

  bool approx_equal(const GhzDiagonalState& o, double tol) const {
    if (o.n_ != n_) return false;
    if (std::abs(o.plus_ - plus_) > tol || std::abs(o.minus_ - minus_) > tol) return false;
    for (std::size_t k = 1; k < lambda_.size(); ++k)
      if (std::abs(o.lambda_[k] - lambda_[k]) > tol) return false;
    return true;
  }

 private:
  void validate(const Tolerances& tol) const {
    if (plus_ < -tol.coeff || minus_ < -tol.coeff) throw std::invalid_argument("lambda0 coefficients must be >= 0");
    for (std::size_t k = 1; k < lambda_.size(); ++k)
      if (lambda_[k] < -tol.coeff) throw std::invalid_argument("lambda_" + std::to_string(k) + " must be >= 0");
    if (std::abs(normalization() - 1.0) > tol.trace)
      throw std::invalid_argument("coefficients violate normalization: lambda0+ + lambda0- + 2 sum lambda_k = " +
                                  std::to_string(normalization()));
    if (delta() < -tol.coeff) throw std::invalid_argument("labeling requires lambda0+ >= lambda0-");
  }

  int n_;
  double plus_;
  double minus_;
  std::vector<double> lambda_;
  bool swapped_ = false;
};

inline StateVector ghz_basis_state(int n_parties, std::uint32_t k, Sign sign, int max_qubits = kDefaultMaxQubits) {
  detail::check_party_count(n_parties);
  detail::check_qubit_budget(n_parties, max_qubits);
  if (k > detail::chain_mask(n_parties)) throw std::invalid_argument("bit chain too long for party count");
  const auto [lo, hi] = detail::ghz_pair_indices(n_parties, k);
  const double h = 1.0 / std::sqrt(2.0);
  std::vector<complex> amps(std::size_t{1} << n_parties);
  amps[lo] = h;
  amps[hi] = sign == Sign::plus ? h : -h;
  return StateVector(n_parties, std::move(amps));
}

inline StateVector ghz_basis_state(const std::string& chain, Sign sign, int n_parties,
                                   int max_qubits = kDefaultMaxQubits) {
  if (static_cast<int>(chain.size()) != n_parties - 1)
    throw std::invalid_argument("bit chain '" + chain + "' must have N-1 = " + std::to_string(n_parties - 1) +
                                " bits");
  return ghz_basis_state(n_parties, BipartiteSplitting::from_bits(chain).k(), sign, max_qubits);
}

// Dense X-shaped matrix of a family member.
inline DensityMatrix to_density_matrix(const GhzDiagonalState& s, int max_qubits = kDefaultMaxQubits) {
  const int n = s.n_parties();
  detail::check_qubit_budget(n, max_qubits);
  ComplexMatrix m(std::size_t{1} << n);
  const auto [z, o] = detail::ghz_pair_indices(n, 0);
  m(z, z) = m(o, o) = 0.5 * (s.lambda0_plus() + s.lambda0_minus());
  m(z, o) = m(o, z) = 0.5 * (s.lambda0_plus() - s.lambda0_minus());
  for (std::uint32_t k = 1; k < s.lambdas().size(); ++k) {
    const auto [lo, hi] = detail::ghz_pair_indices(n, k);
    m(lo, lo) = s.lambda(k);
    m(hi, hi) = s.lambda(k);
  }
  return DensityMatrix(std::move(m), {}, Check::structural, max_qubits);
}

// lambda0^+- = <Psi_0^+-|rho|Psi_0^+->, 2 lambda_j = <j0|rho|j0> + <~j1|rho|~j1>.
// Swaps the +- labels (and flags it) when needed to keep Delta >= 0.
inline GhzDiagonalState extract_coefficients(const DensityMatrix& rho, const Tolerances& tol = {}) {
  const int n = rho.n_qubits();
  detail::check_party_count(n);
  const auto [z, o] = detail::ghz_pair_indices(n, 0);
  const double pop = 0.5 * (rho(z, z).real() + rho(o, o).real());
  const double coh = rho(z, o).real();
  double plus = pop + coh;
  double minus = pop - coh;
  const bool swapped = plus < minus;
  if (swapped) std::swap(plus, minus);
  std::vector<double> lambda(std::size_t{1} << (n - 1), 0.0);
  for (std::uint32_t k = 1; k < lambda.size(); ++k) {
    const auto [lo, hi] = detail::ghz_pair_indices(n, k);
    lambda[k] = 0.5 * (rho(lo, lo).real() + rho(hi, hi).real());
  }
  GhzDiagonalState out(n, plus, minus, std::move(lambda), tol);
  out.mark_sign_swapped(swapped);
  return out;
}

// Effective projection onto the family: keeps lambda0^+- and 2 lambda_j.
inline GhzDiagonalState depolarize(const DensityMatrix& rho, const Tolerances& tol = {}) {
  return extract_coefficients(rho, tol);
}

// The projected state itself, with the +- labels of the input restored.
inline DensityMatrix depolarized_matrix(const DensityMatrix& rho, const Tolerances& tol = {}) {
  const GhzDiagonalState s = depolarize(rho, tol);
  if (!s.sign_swapped()) return to_density_matrix(s, rho.n_qubits());
  ComplexMatrix m = to_density_matrix(s, rho.n_qubits()).matrix();
  const auto [z, o] = detail::ghz_pair_indices(s.n_parties(), 0);
  m(z, o) = -m(z, o);
  m(o, z) = -m(o, z);
  return DensityMatrix(std::move(m), {}, Check::structural, rho.n_qubits());
}

inline double delta(const GhzDiagonalState& s) { return s.delta(); }

// s_k of each nontrivial splitting; index 0 unused.
class SVector {
 public:
  SVector() = default;
  SVector(int n_parties, std::vector<std::uint8_t> bits) : n_(n_parties), bits_(std::move(bits)) {
    if (bits_.size() != (std::size_t{1} << (n_parties - 1))) throw std::invalid_argument("SVector size mismatch");
    bits_[0] = 0;
  }

  int n_parties() const { return n_; }
  bool operator[](std::uint32_t k) const { return bits_.at(k) != 0; }
  bool at(const BipartiteSplitting& p) const { return (*this)[p.k()]; }
  std::uint32_t size() const { return static_cast<std::uint32_t>(bits_.size()); }

  bool all_one() const {
    for (std::size_t k = 1; k < bits_.size(); ++k)
      if (!bits_[k]) return false;
    return true;
  }
  bool all_zero() const {
    for (std::size_t k = 1; k < bits_.size(); ++k)
      if (bits_[k]) return false;
    return true;
  }
  std::vector<std::uint32_t> support() const {
    std::vector<std::uint32_t> out;
    for (std::uint32_t k = 1; k < bits_.size(); ++k)
      if (bits_[k]) out.push_back(k);
    return out;
  }

  bool operator==(const SVector&) const = default;

 private:
  int n_ = 0;
  std::vector<std::uint8_t> bits_;
};

// s_k = 1 iff lambda_k < Delta/2, strictly; equality (within tol.coeff) gives 0.
inline bool s_bit(double lambda_k, double delta, const Tolerances& tol = {}) {
  return delta / 2.0 - lambda_k > tol.coeff;
}

inline SVector s_vector(const GhzDiagonalState& s, const Tolerances& tol = {}) {
  std::vector<std::uint8_t> bits(s.lambdas().size(), 0);
  for (std::uint32_t k = 1; k < bits.size(); ++k) bits[k] = s_bit(s.lambda(k), s.delta(), tol) ? 1 : 0;
  return SVector(s.n_parties(), std::move(bits));
}

}  // namespace ghzent
