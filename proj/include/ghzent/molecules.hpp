#pragma once

// Entanglement molecules: rho_I = (1/M) sum_{kl in I} x_kl |Psi_kl><Psi_kl|
// where |Psi_kl> puts parties k, l in Psi+ and every other qubit in |0>.
// Each pair's reduced state is judged with the two-qubit PPT criterion and
// the Bell-fidelity witness.

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ghzent/qlinalg.hpp"

namespace ghzent {

struct PartyPair {
  int first = 0;
  int second = 0;

  PartyPair() = default;
  PartyPair(int a, int b) : first(std::min(a, b)), second(std::max(a, b)) {
    if (a == b) throw std::invalid_argument("a pair needs two distinct parties");
  }
  auto operator<=>(const PartyPair&) const = default;
  std::string label() const { return std::to_string(first) + "-" + std::to_string(second); }
};

class MoleculeSpec {
 public:
  // Weights default to 1 for pairs without an entry.
  MoleculeSpec(int n_parties, std::vector<PartyPair> pairs, std::map<PartyPair, double> weights = {})
      : n_(n_parties), pairs_(std::move(pairs)) {
    if (n_parties < 3) throw std::invalid_argument("a molecule needs at least 3 parties");
    if (pairs_.empty()) throw std::invalid_argument("molecule pair set is empty");
    std::sort(pairs_.begin(), pairs_.end());
    if (std::adjacent_find(pairs_.begin(), pairs_.end()) != pairs_.end())
      throw std::invalid_argument("molecule pair listed twice");
    for (const auto& p : pairs_) {
      if (p.first < 1 || p.second > n_parties)
        throw std::invalid_argument("pair " + p.label() + " out of range for " + std::to_string(n_parties) + " parties");
      const auto it = weights.find(p);
      const double w = it == weights.end() ? 1.0 : it->second;
      if (!(w > 0.0)) throw std::invalid_argument("weight of pair " + p.label() + " must be positive");
      weights_[p] = w;
    }
    for (const auto& [p, w] : weights)
      if (!std::binary_search(pairs_.begin(), pairs_.end(), p))
        throw std::invalid_argument("weight given for pair " + p.label() + " which is not in the molecule");
  }

  int n_parties() const { return n_; }
  const std::vector<PartyPair>& pairs() const { return pairs_; }
  double weight(const PartyPair& p) const { return weights_.at(p); }
  const std::map<PartyPair, double>& weights() const { return weights_; }
  double normalization() const {
    double m = 0.0;
    for (const auto& [p, w] : weights_) m += w;
    return m;
  }
  bool has(const PartyPair& p) const { return std::binary_search(pairs_.begin(), pairs_.end(), p); }

 private:
  int n_;
  std::vector<PartyPair> pairs_;
  std::map<PartyPair, double> weights_;
};

inline DensityMatrix molecule_state(const MoleculeSpec& spec, int max_qubits = kDefaultMaxQubits) {
  const int n = spec.n_parties();
  detail::check_qubit_budget(n, max_qubits);
  ComplexMatrix m(std::size_t{1} << n);
  const double norm = spec.normalization();
  for (const auto& p : spec.pairs()) {
    const double w = 0.5 * spec.weight(p) / norm;
    const std::size_t a = detail::qubit_bit(p.first, n);
    const std::size_t b = detail::qubit_bit(p.second, n);
    m(a, a) += w;
    m(b, b) += w;
    m(a, b) += w;
    m(b, a) += w;
  }
  return DensityMatrix(std::move(m), {}, Check::structural, max_qubits);
}

// Two-qubit reduced state, qubit order (k, l).
inline DensityMatrix reduced_pair(const DensityMatrix& rho, int k, int l) {
  if (k == l) throw std::invalid_argument("reduced_pair needs two distinct parties");
  const int keep[] = {k, l};
  return partial_trace(rho, keep);
}

struct PairVerdict {
  PartyPair pair;
  bool npt = false;
  double min_pt_eigenvalue = 0.0;
  double bell_fidelity = 0.0;
  bool witness_conclusive = false;
};

inline PairVerdict pair_verdict(const DensityMatrix& rho_kl, const Tolerances& tol = {}) {
  if (rho_kl.n_qubits() != 2) throw std::invalid_argument("pair_verdict expects a two-qubit state");
  PairVerdict v;
  v.min_pt_eigenvalue = min_pt_eigenvalue(rho_kl, PartySet{1});
  v.npt = v.min_pt_eigenvalue < -tol.psd;
  for (const auto& bell : bell_states()) v.bell_fidelity = std::max(v.bell_fidelity, bell.expectation(rho_kl.matrix()).real());
  v.witness_conclusive = v.bell_fidelity > 0.5 + tol.coeff;
  return v;
}

struct MoleculeReport {
  std::vector<PairVerdict> verdicts;     // every unordered pair, sorted
  std::vector<PartyPair> mismatches;     // npt disagrees with membership in I
  bool matches() const { return mismatches.empty(); }
};

inline MoleculeReport verify_molecule(const MoleculeSpec& spec, const Tolerances& tol = {},
                                      int max_qubits = kDefaultMaxQubits) {
  const DensityMatrix rho = molecule_state(spec, max_qubits);
  MoleculeReport r;
  for (int k = 1; k <= spec.n_parties(); ++k)
    for (int l = k + 1; l <= spec.n_parties(); ++l) {
      PairVerdict v = pair_verdict(reduced_pair(rho, k, l), tol);
      v.pair = PartyPair(k, l);
      if (v.npt != spec.has(v.pair)) r.mismatches.push_back(v.pair);
      r.verdicts.push_back(v);
    }
  return r;
}

}  // namespace ghzent
