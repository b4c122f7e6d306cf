#pragma once

// Bound-entanglement activation with GHZ-diagonal states: the subfamily
// fixed by its inseparable set S, uniform mixing of such states, party
// relabeling, and the standard activation examples.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ghzent/classify.hpp"
#include "ghzent/ghz_family.hpp"
#include "ghzent/partitions.hpp"

namespace ghzent {

// The splittings a subfamily state should be inseparable on.
class InseparableSet {
 public:
  InseparableSet(int n_parties, std::set<std::uint32_t> ks) : n_(n_parties), ks_(std::move(ks)) {
    const std::uint32_t count = splitting_count(n_parties);
    for (auto k : ks_)
      if (k == 0 || k > count) throw std::invalid_argument("inseparable set holds invalid chain " + std::to_string(k));
  }

  static InseparableSet where(int n_parties, const std::function<bool(const BipartiteSplitting&)>& pred) {
    std::set<std::uint32_t> ks;
    for (const auto& p : enumerate_splittings(n_parties))
      if (pred(p)) ks.insert(p.k());
    return InseparableSet(n_parties, std::move(ks));
  }

  int n_parties() const { return n_; }
  const std::set<std::uint32_t>& splittings() const { return ks_; }
  bool contains(std::uint32_t k) const { return ks_.contains(k); }
  // Number of splittings left separable.
  std::uint32_t separable_count() const { return splitting_count(n_) - static_cast<std::uint32_t>(ks_.size()); }

 private:
  int n_;
  std::set<std::uint32_t> ks_;
};

// lambda0^+ = Delta = 1/(s+1), lambda0^- = 0, lambda_k = 0 on S and Delta/2
// off S, where s counts the separable splittings.
inline GhzDiagonalState subfamily_state(const InseparableSet& ins) {
  const std::uint32_t s = ins.separable_count();
  if (s == 0) throw std::invalid_argument("subfamily needs at least one separable splitting");
  const double delta = 1.0 / static_cast<double>(s + 1);
  std::vector<double> lambda(std::size_t{1} << (ins.n_parties() - 1), 0.0);
  for (std::uint32_t k = 1; k < lambda.size(); ++k) lambda[k] = ins.contains(k) ? 0.0 : delta / 2.0;
  return GhzDiagonalState(ins.n_parties(), delta, 0.0, std::move(lambda));
}

inline GhzDiagonalState mix_weighted(const std::vector<GhzDiagonalState>& states, const std::vector<double>& weights) {
  if (states.empty()) throw std::invalid_argument("mix needs at least one state");
  if (weights.size() != states.size()) throw std::invalid_argument("mix: one weight per state required");
  const int n = states.front().n_parties();
  double total = 0.0;
  for (double w : weights) {
    if (w < 0.0) throw std::invalid_argument("mix weights must be non-negative");
    total += w;
  }
  if (!(total > 0.0)) throw std::invalid_argument("mix weights sum to zero");
  double plus = 0.0, minus = 0.0;
  std::vector<double> lambda(states.front().lambdas().size(), 0.0);
  for (std::size_t j = 0; j < states.size(); ++j) {
    const auto& st = states[j];
    if (st.n_parties() != n) throw std::invalid_argument("mix: states have different party counts");
    const double w = weights[j] / total;
    plus += w * st.lambda0_plus();
    minus += w * st.lambda0_minus();
    for (std::size_t k = 1; k < lambda.size(); ++k) lambda[k] += w * st.lambdas()[k];
  }
  return GhzDiagonalState(n, plus, minus, std::move(lambda));
}

// Uniform mixture: pick one of the states at random.
inline GhzDiagonalState mix(const std::vector<GhzDiagonalState>& states) {
  return mix_weighted(states, std::vector<double>(states.size(), 1.0));
}

// perm[i-1] is the new label of party i.
inline std::vector<int> check_permutation(const std::vector<int>& perm, int n_parties) {
  if (static_cast<int>(perm.size()) != n_parties) throw std::invalid_argument("permutation has wrong length");
  std::vector<int> sorted = perm;
  std::sort(sorted.begin(), sorted.end());
  for (int i = 0; i < n_parties; ++i)
    if (sorted[static_cast<std::size_t>(i)] != i + 1) throw std::invalid_argument("not a permutation of 1..N");
  return perm;
}

inline BipartiteSplitting permute_splitting(const BipartiteSplitting& p, const std::vector<int>& perm) {
  const int n = p.n_parties();
  PartySet b;
  for (int q : p.side_b().to_vector()) b.insert(perm[static_cast<std::size_t>(q - 1)]);
  if (b.contains(n)) b = PartySet::all(n).minus(b);
  return BipartiteSplitting::from_side_b(n, b);
}

// Relabels qubits. A GHZ-basis vector keeps its +- sector under any
// relabeling (up to a global sign), so lambda0^+- stay put and each lambda_k
// moves to the image splitting.
inline GhzDiagonalState permute_parties(const GhzDiagonalState& s, const std::vector<int>& perm) {
  const int n = s.n_parties();
  check_permutation(perm, n);
  std::vector<double> lambda(s.lambdas().size(), 0.0);
  for (std::uint32_t k = 1; k < lambda.size(); ++k)
    lambda[permute_splitting(BipartiteSplitting(n, k), perm).k()] = s.lambda(k);
  return GhzDiagonalState(n, s.lambda0_plus(), s.lambda0_minus(), std::move(lambda));
}

// Inseparable exactly on the j-vs-(N-j) splittings.
inline GhzDiagonalState example_I_state(int n_parties, int j) {
  if (j < 1 || j >= n_parties) throw std::invalid_argument("example I needs 1 <= j < N");
  return subfamily_state(InseparableSet::where(n_parties, [&](const BipartiteSplitting& p) {
    const int b = p.side_b().size();
    return b == j || b == n_parties - j;
  }));
}

// Inseparable only on the splitting (A)-(rest).
inline GhzDiagonalState example_II_state(int n_parties, PartySet a) {
  if (a.empty() || a.max_party() > n_parties || a == PartySet::all(n_parties))
    throw std::invalid_argument("example II needs a proper nonempty party subset");
  const PartySet b = a.contains(n_parties) ? PartySet::all(n_parties).minus(a) : a;
  const auto target = BipartiteSplitting::from_side_b(n_parties, b);
  return subfamily_state(InseparableSet(n_parties, {target.k()}));
}

// Four parties, inseparable on (A1A2)-(A3A4), A1-rest and A2-rest.
inline GhzDiagonalState example_III_state() {
  constexpr int n = 4;
  return subfamily_state(InseparableSet(n, {BipartiteSplitting::from_side_b(n, {1, 2}).k(),
                                            BipartiteSplitting::from_side_b(n, {1}).k(),
                                            BipartiteSplitting::from_side_b(n, {2}).k()}));
}

// rho_k (k = 1..N/2) inseparable on every k-vs-(N-k) splitting.
inline std::vector<GhzDiagonalState> superactivation_example_1(int n_parties) {
  if (n_parties < 4 || n_parties % 2 != 0) throw std::invalid_argument("example 1 needs an even N >= 4");
  std::vector<GhzDiagonalState> out;
  for (int k = 1; k <= n_parties / 2; ++k) out.push_back(example_I_state(n_parties, k));
  return out;
}

// rho_l (l < N) inseparable where A_l and A_N are split, except A_l-rest and
// A_N-rest; the key state rho_N is inseparable on every 1-vs-(N-1) splitting.
// At N = 3 the rho_l carry no entanglement at all and the key state is GHZ itself.
inline std::vector<GhzDiagonalState> superactivation_example_2(int n_parties) {
  if (n_parties < 3) throw std::invalid_argument("example 2 needs N >= 3");
  const int n = n_parties;
  std::vector<GhzDiagonalState> out;
  for (int l = 1; l < n; ++l)
    out.push_back(subfamily_state(InseparableSet::where(n, [&](const BipartiteSplitting& p) {
      const PartySet b = p.side_b();
      return b.contains(l) && b.size() > 1 && b.size() < n - 1;
    })));
  const auto key = InseparableSet::where(n, [&](const BipartiteSplitting& p) {
    const int b = p.side_b().size();
    return b == 1 || b == n - 1;
  });
  // at N = 3 every splitting is 1-vs-2; the s = 0 limit of the same shape is pure GHZ
  out.push_back(key.separable_count() == 0 ? GhzDiagonalState::pure_ghz(n) : subfamily_state(key));
  return out;
}

// Collection of states shared by the same parties, optionally with a grouping.
struct Scenario {
  std::vector<std::string> labels;
  std::vector<GhzDiagonalState> states;
  std::optional<PartyGrouping> grouping;

  int n_parties() const { return states.empty() ? 0 : states.front().n_parties(); }
  void validate() const {
    if (states.empty()) throw std::invalid_argument("scenario lists no states");
    for (const auto& s : states)
      if (s.n_parties() != n_parties()) throw std::invalid_argument("scenario states have different party counts");
    if (grouping && grouping->n_parties() != n_parties())
      throw std::invalid_argument("scenario grouping does not match the party count");
    if (labels.size() != states.size()) throw std::invalid_argument("scenario needs one label per state");
  }
};

struct SubsetOutcome {
  std::vector<std::size_t> members;  // indices into Scenario::states
  EntanglementClassification classification;
};

// Classification of the uniform mixture of every nonempty subset of states,
// ordered by subset size, then lexicographically.
inline std::vector<SubsetOutcome> analyze_subsets(const Scenario& sc, const Tolerances& tol = {}) {
  sc.validate();
  const std::size_t count = sc.states.size();
  if (count > 16) throw std::invalid_argument("too many states for exhaustive subset enumeration");
  std::vector<std::vector<std::size_t>> subsets;
  for (std::uint32_t mask = 1; mask < (1u << count); ++mask) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < count; ++i)
      if (mask & (1u << i)) members.push_back(i);
    subsets.push_back(std::move(members));
  }
  std::stable_sort(subsets.begin(), subsets.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  std::vector<SubsetOutcome> out;
  for (auto& members : subsets) {
    std::vector<GhzDiagonalState> chosen;
    for (auto i : members) chosen.push_back(sc.states[i]);
    const auto mixed = mix(chosen);
    out.push_back({std::move(members), sc.grouping ? classify_under_grouping(mixed, *sc.grouping, tol)
                                                   : classify(mixed, tol)});
  }
  return out;
}

// Groupings (two or more groups) under which some pair of groups can distill.
inline std::vector<PartyGrouping> activating_groupings(const SVector& s) {
  std::vector<PartyGrouping> out;
  for (const auto& g : enumerate_groupings(s.n_parties())) {
    if (g.n_groups() < 2) continue;
    if (classify_under_grouping(s, g).any_pair_distillable()) out.push_back(g);
  }
  return out;
}

}  // namespace ghzent
