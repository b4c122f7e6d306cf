#pragma once

// Separability and distillability of GHZ-diagonal states, decided from the
// s_k signature alone:
//   - P_k separable iff s_k = 0, distillable iff s_k = 1;
//   - l-separable w.r.t. a grouping iff every splitting containing it has s_k = 0;
//   - a MES between disjoint groups C and D is distillable iff every splitting
//     putting C and D on different sides has s_k = 1.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ghzent/ghz_family.hpp"
#include "ghzent/partitions.hpp"

namespace ghzent {

enum class Verdict { separable, distillable };

inline const char* to_string(Verdict v) { return v == Verdict::separable ? "SEPARABLE" : "DISTILLABLE"; }

struct EntanglementClassification {
  int n_parties = 0;  // number of units: parties, or groups for a grouped view
  SVector s;
  std::vector<Verdict> verdicts;  // indexed by k, slot 0 unused
  std::vector<double> lambda;     // lambda_k behind each verdict
  double delta = 0.0;
  bool fully_separable = false;
  bool ghz_distillable = false;
  bool bound_entangled = false;
  // pair_distillable[i][j] for units i, j in 1..n_parties
  std::vector<std::vector<bool>> pair_distillable;
  // Set for classify_under_grouping; units are the groups in order.
  std::optional<PartyGrouping> grouping;

  bool entangled() const { return !s.support().empty(); }
  bool any_pair_distillable() const {
    for (int i = 1; i <= n_parties; ++i)
      for (int j = i + 1; j <= n_parties; ++j)
        if (pair_distillable[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]) return true;
    return false;
  }
};

// ---- signature-level rules ----

inline bool can_distill_pair(const SVector& s, PartySet c, PartySet d) {
  for (const auto& p : splittings_separating(c, d, s.n_parties()))
    if (!s.at(p)) return false;
  return true;
}

inline bool is_l_separable(const SVector& s, const PartyGrouping& g) {
  if (g.n_parties() != s.n_parties()) throw std::invalid_argument("is_l_separable: party counts differ");
  for (const auto& p : splittings_compatible_with(g))
    if (s.at(p)) return false;
  return true;
}

inline bool can_distill_ghz(const SVector& s) { return s.all_one(); }

inline bool is_bound_entangled(const SVector& s) {
  if (s.all_zero()) return false;
  const int n = s.n_parties();
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      if (can_distill_pair(s, PartySet{i}, PartySet{j})) return false;
  return true;
}

namespace detail {

inline EntanglementClassification classify_signature(const SVector& s, std::vector<double> lambda, double delta) {
  EntanglementClassification c;
  const int n = s.n_parties();
  c.n_parties = n;
  c.s = s;
  c.lambda = std::move(lambda);
  c.delta = delta;
  c.verdicts.assign(s.size(), Verdict::separable);
  for (std::uint32_t k = 1; k < s.size(); ++k) c.verdicts[k] = s[k] ? Verdict::distillable : Verdict::separable;
  c.fully_separable = s.all_zero();
  c.ghz_distillable = s.all_one();
  c.pair_distillable.assign(static_cast<std::size_t>(n + 1), std::vector<bool>(static_cast<std::size_t>(n + 1), false));
  bool any_pair = false;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      const bool ok = can_distill_pair(s, PartySet{i}, PartySet{j});
      c.pair_distillable[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = ok;
      c.pair_distillable[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = ok;
      any_pair = any_pair || ok;
    }
  c.bound_entangled = !c.fully_separable && !any_pair;
  return c;
}

// The N-party splitting obtained by placing whole groups according to the
// group-level chain k (relative to the last group).
inline BipartiteSplitting lift_group_splitting(const PartyGrouping& g, std::uint32_t k) {
  const int l = g.n_groups();
  const int n = g.n_parties();
  PartySet b;
  for (int u = 1; u < l; ++u)
    if ((k >> (l - 1 - u)) & 1u) b = b | g.group(u - 1);
  if (b.contains(n)) b = PartySet::all(n).minus(b);
  return BipartiteSplitting::from_side_b(n, b);
}

}  // namespace detail

inline EntanglementClassification classify(const GhzDiagonalState& s, const Tolerances& tol = {}) {
  return detail::classify_signature(s_vector(s, tol), std::vector<double>(s.lambdas().begin(), s.lambdas().end()),
                                    s.delta());
}

inline bool is_l_separable(const GhzDiagonalState& s, const PartyGrouping& g, const Tolerances& tol = {}) {
  if (g.n_parties() != s.n_parties()) throw std::invalid_argument("is_l_separable: party counts differ");
  return is_l_separable(s_vector(s, tol), g);
}

inline bool can_distill_pair(const GhzDiagonalState& s, PartySet c, PartySet d, const Tolerances& tol = {}) {
  return can_distill_pair(s_vector(s, tol), c, d);
}

inline bool can_distill_ghz(const GhzDiagonalState& s, const Tolerances& tol = {}) {
  return can_distill_ghz(s_vector(s, tol));
}

inline bool is_bound_entangled(const GhzDiagonalState& s, const Tolerances& tol = {}) {
  return is_bound_entangled(s_vector(s, tol));
}

// The signature seen by l groups acting jointly: only splittings that keep
// each group whole remain, reindexed as l-unit chains with the last group
// as reference.
inline SVector grouped_signature(const SVector& s, const PartyGrouping& g) {
  if (g.n_parties() != s.n_parties()) throw std::invalid_argument("grouping party count differs from state");
  const int l = g.n_groups();
  std::vector<std::uint8_t> bits(std::size_t{1} << (l > 0 ? l - 1 : 0), 0);
  for (std::uint32_t k = 1; k < bits.size(); ++k) bits[k] = s.at(detail::lift_group_splitting(g, k)) ? 1 : 0;
  return SVector(l, std::move(bits));
}

// Classification with the parties of each group acting jointly. Units are
// the groups (unit u = g.group(u-1)). Group pairs are judged with the other
// groups as separate helpers.
inline EntanglementClassification classify_under_grouping(const GhzDiagonalState& s, const PartyGrouping& g,
                                                          const Tolerances& tol = {}) {
  if (g.n_parties() != s.n_parties()) throw std::invalid_argument("grouping party count differs from state");
  const int l = g.n_groups();
  if (l == 1) {
    EntanglementClassification c;
    c.n_parties = 1;
    c.s = SVector(1, {0});
    c.verdicts = {Verdict::separable};
    c.lambda = {0.0};
    c.delta = s.delta();
    c.fully_separable = true;
    c.pair_distillable.assign(2, std::vector<bool>(2, false));
    c.grouping = g;
    return c;
  }
  const SVector full = s_vector(s, tol);
  const SVector reduced = grouped_signature(full, g);
  std::vector<double> lambda(reduced.size(), 0.0);
  for (std::uint32_t k = 1; k < reduced.size(); ++k) lambda[k] = s.lambda(detail::lift_group_splitting(g, k).k());
  auto c = detail::classify_signature(reduced, std::move(lambda), s.delta());
  c.grouping = g;
  return c;
}

// Signature-only variant, used where no coefficients exist (large N checks).
inline EntanglementClassification classify_under_grouping(const SVector& s, const PartyGrouping& g) {
  if (g.n_groups() == 1) {
    EntanglementClassification c;
    c.n_parties = 1;
    c.s = SVector(1, {0});
    c.verdicts = {Verdict::separable};
    c.lambda = {0.0};
    c.fully_separable = true;
    c.pair_distillable.assign(2, std::vector<bool>(2, false));
    c.grouping = g;
    return c;
  }
  const SVector reduced = grouped_signature(s, g);
  auto c = detail::classify_signature(reduced, std::vector<double>(reduced.size(), 0.0), 0.0);
  c.grouping = g;
  return c;
}

}  // namespace ghzent
