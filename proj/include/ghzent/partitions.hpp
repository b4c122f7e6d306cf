#pragma once

// Bipartite splittings P_k and l-party groupings of N parties.
//
// A splitting is stored as an (N-1)-bit chain k = k_1 ... k_{N-1}, written
// most significant bit first. k_n = 1 means party n sits on the opposite side
// from party N. Side A always holds party N.

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ghzent/common.hpp"

namespace ghzent {

namespace detail {
inline void check_party_count(int n) {
  if (n < 2) throw std::invalid_argument("need at least 2 parties, got " + std::to_string(n));
  if (n > kMaxParties) throw capacity_error(std::to_string(n) + " parties exceeds the supported maximum");
}
}  // namespace detail

class BipartiteSplitting {
 public:
  BipartiteSplitting(int n_parties, std::uint32_t k) : n_(n_parties), k_(k) {
    detail::check_party_count(n_parties);
    if (k >= (std::uint32_t{1} << (n_parties - 1)))
      throw std::invalid_argument("bit chain " + std::to_string(k) + " too long for " + std::to_string(n_parties) +
                                  " parties");
  }

  // From a string such as "01" (length N-1).
  static BipartiteSplitting from_bits(const std::string& bits) {
    std::uint32_t k = 0;
    for (char c : bits) {
      if (c != '0' && c != '1') throw std::invalid_argument("invalid bit chain '" + bits + "'");
      k = (k << 1) | static_cast<std::uint32_t>(c - '0');
    }
    return BipartiteSplitting(static_cast<int>(bits.size()) + 1, k);
  }

  // The splitting whose B side (the side without party N) is `side_b`.
  static BipartiteSplitting from_side_b(int n_parties, PartySet side_b) {
    detail::check_party_count(n_parties);
    if (side_b.contains(n_parties) || side_b.max_party() > n_parties)
      throw std::invalid_argument("side B must be a subset of parties 1..N-1");
    std::uint32_t k = 0;
    for (int p : side_b.to_vector()) k |= std::uint32_t{1} << (n_parties - 1 - p);
    return BipartiteSplitting(n_parties, k);
  }

  int n_parties() const { return n_; }
  std::uint32_t k() const { return k_; }
  bool trivial() const { return k_ == 0; }

  // k_n for party n in 1..N-1; party N has no bit.
  int bit(int party) const { return static_cast<int>((k_ >> (n_ - 1 - party)) & 1u); }

  PartySet side_b() const {
    PartySet b;
    for (int p = 1; p < n_; ++p)
      if (bit(p)) b.insert(p);
    return b;
  }
  PartySet side_a() const { return PartySet::all(n_).minus(side_b()); }

  std::string bits() const {
    std::string s;
    for (int p = 1; p < n_; ++p) s += static_cast<char>('0' + bit(p));
    return s;
  }

  bool operator==(const BipartiteSplitting&) const = default;
  auto operator<=>(const BipartiteSplitting&) const = default;

 private:
  int n_;
  std::uint32_t k_;
};

inline std::uint32_t splitting_count(int n_parties) {
  detail::check_party_count(n_parties);
  return (std::uint32_t{1} << (n_parties - 1)) - 1;
}

struct Sides {
  PartySet a;  // contains party N
  PartySet b;
};

inline Sides sides_of(const BipartiteSplitting& p) {
  if (p.trivial()) throw std::invalid_argument("the all-zero chain does not split the parties into two groups");
  return {p.side_a(), p.side_b()};
}

// Partition of parties 1..N into nonempty disjoint groups.
class PartyGrouping {
 public:
  PartyGrouping(int n_parties, std::vector<PartySet> groups) : n_(n_parties), groups_(std::move(groups)) {
    if (n_parties < 1 || n_parties > kMaxParties) throw std::invalid_argument("invalid party count");
    PartySet covered;
    for (const auto& g : groups_) {
      if (g.empty()) throw std::invalid_argument("grouping contains an empty group");
      if (!g.disjoint(covered)) throw std::invalid_argument("grouping groups overlap");
      covered = covered | g;
    }
    if (covered != PartySet::all(n_parties)) throw std::invalid_argument("grouping does not cover parties 1..N");
  }

  static PartyGrouping singletons(int n_parties) {
    std::vector<PartySet> g;
    for (int p = 1; p <= n_parties; ++p) g.push_back(PartySet{p});
    return PartyGrouping(n_parties, std::move(g));
  }

  int n_parties() const { return n_; }
  int n_groups() const { return static_cast<int>(groups_.size()); }
  const std::vector<PartySet>& groups() const { return groups_; }
  const PartySet& group(int i) const { return groups_.at(static_cast<std::size_t>(i)); }

  // Index of the group holding `party`.
  int group_of(int party) const {
    for (std::size_t i = 0; i < groups_.size(); ++i)
      if (groups_[i].contains(party)) return static_cast<int>(i);
    throw std::invalid_argument("party " + std::to_string(party) + " not in grouping");
  }

  // True if every group of `finer` lies inside one group of this grouping.
  bool coarsens(const PartyGrouping& finer) const {
    if (finer.n_ != n_) return false;
    for (const auto& g : finer.groups_) {
      bool inside = false;
      for (const auto& h : groups_) inside = inside || g.subset_of(h);
      if (!inside) return false;
    }
    return true;
  }

  bool operator==(const PartyGrouping&) const = default;

 private:
  int n_;
  std::vector<PartySet> groups_;
};

inline std::string render_party_set(PartySet s) {
  std::string out;
  for (int p : s.to_vector()) out += "A" + std::to_string(p);
  return out;
}

// "(A1A3)-(A2)"
inline std::string render(const PartyGrouping& g) {
  std::string out;
  for (std::size_t i = 0; i < g.groups().size(); ++i) {
    if (i) out += "-";
    out += "(" + render_party_set(g.groups()[i]) + ")";
  }
  return out;
}

inline std::string render(const BipartiteSplitting& p) { return p.bits(); }

inline BipartiteSplitting splitting_from_groups(const PartyGrouping& g) {
  if (g.n_groups() != 2)
    throw std::invalid_argument("splitting_from_groups needs exactly 2 groups, got " + std::to_string(g.n_groups()));
  const int n = g.n_parties();
  const PartySet b = g.group(0).contains(n) ? g.group(1) : g.group(0);
  return BipartiteSplitting::from_side_b(n, b);
}

// Two-group grouping (A)-(B) for a nontrivial splitting.
inline PartyGrouping groups_of(const BipartiteSplitting& p) {
  const Sides s = sides_of(p);
  return PartyGrouping(p.n_parties(), {s.a, s.b});
}

inline std::vector<BipartiteSplitting> enumerate_splittings(int n_parties) {
  const std::uint32_t count = splitting_count(n_parties);
  std::vector<BipartiteSplitting> out;
  out.reserve(count);
  for (std::uint32_t k = 1; k <= count; ++k) out.emplace_back(n_parties, k);
  return out;
}

// Each group lies entirely on one side of p.
inline bool contains(const BipartiteSplitting& p, const PartyGrouping& s) {
  if (p.n_parties() != s.n_parties()) throw std::invalid_argument("contains: party counts differ");
  const PartySet b = p.side_b();
  const PartySet a = p.side_a();
  for (const auto& g : s.groups())
    if (!g.subset_of(a) && !g.subset_of(b)) return false;
  return true;
}

// Splittings with C and D on different sides; other parties are free.
inline std::vector<BipartiteSplitting> splittings_separating(PartySet c, PartySet d, int n_parties) {
  detail::check_party_count(n_parties);
  if (c.empty() || d.empty()) throw std::invalid_argument("splittings_separating: groups must be nonempty");
  if (!c.disjoint(d)) throw std::invalid_argument("splittings_separating: groups overlap");
  if (c.max_party() > n_parties || d.max_party() > n_parties)
    throw std::invalid_argument("splittings_separating: party index out of range");
  std::vector<BipartiteSplitting> out;
  for (const auto& p : enumerate_splittings(n_parties)) {
    const PartySet a = p.side_a(), b = p.side_b();
    if ((c.subset_of(a) && d.subset_of(b)) || (c.subset_of(b) && d.subset_of(a))) out.push_back(p);
  }
  return out;
}

inline std::vector<BipartiteSplitting> splittings_compatible_with(const PartyGrouping& g) {
  std::vector<BipartiteSplitting> out;
  if (g.n_parties() < 2) return out;
  for (const auto& p : enumerate_splittings(g.n_parties()))
    if (contains(p, g)) out.push_back(p);
  return out;
}

// All set partitions of {1..N} (Bell-number many), in restricted-growth
// order. Groups within a grouping are ordered by their smallest member.
inline std::vector<PartyGrouping> enumerate_groupings(int n_parties) {
  if (n_parties < 1 || n_parties > 12) throw std::invalid_argument("enumerate_groupings supports 1..12 parties");
  std::vector<PartyGrouping> out;
  std::vector<int> label(static_cast<std::size_t>(n_parties), 0);
  const auto emit = [&] {
    int groups = 0;
    for (int v : label) groups = std::max(groups, v + 1);
    std::vector<PartySet> sets(static_cast<std::size_t>(groups));
    for (int p = 0; p < n_parties; ++p) sets[static_cast<std::size_t>(label[static_cast<std::size_t>(p)])].insert(p + 1);
    out.emplace_back(n_parties, std::move(sets));
  };
  // label[0] = 0; label[i] <= 1 + max(label[0..i-1])
  while (true) {
    emit();
    int i = n_parties - 1;
    while (i > 0) {
      const auto ui = static_cast<std::size_t>(i);
      int prefix_max = 0;
      for (int j = 0; j < i; ++j) prefix_max = std::max(prefix_max, label[static_cast<std::size_t>(j)]);
      if (label[ui] <= prefix_max) {
        ++label[ui];
        for (int j = i + 1; j < n_parties; ++j) label[static_cast<std::size_t>(j)] = 0;
        break;
      }
      --i;
    }
    if (i == 0) break;
  }
  return out;
}

}  // namespace ghzent
