#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace ghzent {

// Raised when a requested state would exceed the configured qubit budget.
class capacity_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input documents (files, datasets).
class parse_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kDefaultMaxQubits = 12;
// Hard ceiling for pure classification work, where nothing dense is built.
inline constexpr int kMaxParties = 24;

struct Tolerances {
  double psd = 1e-10;    // eigenvalues above -psd count as non-negative
  double herm = 1e-12;   // max |M - M^dagger| entrywise
  double trace = 1e-10;  // |tr rho - 1|, also coefficient normalization
  double coeff = 1e-12;  // absolute slack when comparing coefficients
};

// Set of parties (or qubits), numbered 1..N. Bit p-1 of the mask is party p.
class PartySet {
 public:
  constexpr PartySet() = default;
  constexpr explicit PartySet(std::uint32_t mask) : mask_(mask) {}
  PartySet(std::initializer_list<int> parties) {
    for (int p : parties) insert(p);
  }
  explicit PartySet(const std::vector<int>& parties) {
    for (int p : parties) insert(p);
  }

  static constexpr PartySet all(int n) {
    return PartySet(n >= 32 ? ~std::uint32_t{0} : (std::uint32_t{1} << n) - 1);
  }

  void insert(int party) {
    if (party < 1 || party > 32) throw std::invalid_argument("party index out of range: " + std::to_string(party));
    mask_ |= std::uint32_t{1} << (party - 1);
  }
  constexpr bool contains(int party) const {
    return party >= 1 && party <= 32 && ((mask_ >> (party - 1)) & 1u) != 0;
  }
  constexpr int size() const { return std::popcount(mask_); }
  constexpr bool empty() const { return mask_ == 0; }
  constexpr std::uint32_t mask() const { return mask_; }
  constexpr int max_party() const { return mask_ == 0 ? 0 : 32 - std::countl_zero(mask_); }

  constexpr bool subset_of(PartySet other) const { return (mask_ & ~other.mask_) == 0; }
  constexpr bool disjoint(PartySet other) const { return (mask_ & other.mask_) == 0; }

  std::vector<int> to_vector() const {
    std::vector<int> out;
    for (int p = 1; p <= 32; ++p)
      if (contains(p)) out.push_back(p);
    return out;
  }

  constexpr PartySet operator|(PartySet o) const { return PartySet(mask_ | o.mask_); }
  constexpr PartySet operator&(PartySet o) const { return PartySet(mask_ & o.mask_); }
  constexpr PartySet minus(PartySet o) const { return PartySet(mask_ & ~o.mask_); }
  constexpr bool operator==(const PartySet&) const = default;
  constexpr auto operator<=>(const PartySet&) const = default;

 private:
  std::uint32_t mask_ = 0;
};

}  // namespace ghzent
