#pragma once

// Certifying s_k from interval-valued measurements of the GHZ-basis
// populations and the |0..0><1..1| coherence, plus the fidelity bounds and
// white-noise robustness that follow from it.
//
// Interval arithmetic is plain endpoint arithmetic; nothing statistical.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ghzent/ghz_family.hpp"

namespace ghzent {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  Interval() = default;
  Interval(double lo_, double hi_) : lo(lo_), hi(hi_) {
    if (!(lo <= hi)) throw std::invalid_argument("interval lower bound exceeds upper bound");
  }
  static Interval point(double x) { return {x, x}; }

  double mid() const { return 0.5 * (lo + hi); }
  double width() const { return hi - lo; }
  bool contains(const Interval& o) const { return lo <= o.lo && o.hi <= hi; }
  bool operator==(const Interval&) const = default;
};

struct MeasuredCoefficients {
  int n_parties = 0;
  Interval lambda0_plus;
  Interval lambda0_minus;
  std::map<std::uint32_t, Interval> two_lambda;  // bounds on 2 lambda_k; absent means unknown
  std::optional<Interval> fidelity;

  // Bounds on 2 lambda_k, [0, 1] when unmeasured.
  Interval two_lambda_at(std::uint32_t k) const {
    const auto it = two_lambda.find(k);
    return it == two_lambda.end() ? Interval{0.0, 1.0} : it->second;
  }

  void validate() const {
    detail::check_party_count(n_parties);
    const auto in_unit = [](const Interval& i, const std::string& what) {
      if (i.lo < 0.0 || i.hi > 1.0) throw std::invalid_argument(what + " interval outside [0, 1]");
    };
    in_unit(lambda0_plus, "lambda0_plus");
    in_unit(lambda0_minus, "lambda0_minus");
    for (const auto& [k, i] : two_lambda) {
      if (k == 0 || k > detail::chain_mask(n_parties))
        throw std::invalid_argument("two_lambda index " + std::to_string(k) + " out of range");
      in_unit(i, "two_lambda");
    }
    if (fidelity) in_unit(*fidelity, "fidelity");
    double floor = lambda0_plus.lo + lambda0_minus.lo;
    for (const auto& [k, i] : two_lambda) floor += i.lo;
    if (floor > 1.0 + 1e-9) throw std::invalid_argument("lower bounds sum to more than 1");
  }
};

// Symmetric +- half-widths reported alongside point data.
struct Uncertainty {
  double lambda0_plus = 0.0;
  double lambda0_minus = 0.0;
  std::map<std::uint32_t, double> two_lambda;
  double fidelity = 0.0;

  bool empty() const {
    return lambda0_plus == 0.0 && lambda0_minus == 0.0 && two_lambda.empty() && fidelity == 0.0;
  }
};

// A published measurement: point bounds plus their quoted uncertainties.
struct MeasurementDataset {
  std::string name;
  std::string source;
  std::vector<std::string> notes;
  MeasuredCoefficients data;
  Uncertainty uncertainty;
};

inline Interval widen(const Interval& i, double by) {
  return {std::clamp(i.lo - by, 0.0, 1.0), std::clamp(i.hi + by, 0.0, 1.0)};
}

inline MeasuredCoefficients widen(const MeasuredCoefficients& m, const Uncertainty& u) {
  MeasuredCoefficients out = m;
  out.lambda0_plus = widen(m.lambda0_plus, u.lambda0_plus);
  out.lambda0_minus = widen(m.lambda0_minus, u.lambda0_minus);
  for (auto& [k, i] : out.two_lambda) {
    const auto it = u.two_lambda.find(k);
    if (it != u.two_lambda.end()) i = widen(i, it->second);
  }
  if (out.fidelity) out.fidelity = widen(*out.fidelity, u.fidelity);
  return out;
}

// Zero-width measurement of a family member.
inline MeasuredCoefficients point_measurement(const GhzDiagonalState& s) {
  MeasuredCoefficients m;
  m.n_parties = s.n_parties();
  m.lambda0_plus = Interval::point(s.lambda0_plus());
  m.lambda0_minus = Interval::point(s.lambda0_minus());
  for (std::uint32_t k = 1; k < s.lambdas().size(); ++k) m.two_lambda[k] = Interval::point(2.0 * s.lambda(k));
  m.fidelity = Interval::point(s.lambda0_plus());
  return m;
}

enum class Certification { certified_one, certified_zero, undetermined };

inline const char* to_string(Certification c) {
  switch (c) {
    case Certification::certified_one: return "certified-1";
    case Certification::certified_zero: return "certified-0";
    default: return "undetermined";
  }
}

struct DetectionVerdict {
  int n_parties = 0;
  Interval delta;
  std::vector<Certification> certified;  // indexed by k, slot 0 unused
  std::vector<double> margin;            // lo(Delta) - hi(2 lambda_k)
  bool entangled_certified = false;
  bool ghz_distillable_certified = false;
  std::vector<std::string> notes;
};

inline Interval delta_interval(const MeasuredCoefficients& m) {
  return {std::max(0.0, m.lambda0_plus.lo - m.lambda0_minus.hi), std::max(0.0, m.lambda0_plus.hi - m.lambda0_minus.lo)};
}

inline DetectionVerdict detect(const MeasuredCoefficients& m, const Tolerances& tol = {}) {
  m.validate();
  DetectionVerdict v;
  v.n_parties = m.n_parties;
  v.delta = delta_interval(m);
  const std::uint32_t slots = detail::chain_mask(m.n_parties) + 1;
  v.certified.assign(slots, Certification::undetermined);
  v.margin.assign(slots, 0.0);
  bool all_one = true;
  bool any_one = false;
  for (std::uint32_t k = 1; k < slots; ++k) {
    const Interval tl = m.two_lambda_at(k);
    v.margin[k] = v.delta.lo - tl.hi;
    if (s_bit(tl.hi / 2.0, v.delta.lo, tol)) {
      v.certified[k] = Certification::certified_one;
      any_one = true;
    } else {
      all_one = false;
      if (!s_bit(tl.lo / 2.0, v.delta.hi, tol)) v.certified[k] = Certification::certified_zero;
    }
  }
  v.entangled_certified = any_one;
  v.ghz_distillable_certified = all_one;
  if (v.delta.hi == 0.0) v.notes.push_back("no coherence between |0...0> and |1...1>: nothing can be certified");
  for (std::uint32_t k = 1; k < slots; ++k)
    if (!m.two_lambda.contains(k)) {
      v.notes.push_back("some 2 lambda_k were not measured and are bounded by [0, 1]");
      break;
    }
  return v;
}

// F > 1/2 certifies distillable entanglement whatever the shape of the state.
inline constexpr double fidelity_threshold_worst_case() { return 0.5; }

// Best-case shape: lambda0^+ = F, lambda0^- = 0, 2 lambda_k = (1-F)/(2^N-2).
// Every s_k = 1 iff the shape parameter F exceeds 1/(2^N-1).
inline double fidelity_threshold_best_case(int n_parties) {
  detail::check_party_count(n_parties);
  return 1.0 / (std::ldexp(1.0, n_parties) - 1.0);
}

// The shape above has trace (1+F)/2. After normalization its GHZ fidelity is
// 2F/(1+F), which at the threshold equals 2^{1-N}. No normalized family member
// with lambda0^+ <= 2^{1-N} is GHZ-distillable.
inline double fidelity_threshold_best_case_normalized(int n_parties) {
  detail::check_party_count(n_parties);
  return std::ldexp(1.0, 1 - n_parties);
}

// The best-case shape at parameter F, rescaled to unit trace. Rescaling
// leaves every s_k unchanged.
inline GhzDiagonalState best_case_extremal_state(int n_parties, double f) {
  detail::check_party_count(n_parties);
  if (f < 0.0 || f > 1.0) throw std::invalid_argument("fidelity must lie in [0, 1]");
  const double trace = 0.5 * (1.0 + f);
  const double each = (1.0 - f) / (2.0 * (std::ldexp(1.0, n_parties) - 2.0));
  return GhzDiagonalState(n_parties, f / trace, 0.0,
                          std::vector<double>(std::size_t{1} << (n_parties - 1), each / trace));
}

// <Psi_0^+|rho|Psi_0^+>
inline double ghz_fidelity(const DensityMatrix& rho) {
  const auto [z, o] = detail::ghz_pair_indices(rho.n_qubits(), 0);
  return 0.5 * (rho(z, z).real() + rho(o, o).real()) + rho(z, o).real();
}

// F(x) = x F0 + (1 - x) / 2^N for x rho + (1 - x) 1/2^N.
struct FidelityMap {
  int n_parties = 0;
  double f0 = 0.0;
  double at(double x) const { return x * f0 + (1.0 - x) * std::ldexp(1.0, -n_parties); }
};

struct WhiteNoiseAnalysis {
  // Infimum of the mixing weights x in (0, 1] for which every s_k is
  // (certified) 1; empty when no such x exists.
  std::optional<double> threshold;
  FidelityMap fidelity;
};

inline GhzDiagonalState mix_with_white_noise(const GhzDiagonalState& s, double x) {
  if (x < 0.0 || x > 1.0) throw std::invalid_argument("mixing weight must lie in [0, 1]");
  const double u = (1.0 - x) * std::ldexp(1.0, -s.n_parties());
  std::vector<double> lambda(s.lambdas().size());
  for (std::size_t k = 1; k < lambda.size(); ++k) lambda[k] = x * s.lambdas()[k] + u;
  return GhzDiagonalState(s.n_parties(), x * s.lambda0_plus() + u, x * s.lambda0_minus() + u, std::move(lambda));
}

inline WhiteNoiseAnalysis white_noise_analysis(const MeasuredCoefficients& m) {
  m.validate();
  const double u = std::ldexp(1.0, -m.n_parties);
  const Interval d = delta_interval(m);
  WhiteNoiseAnalysis out;
  out.fidelity.n_parties = m.n_parties;
  out.fidelity.f0 = m.fidelity ? m.fidelity->mid() : m.lambda0_plus.mid();
  // Certified at weight x iff x (lo(Delta)/2 - hi(2 lambda_k)/2 + u) > u for all k.
  double worst = 0.0;
  for (std::uint32_t k = 1; k <= detail::chain_mask(m.n_parties); ++k) {
    const double den = d.lo / 2.0 - m.two_lambda_at(k).hi / 2.0 + u;
    if (den <= 0.0) return out;
    worst = std::max(worst, u / den);
  }
  if (worst < 1.0) out.threshold = worst;
  return out;
}

inline WhiteNoiseAnalysis white_noise_analysis(const GhzDiagonalState& s) {
  return white_noise_analysis(point_measurement(s));
}

}  // namespace ghzent
