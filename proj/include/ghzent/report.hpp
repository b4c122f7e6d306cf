#pragma once

// Report documents shared by the command-line tools: a text rendering for
// people and a JSON rendering carrying the same fields.

#include <cinttypes>
#include <cstdint>
#include <cstdio>
#include <numeric>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "ghzent/activation.hpp"
#include "ghzent/classify.hpp"
#include "ghzent/detect.hpp"
#include "ghzent/molecules.hpp"

namespace ghzent {

using json = nlohmann::json;

inline std::string fixed(double x, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  std::string s = buf;
  if (s.starts_with("-") && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
  return s;
}

inline std::string fnv1a_digest(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "fnv1a64:%016" PRIx64, h);
  return buf;
}

struct ReportDocument {
  std::string command;
  std::string input_digest;
  std::vector<std::string> banners;
  std::vector<std::string> lines;
  json result = json::object();
  std::vector<std::string> notes;

  std::string text() const {
    std::string out = "command: " + command + "\n";
    if (!input_digest.empty()) out += "input: " + input_digest + "\n";
    for (const auto& b : banners) out += "*** " + b + " ***\n";
    out += "\n";
    for (const auto& l : lines) out += l + "\n";
    if (!notes.empty()) {
      out += "\nnotes:\n";
      for (const auto& n : notes) out += "  - " + n + "\n";
    }
    return out;
  }

  std::string machine() const {
    json j = {{"command", command}, {"banners", banners}, {"result", result}, {"notes", notes}};
    if (!input_digest.empty()) j["input_digest"] = input_digest;
    return j.dump(2) + "\n";
  }
};

// ---- classification ----

inline std::string unit_label(const EntanglementClassification& c, int u) {
  if (!c.grouping) return "A" + std::to_string(u);
  return "(" + render_party_set(c.grouping->group(static_cast<std::size_t>(u - 1))) + ")";
}

inline std::vector<std::pair<int, int>> distillable_pairs(const EntanglementClassification& c) {
  std::vector<std::pair<int, int>> out;
  for (int i = 1; i <= c.n_parties; ++i)
    for (int j = i + 1; j <= c.n_parties; ++j)
      if (c.pair_distillable[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]) out.emplace_back(i, j);
  return out;
}

inline std::string yes_no(bool b) { return b ? "YES" : "NO"; }

// Verdict lines, one per splitting, then the flag summary.
inline std::vector<std::string> classification_lines(const EntanglementClassification& c) {
  std::vector<std::string> out;
  const std::string half = fixed(c.delta / 2.0);
  for (std::uint32_t k = 1; k < c.verdicts.size(); ++k) {
    const BipartiteSplitting p(c.n_parties, k);
    const bool sep = c.verdicts[k] == Verdict::separable;
    out.push_back("P_" + p.bits() + ": " + to_string(c.verdicts[k]) + " (λ=" + fixed(c.lambda[k]) +
                  (sep ? " ≥ " : " < ") + "Δ/2=" + half + ")");
  }
  out.emplace_back();
  out.push_back("fully separable: " + yes_no(c.fully_separable));
  out.push_back(c.ghz_distillable ? "GHZ-distillable: YES, all s_k = 1" : "GHZ-distillable: NO");
  if (c.bound_entangled) out.push_back("BOUND ENTANGLED");
  std::string pairs;
  for (const auto& [i, j] : distillable_pairs(c))
    pairs += (pairs.empty() ? "" : ", ") + unit_label(c, i) + "-" + unit_label(c, j);
  out.push_back("distillable pairs: " + (pairs.empty() ? std::string("none") : pairs));
  return out;
}

inline json to_json(const EntanglementClassification& c) {
  json splittings = json::array();
  for (std::uint32_t k = 1; k < c.verdicts.size(); ++k)
    splittings.push_back({{"k", BipartiteSplitting(c.n_parties, k).bits()},
                          {"s", c.s[k] ? 1 : 0},
                          {"verdict", to_string(c.verdicts[k])},
                          {"lambda", c.lambda[k]}});
  json pairs = json::array();
  for (const auto& [i, j] : distillable_pairs(c)) pairs.push_back({unit_label(c, i), unit_label(c, j)});
  json j = {{"units", c.n_parties},
            {"delta", c.delta},
            {"splittings", std::move(splittings)},
            {"fully_separable", c.fully_separable},
            {"ghz_distillable", c.ghz_distillable},
            {"bound_entangled", c.bound_entangled},
            {"distillable_pairs", std::move(pairs)}};
  if (c.grouping) j["grouping"] = render(*c.grouping);
  return j;
}

// x with lambda0^- = lambda_k = (1-x)/2^N, i.e. GHZ mixed with white noise.
inline std::optional<double> white_noise_weight(const GhzDiagonalState& s, double tol = 1e-12) {
  const double u = s.lambda0_minus();
  for (std::uint32_t k = 1; k < s.lambdas().size(); ++k)
    if (std::abs(s.lambda(k) - u) > tol) return std::nullopt;
  return 1.0 - std::ldexp(u, s.n_parties());
}

inline std::string reduced_fraction(long long num, long long den) {
  const long long g = std::gcd(num, den);
  return std::to_string(num / g) + "/" + std::to_string(den / g);
}

// GHZ with white noise is GHZ-distillable iff x > 1/(2^{N-1}+1).
inline std::string white_noise_threshold_fraction(int n_parties) {
  return reduced_fraction(1, (1ll << (n_parties - 1)) + 1);
}

inline double white_noise_threshold(int n_parties) { return 1.0 / (std::ldexp(1.0, n_parties - 1) + 1.0); }

// The same threshold as a fidelity: 3/(2^N+2).
inline std::string white_noise_fidelity_fraction(int n_parties) {
  return reduced_fraction(3, (1ll << n_parties) + 2);
}

inline double white_noise_fidelity(int n_parties) { return 3.0 / (std::ldexp(1.0, n_parties) + 2.0); }

inline std::vector<std::string> state_header(const GhzDiagonalState& s) {
  return {"N = " + std::to_string(s.n_parties()) + ", λ0+ = " + fixed(s.lambda0_plus()) +
              ", λ0- = " + fixed(s.lambda0_minus()) + ", Δ = " + fixed(s.delta()),
          ""};
}

inline ReportDocument classification_report(const GhzDiagonalState& s, const EntanglementClassification& c) {
  ReportDocument r;
  r.lines = state_header(s);
  if (c.grouping) {
    r.lines.push_back("grouping " + render(*c.grouping) + ", reference group " +
                      unit_label(c, c.n_parties) + "; chains index the groups");
    r.lines.emplace_back();
  }
  for (auto& l : classification_lines(c)) r.lines.push_back(std::move(l));
  if (!c.grouping && !c.ghz_distillable) {
    if (const auto x = white_noise_weight(s); x && *x > 0.0)
      for (auto& l : r.lines)
        if (l == "GHZ-distillable: NO")
          l += " (x " + std::string(*x < white_noise_threshold(s.n_parties()) ? "<" : "=") + " " +
               white_noise_threshold_fraction(s.n_parties()) + ")";
  }
  r.result = to_json(c);
  r.result["lambda0_plus"] = s.lambda0_plus();
  r.result["lambda0_minus"] = s.lambda0_minus();
  if (s.sign_swapped()) r.notes.push_back("λ0+ < λ0- on input; the ± labels were swapped");
  return r;
}

// ---- detection ----

inline std::string render(const Interval& i, int digits = 4) {
  return "[" + fixed(i.lo, digits) + ", " + fixed(i.hi, digits) + "]";
}

inline json to_json(const Interval& i) { return json::array({i.lo, i.hi}); }

inline json to_json(const DetectionVerdict& v) {
  json ks = json::array();
  for (std::uint32_t k = 1; k < v.certified.size(); ++k)
    ks.push_back({{"k", BipartiteSplitting(v.n_parties, k).bits()},
                  {"certification", to_string(v.certified[k])},
                  {"margin", v.margin[k]}});
  return {{"delta", to_json(v.delta)},
          {"splittings", std::move(ks)},
          {"entangled_certified", v.entangled_certified},
          {"ghz_distillable_certified", v.ghz_distillable_certified},
          {"notes", v.notes}};
}

inline std::string pad(std::string s, std::size_t width) {
  // width counts code points so that λ and Δ line up
  std::size_t cps = 0;
  for (unsigned char c : s) cps += (c & 0xC0) != 0x80;
  if (cps < width) s.append(width - cps, ' ');
  return s;
}

inline ReportDocument detection_report(const MeasurementDataset& d, const Tolerances& tol = {}) {
  const auto& m = d.data;
  const DetectionVerdict point = detect(m, tol);
  const bool widened = !d.uncertainty.empty();
  const MeasuredCoefficients wide = widen(m, d.uncertainty);
  const DetectionVerdict err = detect(wide, tol);
  const int n = m.n_parties;

  ReportDocument r;
  if (!d.name.empty()) r.lines.push_back("dataset: " + d.name);
  r.lines.push_back("N = " + std::to_string(n));
  r.lines.push_back("λ0+ ∈ " + render(m.lambda0_plus) + ", λ0- ∈ " + render(m.lambda0_minus));
  const double du = d.uncertainty.lambda0_plus + d.uncertainty.lambda0_minus;
  if (point.delta.width() == 0.0)
    r.lines.push_back("Δ = " + fixed(point.delta.lo, 2) + " ± " + fixed(du, 2));
  else
    r.lines.push_back("Δ ∈ " + render(point.delta) + " ± " + fixed(du, 2));
  r.lines.emplace_back();
  std::string head = pad("k", n + 2) + pad("2λ_k bound", 20) + pad("margin", 10) + pad("point", 14);
  if (widened) head += "with uncertainties";
  r.lines.push_back(head);
  for (std::uint32_t k = 1; k < point.certified.size(); ++k) {
    const std::string bound = m.two_lambda.contains(k) ? render(m.two_lambda.at(k)) : "unmeasured";
    std::string line = pad(BipartiteSplitting(n, k).bits(), n + 2) + pad(bound, 20) +
                       pad(fixed(point.margin[k]), 10) + pad(to_string(point.certified[k]), 14);
    if (widened) line += to_string(err.certified[k]);
    r.lines.push_back(line);
  }
  bool all_undetermined = true;
  for (std::uint32_t k = 1; k < point.certified.size(); ++k)
    all_undetermined = all_undetermined && point.certified[k] == Certification::undetermined;
  if (all_undetermined) r.lines.push_back("undetermined for all k");
  r.lines.emplace_back();
  r.lines.push_back(std::to_string(n) + "-party GHZ-distillable (point values): " +
                    std::string(point.ghz_distillable_certified ? "CERTIFIED" : "not certified"));
  if (widened)
    r.lines.push_back(std::to_string(n) + "-party GHZ-distillable (with uncertainties): " +
                      std::string(err.ghz_distillable_certified ? "CERTIFIED" : "not certified"));
  r.lines.push_back("entanglement (point values): " +
                    std::string(point.entangled_certified ? "CERTIFIED" : "not certified"));

  json fidelity = json::object();
  if (m.fidelity) {
    const double f = m.fidelity->mid();
    const bool passes = m.fidelity->lo > fidelity_threshold_worst_case();
    std::string fl = "fidelity F = " + fixed(f, 2);
    if (d.uncertainty.fidelity > 0.0) fl += " ± " + fixed(d.uncertainty.fidelity, 2);
    r.lines.push_back(fl + ": worst-case test F > 1/2 " + (passes ? "PASSES" : "INCONCLUSIVE"));
    fidelity = {{"value", to_json(*m.fidelity)}, {"worst_case_test_passes", passes}};
  }
  r.lines.push_back("best-case fidelity bounds: F > " + reduced_fraction(1, (1ll << n) - 1) +
                    " (shape parameter), F > " + reduced_fraction(1, 1ll << (n - 1)) + " (normalized)");

  const auto noise_point = white_noise_analysis(m);
  const auto noise_err = white_noise_analysis(wide);
  auto noise_line = [&](const WhiteNoiseAnalysis& a, const std::string& label) {
    if (!a.threshold) return "white noise (" + label + "): not certified for any x";
    return "white noise (" + label + "): certified for x > " + fixed(*a.threshold, 5) + ", F(x) > " +
           fixed(a.fidelity.at(*a.threshold), 4);
  };
  r.lines.push_back(noise_line(noise_point, "point values"));
  if (widened) r.lines.push_back(noise_line(noise_err, "with uncertainties"));
  r.lines.push_back("F(x) = " + fixed(noise_point.fidelity.f0, 4) + " x + (1 - x)/" + std::to_string(1ll << n));

  auto noise_json = [](const WhiteNoiseAnalysis& a) {
    json j = {{"f0", a.fidelity.f0}};
    j["threshold"] = a.threshold ? json(*a.threshold) : json(nullptr);
    return j;
  };
  r.result = {{"n_parties", n},
              {"delta_uncertainty", du},
              {"point", to_json(point)},
              {"fidelity", fidelity},
              {"fidelity_best_case_threshold", fidelity_threshold_best_case(n)},
              {"fidelity_best_case_threshold_normalized", fidelity_threshold_best_case_normalized(n)},
              {"white_noise_point", noise_json(noise_point)}};
  if (widened) {
    r.result["with_uncertainties"] = to_json(err);
    r.result["white_noise_with_uncertainties"] = noise_json(noise_err);
  }
  if (!d.source.empty()) r.notes.push_back("source: " + d.source);
  for (const auto& n2 : d.notes) r.notes.push_back(n2);
  for (const auto& n2 : point.notes) r.notes.push_back(n2);
  return r;
}

// ---- molecules ----

inline ReportDocument molecule_report(const MoleculeSpec& spec, const MoleculeReport& rep) {
  ReportDocument r;
  r.lines.push_back("N = " + std::to_string(spec.n_parties()) + ", M = " + fixed(spec.normalization()));
  r.lines.emplace_back();
  r.lines.push_back(pad("pair", 7) + pad("in I", 6) + pad("min PT eig", 12) + pad("Bell F", 9) + pad("PPT test", 10) +
                    "conclusion");
  json pairs = json::array();
  for (const auto& v : rep.verdicts) {
    std::string conclusion;
    if (v.npt)
      conclusion = v.witness_conclusive ? "witness conclusive, PPT conclusive" : "witness inconclusive, PPT conclusive";
    else
      conclusion = "separable";
    r.lines.push_back(pad(v.pair.label(), 7) + pad(spec.has(v.pair) ? "yes" : "no", 6) +
                      pad(fixed(v.min_pt_eigenvalue, 6), 12) + pad(fixed(v.bell_fidelity, 4), 9) +
                      pad(v.npt ? "NPT" : "PPT", 10) + conclusion);
    pairs.push_back({{"pair", v.pair.label()},
                     {"in_configuration", spec.has(v.pair)},
                     {"npt", v.npt},
                     {"min_pt_eigenvalue", v.min_pt_eigenvalue},
                     {"bell_fidelity", v.bell_fidelity},
                     {"witness_conclusive", v.witness_conclusive}});
  }
  r.lines.emplace_back();
  std::string mism;
  for (const auto& p : rep.mismatches) mism += (mism.empty() ? "" : ", ") + p.label();
  r.lines.push_back("matches configuration: " + yes_no(rep.matches()) + (mism.empty() ? "" : " (mismatched: " + mism + ")"));
  json mj = json::array();
  for (const auto& p : rep.mismatches) mj.push_back(p.label());
  r.result = {{"n_parties", spec.n_parties()}, {"pairs", std::move(pairs)}, {"mismatches", std::move(mj)},
              {"matches", rep.matches()}};
  return r;
}

// ---- thresholds ----

inline ReportDocument thresholds_report(int n_parties) {
  detail::check_party_count(n_parties);
  const int n = n_parties;
  ReportDocument r;
  r.lines.push_back("N = " + std::to_string(n));
  r.lines.push_back("worst-case fidelity threshold: F > 1/2 = " + fixed(fidelity_threshold_worst_case()));
  r.lines.push_back("best-case fidelity threshold: F > " + reduced_fraction(1, (1ll << n) - 1) + " ≈ " +
                    fixed(fidelity_threshold_best_case(n)) + " (shape parameter)");
  r.lines.push_back("  same shape normalized to unit trace: F > " + reduced_fraction(1, 1ll << (n - 1)) + " ≈ " +
                    fixed(fidelity_threshold_best_case_normalized(n)));
  r.lines.push_back("white-noise GHZ: x > " + white_noise_threshold_fraction(n) + " ≈ " +
                    fixed(white_noise_threshold(n)) + ", i.e. F > " + white_noise_fidelity_fraction(n) + " ≈ " +
                    fixed(white_noise_fidelity(n)));
  r.result = {{"n_parties", n},
              {"worst_case", fidelity_threshold_worst_case()},
              {"best_case", fidelity_threshold_best_case(n)},
              {"best_case_normalized", fidelity_threshold_best_case_normalized(n)},
              {"white_noise_x", white_noise_threshold(n)},
              {"white_noise_fidelity", white_noise_fidelity(n)}};
  return r;
}

// ---- activation ----

inline std::string subset_label(const Scenario& sc, const std::vector<std::size_t>& members) {
  std::string s = "{";
  for (std::size_t i = 0; i < members.size(); ++i) s += (i ? "," : "") + sc.labels[members[i]];
  return s + "}";
}

inline ReportDocument activation_report(const Scenario& sc, const std::vector<SubsetOutcome>& outcomes,
                                        const std::vector<std::vector<PartyGrouping>>* groupings) {
  ReportDocument r;
  r.lines.push_back("N = " + std::to_string(sc.n_parties()) + ", " + std::to_string(sc.states.size()) + " states" +
                    (sc.grouping ? ", grouping " + render(*sc.grouping) : ""));
  r.lines.emplace_back();
  std::size_t w = 8;
  for (const auto& o : outcomes) w = std::max(w, subset_label(sc, o.members).size() + 2);
  r.lines.push_back(pad("mixture", w) + pad("separable", 11) + pad("GHZ", 5) + pad("bound", 7) + "distillable pairs");
  json rows = json::array();
  for (const auto& o : outcomes) {
    const auto& c = o.classification;
    std::string pairs;
    for (const auto& [i, j] : distillable_pairs(c))
      pairs += (pairs.empty() ? "" : ", ") + unit_label(c, i) + "-" + unit_label(c, j);
    r.lines.push_back(pad(subset_label(sc, o.members), w) + pad(yes_no(c.fully_separable), 11) +
                      pad(yes_no(c.ghz_distillable), 5) + pad(yes_no(c.bound_entangled), 7) +
                      (pairs.empty() ? "none" : pairs));
    json members = json::array();
    for (auto i : o.members) members.push_back(sc.labels[i]);
    rows.push_back({{"members", std::move(members)}, {"classification", to_json(c)}});
  }
  r.result = {{"n_parties", sc.n_parties()}, {"subsets", std::move(rows)}};
  r.notes.push_back("mixtures are uniform; copy counts are not modeled, each verdict is a property of the mixed state");
  if (groupings) {
    r.lines.emplace_back();
    r.lines.push_back("groupings under which a pair of groups can distill:");
    json gj = json::object();
    for (std::size_t i = 0; i < sc.states.size(); ++i) {
      const auto& gs = (*groupings)[i];
      std::string list;
      json arr = json::array();
      for (const auto& g : gs) {
        list += (list.empty() ? "" : " ") + render(g);
        arr.push_back(render(g));
      }
      r.lines.push_back("  " + sc.labels[i] + ": " + (list.empty() ? "none" : list));
      gj[sc.labels[i]] = std::move(arr);
    }
    r.result["activating_groupings"] = std::move(gj);
  }
  return r;
}

}  // namespace ghzent
