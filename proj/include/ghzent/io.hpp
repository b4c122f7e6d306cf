#pragma once

// JSON documents for every input the tools consume. Schemas are described
// in docs/formats.md. Keys of splitting-indexed maps are bit chains of
// length N-1 ("01", "101").

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "ghzent/activation.hpp"
#include "ghzent/detect.hpp"
#include "ghzent/ghz_family.hpp"
#include "ghzent/molecules.hpp"
#include "ghzent/qlinalg.hpp"

namespace ghzent::io {

using json = nlohmann::json;

namespace detail {

[[noreturn]] inline void fail(const std::string& field, const std::string& what) {
  throw parse_error("field '" + field + "': " + what);
}

inline const json& require(const json& j, const std::string& key, const std::string& ctx = "") {
  if (!j.is_object()) fail(ctx.empty() ? "<root>" : ctx, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) fail(ctx.empty() ? key : ctx + "." + key, "missing");
  return *it;
}

inline double number(const json& j, const std::string& field) {
  if (!j.is_number()) fail(field, "expected a number");
  return j.get<double>();
}

inline int integer(const json& j, const std::string& field) {
  if (!j.is_number_integer()) fail(field, "expected an integer");
  return j.get<int>();
}

inline Interval interval(const json& j, const std::string& field) {
  if (!j.is_array() || j.size() != 2) fail(field, "expected a [lo, hi] pair");
  const double lo = number(j[0], field + "[0]");
  const double hi = number(j[1], field + "[1]");
  if (!(lo <= hi)) fail(field, "lower bound exceeds upper bound");
  return {lo, hi};
}

inline std::uint32_t chain_key(const std::string& key, int n_parties, const std::string& field) {
  if (static_cast<int>(key.size()) != n_parties - 1)
    fail(field + "." + key, "bit chain must have " + std::to_string(n_parties - 1) + " bits");
  std::uint32_t k = 0;
  for (char c : key) {
    if (c != '0' && c != '1') fail(field + "." + key, "not a bit chain");
    k = (k << 1) | static_cast<std::uint32_t>(c - '0');
  }
  if (k == 0) fail(field + "." + key, "the all-zero chain has no lambda");
  return k;
}

inline std::string chain_key(std::uint32_t k, int n_parties) { return BipartiteSplitting(n_parties, k).bits(); }

inline int party_count(const json& j, const std::string& key) {
  const int n = integer(require(j, key), key);
  if (n < 2 || n > kMaxParties) fail(key, "must lie in 2.." + std::to_string(kMaxParties));
  return n;
}

template <typename F>
auto validated(const std::string& what, F&& f) {
  try {
    return f();
  } catch (const parse_error&) {
    throw;
  } catch (const capacity_error&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(what + " violates an invariant: " + e.what());
  }
}

}  // namespace detail

inline json parse_text(const std::string& text, const std::string& origin = "<input>") {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw parse_error(origin + ": " + e.what());
  }
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw parse_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline json load_file(const std::filesystem::path& path) { return parse_text(read_file(path), path.string()); }

// Canonical serialization: sorted keys, two-space indent, trailing newline.
inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

// ---- density matrices ----

inline json to_json(const DensityMatrix& rho) {
  json entries = json::array();
  for (const auto& z : rho.matrix().entries()) entries.push_back({z.real(), z.imag()});
  return {{"n_qubits", rho.n_qubits()}, {"entries", std::move(entries)}};
}

inline DensityMatrix density_matrix_from_json(const json& j, const Tolerances& tol = {},
                                              int max_qubits = kDefaultMaxQubits) {
  const int n = detail::integer(detail::require(j, "n_qubits"), "n_qubits");
  if (n < 1) detail::fail("n_qubits", "must be positive");
  if (n > max_qubits)
    throw capacity_error(std::to_string(n) + " qubits exceeds the configured maximum of " + std::to_string(max_qubits));
  const json& e = detail::require(j, "entries");
  const std::size_t dim = std::size_t{1} << n;
  if (!e.is_array() || e.size() != dim * dim)
    detail::fail("entries", "expected " + std::to_string(dim * dim) + " [re, im] pairs");
  std::vector<complex> values;
  values.reserve(dim * dim);
  for (std::size_t i = 0; i < e.size(); ++i) {
    const std::string field = "entries[" + std::to_string(i) + "]";
    if (!e[i].is_array() || e[i].size() != 2) detail::fail(field, "expected an [re, im] pair");
    values.emplace_back(detail::number(e[i][0], field), detail::number(e[i][1], field));
  }
  return detail::validated("density matrix", [&] {
    return DensityMatrix(ComplexMatrix(dim, std::move(values)), tol, Check::full, max_qubits);
  });
}

// ---- GHZ-diagonal coefficients ----

inline json to_json(const GhzDiagonalState& s) {
  json lambdas = json::object();
  for (std::uint32_t k = 1; k < s.lambdas().size(); ++k)
    if (s.lambda(k) != 0.0) lambdas[detail::chain_key(k, s.n_parties())] = s.lambda(k);
  return {{"n_parties", s.n_parties()},
          {"lambda0_plus", s.lambda0_plus()},
          {"lambda0_minus", s.lambda0_minus()},
          {"lambdas", std::move(lambdas)}};
}

inline GhzDiagonalState coefficients_from_json(const json& j, const Tolerances& tol = {}) {
  const int n = detail::party_count(j, "n_parties");
  const double plus = detail::number(detail::require(j, "lambda0_plus"), "lambda0_plus");
  const double minus = detail::number(detail::require(j, "lambda0_minus"), "lambda0_minus");
  std::map<std::uint32_t, double> lambda;
  if (j.contains("lambdas")) {
    const json& l = j["lambdas"];
    if (!l.is_object()) detail::fail("lambdas", "expected an object keyed by bit chains");
    for (const auto& [key, value] : l.items())
      lambda[detail::chain_key(key, n, "lambdas")] = detail::number(value, "lambdas." + key);
  }
  return detail::validated("coefficient state", [&] { return GhzDiagonalState::from_map(n, plus, minus, lambda, tol); });
}

// ---- measured coefficients ----

inline json interval_json(const Interval& i) { return json::array({i.lo, i.hi}); }

inline json to_json(const MeasurementDataset& d) {
  const auto& m = d.data;
  json two = json::object();
  for (const auto& [k, i] : m.two_lambda) two[detail::chain_key(k, m.n_parties)] = interval_json(i);
  json j = {{"n_parties", m.n_parties},
            {"lambda0_plus", interval_json(m.lambda0_plus)},
            {"lambda0_minus", interval_json(m.lambda0_minus)},
            {"two_lambda", std::move(two)}};
  if (m.fidelity) j["fidelity"] = interval_json(*m.fidelity);
  if (!d.name.empty()) j["name"] = d.name;
  if (!d.source.empty()) j["source"] = d.source;
  if (!d.notes.empty()) j["notes"] = d.notes;
  if (!d.uncertainty.empty()) {
    const auto& u = d.uncertainty;
    json ut = json::object();
    for (const auto& [k, e] : u.two_lambda) ut[detail::chain_key(k, m.n_parties)] = e;
    j["uncertainty"] = {{"lambda0_plus", u.lambda0_plus},
                        {"lambda0_minus", u.lambda0_minus},
                        {"two_lambda", std::move(ut)},
                        {"fidelity", u.fidelity}};
  }
  return j;
}

inline MeasurementDataset measured_from_json(const json& j) {
  MeasurementDataset d;
  auto& m = d.data;
  m.n_parties = detail::party_count(j, "n_parties");
  m.lambda0_plus = detail::interval(detail::require(j, "lambda0_plus"), "lambda0_plus");
  m.lambda0_minus = detail::interval(detail::require(j, "lambda0_minus"), "lambda0_minus");
  if (j.contains("two_lambda")) {
    const json& t = j["two_lambda"];
    if (!t.is_object()) detail::fail("two_lambda", "expected an object keyed by bit chains");
    for (const auto& [key, value] : t.items())
      m.two_lambda[detail::chain_key(key, m.n_parties, "two_lambda")] = detail::interval(value, "two_lambda." + key);
  }
  if (j.contains("fidelity")) m.fidelity = detail::interval(j["fidelity"], "fidelity");
  if (j.contains("name")) {
    if (!j["name"].is_string()) detail::fail("name", "expected a string");
    d.name = j["name"].get<std::string>();
  }
  if (j.contains("source")) {
    if (!j["source"].is_string()) detail::fail("source", "expected a string");
    d.source = j["source"].get<std::string>();
  }
  if (j.contains("notes")) {
    if (!j["notes"].is_array()) detail::fail("notes", "expected a list of strings");
    for (const auto& n : j["notes"]) {
      if (!n.is_string()) detail::fail("notes", "expected a list of strings");
      d.notes.push_back(n.get<std::string>());
    }
  }
  if (j.contains("uncertainty")) {
    const json& u = j["uncertainty"];
    auto opt = [&](const char* key) {
      return u.contains(key) ? detail::number(u[key], std::string("uncertainty.") + key) : 0.0;
    };
    d.uncertainty.lambda0_plus = opt("lambda0_plus");
    d.uncertainty.lambda0_minus = opt("lambda0_minus");
    d.uncertainty.fidelity = opt("fidelity");
    if (u.contains("two_lambda")) {
      if (!u["two_lambda"].is_object()) detail::fail("uncertainty.two_lambda", "expected an object");
      for (const auto& [key, value] : u["two_lambda"].items())
        d.uncertainty.two_lambda[detail::chain_key(key, m.n_parties, "uncertainty.two_lambda")] =
            detail::number(value, "uncertainty.two_lambda." + key);
    }
  }
  detail::validated("measured coefficients", [&] {
    m.validate();
    return 0;
  });
  return d;
}

// ---- molecule specs ----

inline json to_json(const MoleculeSpec& spec) {
  json pairs = json::array();
  json weights = json::object();
  for (const auto& p : spec.pairs()) {
    pairs.push_back({p.first, p.second});
    if (spec.weight(p) != 1.0) weights[p.label()] = spec.weight(p);
  }
  json j = {{"n_parties", spec.n_parties()}, {"pairs", std::move(pairs)}};
  if (!weights.empty()) j["weights"] = std::move(weights);
  return j;
}

inline MoleculeSpec molecule_from_json(const json& j) {
  const int n = detail::party_count(j, "n_parties");
  const json& p = detail::require(j, "pairs");
  if (!p.is_array()) detail::fail("pairs", "expected a list of [k, l] pairs");
  std::vector<PartyPair> pairs;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const std::string field = "pairs[" + std::to_string(i) + "]";
    if (!p[i].is_array() || p[i].size() != 2) detail::fail(field, "expected a [k, l] pair");
    const int a = detail::integer(p[i][0], field);
    const int b = detail::integer(p[i][1], field);
    pairs.push_back(detail::validated("pair", [&] { return PartyPair(a, b); }));
  }
  std::map<PartyPair, double> weights;
  if (j.contains("weights")) {
    const json& w = j["weights"];
    if (!w.is_object()) detail::fail("weights", "expected an object keyed by \"k-l\"");
    for (const auto& [key, value] : w.items()) {
      const auto dash = key.find('-');
      if (dash == std::string::npos) detail::fail("weights." + key, "key must look like \"k-l\"");
      int a = 0, b = 0;
      try {
        a = std::stoi(key.substr(0, dash));
        b = std::stoi(key.substr(dash + 1));
      } catch (const std::exception&) {
        detail::fail("weights." + key, "key must look like \"k-l\"");
      }
      weights[detail::validated("pair", [&] { return PartyPair(a, b); })] = detail::number(value, "weights." + key);
    }
  }
  return detail::validated("molecule spec", [&] { return MoleculeSpec(n, std::move(pairs), std::move(weights)); });
}

// ---- groupings and scenarios ----

inline PartyGrouping grouping_from_json(const json& j, int n_parties, const std::string& field = "grouping") {
  if (!j.is_array()) detail::fail(field, "expected a list of party lists");
  std::vector<PartySet> groups;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string f = field + "[" + std::to_string(i) + "]";
    if (!j[i].is_array()) detail::fail(f, "expected a list of party indices");
    PartySet g;
    for (const auto& p : j[i]) {
      const int party = detail::integer(p, f);
      if (party < 1 || party > n_parties) detail::fail(f, "party index out of range");
      g.insert(party);
    }
    groups.push_back(g);
  }
  return detail::validated("grouping", [&] { return PartyGrouping(n_parties, std::move(groups)); });
}

inline json to_json(const PartyGrouping& g) {
  json out = json::array();
  for (const auto& grp : g.groups()) out.push_back(grp.to_vector());
  return out;
}

// "states" entries are inline coefficient documents or paths to them,
// resolved relative to `base_dir`.
inline Scenario scenario_from_json(const json& j, const std::filesystem::path& base_dir = {},
                                   const Tolerances& tol = {}) {
  Scenario sc;
  const json& st = detail::require(j, "states");
  if (!st.is_array() || st.empty()) detail::fail("states", "expected a nonempty list");
  for (std::size_t i = 0; i < st.size(); ++i) {
    const std::string field = "states[" + std::to_string(i) + "]";
    if (st[i].is_string()) {
      const auto path = base_dir / st[i].get<std::string>();
      sc.states.push_back(coefficients_from_json(load_file(path), tol));
      sc.labels.push_back(path.filename().string());
    } else if (st[i].is_object()) {
      try {
        sc.states.push_back(coefficients_from_json(st[i], tol));
      } catch (const parse_error& e) {
        throw parse_error(field + ": " + e.what());
      }
      sc.labels.push_back(st[i].contains("label") && st[i]["label"].is_string() ? st[i]["label"].get<std::string>()
                                                                                : "rho" + std::to_string(i + 1));
    } else {
      detail::fail(field, "expected a coefficient document or a file path");
    }
  }
  if (j.contains("grouping")) sc.grouping = grouping_from_json(j["grouping"], sc.states.front().n_parties());
  detail::validated("scenario", [&] {
    sc.validate();
    return 0;
  });
  return sc;
}

inline json to_json(const Scenario& sc) {
  json states = json::array();
  for (std::size_t i = 0; i < sc.states.size(); ++i) {
    json s = to_json(sc.states[i]);
    s["label"] = sc.labels[i];
    states.push_back(std::move(s));
  }
  json j = {{"states", std::move(states)}};
  if (sc.grouping) j["grouping"] = to_json(*sc.grouping);
  return j;
}

}  // namespace ghzent::io
