#pragma once

// Published measurement data shipped with the library. The same documents
// live in data/ and must stay byte-identical.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ghzent/io.hpp"

namespace ghzent::datasets {

inline constexpr std::string_view sackett2000_json = R"json({
  "fidelity": [
    0.57,
    0.57
  ],
  "lambda0_minus": [
    0.135,
    0.135
  ],
  "lambda0_plus": [
    0.565,
    0.565
  ],
  "n_parties": 4,
  "name": "sackett2000",
  "notes": [
    "Four trapped 9Be+ ions; qubit order follows the ion labels.",
    "lambda0+- = 0.35 +- 0.215: mean of the |0000>, |1111> populations plus/minus the real part of their coherence.",
    "The 2 lambda_k entries are worst-case upper bounds from the populations of the subspaces with j ions excited; only these subspace projections were published.",
    "Fidelity 0.57 +- 0.02 with the four-ion GHZ state."
  ],
  "source": "C. A. Sackett et al., Experimental entanglement of four particles, Nature 404, 256 (2000)",
  "two_lambda": {
    "001": [
      0.0,
      0.2
    ],
    "010": [
      0.0,
      0.2
    ],
    "011": [
      0.0,
      0.1
    ],
    "100": [
      0.0,
      0.2
    ],
    "101": [
      0.0,
      0.1
    ],
    "110": [
      0.0,
      0.1
    ],
    "111": [
      0.0,
      0.2
    ]
  },
  "uncertainty": {
    "fidelity": 0.02,
    "lambda0_minus": 0.01,
    "lambda0_plus": 0.01,
    "two_lambda": {
      "001": 0.04,
      "010": 0.04,
      "011": 0.02,
      "100": 0.04,
      "101": 0.02,
      "110": 0.02,
      "111": 0.04
    }
  }
}
)json";

inline constexpr std::string_view rauschenbeutel2000_json = R"json({
  "fidelity": [
    0.43,
    0.43
  ],
  "lambda0_minus": [
    0.1485,
    0.1485
  ],
  "lambda0_plus": [
    0.4285,
    0.4285
  ],
  "n_parties": 3,
  "name": "rauschenbeutel2000",
  "notes": [
    "Two Rydberg atoms and one cavity mode, mapped to qubits by |+_j> = |1>, |-_j> = -|0>.",
    "2 lambda_k read off the longitudinal correlations, which are the diagonal elements in the order 011, 010, 001, 000, 111, 110, 101, 100.",
    "The third population entry is tabulated under the label 01 a second time; it is read as 2 lambda_11 = 0.128.",
    "Delta = 2 V_perp = 0.28 +- 0.04 comes from the transverse correlations; lambda0+- are reconstructed as 0.2885 +- 0.14 so that the coefficients are normalized.",
    "The +-0.04 on Delta is split evenly between lambda0+ and lambda0-.",
    "Fidelity 0.43 without correcting for detection errors."
  ],
  "source": "A. Rauschenbeutel et al., Step-by-step engineered multiparticle entanglement, Science 288, 2024 (2000)",
  "two_lambda": {
    "01": [
      0.14,
      0.14
    ],
    "10": [
      0.155,
      0.155
    ],
    "11": [
      0.128,
      0.128
    ]
  },
  "uncertainty": {
    "fidelity": 0.0,
    "lambda0_minus": 0.02,
    "lambda0_plus": 0.02,
    "two_lambda": {
      "01": 0.04,
      "10": 0.04,
      "11": 0.04
    }
  }
}
)json";

inline std::vector<std::string> names() { return {"sackett2000", "rauschenbeutel2000"}; }

inline std::optional<std::string_view> text(const std::string& name) {
  if (name == "sackett2000") return sackett2000_json;
  if (name == "rauschenbeutel2000") return rauschenbeutel2000_json;
  return std::nullopt;
}

inline MeasurementDataset load(const std::string& name) {
  const auto t = text(name);
  if (!t) throw parse_error("no embedded dataset named '" + name + "'");
  return io::measured_from_json(io::parse_text(std::string(*t), name));
}

}  // namespace ghzent::datasets
