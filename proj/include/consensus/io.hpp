#pragma once

// File formats: matrix-set JSON, verdict reports, witness files, DOT.

#include <chrono>
#include <cstddef>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "consensus/decider.hpp"
#include "consensus/reductions.hpp"
#include "consensus/stochastic.hpp"

namespace consensus {

  // Parse or validation failure in an input document.  line/column are
  // 1-based and zero when the failure is not positional (e.g. a row sum).
  class DocumentError : public std::runtime_error {
   public:
    DocumentError(std::string const& what, std::size_t line, std::size_t column)
        : std::runtime_error(what), line(line), column(column) {}
    std::size_t line;
    std::size_t column;
  };

  // {
  //   "n": 5, "k": 2,
  //   "node_labels": ["A", ...],            optional
  //   "matrices": [[["0", "1/2", ...], ...], ...]
  // }
  // Entries are strings "p", "p/q" or decimal "0.25", or JSON integers.
  // JSON floating-point numbers are read through their shortest decimal
  // form, so 0.1 means 1/10.
  struct MatrixSetDocument {
    std::vector<StochasticMatrix>           matrices;
    std::optional<std::vector<std::string>> node_labels;

    [[nodiscard]] std::size_t n() const {
      return matrices.empty() ? 0 : matrices.front().size();
    }
    [[nodiscard]] std::size_t k() const {
      return matrices.size();
    }
    [[nodiscard]] std::string label(std::size_t i) const;

    friend bool operator==(MatrixSetDocument const&,
                           MatrixSetDocument const&) = default;
  };

  // Throws DocumentError; stochasticity violations keep their message
  // ("RowSumNotOne(0, 5/6)") prefixed by the matrix index.
  MatrixSetDocument parse_matrix_set(std::string_view text);
  std::string       serialize_matrix_set(MatrixSetDocument const& doc);

  // "sha256:<hex>" of serialize_matrix_set(doc).
  std::string input_digest(MatrixSetDocument const& doc);

  struct ReportContext {
    std::string               digest;
    std::chrono::microseconds elapsed{0};
  };

  // {
  //   "decision": "Consensus" | "NotConsensus",
  //   "algorithm": "PairAutomaton" | ...,
  //   "n": 5,
  //   "scrambling_index": 3,                 Consensus only
  //   "theorem_bound": "1024",               2^(2n) as a decimal string
  //   "theorem_bound_log2": 10,
  //   "witness": {"row_pair": [0, 4], "prefix": [], "cycle": [0, 1],
  //               "row_pair_labels": ["A", "E"]},   NotConsensus only
  //   "timings": {"decide_ms": 0.12},
  //   "input_digest": "sha256:..."
  // }
  nlohmann::json verdict_to_json(ConsensusVerdict const&  v,
                                 ReportContext const&     ctx,
                                 MatrixSetDocument const* doc = nullptr);
  ConsensusVerdict verdict_from_json(nlohmann::json const& j);

  nlohmann::json witness_to_json(NonConsensusWitness const& w);
  // Accepts a bare witness object or a report carrying "witness".  Throws
  // DocumentError.
  NonConsensusWitness witness_from_json(nlohmann::json const& j);

  // Colour classes: an edge in every graph is brown; an edge in exactly one
  // graph takes that graph's colour (0 blue, 1 red, 2 green, further graphs
  // black); other shared edges are brown.  Undirected inputs render as
  // "graph" with "--" and each edge once (u <= v).
  void write_dot(std::ostream&                   out,
                 std::span<LabeledDigraph const> graphs,
                 std::string_view                name = "gadget");

}  // namespace consensus
