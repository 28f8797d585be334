#pragma once

// SAT-to-consensus gadgets.
//
// For a CNF formula f with m clauses over n variables, G_0(f) and G_1(f)
// share the node set
//
//   C(i,j)  clause i in 1..m, variable j in 1..n   (row-major, index
//           (i-1)*n + (j-1))
//   S(j)    j in 2..n+1, index m*n + (j-2); S(n+1) is printed "S"
//   F       index m*n + n
//
// for (m+1)n+1 nodes.  C(i,n+1) denotes F.  In G_b, C(i,j) -> S(j+1) when
// setting x_j = b satisfies clause i, otherwise C(i,j) -> C(i,j+1).  Both
// graphs carry F -> F, S(j) -> S(j+1) and S -> C(i,1) for every i.
//
// The doubled variant places copy 0 (indices 0..N-1) before copy 1
// (indices N..2N-1, labels primed).  The undirected variant lists, per
// copy, each non-F node of G as a top/bottom pair (top first) in the order
// above, followed by that copy's F.

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "consensus/errors.hpp"
#include "consensus/pattern.hpp"
#include "consensus/stochastic.hpp"

namespace consensus {

  struct Literal {
    std::size_t variable;  // 1-based
    bool        positive;

    friend bool operator==(Literal const&, Literal const&) = default;
  };

  class CnfFormula {
   public:
    // Throws InvalidArgument unless num_vars >= 1, clauses nonempty, every
    // clause nonempty and every literal within 1..num_vars.
    CnfFormula(std::size_t num_vars, std::vector<std::vector<Literal>> clauses);

    [[nodiscard]] std::size_t num_vars() const noexcept {
      return _num_vars;
    }
    [[nodiscard]] std::size_t num_clauses() const noexcept {
      return _clauses.size();
    }
    [[nodiscard]] std::vector<std::vector<Literal>> const&
    clauses() const noexcept {
      return _clauses;
    }
    // Does x_var = value make clause (0-based) true?
    [[nodiscard]] bool satisfied_by(std::size_t clause,
                                    std::size_t var,
                                    bool        value) const;

    [[nodiscard]] std::string to_dimacs() const;

    friend bool operator==(CnfFormula const&, CnfFormula const&) = default;

   private:
    std::size_t                       _num_vars;
    std::vector<std::vector<Literal>> _clauses;
  };

  class DimacsError : public std::runtime_error {
   public:
    enum class Kind {
      MalformedHeader,
      LiteralOutOfRange,
      UnterminatedClause,
      EmptyClause,
      BadToken
    };

    DimacsError(Kind kind, std::size_t line, std::string const& detail);

    Kind        kind;
    std::size_t line;
  };

  std::string_view to_string(DimacsError::Kind k) noexcept;

  // "c" comment lines, one "p cnf <vars> <clauses>" header, clauses as
  // whitespace-separated literals terminated by 0 (possibly spanning
  // lines).  A "%" line ends the input.  Clause count must match header.
  CnfFormula parse_dimacs(std::string_view text);

  // Brute force over all 2^n assignments; throws InstanceTooLarge for
  // n > 24.  Shares no code with the gadget construction.
  bool sat_oracle(CnfFormula const& f);

  struct NodeLabel {
    enum class Kind { Clause, Success, Fail };
    enum class Half { None, Top, Bottom };

    Kind        kind;
    std::size_t clause   = 0;  // Clause only, 1-based
    std::size_t variable = 0;  // Clause / Success, 1-based
    Half        half     = Half::None;
    std::size_t copy     = 0;  // 0 or 1

    // "C(1,2)", "S(2)", "S", "F"; "T"/"B" appended for halves, "'" for
    // copy 1.  `num_vars` identifies S(n+1), printed as "S".
    [[nodiscard]] std::string to_string(std::size_t num_vars) const;

    friend bool operator==(NodeLabel const&, NodeLabel const&) = default;
  };

  class LabeledDigraph {
   public:
    LabeledDigraph(std::vector<NodeLabel> nodes,
                   std::size_t            num_vars,
                   bool                   undirected = false);

    [[nodiscard]] std::size_t size() const noexcept {
      return _nodes.size();
    }
    [[nodiscard]] bool undirected() const noexcept {
      return _undirected;
    }
    [[nodiscard]] std::vector<NodeLabel> const& nodes() const noexcept {
      return _nodes;
    }
    [[nodiscard]] std::vector<std::string> label_strings() const;
    [[nodiscard]] std::string              label(std::size_t v) const {
      return _nodes.at(v).to_string(_num_vars);
    }
    // Throws InvalidArgument for an unknown label.
    [[nodiscard]] std::size_t index_of(std::string_view label) const;

    // Adds u -> v, and v -> u when undirected.
    void               add_edge(std::size_t u, std::size_t v);
    [[nodiscard]] bool has_edge(std::size_t u, std::size_t v) const;
    [[nodiscard]] std::span<Support const> out_neighbours() const noexcept {
      return _out;
    }
    [[nodiscard]] std::size_t edge_count() const;
    // Throws InvalidArgument when some node has no out-edge.
    [[nodiscard]] Pattern to_pattern() const;

   private:
    std::vector<NodeLabel> _nodes;
    std::size_t            _num_vars;
    bool                   _undirected;
    std::vector<Support>   _out;
  };

  struct PathStep {
    std::size_t time;  // 1-based position in the graph sequence
    std::size_t from;
    std::size_t to;
  };

  struct GraphSequencePath {
    bool                  exists = false;
    std::vector<PathStep> path;
  };

  // Is there a time-respecting walk from u that reaches v, taking its t-th
  // edge from graphs[t-1]?  The walk may stop at any time <= graphs.size();
  // the empty walk connects u to itself.  Breadth-first over (time, node);
  // the reported path is a shortest one.
  GraphSequencePath
  check_path_in_sequence(std::span<LabeledDigraph const> graphs,
                         std::string_view                u,
                         std::string_view                v);
  GraphSequencePath
  check_path_in_sequence(std::span<LabeledDigraph const> graphs,
                         std::size_t                     u,
                         std::size_t                     v);

  std::pair<LabeledDigraph, LabeledDigraph> build_sat_graphs(CnfFormula const& f);
  std::pair<StochasticMatrix, StochasticMatrix>
  build_sat_matrices(CnfFormula const& f);

  // Two copies of each G_b, F -> every node of its copy, F <-> F'.
  std::pair<LabeledDigraph, LabeledDigraph>
  build_doubled_graphs(CnfFormula const& f);
  std::pair<StochasticMatrix, StochasticMatrix>
  build_doubled(CnfFormula const& f);

  // Undirected g_0, g_1, g_2 on 4(m+1)n+2 nodes.  Edge (k, l) of G_b gives
  // {k_T, l_B} in g_b, plus {x_B, F} for every bottom x; g_2 joins each
  // split pair {a_T, a_B}, loops at F, and {a_T, F} for every top a.  Each
  // graph is two copies joined by {F, F'}.
  std::vector<LabeledDigraph> build_undirected_graphs(CnfFormula const& f);
  std::vector<StochasticMatrix> build_undirected_triple(CnfFormula const& f);

}  // namespace consensus
