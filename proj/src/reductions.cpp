#include "consensus/reductions.hpp"

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <deque>
#include <sstream>

namespace consensus {

  ////////////////////////////////////////////////////////////////////////
  // CNF
  ////////////////////////////////////////////////////////////////////////

  CnfFormula::CnfFormula(std::size_t                       num_vars,
                         std::vector<std::vector<Literal>> clauses)
      : _num_vars(num_vars), _clauses(std::move(clauses)) {
    if (_num_vars == 0) {
      throw InvalidArgument("formula needs at least one variable");
    }
    if (_clauses.empty()) {
      throw InvalidArgument("formula needs at least one clause");
    }
    for (std::size_t c = 0; c < _clauses.size(); ++c) {
      if (_clauses[c].empty()) {
        throw InvalidArgument("clause " + std::to_string(c + 1) + " is empty");
      }
      for (auto const& lit : _clauses[c]) {
        if (lit.variable == 0 || lit.variable > _num_vars) {
          throw InvalidArgument("clause " + std::to_string(c + 1)
                                + " references variable "
                                + std::to_string(lit.variable));
        }
      }
    }
  }

  bool CnfFormula::satisfied_by(std::size_t clause,
                                std::size_t var,
                                bool        value) const {
    for (auto const& lit : _clauses.at(clause)) {
      if (lit.variable == var && lit.positive == value) {
        return true;
      }
    }
    return false;
  }

  std::string CnfFormula::to_dimacs() const {
    std::ostringstream out;
    out << "p cnf " << _num_vars << ' ' << _clauses.size() << '\n';
    for (auto const& clause : _clauses) {
      for (auto const& lit : clause) {
        out << (lit.positive ? "" : "-") << lit.variable << ' ';
      }
      out << "0\n";
    }
    return out.str();
  }

  DimacsError::DimacsError(Kind kind, std::size_t line, std::string const& detail)
      : std::runtime_error(std::string(to_string(kind)) + " at line "
                           + std::to_string(line) + ": " + detail),
        kind(kind),
        line(line) {}

  std::string_view to_string(DimacsError::Kind k) noexcept {
    switch (k) {
      case DimacsError::Kind::MalformedHeader:
        return "MalformedHeader";
      case DimacsError::Kind::LiteralOutOfRange:
        return "LiteralOutOfRange";
      case DimacsError::Kind::UnterminatedClause:
        return "UnterminatedClause";
      case DimacsError::Kind::EmptyClause:
        return "EmptyClause";
      case DimacsError::Kind::BadToken:
        return "BadToken";
    }
    return "?";
  }

  CnfFormula parse_dimacs(std::string_view text) {
    using Kind = DimacsError::Kind;

    std::istringstream                in{std::string(text)};
    std::string                       line;
    std::size_t                       lineno    = 0;
    bool                              have_head = false;
    long                              nvars = 0, nclauses = 0;
    std::vector<std::vector<Literal>> clauses;
    std::vector<Literal>              pending;

    while (std::getline(in, line)) {
      ++lineno;
      std::istringstream tokens(line);
      std::string        tok;
      if (!(tokens >> tok)) {
        continue;
      }
      if (tok == "c") {
        continue;
      }
      if (tok[0] == '%') {
        break;
      }
      if (tok == "p") {
        std::string fmt, extra;
        if (have_head) {
          throw DimacsError(Kind::MalformedHeader, lineno, "duplicate header");
        }
        if (!(tokens >> fmt >> nvars >> nclauses) || fmt != "cnf"
            || (tokens >> extra)) {
          throw DimacsError(
              Kind::MalformedHeader, lineno, "expected 'p cnf <vars> <clauses>'");
        }
        if (nvars < 1 || nclauses < 1) {
          throw DimacsError(Kind::MalformedHeader,
                            lineno,
                            "need at least one variable and one clause");
        }
        have_head = true;
        continue;
      }
      if (!have_head) {
        throw DimacsError(
            Kind::MalformedHeader, lineno, "clause data before 'p cnf' header");
      }
      do {
        long value     = 0;
        auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
        if (ec != std::errc() || ptr != tok.data() + tok.size()) {
          throw DimacsError(Kind::BadToken, lineno, "'" + tok + "'");
        }
        if (value == 0) {
          if (pending.empty()) {
            throw DimacsError(Kind::EmptyClause,
                              lineno,
                              "clause " + std::to_string(clauses.size() + 1));
          }
          clauses.push_back(std::move(pending));
          pending.clear();
          continue;
        }
        if (value > nvars || -value > nvars) {
          throw DimacsError(Kind::LiteralOutOfRange,
                            lineno,
                            "literal " + tok + " with " + std::to_string(nvars)
                                + " variables");
        }
        pending.push_back(Literal{static_cast<std::size_t>(value > 0 ? value : -value),
                                  value > 0});
      } while (tokens >> tok);
    }
    if (!have_head) {
      throw DimacsError(Kind::MalformedHeader, lineno, "missing 'p cnf' header");
    }
    if (!pending.empty()) {
      throw DimacsError(
          Kind::UnterminatedClause, lineno, "last clause lacks terminating 0");
    }
    if (static_cast<long>(clauses.size()) != nclauses) {
      throw DimacsError(Kind::MalformedHeader,
                        lineno,
                        "header declares " + std::to_string(nclauses)
                            + " clauses, found "
                            + std::to_string(clauses.size()));
    }
    return CnfFormula(static_cast<std::size_t>(nvars), std::move(clauses));
  }

  bool sat_oracle(CnfFormula const& f) {
    std::size_t const n = f.num_vars();
    if (n > 24) {
      throw InstanceTooLarge("sat_oracle: " + std::to_string(n)
                             + " variables, limit 24");
    }
    for (std::uint32_t assignment = 0; assignment < (std::uint32_t{1} << n);
         ++assignment) {
      bool all = true;
      for (auto const& clause : f.clauses()) {
        bool any = false;
        for (auto const& lit : clause) {
          bool value = (assignment >> (lit.variable - 1)) & 1U;
          if (value == lit.positive) {
            any = true;
            break;
          }
        }
        if (!any) {
          all = false;
          break;
        }
      }
      if (all) {
        return true;
      }
    }
    return false;
  }

  ////////////////////////////////////////////////////////////////////////
  // Labelled graphs
  ////////////////////////////////////////////////////////////////////////

  std::string NodeLabel::to_string(std::size_t num_vars) const {
    std::string out;
    switch (kind) {
      case Kind::Clause:
        out = "C(" + std::to_string(clause) + "," + std::to_string(variable)
              + ")";
        break;
      case Kind::Success:
        out = variable == num_vars + 1 ? "S"
                                       : "S(" + std::to_string(variable) + ")";
        break;
      case Kind::Fail:
        out = "F";
        break;
    }
    if (half == Half::Top) {
      out += 'T';
    } else if (half == Half::Bottom) {
      out += 'B';
    }
    if (copy == 1) {
      out += '\'';
    }
    return out;
  }

  LabeledDigraph::LabeledDigraph(std::vector<NodeLabel> nodes,
                                 std::size_t            num_vars,
                                 bool                   undirected)
      : _nodes(std::move(nodes)),
        _num_vars(num_vars),
        _undirected(undirected),
        _out(_nodes.size(), Support(_nodes.size())) {}

  std::vector<std::string> LabeledDigraph::label_strings() const {
    std::vector<std::string> out;
    out.reserve(_nodes.size());
    for (std::size_t v = 0; v < _nodes.size(); ++v) {
      out.push_back(label(v));
    }
    return out;
  }

  std::size_t LabeledDigraph::index_of(std::string_view name) const {
    for (std::size_t v = 0; v < _nodes.size(); ++v) {
      if (label(v) == name) {
        return v;
      }
    }
    // S(n+1) is also accepted under its long name.
    std::string const long_s = "S(" + std::to_string(_num_vars + 1) + ")";
    if (name.substr(0, long_s.size()) == long_s) {
      return index_of("S" + std::string(name.substr(long_s.size())));
    }
    throw InvalidArgument("unknown node label '" + std::string(name) + "'");
  }

  void LabeledDigraph::add_edge(std::size_t u, std::size_t v) {
    _out.at(u).insert(v);
    if (_undirected) {
      _out.at(v).insert(u);
    }
  }

  bool LabeledDigraph::has_edge(std::size_t u, std::size_t v) const {
    return _out.at(u).contains(v);
  }

  std::size_t LabeledDigraph::edge_count() const {
    std::size_t c = 0;
    for (auto const& s : _out) {
      c += s.count();
    }
    return c;
  }

  Pattern LabeledDigraph::to_pattern() const {
    return Pattern::from_supports(_out);
  }

  GraphSequencePath
  check_path_in_sequence(std::span<LabeledDigraph const> graphs,
                         std::size_t                     u,
                         std::size_t                     v) {
    GraphSequencePath result;
    if (u == v) {
      result.exists = true;
      return result;
    }
    if (graphs.empty()) {
      return result;
    }
    std::size_t const n = graphs.front().size();
    for (auto const& g : graphs) {
      if (g.size() != n) {
        throw DimensionMismatch("graph sequence over different node sets");
      }
    }
    if (u >= n || v >= n) {
      throw InvalidArgument("node index outside graph");
    }
    // parent[t][x]: predecessor of x at time t, n when unreached.
    std::size_t const                     none = n;
    std::vector<std::vector<std::size_t>> parent(
        graphs.size() + 1, std::vector<std::size_t>(n, none));
    std::vector<std::size_t> frontier{u};
    parent[0][u] = u;
    for (std::size_t t = 1; t <= graphs.size() && !frontier.empty(); ++t) {
      std::vector<std::size_t> next;
      for (auto x : frontier) {
        for (auto y : graphs[t - 1].out_neighbours()[x].members()) {
          if (parent[t][y] == none) {
            parent[t][y] = x;
            next.push_back(y);
          }
        }
      }
      if (parent[t][v] != none) {
        result.exists = true;
        std::size_t at = v;
        for (std::size_t s = t; s >= 1; --s) {
          result.path.push_back(PathStep{s, parent[s][at], at});
          at = parent[s][at];
        }
        std::reverse(result.path.begin(), result.path.end());
        return result;
      }
      frontier = std::move(next);
    }
    return result;
  }

  GraphSequencePath
  check_path_in_sequence(std::span<LabeledDigraph const> graphs,
                         std::string_view                u,
                         std::string_view                v) {
    if (graphs.empty()) {
      if (u == v) {
        return GraphSequencePath{true, {}};
      }
      return GraphSequencePath{};
    }
    return check_path_in_sequence(
        graphs, graphs.front().index_of(u), graphs.front().index_of(v));
  }

  ////////////////////////////////////////////////////////////////////////
  // Gadgets
  ////////////////////////////////////////////////////////////////////////

  namespace {

    // Index arithmetic for the shared node set of G_0(f), G_1(f).
    struct Grid {
      std::size_t m;
      std::size_t n;

      [[nodiscard]] std::size_t size() const {
        return (m + 1) * n + 1;
      }
      // C(i, j) for j in 1..n+1; C(i, n+1) = F.
      [[nodiscard]] std::size_t clause(std::size_t i, std::size_t j) const {
        return j == n + 1 ? fail() : (i - 1) * n + (j - 1);
      }
      // S(j) for j in 2..n+1.
      [[nodiscard]] std::size_t success(std::size_t j) const {
        return m * n + (j - 2);
      }
      [[nodiscard]] std::size_t fail() const {
        return m * n + n;
      }

      [[nodiscard]] std::vector<NodeLabel> labels(std::size_t copy = 0) const {
        std::vector<NodeLabel> out;
        out.reserve(size());
        for (std::size_t i = 1; i <= m; ++i) {
          for (std::size_t j = 1; j <= n; ++j) {
            out.push_back(NodeLabel{
                NodeLabel::Kind::Clause, i, j, NodeLabel::Half::None, copy});
          }
        }
        for (std::size_t j = 2; j <= n + 1; ++j) {
          out.push_back(NodeLabel{
              NodeLabel::Kind::Success, 0, j, NodeLabel::Half::None, copy});
        }
        out.push_back(
            NodeLabel{NodeLabel::Kind::Fail, 0, 0, NodeLabel::Half::None, copy});
        return out;
      }
    };

    LabeledDigraph sat_graph(CnfFormula const& f, bool value) {
      Grid const     grid{f.num_clauses(), f.num_vars()};
      LabeledDigraph g(grid.labels(), grid.n);
      for (std::size_t i = 1; i <= grid.m; ++i) {
        for (std::size_t j = 1; j <= grid.n; ++j) {
          if (f.satisfied_by(i - 1, j, value)) {
            g.add_edge(grid.clause(i, j), grid.success(j + 1));
          } else {
            g.add_edge(grid.clause(i, j), grid.clause(i, j + 1));
          }
        }
      }
      g.add_edge(grid.fail(), grid.fail());
      for (std::size_t j = 2; j <= grid.n; ++j) {
        g.add_edge(grid.success(j), grid.success(j + 1));
      }
      for (std::size_t i = 1; i <= grid.m; ++i) {
        g.add_edge(grid.success(grid.n + 1), grid.clause(i, 1));
      }
      return g;
    }

    LabeledDigraph doubled(LabeledDigraph const& base, Grid const& grid) {
      std::size_t const N = base.size();
      auto              labels = grid.labels(0);
      auto              second = grid.labels(1);
      labels.insert(labels.end(), second.begin(), second.end());
      LabeledDigraph g(std::move(labels), grid.n);
      for (std::size_t copy = 0; copy < 2; ++copy) {
        std::size_t const off = copy * N;
        for (std::size_t u = 0; u < N; ++u) {
          for (auto v : base.out_neighbours()[u].members()) {
            g.add_edge(off + u, off + v);
          }
        }
        for (std::size_t v = 0; v < N; ++v) {
          g.add_edge(off + grid.fail(), off + v);
        }
      }
      g.add_edge(grid.fail(), N + grid.fail());
      g.add_edge(N + grid.fail(), grid.fail());
      return g;
    }

    // Node layout of the split construction.
    struct Split {
      Grid        grid;
      std::size_t base;  // nodes of G other than F

      [[nodiscard]] std::size_t per_copy() const {
        return 2 * base + 1;
      }
      [[nodiscard]] std::size_t size() const {
        return 2 * per_copy();
      }
      [[nodiscard]] std::size_t fail(std::size_t copy) const {
        return copy * per_copy() + 2 * base;
      }
      [[nodiscard]] std::size_t top(std::size_t copy, std::size_t a) const {
        return a == grid.fail() ? fail(copy) : copy * per_copy() + 2 * a;
      }
      [[nodiscard]] std::size_t bottom(std::size_t copy, std::size_t a) const {
        return a == grid.fail() ? fail(copy) : copy * per_copy() + 2 * a + 1;
      }

      [[nodiscard]] std::vector<NodeLabel> labels() const {
        std::vector<NodeLabel> out;
        out.reserve(size());
        for (std::size_t copy = 0; copy < 2; ++copy) {
          auto plain = grid.labels(copy);
          for (std::size_t a = 0; a < base; ++a) {
            auto t = plain[a];
            t.half = NodeLabel::Half::Top;
            out.push_back(t);
            t.half = NodeLabel::Half::Bottom;
            out.push_back(t);
          }
          out.push_back(plain[grid.fail()]);
        }
        return out;
      }
    };

  }  // namespace

  std::pair<LabeledDigraph, LabeledDigraph>
  build_sat_graphs(CnfFormula const& f) {
    return {sat_graph(f, false), sat_graph(f, true)};
  }

  std::pair<StochasticMatrix, StochasticMatrix>
  build_sat_matrices(CnfFormula const& f) {
    auto [g0, g1] = build_sat_graphs(f);
    return {from_graph(g0.out_neighbours()), from_graph(g1.out_neighbours())};
  }

  std::pair<LabeledDigraph, LabeledDigraph>
  build_doubled_graphs(CnfFormula const& f) {
    Grid const grid{f.num_clauses(), f.num_vars()};
    auto [g0, g1] = build_sat_graphs(f);
    return {doubled(g0, grid), doubled(g1, grid)};
  }

  std::pair<StochasticMatrix, StochasticMatrix>
  build_doubled(CnfFormula const& f) {
    auto [d0, d1] = build_doubled_graphs(f);
    return {from_graph(d0.out_neighbours()), from_graph(d1.out_neighbours())};
  }

  std::vector<LabeledDigraph> build_undirected_graphs(CnfFormula const& f) {
    Grid const  grid{f.num_clauses(), f.num_vars()};
    Split const split{grid, grid.size() - 1};
    auto        directed = build_sat_graphs(f);

    std::vector<LabeledDigraph> out;
    for (std::size_t b = 0; b < 3; ++b) {
      out.emplace_back(split.labels(), grid.n, true);
    }
    for (std::size_t copy = 0; copy < 2; ++copy) {
      for (std::size_t b = 0; b < 2; ++b) {
        auto const& G = b == 0 ? directed.first : directed.second;
        auto&       g = out[b];
        for (std::size_t k = 0; k < grid.size(); ++k) {
          for (auto l : G.out_neighbours()[k].members()) {
            g.add_edge(split.top(copy, k), split.bottom(copy, l));
          }
        }
        for (std::size_t a = 0; a < split.base; ++a) {
          g.add_edge(split.bottom(copy, a), split.fail(copy));
        }
      }
      auto& g2 = out[2];
      for (std::size_t a = 0; a < split.base; ++a) {
        g2.add_edge(split.top(copy, a), split.bottom(copy, a));
        g2.add_edge(split.top(copy, a), split.fail(copy));
      }
      g2.add_edge(split.fail(copy), split.fail(copy));
    }
    for (auto& g : out) {
      g.add_edge(split.fail(0), split.fail(1));
    }
    return out;
  }

  std::vector<StochasticMatrix> build_undirected_triple(CnfFormula const& f) {
    std::vector<StochasticMatrix> out;
    for (auto const& g : build_undirected_graphs(f)) {
      out.push_back(from_graph(g.out_neighbours()));
    }
    return out;
  }

}  // namespace consensus
