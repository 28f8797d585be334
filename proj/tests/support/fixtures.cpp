#include "fixtures.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#ifndef CONSENSUS_DATA_DIR
#define CONSENSUS_DATA_DIR "data"
#endif

namespace fixtures {

  using consensus::CnfFormula;
  using consensus::Literal;
  using consensus::Pattern;
  using consensus::Rational;
  using consensus::StochasticMatrix;

  StochasticMatrix matrix(std::vector<std::vector<std::string>> const& rows) {
    std::vector<std::vector<Rational>> out;
    for (auto const& r : rows) {
      out.emplace_back();
      for (auto const& s : r) {
        out.back().push_back(Rational::parse(s));
      }
    }
    return StochasticMatrix::validate(std::move(out));
  }

  namespace {
    StochasticMatrix undirected(std::vector<std::pair<int, int>> const& edges,
                                std::vector<int> const&             loops) {
      std::vector<std::vector<int>> adj(5, std::vector<int>(5, 0));
      for (auto [a, b] : edges) {
        adj[a][b] = adj[b][a] = 1;
      }
      for (int v : loops) {
        adj[v][v] = 1;
      }
      return consensus::from_graph(Pattern::from_rows(adj));
    }

    constexpr int A = 0, B = 1, C = 2, D = 3, E = 4;
  }  // namespace

  std::vector<StochasticMatrix> figure1() {
    return {undirected({{A, B}, {B, C}, {C, D}, {D, E}}, {C}),
            undirected({{A, B}, {A, C}, {C, E}, {D, E}}, {C})};
  }

  std::vector<StochasticMatrix> figure2() {
    return {undirected({{A, B}, {B, C}, {C, D}, {D, E}}, {C, E}),
            undirected({{A, B}, {A, C}, {C, E}, {D, E}}, {C, E})};
  }

  std::string data_path(std::string const& name) {
    return std::string(CONSENSUS_DATA_DIR) + "/" + name;
  }

  std::string read_text(std::string const& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
      throw std::runtime_error("cannot open " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
  }

  std::size_t uniform(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
    return lo + static_cast<std::size_t>(rng() % (hi - lo + 1));
  }

  CnfFormula random_cnf(std::mt19937_64& rng,
                        std::size_t      n,
                        std::size_t      m,
                        std::size_t      width) {
    std::vector<std::vector<Literal>> clauses;
    std::vector<std::size_t>          vars(n);
    std::iota(vars.begin(), vars.end(), 1);
    for (std::size_t c = 0; c < m; ++c) {
      for (std::size_t i = 0; i + 1 < n; ++i) {
        std::swap(vars[i], vars[uniform(rng, i, n - 1)]);
      }
      std::vector<Literal> clause;
      for (std::size_t i = 0; i < std::min(width, n); ++i) {
        clause.push_back({vars[i], rng() % 2 == 0});
      }
      clauses.push_back(std::move(clause));
    }
    return CnfFormula(n, std::move(clauses));
  }

  std::vector<CnfFormula>
  all_small_cnfs(std::size_t n, std::size_t m, std::size_t max_width) {
    // A clause is a set of literals over distinct variables: per variable
    // absent / positive / negative.
    std::vector<std::vector<Literal>> clauses;
    std::size_t                       codes = 1;
    for (std::size_t v = 0; v < n; ++v) {
      codes *= 3;
    }
    for (std::size_t code = 1; code < codes; ++code) {
      std::vector<Literal> clause;
      std::size_t          c = code;
      for (std::size_t v = 1; v <= n; ++v, c /= 3) {
        if (c % 3 != 0) {
          clause.push_back({v, c % 3 == 1});
        }
      }
      if (clause.size() <= max_width) {
        clauses.push_back(std::move(clause));
      }
    }
    std::vector<CnfFormula> out;
    // Nondecreasing clause indices: each multiset once.
    std::vector<std::size_t> pick(m, 0);
    while (true) {
      std::vector<std::vector<Literal>> chosen;
      for (auto i : pick) {
        chosen.push_back(clauses[i]);
      }
      out.emplace_back(n, std::move(chosen));
      std::size_t pos = m;
      while (pos > 0 && pick[pos - 1] + 1 == clauses.size()) {
        --pos;
      }
      if (pos == 0) {
        break;
      }
      ++pick[pos - 1];
      for (std::size_t i = pos; i < m; ++i) {
        pick[i] = pick[pos - 1];
      }
    }
    return out;
  }

  Pattern random_pattern(std::mt19937_64& rng, std::size_t n, double density) {
    auto const threshold
        = static_cast<std::uint64_t>(density * 1024.0);
    std::vector<std::vector<int>> rows(n, std::vector<int>(n, 0));
    for (auto& row : rows) {
      for (auto& x : row) {
        x = (rng() % 1024) < threshold ? 1 : 0;
      }
      if (std::find(row.begin(), row.end(), 1) == row.end()) {
        row[uniform(rng, 0, n - 1)] = 1;
      }
    }
    return Pattern::from_rows(rows);
  }

  std::vector<Pattern> random_pattern_set(std::mt19937_64& rng,
                                          std::size_t      n,
                                          std::size_t      k,
                                          double           density) {
    std::vector<Pattern> out;
    for (std::size_t i = 0; i < k; ++i) {
      out.push_back(random_pattern(rng, n, density));
    }
    return out;
  }

  StochasticMatrix realize(std::mt19937_64& rng, Pattern const& p) {
    std::size_t const                  n = p.size();
    std::vector<std::vector<Rational>> rows(n);
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<long> w(n, 0);
      long              total = 0;
      for (std::size_t j = 0; j < n; ++j) {
        if (p.at(i, j)) {
          w[j] = static_cast<long>(uniform(rng, 1, 9));
          total += w[j];
        }
      }
      for (std::size_t j = 0; j < n; ++j) {
        rows[i].push_back(Rational(w[j]) / Rational(total));
      }
    }
    return StochasticMatrix::validate(std::move(rows));
  }

  StochasticMatrix random_symmetric(std::mt19937_64& rng, std::size_t n) {
    std::size_t const terms = uniform(rng, 1, 3);
    std::vector<long> weights;
    long              total = 0;
    for (std::size_t t = 0; t < terms; ++t) {
      weights.push_back(static_cast<long>(uniform(rng, 1, 6)));
      total += weights.back();
    }
    std::vector<std::vector<Rational>> rows(n, std::vector<Rational>(n));
    for (std::size_t t = 0; t < terms; ++t) {
      // Random involution: shuffle, then pair off a random number of
      // consecutive elements.
      std::vector<std::size_t> order(n);
      std::iota(order.begin(), order.end(), 0);
      for (std::size_t i = 0; i + 1 < n; ++i) {
        std::swap(order[i], order[uniform(rng, i, n - 1)]);
      }
      std::vector<std::size_t> sigma(order);
      std::sort(sigma.begin(), sigma.end());
      std::size_t const pairs = uniform(rng, 0, n / 2);
      for (std::size_t p = 0; p < pairs; ++p) {
        sigma[order[2 * p]]     = order[2 * p + 1];
        sigma[order[2 * p + 1]] = order[2 * p];
      }
      Rational const w = Rational(weights[t]) / Rational(total);
      for (std::size_t i = 0; i < n; ++i) {
        rows[i][sigma[i]] += w;
      }
    }
    return StochasticMatrix::validate(std::move(rows));
  }

  BoolMatrix to_bool(Pattern const& p) {
    BoolMatrix out(p.size(), std::vector<bool>(p.size()));
    for (std::size_t i = 0; i < p.size(); ++i) {
      for (std::size_t j = 0; j < p.size(); ++j) {
        out[i][j] = p.at(i, j);
      }
    }
    return out;
  }

  BoolMatrix bool_mul(BoolMatrix const& a, BoolMatrix const& b) {
    std::size_t const n = a.size();
    BoolMatrix        out(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t l = 0; l < n; ++l) {
        if (!a[i][l]) {
          continue;
        }
        for (std::size_t j = 0; j < n; ++j) {
          if (b[l][j]) {
            out[i][j] = true;
          }
        }
      }
    }
    return out;
  }

  bool bool_scrambling(BoolMatrix const& a) {
    std::size_t const n = a.size();
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        bool meet = false;
        for (std::size_t c = 0; c < n && !meet; ++c) {
          meet = a[i][c] && a[j][c];
        }
        if (!meet) {
          return false;
        }
      }
    }
    return true;
  }

  std::optional<std::uint64_t>
  oracle_scrambling_index(std::vector<Pattern> const& patterns) {
    std::vector<BoolMatrix> gens;
    for (auto const& p : patterns) {
      gens.push_back(to_bool(p));
    }
    std::set<BoolMatrix>              level(gens.begin(), gens.end());
    std::set<std::set<BoolMatrix>>    seen;
    for (std::uint64_t t = 1;; ++t) {
      if (std::all_of(level.begin(), level.end(), bool_scrambling)) {
        return t;
      }
      if (!seen.insert(level).second) {
        return std::nullopt;
      }
      std::set<BoolMatrix> next;
      for (auto const& m : level) {
        for (auto const& g : gens) {
          next.insert(bool_mul(m, g));
        }
      }
      level = std::move(next);
    }
  }

  bool oracle_sat(CnfFormula const& f) {
    std::size_t const n = f.num_vars();
    for (std::uint64_t a = 0; a < (std::uint64_t{1} << n); ++a) {
      bool all = true;
      for (auto const& clause : f.clauses()) {
        bool any = false;
        for (auto const& lit : clause) {
          bool value = ((a >> (lit.variable - 1)) & 1) != 0;
          any        = any || value == lit.positive;
        }
        all = all && any;
      }
      if (all) {
        return true;
      }
    }
    return false;
  }

}  // namespace fixtures
