#include "consensus/stochastic.hpp"

#include <cassert>

namespace consensus {

  StochasticMatrix
  StochasticMatrix::validate(std::vector<std::vector<Rational>> rows) {
    std::size_t const n = rows.size();
    if (n == 0) {
      throw InvalidArgument("matrix must have at least one row");
    }
    std::vector<Rational> entries;
    entries.reserve(n * n);
    for (std::size_t i = 0; i < n; ++i) {
      if (rows[i].size() != n) {
        throw InvalidArgument("matrix is not square: row "
                              + std::to_string(i) + " has "
                              + std::to_string(rows[i].size())
                              + " entries, expected " + std::to_string(n));
      }
      Rational sum;
      for (std::size_t j = 0; j < n; ++j) {
        if (rows[i][j].sign() < 0) {
          throw NegativeEntry(i, j);
        }
        sum += rows[i][j];
      }
      if (sum != Rational(1)) {
        throw RowSumNotOne(i, sum);
      }
      for (auto& x : rows[i]) {
        entries.push_back(std::move(x));
      }
    }
    return StochasticMatrix(n, std::move(entries));
  }

  StochasticMatrix StochasticMatrix::identity(std::size_t n) {
    if (n == 0) {
      throw InvalidArgument("matrix must have at least one row");
    }
    std::vector<Rational> entries(n * n);
    for (std::size_t i = 0; i < n; ++i) {
      entries[i * n + i] = 1;
    }
    return StochasticMatrix(n, std::move(entries));
  }

  std::vector<std::vector<Rational>> StochasticMatrix::rows() const {
    std::vector<std::vector<Rational>> out(_n);
    for (std::size_t i = 0; i < _n; ++i) {
      out[i].assign(row(i).begin(), row(i).end());
    }
    return out;
  }

  std::size_t StochasticMatrix::bit_size() const {
    std::size_t bits = 0;
    for (auto const& x : _entries) {
      bits += x.bit_size();
    }
    return bits;
  }

  Pattern pattern_of(StochasticMatrix const& m) {
    std::size_t const    n = m.size();
    std::vector<Support> rows(n, Support(n));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (m.at(i, j).sign() > 0) {
          rows[i].insert(j);
        }
      }
    }
    return Pattern::from_supports(rows);
  }

  std::vector<Pattern> patterns_of(std::span<StochasticMatrix const> ms) {
    std::vector<Pattern> out;
    out.reserve(ms.size());
    for (auto const& m : ms) {
      out.push_back(pattern_of(m));
    }
    return out;
  }

  StochasticMatrix mat_mul(StochasticMatrix const& a,
                           StochasticMatrix const& b) {
    if (a._n != b._n) {
      throw DimensionMismatch("mat_mul: dimensions " + std::to_string(a._n)
                              + " and " + std::to_string(b._n));
    }
    std::size_t const     n = a._n;
    std::vector<Rational> out(n * n);
    mpq_class             acc;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        acc = 0;
        for (std::size_t k = 0; k < n; ++k) {
          auto const& x = a._entries[i * n + k];
          if (x.sign() != 0) {
            acc += x.value() * b._entries[k * n + j].value();
          }
        }
        out[i * n + j] = Rational(acc);
      }
    }
#ifndef NDEBUG
    for (std::size_t i = 0; i < n; ++i) {
      Rational sum;
      for (std::size_t j = 0; j < n; ++j) {
        sum += out[i * n + j];
      }
      assert(sum == Rational(1));
    }
#endif
    return StochasticMatrix(n, std::move(out));
  }

  Rational delta(StochasticMatrix const& m) {
    std::size_t const n = m.size();
    Rational          best;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        Rational d;
        for (std::size_t c = 0; c < n; ++c) {
          d += abs(m.at(i, c) - m.at(j, c));
        }
        if (d > best) {
          best = d;
        }
      }
    }
    return best;
  }

  bool is_undirected(StochasticMatrix const& m) {
    return is_sign_symmetric(pattern_of(m));
  }

  bool is_symmetric(StochasticMatrix const& m) {
    for (std::size_t i = 0; i < m.size(); ++i) {
      for (std::size_t j = i + 1; j < m.size(); ++j) {
        if (m.at(i, j) != m.at(j, i)) {
          return false;
        }
      }
    }
    return true;
  }

  StochasticMatrix from_graph(std::span<Support const> out_neighbours) {
    std::size_t const                  n = out_neighbours.size();
    std::vector<std::vector<Rational>> rows(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i) {
      if (out_neighbours[i].universe() != n) {
        throw DimensionMismatch("from_graph: neighbour set universe differs "
                                "from node count");
      }
      auto targets = out_neighbours[i].members();
      if (targets.empty()) {
        throw SinkNode(i);
      }
      Rational const w(mpz_class(1), mpz_class(targets.size()));
      for (auto j : targets) {
        rows[i][j] = w;
      }
    }
    return StochasticMatrix::validate(std::move(rows));
  }

  StochasticMatrix from_graph(Pattern const& g) {
    std::vector<Support> out;
    out.reserve(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
      out.push_back(g.row(i));
    }
    return from_graph(out);
  }

}  // namespace consensus
