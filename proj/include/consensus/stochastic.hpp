#pragma once

// Exact row-stochastic matrices.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "consensus/errors.hpp"
#include "consensus/pattern.hpp"
#include "consensus/rational.hpp"

namespace consensus {

  class NegativeEntry : public InvalidArgument {
   public:
    NegativeEntry(std::size_t row, std::size_t col)
        : InvalidArgument("NegativeEntry(" + std::to_string(row) + ","
                          + std::to_string(col) + ")"),
          row(row),
          col(col) {}
    std::size_t row;
    std::size_t col;
  };

  class RowSumNotOne : public InvalidArgument {
   public:
    RowSumNotOne(std::size_t row, Rational sum)
        : InvalidArgument("RowSumNotOne(" + std::to_string(row) + ", "
                          + sum.to_string() + ")"),
          row(row),
          actual(std::move(sum)) {}
    std::size_t row;
    Rational    actual;
  };

  class SinkNode : public InvalidArgument {
   public:
    explicit SinkNode(std::size_t node)
        : InvalidArgument("SinkNode(" + std::to_string(node) + ")"),
          node(node) {}
    std::size_t node;
  };

  class StochasticMatrix {
   public:
    // Validates a square array: entries >= 0, every row sums to exactly 1.
    // Throws InvalidArgument (shape), NegativeEntry, or RowSumNotOne, the
    // first violation in row-major order.
    static StochasticMatrix validate(std::vector<std::vector<Rational>> rows);
    static StochasticMatrix identity(std::size_t n);

    [[nodiscard]] std::size_t size() const noexcept {
      return _n;
    }
    [[nodiscard]] Rational const& at(std::size_t i, std::size_t j) const {
      return _entries[i * _n + j];
    }
    [[nodiscard]] std::span<Rational const> row(std::size_t i) const {
      return {_entries.data() + i * _n, _n};
    }
    [[nodiscard]] std::vector<std::vector<Rational>> rows() const;
    // Total bits of all numerators and denominators.
    [[nodiscard]] std::size_t bit_size() const;

    friend bool operator==(StochasticMatrix const&,
                           StochasticMatrix const&) = default;

   private:
    StochasticMatrix(std::size_t n, std::vector<Rational> entries)
        : _n(n), _entries(std::move(entries)) {}

    friend StochasticMatrix mat_mul(StochasticMatrix const&,
                                    StochasticMatrix const&);

    std::size_t           _n = 0;
    std::vector<Rational> _entries;
  };

  // Bit (i, j) set iff entry (i, j) > 0.
  Pattern pattern_of(StochasticMatrix const& m);

  std::vector<Pattern> patterns_of(std::span<StochasticMatrix const> ms);

  // Exact product a * b.  Throws DimensionMismatch.
  StochasticMatrix mat_mul(StochasticMatrix const& a, StochasticMatrix const& b);

  // max over row pairs of the L1 distance; in [0, 2].
  Rational delta(StochasticMatrix const& m);

  // Sign pattern is symmetric.
  bool is_undirected(StochasticMatrix const& m);

  // Entries are symmetric exactly.
  bool is_symmetric(StochasticMatrix const& m);

  // Random-walk matrix of a directed graph given by out-neighbour sets:
  // entry (i, j) = 1/outdeg(i) on edges.  Throws SinkNode.
  StochasticMatrix from_graph(std::span<Support const> out_neighbours);
  StochasticMatrix from_graph(Pattern const& g);

}  // namespace consensus
