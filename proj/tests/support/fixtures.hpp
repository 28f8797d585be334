#pragma once

// Shared test fixtures and brute-force oracles.  The oracles work on plain
// vector<vector<bool>> so they share no code with the library.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "consensus/pattern.hpp"
#include "consensus/reductions.hpp"
#include "consensus/stochastic.hpp"

namespace fixtures {

  using BoolMatrix = std::vector<std::vector<bool>>;

  // Nodes A..E = 0..4.  Same graphs as data/figure1.json and figure2.json.
  std::vector<consensus::StochasticMatrix> figure1();
  std::vector<consensus::StochasticMatrix> figure2();

  // Rationals from "p/q" strings.
  consensus::StochasticMatrix
  matrix(std::vector<std::vector<std::string>> const& rows);

  std::string data_path(std::string const& name);
  std::string read_text(std::string const& path);

  // Uniform integer in [lo, hi] from raw engine output.
  std::size_t uniform(std::mt19937_64& rng, std::size_t lo, std::size_t hi);

  // Clauses of width min(width, n) over distinct variables, random signs.
  consensus::CnfFormula random_cnf(std::mt19937_64& rng,
                                   std::size_t      n,
                                   std::size_t      m,
                                   std::size_t      width);

  // Every formula with n variables and m clauses of width 1..max_width,
  // clauses taken as sets and the clause list deduplicated up to order.
  std::vector<consensus::CnfFormula>
  all_small_cnfs(std::size_t n, std::size_t m, std::size_t max_width);

  // Entries nonzero with probability ~density; rows never empty.
  consensus::Pattern
  random_pattern(std::mt19937_64& rng, std::size_t n, double density);

  std::vector<consensus::Pattern> random_pattern_set(std::mt19937_64& rng,
                                                     std::size_t      n,
                                                     std::size_t      k,
                                                     double           density);

  // Stochastic matrix with the given pattern and random positive rational
  // weights.
  consensus::StochasticMatrix realize(std::mt19937_64&          rng,
                                      consensus::Pattern const& p);

  // Convex combination of random involutions with rational weights: a
  // symmetric stochastic matrix.
  consensus::StochasticMatrix random_symmetric(std::mt19937_64& rng,
                                               std::size_t      n);

  BoolMatrix to_bool(consensus::Pattern const& p);
  BoolMatrix bool_mul(BoolMatrix const& a, BoolMatrix const& b);
  bool       bool_scrambling(BoolMatrix const& a);

  // Brute-force consensus oracle: grows the set of distinct products of
  // length t until every member is scrambling (index t) or the set
  // repeats (none).
  std::optional<std::uint64_t>
  oracle_scrambling_index(std::vector<consensus::Pattern> const& patterns);

  // Exhaustive assignment search.
  bool oracle_sat(consensus::CnfFormula const& f);

}  // namespace fixtures
