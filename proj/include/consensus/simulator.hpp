#pragma once

// Numerical exploration of x(t+1) = P_{tau(t)} x(t).

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <vector>

#include "consensus/rational.hpp"
#include "consensus/stochastic.hpp"

namespace consensus {

  // tau(t) = prefix[t] for t < |prefix|, then cycle repeated.  Without a
  // cycle only the first |prefix| steps are defined.
  struct SwitchingWord {
    std::vector<std::size_t> prefix;
    std::vector<std::size_t> cycle;

    [[nodiscard]] bool defined_for(std::size_t steps) const noexcept {
      return !cycle.empty() || steps <= prefix.size();
    }
    // Throws InvalidArgument when t is past a finite word.
    [[nodiscard]] std::size_t at(std::size_t t) const;

    // `length` indices drawn from 0..k-1 by a 64-bit Mersenne twister
    // seeded with `seed`; identical on every platform.
    static SwitchingWord random(std::size_t   k,
                                std::size_t   length,
                                std::uint64_t seed);
  };

  struct Trajectory {
    std::vector<std::vector<double>> states;        // x(0) .. x(T)
    std::vector<double>              disagreement;  // max - min of each

    // First t with disagreement[t] < threshold.
    [[nodiscard]] std::optional<std::size_t>
    steps_to(double threshold) const noexcept;
  };

  // Double-precision simulation for `steps` steps.  Throws
  // DimensionMismatch, InvalidArgument (word undefined / index out of
  // range).
  Trajectory simulate(std::span<StochasticMatrix const> matrices,
                      SwitchingWord const&              word,
                      std::span<double const>           x0,
                      std::size_t                       steps);

  // || (e_i - e_j)^T P_{tau(0)} ... P_{tau(t-1)} ||_1 for t = 0..steps,
  // exactly.
  std::vector<Rational>
  row_difference_trajectory(std::span<StochasticMatrix const> matrices,
                            SwitchingWord const&              word,
                            std::size_t                       i,
                            std::size_t                       j,
                            std::size_t                       steps);

  // Same quantity in double precision.
  std::vector<double>
  row_difference_trajectory_approx(std::span<StochasticMatrix const> matrices,
                                   SwitchingWord const&              word,
                                   std::size_t                       i,
                                   std::size_t                       j,
                                   std::size_t                       steps);

  // delta(P_{tau(t-1)} ... P_{tau(0)}) for t = 1..steps, exact.  Throws
  // ResourceLimitExceeded once the running product needs more than
  // `max_bits` bits in total.
  std::vector<Rational>
  product_delta_trajectory(std::span<StochasticMatrix const> matrices,
                           SwitchingWord const&              word,
                           std::size_t                       steps,
                           std::size_t max_bits = std::size_t{1} << 22);

  // Header "t,x_0,...,x_{n-1},disagreement", one row per state, values
  // printed with 17 significant digits.
  void write_csv(std::ostream& out, Trajectory const& trajectory);

}  // namespace consensus
