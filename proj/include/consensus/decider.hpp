#pragma once

// Consensus deciders and their certificates.
//
// A finite set of stochastic matrices is a consensus set iff every long
// enough product is scrambling.  Everything here works on sign patterns;
// the exact entries never matter for the decision.
//
// Word convention: a word w = (w_0, ..., w_{t-1}) names the left-to-right
// product P_{w_0} P_{w_1} ... P_{w_{t-1}}.  Row i of that product has the
// support obtained by pushing {i} through support_step with P_{w_0} first.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "consensus/errors.hpp"
#include "consensus/pattern.hpp"
#include "consensus/stochastic.hpp"

namespace consensus {

  enum class Decision { Consensus, NotConsensus };

  enum class Algorithm {
    PairAutomaton,
    TheoremCheck,
    LiteralEnumeration,
    SymmetricFastPath
  };

  std::string_view to_string(Decision d) noexcept;
  std::string_view to_string(Algorithm a) noexcept;

  // Eventually periodic word prefix cycle cycle ... along which the supports
  // of rows row_pair.first and row_pair.second never meet.
  struct NonConsensusWitness {
    std::pair<std::size_t, std::size_t> row_pair;
    std::vector<std::size_t>            prefix;
    std::vector<std::size_t>            cycle;

    friend bool operator==(NonConsensusWitness const&,
                           NonConsensusWitness const&) = default;
  };

  struct ConsensusVerdict {
    Decision decision = Decision::Consensus;
    // Smallest t such that every length-t product is scrambling.  Present
    // iff decision == Consensus.
    std::optional<std::uint64_t> scrambling_index;
    std::size_t                  dimension = 0;
    // Present iff decision == NotConsensus.
    std::optional<NonConsensusWitness> witness;
    Algorithm                          algorithm = Algorithm::PairAutomaton;

    // 2^(2n).
    [[nodiscard]] std::size_t theorem_bound_log2() const noexcept {
      return 2 * dimension;
    }
    [[nodiscard]] mpz_class theorem_bound() const;
  };

  struct DeciderOptions {
    // Ceiling on distinct pair states (pair automaton) or distinct
    // patterns per level (theorem check).
    std::size_t state_limit = std::size_t{1} << 22;
    // Ceiling on k^L words for literal enumeration.
    std::size_t word_limit = std::size_t{1} << 20;
  };

  class NotSymmetric : public InvalidArgument {
   public:
    explicit NotSymmetric(std::size_t index)
        : InvalidArgument("NotSymmetric(" + std::to_string(index) + ")"),
          index(index) {}
    std::size_t index;
  };

  // Transition system on unordered pairs of disjoint supports, seeded with
  // ({i}, {j}) for i < j; under matrix m a pair (s1, s2) moves to
  // (support_step(s1, m), support_step(s2, m)) when the images stay
  // disjoint.  A reachable cycle certifies NotConsensus.  Depth-first
  // search, seeds and matrices in ascending order, so the verdict is
  // deterministic.  Throws DimensionMismatch, InvalidArgument (empty set),
  // ResourceLimitExceeded.
  ConsensusVerdict decide_pair_automaton(std::span<Pattern const> patterns,
                                         DeciderOptions const&    opts = {});

  // T_1 = patterns, T_{t+1} = T_t * patterns as sets of distinct patterns,
  // up to t = 2^(2n).  Stops as soon as every member of T_t is scrambling
  // (Consensus, index t) or T_t repeats an earlier level with a
  // non-scrambling member (NotConsensus).  Witnesses come from the pair
  // automaton.
  ConsensusVerdict decide_theorem_check(std::span<Pattern const> patterns,
                                        DeciderOptions const&    opts = {});

  // Multiplies out all k^L words of length L = 2^(2n).  A cross-validation
  // oracle for tiny instances only; throws InstanceTooLarge when k^L
  // exceeds opts.word_limit.
  ConsensusVerdict
  decide_literal_enumeration(std::span<Pattern const> patterns,
                             DeciderOptions const&    opts = {});

  // Symmetric matrices: consensus iff every graph is connected and
  // non-bipartite.  Throws NotSymmetric(index).
  ConsensusVerdict decide_symmetric(std::span<StochasticMatrix const> matrices,
                                    DeciderOptions const& opts = {});

  // Empty when some product of length 2^(2n) is not scrambling.
  std::optional<std::uint64_t>
  scrambling_index(std::span<Pattern const> patterns,
                   DeciderOptions const&    opts = {});

  enum class WitnessDefect {
    None,
    EmptyPatternSet,
    DimensionMismatch,
    RowIndexOutOfRange,
    SameRow,
    MatrixIndexOutOfRange,
    EmptyCycle,
    SupportsOverlap,
    CycleNotClosed
  };

  std::string_view to_string(WitnessDefect d) noexcept;

  struct WitnessCheck {
    WitnessDefect defect = WitnessDefect::None;
    // Step (0-based, counting prefix then cycle) where overlap occurred.
    std::size_t step = 0;

    [[nodiscard]] bool ok() const noexcept {
      return defect == WitnessDefect::None;
    }
    explicit operator bool() const noexcept {
      return ok();
    }
  };

  // Propagates {i} and {j} through prefix then cycle; accepts iff they stay
  // disjoint at every step and the unordered pair after prefix + cycle
  // equals the pair after prefix.
  WitnessCheck verify_witness(std::span<Pattern const>   patterns,
                              NonConsensusWitness const& w);

  // prefix followed by as many copies of cycle as needed, cut to `length`.
  std::vector<std::size_t> unroll(NonConsensusWitness const& w,
                                  std::size_t                length);

}  // namespace consensus
