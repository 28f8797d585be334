#include "consensus/decider.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace consensus {

  std::string_view to_string(Decision d) noexcept {
    switch (d) {
      case Decision::Consensus:
        return "Consensus";
      case Decision::NotConsensus:
        return "NotConsensus";
    }
    return "?";
  }

  std::string_view to_string(Algorithm a) noexcept {
    switch (a) {
      case Algorithm::PairAutomaton:
        return "PairAutomaton";
      case Algorithm::TheoremCheck:
        return "TheoremCheck";
      case Algorithm::LiteralEnumeration:
        return "LiteralEnumeration";
      case Algorithm::SymmetricFastPath:
        return "SymmetricFastPath";
    }
    return "?";
  }

  std::string_view to_string(WitnessDefect d) noexcept {
    switch (d) {
      case WitnessDefect::None:
        return "None";
      case WitnessDefect::EmptyPatternSet:
        return "EmptyPatternSet";
      case WitnessDefect::DimensionMismatch:
        return "DimensionMismatch";
      case WitnessDefect::RowIndexOutOfRange:
        return "RowIndexOutOfRange";
      case WitnessDefect::SameRow:
        return "SameRow";
      case WitnessDefect::MatrixIndexOutOfRange:
        return "MatrixIndexOutOfRange";
      case WitnessDefect::EmptyCycle:
        return "EmptyCycle";
      case WitnessDefect::SupportsOverlap:
        return "SupportsOverlap";
      case WitnessDefect::CycleNotClosed:
        return "CycleNotClosed";
    }
    return "?";
  }

  mpz_class ConsensusVerdict::theorem_bound() const {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), 2, theorem_bound_log2());
    return r;
  }

  namespace {

    std::size_t check_pattern_set(std::span<Pattern const> patterns) {
      if (patterns.empty()) {
        throw InvalidArgument("empty pattern set");
      }
      std::size_t const n = patterns.front().size();
      for (std::size_t m = 1; m < patterns.size(); ++m) {
        if (patterns[m].size() != n) {
          throw DimensionMismatch("pattern " + std::to_string(m)
                                  + " has dimension "
                                  + std::to_string(patterns[m].size())
                                  + ", expected " + std::to_string(n));
        }
      }
      return n;
    }

    // 2^(2n), saturating.
    std::uint64_t theorem_bound_u64(std::size_t n) {
      if (2 * n >= 64) {
        return std::numeric_limits<std::uint64_t>::max();
      }
      return std::uint64_t{1} << (2 * n);
    }

    // Interned supports with memoised support_step per matrix.
    class SupportTable {
     public:
      explicit SupportTable(std::span<Pattern const> patterns)
          : _patterns(patterns) {}

      std::uint32_t intern(Support s) {
        auto [it, fresh] = _ids.try_emplace(s, _items.size());
        if (fresh) {
          _first.push_back(s.first());
          _items.push_back(std::move(s));
          _step.emplace_back(_patterns.size(), kUnknown);
        }
        return it->second;
      }

      std::uint32_t step(std::uint32_t id, std::size_t m) {
        auto cached = _step[id][m];
        if (cached != kUnknown) {
          return cached;
        }
        auto next     = intern(support_step(_items[id], _patterns[m]));
        _step[id][m]  = next;
        return next;
      }

      [[nodiscard]] bool disjoint(std::uint32_t a, std::uint32_t b) const {
        return !_items[a].intersects(_items[b]);
      }

      // Unordered pair, support with the smaller least element first.
      [[nodiscard]] std::uint64_t key(std::uint32_t a, std::uint32_t b) const {
        if (_first[a] > _first[b]) {
          std::swap(a, b);
        }
        return (std::uint64_t{a} << 32) | b;
      }

     private:
      static constexpr std::uint32_t kUnknown
          = std::numeric_limits<std::uint32_t>::max();

      std::span<Pattern const>                   _patterns;
      std::vector<Support>                       _items;
      std::vector<std::size_t>                   _first;
      std::unordered_map<Support, std::uint32_t> _ids;
      std::vector<std::vector<std::uint32_t>>    _step;
    };

    enum class Colour : std::uint8_t { Grey, Black };

    struct NodeInfo {
      Colour        colour;
      std::uint32_t depth;   // stack position while grey
      std::uint64_t height;  // longest outgoing path, once black
    };

    struct Frame {
      std::uint64_t key;
      std::size_t   next_matrix;
      std::size_t   via;  // matrix that led here; unused for the root
      std::uint64_t height;
    };

    ConsensusVerdict consensus_verdict(std::size_t   n,
                                       std::uint64_t index,
                                       Algorithm     algorithm) {
      ConsensusVerdict v;
      v.decision         = Decision::Consensus;
      v.scrambling_index = index;
      v.dimension        = n;
      v.algorithm        = algorithm;
      return v;
    }

    struct LevelOutcome {
      Decision                     decision;
      std::optional<std::uint64_t> index;
    };

    LevelOutcome run_levels(std::span<Pattern const> patterns,
                            DeciderOptions const&    opts) {
      std::size_t const   n     = check_pattern_set(patterns);
      std::uint64_t const bound = theorem_bound_u64(n);

      auto canonical = [](std::unordered_set<Pattern> const& s) {
        std::vector<Pattern> v(s.begin(), s.end());
        std::sort(v.begin(), v.end());
        return v;
      };
      auto fingerprint = [](std::vector<Pattern> const& v) {
        std::size_t h = v.size();
        for (auto const& p : v) {
          h ^= p.hash() + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        }
        return h;
      };

      std::vector<std::vector<Pattern>>                         history;
      std::unordered_multimap<std::size_t, std::size_t>         seen;
      std::vector<Pattern> level
          = canonical({patterns.begin(), patterns.end()});

      for (std::uint64_t t = 1;; ++t) {
        bool const all_scrambling
            = std::all_of(level.begin(), level.end(), is_scrambling);
        if (all_scrambling) {
          return {Decision::Consensus, t};
        }
        if (t >= bound) {
          return {Decision::NotConsensus, std::nullopt};
        }
        auto h = fingerprint(level);
        auto [lo, hi] = seen.equal_range(h);
        for (auto it = lo; it != hi; ++it) {
          if (history[it->second] == level) {
            // Periodic from here on with a non-scrambling member.
            return {Decision::NotConsensus, std::nullopt};
          }
        }
        seen.emplace(h, history.size());
        history.push_back(level);

        std::unordered_set<Pattern> next;
        for (auto const& a : level) {
          for (auto const& m : patterns) {
            next.insert(pattern_mul(a, m));
            if (next.size() > opts.state_limit) {
              throw ResourceLimitExceeded(
                  "theorem check: distinct patterns per level",
                  opts.state_limit);
            }
          }
        }
        level = canonical(next);
      }
    }

  }  // namespace

  ConsensusVerdict decide_pair_automaton(std::span<Pattern const> patterns,
                                         DeciderOptions const&    opts) {
    std::size_t const n = check_pattern_set(patterns);
    std::size_t const k = patterns.size();

    SupportTable                                table(patterns);
    std::unordered_map<std::uint64_t, NodeInfo> info;
    std::vector<Frame>                          stack;
    std::uint64_t                               longest = 0;

    auto split = [](std::uint64_t key) {
      return std::pair<std::uint32_t, std::uint32_t>(
          static_cast<std::uint32_t>(key >> 32),
          static_cast<std::uint32_t>(key & 0xffffffffU));
    };

    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        auto root = table.key(table.intern(Support::singleton(n, i)),
                              table.intern(Support::singleton(n, j)));
        if (auto it = info.find(root); it != info.end()) {
          longest = std::max(longest, it->second.height);
          continue;
        }
        info.emplace(root, NodeInfo{Colour::Grey, 0, 0});
        stack.push_back(Frame{root, 0, 0, 0});

        while (!stack.empty()) {
          Frame& top = stack.back();
          if (top.next_matrix == k) {
            auto& node  = info.at(top.key);
            node.colour = Colour::Black;
            node.height = top.height;
            auto height = top.height;
            stack.pop_back();
            if (!stack.empty()) {
              stack.back().height = std::max(stack.back().height, height + 1);
            } else {
              longest = std::max(longest, height);
            }
            continue;
          }
          std::size_t const m = top.next_matrix++;
          auto [a, b]         = split(top.key);
          auto na             = table.step(a, m);
          auto nb             = table.step(b, m);
          if (!table.disjoint(na, nb)) {
            continue;
          }
          auto next = table.key(na, nb);
          auto it   = info.find(next);
          if (it == info.end()) {
            info.emplace(next,
                         NodeInfo{Colour::Grey,
                                  static_cast<std::uint32_t>(stack.size()),
                                  0});
            if (info.size() > opts.state_limit) {
              throw ResourceLimitExceeded("pair automaton: reachable states",
                                          opts.state_limit);
            }
            stack.push_back(Frame{next, 0, m, 0});
          } else if (it->second.colour == Colour::Grey) {
            std::size_t const   entry = it->second.depth;
            NonConsensusWitness w;
            w.row_pair = {i, j};
            for (std::size_t d = 1; d <= entry; ++d) {
              w.prefix.push_back(stack[d].via);
            }
            for (std::size_t d = entry + 1; d < stack.size(); ++d) {
              w.cycle.push_back(stack[d].via);
            }
            w.cycle.push_back(m);

            ConsensusVerdict v;
            v.decision  = Decision::NotConsensus;
            v.dimension = n;
            v.witness   = std::move(w);
            v.algorithm = Algorithm::PairAutomaton;
            return v;
          } else {
            top.height = std::max(top.height, it->second.height + 1);
          }
        }
      }
    }
    // A path of L transitions is a non-scrambling product of length L.
    return consensus_verdict(n, longest + 1, Algorithm::PairAutomaton);
  }

  ConsensusVerdict decide_theorem_check(std::span<Pattern const> patterns,
                                        DeciderOptions const&    opts) {
    auto outcome = run_levels(patterns, opts);
    if (outcome.decision == Decision::Consensus) {
      return consensus_verdict(
          patterns.front().size(), *outcome.index, Algorithm::TheoremCheck);
    }
    auto v = decide_pair_automaton(patterns, opts);
    if (v.decision != Decision::NotConsensus) {
      throw std::logic_error(
          "theorem check and pair automaton disagree on decision");
    }
    v.algorithm = Algorithm::TheoremCheck;
    return v;
  }

  ConsensusVerdict
  decide_literal_enumeration(std::span<Pattern const> patterns,
                             DeciderOptions const&    opts) {
    std::size_t const n = check_pattern_set(patterns);
    std::size_t const k = patterns.size();

    // k^L with L = 2^(2n), refusing as soon as it passes the limit.
    if (2 * n >= 63 || (std::size_t{1} << (2 * n)) > opts.word_limit) {
      throw InstanceTooLarge("literal enumeration: word length 2^"
                             + std::to_string(2 * n) + " exceeds limit "
                             + std::to_string(opts.word_limit));
    }
    std::size_t const length = std::size_t{1} << (2 * n);
    std::size_t words = 1;
    for (std::size_t d = 0; d < length; ++d) {
      if (words > opts.word_limit / k) {
        throw InstanceTooLarge("literal enumeration: "
                               + std::to_string(k) + "^"
                               + std::to_string(length)
                               + " words exceeds limit "
                               + std::to_string(opts.word_limit));
      }
      words *= k;
    }

    // Depth-first over the word tree; product[d] is the product of the
    // first d letters.
    std::vector<Pattern>     product{Pattern::identity(n)};
    std::vector<std::size_t> letter;
    std::vector<bool>        bad(length + 1, false);
    product.reserve(length + 1);
    letter.reserve(length);

    letter.push_back(0);
    product.push_back(pattern_mul(product[0], patterns[0]));
    while (!letter.empty()) {
      std::size_t const d = letter.size();
      if (!bad[d] && !is_scrambling(product[d])) {
        bad[d] = true;
      }
      if (d < length) {
        letter.push_back(0);
        product.push_back(pattern_mul(product[d], patterns[0]));
        continue;
      }
      // advance odometer
      while (!letter.empty() && letter.back() + 1 == k) {
        letter.pop_back();
        product.pop_back();
      }
      if (letter.empty()) {
        break;
      }
      ++letter.back();
      product.back() = pattern_mul(product[product.size() - 2],
                                   patterns[letter.back()]);
    }

    if (bad[length]) {
      auto v = decide_pair_automaton(patterns, opts);
      if (v.decision != Decision::NotConsensus) {
        throw std::logic_error(
            "literal enumeration and pair automaton disagree on decision");
      }
      v.algorithm = Algorithm::LiteralEnumeration;
      return v;
    }
    std::uint64_t index = 1;
    for (std::size_t d = 1; d <= length; ++d) {
      if (bad[d]) {
        index = d + 1;
      }
    }
    return consensus_verdict(n, index, Algorithm::LiteralEnumeration);
  }

  ConsensusVerdict decide_symmetric(std::span<StochasticMatrix const> matrices,
                                    DeciderOptions const& opts) {
    if (matrices.empty()) {
      throw InvalidArgument("empty matrix set");
    }
    for (std::size_t m = 0; m < matrices.size(); ++m) {
      if (!is_symmetric(matrices[m])) {
        throw NotSymmetric(m);
      }
    }
    auto patterns = patterns_of(matrices);
    check_pattern_set(patterns);

    bool const consensus
        = std::all_of(patterns.begin(), patterns.end(), [](auto const& p) {
            return is_connected_undirected(p) && !is_bipartite_undirected(p);
          });
    auto const decision
        = consensus ? Decision::Consensus : Decision::NotConsensus;

    // Certificates come from the pair automaton.
    auto v = decide_pair_automaton(patterns, opts);
    if (v.decision != decision) {
      throw std::logic_error(
          "symmetric criterion and pair automaton disagree on decision");
    }
    v.algorithm = Algorithm::SymmetricFastPath;
    return v;
  }

  std::optional<std::uint64_t>
  scrambling_index(std::span<Pattern const> patterns,
                   DeciderOptions const&    opts) {
    return run_levels(patterns, opts).index;
  }

  WitnessCheck verify_witness(std::span<Pattern const>   patterns,
                              NonConsensusWitness const& w) {
    if (patterns.empty()) {
      return {WitnessDefect::EmptyPatternSet, 0};
    }
    std::size_t const n = patterns.front().size();
    for (auto const& p : patterns) {
      if (p.size() != n) {
        return {WitnessDefect::DimensionMismatch, 0};
      }
    }
    auto [i, j] = w.row_pair;
    if (i >= n || j >= n) {
      return {WitnessDefect::RowIndexOutOfRange, 0};
    }
    if (i == j) {
      return {WitnessDefect::SameRow, 0};
    }
    auto in_range = [&](std::size_t m) { return m < patterns.size(); };
    if (!std::all_of(w.prefix.begin(), w.prefix.end(), in_range)
        || !std::all_of(w.cycle.begin(), w.cycle.end(), in_range)) {
      return {WitnessDefect::MatrixIndexOutOfRange, 0};
    }
    if (w.cycle.empty()) {
      return {WitnessDefect::EmptyCycle, 0};
    }

    auto s1 = Support::singleton(n, i);
    auto s2 = Support::singleton(n, j);
    auto canonical = [](Support const& a, Support const& b) {
      return a.first() < b.first() ? std::pair(a, b) : std::pair(b, a);
    };

    std::size_t step = 0;
    auto        advance = [&](std::size_t m) {
      s1 = support_step(s1, patterns[m]);
      s2 = support_step(s2, patterns[m]);
      ++step;
      return !s1.intersects(s2);
    };
    for (auto m : w.prefix) {
      if (!advance(m)) {
        return {WitnessDefect::SupportsOverlap, step};
      }
    }
    auto const entry = canonical(s1, s2);
    for (auto m : w.cycle) {
      if (!advance(m)) {
        return {WitnessDefect::SupportsOverlap, step};
      }
    }
    if (canonical(s1, s2) != entry) {
      return {WitnessDefect::CycleNotClosed, step};
    }
    return {};
  }

  std::vector<std::size_t> unroll(NonConsensusWitness const& w,
                                  std::size_t                length) {
    std::vector<std::size_t> out;
    out.reserve(length);
    for (std::size_t t = 0; t < length; ++t) {
      if (t < w.prefix.size()) {
        out.push_back(w.prefix[t]);
      } else if (!w.cycle.empty()) {
        out.push_back(w.cycle[(t - w.prefix.size()) % w.cycle.size()]);
      } else {
        break;
      }
    }
    return out;
  }

}  // namespace consensus
