#pragma once

// Boolean sign patterns over the {0,1} semiring with 1 + 1 = 1.
//
// A Pattern is the zero/nonzero structure of a row-stochastic matrix and,
// interchangeably, the adjacency structure of a directed graph: bit (i, j)
// is set iff entry (i, j) is nonzero iff there is an edge i -> j.  Rows are
// packed into 64-bit words, one word per row for n <= 64.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace consensus {

  namespace detail {
    inline std::size_t words_for(std::size_t n) noexcept {
      return (n + 63) / 64;
    }
  }  // namespace detail

  // A subset of {0, ..., n-1}.
  class Support {
   public:
    Support() = default;
    explicit Support(std::size_t n);
    Support(std::size_t n, std::initializer_list<std::size_t> members);
    Support(std::size_t n, std::span<std::uint64_t const> words);

    static Support singleton(std::size_t n, std::size_t i);
    static Support full(std::size_t n);

    [[nodiscard]] std::size_t universe() const noexcept {
      return _n;
    }

    [[nodiscard]] bool contains(std::size_t i) const;
    void               insert(std::size_t i);
    [[nodiscard]] bool empty() const noexcept;
    [[nodiscard]] std::size_t count() const noexcept;
    // Smallest member, or universe() when empty.
    [[nodiscard]] std::size_t              first() const noexcept;
    [[nodiscard]] std::vector<std::size_t> members() const;
    [[nodiscard]] bool intersects(Support const& other) const;

    Support& operator|=(Support const& other);

    [[nodiscard]] std::span<std::uint64_t const> words() const noexcept {
      return _words;
    }

    [[nodiscard]] std::size_t hash() const noexcept;
    [[nodiscard]] std::string to_string() const;

    friend bool operator==(Support const&, Support const&) = default;

   private:
    std::size_t                _n = 0;
    std::vector<std::uint64_t> _words;
  };

  class Pattern {
   public:
    // Rows of 0/1 entries.  Throws InvalidArgument unless the array is
    // square, n >= 1, and every row has at least one set bit.
    static Pattern from_rows(std::vector<std::vector<int>> const& rows);
    static Pattern from_supports(std::vector<Support> const& rows);
    static Pattern identity(std::size_t n);
    static Pattern all_ones(std::size_t n);

    [[nodiscard]] std::size_t size() const noexcept {
      return _n;
    }

    [[nodiscard]] bool    at(std::size_t i, std::size_t j) const;
    [[nodiscard]] Support row(std::size_t i) const;
    [[nodiscard]] std::span<std::uint64_t const>
    row_words(std::size_t i) const noexcept {
      return {_bits.data() + i * _stride, _stride};
    }

    [[nodiscard]] std::size_t hash() const noexcept;
    // Rows as "0110", separated by '/'.
    [[nodiscard]] std::string to_string() const;

    friend bool operator==(Pattern const&, Pattern const&) = default;
    friend auto operator<=>(Pattern const& a, Pattern const& b) {
      if (auto c = a._n <=> b._n; c != 0) {
        return c;
      }
      return a._bits <=> b._bits;
    }

   private:
    friend Pattern pattern_mul(Pattern const&, Pattern const&);
    friend Pattern relabel(Pattern const&, std::span<std::size_t const>);

    explicit Pattern(std::size_t n)
        : _n(n), _stride(detail::words_for(n)), _bits(_n * _stride, 0) {}

    void set(std::size_t i, std::size_t j) {
      _bits[i * _stride + j / 64] |= std::uint64_t{1} << (j % 64);
    }
    void check_rows_nonempty() const;

    std::size_t                _n      = 0;
    std::size_t                _stride = 0;
    std::vector<std::uint64_t> _bits;
  };

  // Boolean product: bit (i, j) of the result is set iff a(i, k) and b(k, j)
  // for some k.  Throws DimensionMismatch.
  Pattern pattern_mul(Pattern const& a, Pattern const& b);

  // Left-to-right product patterns[word[0]] * ... * patterns[word.back()].
  // An empty word gives the identity of dimension `n`.
  Pattern pattern_product(std::span<Pattern const>     patterns,
                          std::span<std::size_t const> word,
                          std::size_t                  n);

  // No two rows have disjoint supports.  Vacuously true for n = 1.
  bool is_scrambling(Pattern const& p);

  // Some column is entirely set.
  bool has_positive_column(Pattern const& p);

  // Union of the rows of p indexed by s: the support of x^T P when x has
  // support s.
  Support support_step(Support const& s, Pattern const& p);

  // Bit (i, j) set iff bit (j, i) set.
  bool is_sign_symmetric(Pattern const& p);

  // The next two require a sign-symmetric pattern and throw InvalidArgument
  // otherwise.
  bool is_connected_undirected(Pattern const& p);
  // A self-loop is an odd cycle, so any set diagonal bit makes this false.
  bool is_bipartite_undirected(Pattern const& p);

  // Simultaneous row/column relabelling: bit (perm[i], perm[j]) of the
  // result equals bit (i, j) of p.  `perm` must be a permutation of 0..n-1.
  Pattern relabel(Pattern const& p, std::span<std::size_t const> perm);

}  // namespace consensus

template <>
struct std::hash<consensus::Support> {
  std::size_t operator()(consensus::Support const& s) const noexcept {
    return s.hash();
  }
};

template <>
struct std::hash<consensus::Pattern> {
  std::size_t operator()(consensus::Pattern const& p) const noexcept {
    return p.hash();
  }
};
