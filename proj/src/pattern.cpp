#include "consensus/pattern.hpp"

#include <algorithm>
#include <bit>
#include <deque>

#include "consensus/errors.hpp"

namespace consensus {

  namespace {
    // boost::hash_combine
    std::size_t mix(std::size_t seed, std::uint64_t v) noexcept {
      return seed ^ (std::hash<std::uint64_t>{}(v) + 0x9e3779b97f4a7c15ULL
                     + (seed << 6) + (seed >> 2));
    }

    bool words_intersect(std::span<std::uint64_t const> a,
                         std::span<std::uint64_t const> b) noexcept {
      for (std::size_t w = 0; w < a.size(); ++w) {
        if ((a[w] & b[w]) != 0) {
          return true;
        }
      }
      return false;
    }

    bool words_empty(std::span<std::uint64_t const> a) noexcept {
      return std::all_of(
          a.begin(), a.end(), [](std::uint64_t w) { return w == 0; });
    }

    void require_symmetric(Pattern const& p) {
      if (!is_sign_symmetric(p)) {
        throw InvalidArgument("pattern is not sign-symmetric");
      }
    }
  }  // namespace

  ////////////////////////////////////////////////////////////////////////
  // Support
  ////////////////////////////////////////////////////////////////////////

  Support::Support(std::size_t n) : _n(n), _words(detail::words_for(n), 0) {}

  Support::Support(std::size_t n, std::initializer_list<std::size_t> members)
      : Support(n) {
    for (auto i : members) {
      insert(i);
    }
  }

  Support::Support(std::size_t n, std::span<std::uint64_t const> words)
      : _n(n), _words(words.begin(), words.end()) {
    if (_words.size() != detail::words_for(n)) {
      throw DimensionMismatch("support word count does not match universe");
    }
  }

  Support Support::singleton(std::size_t n, std::size_t i) {
    Support s(n);
    s.insert(i);
    return s;
  }

  Support Support::full(std::size_t n) {
    Support s(n);
    for (std::size_t i = 0; i < n; ++i) {
      s.insert(i);
    }
    return s;
  }

  bool Support::contains(std::size_t i) const {
    if (i >= _n) {
      return false;
    }
    return (_words[i / 64] >> (i % 64)) & 1U;
  }

  void Support::insert(std::size_t i) {
    if (i >= _n) {
      throw InvalidArgument("support member " + std::to_string(i)
                            + " outside universe of size "
                            + std::to_string(_n));
    }
    _words[i / 64] |= std::uint64_t{1} << (i % 64);
  }

  bool Support::empty() const noexcept {
    return words_empty(_words);
  }

  std::size_t Support::count() const noexcept {
    std::size_t c = 0;
    for (auto w : _words) {
      c += static_cast<std::size_t>(std::popcount(w));
    }
    return c;
  }

  std::size_t Support::first() const noexcept {
    for (std::size_t w = 0; w < _words.size(); ++w) {
      if (_words[w] != 0) {
        return w * 64 + static_cast<std::size_t>(std::countr_zero(_words[w]));
      }
    }
    return _n;
  }

  std::vector<std::size_t> Support::members() const {
    std::vector<std::size_t> out;
    for (std::size_t w = 0; w < _words.size(); ++w) {
      auto bits = _words[w];
      while (bits != 0) {
        out.push_back(w * 64 + static_cast<std::size_t>(std::countr_zero(bits)));
        bits &= bits - 1;
      }
    }
    return out;
  }

  bool Support::intersects(Support const& other) const {
    if (_n != other._n) {
      throw DimensionMismatch("supports over different universes");
    }
    return words_intersect(_words, other._words);
  }

  Support& Support::operator|=(Support const& other) {
    if (_n != other._n) {
      throw DimensionMismatch("supports over different universes");
    }
    for (std::size_t w = 0; w < _words.size(); ++w) {
      _words[w] |= other._words[w];
    }
    return *this;
  }

  std::size_t Support::hash() const noexcept {
    std::size_t h = _n;
    for (auto w : _words) {
      h = mix(h, w);
    }
    return h;
  }

  std::string Support::to_string() const {
    std::string out = "{";
    bool        sep = false;
    for (auto i : members()) {
      if (sep) {
        out += ',';
      }
      out += std::to_string(i);
      sep = true;
    }
    return out + "}";
  }

  ////////////////////////////////////////////////////////////////////////
  // Pattern
  ////////////////////////////////////////////////////////////////////////

  void Pattern::check_rows_nonempty() const {
    if (_n == 0) {
      throw InvalidArgument("pattern dimension must be at least 1");
    }
    for (std::size_t i = 0; i < _n; ++i) {
      if (words_empty(row_words(i))) {
        throw InvalidArgument("pattern row " + std::to_string(i)
                              + " is empty");
      }
    }
  }

  Pattern Pattern::from_rows(std::vector<std::vector<int>> const& rows) {
    Pattern p(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != rows.size()) {
        throw InvalidArgument("pattern is not square");
      }
      for (std::size_t j = 0; j < rows.size(); ++j) {
        if (rows[i][j] != 0) {
          p.set(i, j);
        }
      }
    }
    p.check_rows_nonempty();
    return p;
  }

  Pattern Pattern::from_supports(std::vector<Support> const& rows) {
    Pattern p(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].universe() != rows.size()) {
        throw DimensionMismatch("row support universe differs from row count");
      }
      std::copy(rows[i].words().begin(),
                rows[i].words().end(),
                p._bits.begin() + static_cast<std::ptrdiff_t>(i * p._stride));
    }
    p.check_rows_nonempty();
    return p;
  }

  Pattern Pattern::identity(std::size_t n) {
    Pattern p(n);
    for (std::size_t i = 0; i < n; ++i) {
      p.set(i, i);
    }
    p.check_rows_nonempty();
    return p;
  }

  Pattern Pattern::all_ones(std::size_t n) {
    Pattern p(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        p.set(i, j);
      }
    }
    p.check_rows_nonempty();
    return p;
  }

  bool Pattern::at(std::size_t i, std::size_t j) const {
    return (_bits[i * _stride + j / 64] >> (j % 64)) & 1U;
  }

  Support Pattern::row(std::size_t i) const {
    return Support(_n, row_words(i));
  }

  std::size_t Pattern::hash() const noexcept {
    std::size_t h = _n;
    for (auto w : _bits) {
      h = mix(h, w);
    }
    return h;
  }

  std::string Pattern::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < _n; ++i) {
      if (i != 0) {
        out += '/';
      }
      for (std::size_t j = 0; j < _n; ++j) {
        out += at(i, j) ? '1' : '0';
      }
    }
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // Operations
  ////////////////////////////////////////////////////////////////////////

  Pattern pattern_mul(Pattern const& a, Pattern const& b) {
    if (a._n != b._n) {
      throw DimensionMismatch("pattern_mul: dimensions "
                              + std::to_string(a._n) + " and "
                              + std::to_string(b._n));
    }
    Pattern     out(a._n);
    std::size_t stride = a._stride;
    for (std::size_t i = 0; i < a._n; ++i) {
      auto* dst = out._bits.data() + i * stride;
      for (std::size_t w = 0; w < stride; ++w) {
        auto bits = a._bits[i * stride + w];
        while (bits != 0) {
          auto k = w * 64 + static_cast<std::size_t>(std::countr_zero(bits));
          bits &= bits - 1;
          auto const* src = b._bits.data() + k * stride;
          for (std::size_t v = 0; v < stride; ++v) {
            dst[v] |= src[v];
          }
        }
      }
    }
    return out;
  }

  Pattern pattern_product(std::span<Pattern const>     patterns,
                          std::span<std::size_t const> word,
                          std::size_t                  n) {
    Pattern out = Pattern::identity(n);
    for (auto m : word) {
      if (m >= patterns.size()) {
        throw DimensionMismatch("word index " + std::to_string(m)
                                + " outside pattern set of size "
                                + std::to_string(patterns.size()));
      }
      out = pattern_mul(out, patterns[m]);
    }
    return out;
  }

  bool is_scrambling(Pattern const& p) {
    for (std::size_t i = 0; i < p.size(); ++i) {
      for (std::size_t j = i + 1; j < p.size(); ++j) {
        if (!words_intersect(p.row_words(i), p.row_words(j))) {
          return false;
        }
      }
    }
    return true;
  }

  bool has_positive_column(Pattern const& p) {
    auto                       first = p.row_words(0);
    std::vector<std::uint64_t> meet(first.begin(), first.end());
    for (std::size_t i = 1; i < p.size(); ++i) {
      auto r = p.row_words(i);
      for (std::size_t w = 0; w < r.size(); ++w) {
        meet[w] &= r[w];
      }
    }
    return !words_empty(meet);
  }

  Support support_step(Support const& s, Pattern const& p) {
    if (s.universe() != p.size()) {
      throw DimensionMismatch("support_step: support over "
                              + std::to_string(s.universe())
                              + " elements, pattern of dimension "
                              + std::to_string(p.size()));
    }
    std::vector<std::uint64_t> acc(detail::words_for(p.size()), 0);
    auto                       in = s.words();
    for (std::size_t w = 0; w < in.size(); ++w) {
      auto bits = in[w];
      while (bits != 0) {
        auto i = w * 64 + static_cast<std::size_t>(std::countr_zero(bits));
        bits &= bits - 1;
        auto row = p.row_words(i);
        for (std::size_t v = 0; v < acc.size(); ++v) {
          acc[v] |= row[v];
        }
      }
    }
    return Support(p.size(), acc);
  }

  bool is_sign_symmetric(Pattern const& p) {
    for (std::size_t i = 0; i < p.size(); ++i) {
      for (std::size_t j = i + 1; j < p.size(); ++j) {
        if (p.at(i, j) != p.at(j, i)) {
          return false;
        }
      }
    }
    return true;
  }

  bool is_connected_undirected(Pattern const& p) {
    require_symmetric(p);
    auto seen     = Support::singleton(p.size(), 0);
    auto frontier = seen;
    while (!frontier.empty()) {
      auto next = support_step(frontier, p);
      std::vector<std::uint64_t> fresh(next.words().begin(), next.words().end());
      for (std::size_t w = 0; w < fresh.size(); ++w) {
        fresh[w] &= ~seen.words()[w];
      }
      frontier = Support(p.size(), fresh);
      seen |= frontier;
    }
    return seen.count() == p.size();
  }

  bool is_bipartite_undirected(Pattern const& p) {
    require_symmetric(p);
    std::size_t const n = p.size();
    std::vector<int>  colour(n, -1);
    for (std::size_t start = 0; start < n; ++start) {
      if (colour[start] != -1) {
        continue;
      }
      colour[start] = 0;
      std::deque<std::size_t> queue{start};
      while (!queue.empty()) {
        auto u = queue.front();
        queue.pop_front();
        for (auto v : p.row(u).members()) {
          if (colour[v] == -1) {
            colour[v] = 1 - colour[u];
            queue.push_back(v);
          } else if (colour[v] == colour[u]) {
            return false;
          }
        }
      }
    }
    return true;
  }

  Pattern relabel(Pattern const& p, std::span<std::size_t const> perm) {
    std::size_t const n = p.size();
    if (perm.size() != n) {
      throw DimensionMismatch("relabel: permutation length differs from n");
    }
    std::vector<bool> hit(n, false);
    for (auto v : perm) {
      if (v >= n || hit[v]) {
        throw InvalidArgument("relabel: not a permutation");
      }
      hit[v] = true;
    }
    Pattern out(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (p.at(i, j)) {
          out.set(perm[i], perm[j]);
        }
      }
    }
    return out;
  }

}  // namespace consensus
