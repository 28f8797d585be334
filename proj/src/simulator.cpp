#include "consensus/simulator.hpp"

#include <algorithm>
#include <cstdio>
#include <random>

#include "consensus/errors.hpp"

namespace consensus {

  namespace {
    std::size_t check_matrices(std::span<StochasticMatrix const> matrices) {
      if (matrices.empty()) {
        throw InvalidArgument("empty matrix set");
      }
      std::size_t const n = matrices.front().size();
      for (auto const& m : matrices) {
        if (m.size() != n) {
          throw DimensionMismatch("matrices of different dimension");
        }
      }
      return n;
    }

    void check_word(SwitchingWord const& word, std::size_t k, std::size_t steps) {
      if (!word.defined_for(steps)) {
        throw InvalidArgument("switching word of length "
                              + std::to_string(word.prefix.size())
                              + " undefined at step "
                              + std::to_string(word.prefix.size()));
      }
      auto bad = [k](std::size_t m) { return m >= k; };
      if (std::any_of(word.prefix.begin(), word.prefix.end(), bad)
          || std::any_of(word.cycle.begin(), word.cycle.end(), bad)) {
        throw InvalidArgument("switching word index outside matrix set of size "
                              + std::to_string(k));
      }
    }

    using DenseMatrix = std::vector<std::vector<double>>;

    DenseMatrix to_dense(StochasticMatrix const& m) {
      DenseMatrix out(m.size(), std::vector<double>(m.size()));
      for (std::size_t i = 0; i < m.size(); ++i) {
        for (std::size_t j = 0; j < m.size(); ++j) {
          out[i][j] = m.at(i, j).to_double();
        }
      }
      return out;
    }

    double spread(std::vector<double> const& x) {
      auto [lo, hi] = std::minmax_element(x.begin(), x.end());
      return *hi - *lo;
    }
  }  // namespace

  std::size_t SwitchingWord::at(std::size_t t) const {
    if (t < prefix.size()) {
      return prefix[t];
    }
    if (cycle.empty()) {
      throw InvalidArgument("switching word undefined at step "
                            + std::to_string(t));
    }
    return cycle[(t - prefix.size()) % cycle.size()];
  }

  SwitchingWord SwitchingWord::random(std::size_t   k,
                                      std::size_t   length,
                                      std::uint64_t seed) {
    if (k == 0) {
      throw InvalidArgument("random word over an empty alphabet");
    }
    // Raw engine output: distributions are implementation-defined.
    std::mt19937_64 engine(seed);
    SwitchingWord   w;
    w.prefix.reserve(length);
    for (std::size_t t = 0; t < length; ++t) {
      w.prefix.push_back(static_cast<std::size_t>(engine() % k));
    }
    return w;
  }

  std::optional<std::size_t>
  Trajectory::steps_to(double threshold) const noexcept {
    for (std::size_t t = 0; t < disagreement.size(); ++t) {
      if (disagreement[t] < threshold) {
        return t;
      }
    }
    return std::nullopt;
  }

  Trajectory simulate(std::span<StochasticMatrix const> matrices,
                      SwitchingWord const&              word,
                      std::span<double const>           x0,
                      std::size_t                       steps) {
    std::size_t const n = check_matrices(matrices);
    if (x0.size() != n) {
      throw DimensionMismatch("initial state has " + std::to_string(x0.size())
                              + " entries, expected " + std::to_string(n));
    }
    check_word(word, matrices.size(), steps);

    std::vector<DenseMatrix> dense;
    dense.reserve(matrices.size());
    for (auto const& m : matrices) {
      dense.push_back(to_dense(m));
    }

    Trajectory traj;
    traj.states.emplace_back(x0.begin(), x0.end());
    traj.disagreement.push_back(spread(traj.states.back()));
    for (std::size_t t = 0; t < steps; ++t) {
      auto const&         p = dense[word.at(t)];
      auto const&         x = traj.states.back();
      std::vector<double> y(n, 0.0);
      for (std::size_t i = 0; i < n; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
          acc += p[i][j] * x[j];
        }
        y[i] = acc;
      }
      traj.disagreement.push_back(spread(y));
      traj.states.push_back(std::move(y));
    }
    return traj;
  }

  std::vector<Rational>
  row_difference_trajectory(std::span<StochasticMatrix const> matrices,
                            SwitchingWord const&              word,
                            std::size_t                       i,
                            std::size_t                       j,
                            std::size_t                       steps) {
    std::size_t const n = check_matrices(matrices);
    if (i >= n || j >= n || i == j) {
      throw InvalidArgument("row pair must be two distinct rows");
    }
    check_word(word, matrices.size(), steps);

    std::vector<Rational> v(n);
    v[i] = 1;
    v[j] = -1;
    auto norm = [&] {
      Rational s;
      for (auto const& x : v) {
        s += abs(x);
      }
      return s;
    };

    std::vector<Rational> out{norm()};
    for (std::size_t t = 0; t < steps; ++t) {
      auto const&           p = matrices[word.at(t)];
      std::vector<Rational> w(n);
      for (std::size_t r = 0; r < n; ++r) {
        if (v[r].sign() == 0) {
          continue;
        }
        for (std::size_t c = 0; c < n; ++c) {
          if (p.at(r, c).sign() != 0) {
            w[c] += v[r] * p.at(r, c);
          }
        }
      }
      v = std::move(w);
      out.push_back(norm());
    }
    return out;
  }

  std::vector<double>
  row_difference_trajectory_approx(std::span<StochasticMatrix const> matrices,
                                   SwitchingWord const&              word,
                                   std::size_t                       i,
                                   std::size_t                       j,
                                   std::size_t                       steps) {
    std::size_t const n = check_matrices(matrices);
    if (i >= n || j >= n || i == j) {
      throw InvalidArgument("row pair must be two distinct rows");
    }
    check_word(word, matrices.size(), steps);

    std::vector<DenseMatrix> dense;
    for (auto const& m : matrices) {
      dense.push_back(to_dense(m));
    }
    std::vector<double> v(n, 0.0);
    v[i] = 1.0;
    v[j] = -1.0;
    auto norm = [&] {
      double s = 0.0;
      for (auto x : v) {
        s += x < 0 ? -x : x;
      }
      return s;
    };
    std::vector<double> out{norm()};
    for (std::size_t t = 0; t < steps; ++t) {
      auto const&         p = dense[word.at(t)];
      std::vector<double> w(n, 0.0);
      for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
          w[c] += v[r] * p[r][c];
        }
      }
      v = std::move(w);
      out.push_back(norm());
    }
    return out;
  }

  std::vector<Rational>
  product_delta_trajectory(std::span<StochasticMatrix const> matrices,
                           SwitchingWord const&              word,
                           std::size_t                       steps,
                           std::size_t                       max_bits) {
    check_matrices(matrices);
    check_word(word, matrices.size(), steps);

    std::vector<Rational> out;
    if (steps == 0) {
      return out;
    }
    auto product = matrices[word.at(0)];
    out.push_back(delta(product));
    for (std::size_t t = 1; t < steps; ++t) {
      product = mat_mul(matrices[word.at(t)], product);
      if (product.bit_size() > max_bits) {
        throw ResourceLimitExceeded("product_delta_trajectory: product bits",
                                    max_bits);
      }
      out.push_back(delta(product));
    }
    return out;
  }

  void write_csv(std::ostream& out, Trajectory const& trajectory) {
    std::size_t const n
        = trajectory.states.empty() ? 0 : trajectory.states.front().size();
    out << 't';
    for (std::size_t i = 0; i < n; ++i) {
      out << ",x_" << i;
    }
    out << ",disagreement\n";
    char buf[32];
    for (std::size_t t = 0; t < trajectory.states.size(); ++t) {
      out << t;
      for (auto x : trajectory.states[t]) {
        std::snprintf(buf, sizeof buf, "%.17g", x);
        out << ',' << buf;
      }
      std::snprintf(buf, sizeof buf, "%.17g", trajectory.disagreement[t]);
      out << ',' << buf << '\n';
    }
  }

}  // namespace consensus
