#include "doctest.h"

#include <random>

#include "consensus/decider.hpp"
#include "consensus/reductions.hpp"
#include "support/fixtures.hpp"

using namespace consensus;

namespace {
  CnfFormula figure3() {
    return parse_dimacs("p cnf 3 2\n1 2 3 0\n-1 -2 -3 0\n");
  }

  DimacsError::Kind dimacs_kind(std::string const& text) {
    try {
      parse_dimacs(text);
    } catch (DimacsError const& e) {
      return e.kind;
    }
    FAIL("expected DimacsError");
    return DimacsError::Kind::BadToken;
  }

  Decision decide(std::vector<StochasticMatrix> const& ms) {
    return decide_pair_automaton(patterns_of(ms)).decision;
  }

  std::vector<StochasticMatrix> pair(CnfFormula const& f) {
    auto [a0, a1] = build_sat_matrices(f);
    return {a0, a1};
  }
}  // namespace

TEST_CASE("parse_dimacs") {
  auto f = parse_dimacs("c comment\np cnf 1 2\n1 0\n-1 0\n");
  CHECK(f.num_vars() == 1);
  CHECK(f.num_clauses() == 2);
  CHECK(f.clauses()[0] == std::vector<Literal>{{1, true}});
  CHECK(f.clauses()[1] == std::vector<Literal>{{1, false}});

  auto g = figure3();
  CHECK(g.num_vars() == 3);
  CHECK(g.clauses()[1] == std::vector<Literal>{{1, false}, {2, false}, {3, false}});
  CHECK(parse_dimacs(g.to_dimacs()) == g);
  // Clauses may span lines; '%' ends the data.
  CHECK(parse_dimacs("p cnf 2 1\n1\n2 0\n%\n0\n").num_clauses() == 1);

  using Kind = DimacsError::Kind;
  CHECK(dimacs_kind("p cnf 3 1\n1 5 0\n") == Kind::LiteralOutOfRange);
  CHECK(dimacs_kind("p cnf 3 1\n1 -4 0\n") == Kind::LiteralOutOfRange);
  CHECK(dimacs_kind("p cnf 3 1\n1 2\n") == Kind::UnterminatedClause);
  CHECK(dimacs_kind("p cnf 3\n1 0\n") == Kind::MalformedHeader);
  CHECK(dimacs_kind("p dnf 3 1\n1 0\n") == Kind::MalformedHeader);
  CHECK(dimacs_kind("1 0\n") == Kind::MalformedHeader);
  CHECK(dimacs_kind("") == Kind::MalformedHeader);
  CHECK(dimacs_kind("p cnf 3 2\n1 0\n") == Kind::MalformedHeader);
  CHECK(dimacs_kind("p cnf 3 1\np cnf 3 1\n1 0\n") == Kind::MalformedHeader);
  CHECK(dimacs_kind("p cnf 3 1\n0\n") == Kind::EmptyClause);
  CHECK(dimacs_kind("p cnf 3 1\n1 x 0\n") == Kind::BadToken);

  try {
    parse_dimacs("p cnf 3 1\n\n1 7 0\n");
  } catch (DimacsError const& e) {
    CHECK(e.line == 3);
  }
}

TEST_CASE("CnfFormula validation") {
  CHECK_THROWS_AS(CnfFormula(0, {{{1, true}}}), InvalidArgument);
  CHECK_THROWS_AS(CnfFormula(1, {}), InvalidArgument);
  CHECK_THROWS_AS(CnfFormula(1, {{}}), InvalidArgument);
  CHECK_THROWS_AS(CnfFormula(1, {{{2, true}}}), InvalidArgument);
  // Repeated literals are fine.
  CHECK_NOTHROW(CnfFormula(1, {{{1, true}, {1, true}}}));
}

TEST_CASE("sat_oracle") {
  CHECK_FALSE(sat_oracle(parse_dimacs("p cnf 1 2\n1 0\n-1 0\n")));
  CHECK(sat_oracle(figure3()));
  CHECK(sat_oracle(parse_dimacs("p cnf 4 1\n1 -2 0\n")));
  CHECK_THROWS_AS(sat_oracle(CnfFormula(25, {{{25, true}}})), InstanceTooLarge);

  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    auto f = fixtures::random_cnf(rng, fixtures::uniform(rng, 1, 6),
                                  fixtures::uniform(rng, 1, 12), 3);
    CHECK(sat_oracle(f) == fixtures::oracle_sat(f));
  }
}

TEST_CASE("directed gadget structure") {
  auto [g0, g1] = build_sat_graphs(figure3());
  CHECK(g0.size() == 10);
  CHECK(g0.label_strings()
        == std::vector<std::string>{"C(1,1)", "C(1,2)", "C(1,3)", "C(2,1)", "C(2,2)",
                                    "C(2,3)", "S(2)", "S(3)", "S", "F"});
  CHECK(g0.index_of("S(4)") == g0.index_of("S"));
  CHECK_THROWS_AS((void)g0.index_of("X"), InvalidArgument);

  auto e = [](LabeledDigraph const& g, char const* u, char const* v) {
    return g.has_edge(g.index_of(u), g.index_of(v));
  };
  // x_j = 1 satisfies clause 1 only; x_j = 0 clause 2 only.
  for (int j = 1; j <= 3; ++j) {
    auto c1 = "C(1," + std::to_string(j) + ")";
    auto c2 = "C(2," + std::to_string(j) + ")";
    auto s  = j == 3 ? std::string("S") : "S(" + std::to_string(j + 1) + ")";
    auto n1 = j == 3 ? std::string("F") : "C(1," + std::to_string(j + 1) + ")";
    auto n2 = j == 3 ? std::string("F") : "C(2," + std::to_string(j + 1) + ")";
    CHECK(e(g1, c1.c_str(), s.c_str()));
    CHECK(e(g0, c1.c_str(), n1.c_str()));
    CHECK(e(g0, c2.c_str(), s.c_str()));
    CHECK(e(g1, c2.c_str(), n2.c_str()));
  }
  for (auto const* g : {&g0, &g1}) {
    CHECK(e(*g, "F", "F"));
    CHECK(e(*g, "S(2)", "S(3)"));
    CHECK(e(*g, "S(3)", "S"));
    CHECK(e(*g, "S", "C(1,1)"));
    CHECK(e(*g, "S", "C(2,1)"));
    CHECK_FALSE(e(*g, "S", "S"));
    CHECK(g->edge_count() == 6 + 1 + 2 + 2);
  }

  auto [a0, a1] = build_sat_matrices(figure3());
  std::size_t const F = 9, S = 8;
  for (auto const* a : {&a0, &a1}) {
    for (std::size_t j = 0; j < 10; ++j) {
      CHECK(a->at(F, j) == Rational(j == F ? 1 : 0));
    }
    CHECK(a->at(S, 0) == Rational(1) / Rational(2));
    CHECK(a->at(S, 3) == Rational(1) / Rational(2));
  }
}

TEST_CASE("gadget sizes") {
  auto xnx = parse_dimacs("p cnf 1 2\n1 0\n-1 0\n");
  CHECK(build_sat_matrices(xnx).first.size() == 4);
  auto rep = parse_dimacs("p cnf 1 2\n1 1 1 0\n-1 -1 -1 0\n");
  CHECK(build_sat_matrices(rep).first.size() == 4);
  CHECK(decide(pair(rep)) == Decision::Consensus);

  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 20; ++trial) {
    std::size_t n = fixtures::uniform(rng, 1, 5), m = fixtures::uniform(rng, 1, 5);
    auto        f = fixtures::random_cnf(rng, n, m, 3);
    CHECK(build_sat_matrices(f).first.size() == (m + 1) * n + 1);
    CHECK(build_doubled(f).first.size() == 2 * ((m + 1) * n + 1));
    CHECK(build_undirected_triple(f)[2].size() == 4 * (m + 1) * n + 2);
  }
}

TEST_CASE("single positive literal by hand") {
  auto f        = parse_dimacs("p cnf 1 1\n1 0\n");
  auto [g0, g1] = build_sat_graphs(f);
  CHECK(g0.label_strings() == std::vector<std::string>{"C(1,1)", "S", "F"});
  CHECK(g1.has_edge(0, 1));
  CHECK_FALSE(g1.has_edge(0, 2));
  CHECK(g0.has_edge(0, 2));
  CHECK_FALSE(g0.has_edge(0, 1));
}

TEST_CASE("check_path_in_sequence") {
  auto [g0, g1] = build_sat_graphs(figure3());
  std::vector<LabeledDigraph> none;
  CHECK(check_path_in_sequence(none, "S", "S").exists);
  CHECK_FALSE(check_path_in_sequence(none, "S", "F").exists);

  std::vector<LabeledDigraph> one{g0};
  auto                        p = check_path_in_sequence(one, "S", "C(1,1)");
  CHECK(p.exists);
  REQUIRE(p.path.size() == 1);
  CHECK(p.path[0].time == 1);
  CHECK_THROWS_AS(check_path_in_sequence(one, "S", "nope"), InvalidArgument);

  // Assignment (1,0,0) satisfies the formula: no S -> F path.
  std::vector<LabeledDigraph> seq{g0, g1, g0, g0};
  CHECK_FALSE(check_path_in_sequence(seq, "S", "F").exists);
  // All-ones falsifies clause 2.
  std::vector<LabeledDigraph> bad{g0, g1, g1, g1};
  auto                        q = check_path_in_sequence(bad, "S", "F");
  CHECK(q.exists);
  CHECK(q.path.size() == 4);
  for (std::size_t s = 0; s < q.path.size(); ++s) {
    CHECK(q.path[s].time == s + 1);
    CHECK(bad[s].has_edge(q.path[s].from, q.path[s].to));
    if (s > 0) {
      CHECK(q.path[s].from == q.path[s - 1].to);
    }
  }
}

TEST_CASE("satisfiable iff some length-(n+1) sequence avoids S -> F") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t n = fixtures::uniform(rng, 1, 4);
    auto        f = fixtures::random_cnf(rng, n, fixtures::uniform(rng, 1, 6), 3);
    auto [g0, g1] = build_sat_graphs(f);
    bool avoided  = false;
    for (std::uint32_t bits = 0; bits < (1U << (n + 1)); ++bits) {
      std::vector<LabeledDigraph> seq;
      for (std::size_t t = 0; t <= n; ++t) {
        seq.push_back(((bits >> t) & 1) ? g1 : g0);
      }
      avoided = avoided || !check_path_in_sequence(seq, "S", "F").exists;
    }
    CHECK(avoided == fixtures::oracle_sat(f));

    if (fixtures::oracle_sat(f)) {
      // The satisfying assignment itself gives such a sequence.
      for (std::uint32_t a = 0; a < (1U << n); ++a) {
        bool sat = true;
        for (auto const& clause : f.clauses()) {
          bool any = false;
          for (auto const& lit : clause) {
            any = any || (((a >> (lit.variable - 1)) & 1) != 0) == lit.positive;
          }
          sat = sat && any;
        }
        if (!sat) {
          continue;
        }
        std::vector<LabeledDigraph> seq{g0};
        for (std::size_t j = 0; j < n; ++j) {
          seq.push_back(((a >> j) & 1) ? g1 : g0);
        }
        CHECK_FALSE(check_path_in_sequence(seq, "S", "F").exists);
        break;
      }
    }
  }
}

TEST_CASE("doubled gadget structure") {
  auto [d0, d1] = build_doubled_graphs(figure3());
  CHECK(d0.size() == 20);
  CHECK(d0.label(10) == "C(1,1)'");
  std::size_t const F = d0.index_of("F"), F2 = d0.index_of("F'");
  for (auto const* d : {&d0, &d1}) {
    CHECK(d->out_neighbours()[F].count() == 11);
    CHECK(d->out_neighbours()[F2].count() == 11);
    CHECK(d->has_edge(F, F2));
    CHECK(d->has_edge(F2, F));
  }
  auto [m0, m1] = build_doubled(figure3());
  CHECK(m0.at(F, 0) == Rational(1) / Rational(11));
  CHECK(m1.at(F, F2) == Rational(1) / Rational(11));
  CHECK(m0.at(F, 10) == Rational(0));
}

TEST_CASE("undirected gadget structure") {
  auto f  = figure3();
  auto gs = build_undirected_graphs(f);
  REQUIRE(gs.size() == 3);
  auto bs = build_undirected_triple(f);
  for (std::size_t b = 0; b < 3; ++b) {
    CHECK(gs[b].undirected());
    CHECK(gs[b].size() == 38);
    CHECK(is_undirected(bs[b]));
  }
  CHECK(gs[0].label(0) == "C(1,1)T");
  CHECK(gs[0].label(1) == "C(1,1)B");
  CHECK(gs[0].label(18) == "F");
  CHECK(gs[0].label(37) == "F'");

  auto [d0, d1] = build_sat_graphs(f);
  auto idx      = [&](LabeledDigraph const& g, std::string const& s) {
    return g.index_of(s);
  };
  // {k_T, l_B} for every directed edge (k, l), with F unsplit.
  for (std::size_t b = 0; b < 2; ++b) {
    auto const& d = b == 0 ? d0 : d1;
    for (std::size_t k = 0; k < d.size(); ++k) {
      for (auto l : d.out_neighbours()[k].members()) {
        auto kt = d.label(k) == "F" ? "F" : d.label(k) + "T";
        auto lb = d.label(l) == "F" ? "F" : d.label(l) + "B";
        CHECK(gs[b].has_edge(idx(gs[b], kt), idx(gs[b], lb)));
      }
    }
    CHECK(gs[b].has_edge(idx(gs[b], "SB"), idx(gs[b], "F")));
    CHECK_FALSE(gs[b].has_edge(idx(gs[b], "ST"), idx(gs[b], "SB")));
  }
  CHECK(gs[2].has_edge(idx(gs[2], "ST"), idx(gs[2], "SB")));
  CHECK(gs[2].has_edge(idx(gs[2], "ST"), idx(gs[2], "F")));
  CHECK(gs[2].has_edge(idx(gs[2], "F"), idx(gs[2], "F")));
  CHECK_FALSE(gs[2].has_edge(idx(gs[2], "SB"), idx(gs[2], "F")));
  for (auto const& g : gs) {
    CHECK(g.has_edge(idx(g, "F"), idx(g, "F'")));
  }
}

TEST_CASE("reductions decide satisfiability") {
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 25; ++trial) {
    std::size_t n    = fixtures::uniform(rng, 1, 3);
    auto        f    = fixtures::random_cnf(rng, n, fixtures::uniform(rng, 1, 4), 3);
    bool const  sat  = fixtures::oracle_sat(f);
    auto const  want = sat ? Decision::NotConsensus : Decision::Consensus;
    CHECK(decide(pair(f)) == want);
    auto [d0, d1] = build_doubled(f);
    CHECK(decide({d0, d1}) == want);
    CHECK(decide(build_undirected_triple(f)) == want);
  }
}
