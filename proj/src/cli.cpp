#include "consensus/cli.hpp"

#include <chrono>
#include <fstream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"

#include "consensus/decider.hpp"
#include "consensus/io.hpp"
#include "consensus/reductions.hpp"
#include "consensus/simulator.hpp"

namespace consensus::cli {

  namespace {

    std::string read_file(std::string const& path) {
      std::ifstream in(path, std::ios::binary);
      if (!in) {
        throw DocumentError("cannot open '" + path + "'", 0, 0);
      }
      std::ostringstream buf;
      buf << in.rdbuf();
      return buf.str();
    }

    void write_file(std::string const& path, std::string const& content) {
      std::ofstream out(path, std::ios::binary);
      if (!out || !(out << content)) {
        throw std::runtime_error("cannot write '" + path + "'");
      }
    }

    std::vector<std::string> split(std::string const& text) {
      std::vector<std::string> out;
      std::string              item;
      std::istringstream       in(text);
      while (std::getline(in, item, ',')) {
        auto b = item.find_first_not_of(' ');
        auto e = item.find_last_not_of(' ');
        if (b != std::string::npos) {
          out.push_back(item.substr(b, e - b + 1));
        }
      }
      return out;
    }

    std::vector<std::size_t> parse_indices(std::string const& text) {
      std::vector<std::size_t> out;
      for (auto const& s : split(text)) {
        std::size_t used = 0;
        long long   v    = -1;
        try {
          v = std::stoll(s, &used);
        } catch (std::exception const&) {
          used = 0;
        }
        if (used != s.size() || v < 0) {
          throw InvalidArgument("bad matrix index '" + s + "'");
        }
        out.push_back(static_cast<std::size_t>(v));
      }
      return out;
    }

    std::string list(std::vector<std::size_t> const& v) {
      std::string out = "[";
      for (std::size_t i = 0; i < v.size(); ++i) {
        out += (i ? ", " : "") + std::to_string(v[i]);
      }
      return out + "]";
    }

    std::string list(std::vector<double> const& v) {
      std::ostringstream out;
      out.precision(17);
      out << '[';
      for (std::size_t i = 0; i < v.size(); ++i) {
        out << (i ? ", " : "") << v[i];
      }
      out << ']';
      return out.str();
    }

    struct DecideArgs {
      std::string input;
      std::string algorithm = "auto";
      bool        json      = false;
      std::size_t limit     = DeciderOptions{}.state_limit;
    };

    int cmd_decide(DecideArgs const& a, std::ostream& out) {
      auto doc      = parse_matrix_set(read_file(a.input));
      auto patterns = patterns_of(doc.matrices);

      DeciderOptions opts;
      opts.state_limit = a.limit;

      std::string algorithm = a.algorithm;
      if (algorithm == "auto") {
        bool all_symmetric = std::all_of(
            doc.matrices.begin(), doc.matrices.end(), [](auto const& m) {
              return is_symmetric(m);
            });
        algorithm = all_symmetric ? "symmetric" : "pairs";
      }

      auto const       start = std::chrono::steady_clock::now();
      ConsensusVerdict v;
      if (algorithm == "pairs") {
        v = decide_pair_automaton(patterns, opts);
      } else if (algorithm == "theorem") {
        v = decide_theorem_check(patterns, opts);
      } else if (algorithm == "literal") {
        v = decide_literal_enumeration(patterns, opts);
      } else {
        v = decide_symmetric(doc.matrices, opts);
      }
      ReportContext ctx;
      ctx.elapsed = std::chrono::duration_cast<std::chrono::microseconds>(
          std::chrono::steady_clock::now() - start);
      ctx.digest = input_digest(doc);

      if (a.json) {
        out << verdict_to_json(v, ctx, &doc).dump(2) << '\n';
      } else {
        out << "decision: " << to_string(v.decision) << '\n'
            << "algorithm: " << to_string(v.algorithm) << '\n'
            << "n: " << doc.n() << ", k: " << doc.k() << '\n'
            << "theorem bound: 2^" << v.theorem_bound_log2() << '\n';
        if (v.scrambling_index) {
          out << "scrambling index: " << *v.scrambling_index << '\n';
        }
        if (v.witness) {
          auto const& w = *v.witness;
          out << "witness rows: " << doc.label(w.row_pair.first) << ", "
              << doc.label(w.row_pair.second) << '\n'
              << "witness prefix: " << list(w.prefix) << '\n'
              << "witness cycle: " << list(w.cycle) << '\n';
        }
      }
      return v.decision == Decision::Consensus ? kConsensus : kNotConsensus;
    }

    struct ReduceArgs {
      std::string cnf;
      std::string variant = "directed";
      std::string out;
      std::string dot;
    };

    int cmd_reduce(ReduceArgs const& a, std::ostream& out) {
      auto f = parse_dimacs(read_file(a.cnf));

      std::vector<LabeledDigraph> graphs;
      if (a.variant == "directed") {
        auto [g0, g1] = build_sat_graphs(f);
        graphs        = {std::move(g0), std::move(g1)};
      } else if (a.variant == "doubled") {
        auto [g0, g1] = build_doubled_graphs(f);
        graphs        = {std::move(g0), std::move(g1)};
      } else {
        graphs = build_undirected_graphs(f);
      }

      MatrixSetDocument doc;
      for (auto const& g : graphs) {
        doc.matrices.push_back(from_graph(g.out_neighbours()));
      }
      doc.node_labels = graphs.front().label_strings();

      auto text = serialize_matrix_set(doc);
      if (a.out.empty()) {
        out << text;
      } else {
        write_file(a.out, text);
      }
      if (!a.dot.empty()) {
        std::ostringstream dot;
        write_dot(dot, graphs, a.variant);
        write_file(a.dot, dot.str());
      }
      return kConsensus;
    }

    int cmd_verify(std::string const& input,
                   std::string const& witness_path,
                   std::ostream&      out) {
      auto doc      = parse_matrix_set(read_file(input));
      auto patterns = patterns_of(doc.matrices);

      auto           text = read_file(witness_path);
      nlohmann::json j;
      try {
        j = nlohmann::json::parse(text);
      } catch (nlohmann::json::parse_error const& e) {
        throw DocumentError(std::string("witness: ") + e.what(), 0, 0);
      }
      auto w     = witness_from_json(j);
      auto check = verify_witness(patterns, w);
      if (check.ok()) {
        out << "witness verified\n";
        return kConsensus;
      }
      out << "witness rejected: " << to_string(check.defect);
      if (check.defect == WitnessDefect::SupportsOverlap
          || check.defect == WitnessDefect::CycleNotClosed) {
        out << " at step " << check.step;
      }
      out << '\n';
      if (check.defect == WitnessDefect::RowIndexOutOfRange
          || check.defect == WitnessDefect::MatrixIndexOutOfRange) {
        return kInputError;
      }
      return kNotConsensus;
    }

    struct SimulateArgs {
      std::string                  input;
      std::string                  word;
      std::string                  cycle;
      std::optional<std::uint64_t> seed;
      std::string                  witness;
      std::string                  x0;
      std::size_t                  steps     = 100;
      std::string                  csv;
      double                       threshold = 1e-6;
    };

    int cmd_simulate(SimulateArgs const& a, std::ostream& out) {
      auto              doc = parse_matrix_set(read_file(a.input));
      std::size_t const n   = doc.n();
      std::size_t const k   = doc.k();

      SwitchingWord       word;
      std::vector<double> x0;
      if (!a.witness.empty()) {
        // Left products along reverse(cycle)^r equal (cycle product)^r;
        // starting from the indicator of the first support after the
        // prefix, the state keeps disagreement 1.
        nlohmann::json j;
        try {
          j = nlohmann::json::parse(read_file(a.witness));
        } catch (nlohmann::json::parse_error const& e) {
          throw DocumentError(std::string("witness: ") + e.what(), 0, 0);
        }
        auto w        = witness_from_json(j);
        auto patterns = patterns_of(doc.matrices);
        auto check    = verify_witness(patterns, w);
        if (!check.ok()) {
          throw InvalidArgument("witness rejected: "
                                + std::string(to_string(check.defect)));
        }
        word.cycle.assign(w.cycle.rbegin(), w.cycle.rend());
        auto s = Support::singleton(n, w.row_pair.first);
        for (auto m : w.prefix) {
          s = support_step(s, patterns[m]);
        }
        x0.assign(n, 0.0);
        for (auto i : s.members()) {
          x0[i] = 1.0;
        }
      } else if (a.seed) {
        word = SwitchingWord::random(k, a.steps, *a.seed);
      } else {
        word.prefix = parse_indices(a.word);
        word.cycle  = parse_indices(a.cycle);
      }
      if (!a.x0.empty()) {
        x0.clear();
        for (auto const& s : split(a.x0)) {
          x0.push_back(Rational::parse(s).to_double());
        }
      } else if (x0.empty()) {
        x0.assign(n, 0.0);
        x0[0] = 1.0;
      }

      auto traj = simulate(doc.matrices, word, x0, a.steps);
      if (a.csv == "-") {
        write_csv(out, traj);
        return kConsensus;
      }
      if (!a.csv.empty()) {
        std::ostringstream csv;
        write_csv(csv, traj);
        write_file(a.csv, csv.str());
      }
      auto hit = traj.steps_to(a.threshold);
      out << "steps: " << a.steps << '\n'
          << "final state: " << list(traj.states.back()) << '\n'
          << "final disagreement: " << traj.disagreement.back() << '\n'
          << "steps to " << a.threshold << ": "
          << (hit ? std::to_string(*hit) : std::string("none")) << '\n';
      return kConsensus;
    }

    int cmd_index(std::string const& input, std::ostream& out) {
      auto doc      = parse_matrix_set(read_file(input));
      auto patterns = patterns_of(doc.matrices);
      auto index    = scrambling_index(patterns);
      if (index) {
        out << *index << '\n';
        return kConsensus;
      }
      out << "none\n";
      return kNotConsensus;
    }

  }  // namespace

  int run(std::vector<std::string> const& args,
          std::ostream&                   out,
          std::ostream&                   err) {
    CLI::App app{"Decide consensus sets of stochastic matrices and build "
                 "SAT gadgets",
                 "consensus"};
    app.require_subcommand(1);

    DecideArgs decide_args;
    auto*      decide = app.add_subcommand(
        "decide", "Decide whether a matrix set is a consensus set");
    decide->add_option("input", decide_args.input, "Matrix-set JSON")
        ->required();
    decide
        ->add_option("--algorithm", decide_args.algorithm, "Decision procedure")
        ->check(CLI::IsMember({"auto", "pairs", "theorem", "literal", "symmetric"}));
    decide->add_flag("--json", decide_args.json, "Print a JSON verdict report");
    decide->add_option(
        "--state-limit", decide_args.limit, "Ceiling on explored states");

    ReduceArgs reduce_args;
    auto*      reduce
        = app.add_subcommand("reduce", "Build consensus instances from CNF");
    reduce->add_option("cnf", reduce_args.cnf, "DIMACS CNF file")->required();
    reduce->add_option("--variant", reduce_args.variant, "Gadget")
        ->check(CLI::IsMember({"directed", "doubled", "undirected"}));
    reduce->add_option("--out", reduce_args.out, "Matrix-set JSON output");
    reduce->add_option("--dot", reduce_args.dot, "DOT output for the graphs");

    std::string verify_input, verify_witness_path;
    auto*       verify = app.add_subcommand(
        "verify", "Check a non-consensus witness against a matrix set");
    verify->add_option("input", verify_input, "Matrix-set JSON")->required();
    verify
        ->add_option("witness",
                     verify_witness_path,
                     "Witness JSON or a verdict report with a witness")
        ->required();

    SimulateArgs sim_args;
    auto*        sim = app.add_subcommand(
        "simulate", "Simulate x(t+1) = P_tau(t) x(t) in double precision");
    sim->add_option("input", sim_args.input, "Matrix-set JSON")->required();
    auto* word_opt
        = sim->add_option("--word", sim_args.word, "Comma-separated prefix");
    auto* cycle_opt = sim->add_option(
        "--cycle", sim_args.cycle, "Comma-separated cycle repeated after --word");
    auto* seed_opt = sim->add_option(
        "--random-seed", sim_args.seed, "Seed for a uniformly random word");
    auto* witness_opt = sim->add_option(
        "--witness", sim_args.witness, "Follow a witness cycle");
    seed_opt->excludes(word_opt)->excludes(cycle_opt)->excludes(witness_opt);
    witness_opt->excludes(word_opt)->excludes(cycle_opt);
    sim->add_option("--x0", sim_args.x0, "Comma-separated initial state");
    sim->add_option("--steps", sim_args.steps, "Number of steps");
    sim->add_option("--csv", sim_args.csv, "Write trajectory CSV ('-' = stdout)");
    sim->add_option(
        "--threshold", sim_args.threshold, "Disagreement threshold to report");

    std::string index_input;
    auto*       index = app.add_subcommand(
        "index", "Print the scrambling index, or 'none'");
    index->add_option("input", index_input, "Matrix-set JSON")->required();

    try {
      std::vector<std::string> reversed(args.rbegin(), args.rend());
      app.parse(reversed);
    } catch (CLI::ParseError const& e) {
      int code = app.exit(e, out, err);
      return code == 0 ? 0 : kInputError;
    }

    try {
      if (*decide) {
        return cmd_decide(decide_args, out);
      }
      if (*reduce) {
        return cmd_reduce(reduce_args, out);
      }
      if (*verify) {
        return cmd_verify(verify_input, verify_witness_path, out);
      }
      if (*sim) {
        return cmd_simulate(sim_args, out);
      }
      if (*index) {
        return cmd_index(index_input, out);
      }
    } catch (ResourceLimitExceeded const& e) {
      err << "resource limit: " << e.what() << '\n';
      return kResourceLimit;
    } catch (InstanceTooLarge const& e) {
      err << "instance too large: " << e.what() << '\n';
      return kResourceLimit;
    } catch (DimacsError const& e) {
      err << "error: " << e.what() << '\n';
      return kInputError;
    } catch (DocumentError const& e) {
      err << "error: " << e.what() << '\n';
      return kInputError;
    } catch (std::invalid_argument const& e) {
      err << "error: " << e.what() << '\n';
      return kInputError;
    } catch (std::runtime_error const& e) {
      err << "error: " << e.what() << '\n';
      return kInputError;
    }
    return kInputError;
  }

}  // namespace consensus::cli
