#include "consensus/io.hpp"

#include <array>
#include <charconv>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>

#include <openssl/evp.h>

namespace consensus {

  using nlohmann::json;

  namespace {

    std::pair<std::size_t, std::size_t> line_column(std::string_view text,
                                                    std::size_t      byte) {
      std::size_t line = 1, column = 1;
      for (std::size_t i = 0; i < text.size() && i + 1 < byte; ++i) {
        if (text[i] == '\n') {
          ++line;
          column = 1;
        } else {
          ++column;
        }
      }
      return {line, column};
    }

    [[noreturn]] void fail(std::string const& what) {
      throw DocumentError(what, 0, 0);
    }

    Rational entry_from_json(json const& v, std::string const& where) {
      try {
        if (v.is_string()) {
          return Rational::parse(v.get<std::string>());
        }
        if (v.is_number_integer()) {
          return Rational::parse(v.dump());
        }
        if (v.is_number_float()) {
          std::array<char, 64> buf{};
          auto [ptr, ec] = std::to_chars(
              buf.data(), buf.data() + buf.size(), v.get<double>());
          if (ec != std::errc()) {
            fail(where + ": unrepresentable number");
          }
          return Rational::parse(std::string_view(buf.data(), ptr - buf.data()));
        }
      } catch (InvalidArgument const& e) {
        fail(where + ": " + e.what());
      }
      fail(where + ": expected a rational string or number");
    }

    std::size_t size_field(json const& doc, char const* key) {
      auto it = doc.find(key);
      if (it == doc.end()) {
        fail(std::string("missing field \"") + key + "\"");
      }
      if (!it->is_number_unsigned() || it->get<std::size_t>() == 0) {
        fail(std::string("field \"") + key + "\" must be a positive integer");
      }
      return it->get<std::size_t>();
    }

    std::string sha256_hex(std::string_view data) {
      std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
      unsigned int                               len = 0;
      if (EVP_Digest(data.data(), data.size(), md.data(), &len, EVP_sha256(),
                     nullptr)
          != 1) {
        throw std::runtime_error("SHA-256 digest failed");
      }
      static char const* hex = "0123456789abcdef";
      std::string        out;
      for (unsigned int i = 0; i < len; ++i) {
        out += hex[md[i] >> 4];
        out += hex[md[i] & 0xf];
      }
      return out;
    }

    std::vector<std::size_t> index_list(json const& j, char const* key) {
      auto it = j.find(key);
      if (it == j.end() || !it->is_array()) {
        fail(std::string("witness field \"") + key + "\" must be an array");
      }
      std::vector<std::size_t> out;
      for (auto const& x : *it) {
        if (!x.is_number_unsigned()) {
          fail(std::string("witness field \"") + key
               + "\" must hold nonnegative integers");
        }
        out.push_back(x.get<std::size_t>());
      }
      return out;
    }

  }  // namespace

  std::string MatrixSetDocument::label(std::size_t i) const {
    if (node_labels && i < node_labels->size()) {
      return (*node_labels)[i];
    }
    return std::to_string(i);
  }

  MatrixSetDocument parse_matrix_set(std::string_view text) {
    json doc;
    try {
      doc = json::parse(text);
    } catch (json::parse_error const& e) {
      auto [line, column] = line_column(text, e.byte);
      throw DocumentError("JSON syntax error at line " + std::to_string(line)
                              + ", column " + std::to_string(column) + ": "
                              + e.what(),
                          line,
                          column);
    }
    if (!doc.is_object()) {
      fail("matrix set must be a JSON object");
    }
    std::size_t const n = size_field(doc, "n");
    std::size_t const k = size_field(doc, "k");

    MatrixSetDocument out;
    if (auto it = doc.find("node_labels"); it != doc.end()) {
      if (!it->is_array() || it->size() != n) {
        fail("node_labels must be an array of n strings");
      }
      std::vector<std::string> labels;
      std::set<std::string>    unique;
      for (auto const& l : *it) {
        if (!l.is_string()) {
          fail("node_labels must be an array of n strings");
        }
        labels.push_back(l.get<std::string>());
        if (!unique.insert(labels.back()).second) {
          fail("duplicate node label \"" + labels.back() + "\"");
        }
      }
      out.node_labels = std::move(labels);
    }

    auto it = doc.find("matrices");
    if (it == doc.end() || !it->is_array()) {
      fail("missing array field \"matrices\"");
    }
    if (it->size() != k) {
      fail("\"k\" is " + std::to_string(k) + " but \"matrices\" has "
           + std::to_string(it->size()) + " entries");
    }
    for (std::size_t m = 0; m < k; ++m) {
      auto const& mat   = (*it)[m];
      std::string where = "/matrices/" + std::to_string(m);
      if (!mat.is_array() || mat.size() != n) {
        fail(where + ": expected " + std::to_string(n) + " rows");
      }
      std::vector<std::vector<Rational>> rows(n);
      for (std::size_t i = 0; i < n; ++i) {
        auto const& row = mat[i];
        if (!row.is_array() || row.size() != n) {
          fail(where + "/" + std::to_string(i) + ": expected "
               + std::to_string(n) + " entries");
        }
        for (std::size_t j = 0; j < n; ++j) {
          rows[i].push_back(entry_from_json(
              row[j], where + "/" + std::to_string(i) + "/" + std::to_string(j)));
        }
      }
      try {
        out.matrices.push_back(StochasticMatrix::validate(std::move(rows)));
      } catch (InvalidArgument const& e) {
        fail("matrix " + std::to_string(m) + ": " + e.what());
      }
    }
    return out;
  }

  std::string serialize_matrix_set(MatrixSetDocument const& doc) {
    // Hand-formatted so each matrix row sits on one line.
    std::ostringstream out;
    out << "{\n  \"n\": " << doc.n() << ",\n  \"k\": " << doc.k() << ",\n";
    if (doc.node_labels) {
      out << "  \"node_labels\": " << json(*doc.node_labels).dump() << ",\n";
    }
    out << "  \"matrices\": [";
    for (std::size_t m = 0; m < doc.k(); ++m) {
      out << (m == 0 ? "\n" : ",\n") << "    [";
      auto const& mat = doc.matrices[m];
      for (std::size_t i = 0; i < mat.size(); ++i) {
        json row = json::array();
        for (auto const& x : mat.row(i)) {
          row.push_back(x.to_string());
        }
        out << (i == 0 ? "\n" : ",\n") << "      " << row.dump();
      }
      out << "\n    ]";
    }
    out << "\n  ]\n}\n";
    return out.str();
  }

  std::string input_digest(MatrixSetDocument const& doc) {
    return "sha256:" + sha256_hex(serialize_matrix_set(doc));
  }

  json witness_to_json(NonConsensusWitness const& w) {
    return json{{"row_pair", {w.row_pair.first, w.row_pair.second}},
                {"prefix", w.prefix},
                {"cycle", w.cycle}};
  }

  NonConsensusWitness witness_from_json(json const& j) {
    if (!j.is_object()) {
      fail("witness must be a JSON object");
    }
    if (auto it = j.find("witness"); it != j.end()) {
      if (it->is_null()) {
        fail("report carries no witness");
      }
      return witness_from_json(*it);
    }
    if (j.contains("decision")) {
      fail("report carries no witness");
    }
    auto pair = index_list(j, "row_pair");
    if (pair.size() != 2) {
      fail("witness row_pair must have two entries");
    }
    NonConsensusWitness w;
    w.row_pair = {pair[0], pair[1]};
    w.prefix   = index_list(j, "prefix");
    w.cycle    = index_list(j, "cycle");
    return w;
  }

  json verdict_to_json(ConsensusVerdict const&  v,
                       ReportContext const&     ctx,
                       MatrixSetDocument const* doc) {
    json j;
    j["decision"]           = std::string(to_string(v.decision));
    j["algorithm"]          = std::string(to_string(v.algorithm));
    j["n"]                  = v.dimension;
    j["theorem_bound"]      = v.theorem_bound().get_str();
    j["theorem_bound_log2"] = v.theorem_bound_log2();
    if (v.scrambling_index) {
      j["scrambling_index"] = *v.scrambling_index;
    }
    if (v.witness) {
      auto w = witness_to_json(*v.witness);
      if (doc != nullptr && doc->node_labels) {
        w["row_pair_labels"] = {doc->label(v.witness->row_pair.first),
                                doc->label(v.witness->row_pair.second)};
      }
      j["witness"] = std::move(w);
    }
    j["timings"]
        = {{"decide_ms", static_cast<double>(ctx.elapsed.count()) / 1000.0}};
    j["input_digest"] = ctx.digest;
    return j;
  }

  ConsensusVerdict verdict_from_json(json const& j) {
    static std::map<std::string, Decision> const decisions{
        {"Consensus", Decision::Consensus},
        {"NotConsensus", Decision::NotConsensus}};
    static std::map<std::string, Algorithm> const algorithms{
        {"PairAutomaton", Algorithm::PairAutomaton},
        {"TheoremCheck", Algorithm::TheoremCheck},
        {"LiteralEnumeration", Algorithm::LiteralEnumeration},
        {"SymmetricFastPath", Algorithm::SymmetricFastPath}};
    try {
      ConsensusVerdict v;
      v.decision  = decisions.at(j.at("decision").get<std::string>());
      v.algorithm = algorithms.at(j.at("algorithm").get<std::string>());
      v.dimension = j.at("n").get<std::size_t>();
      if (j.contains("scrambling_index")) {
        v.scrambling_index = j.at("scrambling_index").get<std::uint64_t>();
      }
      if (j.contains("witness")) {
        v.witness = witness_from_json(j.at("witness"));
      }
      return v;
    } catch (json::exception const& e) {
      fail(std::string("malformed verdict report: ") + e.what());
    } catch (std::out_of_range const&) {
      fail("malformed verdict report: unknown decision or algorithm");
    }
  }

  void write_dot(std::ostream&                   out,
                 std::span<LabeledDigraph const> graphs,
                 std::string_view                name) {
    if (graphs.empty()) {
      throw InvalidArgument("write_dot: no graphs");
    }
    static constexpr std::array<char const*, 3> palette{"blue", "red", "green"};
    auto const&       first      = graphs.front();
    bool const        undirected = first.undirected();
    std::size_t const n          = first.size();
    for (auto const& g : graphs) {
      if (g.size() != n) {
        throw DimensionMismatch("write_dot: graphs over different node sets");
      }
    }

    out << (undirected ? "graph " : "digraph ") << '"' << name << "\" {\n";
    for (std::size_t v = 0; v < n; ++v) {
      out << "  n" << v << " [label=\"" << first.label(v) << "\"];\n";
    }
    char const* arrow = undirected ? " -- " : " -> ";
    for (std::size_t u = 0; u < n; ++u) {
      for (std::size_t v = undirected ? u : 0; v < n; ++v) {
        std::vector<std::size_t> in;
        for (std::size_t g = 0; g < graphs.size(); ++g) {
          if (graphs[g].has_edge(u, v)) {
            in.push_back(g);
          }
        }
        if (in.empty()) {
          continue;
        }
        char const* colour = "brown";
        if (in.size() == 1 && graphs.size() > 1) {
          colour = in[0] < palette.size() ? palette[in[0]] : "black";
        }
        out << "  n" << u << arrow << 'n' << v << " [color=" << colour << "];\n";
      }
    }
    out << "}\n";
  }

}  // namespace consensus
