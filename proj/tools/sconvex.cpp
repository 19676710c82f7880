#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <future>
#include <iostream>
#include <map>

#include "sconvex/sconvex.hpp"

using namespace sconvex;

namespace {

enum exit_code { ok = 0, verify_failed = 1, usage = 2, capped = 3 };

struct usage_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

dfa load_dfa(const std::string& path) {
  if (path == "-") return read_dfa(std::cin);
  std::ifstream in(path);
  if (!in) throw usage_error("cannot open '" + path + "'");
  return read_dfa(in);
}

triple_system load_system(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw usage_error("cannot open '" + path + "'");
  return read_triple_system(in);
}

dfa family_witness(const std::string& family, std::size_t n) {
  if (family == "star") return star_witness(n);
  if (family == "reversal") return reversal_witness(n);
  return syntactic_witness(n);
}

triple_system family_system(const std::string& family, std::size_t n) {
  if (family == "star") return star_system(n);
  if (family == "reversal") return reversal_system(n);
  return syntactic_system(n);
}

// Runs f(n) for each n concurrently and concatenates in order of n.
template <typename F>
std::vector<verification_report> per_n(std::size_t lo, std::size_t hi, F f) {
  std::vector<std::future<std::vector<verification_report>>> jobs;
  for (std::size_t n = lo; n <= hi; ++n) jobs.push_back(std::async(std::launch::async, f, n));
  std::vector<verification_report> out;
  for (auto& j : jobs) {
    auto part = j.get();
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

nlohmann::ordered_json to_json(const verification_report& r) {
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  for (const auto& [k, v] : r.params) params[k] = v;
  const char* check = r.kind == check_kind::equal ? "eq" : r.kind == check_kind::at_most ? "le" : "lt";
  return {{"suite", r.suite}, {"params", params}, {"expected", r.expected}, {"actual", r.actual},
          {"pass", r.pass},   {"ms", r.ms},       {"check", check}};
}

struct verify_options {
  std::string suite = "all";
  std::size_t min_n = 0, max_n = 0;
  std::size_t samples = 500, max_letters = 6;
  std::uint64_t seed = 1;
  std::string json;
};

std::vector<verification_report> run_suite(const std::string& suite, const verify_options& o) {
  auto lo = [&](std::size_t floor) { return std::max(o.min_n, floor); };
  auto hi = [&](std::size_t fallback) { return o.max_n ? o.max_n : fallback; };
  if (suite == "star") return per_n(lo(3), hi(10), [](std::size_t n) { return verify_star(n, n); });
  if (suite == "product") return verify_product(lo(3), hi(8));
  if (suite == "boolean") return verify_boolean(lo(3), hi(8));
  if (suite == "reversal")
    return per_n(lo(4), hi(10), [](std::size_t n) { return verify_reversal(n, n); });
  if (suite == "reversal-bound") return verify_reversal_bound(o.samples, hi(8), o.max_letters, o.seed);
  if (suite == "syntactic")
    return per_n(lo(3), hi(7), [](std::size_t n) { return verify_syntactic(n, n); });
  if (suite == "monotone")
    return per_n(lo(3), hi(7), [](std::size_t n) { return verify_monotone_counts(n, n); });
  if (suite == "exclusions")
    return per_n(lo(4), hi(8), [](std::size_t n) { return verify_exclusions(n, n); });
  throw usage_error("unknown suite '" + suite + "'");
}

int run_verify(const verify_options& o) {
  static const std::vector<std::string> all{"star",     "product",        "boolean",
                                            "reversal", "reversal-bound", "syntactic",
                                            "monotone", "exclusions"};
  std::vector<verification_report> reports;
  for (const auto& s : o.suite == "all" ? all : std::vector<std::string>{o.suite}) {
    auto part = run_suite(s, o);
    reports.insert(reports.end(), part.begin(), part.end());
  }
  for (const auto& r : reports) std::cout << r.line() << '\n';
  if (!o.json.empty()) {
    nlohmann::ordered_json doc = nlohmann::ordered_json::array();
    for (const auto& r : reports) doc.push_back(to_json(r));
    std::ofstream out(o.json);
    if (!out) throw usage_error("cannot write '" + o.json + "'");
    out << doc.dump(2) << '\n';
  }
  return all_pass(reports) ? ok : verify_failed;
}

boolean_op parse_op(const std::string& op) {
  static const std::map<std::string, boolean_op> ops{{"union", boolean_op::union_},
                                                     {"xor", boolean_op::symmetric_difference},
                                                     {"diff", boolean_op::difference},
                                                     {"intersect", boolean_op::intersection}};
  return ops.at(op);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Suffix-convex regular languages: constructions, bounds and checks"};
  app.require_subcommand(1);

  // witness
  std::string family = "star", map_spec;
  std::size_t n = 4;
  auto* witness = app.add_subcommand("witness", "Emit a witness DFA in the text format");
  witness->add_option("--family", family, "star | reversal | syntactic")
      ->check(CLI::IsMember({"star", "reversal", "syntactic"}));
  witness->add_option("-n,--n", n, "Number of states")->required();
  witness->add_option("--map", map_spec, "Letter map such as a=e,b=f,c=-");

  // dialect
  std::string input;
  auto* dialect_cmd = app.add_subcommand("dialect", "Rename or delete letters of a DFA");
  dialect_cmd->add_option("file", input, "DFA file, or - for stdin")->required();
  dialect_cmd->add_option("--map", map_spec, "Letter map such as a=e,b=f,c=-")->required();

  // classify
  auto* classify_cmd = app.add_subcommand("classify", "Suffix-convexity and subclass report");
  classify_cmd->add_option("file", input, "DFA file, or - for stdin")->required();

  // complexity
  std::string unary = "none";
  bool atoms = false;
  auto* complexity_cmd = app.add_subcommand("complexity", "State complexity of a language");
  complexity_cmd->add_option("file", input, "DFA file, or - for stdin")->required();
  complexity_cmd->add_option("--of", unary, "none | star | reverse")
      ->check(CLI::IsMember({"none", "star", "reverse"}));
  complexity_cmd->add_flag("--atoms", atoms, "Print the number of atoms instead");

  // combine
  std::string second, op = "product";
  bool complete_missing = false, count_only = false;
  auto* combine = app.add_subcommand("combine", "Product or boolean combination of two DFAs");
  combine->add_option("left", input, "First DFA file")->required();
  combine->add_option("right", second, "Second DFA file")->required();
  combine->add_option("--op", op, "product | union | xor | diff | intersect")
      ->check(CLI::IsMember({"product", "union", "xor", "diff", "intersect"}));
  combine->add_flag("--complete-missing", complete_missing,
                    "Letters missing from one alphabet act as self-loops there");
  combine->add_flag("--count", count_only, "Print only the state complexity");

  // semigroup
  bool dump = false;
  std::size_t cap = 2'000'000;
  auto* semigroup_cmd = app.add_subcommand("semigroup", "Transition semigroup of the minimal DFA");
  semigroup_cmd->add_option("file", input, "DFA file, or - for stdin")->required();
  semigroup_cmd->add_flag("--dump", dump, "List the elements, one image per line");
  semigroup_cmd->add_option("--cap", cap, "Element cap");

  // triples
  std::string check_file;
  bool show_order = false, designed = false;
  auto* triples = app.add_subcommand("triples", "Triple systems: canonical, designed or checked");
  triples->add_option("file", input, "DFA file; its canonical system is printed");
  triples->add_flag("--designed", designed, "Print the designed system of --family at --n");
  triples->add_option("--family", family, "star | reversal | syntactic")
      ->check(CLI::IsMember({"star", "reversal", "syntactic"}));
  triples->add_option("-n,--n", n, "Number of states for --designed");
  triples->add_option("--respects", check_file, "Check the DFA against this system file");
  triples->add_flag("--preorder", show_order, "Print the derived preorder matrix");

  // verify
  verify_options vo;
  auto* verify = app.add_subcommand("verify", "Reproduce the bounds by exact computation");
  verify->add_option("--suite", vo.suite,
                     "all | star | product | boolean | reversal | reversal-bound | syntactic | "
                     "monotone | exclusions");
  verify->add_option("--min-n", vo.min_n, "Smallest n");
  verify->add_option("--max-n", vo.max_n, "Largest n");
  verify->add_option("--samples", vo.samples, "Samples for reversal-bound");
  verify->add_option("--max-letters", vo.max_letters, "Letters per sample for reversal-bound");
  verify->add_option("--seed", vo.seed, "Seed for reversal-bound");
  verify->add_option("--json", vo.json, "Write a JSON report to this file");

  // random
  std::size_t letters = 2;
  std::uint64_t seed = 1;
  auto* random = app.add_subcommand("random", "Random suffix-convex DFA");
  random->add_option("-n,--n", n, "Number of states")->required();
  random->add_option("-k,--letters", letters, "Alphabet size");
  random->add_option("--seed", seed, "Seed");

  // probe-conjecture
  auto* probe = app.add_subcommand("probe-conjecture",
                                   "Exploratory search over order-generated systems (3 <= n <= 5)");
  probe->add_option("-n,--n", n, "Number of states")->required();

  // export-dot
  std::string name = "dfa", of = "none";
  auto* dot = app.add_subcommand("export-dot", "Graphviz DOT of a DFA or a derived NFA");
  dot->add_option("file", input, "DFA file, or - for stdin")->required();
  dot->add_option("--name", name, "Graph name");
  dot->add_option("--of", of, "none | star | reverse (emit the NFA)")
      ->check(CLI::IsMember({"none", "star", "reverse"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? ok : usage;
  }

  try {
    if (*witness) {
      dfa d = family_witness(family, n);
      if (!map_spec.empty()) d = dialect(d, letter_map::keyed(d.alphabet(), map_spec));
      write_dfa(std::cout, d);
    } else if (*dialect_cmd) {
      dfa d = load_dfa(input);
      write_dfa(std::cout, dialect(d, letter_map::keyed(d.alphabet(), map_spec)));
    } else if (*classify_cmd) {
      dfa d = load_dfa(input);
      std::cout << to_report(classify(d), d.alphabet());
    } else if (*complexity_cmd) {
      dfa d = load_dfa(input);
      if (unary == "star") d = determinize(star_nfa(d));
      else if (unary == "reverse") d = determinize(reverse_nfa(d));
      std::cout << (atoms ? atom_count(minimize(d)) : complexity(d)) << '\n';
    } else if (*combine) {
      dfa left = load_dfa(input), right = load_dfa(second);
      dfa result = op == "product" ? minimize(determinize(product_nfa(left, right, complete_missing)))
                                   : [&] {
                                       if (complete_missing) {
                                         const auto both = union_alphabet(left, right);
                                         left = extend_alphabet(left, both);
                                         right = extend_alphabet(right, both);
                                       }
                                       return minimize(direct_product(left, right, parse_op(op)));
                                     }();
      if (count_only) std::cout << result.size() << '\n';
      else write_dfa(std::cout, result);
    } else if (*semigroup_cmd) {
      auto s = transition_semigroup(minimize(load_dfa(input)), cap);
      if (dump) write_semigroup(std::cout, s);
      else std::cout << s.size() << '\n';
    } else if (*triples) {
      if (designed == !input.empty())
        throw usage_error("give either a DFA file or --designed");
      triple_system s = designed ? family_system(family, n) : canonical_system(load_dfa(input));
      if (!check_file.empty()) {
        if (input.empty()) throw usage_error("--respects needs a DFA file");
        auto target = load_system(check_file);
        const bool holds = dfa_respects(load_dfa(input), target);
        std::cout << "respects=" << (holds ? "true" : "false") << '\n';
        return holds ? ok : verify_failed;
      }
      if (show_order) write_preorder(std::cout, preorder_of(s));
      else write_triple_system(std::cout, s);
    } else if (*verify) {
      return run_verify(vo);
    } else if (*random) {
      write_dfa(std::cout, random_suffix_convex(n, letters, seed));
    } else if (*probe) {
      auto r = probe_conjecture(n);
      std::cout << "n=" << r.n << " bound=" << r.bound << " max_found=" << r.max_found
                << " best=\"" << r.best << "\" candidates=" << r.candidates
                << " proper=" << r.proper_candidates
                << " meets_bound=" << (r.meets_bound() ? "true" : "false")
                << " exceeds_bound=" << (r.exceeds_bound() ? "true" : "false") << '\n';
    } else if (*dot) {
      dfa d = load_dfa(input);
      if (of == "star") write_dot(std::cout, star_nfa(d), name);
      else if (of == "reverse") write_dot(std::cout, reverse_nfa(d), name);
      else write_dot(std::cout, d, name);
    }
  } catch (const error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.code() == errc::resource_cap ? capped : usage;
  } catch (const usage_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return usage;
  }
  return ok;
}
