#ifndef SCONVEX_IO_HPP_
#define SCONVEX_IO_HPP_

#include <cstddef>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include "sconvex/automaton.hpp"
#include "sconvex/error.hpp"
#include "sconvex/transformation.hpp"
#include "sconvex/triple_system.hpp"

namespace sconvex {

namespace detail {

// Splits the stream into whitespace-separated tokens per line, dropping
// '#' comments and blank lines. Each entry keeps its 1-based line number.
inline std::vector<std::pair<std::size_t, std::vector<std::string>>> tokenize(std::istream& in) {
  std::vector<std::pair<std::size_t, std::vector<std::string>>> lines;
  std::string line;
  for (std::size_t number = 1; std::getline(in, line); ++number) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::vector<std::string> tokens;
    for (std::string tok; fields >> tok;) tokens.push_back(std::move(tok));
    if (!tokens.empty()) lines.emplace_back(number, std::move(tokens));
  }
  return lines;
}

[[noreturn]] inline void parse_fail(std::size_t line, const std::string& why) {
  throw error(errc::malformed, "line " + std::to_string(line) + ": " + why);
}

inline std::size_t parse_number(std::size_t line, const std::string& tok) {
  if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
    parse_fail(line, "expected a number, got '" + tok + "'");
  try {
    return std::stoul(tok);
  } catch (const std::exception&) {
    parse_fail(line, "number out of range '" + tok + "'");
  }
}

}  // namespace detail

/// Reads the line-based DFA format:
///
///     states <n>
///     alphabet <l1> <l2> ...
///     initial 0
///     final <f1> <f2> ...
///     <state> <letter> <state>      (exactly n * |alphabet| lines)
inline dfa read_dfa(std::istream& in) {
  const auto lines = detail::tokenize(in);
  std::optional<std::size_t> n;
  std::optional<std::vector<std::string>> alphabet;
  std::optional<std::vector<std::size_t>> final_list;
  bool saw_initial = false;
  std::vector<std::tuple<std::size_t, std::size_t, std::string, std::size_t>> moves;

  for (const auto& [line, tok] : lines) {
    const std::string& key = tok[0];
    if (key == "states") {
      if (n || tok.size() != 2) detail::parse_fail(line, "bad 'states' line");
      n = detail::parse_number(line, tok[1]);
      if (*n == 0) detail::parse_fail(line, "at least one state required");
    } else if (key == "alphabet") {
      if (alphabet) detail::parse_fail(line, "duplicate 'alphabet' line");
      alphabet.emplace(tok.begin() + 1, tok.end());
    } else if (key == "initial") {
      if (saw_initial || tok.size() != 2 || tok[1] != "0")
        detail::parse_fail(line, "initial state must be given once and be 0");
      saw_initial = true;
    } else if (key == "final") {
      if (final_list) detail::parse_fail(line, "duplicate 'final' line");
      final_list.emplace();
      for (std::size_t i = 1; i < tok.size(); ++i)
        final_list->push_back(detail::parse_number(line, tok[i]));
    } else {
      if (tok.size() != 3) detail::parse_fail(line, "expected '<state> <letter> <state>'");
      moves.emplace_back(line, detail::parse_number(line, tok[0]), tok[1],
                         detail::parse_number(line, tok[2]));
    }
  }
  if (!n) throw error(errc::malformed, "missing 'states' line");
  if (!alphabet) throw error(errc::malformed, "missing 'alphabet' line");
  if (!final_list) final_list.emplace();

  const std::size_t k = alphabet->size();
  std::unordered_map<std::string, std::size_t> letter;
  for (std::size_t a = 0; a < k; ++a)
    if (!letter.emplace((*alphabet)[a], a).second)
      throw error(errc::malformed, "duplicate letter '" + (*alphabet)[a] + "'");

  constexpr auto unset = static_cast<state_id>(-1);
  std::vector<state_id> delta(*n * k, unset);
  for (const auto& [line, from, name, to] : moves) {
    auto it = letter.find(name);
    if (it == letter.end()) detail::parse_fail(line, "unknown letter '" + name + "'");
    if (from >= *n || to >= *n) detail::parse_fail(line, "state out of range");
    auto& slot = delta[it->second * *n + from];
    if (slot != unset) detail::parse_fail(line, "duplicate transition");
    slot = static_cast<state_id>(to);
  }
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t q = 0; q < *n; ++q)
      if (delta[a * *n + q] == unset)
        throw error(errc::malformed, "missing transition for state " + std::to_string(q) +
                                         " on '" + (*alphabet)[a] + "'");
  std::vector<bool> finals(*n, false);
  for (std::size_t f : *final_list) {
    if (f >= *n) throw error(errc::malformed, "final state out of range");
    finals[f] = true;
  }
  return dfa(*n, std::move(*alphabet), std::move(delta), std::move(finals));
}

inline dfa read_dfa(const std::string& text) {
  std::istringstream in(text);
  return read_dfa(in);
}

inline void write_dfa(std::ostream& out, const dfa& d) {
  out << "states " << d.size() << "\nalphabet";
  for (const auto& l : d.alphabet()) out << ' ' << l;
  out << "\ninitial 0\nfinal";
  for (state_id f : d.finals()) out << ' ' << f;
  out << '\n';
  for (state_id q = 0; q < d.size(); ++q)
    for (std::size_t a = 0; a < d.letter_count(); ++a)
      out << q << ' ' << d.alphabet()[a] << ' ' << d.next(q, a) << '\n';
}

inline std::string to_text(const dfa& d) {
  std::ostringstream out;
  write_dfa(out, d);
  return out.str();
}

/// Triple-system format: `states n`, `final ...`, then one `p q r` line per
/// triple beyond those forced by axioms A and B (which are implied).
inline triple_system read_triple_system(std::istream& in) {
  const auto lines = detail::tokenize(in);
  std::optional<std::size_t> n;
  std::vector<std::size_t> final_list;
  std::vector<std::pair<std::size_t, std::vector<std::size_t>>> rows;
  for (const auto& [line, tok] : lines) {
    if (tok[0] == "states") {
      if (n || tok.size() != 2) detail::parse_fail(line, "bad 'states' line");
      n = detail::parse_number(line, tok[1]);
    } else if (tok[0] == "final") {
      for (std::size_t i = 1; i < tok.size(); ++i)
        final_list.push_back(detail::parse_number(line, tok[i]));
    } else {
      if (tok.size() != 3) detail::parse_fail(line, "expected 'p q r'");
      rows.emplace_back(line, std::vector<std::size_t>{detail::parse_number(line, tok[0]),
                                                       detail::parse_number(line, tok[1]),
                                                       detail::parse_number(line, tok[2])});
    }
  }
  if (!n || *n == 0) throw error(errc::malformed, "missing 'states' line");
  std::vector<bool> finals(*n, false);
  for (std::size_t f : final_list) {
    if (f >= *n) throw error(errc::malformed, "final state out of range");
    finals[f] = true;
  }
  std::vector<triple> triples;
  for (state_id p = 0; p < *n; ++p)
    for (state_id q = 0; q < *n; ++q) {
      triples.push_back({p, q, p});
      triples.push_back({p, q, q});
    }
  for (const auto& [line, v] : rows) {
    if (v[0] >= *n || v[1] >= *n || v[2] >= *n) detail::parse_fail(line, "state out of range");
    triples.push_back({static_cast<state_id>(v[0]), static_cast<state_id>(v[1]),
                       static_cast<state_id>(v[2])});
  }
  return triple_system(*n, std::move(finals), triples);
}

inline triple_system read_triple_system(const std::string& text) {
  std::istringstream in(text);
  return read_triple_system(in);
}

inline void write_triple_system(std::ostream& out, const triple_system& s) {
  out << "states " << s.size() << "\nfinal";
  for (state_id q = 0; q < s.size(); ++q)
    if (s.is_final(q)) out << ' ' << q;
  out << '\n';
  for (const auto& t : s.extra_triples()) out << t.p << ' ' << t.q << ' ' << t.r << '\n';
}

/// n x n 0/1 matrix; row p, column q is 1 iff p is below q.
inline void write_preorder(std::ostream& out, const preorder& po) {
  for (state_id p = 0; p < po.size(); ++p) {
    for (state_id q = 0; q < po.size(); ++q) out << (q ? " " : "") << (po.leq(p, q) ? 1 : 0);
    out << '\n';
  }
}

/// One image vector per line, sorted lexicographically.
inline void write_semigroup(std::ostream& out, const semigroup& s) {
  for (const auto& t : s.sorted()) out << t.to_string() << '\n';
}

namespace detail {

inline std::string dot_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

// Emits edges grouped by (source, target); sources ascending, targets in
// order of the first letter that reaches them.
inline void write_dot_edges(
    std::ostream& out,
    const std::vector<std::vector<std::pair<std::size_t, std::string>>>& edges_by_source) {
  for (std::size_t src = 0; src < edges_by_source.size(); ++src) {
    std::vector<std::size_t> order;
    std::map<std::size_t, std::string> labels;
    for (const auto& [dst, label] : edges_by_source[src]) {
      auto [it, fresh] = labels.emplace(dst, label);
      if (fresh) order.push_back(dst);
      else it->second += "," + label;
    }
    for (std::size_t dst : order)
      out << "  " << src << " -> " << dst << " [label=" << dot_quote(labels[dst]) << "];\n";
  }
}

}  // namespace detail

inline void write_dot(std::ostream& out, const dfa& d, const std::string& name = "dfa") {
  out << "digraph " << detail::dot_quote(name) << " {\n  rankdir=LR;\n"
      << "  node [shape=circle];\n  __start [shape=point];\n  __start -> 0;\n";
  for (state_id q : d.finals()) out << "  " << q << " [shape=doublecircle];\n";
  std::vector<std::vector<std::pair<std::size_t, std::string>>> edges(d.size());
  for (state_id q = 0; q < d.size(); ++q)
    for (std::size_t a = 0; a < d.letter_count(); ++a)
      edges[q].emplace_back(d.next(q, a), d.alphabet()[a]);
  detail::write_dot_edges(out, edges);
  out << "}\n";
}

inline void write_dot(std::ostream& out, const nfa& m, const std::string& name = "nfa") {
  out << "digraph " << detail::dot_quote(name) << " {\n  rankdir=LR;\n"
      << "  node [shape=circle];\n";
  for (state_id q = 0; q < m.size(); ++q) {
    if (m.is_initial(q))
      out << "  __start" << q << " [shape=point];\n  __start" << q << " -> " << q << ";\n";
  }
  for (state_id q = 0; q < m.size(); ++q)
    if (m.is_final(q)) out << "  " << q << " [shape=doublecircle];\n";
  std::vector<std::vector<std::pair<std::size_t, std::string>>> edges(m.size());
  for (state_id q = 0; q < m.size(); ++q) {
    for (std::size_t a = 0; a < m.letter_count(); ++a)
      for (state_id r : m.targets(q, a)) edges[q].emplace_back(r, m.alphabet()[a]);
    for (state_id r : m.epsilon_targets(q)) edges[q].emplace_back(r, "\xce\xb5");
  }
  detail::write_dot_edges(out, edges);
  out << "}\n";
}

}  // namespace sconvex

#endif  // SCONVEX_IO_HPP_
