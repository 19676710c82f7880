#ifndef SCONVEX_WITNESS_HPP_
#define SCONVEX_WITNESS_HPP_

#include <algorithm>
#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "sconvex/automaton.hpp"
#include "sconvex/error.hpp"
#include "sconvex/transformation.hpp"
#include "sconvex/triple_system.hpp"

namespace sconvex {

/// Injective partial renaming of letters. `image[i]` is the new name of
/// `source[i]`, or nullopt when the letter is deleted.
struct letter_map {
  std::vector<std::string> source;
  std::vector<std::optional<std::string>> image;

  /// Positional form over a given source alphabet: "e,f,-,-,a,b".
  static letter_map positional(std::vector<std::string> source, const std::string& images) {
    letter_map m;
    m.source = std::move(source);
    std::stringstream in(images);
    std::string item;
    while (std::getline(in, item, ',')) {
      if (item == "-" || item == "\xe2\x88\x92") m.image.emplace_back(std::nullopt);
      else m.image.emplace_back(item);
    }
    if (m.image.size() != m.source.size())
      throw error(errc::alphabet_mismatch, "map has " + std::to_string(m.image.size()) +
                                               " entries for " +
                                               std::to_string(m.source.size()) + " letters");
    return m;
  }

  /// Keyed form: "a=e,b=f,c=-". Letters not mentioned keep their name.
  static letter_map keyed(std::vector<std::string> source, const std::string& spec) {
    letter_map m;
    m.source = std::move(source);
    m.image.assign(m.source.begin(), m.source.end());
    std::stringstream in(spec);
    std::string item;
    while (std::getline(in, item, ',')) {
      auto eq = item.find('=');
      if (eq == std::string::npos) throw error(errc::syntax_error, "expected x=y in '" + item + "'");
      std::string from = item.substr(0, eq), to = item.substr(eq + 1);
      auto it = std::find(m.source.begin(), m.source.end(), from);
      if (it == m.source.end())
        throw error(errc::alphabet_mismatch, "letter '" + from + "' not in alphabet");
      auto& slot = m.image[static_cast<std::size_t>(it - m.source.begin())];
      if (to == "-") slot.reset();
      else slot = to;
    }
    return m;
  }

  static letter_map identity(std::vector<std::string> source) {
    letter_map m;
    m.image.assign(source.begin(), source.end());
    m.source = std::move(source);
    return m;
  }
};

/// Renames letters per `m` and drops the deleted ones.
inline dfa dialect(const dfa& d, const letter_map& m) {
  if (m.source != d.alphabet() || m.image.size() != m.source.size())
    throw error(errc::alphabet_mismatch, "letter map source differs from the DFA alphabet");
  std::unordered_set<std::string> used;
  std::vector<std::string> alphabet;
  std::vector<std::vector<state_id>> images;
  for (std::size_t a = 0; a < m.source.size(); ++a) {
    if (!m.image[a]) continue;
    if (!used.insert(*m.image[a]).second)
      throw error(errc::not_injective, "two letters map to '" + *m.image[a] + "'");
    alphabet.push_back(*m.image[a]);
    auto img = d.letter_image(a);
    images.emplace_back(img.begin(), img.end());
  }
  return dfa::from_images(std::move(alphabet), images, d.final_mask());
}

namespace detail {

inline dfa from_notation(std::size_t n, const std::vector<std::string>& letters,
                         const std::vector<std::string>& notation, std::vector<bool> finals) {
  std::vector<std::vector<state_id>> images;
  for (const auto& text : notation) images.push_back(parse_transformation(text, n).image());
  return dfa::from_images(letters, images, std::move(finals));
}

inline std::vector<bool> single_final(std::size_t n, std::size_t f) {
  std::vector<bool> out(n, false);
  out[f] = true;
  return out;
}

inline std::string num(std::size_t x) { return std::to_string(x); }

}  // namespace detail

/// Witness for star, product and boolean operations; final state n-2.
///   a: (_0^{n-2} q->q+1)   b: (_1^{n-1} q->q-1)   c: ({n-3,n-2}->n-1)
///   d: (n-2->n-1)          e = f = 1
inline dfa star_witness(std::size_t n) {
  if (n < 3) throw error(errc::bad_size, "star witness needs n >= 3");
  using detail::num;
  return detail::from_notation(
      n, {"a", "b", "c", "d", "e", "f"},
      {"(_0^" + num(n - 2) + " q->q+1)", "(_1^" + num(n - 1) + " q->q-1)",
       "({" + num(n - 3) + "," + num(n - 2) + "}->" + num(n - 1) + ")",
       "(" + num(n - 2) + "->" + num(n - 1) + ")", "1", "1"},
      detail::single_final(n, n - 2));
}

inline std::string cycle_from(std::size_t lo, std::size_t hi) {
  std::string s = "(";
  for (std::size_t q = lo; q <= hi; ++q) {
    if (q > lo) s += ",";
    s += std::to_string(q);
  }
  return s + ")";
}

/// Witness for reversal; final state 1.
///   a: (3,4,...,n-1)  b: (3->1)  c: (3->2)  d: (1->0)
///   e: (1->2)  f: (2->1)  g: (Q_n->3)  h: (Q_n\{0}->2)(0->1)
/// For n = 3 the definitions mention state 3, which is outside Q_3, so
/// only n >= 4 is accepted.
inline dfa reversal_witness(std::size_t n) {
  if (n < 4)
    throw error(errc::bad_size,
                "reversal witness needs n >= 4; at n = 3 letters a, b, c, g reference state 3");
  return detail::from_notation(
      n, {"a", "b", "c", "d", "e", "f", "g", "h"},
      {cycle_from(3, n - 1), "(3->1)", "(3->2)", "(1->0)", "(1->2)", "(2->1)", "(Q_n->3)",
       "(Q_n\\{0}->2)(0->1)"},
      detail::single_final(n, 1));
}

/// Conjectured witness for syntactic complexity; final state n-2.
///   a: (1,...,n-2)  b: (1,2)  c: (n-2->1)  d: (n-2->0)
///   e: (Q_n\{n-1}->1)  f: (n-1->0)  g: (n-1->1)  h: (Q_n->n-1)
/// a and b act on {1,...,n-2}. At n = 3 that set is {1}, so b is the
/// identity; swapping 1 with the sink n-1 would break monotonicity.
inline dfa syntactic_witness(std::size_t n) {
  if (n < 3) throw error(errc::bad_size, "syntactic witness needs n >= 3");
  using detail::num;
  return detail::from_notation(
      n, {"a", "b", "c", "d", "e", "f", "g", "h"},
      {cycle_from(1, n - 2), n > 3 ? "(1,2)" : "1", "(" + num(n - 2) + "->1)", "(" + num(n - 2) + "->0)",
       "(Q_n\\{" + num(n - 1) + "}->1)", "(" + num(n - 1) + "->0)", "(" + num(n - 1) + "->1)",
       "(Q_n->" + num(n - 1) + ")"},
      detail::single_final(n, n - 2));
}

/// R = {(p,q,r) | p >= r >= q or q >= r >= p}, F = {n-2}.
inline triple_system star_system(std::size_t n) {
  if (n < 3) throw error(errc::bad_size, "star system needs n >= 3");
  return triple_system::from_predicate(
      n, detail::single_final(n, n - 2),
      [](state_id p, state_id q, state_id r) { return (p >= r && r >= q) || (q >= r && r >= p); });
}

/// Axiom A/B triples plus (0,2,1) and (2,0,1); F = {1}.
inline triple_system reversal_system(std::size_t n) {
  if (n < 3) throw error(errc::bad_size, "reversal system needs n >= 3");
  return triple_system::from_predicate(
      n, detail::single_final(n, 1), [](state_id p, state_id q, state_id r) {
        if (r == p || r == q) return true;
        return r == 1 && ((p == 0 && q == 2) || (p == 2 && q == 0));
      });
}

/// Axiom A/B triples plus (0,p,q), (p,0,q) for p,q <= n-2 and (0,n-1,q),
/// (n-1,0,q) for q <= n-2; F = {n-2}.
inline triple_system syntactic_system(std::size_t n) {
  if (n < 3) throw error(errc::bad_size, "syntactic system needs n >= 3");
  const auto top = static_cast<state_id>(n - 1);
  return triple_system::from_predicate(
      n, detail::single_final(n, n - 2), [top](state_id p, state_id q, state_id r) {
        if (r == p || r == q) return true;
        return (p == 0 || q == 0) && r < top;
      });
}

/// Partial order of the reversal system: 2 below 1, everything below 0.
inline preorder reversal_order(std::size_t n) {
  if (n < 3) throw error(errc::bad_size, "reversal order needs n >= 3");
  const std::pair<state_id, state_id> edge{2, 1};
  return preorder::generated_by(n, std::span(&edge, 1));
}

}  // namespace sconvex

#endif  // SCONVEX_WITNESS_HPP_
