#ifndef SCONVEX_OPERATIONS_HPP_
#define SCONVEX_OPERATIONS_HPP_

#include <algorithm>
#include <cstddef>
#include <deque>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "sconvex/automaton.hpp"
#include "sconvex/error.hpp"

namespace sconvex {

using state_set = boost::dynamic_bitset<>;

inline constexpr std::size_t default_subset_cap = std::size_t{1} << 22;

/// Result of the accessible subset construction. `subsets[i]` is the
/// epsilon-closed NFA state set that became DFA state i.
struct subset_result {
  dfa automaton;
  std::vector<state_set> subsets;
};

namespace detail {

inline void close_epsilon(const nfa& m, state_set& set) {
  if (!m.has_epsilon()) return;
  std::vector<state_id> stack;
  for (auto i = set.find_first(); i != state_set::npos; i = set.find_next(i))
    stack.push_back(static_cast<state_id>(i));
  while (!stack.empty()) {
    state_id q = stack.back();
    stack.pop_back();
    for (state_id r : m.epsilon_targets(q)) {
      if (!set.test(r)) {
        set.set(r);
        stack.push_back(r);
      }
    }
  }
}

/// Position of each letter of `from` inside `to`; throws unless the two
/// alphabets are equal as sets.
inline std::vector<std::size_t> align_alphabets(
    const std::vector<std::string>& from, const std::vector<std::string>& to) {
  if (from.size() != to.size())
    throw error(errc::alphabet_mismatch, "alphabets differ in size");
  std::vector<std::size_t> index(from.size());
  for (std::size_t a = 0; a < from.size(); ++a) {
    auto it = std::find(to.begin(), to.end(), from[a]);
    if (it == to.end())
      throw error(errc::alphabet_mismatch, "letter '" + from[a] + "' missing");
    index[a] = static_cast<std::size_t>(it - to.begin());
  }
  return index;
}

inline std::vector<bool> reachable_states(const dfa& d) {
  std::vector<bool> seen(d.size(), false);
  std::vector<state_id> queue{0};
  seen[0] = true;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (std::size_t a = 0; a < d.letter_count(); ++a) {
      state_id r = d.next(queue[head], a);
      if (!seen[r]) {
        seen[r] = true;
        queue.push_back(r);
      }
    }
  }
  return seen;
}

}  // namespace detail

/// Accessible subset construction. Subsets are numbered in breadth-first
/// discovery order with letters tried in alphabet order; the empty subset is
/// a state only when it is reachable.
inline subset_result subset_construction(const nfa& m,
                                         std::size_t cap = default_subset_cap) {
  const std::size_t k = m.letter_count();
  state_set start(m.size());
  for (state_id q = 0; q < m.size(); ++q)
    if (m.is_initial(q)) start.set(q);
  detail::close_epsilon(m, start);

  std::unordered_map<state_set, state_id> index;
  std::vector<state_set> subsets;
  std::vector<state_id> delta_by_state;  // state-major while building
  index.emplace(start, 0);
  subsets.push_back(start);

  for (std::size_t head = 0; head < subsets.size(); ++head) {
    for (std::size_t a = 0; a < k; ++a) {
      state_set next(m.size());
      const state_set& cur = subsets[head];
      for (auto i = cur.find_first(); i != state_set::npos; i = cur.find_next(i))
        for (state_id r : m.targets(static_cast<state_id>(i), a)) next.set(r);
      detail::close_epsilon(m, next);
      auto [it, inserted] =
          index.emplace(std::move(next), static_cast<state_id>(subsets.size()));
      if (inserted) {
        if (subsets.size() >= cap)
          throw error(errc::resource_cap, "subset construction exceeded " +
                                              std::to_string(cap) + " subsets");
        subsets.push_back(it->first);
      }
      delta_by_state.push_back(it->second);
    }
  }

  const std::size_t n = subsets.size();
  std::vector<state_id> delta(n * k);
  for (std::size_t q = 0; q < n; ++q)
    for (std::size_t a = 0; a < k; ++a) delta[a * n + q] = delta_by_state[q * k + a];
  std::vector<bool> finals(n, false);
  for (std::size_t q = 0; q < n; ++q) {
    const state_set& s = subsets[q];
    for (auto i = s.find_first(); i != state_set::npos; i = s.find_next(i)) {
      if (m.is_final(static_cast<state_id>(i))) {
        finals[q] = true;
        break;
      }
    }
  }
  return {dfa(n, m.alphabet(), std::move(delta), std::move(finals)),
          std::move(subsets)};
}

inline dfa determinize(const nfa& m, std::size_t cap = default_subset_cap) {
  return subset_construction(m, cap).automaton;
}

/// Canonical minimal complete DFA of L(d).
///
/// Unreachable states are dropped, equivalent states merged by Moore
/// refinement, and the classes renumbered in breadth-first order from the
/// initial class with letters in alphabet order.
inline dfa minimize(const dfa& d) {
  const std::size_t k = d.letter_count();
  const auto reachable = detail::reachable_states(d);

  std::vector<state_id> live;
  for (state_id q = 0; q < d.size(); ++q)
    if (reachable[q]) live.push_back(q);

  std::vector<std::size_t> block(d.size(), 0);
  std::size_t blocks = 0;
  {
    bool has_final = false, has_other = false;
    for (state_id q : live) (d.is_final(q) ? has_final : has_other) = true;
    for (state_id q : live)
      block[q] = (has_final && has_other && d.is_final(q)) ? 1 : 0;
    blocks = (has_final && has_other) ? 2 : 1;
  }

  for (;;) {
    std::unordered_map<std::string, std::size_t> signatures;
    std::vector<std::size_t> refined(d.size(), 0);
    std::string key;
    for (state_id q : live) {
      key.assign(reinterpret_cast<const char*>(&block[q]), sizeof(std::size_t));
      for (std::size_t a = 0; a < k; ++a) {
        std::size_t b = block[d.next(q, a)];
        key.append(reinterpret_cast<const char*>(&b), sizeof(std::size_t));
      }
      refined[q] = signatures.emplace(key, signatures.size()).first->second;
    }
    block.swap(refined);
    if (signatures.size() == blocks) break;
    blocks = signatures.size();
  }

  // Renumber blocks by breadth-first discovery.
  constexpr state_id unset = static_cast<state_id>(-1);
  std::vector<state_id> number(blocks, unset);
  std::vector<state_id> representative;
  number[block[0]] = 0;
  representative.push_back(0);
  for (std::size_t head = 0; head < representative.size(); ++head) {
    for (std::size_t a = 0; a < k; ++a) {
      state_id r = d.next(representative[head], a);
      if (number[block[r]] == unset) {
        number[block[r]] = static_cast<state_id>(representative.size());
        representative.push_back(r);
      }
    }
  }

  const std::size_t n = representative.size();
  std::vector<state_id> delta(n * k);
  std::vector<bool> finals(n);
  for (std::size_t q = 0; q < n; ++q) {
    finals[q] = d.is_final(representative[q]);
    for (std::size_t a = 0; a < k; ++a)
      delta[a * n + q] = number[block[d.next(representative[q], a)]];
  }
  return dfa(n, d.alphabet(), std::move(delta), std::move(finals));
}

/// Quotient complexity: the number of states of the minimal complete DFA.
inline std::size_t complexity(const dfa& d) { return minimize(d).size(); }

inline bool is_minimal(const dfa& d) { return complexity(d) == d.size(); }

/// Reversal NFA: p is a successor of q under a iff d maps p to q under a.
/// The initial states are the finals of d and the only final state is 0.
inline nfa reverse_nfa(const dfa& d) {
  nfa m(d.size(), d.alphabet());
  for (std::size_t a = 0; a < d.letter_count(); ++a)
    for (state_id p = 0; p < d.size(); ++p) m.add_transition(d.next(p, a), a, p);
  for (state_id q = 0; q < d.size(); ++q) m.set_initial(q, d.is_final(q));
  m.set_final(0);
  return m;
}

/// Epsilon-NFA for L(d)*. State n is the fresh initial state 0', final and
/// carrying the outgoing transitions of 0; every final of d gets an epsilon
/// edge back to 0. For L(d) empty this recognizes exactly {epsilon}.
inline nfa star_nfa(const dfa& d) {
  const std::size_t n = d.size();
  const auto fresh = static_cast<state_id>(n);
  nfa m(n + 1, d.alphabet());
  for (std::size_t a = 0; a < d.letter_count(); ++a) {
    for (state_id q = 0; q < n; ++q) m.add_transition(q, a, d.next(q, a));
    m.add_transition(fresh, a, d.next(0, a));
  }
  for (state_id q = 0; q < n; ++q) {
    if (d.is_final(q)) {
      m.set_final(q);
      m.add_epsilon(q, 0);
    }
  }
  m.set_initial(fresh);
  m.set_final(fresh);
  return m;
}

/// Extends d to a larger alphabet; letters absent from d act as self-loops.
inline dfa extend_alphabet(const dfa& d, const std::vector<std::string>& alphabet) {
  const std::size_t n = d.size();
  std::vector<state_id> delta;
  delta.reserve(n * alphabet.size());
  for (const auto& letter : alphabet) {
    if (auto a = d.letter_index(letter)) {
      auto img = d.letter_image(*a);
      delta.insert(delta.end(), img.begin(), img.end());
    } else {
      for (state_id q = 0; q < n; ++q) delta.push_back(q);
    }
  }
  for (const auto& letter : d.alphabet()) {
    if (std::find(alphabet.begin(), alphabet.end(), letter) == alphabet.end())
      throw error(errc::alphabet_mismatch, "letter '" + letter + "' dropped");
  }
  return dfa(n, alphabet, std::move(delta), d.final_mask());
}

/// d1's letters in order, followed by d2's letters that d1 lacks.
inline std::vector<std::string> union_alphabet(const dfa& d1, const dfa& d2) {
  auto out = d1.alphabet();
  for (const auto& letter : d2.alphabet())
    if (!d1.letter_index(letter)) out.push_back(letter);
  return out;
}

/// Epsilon-NFA for L(d1)L(d2): d1 occupies states 0..m-1, d2 is shifted to
/// m..m+n-1, and each final of d1 has an epsilon edge to d2's initial state.
/// With `complete_missing`, both automata are first extended to the union
/// alphabet with self-loops; otherwise the alphabets must agree as sets.
inline nfa product_nfa(const dfa& d1, const dfa& d2, bool complete_missing = false) {
  dfa left = d1, right = d2;
  if (complete_missing) {
    auto sigma = union_alphabet(d1, d2);
    left = extend_alphabet(d1, sigma);
    right = extend_alphabet(d2, sigma);
  }
  const auto to_right = detail::align_alphabets(left.alphabet(), right.alphabet());
  const std::size_t m = left.size(), n = right.size();
  nfa out(m + n, left.alphabet());
  for (std::size_t a = 0; a < left.letter_count(); ++a) {
    for (state_id q = 0; q < m; ++q) out.add_transition(q, a, left.next(q, a));
    for (state_id q = 0; q < n; ++q)
      out.add_transition(static_cast<state_id>(m + q), a,
                         static_cast<state_id>(m + right.next(q, to_right[a])));
  }
  for (state_id q = 0; q < m; ++q)
    if (left.is_final(q)) out.add_epsilon(q, static_cast<state_id>(m));
  for (state_id q = 0; q < n; ++q)
    if (right.is_final(q)) out.set_final(static_cast<state_id>(m + q));
  out.set_initial(0);
  return out;
}

enum class boolean_op { union_, symmetric_difference, difference, intersection };

inline bool apply(boolean_op op, bool x, bool y) noexcept {
  switch (op) {
    case boolean_op::union_: return x || y;
    case boolean_op::symmetric_difference: return x != y;
    case boolean_op::difference: return x && !y;
    case boolean_op::intersection: return x && y;
  }
  return false;
}

/// Accessible direct product; pairs are numbered in breadth-first order.
/// The alphabets must agree as sets, and the result uses d1's letter order.
inline dfa direct_product(const dfa& d1, const dfa& d2, boolean_op op) {
  const auto to_right = detail::align_alphabets(d1.alphabet(), d2.alphabet());
  const std::size_t k = d1.letter_count();
  const std::size_t n2 = d2.size();
  std::unordered_map<std::size_t, state_id> index;
  std::vector<std::pair<state_id, state_id>> pairs{{0, 0}};
  index.emplace(0, 0);
  std::vector<state_id> by_state;
  for (std::size_t head = 0; head < pairs.size(); ++head) {
    auto [p, q] = pairs[head];
    for (std::size_t a = 0; a < k; ++a) {
      state_id p2 = d1.next(p, a), q2 = d2.next(q, to_right[a]);
      auto [it, inserted] = index.emplace(std::size_t{p2} * n2 + q2,
                                          static_cast<state_id>(pairs.size()));
      if (inserted) pairs.emplace_back(p2, q2);
      by_state.push_back(it->second);
    }
  }
  const std::size_t n = pairs.size();
  std::vector<state_id> delta(n * k);
  std::vector<bool> finals(n);
  for (std::size_t s = 0; s < n; ++s) {
    finals[s] = apply(op, d1.is_final(pairs[s].first), d2.is_final(pairs[s].second));
    for (std::size_t a = 0; a < k; ++a) delta[a * n + s] = by_state[s * k + a];
  }
  return dfa(n, d1.alphabet(), std::move(delta), std::move(finals));
}

/// True iff K_p is contained in K_q, where K_x is the language accepted from
/// state x. Decided by reachability in the pair automaton.
inline bool quotient_contains(const dfa& d, state_id p, state_id q) {
  const std::size_t n = d.size();
  if (p >= n || q >= n) throw error(errc::state_out_of_range, "quotient state");
  std::vector<bool> seen(n * n, false);
  std::vector<std::pair<state_id, state_id>> queue{{p, q}};
  seen[std::size_t{p} * n + q] = true;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    auto [x, y] = queue[head];
    if (d.is_final(x) && !d.is_final(y)) return false;
    for (std::size_t a = 0; a < d.letter_count(); ++a) {
      state_id x2 = d.next(x, a), y2 = d.next(y, a);
      if (!seen[std::size_t{x2} * n + y2]) {
        seen[std::size_t{x2} * n + y2] = true;
        queue.emplace_back(x2, y2);
      }
    }
  }
  return true;
}

/// Language equality. The alphabets must agree as sets.
inline bool equivalent(const dfa& d1, const dfa& d2) {
  const dfa x = direct_product(d1, d2, boolean_op::symmetric_difference);
  for (state_id q = 0; q < x.size(); ++q)
    if (x.is_final(q)) return false;
  return true;
}

inline bool is_empty(const dfa& d) {
  const auto reachable = detail::reachable_states(d);
  for (state_id q = 0; q < d.size(); ++q)
    if (reachable[q] && d.is_final(q)) return false;
  return true;
}

/// Number of atoms of L(d), which equals the complexity of the reversal.
/// `d` must be minimal.
inline std::size_t atom_count(const dfa& d, std::size_t cap = default_subset_cap) {
  if (!is_minimal(d)) throw error(errc::not_minimal, "atoms need a minimal DFA");
  return complexity(determinize(reverse_nfa(d), cap));
}

inline dfa complement(const dfa& d) {
  std::vector<bool> flipped(d.size());
  for (state_id q = 0; q < d.size(); ++q) flipped[q] = !d.is_final(q);
  return d.with_finals(std::move(flipped));
}

/// One-state DFA accepting everything (or nothing) over the alphabet.
inline dfa universal_dfa(std::vector<std::string> alphabet, bool accept = true) {
  std::vector<state_id> delta(alphabet.size(), 0);
  return dfa(1, std::move(alphabet), std::move(delta), {accept});
}

/// Two-state DFA for {epsilon}.
inline dfa epsilon_dfa(std::vector<std::string> alphabet) {
  std::vector<state_id> delta(2 * alphabet.size(), 1);
  return dfa(2, std::move(alphabet), std::move(delta), {true, false});
}

}  // namespace sconvex

#endif  // SCONVEX_OPERATIONS_HPP_
