#ifndef SCONVEX_CONVEXITY_HPP_
#define SCONVEX_CONVEXITY_HPP_

#include <algorithm>
#include <cstddef>
#include <deque>
#include <optional>
#include <string>
#include <vector>

#include "sconvex/automaton.hpp"
#include "sconvex/error.hpp"
#include "sconvex/operations.hpp"

namespace sconvex {

using word = std::vector<std::size_t>;

/// Words u, v, w with w and uvw accepted but vw rejected.
struct convexity_counterexample {
  word u, v, w;
};

struct convexity_result {
  bool suffix_convex = true;
  std::optional<convexity_counterexample> counterexample;
};

inline std::string spell(const word& letters, const std::vector<std::string>& alphabet,
                         const std::string& separator = "") {
  std::string out;
  for (std::size_t i = 0; i < letters.size(); ++i) {
    if (i && !separator.empty()) out += separator;
    out += alphabet[letters[i]];
  }
  return out;
}

inline constexpr std::size_t convexity_node_cap = std::size_t{1} << 27;

/// Decides suffix-convexity on the minimal DFA of L(d).
///
/// The search runs over three phases joined by free moves: states 0u, pairs
/// (0uv, 0v) and triples (0w, 0uvw, 0vw). A triple whose first two
/// components are final and whose third is not refutes convexity. Breadth-first
/// search with zero-cost phase changes yields a counterexample of minimum
/// total length |uvw|.
inline convexity_result is_suffix_convex(const dfa& input) {
  const dfa d = minimize(input);
  const std::size_t n = d.size(), k = d.letter_count();
  const std::size_t n2 = n * n, n3 = n2 * n;
  if (n + n2 + n3 > convexity_node_cap)
    throw error(errc::resource_cap, "convexity search too large");

  // Node ids: [0,n) phase 0, [n, n+n2) phase 1, [n+n2, n+n2+n3) phase 2.
  const std::size_t total = n + n2 + n3;
  constexpr std::size_t none = static_cast<std::size_t>(-1);
  constexpr std::size_t epsilon = static_cast<std::size_t>(-2);
  std::vector<std::size_t> parent(total, none), via(total, none);
  std::vector<bool> done(total, false);
  std::vector<std::size_t> dist(total, none);

  auto pair_id = [&](std::size_t q, std::size_t r) { return n + q * n + r; };
  auto triple_id = [&](std::size_t p, std::size_t q, std::size_t r) {
    return n + n2 + (p * n + q) * n + r;
  };

  std::deque<std::size_t> queue;
  dist[0] = 0;
  queue.push_back(0);
  std::size_t found = none;

  auto relax = [&](std::size_t from, std::size_t to, std::size_t letter) {
    std::size_t cost = dist[from] + (letter == epsilon ? 0 : 1);
    if (cost < dist[to]) {
      dist[to] = cost;
      parent[to] = from;
      via[to] = letter;
      if (letter == epsilon) queue.push_front(to);
      else queue.push_back(to);
    }
  };

  while (!queue.empty()) {
    std::size_t node = queue.front();
    queue.pop_front();
    if (done[node]) continue;
    done[node] = true;
    if (node < n) {
      state_id q = static_cast<state_id>(node);
      relax(node, pair_id(q, 0), epsilon);
      for (std::size_t a = 0; a < k; ++a) relax(node, d.next(q, a), a);
    } else if (node < n + n2) {
      std::size_t q = (node - n) / n, r = (node - n) % n;
      relax(node, triple_id(0, q, r), epsilon);
      for (std::size_t a = 0; a < k; ++a)
        relax(node,
              pair_id(d.next(static_cast<state_id>(q), a),
                      d.next(static_cast<state_id>(r), a)),
              a);
    } else {
      std::size_t t = node - n - n2;
      auto p = static_cast<state_id>(t / n2), q = static_cast<state_id>(t / n % n),
           r = static_cast<state_id>(t % n);
      if (d.is_final(p) && d.is_final(q) && !d.is_final(r)) {
        found = node;
        break;
      }
      for (std::size_t a = 0; a < k; ++a)
        relax(node, triple_id(d.next(p, a), d.next(q, a), d.next(r, a)), a);
    }
  }

  convexity_result result;
  if (found == none) return result;

  convexity_counterexample cx;
  for (std::size_t node = found; parent[node] != none; node = parent[node]) {
    if (via[node] == epsilon) continue;
    if (node < n) cx.u.push_back(via[node]);
    else if (node < n + n2) cx.v.push_back(via[node]);
    else cx.w.push_back(via[node]);
  }
  std::reverse(cx.u.begin(), cx.u.end());
  std::reverse(cx.v.begin(), cx.v.end());
  std::reverse(cx.w.begin(), cx.w.end());
  result.suffix_convex = false;
  result.counterexample = std::move(cx);
  return result;
}

namespace detail {

// NFA for Sigma^k L, k in {0 = Sigma^*, 1 = Sigma^+}: a fresh looping
// initial state feeding d's initial state by epsilon (k = 0) or by any
// letter (k = 1).
inline nfa prefixed_nfa(const dfa& d, bool at_least_one) {
  const std::size_t n = d.size();
  const auto fresh = static_cast<state_id>(n);
  nfa m(n + 1, d.alphabet());
  for (std::size_t a = 0; a < d.letter_count(); ++a) {
    for (state_id q = 0; q < n; ++q) m.add_transition(q, a, d.next(q, a));
    m.add_transition(fresh, a, fresh);
    if (at_least_one) m.add_transition(fresh, a, 0);
  }
  if (!at_least_one) m.add_epsilon(fresh, 0);
  for (state_id q = 0; q < n; ++q) m.set_final(q, d.is_final(q));
  m.set_initial(fresh);
  return m;
}

}  // namespace detail

/// Non-empty and L = Sigma^* L.
inline bool is_left_ideal(const dfa& d) {
  if (is_empty(d)) return false;
  return equivalent(d, determinize(detail::prefixed_nfa(d, false)));
}

/// Every suffix of a word of L is in L. The suffix language is recognized by
/// d with every reachable state made initial.
inline bool is_suffix_closed(const dfa& d) {
  nfa m = to_nfa(d);
  const auto reachable = detail::reachable_states(d);
  for (state_id q = 0; q < d.size(); ++q) m.set_initial(q, reachable[q]);
  return equivalent(d, determinize(m));
}

/// No word of L is a proper suffix of another word of L: L and Sigma^+ L are
/// disjoint.
inline bool is_suffix_free(const dfa& d) {
  const dfa longer = determinize(detail::prefixed_nfa(d, true));
  return is_empty(direct_product(d, longer, boolean_op::intersection));
}

struct classification {
  bool suffix_convex = false;
  bool left_ideal = false;
  bool suffix_closed = false;
  bool suffix_free = false;
  bool proper = false;
  std::optional<convexity_counterexample> counterexample;
};

inline classification classify(const dfa& d) {
  classification c;
  auto convex = is_suffix_convex(d);
  c.suffix_convex = convex.suffix_convex;
  c.counterexample = std::move(convex.counterexample);
  c.left_ideal = is_left_ideal(d);
  c.suffix_closed = is_suffix_closed(d);
  c.suffix_free = is_suffix_free(d);
  c.proper = c.suffix_convex && !c.left_ideal && !c.suffix_closed && !c.suffix_free;
  return c;
}

/// Flat key=value report, one pair per line.
inline std::string to_report(const classification& c,
                             const std::vector<std::string>& alphabet) {
  auto flag = [](bool b) { return b ? "true" : "false"; };
  std::string out;
  out += std::string("suffix_convex=") + flag(c.suffix_convex) + "\n";
  out += std::string("left_ideal=") + flag(c.left_ideal) + "\n";
  out += std::string("suffix_closed=") + flag(c.suffix_closed) + "\n";
  out += std::string("suffix_free=") + flag(c.suffix_free) + "\n";
  out += std::string("proper=") + flag(c.proper) + "\n";
  if (c.counterexample) {
    const std::string sep = [&] {
      for (const auto& l : alphabet)
        if (l.size() > 1) return std::string(" ");
      return std::string();
    }();
    out += "u=" + spell(c.counterexample->u, alphabet, sep) + "\n";
    out += "v=" + spell(c.counterexample->v, alphabet, sep) + "\n";
    out += "w=" + spell(c.counterexample->w, alphabet, sep) + "\n";
  }
  return out;
}

}  // namespace sconvex

#endif  // SCONVEX_CONVEXITY_HPP_
