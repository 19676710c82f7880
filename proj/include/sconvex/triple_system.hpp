#ifndef SCONVEX_TRIPLE_SYSTEM_HPP_
#define SCONVEX_TRIPLE_SYSTEM_HPP_

#include <algorithm>
#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sconvex/automaton.hpp"
#include "sconvex/convexity.hpp"
#include "sconvex/error.hpp"
#include "sconvex/operations.hpp"
#include "sconvex/transformation.hpp"

namespace sconvex {

struct triple {
  state_id p, q, r;
  friend auto operator<=>(const triple&, const triple&) = default;
};

/// A suffix-convex triple system (Q_n, 0, F, R).
///
/// R is kept twice: as a dense n^3 bit cube for membership and as a sorted
/// list for iteration. Construction validates axioms A-D:
///   A  (p,q,p) in R
///   B  (p,q,r) in R  <=>  (q,p,r) in R
///   C  (p,q,r), (q,r,s) in R  =>  (p,q,s) in R
///   D  (p,q,r) in R, p,q in F  =>  r in F
class triple_system {
 public:
  triple_system(std::size_t n, std::vector<bool> finals, std::span<const triple> triples)
      : n_(n), finals_(std::move(finals)), cube_(n * n * n, false) {
    if (n_ == 0) throw error(errc::bad_size, "triple system needs a state");
    if (finals_.size() != n_) throw error(errc::size_mismatch, "final mask length");
    for (const auto& t : triples) {
      if (t.p >= n_ || t.q >= n_ || t.r >= n_)
        throw error(errc::state_out_of_range, "triple outside Q_" + std::to_string(n_));
      cube_[index(t.p, t.q, t.r)] = true;
    }
    rebuild_list();
    validate();
  }

  /// R = {(p,q,r) | member(p,q,r)}.
  template <typename Member>
  static triple_system from_predicate(std::size_t n, std::vector<bool> finals,
                                      Member member) {
    std::vector<triple> list;
    for (state_id p = 0; p < n; ++p)
      for (state_id q = 0; q < n; ++q)
        for (state_id r = 0; r < n; ++r)
          if (member(p, q, r)) list.push_back({p, q, r});
    return triple_system(n, std::move(finals), list);
  }

  /// Only the triples forced by axioms A and B.
  static triple_system minimal(std::size_t n, std::vector<bool> finals) {
    return from_predicate(n, std::move(finals),
                          [](state_id p, state_id q, state_id r) { return r == p || r == q; });
  }

  std::size_t size() const noexcept { return n_; }
  const std::vector<bool>& final_mask() const noexcept { return finals_; }
  bool is_final(state_id q) const { return finals_[q]; }

  bool contains(state_id p, state_id q, state_id r) const {
    return cube_[index(p, q, r)];
  }
  bool contains(const triple& t) const { return contains(t.p, t.q, t.r); }

  /// All triples of R in lexicographic order.
  const std::vector<triple>& triples() const noexcept { return list_; }

  /// Triples beyond the ones axioms A and B force.
  std::vector<triple> extra_triples() const {
    std::vector<triple> out;
    for (const auto& t : list_)
      if (t.r != t.p && t.r != t.q) out.push_back(t);
    return out;
  }

  friend bool operator==(const triple_system& a, const triple_system& b) {
    return a.n_ == b.n_ && a.finals_ == b.finals_ && a.cube_ == b.cube_;
  }

 private:
  std::size_t index(state_id p, state_id q, state_id r) const {
    return (std::size_t{p} * n_ + q) * n_ + r;
  }

  void rebuild_list() {
    list_.clear();
    for (state_id p = 0; p < n_; ++p)
      for (state_id q = 0; q < n_; ++q)
        for (state_id r = 0; r < n_; ++r)
          if (contains(p, q, r)) list_.push_back({p, q, r});
  }

  void validate() const {
    for (state_id p = 0; p < n_; ++p)
      for (state_id q = 0; q < n_; ++q)
        if (!contains(p, q, p)) throw axiom_violation('A', {p, q, p});
    for (const auto& [p, q, r] : list_)
      if (!contains(q, p, r)) throw axiom_violation('B', {q, p, r});
    for (const auto& [p, q, r] : list_)
      for (state_id s = 0; s < n_; ++s)
        if (contains(q, r, s) && !contains(p, q, s))
          throw axiom_violation('C', {p, q, r, s});
    for (const auto& [p, q, r] : list_)
      if (finals_[p] && finals_[q] && !finals_[r]) throw axiom_violation('D', {p, q, r});
  }

  std::size_t n_;
  std::vector<bool> finals_;
  std::vector<bool> cube_;
  std::vector<triple> list_;
};

/// Reflexive, transitive relation on Q_n with 0 as a maximum element.
class preorder {
 public:
  preorder(std::size_t n, std::vector<bool> matrix) : n_(n), leq_(std::move(matrix)) {
    if (n_ == 0) throw error(errc::bad_size, "preorder needs a state");
    if (leq_.size() != n_ * n_) throw error(errc::size_mismatch, "relation matrix");
    for (state_id p = 0; p < n_; ++p) {
      if (!leq(p, p)) throw error(errc::malformed, "not reflexive at " + std::to_string(p));
      if (!leq(p, 0)) throw error(errc::malformed, "0 is not above " + std::to_string(p));
    }
    for (state_id p = 0; p < n_; ++p)
      for (state_id q = 0; q < n_; ++q)
        for (state_id r = 0; r < n_; ++r)
          if (leq(p, q) && leq(q, r) && !leq(p, r))
            throw error(errc::malformed, "not transitive");
  }

  /// Reflexive-transitive closure of `pairs` (p below q), with 0 on top.
  static preorder generated_by(std::size_t n,
                               std::span<const std::pair<state_id, state_id>> pairs) {
    std::vector<bool> m(n * n, false);
    for (std::size_t p = 0; p < n; ++p) {
      m[p * n + p] = true;
      m[p * n] = true;
    }
    for (auto [p, q] : pairs) {
      if (p >= n || q >= n) throw error(errc::state_out_of_range, "order pair");
      m[std::size_t{p} * n + q] = true;
    }
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i)
        if (m[i * n + k])
          for (std::size_t j = 0; j < n; ++j)
            if (m[k * n + j]) m[i * n + j] = true;
    return preorder(n, std::move(m));
  }

  /// The chain n-1 < n-2 < ... < 1 < 0.
  static preorder descending_chain(std::size_t n) {
    std::vector<bool> m(n * n, false);
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = 0; q <= p; ++q) m[p * n + q] = true;
    return preorder(n, std::move(m));
  }

  /// Every state below 0 and nothing else comparable.
  static preorder flat(std::size_t n) { return generated_by(n, {}); }

  std::size_t size() const noexcept { return n_; }
  bool leq(state_id p, state_id q) const { return leq_[std::size_t{p} * n_ + q]; }
  const std::vector<bool>& matrix() const noexcept { return leq_; }

  bool is_partial_order() const {
    for (state_id p = 0; p < n_; ++p)
      for (state_id q = p + 1; q < n_; ++q)
        if (leq(p, q) && leq(q, p)) return false;
    return true;
  }

  friend bool operator==(const preorder&, const preorder&) = default;

 private:
  std::size_t n_;
  std::vector<bool> leq_;
};

/// p is below q iff (0, p, q) is in R.
inline preorder preorder_of(const triple_system& s) {
  const std::size_t n = s.size();
  std::vector<bool> m(n * n);
  for (state_id p = 0; p < n; ++p)
    for (state_id q = 0; q < n; ++q) m[std::size_t{p} * n + q] = s.contains(0, p, q);
  return preorder(n, std::move(m));
}

struct order_report {
  bool is_partial_order = false;
  bool is_total_comparability = false;
  std::vector<std::pair<state_id, state_id>> symmetric_pairs;           // p ~ q, p < q
  std::vector<std::pair<state_id, state_id>> comparable_nonzero_pairs;  // p below q
};

inline order_report order_properties(const preorder& po) {
  order_report out;
  out.is_partial_order = po.is_partial_order();
  out.is_total_comparability = true;
  const auto n = static_cast<state_id>(po.size());
  for (state_id p = 0; p < n; ++p) {
    for (state_id q = 0; q < n; ++q) {
      if (p == q) continue;
      if (!po.leq(p, q) && !po.leq(q, p)) out.is_total_comparability = false;
      if (p < q && po.leq(p, q) && po.leq(q, p)) out.symmetric_pairs.emplace_back(p, q);
      if (p != 0 && q != 0 && po.leq(p, q)) out.comparable_nonzero_pairs.emplace_back(p, q);
    }
  }
  return out;
}

struct respect_result {
  bool ok = true;
  int condition = 0;  // 1 or 2 when !ok
  triple violated{};  // triple of R whose image leaves R
  explicit operator bool() const noexcept { return ok; }
};

/// Conditions 1 and 2: t maps R into R, and maps triples anchored at 0 to
/// triples anchored at 0.
inline respect_result respects(const transformation& t, const triple_system& s) {
  if (t.size() != s.size()) throw error(errc::size_mismatch, "transformation vs system");
  for (const auto& tr : s.triples()) {
    if (!s.contains(t[tr.p], t[tr.q], t[tr.r])) return {false, 1, tr};
  }
  for (const auto& tr : s.triples()) {
    if (tr.p != 0) break;
    if (!s.contains(0, t[tr.q], t[tr.r])) return {false, 2, tr};
  }
  return {};
}

/// Conditions 1 and 2 are closed under composition, so the letters suffice.
inline bool dfa_respects(const dfa& d, const triple_system& s) {
  if (d.size() != s.size()) return false;
  if (d.final_mask() != s.final_mask()) return false;
  for (std::size_t a = 0; a < d.letter_count(); ++a)
    if (!respects(transformation(d.letter_image(a)), s)) return false;
  return true;
}

/// R = {(p,q,r) | K_p and K_q together contain only words of K_r}, computed
/// as the complement of the triples that reach (final, final, non-final).
/// `d` must be minimal and suffix-convex.
inline triple_system canonical_system(const dfa& d) {
  if (!is_minimal(d)) throw error(errc::not_minimal, "canonical system needs a minimal DFA");
  if (!is_suffix_convex(d).suffix_convex)
    throw error(errc::not_suffix_convex, "canonical system needs a suffix-convex DFA");
  const std::size_t n = d.size(), k = d.letter_count();
  auto id = [n](std::size_t p, std::size_t q, std::size_t r) { return (p * n + q) * n + r; };
  std::vector<bool> bad(n * n * n, false);
  for (state_id p = 0; p < n; ++p)
    for (state_id q = 0; q < n; ++q)
      for (state_id r = 0; r < n; ++r)
        bad[id(p, q, r)] = d.is_final(p) && d.is_final(q) && !d.is_final(r);
  for (bool changed = true; changed;) {
    changed = false;
    for (state_id p = 0; p < n; ++p)
      for (state_id q = 0; q < n; ++q)
        for (state_id r = 0; r < n; ++r) {
          if (bad[id(p, q, r)]) continue;
          for (std::size_t a = 0; a < k; ++a) {
            if (bad[id(d.next(p, a), d.next(q, a), d.next(r, a))]) {
              bad[id(p, q, r)] = true;
              changed = true;
              break;
            }
          }
        }
  }
  return triple_system::from_predicate(
      n, d.final_mask(),
      [&](state_id p, state_id q, state_id r) { return !bad[id(p, q, r)]; });
}

namespace detail {

inline void require_partial_order(const preorder& po) {
  if (!po.is_partial_order()) throw error(errc::not_partial_order, "relation is not antisymmetric");
}

inline void require_convex(const preorder& po, const std::vector<bool>& finals) {
  const auto n = static_cast<state_id>(po.size());
  if (finals.size() != n) throw error(errc::size_mismatch, "final mask length");
  for (state_id f = 0; f < n; ++f) {
    if (!finals[f]) continue;
    for (state_id h = 0; h < n; ++h) {
      if (!finals[h] || !po.leq(f, h)) continue;
      for (state_id g = 0; g < n; ++g)
        if (!finals[g] && po.leq(f, g) && po.leq(g, h))
          throw error(errc::non_convex_finals,
                      std::to_string(f) + " <= " + std::to_string(g) + " <= " +
                          std::to_string(h) + " with " + std::to_string(g) + " not final");
    }
  }
}

// Depth-first enumeration of all maps on Q_n in lexicographic order.
// A pair (q, r) demands leq(qt, rt); a triple demands member(pt, qt, rt).
// Each constraint is tested as soon as its largest state is assigned.
template <typename Leq, typename Member>
std::vector<transformation> enumerate_maps(
    std::size_t n, const std::vector<std::pair<state_id, state_id>>& pairs, Leq leq,
    const std::vector<triple>& triples, Member member, std::size_t cap) {
  std::vector<std::vector<std::pair<state_id, state_id>>> pairs_at(n);
  std::vector<std::vector<triple>> triples_at(n);
  for (const auto& pr : pairs) pairs_at[std::max(pr.first, pr.second)].push_back(pr);
  for (const auto& t : triples) triples_at[std::max({t.p, t.q, t.r})].push_back(t);

  std::vector<transformation> out;
  std::vector<state_id> img(n, 0);
  auto consistent = [&](std::size_t depth) {
    for (auto [q, r] : pairs_at[depth])
      if (!leq(img[q], img[r])) return false;
    for (const auto& t : triples_at[depth])
      if (!member(img[t.p], img[t.q], img[t.r])) return false;
    return true;
  };
  // Iterative DFS; depth is the state currently being assigned.
  std::size_t depth = 0;
  img[0] = 0;
  for (;;) {
    if (consistent(depth)) {
      if (depth + 1 == n) {
        if (out.size() >= cap)
          throw error(errc::resource_cap, "more than " + std::to_string(cap) + " maps");
        out.emplace_back(img);
      } else {
        ++depth;
        img[depth] = 0;
        continue;
      }
    }
    // advance to the next candidate, backtracking as needed
    while (img[depth] + 1 == n) {
      if (depth == 0) return out;
      --depth;
    }
    ++img[depth];
  }
}

}  // namespace detail

inline constexpr std::size_t max_enumeration_states = 9;

/// T*: every transformation respecting s, by exhaustive search with pruning.
/// Elements are in lexicographic order of their image vectors.
inline semigroup maximal_semigroup(const triple_system& s,
                                   std::size_t cap = default_semigroup_cap) {
  const std::size_t n = s.size();
  if (n > max_enumeration_states)
    throw error(errc::resource_cap, "n^n enumeration refused for n > 9");
  std::vector<std::pair<state_id, state_id>> anchored;
  for (const auto& t : s.triples())
    if (t.p == 0) anchored.emplace_back(t.q, t.r);
  auto elements = detail::enumerate_maps(
      n, anchored, [&](state_id q, state_id r) { return s.contains(0, q, r); },
      s.triples(), [&](state_id p, state_id q, state_id r) { return s.contains(p, q, r); },
      cap);
  semigroup out;
  out.n = n;
  out.generators = elements;
  out.elements = std::move(elements);
  return out;
}

/// All t with p <= q implying pt <= qt. `po` must be antisymmetric.
inline semigroup monotone_transformations(const preorder& po,
                                          std::size_t cap = default_semigroup_cap) {
  detail::require_partial_order(po);
  const std::size_t n = po.size();
  if (n > max_enumeration_states)
    throw error(errc::resource_cap, "n^n enumeration refused for n > 9");
  std::vector<std::pair<state_id, state_id>> pairs;
  for (state_id p = 0; p < n; ++p)
    for (state_id q = 0; q < n; ++q)
      if (p != q && po.leq(p, q)) pairs.emplace_back(p, q);
  auto elements = detail::enumerate_maps(
      n, pairs, [&](state_id a, state_id b) { return po.leq(a, b); }, {},
      [](state_id, state_id, state_id) { return true; }, cap);
  semigroup out;
  out.n = n;
  out.generators = elements;
  out.elements = std::move(elements);
  return out;
}

/// R = {(p,q,r) | p <= r <= q or q <= r <= p}, plus the triples (p,q,p) and
/// (p,q,q) that axiom A demands for incomparable p and q. Requires a partial
/// order and a final set that is convex for it.
inline triple_system order_system(const preorder& po, std::vector<bool> finals) {
  detail::require_partial_order(po);
  detail::require_convex(po, finals);
  return triple_system::from_predicate(
      po.size(), std::move(finals), [&](state_id p, state_id q, state_id r) {
        if (r == p || r == q) return true;
        return (po.leq(p, r) && po.leq(r, q)) || (po.leq(q, r) && po.leq(r, p));
      });
}

inline std::vector<std::string> indexed_letters(std::size_t count, const std::string& prefix = "t") {
  std::size_t width = 3;
  for (std::size_t c = count > 0 ? count - 1 : 0; c >= 1000; c /= 10) ++width;
  std::vector<std::string> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    std::string digits = std::to_string(i);
    out.push_back(prefix + std::string(width - std::min(width, digits.size()), '0') + digits);
  }
  return out;
}

/// DFA with one letter per monotone transformation of `po`, letters named
/// t000, t001, ... in lexicographic order of the transformations.
inline dfa monotone_dfa(const preorder& po, std::vector<bool> finals,
                        std::size_t letter_cap = default_semigroup_cap) {
  detail::require_partial_order(po);
  detail::require_convex(po, finals);
  auto mono = monotone_transformations(po, letter_cap);
  std::vector<std::vector<state_id>> images;
  images.reserve(mono.size());
  for (const auto& t : mono.elements) images.push_back(t.image());
  return dfa::from_images(indexed_letters(images.size()), images, std::move(finals));
}

/// DFA whose letters are exactly the elements of T* for s.
inline dfa maximal_dfa(const triple_system& s, std::size_t cap = default_semigroup_cap) {
  auto t_star = maximal_semigroup(s, cap);
  std::vector<std::vector<state_id>> images;
  images.reserve(t_star.size());
  for (const auto& t : t_star.elements) images.push_back(t.image());
  return dfa::from_images(indexed_letters(images.size()), images, s.final_mask());
}

}  // namespace sconvex

#endif  // SCONVEX_TRIPLE_SYSTEM_HPP_
