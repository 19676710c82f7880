#ifndef SCONVEX_HARNESS_HPP_
#define SCONVEX_HARNESS_HPP_

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "sconvex/automaton.hpp"
#include "sconvex/convexity.hpp"
#include "sconvex/error.hpp"
#include "sconvex/operations.hpp"
#include "sconvex/transformation.hpp"
#include "sconvex/triple_system.hpp"
#include "sconvex/witness.hpp"

namespace sconvex {

// Closed-form bounds.

inline std::uint64_t pow_u64(std::uint64_t base, unsigned exp) {
  std::uint64_t r = 1;
  while (exp--) r *= base;
  return r;
}

inline std::uint64_t star_bound(unsigned n) { return pow_u64(2, n - 1) + pow_u64(2, n - 2); }

inline std::uint64_t product_bound(unsigned m, unsigned n) {
  return (m - 1) * pow_u64(2, n) + pow_u64(2, n - 1);
}

inline std::uint64_t boolean_bound(unsigned m, unsigned n) { return std::uint64_t{m} * n; }

/// 2^n - 2^(n-3), for n >= 3.
inline std::uint64_t reversal_bound(unsigned n) { return pow_u64(2, n) - pow_u64(2, n - 3); }

/// Atom-count bound as an exact comparison: 8 * atoms <= 7 * 2^n.
inline bool within_reversal_bound(std::uint64_t atoms, unsigned n) {
  return 8 * atoms <= 7 * pow_u64(2, n);
}

/// n(n-1)^(n-2) + (n-1)^2.
inline std::uint64_t syntactic_bound(unsigned n) {
  return n * pow_u64(n - 1, n - 2) + pow_u64(n - 1, 2);
}

inline std::uint64_t binomial(unsigned n, unsigned k) {
  std::uint64_t r = 1;
  for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

/// Monotone maps for the chain n-1 < ... < 0: C(2n-1, n).
inline std::uint64_t chain_monotone_count(unsigned n) { return binomial(2 * n - 1, n); }

/// Monotone maps for the reversal order: 2n^(n-2) + 3*2^(n-3) + n - 2.
inline std::uint64_t reversal_order_monotone_count(unsigned n) {
  return 2 * pow_u64(n, n - 2) + 3 * pow_u64(2, n - 3) + n - 2;
}

// Reports.

enum class check_kind { equal, at_most, below };

struct verification_report {
  std::string suite;
  std::vector<std::pair<std::string, std::string>> params;  // ordered
  std::uint64_t expected = 0;
  std::uint64_t actual = 0;
  check_kind kind = check_kind::equal;
  bool pass = false;
  double ms = 0;

  std::string line() const {
    std::ostringstream out;
    out << "suite=" << suite;
    for (const auto& [k, v] : params) out << ' ' << k << '=' << v;
    out << " expected=" << expected << " actual=" << actual;
    if (kind == check_kind::at_most) out << " check=le";
    if (kind == check_kind::below) out << " check=lt";
    out << " result=" << (pass ? "PASS" : "FAIL");
    return out.str();
  }
};

inline bool evaluate(check_kind kind, std::uint64_t expected, std::uint64_t actual) {
  switch (kind) {
    case check_kind::equal: return actual == expected;
    case check_kind::at_most: return actual <= expected;
    case check_kind::below: return actual < expected;
  }
  return false;
}

namespace detail {

inline verification_report timed(std::string suite,
                                 std::vector<std::pair<std::string, std::string>> params,
                                 std::uint64_t expected, check_kind kind,
                                 const std::function<std::uint64_t()>& compute) {
  auto start = std::chrono::steady_clock::now();
  verification_report r;
  r.suite = std::move(suite);
  r.params = std::move(params);
  r.expected = expected;
  r.kind = kind;
  r.actual = compute();
  r.pass = evaluate(kind, expected, r.actual);
  r.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
             .count();
  return r;
}

inline std::string str(std::size_t x) { return std::to_string(x); }

}  // namespace detail

inline bool all_pass(const std::vector<verification_report>& reports) {
  return std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.pass; });
}

/// L_n(a,b,c,d): the star witness with e and f deleted.
inline dfa star_stream(std::size_t n) {
  auto d = star_witness(n);
  return dialect(d, letter_map::positional(d.alphabet(), "a,b,c,d,-,-"));
}

/// Dialect of the star witness given positionally, e.g. "e,f,-,-,a,b".
inline dfa star_dialect(std::size_t n, const std::string& images) {
  auto d = star_witness(n);
  return dialect(d, letter_map::positional(d.alphabet(), images));
}

inline std::size_t star_complexity(const dfa& d) { return complexity(determinize(star_nfa(d))); }

inline std::size_t reversal_complexity(const dfa& d) {
  return complexity(determinize(reverse_nfa(d)));
}

inline std::vector<verification_report> verify_star(std::size_t lo, std::size_t hi) {
  std::vector<verification_report> out;
  for (std::size_t n = lo; n <= hi; ++n)
    out.push_back(detail::timed("star", {{"n", detail::str(n)}}, star_bound(n), check_kind::equal,
                                [n] { return star_complexity(star_stream(n)); }));
  return out;
}

inline std::vector<verification_report> verify_product(std::size_t lo, std::size_t hi) {
  std::vector<verification_report> out;
  for (std::size_t m = lo; m <= hi; ++m)
    for (std::size_t n = lo; n <= hi; ++n)
      out.push_back(detail::timed(
          "product", {{"n", detail::str(n)}, {"m", detail::str(m)}}, product_bound(m, n),
          check_kind::equal, [m, n] {
            auto left = star_dialect(m, "a,b,c,-,e,f");
            auto right = star_dialect(n, "e,f,-,-,a,b");
            return complexity(determinize(product_nfa(left, right, true)));
          }));
  return out;
}

inline const char* to_string(boolean_op op) {
  switch (op) {
    case boolean_op::union_: return "union";
    case boolean_op::symmetric_difference: return "xor";
    case boolean_op::difference: return "diff";
    case boolean_op::intersection: return "intersect";
  }
  return "?";
}

inline std::vector<verification_report> verify_boolean(std::size_t lo, std::size_t hi) {
  std::vector<verification_report> out;
  const boolean_op ops[] = {boolean_op::union_, boolean_op::symmetric_difference,
                            boolean_op::difference, boolean_op::intersection};
  for (std::size_t m = lo; m <= hi; ++m)
    for (std::size_t n = lo; n <= hi; ++n)
      for (boolean_op op : ops)
        out.push_back(detail::timed(
            "boolean", {{"n", detail::str(n)}, {"m", detail::str(m)}, {"op", to_string(op)}},
            boolean_bound(m, n), check_kind::equal, [m, n, op] {
              auto left = star_dialect(m, "a,b,-,-,e,f");
              auto right = star_dialect(n, "e,f,-,-,a,b");
              return complexity(direct_product(left, right, op));
            }));
  return out;
}

inline std::vector<verification_report> verify_reversal(std::size_t lo, std::size_t hi) {
  std::vector<verification_report> out;
  for (std::size_t n = std::max<std::size_t>(lo, 4); n <= hi; ++n)
    out.push_back(detail::timed("reversal", {{"n", detail::str(n)}}, reversal_bound(n),
                                check_kind::equal,
                                [n] { return reversal_complexity(reversal_witness(n)); }));
  return out;
}

inline std::vector<verification_report> verify_syntactic(std::size_t lo, std::size_t hi) {
  std::vector<verification_report> out;
  for (std::size_t n = lo; n <= hi; ++n)
    out.push_back(detail::timed("syntactic", {{"n", detail::str(n)}}, syntactic_bound(n),
                                check_kind::equal,
                                [n] { return transition_semigroup(syntactic_witness(n)).size(); }));
  return out;
}

/// Plain filter over all n^n maps; independent of the pruned enumeration.
inline std::uint64_t count_monotone_exhaustive(const preorder& po) {
  const std::size_t n = po.size();
  std::vector<state_id> img(n, 0);
  std::uint64_t count = 0;
  for (;;) {
    bool ok = true;
    for (state_id p = 0; p < n && ok; ++p)
      for (state_id q = 0; q < n && ok; ++q)
        if (po.leq(p, q) && !po.leq(img[p], img[q])) ok = false;
    if (ok) ++count;
    std::size_t i = 0;
    while (i < n && ++img[i] == n) img[i++] = 0;
    if (i == n) return count;
  }
}

inline std::vector<verification_report> verify_monotone_counts(std::size_t lo, std::size_t hi) {
  std::vector<verification_report> out;
  for (std::size_t n = lo; n <= hi; ++n) {
    const auto chain = preorder::descending_chain(n);
    const auto rev = reversal_order(n);
    out.push_back(detail::timed("monotone-chain", {{"n", detail::str(n)}, {"method", "search"}},
                                chain_monotone_count(n), check_kind::equal,
                                [&] { return monotone_transformations(chain).size(); }));
    out.push_back(detail::timed("monotone-chain", {{"n", detail::str(n)}, {"method", "exhaustive"}},
                                chain_monotone_count(n), check_kind::equal,
                                [&] { return count_monotone_exhaustive(chain); }));
    out.push_back(detail::timed("monotone-reversal", {{"n", detail::str(n)}, {"method", "search"}},
                                reversal_order_monotone_count(n), check_kind::equal,
                                [&] { return monotone_transformations(rev).size(); }));
    out.push_back(detail::timed("monotone-reversal",
                                {{"n", detail::str(n)}, {"method", "exhaustive"}},
                                reversal_order_monotone_count(n), check_kind::equal,
                                [&] { return count_monotone_exhaustive(rev); }));
  }
  return out;
}

/// Number of ordered pairs p != q of distinct states with K_p inside K_q,
/// not counting K_0 inside the quotient of a final state.
inline std::uint64_t stray_containments(const dfa& d) {
  std::uint64_t count = 0;
  for (state_id p = 0; p < d.size(); ++p)
    for (state_id q = 0; q < d.size(); ++q) {
      if (p == q || (p == 0 && d.is_final(q))) continue;
      if (quotient_contains(d, p, q)) ++count;
    }
  return count;
}

inline std::vector<verification_report> verify_exclusions(std::size_t lo, std::size_t hi) {
  std::vector<verification_report> out;
  for (std::size_t n = std::max<std::size_t>(lo, 4); n <= hi; ++n) {
    const auto sn = detail::str(n);
    const auto star = star_witness(n);
    const auto rev = reversal_witness(n);
    out.push_back(detail::timed("exclusion", {{"n", sn}, {"check", "star-witness-reversal"}},
                                reversal_bound(n), check_kind::below,
                                [&] { return reversal_complexity(star); }));
    out.push_back(detail::timed("exclusion", {{"n", sn}, {"check", "reversal-witness-star"}},
                                star_bound(n), check_kind::below,
                                [&] { return star_complexity(rev); }));
    out.push_back(detail::timed("exclusion", {{"n", sn}, {"check", "star-witness-syntactic"}},
                                syntactic_bound(n), check_kind::below,
                                [&] { return syntactic_complexity(star); }));
    out.push_back(detail::timed("exclusion", {{"n", sn}, {"check", "reversal-witness-syntactic"}},
                                syntactic_bound(n), check_kind::below,
                                [&] { return syntactic_complexity(rev); }));
    out.push_back(detail::timed("exclusion", {{"n", sn}, {"check", "star-canonical-total"}}, 1,
                                check_kind::equal, [&] {
                                  auto po = preorder_of(canonical_system(star));
                                  return std::uint64_t{order_properties(po).is_total_comparability};
                                }));
    out.push_back(detail::timed("exclusion", {{"n", sn}, {"check", "star-stray-containments"}}, 0,
                                check_kind::equal, [&] { return stray_containments(star); }));
    out.push_back(detail::timed(
        "exclusion", {{"n", sn}, {"check", "reversal-canonical-single-pair"}}, 1,
        check_kind::equal, [&] {
          auto props = order_properties(preorder_of(canonical_system(rev)));
          const std::vector<std::pair<state_id, state_id>> only{{2, 1}};
          return std::uint64_t{props.is_partial_order && props.comparable_nonzero_pairs == only};
        }));
  }
  return out;
}

// Random suffix-convex DFAs.

/// Seeded draws that do not depend on the standard library's distributions.
class seeded_rng {
 public:
  explicit seeded_rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, bound).
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = engine_.max() - engine_.max() % bound;
    std::uint64_t x;
    do x = engine_();
    while (x >= limit);
    return x % bound;
  }

  bool coin() { return below(2) == 1; }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
  }

 private:
  std::mt19937_64 engine_;
};

inline preorder random_partial_order(std::size_t n, seeded_rng& rng) {
  std::vector<std::pair<state_id, state_id>> edges;
  if (n >= 3) {
    const std::size_t attempts = rng.below((n - 1) * (n - 2) / 2 + 1);
    for (std::size_t i = 0; i < attempts; ++i) {
      auto p = static_cast<state_id>(1 + rng.below(n - 1));
      auto q = static_cast<state_id>(1 + rng.below(n - 1));
      if (p == q) continue;
      auto current = preorder::generated_by(n, edges);
      if (current.leq(q, p)) continue;
      edges.emplace_back(p, q);
    }
  }
  return preorder::generated_by(n, edges);
}

inline bool is_convex(const preorder& po, const std::vector<bool>& finals) {
  try {
    detail::require_convex(po, finals);
    return true;
  } catch (const error&) {
    return false;
  }
}

namespace detail {

inline bool random_monotone_fill(const preorder& po, seeded_rng& rng, std::vector<state_id>& img,
                                 std::size_t depth) {
  const std::size_t n = po.size();
  if (depth == n) return true;
  std::vector<state_id> candidates(n);
  std::iota(candidates.begin(), candidates.end(), state_id{0});
  rng.shuffle(candidates);
  for (state_id v : candidates) {
    bool ok = true;
    for (state_id q = 0; q < depth && ok; ++q) {
      if (po.leq(static_cast<state_id>(depth), q) && !po.leq(v, img[q])) ok = false;
      if (po.leq(q, static_cast<state_id>(depth)) && !po.leq(img[q], v)) ok = false;
    }
    if (!ok) continue;
    img[depth] = v;
    if (random_monotone_fill(po, rng, img, depth + 1)) return true;
  }
  return false;
}

}  // namespace detail

inline constexpr std::size_t uniform_sampling_cap = std::size_t{1} << 16;

/// Suffix-convex by construction: a random partial order with 0 on top, a
/// random convex final set and k monotone letters. Letters are drawn
/// uniformly from all monotone maps when there are at most 2^16 of them,
/// otherwise by randomized backtracking.
inline dfa random_suffix_convex(std::size_t n, std::size_t k, std::uint64_t seed) {
  if (n == 0 || k == 0) throw error(errc::bad_size, "need n >= 1 and k >= 1");
  seeded_rng rng(seed);
  const preorder po = random_partial_order(n, rng);

  std::vector<bool> finals(n, false);
  bool chosen = false;
  for (int attempt = 0; attempt < 64 && !chosen && n >= 2; ++attempt) {
    for (std::size_t q = 0; q < n; ++q) finals[q] = rng.coin();
    const auto count = std::count(finals.begin(), finals.end(), true);
    chosen = count > 0 && static_cast<std::size_t>(count) < n && is_convex(po, finals);
  }
  if (!chosen) {
    std::fill(finals.begin(), finals.end(), false);
    finals[rng.below(n)] = true;
  }

  std::vector<std::vector<state_id>> images;
  std::optional<semigroup> all;
  try {
    all = monotone_transformations(po, uniform_sampling_cap);
  } catch (const error& e) {
    if (e.code() != errc::resource_cap) throw;
  }
  for (std::size_t i = 0; i < k; ++i) {
    if (all) {
      images.push_back(all->elements[rng.below(all->size())].image());
    } else {
      std::vector<state_id> img(n, 0);
      detail::random_monotone_fill(po, rng, img, 0);
      images.push_back(std::move(img));
    }
  }
  std::vector<std::string> letters;
  if (k <= 26) {
    for (std::size_t i = 0; i < k; ++i) letters.emplace_back(1, static_cast<char>('a' + i));
  } else {
    letters = indexed_letters(k, "x");
  }
  return dfa::from_images(std::move(letters), images, std::move(finals));
}

/// Atom bound over random suffix-convex DFAs, checked after minimization.
inline std::vector<verification_report> verify_reversal_bound(std::size_t samples,
                                                              std::size_t max_n,
                                                              std::size_t max_letters,
                                                              std::uint64_t seed) {
  std::vector<verification_report> out;
  seeded_rng meta(seed);
  for (std::size_t i = 0; i < samples; ++i) {
    const std::size_t n = 1 + meta.below(max_n);
    const std::size_t k = 1 + meta.below(max_letters);
    const std::uint64_t sample_seed = meta.below(std::uint64_t{1} << 62);
    const dfa d = minimize(random_suffix_convex(n, k, sample_seed));
    const auto nm = static_cast<unsigned>(d.size());
    auto r = detail::timed(
        "reversal-bound",
        {{"n", detail::str(nm)}, {"k", detail::str(k)}, {"seed", std::to_string(sample_seed)}},
        (7 * pow_u64(2, nm)) / 8, check_kind::at_most, [&] { return atom_count(d); });
    r.pass = within_reversal_bound(r.actual, nm);
    out.push_back(std::move(r));
  }
  return out;
}

// Conjecture probe.

/// All partial orders on {1..n-1} up to relabeling, with 0 added on top.
inline std::vector<preorder> partial_orders_up_to_iso(std::size_t n) {
  const std::size_t k = n - 1;
  std::vector<std::pair<std::size_t, std::size_t>> slots;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      if (i != j) slots.emplace_back(i, j);
  std::vector<std::vector<std::size_t>> perms;
  std::vector<std::size_t> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  do perms.push_back(perm);
  while (std::next_permutation(perm.begin(), perm.end()));

  auto below = [&](std::uint64_t mask, std::size_t i, std::size_t j) {
    if (i == j) return true;
    auto pos = std::find(slots.begin(), slots.end(), std::make_pair(i, j)) - slots.begin();
    return ((mask >> pos) & 1) != 0;
  };

  std::set<std::uint64_t> seen;
  std::vector<preorder> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << slots.size()); ++mask) {
    bool ok = true;
    for (std::size_t i = 0; i < k && ok; ++i)
      for (std::size_t j = 0; j < k && ok; ++j) {
        if (i != j && below(mask, i, j) && below(mask, j, i)) ok = false;
        for (std::size_t l = 0; l < k && ok; ++l)
          if (below(mask, i, j) && below(mask, j, l) && !below(mask, i, l)) ok = false;
      }
    if (!ok) continue;
    std::uint64_t canon = mask;
    for (const auto& p : perms) {
      std::uint64_t relabeled = 0;
      for (std::size_t s = 0; s < slots.size(); ++s)
        if ((mask >> s) & 1) {
          auto pos = std::find(slots.begin(), slots.end(),
                               std::make_pair(p[slots[s].first], p[slots[s].second])) -
                     slots.begin();
          relabeled |= std::uint64_t{1} << pos;
        }
      canon = std::min(canon, relabeled);
    }
    if (!seen.insert(canon).second) continue;
    std::vector<std::pair<state_id, state_id>> edges;
    for (std::size_t s = 0; s < slots.size(); ++s)
      if ((canon >> s) & 1)
        edges.emplace_back(static_cast<state_id>(slots[s].first + 1),
                           static_cast<state_id>(slots[s].second + 1));
    out.push_back(preorder::generated_by(n, edges));
  }
  return out;
}

struct probe_result {
  std::size_t n = 0;
  std::uint64_t bound = 0;             // n(n-1)^(n-2) + (n-1)^2
  std::uint64_t max_found = 0;         // over proper candidates
  std::string best;                    // description of the maximizer
  std::size_t candidates = 0;          // (system, F) pairs examined
  std::size_t proper_candidates = 0;
  bool meets_bound() const { return max_found == bound; }
  bool exceeds_bound() const { return max_found > bound; }
};

inline std::string describe(const preorder& po) {
  std::string s = "order{";
  bool first = true;
  for (state_id p = 1; p < po.size(); ++p)
    for (state_id q = 1; q < po.size(); ++q)
      if (p != q && po.leq(p, q)) {
        s += (first ? "" : ",") + std::to_string(p) + "<" + std::to_string(q);
        first = false;
      }
  return s + "}";
}

/// Exploratory search for proper suffix-convex languages with large
/// syntactic semigroups. Candidates are the maximal DFAs of order-generated
/// systems (every partial order with 0 on top, every convex final set other
/// than empty or full), plus the maximal DFA of the syntactic witness system.
inline probe_result probe_conjecture(std::size_t n) {
  if (n < 3 || n > 5) throw error(errc::resource_cap, "probe supports 3 <= n <= 5");
  probe_result out;
  out.n = n;
  out.bound = syntactic_bound(static_cast<unsigned>(n));
  auto consider = [&](const dfa& d, const std::string& label) {
    ++out.candidates;
    if (!classify(d).proper) return;
    ++out.proper_candidates;
    const std::uint64_t size = syntactic_complexity(d);
    if (size > out.max_found) {
      out.max_found = size;
      out.best = label;
    }
  };
  for (const auto& po : partial_orders_up_to_iso(n)) {
    for (std::uint64_t mask = 1; mask + 1 < (std::uint64_t{1} << n); ++mask) {
      std::vector<bool> finals(n);
      for (std::size_t q = 0; q < n; ++q) finals[q] = (mask >> q) & 1;
      if (!is_convex(po, finals)) continue;
      std::string label;
      for (std::size_t q = 0; q < n; ++q)
        if (finals[q]) label += (label.empty() ? "" : " ") + std::to_string(q);
      consider(monotone_dfa(po, finals), describe(po) + " final{" + label + "}");
    }
  }
  consider(maximal_dfa(syntactic_system(n)), "syntactic-system");
  return out;
}

}  // namespace sconvex

#endif  // SCONVEX_HARNESS_HPP_
