#ifndef SCONVEX_AUTOMATON_HPP_
#define SCONVEX_AUTOMATON_HPP_

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "sconvex/error.hpp"

namespace sconvex {

namespace detail {

inline void check_alphabet(const std::vector<std::string>& alphabet) {
  std::unordered_set<std::string> seen;
  for (const auto& letter : alphabet) {
    if (letter.empty()) throw error(errc::malformed, "empty letter name");
    if (!seen.insert(letter).second) {
      throw error(errc::malformed, "duplicate letter '" + letter + "'");
    }
  }
}

}  // namespace detail

/// Complete deterministic automaton on states 0..n-1 with initial state 0.
///
/// Transitions are stored letter-major, so the transformation induced by a
/// letter is a contiguous span of length n.
class dfa {
 public:
  dfa(std::size_t n, std::vector<std::string> alphabet,
      std::vector<state_id> delta, std::vector<bool> finals)
      : n_(n),
        alphabet_(std::move(alphabet)),
        delta_(std::move(delta)),
        finals_(std::move(finals)) {
    if (n_ == 0) throw error(errc::malformed, "a DFA needs at least one state");
    detail::check_alphabet(alphabet_);
    if (delta_.size() != n_ * alphabet_.size()) {
      throw error(errc::malformed, "transition table is not complete");
    }
    if (finals_.size() != n_) {
      throw error(errc::malformed, "final mask has wrong length");
    }
    for (state_id q : delta_) {
      if (q >= n_) throw error(errc::state_out_of_range, std::to_string(q));
    }
  }

  /// Builds a DFA from one image vector per letter.
  static dfa from_images(std::vector<std::string> alphabet,
                         const std::vector<std::vector<state_id>>& images,
                         std::vector<bool> finals) {
    if (images.size() != alphabet.size()) {
      throw error(errc::malformed, "one image vector per letter required");
    }
    std::size_t n = finals.size();
    std::vector<state_id> delta;
    delta.reserve(n * images.size());
    for (const auto& img : images) {
      if (img.size() != n) throw error(errc::size_mismatch, "image length");
      delta.insert(delta.end(), img.begin(), img.end());
    }
    return dfa(n, std::move(alphabet), std::move(delta), std::move(finals));
  }

  std::size_t size() const noexcept { return n_; }
  std::size_t letter_count() const noexcept { return alphabet_.size(); }
  const std::vector<std::string>& alphabet() const noexcept { return alphabet_; }
  static constexpr state_id initial() noexcept { return 0; }

  state_id next(state_id q, std::size_t letter) const {
    return delta_[letter * n_ + q];
  }

  std::span<const state_id> letter_image(std::size_t letter) const {
    return {delta_.data() + letter * n_, n_};
  }

  bool is_final(state_id q) const { return finals_[q]; }
  const std::vector<bool>& final_mask() const noexcept { return finals_; }

  std::vector<state_id> finals() const {
    std::vector<state_id> out;
    for (state_id q = 0; q < n_; ++q)
      if (finals_[q]) out.push_back(q);
    return out;
  }

  std::optional<std::size_t> letter_index(const std::string& name) const {
    auto it = std::find(alphabet_.begin(), alphabet_.end(), name);
    if (it == alphabet_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - alphabet_.begin());
  }

  /// Runs the word (given as letter indices) from state q.
  state_id run(state_id q, std::span<const std::size_t> word) const {
    for (std::size_t a : word) q = next(q, a);
    return q;
  }

  bool accepts(std::span<const std::size_t> word) const {
    return is_final(run(initial(), word));
  }

  /// Same transition structure with a different final set.
  dfa with_finals(std::vector<bool> finals) const {
    return dfa(n_, alphabet_, delta_, std::move(finals));
  }

  friend bool operator==(const dfa&, const dfa&) = default;

 private:
  std::size_t n_;
  std::vector<std::string> alphabet_;
  std::vector<state_id> delta_;
  std::vector<bool> finals_;
};

/// Nondeterministic automaton with a set of initial states and optional
/// epsilon edges.
class nfa {
 public:
  nfa(std::size_t n, std::vector<std::string> alphabet)
      : n_(n),
        alphabet_(std::move(alphabet)),
        delta_(n * alphabet_.size()),
        epsilon_(n),
        initials_(n, false),
        finals_(n, false) {
    detail::check_alphabet(alphabet_);
  }

  void add_transition(state_id from, std::size_t letter, state_id to) {
    check(from);
    check(to);
    if (letter >= alphabet_.size()) throw error(errc::malformed, "letter index");
    auto& targets = delta_[letter * n_ + from];
    if (std::find(targets.begin(), targets.end(), to) == targets.end()) {
      targets.insert(std::upper_bound(targets.begin(), targets.end(), to), to);
    }
  }

  void add_epsilon(state_id from, state_id to) {
    check(from);
    check(to);
    auto& targets = epsilon_[from];
    if (std::find(targets.begin(), targets.end(), to) == targets.end()) {
      targets.insert(std::upper_bound(targets.begin(), targets.end(), to), to);
    }
  }

  void set_initial(state_id q, bool value = true) {
    check(q);
    initials_[q] = value;
  }

  void set_final(state_id q, bool value = true) {
    check(q);
    finals_[q] = value;
  }

  std::size_t size() const noexcept { return n_; }
  std::size_t letter_count() const noexcept { return alphabet_.size(); }
  const std::vector<std::string>& alphabet() const noexcept { return alphabet_; }

  const std::vector<state_id>& targets(state_id q, std::size_t letter) const {
    return delta_[letter * n_ + q];
  }
  const std::vector<state_id>& epsilon_targets(state_id q) const {
    return epsilon_[q];
  }
  bool has_epsilon() const {
    return std::any_of(epsilon_.begin(), epsilon_.end(),
                       [](const auto& v) { return !v.empty(); });
  }
  bool is_initial(state_id q) const { return initials_[q]; }
  bool is_final(state_id q) const { return finals_[q]; }

 private:
  void check(state_id q) const {
    if (q >= n_) throw error(errc::state_out_of_range, std::to_string(q));
  }

  std::size_t n_;
  std::vector<std::string> alphabet_;
  std::vector<std::vector<state_id>> delta_;
  std::vector<std::vector<state_id>> epsilon_;
  std::vector<bool> initials_;
  std::vector<bool> finals_;
};

/// Views a DFA as an NFA with the single initial state 0.
inline nfa to_nfa(const dfa& d) {
  nfa m(d.size(), d.alphabet());
  for (std::size_t a = 0; a < d.letter_count(); ++a)
    for (state_id q = 0; q < d.size(); ++q) m.add_transition(q, a, d.next(q, a));
  m.set_initial(0);
  for (state_id q = 0; q < d.size(); ++q) m.set_final(q, d.is_final(q));
  return m;
}

}  // namespace sconvex

#endif  // SCONVEX_AUTOMATON_HPP_
