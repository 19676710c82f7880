#ifndef SCONVEX_TRANSFORMATION_HPP_
#define SCONVEX_TRANSFORMATION_HPP_

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <functional>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "sconvex/automaton.hpp"
#include "sconvex/error.hpp"
#include "sconvex/operations.hpp"

namespace sconvex {

/// A total function on {0..n-1}, acting from the right: image()[q] is qt.
class transformation {
 public:
  transformation() = default;
  explicit transformation(std::vector<state_id> image) : image_(std::move(image)) {
    for (state_id q : image_)
      if (q >= image_.size())
        throw error(errc::state_out_of_range, std::to_string(q));
  }
  explicit transformation(std::span<const state_id> image)
      : transformation(std::vector<state_id>(image.begin(), image.end())) {}

  static transformation identity(std::size_t n) {
    std::vector<state_id> img(n);
    std::iota(img.begin(), img.end(), state_id{0});
    return transformation(std::move(img));
  }

  static transformation constant(std::size_t n, state_id q) {
    return transformation(std::vector<state_id>(n, q));
  }

  std::size_t size() const noexcept { return image_.size(); }
  state_id operator()(state_id q) const { return image_[q]; }
  state_id operator[](state_id q) const { return image_[q]; }
  const std::vector<state_id>& image() const noexcept { return image_; }
  bool is_identity() const {
    for (std::size_t q = 0; q < image_.size(); ++q)
      if (image_[q] != q) return false;
    return true;
  }

  friend auto operator<=>(const transformation&, const transformation&) = default;

  std::string to_string() const {
    std::string s;
    for (std::size_t q = 0; q < image_.size(); ++q) {
      if (q) s += ' ';
      s += std::to_string(image_[q]);
    }
    return s;
  }

 private:
  std::vector<state_id> image_;
};

struct transformation_hash {
  std::size_t operator()(const transformation& t) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (state_id q : t.image()) h = (h ^ q) * 1099511628211ull;
    return h;
  }
};

/// Product st with q(st) = (qs)t.
inline transformation compose(const transformation& s, const transformation& t) {
  if (s.size() != t.size())
    throw error(errc::size_mismatch, std::to_string(s.size()) + " vs " +
                                         std::to_string(t.size()));
  std::vector<state_id> img(s.size());
  for (std::size_t q = 0; q < s.size(); ++q) img[q] = t[s[static_cast<state_id>(q)]];
  return transformation(std::move(img));
}

/// Image of a set: Pt = {pt | p in P}. Returned sorted and deduplicated.
inline std::vector<state_id> apply_to_set(const transformation& t,
                                          std::span<const state_id> set) {
  std::vector<state_id> out;
  out.reserve(set.size());
  for (state_id p : set) {
    if (p >= t.size()) throw error(errc::state_out_of_range, std::to_string(p));
    out.push_back(t[p]);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace detail {

// Recursive-descent reader for the cycle/map/shift notation.
//
//   transformation := "1" | factor+
//   factor   := "(" body ")" | int "->" int
//   body     := cycle | set "->" int | "_" int "^" int "q" "->" "q" ("+"|"-") "1"
//   cycle    := int ("," int)*
//   set      := int | "{" int ("," int)* "}" | "Q" ["_n"] ["\" set]
class notation_parser {
 public:
  notation_parser(std::string_view text, std::size_t n) : n_(n) {
    for (char c : text)
      if (!std::isspace(static_cast<unsigned char>(c))) text_ += c;
  }

  transformation parse() {
    if (text_.empty()) fail("empty transformation");
    transformation result = transformation::identity(n_);
    if (text_ == "1") return result;
    while (pos_ < text_.size()) result = compose(result, factor());
    return result;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw error(errc::syntax_error, why + " at offset " + std::to_string(pos_) +
                                        " in '" + text_ + "'");
  }

  bool peek(std::string_view token) const {
    return text_.compare(pos_, token.size(), token) == 0;
  }

  bool accept(std::string_view token) {
    if (!peek(token)) return false;
    pos_ += token.size();
    return true;
  }

  void expect(std::string_view token) {
    if (!accept(token)) fail("expected '" + std::string(token) + "'");
  }

  state_id state() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    if (start == pos_) fail("expected a state number");
    unsigned long long v = std::stoull(text_.substr(start, pos_ - start));
    if (v >= n_)
      throw error(errc::state_out_of_range,
                  std::to_string(v) + " not in Q_" + std::to_string(n_));
    return static_cast<state_id>(v);
  }

  std::vector<bool> set() {
    std::vector<bool> members(n_, false);
    if (accept("Q")) {
      accept("_n");
      std::fill(members.begin(), members.end(), true);
      if (accept("\\")) {
        auto removed = set();
        for (std::size_t q = 0; q < n_; ++q)
          if (removed[q]) members[q] = false;
      }
    } else if (accept("{")) {
      do members[state()] = true;
      while (accept(","));
      expect("}");
    } else {
      members[state()] = true;
    }
    return members;
  }

  transformation map_to(const std::vector<bool>& from, state_id to) const {
    auto t = transformation::identity(n_).image();
    for (std::size_t q = 0; q < n_; ++q)
      if (from[q]) t[q] = to;
    return transformation(std::move(t));
  }

  transformation shift() {
    state_id lo = state();
    expect("^");
    state_id hi = state();
    const char var = accept("i") ? 'i' : (expect("q"), 'q');
    expect("->");
    expect(var == 'i' ? "i" : "q");
    int step = 0;
    if (accept("+")) step = 1;
    else if (accept("-")) step = -1;
    else fail("expected '+' or '-'");
    expect("1");
    auto t = transformation::identity(n_).image();
    for (state_id q = lo; q <= hi; ++q) {
      long long target = static_cast<long long>(q) + step;
      if (target < 0 || target >= static_cast<long long>(n_))
        throw error(errc::state_out_of_range, "shift leaves Q_" + std::to_string(n_));
      t[q] = static_cast<state_id>(target);
    }
    return transformation(std::move(t));
  }

  transformation factor() {
    if (!accept("(")) {
      std::vector<bool> from(n_, false);
      from[state()] = true;
      expect("->");
      return map_to(from, state());
    }
    transformation t;
    if (accept("_")) {
      t = shift();
    } else if (peek("Q") || peek("{")) {
      auto from = set();
      expect("->");
      t = map_to(from, state());
    } else {
      std::vector<state_id> items{state()};
      if (accept("->")) {
        std::vector<bool> from(n_, false);
        from[items[0]] = true;
        t = map_to(from, state());
      } else {
        while (accept(",")) items.push_back(state());
        auto img = transformation::identity(n_).image();
        std::vector<bool> used(n_, false);
        for (std::size_t i = 0; i < items.size(); ++i) {
          if (used[items[i]]) fail("repeated state in cycle");
          used[items[i]] = true;
          img[items[i]] = items[(i + 1) % items.size()];
        }
        t = transformation(std::move(img));
      }
    }
    expect(")");
    return t;
  }

  std::string text_;
  std::size_t n_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses notation such as "(1,2)", "({0,1}->2)", "(_0^2 q->q+1)",
/// "(Q_n\{0}->2)(0->1)" or "1". Juxtaposed factors compose left to right.
inline transformation parse_transformation(std::string_view text, std::size_t n) {
  return detail::notation_parser(text, n).parse();
}

/// A finite transformation semigroup together with the generators it was
/// built from. Elements are listed in breadth-first order by word length,
/// ties broken by generator order.
struct semigroup {
  std::size_t n = 0;
  std::vector<transformation> elements;
  std::vector<transformation> generators;

  std::size_t size() const noexcept { return elements.size(); }

  bool contains(const transformation& t) const {
    return std::find(elements.begin(), elements.end(), t) != elements.end();
  }

  /// Elements sorted lexicographically by image vector.
  std::vector<transformation> sorted() const {
    auto out = elements;
    std::sort(out.begin(), out.end());
    return out;
  }
};

inline constexpr std::size_t default_semigroup_cap = 2'000'000;

/// Closure of `generators` under composition (the semigroup they generate,
/// without the identity unless it is generated).
inline semigroup closure(std::size_t n, std::vector<transformation> generators,
                         std::size_t cap = default_semigroup_cap) {
  semigroup out;
  out.n = n;
  out.generators = generators;
  const auto& elems = out.elements;
  auto hash = [&elems](std::size_t i) { return transformation_hash{}(elems[i]); };
  auto same = [&elems](std::size_t i, std::size_t j) { return elems[i] == elems[j]; };
  std::unordered_set<std::size_t, decltype(hash), decltype(same)> seen(64, hash, same);
  auto add = [&](transformation t) {
    out.elements.push_back(std::move(t));
    if (!seen.insert(out.elements.size() - 1).second) {
      out.elements.pop_back();
    } else if (out.elements.size() > cap) {
      throw error(errc::resource_cap,
                  "semigroup exceeded " + std::to_string(cap) + " elements");
    }
  };
  for (const auto& g : generators) {
    if (g.size() != n) throw error(errc::size_mismatch, "generator size");
    add(g);
  }
  for (std::size_t head = 0; head < out.elements.size(); ++head) {
    for (const auto& g : generators) add(compose(out.elements[head], g));
  }
  return out;
}

/// Transition semigroup T_D: transformations induced by non-empty words.
inline semigroup transition_semigroup(const dfa& d,
                                      std::size_t cap = default_semigroup_cap) {
  std::vector<transformation> generators;
  for (std::size_t a = 0; a < d.letter_count(); ++a)
    generators.emplace_back(d.letter_image(a));
  return closure(d.size(), std::move(generators), cap);
}

/// Size of the syntactic semigroup of L(d).
inline std::size_t syntactic_complexity(const dfa& d,
                                        std::size_t cap = default_semigroup_cap) {
  return transition_semigroup(minimize(d), cap).size();
}

}  // namespace sconvex

#endif  // SCONVEX_TRANSFORMATION_HPP_
