// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "sconvex/sconvex.hpp"

using namespace sconvex;

namespace {

struct outcome {
  bool pass = true;
  std::string detail;
};

outcome from_reports(const std::vector<verification_report>& reports) {
  outcome o;
  std::size_t failed = 0;
  for (const auto& r : reports)
    if (!r.pass) {
      ++failed;
      if (o.detail.empty()) o.detail = "first failure: " + r.line();
    }
  o.pass = failed == 0 && !reports.empty();
  if (o.pass) o.detail = std::to_string(reports.size()) + " checks";
  else o.detail = std::to_string(failed) + "/" + std::to_string(reports.size()) + " failed; " + o.detail;
  return o;
}

outcome syntactic_closure_matches_filter() {
  outcome o;
  for (std::size_t n = 3; n <= 6; ++n) {
    const auto s = syntactic_system(n);
    std::set<transformation> filtered;
    for (const auto& t : oracle::all_maps(n))
      if (oracle::respects(t, s)) filtered.insert(t);
    const auto closed = transition_semigroup(syntactic_witness(n));
    const std::set<transformation> generated(closed.elements.begin(), closed.elements.end());
    if (filtered != generated) {
      o.pass = false;
      o.detail += "n=" + std::to_string(n) + " filter=" + std::to_string(filtered.size()) +
                  " closure=" + std::to_string(generated.size()) + "; ";
    }
  }
  if (o.pass) o.detail = "n=3..6 sets equal";
  return o;
}

outcome witnesses_proper() {
  outcome o;
  std::size_t checked = 0;
  for (std::size_t n = 3; n <= 8; ++n) {
    std::vector<std::pair<std::string, dfa>> family{{"star", star_witness(n)},
                                                    {"syntactic", syntactic_witness(n)}};
    if (n >= 4) family.emplace_back("reversal", reversal_witness(n));
    for (const auto& [name, d] : family) {
      ++checked;
      if (!classify(d).proper) {
        o.pass = false;
        o.detail += name + " n=" + std::to_string(n) + " not proper; ";
      }
    }
  }
  if (o.pass) o.detail = std::to_string(checked) + " witnesses proper";
  return o;
}

outcome structural_predicates() {
  outcome o;
  auto fail = [&](const std::string& why) {
    o.pass = false;
    o.detail += why + "; ";
  };
  for (std::size_t n = 3; n <= 8; ++n) {
    const auto sn = std::to_string(n);
    std::vector<std::pair<std::string, dfa>> family{{"star", star_witness(n)},
                                                    {"syntactic", syntactic_witness(n)}};
    if (n >= 4) family.emplace_back("reversal", reversal_witness(n));
    for (const auto& [name, d] : family) {
      try {
        if (!dfa_respects(d, canonical_system(d))) fail(name + " n=" + sn + " does not respect");
      } catch (const error& e) {
        fail(name + " n=" + sn + " " + e.what());
      }
    }
    if (!order_properties(preorder_of(canonical_system(star_witness(n)))).is_total_comparability)
      fail("star n=" + sn + " not totally comparable");
    if (n >= 4) {
      auto props = order_properties(preorder_of(canonical_system(reversal_witness(n))));
      const std::vector<std::pair<state_id, state_id>> only{{2, 1}};
      if (!props.is_partial_order || props.comparable_nonzero_pairs != only)
        fail("reversal n=" + sn + " order shape");
    }
  }
  if (o.pass) o.detail = "n=3..8 (reversal 4..8)";
  return o;
}

outcome oracle_agreement() {
  outcome o;
  std::mt19937_64 rng(20231);
  std::size_t refuted = 0, convex = 0;
  constexpr int samples = 200;
  for (int i = 0; i < samples; ++i) {
    const std::size_t n = 1 + i % 5, k = 1 + (i / 5) % 3;
    const dfa d = oracle::random_dfa(n, k, rng);
    const std::size_t bound = 2 * n + 2;
    const auto brute = oracle::shortest_refutation_length(d, bound);
    const auto r = is_suffix_convex(d);
    const auto tag = "sample " + std::to_string(i) + " n=" + std::to_string(n) + " k=" +
                     std::to_string(k) + ": ";
    if (r.suffix_convex != !brute) {
      o.pass = false;
      o.detail += tag + "verdict differs; ";
    }
    if (r.counterexample) {
      const auto& c = *r.counterexample;
      oracle::word uvw = c.u, vw = c.v;
      uvw.insert(uvw.end(), c.v.begin(), c.v.end());
      uvw.insert(uvw.end(), c.w.begin(), c.w.end());
      vw.insert(vw.end(), c.w.begin(), c.w.end());
      if (!oracle::accepts(d, c.w) || !oracle::accepts(d, uvw) || oracle::accepts(d, vw)) {
        o.pass = false;
        o.detail += tag + "counterexample does not validate; ";
      }
      if (brute && uvw.size() != *brute) {
        o.pass = false;
        o.detail += tag + "counterexample not shortest; ";
      }
    }
    (brute ? refuted : convex)++;
    const dfa m = minimize(d);
    if (atom_count(m) != oracle::atom_signatures(m)) {
      o.pass = false;
      o.detail += tag + "atom count differs; ";
    }
  }
  if (o.pass)
    o.detail = std::to_string(samples) + " DFAs, " + std::to_string(refuted) + " refuted, " +
               std::to_string(convex) + " convex, atoms agree";
  return o;
}

}  // namespace

int main() {
  struct criterion {
    int id;
    std::function<outcome()> run;
  };
  const std::vector<criterion> criteria{
      {1, [] { return from_reports(verify_star(3, 10)); }},
      {2, [] { return from_reports(verify_product(3, 8)); }},
      {3, [] { return from_reports(verify_boolean(3, 8)); }},
      {4, [] { return from_reports(verify_reversal(4, 10)); }},
      {5, [] { return from_reports(verify_reversal_bound(500, 8, 6, 5)); }},
      {6, [] { return from_reports(verify_syntactic(3, 8)); }},
      {7, syntactic_closure_matches_filter},
      {8, [] { return from_reports(verify_monotone_counts(3, 7)); }},
      {9, witnesses_proper},
      {10, structural_predicates},
      {11, [] { return from_reports(verify_exclusions(4, 8)); }},
      {12, oracle_agreement},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("threw ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o.pass) ++failures;
    std::ostringstream line;
    line.precision(2);
    line << std::fixed << "criterion " << c.id << ": " << (o.pass ? "PASS" : "FAIL") << " ("
         << o.detail << ", " << secs << " s)";
    std::cout << line.str() << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
