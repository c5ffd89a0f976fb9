/// @file acceptance.cpp
/// @brief Runs the suites behind the ten acceptance criteria and prints one
/// PASS or FAIL line per criterion.

#include "modzhu/suites.hpp"

#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace {

using modzhu::CheckRecord;
using modzhu::CheckStatus;
using modzhu::Report;
using modzhu::SuiteParameters;

/// A criterion is a selection of check records from one or more suite reports.
struct Criterion {
  int number;
  std::string title;
  std::vector<std::pair<std::string, std::set<std::string>>> parts;  // suite, check names (empty: all)
};

SuiteParameters with_prime(unsigned p, int cutoff = -1) {
  SuiteParameters s;
  s.prime = p;
  if (cutoff >= 0) s.cutoff = cutoff;
  return s;
}

}  // namespace

int main() {
  const std::map<std::string, SuiteParameters> runs = {
      {"formal-calculus", {}},
      {"jacobi", {}},
      {"restricted", with_prime(5)},
      {"zhu-ns", with_prime(7, 6)},
      {"zhu-ns0", with_prime(5, 10)},
      {"counting", with_prime(5)},
      {"omega", with_prime(5, 3)},
      {"ramond", with_prime(5, 3)},
      {"zhu-affine", with_prime(5, 3)},
      {"clifford", with_prime(7, 3)},
  };
  std::map<std::string, Report> reports;
  std::map<std::string, std::string> errors;
  for (const auto& [name, params] : runs) {
    try {
      reports[name] = modzhu::run_suite(name, params);
    } catch (const std::exception& e) {
      errors[name] = e.what();
    }
  }

  const std::vector<Criterion> criteria = {
      {1, "formal calculus: Hasse law, translation, delta annihilation and rank", {{"formal-calculus", {}}}},
      {2, "super Jacobi identity on NS and R, |m| <= 4, p in {5, 7}", {{"jacobi", {}}}},
      {3, "restrictedness of NS and of the twisted affine example at p = 5", {{"restricted", {}}}},
      {4, "lemma group on V_NS(c, 0) at cutoff 4, p = 7",
       {{"zhu-ns", {"shifted-residue", "d-congruence", "two-sided-ideal", "associativity", "chu-vandermonde", "lemma-group"}}}},
      {5, "sigma-twisted Zhu algebra of NS at p = 7, cutoff 6",
       {{"zhu-ns", {"relations", "normal-form-spanning", "statement-sign"}}}},
      {6, "V^0 quotient adds x^p - x; NS0 parameter count at p = 5", {{"zhu-ns0", {}}, {"counting", {}}}},
      {7, "Ramond zero mode, Omega of M(h, c), Zhu action, twisted Verma dimensions",
       {{"ramond", {"zero-mode-square", "zhu-action", "twisted-verma-dims", "zhu-relations", "ramond-cell"}},
        {"omega", {"verma-omega"}}}},
      {8, "affine Zhu algebra of the 3-dimensional example is U(g^o)",
       {{"zhu-affine", {"pbw-spanning", "enveloping-dimension", "bracket-compatibility", "nonzero-star-classes", "affine-cell"}}}},
      {9, "Clifford twisted modules and complete reducibility at cutoff 3", {{"clifford", {}}}},
      {10, "commutator transfer for NS to Ramond and affine to twisted affine",
       {{"ramond", {"commutator-transfer", "ramond-cell"}}, {"zhu-affine", {"commutator-transfer", "affine-cell"}}}},
  };

  int failed = 0;
  for (const Criterion& c : criteria) {
    std::size_t checks = 0, fails = 0, flagged = 0;
    std::string first_failure;
    for (const auto& [suite, names] : c.parts) {
      if (errors.count(suite)) {
        ++fails;
        if (first_failure.empty()) first_failure = suite + ": " + errors.at(suite);
        continue;
      }
      for (const CheckRecord& r : reports.at(suite).checks) {
        if (!names.empty() && !names.count(r.name)) continue;
        ++checks;
        if (r.status == CheckStatus::kFlagged) ++flagged;
        if (r.status == CheckStatus::kFail) {
          ++fails;
          if (first_failure.empty()) first_failure = suite + " " + r.name + " " + r.cell.dump();
        }
      }
    }
    const bool ok = fails == 0 && checks > 0;
    if (!ok) ++failed;
    std::printf("criterion %2d: %s  %s (%zu checks, %zu failed, %zu flagged)%s%s\n", c.number, ok ? "PASS" : "FAIL",
                c.title.c_str(), checks, fails, flagged, first_failure.empty() ? "" : "; first failure: ",
                first_failure.c_str());
  }
  return failed == 0 ? 0 : 1;
}
