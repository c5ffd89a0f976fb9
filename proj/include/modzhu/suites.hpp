#pragma once

/// @file suites.hpp
/// @brief Named verification suites over parameter grids and their
/// line-delimited reports.

#include "json.hpp"

#include <optional>
#include <string>
#include <vector>

namespace modzhu {

/// @brief Outcome of one check on one grid cell.
enum class CheckStatus { kPass, kFail, kFlagged };

/// @brief Printed form of a status: pass, fail or flagged.
std::string status_name(CheckStatus s);

/// @brief One check on one grid cell.
struct CheckRecord {
  std::string name;
  /// Grid coordinates such as {"p": 7, "c": 3}.
  nlohmann::ordered_json cell;
  CheckStatus status = CheckStatus::kPass;
  /// Number of identities or coefficients compared.
  std::size_t cases = 0;
  /// Counterexample on failure, or data found by the check (relations, multiplicities).
  nlohmann::ordered_json witness;
};

/// @brief Command-line parameters of a suite run; unset fields take suite defaults.
struct SuiteParameters {
  std::optional<unsigned> prime;
  std::optional<int> cutoff;
  /// Builtin presentation name or path to a presentation document.
  std::string algebra;
  /// Builtin twist name (tau or identity) or path to a matrix file.
  std::string twist;
  std::optional<unsigned> extension;
};

/// @brief Result of a suite run.
struct Report {
  std::string suite;
  /// Resolved parameters, in a fixed field order.
  nlohmann::ordered_json parameters;
  std::vector<CheckRecord> checks;

  std::size_t count(CheckStatus s) const;
  /// @brief True when no check failed; flagged checks do not fail a run.
  bool passed() const { return count(CheckStatus::kFail) == 0; }
};

/// @brief Names accepted by run_suite, in a fixed order.
const std::vector<std::string>& suite_names();

/// @brief Runs the named suite; throws ParameterError for an unknown suite or
/// parameters out of the supported range.
Report run_suite(const std::string& name, const SuiteParameters& params);

/// @brief One JSON object per line: a header, one line per check, and a totals line.
std::string to_jsonl(const Report& report);

/// @brief Human-readable totals followed by one line per failed or flagged check.
std::string summary(const Report& report);

}  // namespace modzhu
