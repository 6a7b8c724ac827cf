#pragma once

#include <functional>
#include <string>
#include <vector>

#include "taumod/io.hpp"
#include "taumod/zoo.hpp"

namespace taumod {

/// Standalone reproduction of one failed case: a loadable document plus the
/// command to run on it.
struct Witness {
  std::string file;  ///< suggested file name
  nlohmann::json document;
};

struct SuiteResult {
  explicit SuiteResult(std::string n) : name(std::move(n)) {}

  std::string name;
  std::size_t cases = 0, passed = 0, failed = 0, vacuous = 0;
  std::vector<std::string> failures;
  std::vector<Witness> witnesses;
  nlohmann::json summary = nlohmann::json::object();
  double seconds = 0;

  bool ok() const { return failed == 0; }

  /// A case passes when the verdict is the expected one. On mismatch the
  /// document builder is called to produce the witness.
  void record(const std::string& label, const VerifyReport& rep, Verdict expected = Verdict::Pass,
              const std::function<DocumentWriter()>& doc = {});
  /// A plain property; `data` goes into the witness on failure.
  void expect(const std::string& label, bool holds, const std::string& detail, nlohmann::json data = {},
              const std::function<DocumentWriter()>& doc = {});

  nlohmann::json to_json(bool timings = false) const;
};

SuiteResult flatness_suite(std::uint64_t seed);
SuiteResult abelian_suite(std::uint64_t seed);
SuiteResult invariant_ideal_suite(std::uint64_t seed);
SuiteResult fitting_suite(std::uint64_t seed);
SuiteResult descent_suite(std::uint64_t seed);
SuiteResult tannakian_suite(std::uint64_t seed);
SuiteResult solutions_suite(std::uint64_t seed);
SuiteResult pullback_suite(std::uint64_t seed);
SuiteResult kunz_suite(std::uint64_t seed);

/// Every suite above, in order.
std::vector<SuiteResult> run_default_suite(std::uint64_t seed);
/// Theorem checks applied to the modules and morphisms of a loaded document.
std::vector<SuiteResult> run_file_suite(const Environment& env, std::uint64_t seed);

/// dim e_i M = (dim top / residue degree) * dim e_i R for every local factor
/// of R; a Nakayama count that lifts nothing.
bool freeness_count(const ModulePtr& m);

std::string format_suite_report(const std::vector<SuiteResult>& results);
nlohmann::json suite_report_json(const std::vector<SuiteResult>& results, bool timings = false);

}  // namespace taumod
