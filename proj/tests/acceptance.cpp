// Prints one PASS/FAIL line per acceptance criterion; exits nonzero if any fails.
// Usage: acceptance <path to tauctl>

#include <array>
#include <chrono>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>

#include "taumod/suite.hpp"

using namespace taumod;
using nlohmann::json;

namespace {

constexpr std::uint64_t kSeed = 7;
int failures = 0;

void line(int n, const std::string& name, bool ok, const std::string& detail) {
  std::cout << (ok ? "PASS" : "FAIL") << " [" << n << "] " << name << ": " << detail << std::endl;
  if (!ok) ++failures;
}

std::string counts(const SuiteResult& r) {
  std::ostringstream os;
  os << r.cases << " cases, " << r.failed << " failed, " << r.vacuous << " vacuous";
  if (!r.failures.empty()) os << "; first failure: " << r.failures.front();
  os.setf(std::ios::fixed);
  os.precision(2);
  os << "; " << r.seconds << " s";
  return os.str();
}

template <class Fn>
SuiteResult run(Fn fn) {
  const auto t0 = std::chrono::steady_clock::now();
  SuiteResult r = fn(kSeed);
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

std::size_t num(const json& j, const char* key) { return j.contains(key) ? j[key].get<std::size_t>() : 0; }

struct Captured {
  std::string out;
  int status = -1;
};

Captured capture(const std::string& cmd) {
  Captured c;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return c;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) c.out.append(buf.data(), n);
  c.status = pclose(pipe);
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: acceptance <tauctl>\n";
    return 2;
  }
  const std::string tauctl = argv[1];

  {
    auto r = run(flatness_suite);
    const auto& s = r.summary;
    const bool ok = r.ok() && num(s, "modules") >= 200 && num(s, "rings") >= 10 && num(s, "singular_rings") > 0 &&
                    r.seconds < 20;
    line(1, "flatness", ok,
         std::to_string(num(s, "modules")) + " modules over " + std::to_string(num(s, "rings")) + " rings, " +
             counts(r));
  }
  {
    auto r = run(abelian_suite);
    const bool ok = r.ok() && num(r.summary, "morphisms") >= 100;
    line(2, "abelian", ok, std::to_string(num(r.summary, "morphisms")) + " morphisms, " + counts(r));
  }
  {
    auto r = run(invariant_ideal_suite);
    bool small = !r.summary["exhaustive"].empty();
    for (auto& e : r.summary["exhaustive"]) small = small && e["dim"].get<std::size_t>() <= 4;
    const bool ok = r.ok() && small && num(r.summary, "sampled") >= 500;
    line(3, "invariant ideals", ok,
         std::to_string(r.summary["exhaustive"].size()) + " rings exhaustive, " +
             std::to_string(num(r.summary, "sampled")) + " sampled, " + counts(r));
  }
  {
    auto r = run(fitting_suite);
    const bool ok = r.ok() && num(r.summary, "modules") > 0 && num(r.summary, "split_cases") > 0;
    line(4, "fitting", ok,
         std::to_string(num(r.summary, "modules")) + " modules, " + std::to_string(num(r.summary, "split_cases")) +
             " projective nonfree cases, " + counts(r));
  }
  {
    auto r = run(descent_suite);
    const bool ok = r.ok() && num(r.summary, "modules") >= 100 && num(r.summary, "roundtrips") >= 100;
    line(5, "descent", ok, std::to_string(num(r.summary, "modules")) + " modules, " + counts(r));
  }
  {
    auto r = run(tannakian_suite);
    const bool ok = r.ok() && num(r.summary, "rigidity_checks") >= 50;
    line(6, "tannakian", ok, std::to_string(num(r.summary, "rigidity_checks")) + " rigidity checks, " + counts(r));
  }
  {
    auto r = run(solutions_suite);
    const bool ok = r.ok() && !r.summary["artin_schreier"].empty() && !r.summary["carlitz"].empty() &&
                    r.seconds < 30;
    line(7, "solutions", ok, counts(r));
  }
  {
    auto r = run(pullback_suite);
    const bool ok = r.ok() && num(r.summary, "modules") > 0 && num(r.summary, "morphisms") > 0;
    line(8, "pullback", ok,
         std::to_string(num(r.summary, "modules")) + " modules, " + std::to_string(num(r.summary, "morphisms")) +
             " morphisms, " + counts(r));
  }
  {
    auto r = run(kunz_suite);
    line(9, "kunz", r.ok(), counts(r));
  }
  {
    const std::string cmd = "'" + tauctl + "' verify-theorems --corpus default --seed 7 2>&1";
    const auto t0 = std::chrono::steady_clock::now();
    auto a = capture(cmd);
    auto b = capture(cmd);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool ok = a.status == 0 && b.status == 0 && !a.out.empty() && a.out == b.out && secs < 120;
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(2);
    os << "two runs " << (a.out == b.out ? "identical" : "differ") << " (" << a.out.size() << " bytes), exit "
       << a.status << "/" << b.status << ", " << secs << " s";
    line(10, "determinism", ok, os.str());
  }
  std::cout << (failures == 0 ? "all 10 criteria passed" : std::to_string(failures) + " criteria failed") << "\n";
  return failures == 0 ? 0 : 1;
}
