#pragma once

// Property-suite reports and a deterministic case runner.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace nomfol {

using Rng = std::mt19937_64;

/// Uniform index in [0, n). Plain modulo keeps runs identical across
/// standard libraries.
inline std::size_t pick(Rng& rng, std::size_t n) { return n == 0 ? 0 : static_cast<std::size_t>(rng() % n); }

inline bool coin(Rng& rng, unsigned percent) { return pick(rng, 100) < percent; }

enum class CaseStatus { Pass, Fail, Skip };

struct CaseOutcome {
  CaseStatus status = CaseStatus::Pass;
  std::string detail;

  static CaseOutcome pass() { return {}; }
  static CaseOutcome fail(std::string why) { return {CaseStatus::Fail, std::move(why)}; }
  static CaseOutcome skip() { return {CaseStatus::Skip, {}}; }
  static CaseOutcome check(bool ok, const std::function<std::string()>& why) {
    return ok ? pass() : fail(why());
  }
};

struct AxiomResult {
  std::string name;
  std::size_t passed = 0;
  std::size_t failed = 0;
  std::size_t skipped = 0;
  std::string counterexample;

  bool ok() const { return failed == 0; }
  bool exercised() const { return passed + failed > 0; }
};

struct SuiteReport {
  std::vector<AxiomResult> results;

  bool ok() const {
    return std::all_of(results.begin(), results.end(), [](const AxiomResult& r) { return r.ok(); });
  }

  const AxiomResult* find(const std::string& name) const {
    for (const auto& r : results)
      if (r.name == name) return &r;
    return nullptr;
  }

  void append(const SuiteReport& other) { results.insert(results.end(), other.results.begin(), other.results.end()); }

  /// One line per axiom: "AXIOM <name> PASS <n>", "AXIOM <name> FAIL <why>",
  /// or "AXIOM <name> SKIP not-exercised".
  std::string to_text() const {
    std::ostringstream out;
    for (const auto& r : results) {
      out << "AXIOM " << r.name << ' ';
      if (r.failed) out << "FAIL " << r.counterexample;
      else if (!r.exercised()) out << "SKIP not-exercised";
      else out << "PASS " << r.passed;
      out << '\n';
    }
    return out.str();
  }
};

struct SuiteOptions {
  std::size_t n = 1000;
  std::uint64_t seed = 1;
  unsigned jobs = 1;
};

/// Runs `n` cases of one property. Case i draws from its own generator seeded
/// by (seed, name, i), so results do not depend on the number of jobs.
inline AxiomResult run_cases(const std::string& name, const SuiteOptions& opts,
                             const std::function<CaseOutcome(Rng&)>& body) {
  const std::uint64_t salt = std::hash<std::string>{}(name);
  auto run_one = [&](std::size_t i) {
    std::seed_seq seq{static_cast<std::uint32_t>(opts.seed), static_cast<std::uint32_t>(opts.seed >> 32),
                      static_cast<std::uint32_t>(salt), static_cast<std::uint32_t>(salt >> 32),
                      static_cast<std::uint32_t>(i)};
    Rng rng(seq);
    return body(rng);
  };

  std::vector<CaseOutcome> outcomes(opts.n);
  unsigned jobs = std::max(1u, opts.jobs);
  if (jobs == 1 || opts.n < 2) {
    for (std::size_t i = 0; i < opts.n; ++i) outcomes[i] = run_one(i);
  } else {
    std::vector<std::thread> workers;
    for (unsigned t = 0; t < jobs; ++t) {
      workers.emplace_back([&, t] {
        for (std::size_t i = t; i < opts.n; i += jobs) outcomes[i] = run_one(i);
      });
    }
    for (auto& w : workers) w.join();
  }

  AxiomResult result;
  result.name = name;
  for (auto& o : outcomes) {
    switch (o.status) {
      case CaseStatus::Pass: ++result.passed; break;
      case CaseStatus::Skip: ++result.skipped; break;
      case CaseStatus::Fail:
        if (!result.failed) result.counterexample = o.detail;
        ++result.failed;
        break;
    }
  }
  return result;
}

}  // namespace nomfol
