#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace svtest {

struct SuiteResult {
  std::string name;
  bool ok = true;
  size_t cases = 0;
  std::string detail;  // first failure, or a short summary when ok

  explicit SuiteResult(std::string n) : name(std::move(n)) {}

  void fail(const std::string& why) {
    if (ok) detail = why;
    ok = false;
  }
};

std::string corpus_dir();

SuiteResult suite_path_correspondence();                        // every corpus system
SuiteResult suite_mc_oracle(uint32_t seed, size_t samples);     // model checker vs path enumeration
SuiteResult suite_stutter(uint32_t seed, size_t samples);       // finite paths vs their stuttered completions
SuiteResult suite_ag_oracle(uint32_t seed, size_t envs);        // ag_check vs fixed-environment oracle
SuiteResult suite_true_assumption(uint32_t seed, size_t samples);
SuiteResult suite_quotient(uint32_t seed, size_t samples);
SuiteResult suite_relation_product(uint32_t seed, size_t samples);
SuiteResult suite_lift_fair(uint32_t seed, size_t samples);     // component verdicts lift to deadlock-free fair compounds
SuiteResult suite_lift_safety(uint32_t seed, size_t samples);   // safety verdicts lift to any compound
SuiteResult suite_sidecond_oracle();                            // toys: analysis vs path enumeration
SuiteResult suite_bisim_preservation(uint32_t seed, size_t samples);
SuiteResult suite_cli_determinism();
SuiteResult suite_cli_roundtrip(uint32_t seed);

}  // namespace svtest
