#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hn/json_io.hpp"

namespace hn {

struct SuiteReport {
  std::string name;
  int trials = 0;
  int failures = 0;
  std::vector<std::string> counterexamples;  // replayable input documents + tags
  bool passed() const { return failures == 0; }
};

struct SuiteConfig {
  uint64_t seed = 1;
  int trials = 500;
  DestabConfig fp_cfg;
  LatticeDestabConfig lattice_cfg;
};

// A2..A7 on the multi-filtered instantiation.
SuiteReport run_axioms_suite(const SuiteConfig& cfg);

// Slope corollaries on both hosts: mu_min <= mu <= mu_max, subobject and
// quotient inequalities, the hom slope gap on compatible maps, vanishing
// for semistable pairs with a strict gap, degree additivity, the
// rank-weighted slope sum identity and subquotient semistability.
SuiteReport run_slopes_suite(const SuiteConfig& cfg);

// Functoriality of the canonical filtration on compatible maps, the
// factorization property, degree monotonicity for compatible
// isomorphisms and the transport/idempotence checks.
SuiteReport run_functoriality_suite(const SuiteConfig& cfg);

// Oracle cross-checks: closure vs brute-force destabilizers, the
// sequence recomputed from the filtration, the single-flag model
// identity, and lattice fixtures with analytic answers.
SuiteReport run_oracle_suite(const SuiteConfig& cfg);

std::vector<SuiteReport> run_all_suites(const SuiteConfig& cfg);

}  // namespace hn
