#pragma once

// Seeded property suites: each check runs over randomized instances and
// counts violations of a statement that must always hold.

#include "hcube/cube.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace hcube {

struct CheckCount {
    std::string name;
    std::uint64_t checked = 0;
    /// Instances outside the statement's hypotheses.
    std::uint64_t skipped = 0;
    std::uint64_t violations = 0;
};

struct SuiteReport {
    std::string suite;
    std::vector<CheckCount> checks;

    bool passed() const noexcept;
};

struct SuiteConfig {
    std::uint64_t seed;
    /// Randomized instances per check.
    std::uint64_t instances = 1000;
    SearchOptions search;
};

/// Suites: lemmas, oracle, nesting, monotonicity, all. Throws InputError on an
/// unknown name.
SuiteReport run_suite(const std::string& name, const SuiteConfig& config);

/// Individual checks, exposed for tests.
CheckCount check_intersection_lemma(const SuiteConfig& config);
CheckCount check_prefix_lemma(const SuiteConfig& config, CubeNotion notion);
CheckCount check_hypergeometric(const SuiteConfig& config);
CheckCount check_heavy_prefix_chain(const SuiteConfig& config);
CheckCount check_oracle_exhaustive(CubeNotion notion, const SearchOptions& search);
CheckCount check_oracle_random(const SuiteConfig& config, CubeNotion notion, std::uint64_t count = 200);
CheckCount check_nesting(const SuiteConfig& config);
CheckCount check_f_monotone(const SearchOptions& search);
CheckCount check_m_monotone(const SuiteConfig& config);
CheckCount check_toric_monotone();

}  // namespace hcube
