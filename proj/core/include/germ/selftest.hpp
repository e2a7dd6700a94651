#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace germ {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    double seconds = 0;
    double time_limit = 0;
    std::string detail;
    std::vector<std::string> failures; // first few offending cases
};

struct SelftestOptions {
    std::uint64_t seed = 1;
    std::string corpus_path; // empty: generate the corpus in memory
    long precision = 256;
    std::vector<int> only;   // empty: all criteria
    std::function<void(const CriterionResult &)> on_result;
};

inline constexpr int kCriteria = 10;

CriterionResult run_criterion(int id, const SelftestOptions &opts);
std::vector<CriterionResult> run_selftest(const SelftestOptions &opts);

// The random corpus used by the oracle cross-check: depth <= 5, tower height <= 3.
std::vector<std::string> generate_corpus(std::uint64_t seed, int count);

} // namespace germ
