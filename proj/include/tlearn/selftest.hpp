#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace tlearn {

enum class Tier { Quick, Full };

Tier parse_tier(const std::string &s);
const char *tier_name(Tier t);

inline constexpr int kNumCriteria = 11;
inline constexpr std::uint64_t kDefaultSeed = 20240611;

struct CriterionResult {
    int id = 0;
    std::string title;
    bool pass = false;
    std::uint64_t checks = 0;
    std::uint64_t mismatches = 0;
    std::vector<std::string> notes;
    double elapsed_ms = 0;
};

const char *criterion_title(int id);

// Exceptions inside a criterion are reported as a failure with the message in notes.
CriterionResult run_criterion(int id, Tier tier = Tier::Full, std::uint64_t seed = kDefaultSeed);
// Empty ids runs every criterion.
std::vector<CriterionResult> run_selftest(Tier tier, std::uint64_t seed, const std::vector<int> &ids = {});

// One line: "PASS  3  ctl-x round-trip  checks=... mismatches=0  (12 ms)".
std::string format_result(const CriterionResult &r, bool with_time = true);
nlohmann::json criterion_to_json(const CriterionResult &r, bool with_time = true);

} // namespace tlearn
