#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "tlearn/checker.hpp"
#include "tlearn/formula.hpp"
#include "tlearn/models.hpp"

namespace tlearn {

enum class Logic { LTL, CTL, ATL };

const char *logic_label(Logic l);
Logic parse_logic(const std::string &s);

struct LearningInstance {
    Logic logic = Logic::LTL;
    int agents = 1;
    std::vector<std::string> props;
    std::vector<Model> positives;
    std::vector<Model> negatives;
    int bound = 1;
    FragmentSpec fragment;
};

class InstanceError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

void validate_instance(const LearningInstance &inst);

enum class Verdict { Positive, Negative, Inconclusive };
const char *verdict_name(Verdict v);

struct LearnStats {
    std::uint64_t candidates = 0;
    std::uint64_t distinct = 0;
    double elapsed_ms = 0;
};

struct LearnResult {
    Verdict verdict = Verdict::Negative;
    std::optional<Formula> witness;
    LearnStats stats;
};

struct LearnOptions {
    std::uint64_t candidate_cap = 10'000'000;
};

bool separates(const Formula &f, const LearningInstance &inst);

LearnResult learn_generic(const LearningInstance &inst, const LearnOptions &opt = {});
LearnResult learn_ltl_unary(const LearningInstance &inst);
LearnResult learn_ctl_noX(const LearningInstance &inst);
LearnResult learn_atl2_single(const LearningInstance &inst, UnaryOp h);
// Prefixes over <1>F, <2>F, <1>G, <1,2>F applied to a proposition.
LearnResult learn_atl2_promising(const LearningInstance &inst);

nlohmann::json instance_to_json(const LearningInstance &inst);
LearningInstance instance_from_json(const nlohmann::json &j);
nlohmann::json result_to_json(const LearnResult &r, Style style = Style::Atl, bool with_stats = true);

} // namespace tlearn
