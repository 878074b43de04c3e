#pragma once

#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "tlearn/formula.hpp"
#include "tlearn/learner.hpp"
#include "tlearn/models.hpp"

namespace tlearn {

class GadgetError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Hitting set source: sets are non-empty subsets of [1..l].
struct HitInstance {
    int l = 1;
    std::vector<std::set<int>> sets;
    int k = 1;
};

// Coset weight source: a is n x l over Z/2Z.
struct CosetInstance {
    std::vector<std::vector<int>> a;
    std::vector<int> y;
    int k = 0;
};

void validate_hit(const HitInstance &h);
void validate_coset(const CosetInstance &c);
// Whether the sets cover [1..l]; validation does not require it.
bool covers(const HitInstance &h);

// Minimum-size hitting set if it has at most k elements.
std::optional<std::set<int>> solve_hit_brute(const HitInstance &h);
// Some x with at most k ones and A x = y.
std::optional<std::vector<int>> solve_cw_brute(const CosetInstance &c);

enum class Family {
    Or, And, NotAnd, NotOr, WeakUntil, MightyRelease, Iff, Until, Release,
    CtlX, ReachCtl, ReachAtl2, Atl2, Atl3
};

const char *family_name(Family f);
Family parse_family(const std::string &s);
bool is_ltl_family(Family f);

using Source = std::variant<std::monostate, HitInstance, CosetInstance>;

struct ReductionBundle {
    Family family = Family::Or;
    Source source;
    LearningInstance instance;
    // Separating formula built from the oracle's answer; empty when the source is negative.
    std::optional<Formula> witness;
    bool trivial = false;
};

// ------------------------------------------------------------------ LTL

ReductionBundle gen_ltl(Family family, const HitInstance &h);
ReductionBundle gen_ltl_iff(const CosetInstance &c);
// Fixed positive instance used for degenerate sources.
ReductionBundle trivial_ltl_bundle(Family family, Source source);

// k pads H for the negated families, which need exactly k indices.
Formula witness_ltl(Family family, const std::set<int> &h, int l, int k = 0);
Formula witness_iff(const std::vector<int> &x);

// Words of the U/R family.
UPWord ur_word(int l, const std::set<int> &c, bool until);
std::vector<std::string> ur_props(int l);

ReductionBundle lift_ltl_to_ctl(const ReductionBundle &b);

// ------------------------------------------------------------------ CTL

Kripke kripke_lc(int l, const std::set<int> &c);
Kripke kripke_exists_gt(int l, int k);
Kripke kripke_pos(int l);
Kripke kripke_neg(int l);
Kripke kripke_pbar();

ReductionBundle gen_ctl_x(const HitInstance &h, bool with_not = false);
Formula witness_ctl_x(int l, const std::set<int> &h);

ReductionBundle gen_reach_ctl(const Kripke &k, UnaryOp h);
ReductionBundle gen_reach_atl2(const TurnBased &t, UnaryOp h);

// ------------------------------------------------------------------ ATL

TurnBased build_alt_structure(int l, int i, int j, int agents = 2);
TurnBased game_p(int agents);
TurnBased game_pbar(int agents);
TurnBased game_no_empty_g();
TurnBased game_no_1g(int k);
TurnBased game_lc2(int l, const std::set<int> &c);
TurnBased game_lc3(int l, const std::set<int> &c);
// Two-state choice gadget; the initial state is owned by `owner`.
TurnBased game_choice(int owner);

ReductionBundle gen_atl2(const HitInstance &h);
Formula witness_atl2(int l, const std::set<int> &h);

ReductionBundle gen_atl3(const HitInstance &h, UnaryOp op, std::optional<int> bound = std::nullopt);
Formula witness_atl3(int l, const std::set<int> &h, UnaryOp op = UnaryOp::Eventually);

// ----------------------------------------------------------- binary wrap

// Propositions p_1..p_n added by the wrapper.
std::vector<std::string> wrap_props(int n);
Formula wrap_chain(BinLogicOp op, int n);
ReductionBundle wrap_binary(const ReductionBundle &b, BinLogicOp op, int n);

// -------------------------------------------------------------- sources

nlohmann::json hit_to_json(const HitInstance &h);
HitInstance hit_from_json(const nlohmann::json &j);
nlohmann::json coset_to_json(const CosetInstance &c);
CosetInstance coset_from_json(const nlohmann::json &j);

} // namespace tlearn
