#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "tlearn/formula.hpp"
#include "tlearn/models.hpp"

namespace tlearn {

using StateSet = boost::dynamic_bitset<>;

class CheckError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

enum class PropMode { Strict, Lenient };

// Uniform view of any model for fixpoint evaluation.
struct Arena {
    enum class Type { Lasso, TurnBased, Concurrent };
    Type type = Type::Lasso;
    int n = 0;
    int agents = 1;
    std::vector<std::string> props;
    std::vector<Label> labels;
    std::vector<int> initial;
    std::vector<std::vector<int>> succ;   // Lasso and TurnBased
    std::vector<int> owner;               // TurnBased, 1-based
    std::vector<std::vector<int>> d;      // Concurrent
    std::vector<std::vector<int>> delta;  // Concurrent
};

Arena make_arena(const Model &m);

StateSet cpre(const Arena &a, Coalition c, const StateSet &z);

StateSet sat_prop(const Arena &a, const std::string &name, PropMode mode = PropMode::Strict);
// Coalition-free operators are only meaningful on lassos.
StateSet sat_unary(const Arena &a, UnaryOp op, std::optional<Coalition> c, const StateSet &z);
StateSet sat_logic(BinLogicOp op, const StateSet &x, const StateSet &y);
StateSet sat_temp2(const Arena &a, BinTempOp op, std::optional<Coalition> c, const StateSet &x,
                   const StateSet &y);

using SatCache = std::unordered_map<Formula, StateSet, FormulaHash, FormulaEq>;

StateSet sat(const Arena &a, const Formula &f, PropMode mode = PropMode::Strict, SatCache *cache = nullptr);

bool eval_ltl(const Formula &f, const UPWord &w, PropMode mode = PropMode::Strict);
bool eval_state(const Formula &f, const Model &m, int q, PropMode mode = PropMode::Strict);
bool eval_model(const Formula &f, const Model &m, PropMode mode = PropMode::Strict);
bool eval_arena(const Formula &f, const Arena &a, PropMode mode = PropMode::Strict);

// Exhaustive memoryless-strategy oracle; X/F/G with coalitions, negation and logic only.
bool oracle_eval_turn_based(const Formula &f, const TurnBased &t, int q);

} // namespace tlearn
