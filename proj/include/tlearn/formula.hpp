#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace tlearn {

enum class UnaryOp : std::uint8_t { Not, Next, Eventually, Globally };
enum class BinTempOp : std::uint8_t { Until, Release, WeakUntil, MightyRelease };
enum class BinLogicOp : std::uint8_t {
    Or, And, Implies, ImpliedBy, Iff,
    NotOr, NotAnd, NotImplies, NotImpliedBy, NotIff
};

inline constexpr int kNumBinLogic = 10;
inline constexpr int kMaxAgents = 16;

// Bit i-1 stands for agent i.
using Coalition = std::uint32_t;

Coalition coalition_of(std::initializer_list<int> agents);
Coalition coalition_all(int k);
std::vector<int> coalition_members(Coalition c);

enum class Kind : std::uint8_t { Prop, Not, TempUnary, LogicBinary, TempBinary };

struct Node;
using Formula = std::shared_ptr<const Node>;

// Temporal mode of a formula: none (propositional), path (LTL) or state (CTL/ATL).
enum class Mode : std::uint8_t { None, Path, State };

struct Node {
    Kind kind = Kind::Prop;
    std::uint8_t op = 0;
    std::optional<Coalition> coal;
    std::string name;
    Formula left, right;
    std::size_t hash = 0;
    std::uint32_t tree_size = 1;
    Mode mode = Mode::None;

    UnaryOp unary_op() const { return static_cast<UnaryOp>(op); }
    BinTempOp temp_op() const { return static_cast<BinTempOp>(op); }
    BinLogicOp logic_op() const { return static_cast<BinLogicOp>(op); }
};

class FormulaError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string &msg, std::size_t pos);
    std::size_t position() const { return pos_; }
private:
    std::size_t pos_;
};

Formula prop(const std::string &name);
Formula neg(Formula f);
// Not is forwarded to neg and ignores the coalition.
Formula temp(UnaryOp op, Formula f, std::optional<Coalition> c = std::nullopt);
Formula logic(BinLogicOp op, Formula l, Formula r);
Formula temp2(BinTempOp op, Formula l, Formula r, std::optional<Coalition> c = std::nullopt);

bool equal(const Formula &a, const Formula &b);

struct FormulaHash {
    std::size_t operator()(const Formula &f) const { return f->hash; }
};
struct FormulaEq {
    bool operator()(const Formula &a, const Formula &b) const { return equal(a, b); }
};

// Distinct subformulas, children before parents.
std::vector<Formula> subformulas(const Formula &f);
std::size_t size(const Formula &f);
std::size_t bin_count(const Formula &f);
std::set<std::string> props(const Formula &f);
// Largest agent index used by any coalition, 0 if none.
int max_agent(const Formula &f);
int depth(const Formula &f);

struct FragmentSpec {
    std::set<UnaryOp> unary;
    std::set<BinTempOp> bin_temp;
    std::set<BinLogicOp> bin_logic;
    std::optional<int> bin_budget;  // nullopt is infinity

    bool allows(UnaryOp op) const { return unary.count(op) > 0; }
};

bool in_fragment(const Formula &f, const FragmentSpec &fs);

// Text form "U=F,G;Bt=;Bl=or;n=0".
FragmentSpec parse_fragment(const std::string &text);
std::string print_fragment(const FragmentSpec &fs);

Formula ltl_to_state(const Formula &f);
Formula state_to_ltl(const Formula &f);

enum class Style { Atl, Ctl };

// max_agents bounds coalition indices; 0 means the global limit.
Formula parse_formula(const std::string &text, int max_agents = 0);
std::string print_formula(const Formula &f, Style style = Style::Atl);

const char *unary_symbol(UnaryOp op);
const char *temp_symbol(BinTempOp op);
const char *logic_symbol(BinLogicOp op);
const char *logic_name(BinLogicOp op);
std::optional<BinLogicOp> logic_from_name(const std::string &name);

bool apply_logic(BinLogicOp op, bool a, bool b);

} // namespace tlearn
