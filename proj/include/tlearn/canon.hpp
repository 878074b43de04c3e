#pragma once

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "tlearn/formula.hpp"

namespace tlearn {

// One prefix operator: Not, or a temporal operator with optional coalition.
struct PrefixOp {
    UnaryOp op = UnaryOp::Not;
    std::optional<Coalition> coal;

    bool operator==(const PrefixOp &o) const { return op == o.op && coal == o.coal; }
    bool operator<(const PrefixOp &o) const {
        return std::pair(static_cast<int>(op), coal.value_or(~Coalition(0))) <
               std::pair(static_cast<int>(o.op), o.coal.value_or(~Coalition(0)));
    }
};

using OpSequence = std::vector<PrefixOp>;

PrefixOp op_not();
PrefixOp op_ltl(UnaryOp op);
PrefixOp op_atl(UnaryOp op, Coalition c);

// Outermost operator first.
Formula apply_prefix(const OpSequence &qt, Formula body);
// Splits the maximal unary prefix off a formula.
std::pair<OpSequence, Formula> split_prefix(const Formula &f);
std::string print_sequence(const OpSequence &qt, Style style = Style::Atl);

// ------------------------------------------------------------------ LTL

std::vector<OpSequence> seqqt_ltl(const std::set<UnaryOp> &u, int max_len);
OpSequence ltl_canonicalize_prefix(const OpSequence &qt, const std::set<UnaryOp> &u);
// Applies ltl_canonicalize_prefix to every maximal unary prefix of f.
Formula ltl_canonicalize(const Formula &f, const std::set<UnaryOp> &u);

// Formulas Qt . core where core is a proposition or a binary node over such formulas.
std::vector<Formula> prefixed_enumerate(const std::vector<OpSequence> &prefixes,
                                        const std::vector<std::string> &props,
                                        const std::set<BinLogicOp> &bl, int n, int max_size);

// LTL_Unif formulas with tree size <= max_size and at most n binary nodes.
std::vector<Formula> ltl_unif_enumerate(const std::vector<std::string> &props, const std::set<UnaryOp> &u,
                                        const std::set<BinLogicOp> &bl, int n, int max_size);

// ------------------------------------------------------------ ATL / CTL

PrefixOp dual(const PrefixOp &o, int agents);
std::pair<OpSequence, int> unneg(const OpSequence &qt, int x, int agents);

enum class Quant { Exists, Forall };
Quant dom_f(Quant a, Quant b);
Quant dom_g(Quant a, Quant b);

// Shortest representatives of every CTL prefix class over u (u within {F,G,Not}).
std::vector<OpSequence> ctl_nox_prefixes(const std::set<UnaryOp> &u, int max_len = 32);
std::vector<OpSequence> ctl_nox_prefixes();
// Normal-form key used by ctl_nox_prefixes.
std::string ctl_nox_key(const OpSequence &qt);
// Smallest B_n with every n-binary no-X CTL formula equivalent to one of size <= B_n.
int ctl_nox_bound(int n, const std::set<UnaryOp> &u);

std::vector<OpSequence> atl2_quant_alt(UnaryOp h, int max_len);

struct Sketch {
    Formula tmpl;  // placeholder leaves are the proposition "?"
    int holes = 0;
};

inline const std::string kHole = "?";

std::vector<Sketch> atl2_sketches(const std::set<BinLogicOp> &bl, UnaryOp h, int n, int max_size);
Formula instantiate(const Sketch &s, const std::vector<std::string> &fill);

} // namespace tlearn
