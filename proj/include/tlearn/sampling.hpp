#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "tlearn/formula.hpp"
#include "tlearn/gadgets.hpp"
#include "tlearn/models.hpp"

namespace tlearn {

using Rng = std::mt19937_64;

int uniform(Rng &rng, int lo, int hi);
bool coin(Rng &rng, double p = 0.5);
Label random_label(Rng &rng, const std::vector<std::string> &props);
Coalition random_coalition(Rng &rng, int agents);

UPWord random_word(Rng &rng, const std::vector<std::string> &props, int max_part = 3);
Kripke random_kripke(Rng &rng, const std::vector<std::string> &props, int states);
TurnBased random_turn_based(Rng &rng, const std::vector<std::string> &props, int agents, int states,
                            bool self_looping = false);
Cgs random_cgs(Rng &rng, const std::vector<std::string> &props, int agents, int states);

struct FormulaShape {
    std::vector<std::string> props;
    std::vector<UnaryOp> unary{UnaryOp::Next, UnaryOp::Eventually, UnaryOp::Globally};
    std::vector<BinTempOp> bin_temp;
    std::vector<BinLogicOp> bin_logic{BinLogicOp::Or, BinLogicOp::And};
    bool negation = true;
    // 0 gives coalition-free (LTL) operators; CTL uses 1 with coalitions {} and {1}.
    int agents = 0;
    int depth = 3;
};

Formula random_formula(Rng &rng, const FormulaShape &shape);

// Covering families of at most max_sets distinct non-empty subsets of [1..l].
std::vector<std::vector<std::set<int>>> covering_families(int l, int max_sets);
HitInstance random_hit(Rng &rng, int l, int max_sets);
CosetInstance random_coset(Rng &rng, int n, int l);

} // namespace tlearn
