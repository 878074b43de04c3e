#include <functional>
#include <map>

#include <gtest/gtest.h>

#include "tlearn/checker.hpp"
#include "tlearn/sampling.hpp"

using namespace tlearn;

namespace {

UPWord constant_word(const std::vector<std::string> &props, Label a) { return make_word(props, {}, {std::move(a)}); }

} // namespace

TEST(Checker, EventuallyOnConstantWord) {
    auto w = constant_word({"p"}, {"p"});
    EXPECT_TRUE(eval_ltl(parse_formula("F p"), w));
    EXPECT_TRUE(eval_model(parse_formula("F p"), w));
    EXPECT_FALSE(eval_ltl(parse_formula("F !p"), w));
}

TEST(Checker, LassoSemantics) {
    auto w = make_word({"p", "q"}, {{"p"}, {"p"}}, {{"q"}, {}});
    EXPECT_TRUE(eval_ltl(parse_formula("p U q"), w));
    EXPECT_TRUE(eval_ltl(parse_formula("X X q"), w));
    EXPECT_TRUE(eval_ltl(parse_formula("G F q"), w));
    EXPECT_FALSE(eval_ltl(parse_formula("F G q"), w));
    EXPECT_TRUE(eval_ltl(parse_formula("q R (p | q | !q)"), w));
    EXPECT_FALSE(eval_ltl(parse_formula("p M q"), w));
    EXPECT_TRUE(eval_ltl(parse_formula("p W q"), w));
}

TEST(Checker, StrictAndLenientPropositions) {
    auto w = constant_word({"p"}, {"p"});
    EXPECT_THROW(eval_ltl(parse_formula("z"), w), CheckError);
    EXPECT_FALSE(eval_ltl(parse_formula("z"), w, PropMode::Lenient));
}

TEST(Checker, CoalitionOutOfRange) {
    auto t = trivial_structure({"p"}, 2, {"p"});
    EXPECT_THROW(eval_model(parse_formula("<3>F p"), t), CheckError);
    EXPECT_TRUE(eval_model(parse_formula("<1,2>G p"), t));
}

TEST(Checker, TurnBasedAttractor) {
    // q0 (agent 1) -> q1 | q2; q1 labelled p; q2 (agent 2) -> q0 | q2.
    TurnBased t;
    t.props = {"p"};
    t.agents = 2;
    t.add_state("q0", {}, 1);
    t.add_state("q1", {"p"}, 1);
    t.add_state("q2", {}, 2);
    t.edge(0, 1);
    t.edge(0, 2);
    t.edge(1, 1);
    t.edge(2, 0);
    t.edge(2, 2);
    t.initial = {0};
    EXPECT_TRUE(eval_state(parse_formula("<1>F p"), t, 0));
    EXPECT_FALSE(eval_state(parse_formula("<1>F p"), t, 2));
    EXPECT_TRUE(eval_state(parse_formula("<2>G !p"), t, 2));
    EXPECT_FALSE(eval_state(parse_formula("<>F p"), t, 0));
    EXPECT_TRUE(eval_state(parse_formula("<1,2>F p"), t, 2));
}

TEST(CheckerProperty, FixpointMatchesStrategyOracle) {
    Rng rng(17);
    for (int i = 0; i < 300; ++i) {
        int agents = uniform(rng, 1, 3);
        auto t = random_turn_based(rng, {"p", "q"}, agents, uniform(rng, 1, 6));
        FormulaShape sh;
        sh.props = {"p", "q"};
        sh.agents = agents;
        sh.depth = uniform(rng, 1, 4);
        auto f = random_formula(rng, sh);
        for (int q = 0; q < t.num_states(); ++q)
            ASSERT_EQ(eval_state(f, t, q), oracle_eval_turn_based(f, t, q)) << print_formula(f);
    }
}

TEST(CheckerProperty, IffParityLaw) {
    // alpha^omega |= phi iff Neg(phi) and the number of props outside alpha occurring oddly often agree in parity
    Rng rng(19);
    const std::vector<std::string> props{"a1", "a2", "a3"};
    FormulaShape sh;
    sh.props = props;
    sh.unary.clear();
    sh.bin_logic = {BinLogicOp::Iff, BinLogicOp::NotIff};
    for (int i = 0; i < 300; ++i) {
        sh.depth = uniform(rng, 1, 4);
        auto f = random_formula(rng, sh);
        auto alpha = random_label(rng, props);
        int negs = 0;
        std::map<std::string, int> occ;
        std::function<void(const Formula &)> walk = [&](const Formula &g) {
            if (g->kind == Kind::Prop) ++occ[g->name];
            if (g->kind == Kind::Not) ++negs;
            if (g->kind == Kind::LogicBinary && g->logic_op() == BinLogicOp::NotIff) ++negs;
            if (g->left) walk(g->left);
            if (g->right) walk(g->right);
        };
        walk(f);
        int odd_false = 0;
        for (auto &[p, c] : occ)
            if (!alpha.count(p) && c % 2) ++odd_false;
        EXPECT_EQ(eval_ltl(f, constant_word(props, alpha)), negs % 2 == odd_false % 2) << print_formula(f);
    }
}

TEST(CheckerProperty, SelfLoopingCollapse) {
    Rng rng(23);
    for (int i = 0; i < 200; ++i) {
        int agents = uniform(rng, 2, 3);
        auto t = random_turn_based(rng, {"p", "q"}, agents, uniform(rng, 1, 6), true);
        FormulaShape sh;
        sh.props = {"p", "q"};
        sh.agents = agents;
        auto f = random_formula(rng, sh);
        auto a = make_arena(t);
        auto z = sat(a, f);
        EXPECT_EQ(sat(a, temp(UnaryOp::Eventually, f, Coalition(0))), z);
        EXPECT_EQ(sat(a, temp(UnaryOp::Globally, f, coalition_all(agents))), z);
    }
}
