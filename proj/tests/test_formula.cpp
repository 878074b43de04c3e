#include <gtest/gtest.h>

#include "tlearn/formula.hpp"
#include "tlearn/sampling.hpp"

using namespace tlearn;

TEST(Formula, PrintsCoalitionsAndCtlStyle) {
    EXPECT_EQ(print_formula(parse_formula("<1>F <2,3>F p")), "<1>F <2,3>F p");
    EXPECT_EQ(print_formula(parse_formula("AX EX EX p"), Style::Ctl), "AX EX EX p");
    EXPECT_EQ(print_formula(parse_formula("AX EX EX p")), "<>X <1>X <1>X p");
    EXPECT_EQ(print_formula(parse_formula("E(p U q)"), Style::Ctl), "E(p U q)");
}

TEST(Formula, NegatedConnectives) {
    auto f = parse_formula("b1 !& x1");
    EXPECT_EQ(f->kind, Kind::LogicBinary);
    EXPECT_EQ(f->logic_op(), BinLogicOp::NotAnd);
    EXPECT_EQ(print_formula(parse_formula("a1 !| x1")), "a1 !| x1");
    for (int i = 0; i < kNumBinLogic; ++i) {
        auto op = static_cast<BinLogicOp>(i);
        EXPECT_EQ(logic_from_name(logic_name(op)), op);
    }
}

TEST(Formula, SizeCountsEveryNode) {
    EXPECT_EQ(size(parse_formula("p")), 1u);
    EXPECT_EQ(size(parse_formula("!(p -> q)")), 4u);
    EXPECT_EQ(size(parse_formula("AG EF p")), 3u);
    EXPECT_EQ(bin_count(parse_formula("p & q | r")), 2u);
    EXPECT_EQ(max_agent(parse_formula("<1>F <2,3>G p")), 3);
    EXPECT_EQ(props(parse_formula("p U (q & p)")), (std::set<std::string>{"p", "q"}));
}

TEST(Formula, ParseErrorsCarryPosition) {
    try {
        parse_formula("F (");
        FAIL();
    } catch (const ParseError &e) {
        EXPECT_EQ(e.position(), 3u);
    }
    EXPECT_THROW(parse_formula("<5>F p", 2), ParseError);
    EXPECT_THROW(parse_formula("p q"), ParseError);
}

TEST(Formula, ModeMixingIsRejected) {
    EXPECT_THROW(temp(UnaryOp::Eventually, temp(UnaryOp::Globally, prop("p")), Coalition(1)), FormulaError);
    EXPECT_TRUE(equal(temp(UnaryOp::Not, prop("p")), neg(prop("p"))));
}

TEST(Fragment, TextRoundTrip) {
    auto fs = parse_fragment("U=F,G;Bt=;Bl=or;n=0");
    EXPECT_EQ(fs.unary, (std::set<UnaryOp>{UnaryOp::Eventually, UnaryOp::Globally}));
    EXPECT_TRUE(fs.bin_temp.empty());
    EXPECT_EQ(fs.bin_logic, std::set<BinLogicOp>{BinLogicOp::Or});
    EXPECT_EQ(fs.bin_budget, 0);
    EXPECT_EQ(print_fragment(fs), "U=F,G;Bt=;Bl=or;n=0");
    EXPECT_FALSE(parse_fragment("U=;Bt=;Bl=;n=inf").bin_budget.has_value());
    EXPECT_THROW(parse_fragment("U=Q;Bt=;Bl=;n=0"), std::invalid_argument);
}

TEST(Fragment, Membership) {
    auto fs = parse_fragment("U=F,G;Bt=;Bl=or;n=1");
    EXPECT_TRUE(in_fragment(parse_formula("F p | G q"), fs));
    EXPECT_FALSE(in_fragment(parse_formula("F p | G q | p"), fs));
    EXPECT_FALSE(in_fragment(parse_formula("X p"), fs));
    EXPECT_FALSE(in_fragment(parse_formula("p & q"), fs));
}

TEST(Formula, LtlStateConversionRoundTrips) {
    auto f = parse_formula("G (p U X q)");
    auto s = ltl_to_state(f);
    EXPECT_EQ(print_formula(s, Style::Ctl), "EG E(p U EX q)");
    EXPECT_TRUE(equal(state_to_ltl(s), f));
}

TEST(FormulaProperty, PrintParseRoundTrip) {
    Rng rng(7);
    FormulaShape sh;
    sh.props = {"p", "q", "a1"};
    sh.bin_temp = {BinTempOp::Until, BinTempOp::Release, BinTempOp::WeakUntil, BinTempOp::MightyRelease};
    for (int i = 0; i < kNumBinLogic; ++i) sh.bin_logic.push_back(static_cast<BinLogicOp>(i));
    for (int agents : {0, 1, 3})
        for (int i = 0; i < 200; ++i) {
            sh.agents = agents;
            sh.depth = 4;
            auto f = random_formula(rng, sh);
            for (Style st : {Style::Atl, Style::Ctl}) {
                if (st == Style::Ctl && agents > 1) continue;
                auto text = print_formula(f, st);
                EXPECT_TRUE(equal(parse_formula(text), f)) << text;
            }
        }
}

TEST(FormulaProperty, HashConsistentWithEquality) {
    Rng rng(11);
    FormulaShape sh;
    sh.props = {"p", "q"};
    sh.depth = 3;
    for (int i = 0; i < 300; ++i) {
        auto f = random_formula(rng, sh);
        auto g = parse_formula(print_formula(f));
        EXPECT_EQ(FormulaHash{}(f), FormulaHash{}(g));
    }
}
