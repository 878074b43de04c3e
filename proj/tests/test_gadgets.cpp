#include <fstream>

#include <gtest/gtest.h>

#include "tlearn/checker.hpp"
#include "tlearn/gadgets.hpp"
#include "tlearn/sampling.hpp"

using namespace tlearn;

namespace {

nlohmann::json golden(const std::string &name) {
    std::ifstream in(std::string(TLEARN_GOLDEN_DIR) + "/" + name + ".json");
    EXPECT_TRUE(in.good()) << name;
    return nlohmann::json::parse(in);
}

std::vector<std::set<int>> all_subsets(int l) {
    std::vector<std::set<int>> out;
    for (int m = 1; m < (1 << l); ++m) {
        std::set<int> s;
        for (int i = 0; i < l; ++i)
            if (m >> i & 1) s.insert(i + 1);
        out.push_back(s);
    }
    return out;
}

bool meets(const std::set<int> &a, const std::set<int> &b) {
    for (int x : a)
        if (b.count(x)) return true;
    return false;
}

const Family kLtlFamilies[] = {Family::Or,        Family::And,           Family::NotAnd, Family::NotOr,
                               Family::WeakUntil, Family::MightyRelease, Family::Until,  Family::Release};

} // namespace

// ------------------------------------------------------------ sources

TEST(Sources, HittingSetOracle) {
    EXPECT_EQ(solve_hit_brute({4, {{1, 3}, {1, 2, 4}}, 1}), (std::set<int>{1}));
    EXPECT_FALSE(solve_hit_brute({2, {{1}, {2}}, 1}));
    HitInstance tri{3, {{1, 2}, {2, 3}, {1, 3}}, 1};
    EXPECT_FALSE(solve_hit_brute(tri));
    tri.k = 2;
    auto h = solve_hit_brute(tri);
    ASSERT_TRUE(h);
    EXPECT_EQ(h->size(), 2u);
    EXPECT_THROW(validate_hit({3, {{4}}, 1}), GadgetError);
    EXPECT_THROW(validate_hit({3, {{1}}, 0}), GadgetError);
    EXPECT_THROW(validate_hit({3, {{}}, 1}), GadgetError);
    EXPECT_THROW(solve_hit_brute({21, {{1}}, 1}), GadgetError);
    EXPECT_FALSE(covers({3, {{1, 2}}, 1}));
}

TEST(Sources, CosetOracle) {
    EXPECT_EQ(solve_cw_brute({{{1, 0}, {0, 1}}, {1, 0}, 1}), (std::vector<int>{1, 0}));
    EXPECT_EQ(solve_cw_brute({{{1, 1}, {0, 1}}, {0, 0}, 1}), (std::vector<int>{0, 0}));
    auto x = solve_cw_brute({{{1, 1}}, {1}, 1});
    ASSERT_TRUE(x);
    EXPECT_EQ((*x)[0] + (*x)[1], 1);
    EXPECT_FALSE(solve_cw_brute({{{1, 1}, {0, 1}}, {0, 1}, 1}));
    EXPECT_THROW(validate_coset({{{1, 2}}, {1}, 1}), GadgetError);
}

TEST(Sources, JsonRoundTrip) {
    HitInstance h{4, {{1, 3}, {1, 2, 4}}, 1};
    auto j = hit_to_json(h);
    EXPECT_EQ(hit_to_json(hit_from_json(j)), j);
    CosetInstance c{{{1, 0, 1}, {0, 1, 1}}, {1, 0}, 2};
    EXPECT_EQ(coset_to_json(coset_from_json(coset_to_json(c))), coset_to_json(c));
}

TEST(Sources, FamilyTags) {
    for (auto f : kLtlFamilies) EXPECT_EQ(parse_family(family_name(f)), f);
    EXPECT_EQ(parse_family("ctl-x"), Family::CtlX);
    EXPECT_EQ(parse_family("U"), Family::Until);
    EXPECT_THROW(parse_family("xor"), GadgetError);
}

// ---------------------------------------------------------------- LTL

TEST(GadgetsLtl, ExampleOrInstance) {
    auto b = gen_ltl(Family::Or, HitInstance{4, {{1, 3}, {1, 2, 4}}, 1});
    auto &in = b.instance;
    EXPECT_EQ(in.bound, 1);
    ASSERT_EQ(in.positives.size(), 2u);
    ASSERT_EQ(in.negatives.size(), 1u);
    auto a1 = std::get<UPWord>(in.positives[0]), a2 = std::get<UPWord>(in.positives[1]);
    auto beta = std::get<UPWord>(in.negatives[0]);
    EXPECT_EQ(a1.size(), 1u);
    EXPECT_EQ(a1.v[0], (Label{"a1", "b2", "a3", "b4"}));
    EXPECT_EQ(a2.v[0], (Label{"a1", "a2", "b3", "a4"}));
    EXPECT_EQ(beta.v[0], (Label{"b1", "b2", "b3", "b4"}));
    EXPECT_EQ(print_formula(*b.witness), "a1");
}

TEST(GadgetsLtl, DegenerateSourcesMapToTrivialInstance) {
    auto b = gen_ltl(Family::NotAnd, HitInstance{2, {{1}, {2}}, 2});
    EXPECT_TRUE(b.trivial);
    EXPECT_TRUE(separates(*b.witness, b.instance));
    auto c = gen_ltl_iff({{{1, 1}}, {0}, 1});
    EXPECT_TRUE(c.trivial);
}

TEST(GadgetsLtl, WitnessShapes) {
    EXPECT_EQ(print_formula(witness_ltl(Family::WeakUntil, {2, 4}, 4)), "a2 W a4");
    EXPECT_EQ(size(witness_ltl(Family::WeakUntil, {2, 4}, 4)), 3u);
    EXPECT_EQ(print_formula(witness_ltl(Family::Or, {1}, 4)), "a1");
    EXPECT_EQ(size(witness_ltl(Family::Release, {1, 3}, 3)), 3u);
    EXPECT_THROW(witness_ltl(Family::Or, {}, 3), GadgetError);
}

TEST(GadgetsLtl, UntilWordLength) {
    for (bool until : {true, false}) {
        auto w = ur_word(3, {1, 3}, until);
        EXPECT_EQ(w.size(), 4u);
        ASSERT_EQ(w.v.size(), 1u);
        EXPECT_EQ(w.v[0].empty(), !until);
    }
}

TEST(GadgetsLtl, WitnessesSeparateWheneverTheSourceIsPositive) {
    for (int l = 1; l <= 3; ++l)
        for (auto &fam : covering_families(l, 3))
            for (int k = 1; k <= l; ++k) {
                HitInstance h{l, fam, k};
                bool pos = solve_hit_brute(h).has_value();
                for (auto f : kLtlFamilies) {
                    auto b = gen_ltl(f, h);
                    ASSERT_EQ(b.witness.has_value(), pos) << family_name(f);
                    if (pos) EXPECT_TRUE(separates(*b.witness, b.instance)) << family_name(f);
                    if (pos) EXPECT_LE(static_cast<int>(size(*b.witness)), b.instance.bound);
                }
            }
}

TEST(GadgetsLtl, IffWitnessesSeparate) {
    Rng rng(61);
    for (int i = 0; i < 200; ++i) {
        auto c = random_coset(rng, uniform(rng, 1, 3), uniform(rng, 1, 4));
        auto b = gen_ltl_iff(c);
        bool pos = solve_cw_brute(c).has_value();
        if (pos) {
            ASSERT_TRUE(b.witness);
            EXPECT_TRUE(separates(*b.witness, b.instance));
            EXPECT_LE(static_cast<int>(size(*b.witness)), b.instance.bound);
        }
    }
}

TEST(GadgetsLtl, LiftKeepsShape) {
    auto b = gen_ltl(Family::Or, HitInstance{4, {{1, 3}, {1, 2, 4}}, 1});
    auto lifted = lift_ltl_to_ctl(b);
    EXPECT_EQ(lifted.instance.logic, Logic::CTL);
    EXPECT_EQ(lifted.instance.bound, 1);
    EXPECT_EQ(lifted.instance.positives.size() + lifted.instance.negatives.size(), 3u);
    EXPECT_EQ(print_formula(*lifted.witness), "a1");
    EXPECT_TRUE(separates(*lifted.witness, lifted.instance));
}

// ---------------------------------------------------------------- CTL

TEST(GadgetsCtl, GoldenShapes) {
    EXPECT_EQ(model_to_json(kripke_lc(5, {2, 5})), golden("kripke_lc_5_2_5"));
    EXPECT_EQ(model_to_json(kripke_exists_gt(5, 2)), golden("kripke_exists_gt_5_2"));
}

TEST(GadgetsCtl, WitnessText) {
    EXPECT_EQ(print_formula(witness_ctl_x(3, {2, 3}), Style::Ctl), "AX EX EX p");
}

TEST(GadgetsCtl, IntersectionAndSmallHittingSet) {
    for (int l = 1; l <= 4; ++l)
        for (auto &h : all_subsets(l)) {
            auto f = witness_ctl_x(l, h);
            for (auto &c : all_subsets(l)) EXPECT_EQ(eval_model(f, kripke_lc(l, c)), meets(h, c));
            for (int k = 0; k < l; ++k)
                EXPECT_EQ(eval_model(f, kripke_exists_gt(l, k)), static_cast<int>(h.size()) > k);
        }
}

TEST(GadgetsCtl, ReachInstances) {
    Kripke k;
    k.props = {"p", "pbar"};
    k.add_state("q", {"p"});
    k.succ[0] = {0};
    k.initial = {0};
    auto b = gen_reach_ctl(k, UnaryOp::Eventually);
    EXPECT_EQ(b.instance.bound, 2);
    ASSERT_TRUE(b.witness);
    EXPECT_EQ(print_formula(*b.witness, Style::Ctl), "EF p");
    EXPECT_EQ(learn_generic(b.instance).verdict, Verdict::Positive);
    k.labels[0] = {"pbar"};
    auto n = gen_reach_ctl(k, UnaryOp::Eventually);
    EXPECT_FALSE(n.witness);
    EXPECT_EQ(learn_generic(n.instance).verdict, Verdict::Negative);
    k.labels[0] = {"p", "pbar"};
    EXPECT_THROW(gen_reach_ctl(k, UnaryOp::Eventually), GadgetError);
}

TEST(GadgetsCtl, ReachAtl2RejectsAgentTwoGadget) {
    auto b = gen_reach_atl2(game_choice(2), UnaryOp::Eventually);
    EXPECT_FALSE(b.witness);
    EXPECT_EQ(learn_generic(b.instance).verdict, Verdict::Negative);
    auto c = gen_reach_atl2(game_choice(1), UnaryOp::Globally);
    EXPECT_TRUE(c.witness);
    EXPECT_EQ(learn_generic(c.instance).verdict, Verdict::Positive);
}

// ---------------------------------------------------------------- ATL

TEST(GadgetsAtl, GoldenShapes) {
    EXPECT_EQ(model_to_json(build_alt_structure(6, 1, 2)), golden("alt_6_1_2"));
    EXPECT_EQ(model_to_json(game_no_1g(4)), golden("no_1g_4"));
    EXPECT_EQ(model_to_json(game_lc2(4, {2, 3})), golden("lc2_4_2_3"));
    EXPECT_EQ(model_to_json(game_lc3(3, {1, 2})), golden("lc3_3_1_2"));
}

TEST(GadgetsAtl, AlternatingStructureShape) {
    auto t = build_alt_structure(6, 1, 2);
    EXPECT_EQ(t.num_states(), 7);
    EXPECT_TRUE(is_self_looping(t));
    EXPECT_TRUE(is_proper(t, {}));
    EXPECT_THROW(build_alt_structure(4, 1, 1), GadgetError);
    EXPECT_THROW(build_alt_structure(4, 1, 3), GadgetError);
}

TEST(GadgetsAtl, Atl2WitnessProperties) {
    for (int l = 1; l <= 3; ++l)
        for (auto &h : all_subsets(l)) {
            auto f = witness_atl2(l, h);
            EXPECT_TRUE(eval_model(f, build_alt_structure(2 * l, 1, 2))) << print_formula(f);
            EXPECT_FALSE(eval_model(f, build_alt_structure(2 * l + 1, 2, 1))) << print_formula(f);
            EXPECT_FALSE(eval_model(f, game_no_1g(static_cast<int>(h.size()) + 1))) << print_formula(f);
            EXPECT_TRUE(eval_model(f, game_no_empty_g())) << print_formula(f);
            for (auto &c : all_subsets(l)) EXPECT_EQ(eval_model(f, game_lc2(l, c)), meets(h, c));
        }
}

TEST(GadgetsAtl, Atl2PadsTheHittingSet) {
    auto b = gen_atl2(HitInstance{3, {{2}}, 2});
    ASSERT_TRUE(b.witness);
    EXPECT_EQ(static_cast<int>(size(*b.witness)), 3 * 3 + 1 - 2);
    EXPECT_EQ(b.instance.bound, 3 * 3 + 1 - 2);
    EXPECT_TRUE(separates(*b.witness, b.instance));
}

TEST(GadgetsAtl, Atl3Intersection) {
    for (int l = 1; l <= 3; ++l)
        for (auto &h : all_subsets(l)) {
            auto f = witness_atl3(l, h);
            for (auto &c : all_subsets(l)) EXPECT_EQ(eval_model(f, game_lc3(l, c)), meets(h, c));
            for (int k = 1; k <= l; ++k)
                EXPECT_EQ(!eval_model(f, build_alt_structure(2 * (k + 1), 1, 3, 3)),
                          static_cast<int>(h.size()) <= k);
        }
}

TEST(GadgetsAtl, Atl3BoundOverride) {
    HitInstance h{3, {{1, 2}, {3}}, 2};
    EXPECT_EQ(gen_atl3(h, UnaryOp::Eventually).instance.bound, 7);
    EXPECT_EQ(gen_atl3(h, UnaryOp::Eventually, 9).instance.bound, 9);
    auto g = gen_atl3(h, UnaryOp::Globally);
    auto f = gen_atl3(h, UnaryOp::Eventually);
    EXPECT_EQ(g.instance.positives.size(), f.instance.negatives.size());
    EXPECT_TRUE(separates(*g.witness, g.instance));
    EXPECT_TRUE(separates(*f.witness, f.instance));
}

// ------------------------------------------------------------ wrapper

TEST(Wrapper, OrAddsSingletonStructures) {
    auto base = gen_ctl_x(HitInstance{2, {{1}, {2}}, 2});
    auto w = wrap_binary(base, BinLogicOp::Or, 2);
    auto &in = w.instance;
    EXPECT_EQ(in.bound, base.instance.bound + 4);
    EXPECT_EQ(print_fragment(in.fragment), "U=X,F,G;Bt=;Bl=or;n=2");
    EXPECT_EQ(in.positives.size(), base.instance.positives.size() + 2);
    EXPECT_EQ(in.negatives.size(), base.instance.negatives.size() + 1);
    auto last_neg = std::get<Kripke>(in.negatives.back());
    EXPECT_EQ(last_neg.labels[0], Label{});
    EXPECT_EQ(std::get<Kripke>(in.positives.back()).labels[0], Label{"p2"});
    EXPECT_EQ(print_formula(wrap_chain(BinLogicOp::Or, 2)), "p1 | p2");
    ASSERT_TRUE(w.witness);
    EXPECT_TRUE(separates(*w.witness, in));
}

TEST(Wrapper, AndRelabelsWithPrimedPropositions) {
    auto base = gen_ctl_x(HitInstance{2, {{1}, {2}}, 2});
    auto w = wrap_binary(base, BinLogicOp::And, 2);
    auto first = std::get<Kripke>(w.instance.positives.front());
    for (auto &l : first.labels) {
        EXPECT_TRUE(l.count("p1") && l.count("p2"));
    }
    EXPECT_TRUE(separates(*w.witness, w.instance));
}

TEST(Wrapper, RejectsBadInput) {
    auto base = gen_ctl_x(HitInstance{2, {{1}, {2}}, 2});
    EXPECT_THROW(wrap_binary(base, BinLogicOp::Implies, 1), GadgetError);
    EXPECT_THROW(wrap_binary(base, BinLogicOp::Or, 0), GadgetError);
    auto ltl = gen_ltl(Family::Or, HitInstance{2, {{1}, {2}}, 2});
    EXPECT_THROW(wrap_binary(ltl, BinLogicOp::Or, 1), GadgetError);
}
