#include <algorithm>

#include <gtest/gtest.h>

#include "tlearn/gadgets.hpp"
#include "tlearn/learner.hpp"
#include "tlearn/sampling.hpp"

using namespace tlearn;

namespace {

const std::vector<std::string> kPq{"p", "q"};

LearningInstance random_ltl_instance(Rng &rng) {
    LearningInstance in;
    in.logic = Logic::LTL;
    in.props = kPq;
    in.fragment = parse_fragment("U=!,X,F,G;Bt=U;Bl=or,and;n=inf");
    in.bound = uniform(rng, 1, 4);
    int np = uniform(rng, 1, 3), nn = uniform(rng, 1, 3);
    for (int i = 0; i < np; ++i) in.positives.push_back(random_word(rng, kPq));
    for (int i = 0; i < nn; ++i) in.negatives.push_back(random_word(rng, kPq));
    return in;
}

} // namespace

TEST(Learner, ExampleOrInstanceGivesA1) {
    auto b = gen_ltl(Family::Or, HitInstance{4, {{1, 3}, {1, 2, 4}}, 1});
    auto r = learn_generic(b.instance);
    ASSERT_EQ(r.verdict, Verdict::Positive);
    EXPECT_EQ(print_formula(*r.witness), "a1");
}

TEST(Learner, ValidationErrors) {
    LearningInstance in;
    in.logic = Logic::CTL;
    in.props = {"p"};
    in.positives = {make_word({"p"}, {}, {{"p"}})};
    EXPECT_THROW(validate_instance(in), InstanceError);
    in.logic = Logic::LTL;
    EXPECT_NO_THROW(validate_instance(in));
    in.agents = 2;
    EXPECT_THROW(validate_instance(in), InstanceError);
    in.agents = 1;
    in.props = {"p", "q"};
    EXPECT_THROW(validate_instance(in), InstanceError);
    in.props = {"p"};
    in.bound = 0;
    EXPECT_THROW(validate_instance(in), InstanceError);
}

TEST(Learner, JsonRoundTrip) {
    auto b = gen_atl2(HitInstance{2, {{1}, {2}}, 2});
    auto j = instance_to_json(b.instance);
    EXPECT_EQ(instance_to_json(instance_from_json(j)), j);
    j["bogus"] = 1;
    EXPECT_THROW(instance_from_json(j), InstanceError);
}

TEST(Learner, CandidateCapGivesInconclusive) {
    auto b = gen_ltl(Family::NotAnd, HitInstance{3, {{1, 2}, {2, 3}, {1, 3}}, 1});
    LearnOptions opt;
    opt.candidate_cap = 3;
    auto r = learn_generic(b.instance, opt);
    EXPECT_EQ(r.verdict, Verdict::Inconclusive);
}

TEST(LearnerProperty, PositiveVerdictsAreSound) {
    Rng rng(43);
    for (int i = 0; i < 150; ++i) {
        auto in = random_ltl_instance(rng);
        auto r = learn_generic(in);
        if (r.verdict != Verdict::Positive) continue;
        EXPECT_TRUE(separates(*r.witness, in));
        EXPECT_LE(static_cast<int>(size(*r.witness)), in.bound);
        EXPECT_TRUE(in_fragment(*r.witness, in.fragment));
    }
}

TEST(LearnerProperty, MonotoneInBound) {
    Rng rng(47);
    for (int i = 0; i < 100; ++i) {
        auto in = random_ltl_instance(rng);
        auto r = learn_generic(in);
        in.bound += 1;
        auto r2 = learn_generic(in);
        if (r.verdict == Verdict::Positive) EXPECT_EQ(r2.verdict, Verdict::Positive);
    }
}

TEST(LearnerProperty, Deterministic) {
    Rng rng(53);
    for (int i = 0; i < 50; ++i) {
        auto in = random_ltl_instance(rng);
        auto a = learn_generic(in), b = learn_generic(in);
        EXPECT_EQ(a.verdict, b.verdict);
        if (a.witness) EXPECT_TRUE(equal(*a.witness, *b.witness));
        EXPECT_EQ(a.stats.candidates, b.stats.candidates);
    }
}

TEST(LearnerProperty, SeparatorsMentionTheDifference) {
    // words agreeing outside Y can only be told apart by a formula mentioning Y
    Rng rng(59);
    const std::vector<std::string> props{"p", "q", "r"};
    for (int i = 0; i < 150; ++i) {
        auto w = random_word(rng, props);
        std::set<std::string> y;
        for (auto &p : props)
            if (coin(rng, 0.4)) y.insert(p);
        auto w2 = w;
        for (auto *part : {&w2.u, &w2.v})
            for (auto &l : *part)
                for (auto &p : y)
                    if (coin(rng)) {
                        if (l.count(p)) l.erase(p);
                        else l.insert(p);
                    }
        LearningInstance in;
        in.props = props;
        in.fragment = parse_fragment("U=!,X,F,G;Bt=U,R;Bl=or,and;n=inf");
        in.bound = 4;
        in.positives = {w};
        in.negatives = {w2};
        auto r = learn_generic(in);
        if (r.verdict != Verdict::Positive) continue;
        auto used = tlearn::props(*r.witness);
        bool hits = std::any_of(used.begin(), used.end(), [&](const std::string &p) { return y.count(p) > 0; });
        EXPECT_TRUE(hits) << print_formula(*r.witness);
    }
}

TEST(Learner, SpecializedLearnersRejectOutOfDomain) {
    auto b = gen_ctl_x(HitInstance{2, {{1}, {2}}, 1});
    EXPECT_THROW(learn_ctl_noX(b.instance), InstanceError);
    EXPECT_THROW(learn_ltl_unary(b.instance), InstanceError);
    EXPECT_THROW(learn_atl2_single(b.instance, UnaryOp::Eventually), InstanceError);
}

TEST(Learner, ResultJson) {
    LearnResult r;
    r.verdict = Verdict::Positive;
    r.witness = parse_formula("AG EF p");
    auto j = result_to_json(r, Style::Ctl, false);
    EXPECT_EQ(j["verdict"], "positive");
    EXPECT_EQ(j["witness"], "AG EF p");
    EXPECT_EQ(j["size"], 3);
    EXPECT_FALSE(j.contains("stats"));
}
