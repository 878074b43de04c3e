#include <algorithm>

#include <gtest/gtest.h>

#include "tlearn/canon.hpp"
#include "tlearn/checker.hpp"
#include "tlearn/gadgets.hpp"
#include "tlearn/sampling.hpp"

using namespace tlearn;

namespace {

const std::vector<std::string> kPq{"p", "q"};

OpSequence random_ltl_prefix(Rng &rng, const std::vector<UnaryOp> &ops, int max_len) {
    OpSequence s;
    int n = uniform(rng, 0, max_len);
    for (int i = 0; i < n; ++i) s.push_back(op_ltl(ops[uniform(rng, 0, static_cast<int>(ops.size()) - 1)]));
    return s;
}

OpSequence random_ctl_prefix(Rng &rng, bool with_not, int max_len) {
    OpSequence s;
    int n = uniform(rng, 0, max_len);
    for (int i = 0; i < n; ++i) {
        if (with_not && coin(rng, 0.25)) s.push_back(op_not());
        else s.push_back(op_atl(coin(rng) ? UnaryOp::Eventually : UnaryOp::Globally, uniform(rng, 0, 1)));
    }
    return s;
}

} // namespace

TEST(Canon, UnaryStreamForEventually) {
    auto fs = ltl_unif_enumerate({"p"}, {UnaryOp::Eventually}, {}, 0, 2);
    std::vector<std::string> got;
    for (auto &f : fs) got.push_back(print_formula(f));
    EXPECT_EQ(got, (std::vector<std::string>{"p", "F p"}));
}

TEST(Canon, UnaryStreamGrowsLinearly) {
    std::size_t prev = 0;
    for (int b = 1; b <= 8; ++b) {
        auto n = ltl_unif_enumerate({"p"}, {UnaryOp::Next, UnaryOp::Eventually, UnaryOp::Globally}, {}, 0, b).size();
        EXPECT_GE(n, prev);
        EXPECT_LE(n, static_cast<std::size_t>(8 * b));
        prev = n;
    }
}

TEST(Canon, PrefixRoundTrip) {
    auto f = parse_formula("! <1>F <2>G p");
    auto [qt, body] = split_prefix(f);
    ASSERT_EQ(qt.size(), 3u);
    EXPECT_EQ(qt[0], op_not());
    EXPECT_EQ(qt[1], op_atl(UnaryOp::Eventually, 1));
    EXPECT_TRUE(equal(apply_prefix(qt, body), f));
    EXPECT_EQ(print_sequence(qt), "!<1>F <2>G");
}

TEST(CanonProperty, LtlCanonicalPrefixIsEquivalent) {
    Rng rng(29);
    const std::vector<UnaryOp> ops{UnaryOp::Not, UnaryOp::Next, UnaryOp::Eventually, UnaryOp::Globally};
    std::set<UnaryOp> u(ops.begin(), ops.end());
    auto stream = seqqt_ltl(u, 12);
    FormulaShape sh;
    sh.props = kPq;
    sh.depth = 2;
    for (int i = 0; i < 300; ++i) {
        auto qt = random_ltl_prefix(rng, ops, 7);
        auto c = ltl_canonicalize_prefix(qt, u);
        EXPECT_LE(c.size(), qt.size());
        EXPECT_EQ(ltl_canonicalize_prefix(c, u), c);
        EXPECT_NE(std::find(stream.begin(), stream.end(), c), stream.end()) << print_sequence(qt);
        auto body = random_formula(rng, sh);
        auto w = random_word(rng, kPq);
        EXPECT_EQ(eval_ltl(apply_prefix(qt, body), w), eval_ltl(apply_prefix(c, body), w))
            << print_sequence(qt) << " vs " << print_sequence(c);
    }
}

TEST(CanonProperty, UnnegRemovesNegationWithoutGrowth) {
    Rng rng(31);
    for (int i = 0; i < 300; ++i) {
        int k = uniform(rng, 1, 3);
        OpSequence qt;
        int n = uniform(rng, 0, 6);
        for (int j = 0; j < n; ++j) {
            if (coin(rng, 0.3)) qt.push_back(op_not());
            else qt.push_back(op_atl(static_cast<UnaryOp>(uniform(rng, 1, 3)), random_coalition(rng, k)));
        }
        for (int x : {0, 1}) {
            auto [out, y] = unneg(qt, x, k);
            EXPECT_LE(out.size(), qt.size());
            EXPECT_TRUE(std::none_of(out.begin(), out.end(), [](const PrefixOp &o) { return o.op == UnaryOp::Not; }));
            (void)y;
        }
    }
}

TEST(Canon, DualIsAnInvolution) {
    for (int k = 1; k <= 3; ++k)
        for (Coalition c = 0; c < (1u << k); ++c)
            for (auto h : {UnaryOp::Next, UnaryOp::Eventually, UnaryOp::Globally}) {
                auto o = op_atl(h, c);
                EXPECT_EQ(dual(dual(o, k), k), o);
            }
    EXPECT_EQ(dual(op_atl(UnaryOp::Eventually, 1), 2), op_atl(UnaryOp::Globally, 2));
}

TEST(Canon, DominatingQuantifiers) {
    EXPECT_EQ(dom_f(Quant::Forall, Quant::Exists), Quant::Exists);
    EXPECT_EQ(dom_f(Quant::Forall, Quant::Forall), Quant::Forall);
    EXPECT_EQ(dom_g(Quant::Exists, Quant::Forall), Quant::Forall);
    EXPECT_EQ(dom_g(Quant::Exists, Quant::Exists), Quant::Exists);
}

TEST(Canon, CtlPrefixClassCounts) {
    EXPECT_EQ(ctl_nox_prefixes({UnaryOp::Eventually, UnaryOp::Globally}).size(), 63u);
    EXPECT_EQ(ctl_nox_prefixes().size(), 126u);
    EXPECT_EQ(ctl_nox_prefixes({UnaryOp::Eventually}).size(), 3u);
    EXPECT_EQ(ctl_nox_prefixes({UnaryOp::Not, UnaryOp::Globally}).size(), 126u);
    EXPECT_EQ(ctl_nox_bound(0, {UnaryOp::Eventually, UnaryOp::Globally}), 8);
    EXPECT_EQ(ctl_nox_bound(0, {UnaryOp::Eventually, UnaryOp::Globally, UnaryOp::Not}), 9);
    EXPECT_EQ(ctl_nox_bound(1, {UnaryOp::Eventually, UnaryOp::Globally, UnaryOp::Not}), 2 * 9 + 8 + 1);
    EXPECT_THROW(ctl_nox_prefixes({UnaryOp::Next}), std::invalid_argument);
}

TEST(CanonProperty, CtlClassKeysAreSound) {
    Rng rng(37);
    FormulaShape sh;
    sh.props = kPq;
    sh.agents = 1;
    sh.unary = {UnaryOp::Eventually, UnaryOp::Globally};
    sh.depth = 2;
    for (int i = 0; i < 400; ++i) {
        auto a = random_ctl_prefix(rng, true, 7), b = random_ctl_prefix(rng, true, 7);
        if (ctl_nox_key(a) != ctl_nox_key(b)) continue;
        auto body = random_formula(rng, sh);
        auto k = random_kripke(rng, kPq, uniform(rng, 1, 5));
        auto ar = make_arena(k);
        EXPECT_EQ(sat(ar, apply_prefix(a, body)), sat(ar, apply_prefix(b, body)))
            << print_sequence(a, Style::Ctl) << " vs " << print_sequence(b, Style::Ctl);
    }
    for (int i = 0; i < 300; ++i) {
        auto a = random_ctl_prefix(rng, true, 8);
        auto reps = ctl_nox_prefixes();
        auto it = std::find_if(reps.begin(), reps.end(),
                               [&](const OpSequence &r) { return ctl_nox_key(r) == ctl_nox_key(a); });
        ASSERT_NE(it, reps.end());
        EXPECT_LE(it->size(), a.size());
        auto body = random_formula(rng, sh);
        auto ar = make_arena(random_kripke(rng, kPq, uniform(rng, 1, 5)));
        EXPECT_EQ(sat(ar, apply_prefix(a, body)), sat(ar, apply_prefix(*it, body)));
    }
}

TEST(Canon, QuantifierAlternationsArePairwiseDistinct) {
    Rng rng(41);
    for (auto h : {UnaryOp::Eventually, UnaryOp::Globally}) {
        auto seqs = atl2_quant_alt(h, 3);
        std::vector<TurnBased> pool;
        for (int i = 0; i < 400; ++i) pool.push_back(random_turn_based(rng, {"p"}, 2, uniform(rng, 2, 6)));
        for (int l = 1; l <= 8; ++l)
            for (auto [i, j] : {std::pair{1, 2}, std::pair{2, 1}}) {
                auto t = build_alt_structure(l, i, j);
                pool.push_back(t);
                for (auto &lab : t.labels) lab = lab.count("p") ? Label{"pbar"} : Label{"p"};
                pool.push_back(t);
            }
        for (std::size_t a = 0; a < seqs.size(); ++a)
            for (std::size_t b = a + 1; b < seqs.size(); ++b) {
                auto fa = apply_prefix(seqs[a], prop("p")), fb = apply_prefix(seqs[b], prop("p"));
                bool split = std::any_of(pool.begin(), pool.end(), [&](const TurnBased &t) {
                    auto ar = make_arena(t);
                    return sat(ar, fa) != sat(ar, fb);
                });
                EXPECT_TRUE(split) << print_formula(fa) << " vs " << print_formula(fb);
            }
    }
}

TEST(Canon, SketchInstantiation) {
    auto sk = atl2_sketches({BinLogicOp::Or}, UnaryOp::Eventually, 1, 5);
    ASSERT_FALSE(sk.empty());
    for (auto &s : sk) {
        std::vector<std::string> fill(s.holes, "p");
        auto f = instantiate(s, fill);
        EXPECT_LE(size(f), 5u);
        EXPECT_LE(bin_count(f), 1u);
        EXPECT_FALSE(props(f).count(kHole));
    }
    EXPECT_THROW(instantiate(sk.front(), {}), std::invalid_argument);
}
