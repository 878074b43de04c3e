#include "tlearn/selftest.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>

#include "tlearn/canon.hpp"
#include "tlearn/checker.hpp"
#include "tlearn/gadgets.hpp"
#include "tlearn/learner.hpp"
#include "tlearn/sampling.hpp"

namespace tlearn {

Tier parse_tier(const std::string &s) {
    if (s == "quick") return Tier::Quick;
    if (s == "full") return Tier::Full;
    throw std::invalid_argument("unknown tier '" + s + "' (quick or full)");
}

const char *tier_name(Tier t) { return t == Tier::Quick ? "quick" : "full"; }

namespace {

const char *const kTitles[kNumCriteria] = {
    "ltl round-trips",
    "iff round-trip",
    "ctl-x round-trip",
    "atl2 round-trip",
    "atl3 round-trips",
    "ltl to ctl lifting",
    "binary wrapper",
    "rewrite soundness",
    "checker vs oracle",
    "structural metrics",
    "specialized learners",
};

constexpr std::size_t kMaxNotes = 12;

struct Tally {
    CriterionResult &r;

    void check(bool ok, const std::function<std::string()> &what) {
        ++r.checks;
        if (ok) return;
        ++r.mismatches;
        if (r.notes.size() < kMaxNotes) r.notes.push_back(what());
    }
    void note(std::string s) { r.notes.push_back(std::move(s)); }
};

int pick(Tier t, int quick, int full) { return t == Tier::Quick ? quick : full; }

std::string show_hit(const HitInstance &h) {
    std::ostringstream os;
    os << "l=" << h.l << " C=";
    for (std::size_t i = 0; i < h.sets.size(); ++i) {
        if (i) os << ';';
        bool first = true;
        for (int x : h.sets[i]) {
            os << (first ? "" : ",") << x;
            first = false;
        }
    }
    os << " k=" << h.k;
    return os.str();
}

std::string show_coset(const CosetInstance &c) {
    std::ostringstream os;
    os << "A=";
    for (std::size_t i = 0; i < c.a.size(); ++i) {
        if (i) os << '/';
        for (int v : c.a[i]) os << v;
    }
    os << " y=";
    for (int v : c.y) os << v;
    os << " k=" << c.k;
    return os.str();
}

bool positive(const LearnResult &r) { return r.verdict == Verdict::Positive; }

std::vector<HitInstance> exhaustive_hits(int lmax, int max_sets) {
    std::vector<HitInstance> out;
    for (int l = 1; l <= lmax; ++l)
        for (auto &fam : covering_families(l, max_sets))
            for (int k = 1; k <= l; ++k) out.push_back({l, fam, k});
    return out;
}

// Budgets below l keep negative sources in the seeded pools.
HitInstance small_k(Rng &rng, HitInstance h) {
    h.k = uniform(rng, 1, std::max(1, h.l - 1));
    return h;
}

// Witness of a bundle separates its instance within the bound whenever the source is positive.
void check_witness(Tally &t, const ReductionBundle &b, bool oracle, const std::string &tag) {
    if (!oracle) return;
    t.check(b.witness && separates(*b.witness, b.instance) && size(*b.witness) <= (std::size_t)b.instance.bound,
            [&] {
                return tag + ": witness " + (b.witness ? print_formula(*b.witness) : std::string("missing")) +
                       " does not separate within B=" + std::to_string(b.instance.bound);
            });
}

// ------------------------------------------------------------------ 1

void crit_ltl(Tally &t, Tier tier, Rng &rng) {
    const Family fams[] = {Family::Or,        Family::And,           Family::NotAnd, Family::NotOr,
                           Family::WeakUntil, Family::MightyRelease, Family::Until,  Family::Release};
    auto pool = exhaustive_hits(3, 3);
    int extra = pick(tier, 10, 100);
    for (int i = 0; i < extra; ++i) pool.push_back(random_hit(rng, 4, 3));
    int pos = 0;
    for (auto &h : pool) {
        bool oracle = solve_hit_brute(h).has_value();
        pos += oracle;
        for (Family f : fams) {
            auto b = gen_ltl(f, h);
            auto r = learn_generic(b.instance);
            std::string tag = std::string(family_name(f)) + " " + show_hit(h);
            t.check(positive(r) == oracle, [&] {
                return tag + ": learner " + verdict_name(r.verdict) + ", oracle " + (oracle ? "positive" : "negative");
            });
            check_witness(t, b, oracle, tag);
        }
    }
    t.note(std::to_string(pool.size()) + " hitting-set sources x 8 families, " + std::to_string(pos) + " positive");
}

// ------------------------------------------------------------------ 2

void crit_iff(Tally &t, Tier tier, Rng &rng) {
    std::vector<CosetInstance> pool;
    int m = pick(tier, 2, 3);
    for (int n = 1; n <= m; ++n)
        for (int l = 1; l <= m; ++l)
            for (int bits = 0; bits < (1 << (n * l)); ++bits)
                for (int y = 0; y < (1 << n); ++y)
                    for (int k = 1; k <= l; ++k) {
                        CosetInstance c;
                        c.a.assign(n, std::vector<int>(l));
                        for (int i = 0; i < n; ++i)
                            for (int j = 0; j < l; ++j) c.a[i][j] = bits >> (i * l + j) & 1;
                        for (int i = 0; i < n; ++i) c.y.push_back(y >> i & 1);
                        c.k = k;
                        pool.push_back(std::move(c));
                    }
    int extra = pick(tier, 10, 100);
    for (int i = 0; i < extra; ++i) pool.push_back(random_coset(rng, 4, 4));
    int pos = 0;
    for (auto &c : pool) {
        bool oracle = solve_cw_brute(c).has_value();
        pos += oracle;
        auto b = gen_ltl_iff(c);
        auto r = learn_generic(b.instance);
        t.check(positive(r) == oracle, [&] {
            return show_coset(c) + ": learner " + verdict_name(r.verdict) + ", oracle " +
                   (oracle ? "positive" : "negative");
        });
        check_witness(t, b, oracle, "iff " + show_coset(c));
    }
    t.note(std::to_string(pool.size()) + " coset sources, " + std::to_string(pos) + " positive");
}

// ------------------------------------------------------------------ 3

void crit_ctl_x(Tally &t, Tier tier, Rng &) {
    auto pool = exhaustive_hits(pick(tier, 3, 4), 3);
    int pos = 0;
    for (auto &h : pool) {
        bool oracle = solve_hit_brute(h).has_value();
        pos += oracle;
        auto b0 = gen_ctl_x(h, false);
        auto b1 = gen_ctl_x(h, true);
        auto r0 = learn_generic(b0.instance);
        auto r1 = learn_generic(b1.instance);
        t.check(positive(r0) == oracle && positive(r1) == oracle, [&] {
            return show_hit(h) + ": {X,F,G} " + verdict_name(r0.verdict) + ", {X,F,G,!} " +
                   verdict_name(r1.verdict) + ", oracle " + (oracle ? "positive" : "negative");
        });
        check_witness(t, b0, oracle, "ctl-x " + show_hit(h));
    }
    t.note(std::to_string(pool.size()) + " sources x 2 fragments, " + std::to_string(pos) + " positive");
}

// ------------------------------------------------------------------ 4

void crit_atl2(Tally &t, Tier tier, Rng &rng) {
    auto pool = exhaustive_hits(2, 3);
    std::size_t exhaustive = pool.size();
    int extra = pick(tier, 5, 30);
    for (int i = 0; i < extra; ++i) pool.push_back(small_k(rng, random_hit(rng, 3, 3)));
    int alt_agree = 0, pos = 0;
    for (auto &h : pool) {
        bool oracle = solve_hit_brute(h).has_value();
        pos += oracle;
        auto b = gen_atl2(h);
        auto r = learn_atl2_promising(b.instance);
        t.check(positive(r) == oracle, [&] {
            return show_hit(h) + ": learner " + verdict_name(r.verdict) + ", oracle " +
                   (oracle ? "positive" : "negative");
        });
        check_witness(t, b, oracle, "atl2 " + show_hit(h));
        // N-structure variant T^{2l+1:1,2} named in the correctness argument
        auto alt = b.instance;
        alt.negatives.back() = build_alt_structure(2 * h.l + 1, 1, 2);
        if (positive(learn_atl2_promising(alt)) == oracle) ++alt_agree;
    }
    t.note(std::to_string(exhaustive) + " exhaustive (l=2) + " + std::to_string(extra) + " seeded (l=3), " + std::to_string(pos) + " positive");
    t.note("variant with T^{2l+1:1,2} as second negative agrees with the oracle on " +
           std::to_string(alt_agree) + "/" + std::to_string(pool.size()));
}

// ------------------------------------------------------------------ 5

void crit_atl3(Tally &t, Tier tier, Rng &rng) {
    int count = pick(tier, 10, 50), pos = 0;
    for (int i = 0; i < count; ++i) {
        auto h = small_k(rng, random_hit(rng, uniform(rng, 1, 3), 3));
        bool oracle = solve_hit_brute(h).has_value();
        pos += oracle;
        for (UnaryOp op : {UnaryOp::Eventually, UnaryOp::Globally}) {
            auto b = gen_atl3(h, op);
            auto r = learn_generic(b.instance);
            std::string tag = std::string(op == UnaryOp::Eventually ? "F " : "G ") + show_hit(h);
            t.check(positive(r) == oracle, [&] {
                return tag + ": learner " + verdict_name(r.verdict) + ", oracle " + (oracle ? "positive" : "negative");
            });
            check_witness(t, b, oracle, "atl3 " + tag);
        }
    }
    t.note(std::to_string(count) + " seeded sources x {F,G}, " + std::to_string(pos) + " positive");
}

// ------------------------------------------------------------------ 6

void crit_lift(Tally &t, Tier tier, Rng &rng) {
    const Family fams[] = {Family::Or,        Family::And,           Family::NotAnd, Family::NotOr,
                           Family::WeakUntil, Family::MightyRelease, Family::Until,  Family::Release};
    int count = pick(tier, 30, 100);
    for (int i = 0; i < count; ++i) {
        auto h = random_hit(rng, uniform(rng, 1, 3), 3);
        Family f = fams[uniform(rng, 0, 7)];
        auto b = gen_ltl(f, h);
        auto lifted = lift_ltl_to_ctl(b);
        auto r0 = learn_generic(b.instance);
        auto r1 = learn_generic(lifted.instance);
        t.check(r0.verdict == r1.verdict, [&] {
            return std::string(family_name(f)) + " " + show_hit(h) + ": LTL " + verdict_name(r0.verdict) +
                   ", lifted " + verdict_name(r1.verdict);
        });
    }
    FormulaShape sh;
    sh.props = {"p", "q"};
    sh.bin_temp = {BinTempOp::Until, BinTempOp::Release, BinTempOp::WeakUntil, BinTempOp::MightyRelease};
    sh.bin_logic = {BinLogicOp::Or, BinLogicOp::And, BinLogicOp::Implies, BinLogicOp::Iff};
    int pairs = pick(tier, 100, 500);
    for (int i = 0; i < pairs; ++i) {
        sh.depth = uniform(rng, 1, 4);
        auto f = random_formula(rng, sh);
        auto w = random_word(rng, sh.props);
        bool a = eval_ltl(f, w);
        bool b = eval_model(ltl_to_state(f), kripke_from_word(w));
        t.check(a == b, [&] { return "w |= " + print_formula(f) + " differs on K_w"; });
    }
    t.note(std::to_string(count) + " lifted instances, " + std::to_string(pairs) + " (formula, word) pairs");
}

// ------------------------------------------------------------------ 7

void crit_wrap(Tally &t, Tier tier, Rng &rng) {
    int count = pick(tier, 6, 30);
    const BinLogicOp ops[] = {BinLogicOp::Or, BinLogicOp::And, BinLogicOp::NotAnd, BinLogicOp::Iff};
    for (int i = 0; i < count; ++i) {
        auto h = small_k(rng, random_hit(rng, uniform(rng, 1, 3), 3));
        auto base = gen_ctl_x(h);
        auto rb = learn_generic(base.instance);
        for (auto op : ops)
            for (int n = 1; n <= 2; ++n) {
                auto w = wrap_binary(base, op, n);
                auto rw = learn_generic(w.instance);
                std::string tag = std::string(logic_name(op)) + " n=" + std::to_string(n) + " " + show_hit(h);
                t.check(rw.verdict == rb.verdict, [&] {
                    return tag + ": base " + verdict_name(rb.verdict) + ", wrapped " + verdict_name(rw.verdict);
                });
                check_witness(t, w, positive(rb), "wrap " + tag);
            }
    }
    t.note(std::to_string(count) + " CTL(X) bundles x 4 operators x n in {1,2}");
}

// ------------------------------------------------------------------ 8

Quant random_quant(Rng &rng) { return coin(rng) ? Quant::Exists : Quant::Forall; }

PrefixOp ctl_op(UnaryOp h, Quant q) { return op_atl(h, q == Quant::Exists ? 1 : 0); }

Formula xs(int k, Formula f) {
    for (int i = 0; i < k; ++i) f = temp(UnaryOp::Next, f);
    return f;
}

bool all_equal(const Arena &a, const std::vector<Formula> &fs) {
    SatCache cache;
    auto z = sat(a, fs[0], PropMode::Strict, &cache);
    for (std::size_t i = 1; i < fs.size(); ++i)
        if (sat(a, fs[i], PropMode::Strict, &cache) != z) return false;
    return true;
}

std::string show_all(const std::vector<Formula> &fs, Style style = Style::Atl) {
    std::string s;
    for (auto &f : fs) s += (s.empty() ? "" : "  vs  ") + print_formula(f, style);
    return s;
}

FormulaShape atl_shape(int agents) {
    FormulaShape sh;
    sh.props = {"p", "q"};
    sh.agents = agents;
    sh.depth = 2;
    return sh;
}

Model random_game(Rng &rng, int agents, bool allow_cgs) {
    const std::vector<std::string> props{"p", "q"};
    int n = uniform(rng, 1, 5);
    if (allow_cgs && coin(rng)) return random_cgs(rng, props, agents, n);
    return random_turn_based(rng, props, agents, n);
}

void crit_rewrite(Tally &t, Tier tier, Rng &rng) {
    const int evals = pick(tier, 50, 200);
    const std::vector<std::string> props{"p", "q"};
    using Suite = std::function<void(int, std::vector<Formula> &, Model &)>;
    struct Named {
        const char *name;
        Suite gen;
        Style style = Style::Atl;
    };
    FormulaShape ltl;
    ltl.props = props;
    ltl.depth = 2;
    FormulaShape ltl_full = ltl;
    ltl_full.bin_temp = {BinTempOp::Until, BinTempOp::Release, BinTempOp::WeakUntil, BinTempOp::MightyRelease};
    FormulaShape ctl = atl_shape(1);

    std::vector<Named> suites;
    suites.push_back({"equiv_ltl", [&](int e, std::vector<Formula> &fs, Model &m) {
                          auto f = random_formula(rng, ltl);
                          int k = uniform(rng, 0, 3);
                          auto F = [](Formula x) { return temp(UnaryOp::Eventually, x); };
                          auto G = [](Formula x) { return temp(UnaryOp::Globally, x); };
                          switch (e % 6) {
                          case 0: fs = {F(xs(k, f)), xs(k, F(f))}; break;
                          case 1: fs = {G(xs(k, f)), xs(k, G(f))}; break;
                          case 2: fs = {F(F(f)), F(f)}; break;
                          case 3: fs = {G(G(f)), G(f)}; break;
                          case 4: fs = {F(G(F(f))), G(F(f))}; break;
                          default: fs = {G(F(G(f))), F(G(f))}; break;
                          }
                          m = random_word(rng, props);
                      }});
    suites.push_back({"equiv_temp", [&](int e, std::vector<Formula> &fs, Model &m) {
                          auto f1 = random_formula(rng, ltl_full);
                          auto f2 = random_formula(rng, ltl_full);
                          switch (e % 7) {
                          case 0: fs = {f1, temp(UnaryOp::Next, f1)}; break;
                          case 1: fs = {f1, temp(UnaryOp::Eventually, f1)}; break;
                          case 2: fs = {f1, temp(UnaryOp::Globally, f1)}; break;
                          case 3: fs = {f2, temp2(BinTempOp::Until, f1, f2)}; break;
                          case 4: fs = {f2, temp2(BinTempOp::Release, f1, f2)}; break;
                          case 5: fs = {logic(BinLogicOp::Or, f1, f2), temp2(BinTempOp::WeakUntil, f1, f2)}; break;
                          default:
                              fs = {logic(BinLogicOp::And, f1, f2), temp2(BinTempOp::MightyRelease, f1, f2)};
                              break;
                          }
                          m = make_word(props, {}, {random_label(rng, props)});
                      }});
    suites.push_back({"equiv_negation_turn_based", [&](int, std::vector<Formula> &fs, Model &m) {
                          int k = uniform(rng, 1, 3);
                          auto f = random_formula(rng, atl_shape(k));
                          const UnaryOp hs[] = {UnaryOp::Next, UnaryOp::Eventually, UnaryOp::Globally};
                          auto o = op_atl(hs[uniform(rng, 0, 2)], random_coalition(rng, k));
                          fs = {neg(apply_prefix({o}, f)), apply_prefix({dual(o, k)}, neg(f))};
                          m = random_turn_based(rng, props, k, uniform(rng, 1, 6));
                      }});
    suites.push_back({"dominating_quantifiers", [&](int e, std::vector<Formula> &fs, Model &m) {
                          int k = uniform(rng, 1, 3);
                          Coalition big = random_coalition(rng, k);
                          Coalition small = big & random_coalition(rng, k);
                          auto f = random_formula(rng, atl_shape(k));
                          UnaryOp h = e % 2 ? UnaryOp::Globally : UnaryOp::Eventually;
                          auto A = op_atl(h, small), B = op_atl(h, big);
                          fs = {apply_prefix({A, B}, f), apply_prefix({B, A}, f),
                                apply_prefix({h == UnaryOp::Globally ? A : B}, f)};
                          m = random_game(rng, k, true);
                      }});
    suites.push_back({"equiv_ctl", [&](int e, std::vector<Formula> &fs, Model &m) {
                          auto f = random_formula(rng, ctl);
                          Quant q2 = random_quant(rng), q3 = random_quant(rng);
                          UnaryOp h1 = e % 2 ? UnaryOp::Globally : UnaryOp::Eventually;
                          UnaryOp h2 = e % 2 ? UnaryOp::Eventually : UnaryOp::Globally;
                          auto dom1 = h1 == UnaryOp::Eventually ? dom_f : dom_g;
                          auto dom2 = h2 == UnaryOp::Eventually ? dom_f : dom_g;
                          // Q1 = Dom(Q1,Q3) and Q4 = Dom(Q2,Q4)
                          Quant q1 = random_quant(rng), q4 = random_quant(rng);
                          q1 = dom1(q1, q3);
                          q4 = dom2(q2, q4);
                          fs = {apply_prefix({ctl_op(h1, q1), ctl_op(h2, q2), ctl_op(h1, q3), ctl_op(h2, q4)}, f),
                                apply_prefix({ctl_op(h1, q1), ctl_op(h2, q4)}, f)};
                          m = random_kripke(rng, props, uniform(rng, 1, 5));
                      },
                      Style::Ctl});
    suites.push_back({"equiv_ctl_exist_F_forall_G", [&](int e, std::vector<Formula> &fs, Model &m) {
                          auto f = random_formula(rng, ctl);
                          OpSequence qt;
                          int len = uniform(rng, 0, 4);
                          for (int i = 0; i < len; ++i)
                              qt.push_back(ctl_op(coin(rng) ? UnaryOp::Eventually : UnaryOp::Globally,
                                                  random_quant(rng)));
                          auto ef = ctl_op(UnaryOp::Eventually, Quant::Exists);
                          auto ag = ctl_op(UnaryOp::Globally, Quant::Forall);
                          auto outer = e % 2 ? ag : ef, inner = e % 2 ? ef : ag;
                          OpSequence lhs{outer};
                          lhs.insert(lhs.end(), qt.begin(), qt.end());
                          lhs.push_back(inner);
                          fs = {apply_prefix(lhs, f), apply_prefix({outer, inner}, f)};
                          m = random_kripke(rng, props, uniform(rng, 1, 5));
                      },
                      Style::Ctl});
    suites.push_back({"unnegate_unary", [&](int e, std::vector<Formula> &fs, Model &m) {
                          int k = uniform(rng, 1, 3);
                          auto f = random_formula(rng, atl_shape(k));
                          OpSequence qt;
                          int len = uniform(rng, 0, 5);
                          const UnaryOp hs[] = {UnaryOp::Next, UnaryOp::Eventually, UnaryOp::Globally};
                          for (int i = 0; i < len; ++i)
                              qt.push_back(coin(rng, 0.3) ? op_not()
                                                          : op_atl(hs[uniform(rng, 0, 2)], random_coalition(rng, k)));
                          int x = e % 2;
                          auto [qt2, y] = unneg(qt, x, k);
                          bool shape_ok = qt2.size() <= qt.size();
                          for (auto &o : qt2) shape_ok = shape_ok && o.op != UnaryOp::Not;
                          Formula lhs = apply_prefix(qt, f);
                          if (x) lhs = neg(lhs);
                          fs = {lhs, apply_prefix(qt2, y ? neg(f) : f)};
                          if (!shape_ok) fs.push_back(prop("shape-violation"));
                          m = random_turn_based(rng, props, k, uniform(rng, 1, 6));
                      }});
    suites.push_back({"useless_op", [&](int, std::vector<Formula> &fs, Model &m) {
                          int k = uniform(rng, 2, 3);
                          auto f = random_formula(rng, atl_shape(k));
                          fs = {f, temp(UnaryOp::Eventually, f, Coalition(0)),
                                temp(UnaryOp::Globally, f, coalition_all(k))};
                          m = random_turn_based(rng, props, k, uniform(rng, 1, 6), true);
                      }});

    for (auto &s : suites) {
        std::uint64_t before = t.r.mismatches;
        for (int e = 0; e < evals; ++e) {
            std::vector<Formula> fs;
            Model m;
            s.gen(e, fs, m);
            bool ok;
            try {
                ok = all_equal(make_arena(m), fs);
            } catch (const std::exception &) {
                ok = false;
            }
            t.check(ok, [&] { return std::string(s.name) + ": " + show_all(fs, s.style); });
        }
        t.note(std::string(s.name) + ": " + std::to_string(evals) + " evaluations, " +
               std::to_string(t.r.mismatches - before) + " mismatches");
    }
}

// ------------------------------------------------------------------ 9

void crit_checker(Tally &t, Tier tier, Rng &rng) {
    int pairs = pick(tier, 100, 500);
    const std::vector<std::string> props{"p", "q"};
    for (int i = 0; i < pairs; ++i) {
        int k = uniform(rng, 1, 3);
        auto tb = random_turn_based(rng, props, k, uniform(rng, 1, 6));
        auto sh = atl_shape(k);
        sh.depth = uniform(rng, 1, 4);
        auto f = random_formula(rng, sh);
        Model m = tb;
        bool ok = true;
        for (int q = 0; q < tb.num_states(); ++q) ok = ok && eval_state(f, m, q) == oracle_eval_turn_based(f, tb, q);
        t.check(ok, [&] { return "fixpoint and strategy oracle differ on " + print_formula(f); });
    }
    t.note(std::to_string(pairs) + " (structure, formula) pairs, every state compared");
}

// ------------------------------------------------------------------ 10

void crit_metrics(Tally &t, Tier, Rng &) {
    for (int l = 1; l <= 5; ++l)
        for (int mask = 1; mask < (1 << l); ++mask) {
            std::set<int> h;
            for (int i = 0; i < l; ++i)
                if (mask >> i & 1) h.insert(i + 1);
            const int r = static_cast<int>(h.size());
            auto expect = [&](const char *what, const Formula &f, int want) {
                int got = static_cast<int>(size(f));
                t.check(got == want, [&] {
                    return std::string(what) + " l=" + std::to_string(l) + " |H|=" + std::to_string(r) + ": size " +
                           std::to_string(got) + ", expected " + std::to_string(want);
                });
            };
            expect("phi_or", witness_ltl(Family::Or, h, l), 2 * r - 1);
            expect("phi_nand", witness_ltl(Family::NotAnd, h, l, r), 4 * r - 3);
            expect("phi_R", witness_ltl(Family::Release, h, l), 2 * r - 1);
            expect("phi(l,H)", witness_ctl_x(l, h), l + 1);
            expect("phi_atl2", witness_atl2(l, h), 3 * l + 1 - r);
            expect("phi_atl3 F", witness_atl3(l, h, UnaryOp::Eventually), 2 * l + 1);
            expect("phi_atl3 G", witness_atl3(l, h, UnaryOp::Globally), 2 * l + 1);
        }
}

// ------------------------------------------------------------------ 11

template <class T>
T pick_one(Rng &rng, const std::vector<T> &v) {
    return v[uniform(rng, 0, static_cast<int>(v.size()) - 1)];
}

void random_fragment(Rng &rng, LearningInstance &in, const std::vector<UnaryOp> &unary) {
    in.fragment = {};
    for (auto op : unary)
        if (coin(rng)) in.fragment.unary.insert(op);
    const std::vector<BinLogicOp> bl{BinLogicOp::Or, BinLogicOp::And, BinLogicOp::NotAnd, BinLogicOp::Iff};
    int nb = uniform(rng, 0, 2);
    for (int i = 0; i < nb; ++i) in.fragment.bin_logic.insert(pick_one(rng, bl));
    in.fragment.bin_budget = uniform(rng, 0, 1);
    in.bound = uniform(rng, 1, 5);
}

void crit_specialized(Tally &t, Tier tier, Rng &rng) {
    int count = pick(tier, 25, 100);
    const std::vector<std::string> props{"p", "q"};
    auto fill = [&](LearningInstance &in, const std::function<Model()> &gen) {
        in.props = props;
        in.positives.clear();
        in.negatives.clear();
        int np = uniform(rng, 1, 3), nn = uniform(rng, 1, 3);
        for (int i = 0; i < np; ++i) in.positives.push_back(gen());
        for (int i = 0; i < nn; ++i) in.negatives.push_back(gen());
    };
    int pos = 0;
    auto compare = [&](const char *who, const LearningInstance &in, const LearnResult &rs) {
        auto rg = learn_generic(in);
        pos += positive(rg);
        t.check(rs.verdict == rg.verdict, [&] {
            return std::string(who) + " (" + print_fragment(in.fragment) + ", B=" + std::to_string(in.bound) +
                   "): specialized " + verdict_name(rs.verdict) + ", generic " + verdict_name(rg.verdict);
        });
        if (positive(rs))
            t.check(separates(*rs.witness, in) && size(*rs.witness) <= (std::size_t)in.bound,
                    [&] { return std::string(who) + ": witness " + print_formula(*rs.witness) + " invalid"; });
    };
    for (int i = 0; i < count; ++i) {
        LearningInstance in;
        in.logic = Logic::LTL;
        random_fragment(rng, in, {UnaryOp::Not, UnaryOp::Next, UnaryOp::Eventually, UnaryOp::Globally});
        fill(in, [&] { return Model(random_word(rng, props)); });
        compare("learn_ltl_unary", in, learn_ltl_unary(in));
    }
    for (int i = 0; i < count; ++i) {
        LearningInstance in;
        in.logic = Logic::CTL;
        random_fragment(rng, in, {UnaryOp::Not, UnaryOp::Eventually, UnaryOp::Globally});
        fill(in, [&] { return Model(random_kripke(rng, props, uniform(rng, 1, 4))); });
        compare("learn_ctl_noX", in, learn_ctl_noX(in));
    }
    for (int i = 0; i < count; ++i) {
        LearningInstance in;
        in.logic = Logic::ATL;
        in.agents = 2;
        random_fragment(rng, in, {});
        UnaryOp h = coin(rng) ? UnaryOp::Eventually : UnaryOp::Globally;
        in.fragment.unary = {h};
        fill(in, [&] { return Model(random_turn_based(rng, props, 2, uniform(rng, 1, 4))); });
        compare("learn_atl2_single", in, learn_atl2_single(in, h));
    }
    t.note(std::to_string(count) + " seeded instances per learner, " + std::to_string(pos) + " positive overall");
}

using Runner = void (*)(Tally &, Tier, Rng &);
const Runner kRunners[kNumCriteria] = {crit_ltl,  crit_iff,     crit_ctl_x,   crit_atl2,    crit_atl3,       crit_lift,
                                       crit_wrap, crit_rewrite, crit_checker, crit_metrics, crit_specialized};

} // namespace

const char *criterion_title(int id) {
    if (id < 1 || id > kNumCriteria) throw std::out_of_range("criterion id out of range");
    return kTitles[id - 1];
}

CriterionResult run_criterion(int id, Tier tier, std::uint64_t seed) {
    CriterionResult r;
    r.id = id;
    r.title = criterion_title(id);
    std::seed_seq seq{seed, static_cast<std::uint64_t>(id)};
    Rng rng(seq);
    auto t0 = std::chrono::steady_clock::now();
    Tally t{r};
    try {
        kRunners[id - 1](t, tier, rng);
        r.pass = r.mismatches == 0 && r.checks > 0;
    } catch (const std::exception &e) {
        r.pass = false;
        r.notes.push_back(std::string("aborted: ") + e.what());
    }
    r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

std::vector<CriterionResult> run_selftest(Tier tier, std::uint64_t seed, const std::vector<int> &ids) {
    std::vector<int> todo = ids;
    if (todo.empty())
        for (int i = 1; i <= kNumCriteria; ++i) todo.push_back(i);
    std::vector<CriterionResult> out;
    for (int id : todo) out.push_back(run_criterion(id, tier, seed));
    return out;
}

std::string format_result(const CriterionResult &r, bool with_time) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s %2d  %-22s checks=%-7llu mismatches=%llu", r.pass ? "PASS" : "FAIL", r.id,
                  r.title.c_str(), static_cast<unsigned long long>(r.checks),
                  static_cast<unsigned long long>(r.mismatches));
    std::string s = buf;
    if (with_time) s += "  (" + std::to_string(static_cast<long long>(r.elapsed_ms)) + " ms)";
    return s;
}

nlohmann::json criterion_to_json(const CriterionResult &r, bool with_time) {
    nlohmann::json j;
    j["id"] = r.id;
    j["title"] = r.title;
    j["pass"] = r.pass;
    j["checks"] = r.checks;
    j["mismatches"] = r.mismatches;
    j["notes"] = r.notes;
    if (with_time) j["elapsed_ms"] = r.elapsed_ms;
    return j;
}

} // namespace tlearn
