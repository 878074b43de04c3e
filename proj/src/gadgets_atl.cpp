#include "tlearn/gadgets.hpp"

#include <map>

namespace tlearn {

namespace {

const std::vector<std::string> kProp0{"p", "pbar"};
const Label kP{"p"};
const Label kPbar{"pbar"};

std::string idx(const std::string &base, int i) { return base + std::to_string(i); }

Kripke kripke_chain(int len) {
    Kripke k;
    k.props = kProp0;
    for (int i = 0; i < len; ++i) k.add_state(idx("s", i), i + 1 == len ? kP : kPbar);
    for (int i = 0; i + 1 < len; ++i) k.succ[i] = {i + 1};
    k.succ[len - 1] = {len - 1};
    k.initial = {0};
    return k;
}

void require_proper_single(const Model &m) {
    if (!is_proper(m, {})) throw GadgetError("reach: structure must be proper over {p, pbar}");
    auto check = [](const auto &x) {
        if (x.initial.size() != 1) throw GadgetError("reach: structure must have one initial state");
    };
    std::visit([&](const auto &x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (!std::is_same_v<T, UPWord>) check(x);
    }, m);
}

FragmentSpec unary_only(std::set<UnaryOp> u) {
    FragmentSpec fs;
    fs.unary = std::move(u);
    fs.bin_budget = 0;
    return fs;
}

} // namespace

// ------------------------------------------------------------------ CTL

Kripke kripke_lc(int l, const std::set<int> &c) {
    Kripke k;
    k.props = kProp0;
    for (int i = 1; i <= l + 1; ++i) k.add_state(idx("lose", i), kPbar);
    int win = k.add_state("win", kP);
    for (int i = 1; i <= l; ++i) {
        k.succ[i - 1] = {i};
        if (c.count(i)) k.succ[i - 1].push_back(win);
    }
    k.succ[l] = {l};
    k.succ[win] = {win};
    k.initial = {0};
    return k;
}

Kripke kripke_exists_gt(int l, int k) {
    if (k < 0 || k > l) throw GadgetError("K_exists>k: need 0 <= k <= l");
    Kripke m;
    m.props = kProp0;
    std::map<std::pair<int, int>, int> id;
    for (int i = 0; i <= k; ++i)
        for (int j = i + 1; j <= l + 1; ++j)
            id[{i, j}] = m.add_state("lose" + std::to_string(i) + "_" + std::to_string(j), kPbar);
    int win = m.add_state("win", kP);
    for (int i = 0; i <= k; ++i) {
        for (int j = i + 1; j <= l; ++j) {
            int q = id[{i, j}];
            m.succ[q] = {id[{i, j + 1}], i < k ? id[{i + 1, j + 1}] : win};
        }
        int last = id[{i, l + 1}];
        m.succ[last] = {last};
    }
    m.succ[win] = {win};
    m.initial = {id[{0, 1}]};
    return m;
}

Kripke kripke_pos(int l) { return kripke_chain(l + 1); }
Kripke kripke_neg(int l) { return kripke_chain(l + 2); }

Kripke kripke_pbar() {
    Kripke k;
    k.props = kProp0;
    int q = k.add_state("q", kPbar);
    k.succ[q] = {q};
    k.initial = {q};
    return k;
}

Formula witness_ctl_x(int l, const std::set<int> &h) {
    Formula f = prop("p");
    for (int i = l; i >= 1; --i) f = temp(UnaryOp::Next, f, h.count(i) ? Coalition(1) : Coalition(0));
    return f;
}

ReductionBundle gen_ctl_x(const HitInstance &h, bool with_not) {
    validate_hit(h);
    ReductionBundle b;
    b.family = Family::CtlX;
    b.source = h;
    auto &in = b.instance;
    in.logic = Logic::CTL;
    in.props = kProp0;
    std::set<UnaryOp> u{UnaryOp::Next, UnaryOp::Eventually, UnaryOp::Globally};
    if (with_not) u.insert(UnaryOp::Not);
    in.fragment = unary_only(u);
    for (auto &c : h.sets) in.positives.push_back(kripke_lc(h.l, c));
    in.positives.push_back(kripke_pos(h.l));
    in.negatives = {kripke_exists_gt(h.l, h.k), kripke_neg(h.l)};
    in.bound = h.l + 1;
    if (auto sol = solve_hit_brute(h)) b.witness = witness_ctl_x(h.l, *sol);
    return b;
}

ReductionBundle gen_reach_ctl(const Kripke &k, UnaryOp h) {
    if (h != UnaryOp::Eventually && h != UnaryOp::Globally) throw GadgetError("reach: operator must be F or G");
    require_valid(k);
    require_proper_single(k);
    ReductionBundle b;
    b.family = Family::ReachCtl;
    auto &in = b.instance;
    in.logic = Logic::CTL;
    in.props = kProp0;
    in.fragment = unary_only({h});
    in.bound = 2;
    Kripke kk = k;
    kk.props = kProp0;
    bool f = h == UnaryOp::Eventually;
    in.positives = {f ? Model(kk) : Model(kripke_pbar())};
    in.negatives = {f ? Model(kripke_pbar()) : Model(kk)};
    Formula reach = temp(UnaryOp::Eventually, prop("p"), Coalition(1));
    if (eval_model(reach, kk))
        b.witness = f ? reach : temp(UnaryOp::Globally, prop("pbar"), Coalition(0));
    return b;
}

// ------------------------------------------------------------------ ATL

TurnBased build_alt_structure(int l, int i, int j, int agents) {
    if (l < 1) throw GadgetError("alternating structure: l must be positive");
    if (i == j || i < 1 || j < 1 || i > agents || j > agents)
        throw GadgetError("alternating structure: need distinct agents i, j");
    TurnBased t;
    t.props = kProp0;
    t.agents = agents;
    for (int h = 1; h <= l; ++h) t.add_state(idx("q", h), kPbar, h % 2 ? j : i);
    int win = t.add_state("win", kP, 1);
    for (int h = 1; h <= l; ++h) {
        t.edge(h - 1, h - 1);
        t.edge(h - 1, h > 1 ? h - 2 : win);
    }
    t.edge(win, win);
    t.initial = {l - 1};
    return t;
}

TurnBased game_p(int agents) { return trivial_structure(kP, agents, kProp0); }
TurnBased game_pbar(int agents) { return trivial_structure(kPbar, agents, kProp0); }

TurnBased game_no_empty_g() {
    TurnBased t;
    t.props = kProp0;
    int q = t.add_state("q", kP, 1);
    int lose = t.add_state("lose", kPbar, 1);
    t.edge(q, q);
    t.edge(q, lose);
    t.edge(lose, lose);
    t.initial = {q};
    return t;
}

TurnBased game_no_1g(int k) {
    if (k < 1) throw GadgetError("T_no1G: k must be positive");
    TurnBased t;
    t.props = kProp0;
    for (int h = 1; h <= 2 * k; ++h) t.add_state(idx("q", h), kPbar, h % 2 ? 2 : 1);
    int win = t.add_state("win", kP, 1);
    int lose = t.add_state("lose", kPbar, 1);
    for (int h = 1; h <= k; ++h) {
        int even = 2 * h - 1, odd = 2 * h - 2;
        t.edge(even, even);
        t.edge(even, odd);
        t.edge(odd, odd);
        t.edge(odd, h > 1 ? odd - 1 : win);
        t.edge(odd, lose);
    }
    t.edge(win, win);
    t.edge(lose, lose);
    t.initial = {2 * k - 1};
    return t;
}

namespace {

// Shared shape of T_{l,C,2} and T_{l,C,3}; `tester` owns the Test states.
TurnBased game_lc(int l, const std::set<int> &c, int tester) {
    if (l < 1) throw GadgetError("T_{l,C}: l must be positive");
    TurnBased t;
    t.props = kProp0;
    t.agents = tester;
    std::vector<int> q(2 * l + 1), alt(2 * l + 1);
    std::map<int, int> test;
    for (int h = 1; h <= 2 * l; ++h) q[h] = t.add_state(idx("q", h), kPbar, h % 2 ? 2 : 1);
    for (int h = 1; h <= 2 * l; ++h) alt[h] = t.add_state(idx("alt", h), kPbar, h % 2 ? 2 : 1);
    for (int i : c) test[i] = t.add_state(idx("test", 2 * i - 1), kPbar, tester);
    int lose = t.add_state("lose", kPbar, 1);
    int win = t.add_state("win", kP, 1);
    for (int i = 1; i <= l; ++i) {
        t.edge(q[2 * i], q[2 * i]);
        t.edge(q[2 * i], q[2 * i - 1]);
        if (c.count(i)) t.edge(q[2 * i], test[i]);
        t.edge(q[2 * i - 1], q[2 * i - 1]);
        t.edge(q[2 * i - 1], i > 1 ? q[2 * (i - 1)] : lose);
    }
    for (int h = 1; h <= 2 * l; ++h) {
        t.edge(alt[h], alt[h]);
        t.edge(alt[h], h > 1 ? alt[h - 1] : win);
    }
    for (auto [i, s] : test) {
        t.edge(s, s);
        if (tester == 2) t.edge(s, lose);
        t.edge(s, i > 1 ? alt[2 * (i - 1)] : win);
    }
    t.edge(lose, lose);
    t.edge(win, win);
    t.initial = {q[2 * l]};
    return t;
}

} // namespace

TurnBased game_lc2(int l, const std::set<int> &c) { return game_lc(l, c, 2); }
TurnBased game_lc3(int l, const std::set<int> &c) { return game_lc(l, c, 3); }

TurnBased game_choice(int owner) {
    TurnBased t;
    t.props = kProp0;
    int q = t.add_state("q", kPbar, owner);
    int sink = t.add_state("sink", kP, 1);
    t.edge(q, q);
    t.edge(q, sink);
    t.edge(sink, sink);
    t.initial = {q};
    return t;
}

ReductionBundle gen_reach_atl2(const TurnBased &t, UnaryOp h) {
    if (h != UnaryOp::Eventually && h != UnaryOp::Globally) throw GadgetError("reach: operator must be F or G");
    require_valid(t);
    if (t.agents != 2) throw GadgetError("reach: structure must have two agents");
    require_proper_single(t);
    ReductionBundle b;
    b.family = Family::ReachAtl2;
    auto &in = b.instance;
    in.logic = Logic::ATL;
    in.agents = 2;
    in.props = kProp0;
    in.fragment = unary_only({h});
    in.bound = 2;
    TurnBased tt = t;
    tt.props = kProp0;
    std::vector<Model> pos{tt, game_choice(1)}, neg{game_pbar(2), game_choice(2)};
    bool f = h == UnaryOp::Eventually;
    in.positives = f ? pos : neg;
    in.negatives = f ? neg : pos;
    Formula reach = temp(UnaryOp::Eventually, prop("p"), coalition_of({1}));
    if (eval_model(reach, tt))
        b.witness = f ? reach : temp(UnaryOp::Globally, prop("pbar"), coalition_of({2}));
    return b;
}

Formula witness_atl2(int l, const std::set<int> &h) {
    Formula f = prop("p");
    for (int i = 1; i <= l; ++i) {
        f = temp(UnaryOp::Eventually, f, coalition_of({2}));
        if (!h.count(i)) f = temp(UnaryOp::Globally, f, coalition_of({1}));
        f = temp(UnaryOp::Eventually, f, coalition_of({1}));
    }
    return f;
}

ReductionBundle gen_atl2(const HitInstance &h) {
    validate_hit(h);
    ReductionBundle b;
    b.family = Family::Atl2;
    b.source = h;
    auto &in = b.instance;
    in.logic = Logic::ATL;
    in.agents = 2;
    in.props = kProp0;
    in.fragment = unary_only({UnaryOp::Eventually, UnaryOp::Globally});
    in.positives = {game_p(2), game_no_empty_g(), build_alt_structure(2 * h.l, 1, 2)};
    for (auto &c : h.sets) in.positives.push_back(game_lc2(h.l, c));
    in.negatives = {game_no_1g(h.k + 1), build_alt_structure(2 * h.l + 1, 2, 1)};
    in.bound = 3 * h.l + 1 - h.k;
    if (auto sol = solve_hit_brute(h)) {
        std::set<int> hp = *sol;
        for (int j = 1; j <= h.l && static_cast<int>(hp.size()) < h.k; ++j) hp.insert(j);
        b.witness = witness_atl2(h.l, hp);
    }
    return b;
}

Formula witness_atl3(int l, const std::set<int> &h, UnaryOp op) {
    if (op == UnaryOp::Eventually) {
        Formula f = prop("p");
        for (int i = 1; i <= l; ++i) {
            f = temp(op, f, h.count(i) ? coalition_of({2, 3}) : coalition_of({2}));
            f = temp(op, f, coalition_of({1}));
        }
        return f;
    }
    if (op != UnaryOp::Globally) throw GadgetError("ATL(3) witness: operator must be F or G");
    // negation of the F witness pushed inward
    Formula f = prop("pbar");
    for (int i = 1; i <= l; ++i) {
        f = temp(op, f, h.count(i) ? coalition_of({1}) : coalition_of({1, 3}));
        f = temp(op, f, coalition_of({2, 3}));
    }
    return f;
}

ReductionBundle gen_atl3(const HitInstance &h, UnaryOp op, std::optional<int> bound) {
    validate_hit(h);
    if (op != UnaryOp::Eventually && op != UnaryOp::Globally) throw GadgetError("ATL(3): operator must be F or G");
    ReductionBundle b;
    b.family = Family::Atl3;
    b.source = h;
    auto &in = b.instance;
    in.logic = Logic::ATL;
    in.agents = 3;
    in.props = kProp0;
    in.fragment = unary_only({op});
    std::vector<Model> pos{game_p(3), build_alt_structure(2 * h.l, 1, 2, 3)};
    for (auto &c : h.sets) pos.push_back(game_lc3(h.l, c));
    std::vector<Model> neg{build_alt_structure(2 * (h.l + 1), 1, 2, 3), build_alt_structure(2 * (h.k + 1), 1, 3, 3)};
    bool f = op == UnaryOp::Eventually;
    in.positives = f ? pos : neg;
    in.negatives = f ? neg : pos;
    in.bound = bound.value_or(2 * h.l + 1);
    if (auto sol = solve_hit_brute(h)) b.witness = witness_atl3(h.l, *sol, op);
    return b;
}

} // namespace tlearn
