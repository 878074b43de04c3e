#include "tlearn/sampling.hpp"

#include <algorithm>
#include <functional>

namespace tlearn {

int uniform(Rng &rng, int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

bool coin(Rng &rng, double p) {
    return std::bernoulli_distribution(p)(rng);
}

Label random_label(Rng &rng, const std::vector<std::string> &props) {
    Label s;
    for (auto &p : props)
        if (coin(rng)) s.insert(p);
    return s;
}

Coalition random_coalition(Rng &rng, int agents) {
    return static_cast<Coalition>(uniform(rng, 0, (1 << agents) - 1));
}

UPWord random_word(Rng &rng, const std::vector<std::string> &props, int max_part) {
    std::vector<Label> u(uniform(rng, 0, max_part)), v(uniform(rng, 1, max_part));
    for (auto &s : u) s = random_label(rng, props);
    for (auto &s : v) s = random_label(rng, props);
    return make_word(props, std::move(u), std::move(v));
}

namespace {

std::vector<int> random_succ(Rng &rng, int states) {
    std::vector<int> out;
    int m = uniform(rng, 1, std::min(states, 3));
    while (static_cast<int>(out.size()) < m) {
        int t = uniform(rng, 0, states - 1);
        if (std::find(out.begin(), out.end(), t) == out.end()) out.push_back(t);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::string state_name(int q) { return "s" + std::to_string(q); }

} // namespace

Kripke random_kripke(Rng &rng, const std::vector<std::string> &props, int states) {
    Kripke k;
    k.props = props;
    for (int q = 0; q < states; ++q) k.add_state(state_name(q), random_label(rng, props));
    for (int q = 0; q < states; ++q) k.succ[q] = random_succ(rng, states);
    k.initial = {0};
    return k;
}

TurnBased random_turn_based(Rng &rng, const std::vector<std::string> &props, int agents, int states,
                            bool self_looping) {
    TurnBased t;
    t.props = props;
    t.agents = agents;
    for (int q = 0; q < states; ++q) t.add_state(state_name(q), random_label(rng, props), uniform(rng, 1, agents));
    for (int q = 0; q < states; ++q) {
        t.succ[q] = random_succ(rng, states);
        if (self_looping && std::find(t.succ[q].begin(), t.succ[q].end(), q) == t.succ[q].end()) {
            t.succ[q].push_back(q);
            std::sort(t.succ[q].begin(), t.succ[q].end());
        }
    }
    t.initial = {0};
    return t;
}

Cgs random_cgs(Rng &rng, const std::vector<std::string> &props, int agents, int states) {
    Cgs g;
    g.props = props;
    g.agents = agents;
    for (int q = 0; q < states; ++q) {
        g.names.push_back(state_name(q));
        g.labels.push_back(random_label(rng, props));
        std::vector<int> d(agents);
        int profiles = 1;
        for (auto &x : d) profiles *= (x = uniform(rng, 1, 2));
        g.d.push_back(d);
        std::vector<int> delta(profiles);
        for (auto &t : delta) t = uniform(rng, 0, states - 1);
        g.delta.push_back(delta);
    }
    g.initial = {0};
    return g;
}

namespace {

Formula grow(Rng &rng, const FormulaShape &sh, int depth) {
    auto leaf = [&] { return prop(sh.props[uniform(rng, 0, static_cast<int>(sh.props.size()) - 1)]); };
    if (depth == 0 || coin(rng, 0.15)) return leaf();
    auto coal = [&]() -> std::optional<Coalition> {
        if (sh.agents == 0) return std::nullopt;
        return random_coalition(rng, sh.agents);
    };
    while (true) {
        switch (uniform(rng, 0, 3)) {
        case 0:
            if (!sh.negation) break;
            return neg(grow(rng, sh, depth - 1));
        case 1:
            if (sh.unary.empty()) break;
            {
                auto op = sh.unary[uniform(rng, 0, static_cast<int>(sh.unary.size()) - 1)];
                auto c = coal();
                return temp(op, grow(rng, sh, depth - 1), c);
            }
        case 2:
            if (sh.bin_logic.empty()) break;
            {
                auto op = sh.bin_logic[uniform(rng, 0, static_cast<int>(sh.bin_logic.size()) - 1)];
                auto l = grow(rng, sh, depth - 1);
                return logic(op, l, grow(rng, sh, depth - 1));
            }
        default:
            if (sh.bin_temp.empty()) break;
            {
                auto op = sh.bin_temp[uniform(rng, 0, static_cast<int>(sh.bin_temp.size()) - 1)];
                auto c = coal();
                auto l = grow(rng, sh, depth - 1);
                return temp2(op, l, grow(rng, sh, depth - 1), c);
            }
        }
        if (!sh.negation && sh.unary.empty() && sh.bin_logic.empty() && sh.bin_temp.empty()) return leaf();
    }
}

} // namespace

Formula random_formula(Rng &rng, const FormulaShape &shape) {
    if (shape.props.empty()) throw std::invalid_argument("random_formula: no propositions");
    return grow(rng, shape, shape.depth);
}

std::vector<std::vector<std::set<int>>> covering_families(int l, int max_sets) {
    const int full = (1 << l) - 1;
    std::vector<std::vector<std::set<int>>> out;
    std::vector<int> pick;
    auto to_set = [](int mask) {
        std::set<int> s;
        for (int i = 0; mask >> i; ++i)
            if (mask >> i & 1) s.insert(i + 1);
        return s;
    };
    std::function<void(int, int)> rec = [&](int next, int cover) {
        if (!pick.empty() && cover == full) {
            std::vector<std::set<int>> fam;
            for (int m : pick) fam.push_back(to_set(m));
            out.push_back(std::move(fam));
        }
        if (static_cast<int>(pick.size()) == max_sets) return;
        for (int m = next; m <= full; ++m) {
            pick.push_back(m);
            rec(m + 1, cover | m);
            pick.pop_back();
        }
    };
    rec(1, 0);
    return out;
}

HitInstance random_hit(Rng &rng, int l, int max_sets) {
    const int full = (1 << l) - 1;
    HitInstance h;
    h.l = l;
    h.k = uniform(rng, 1, l);
    while (true) {
        std::set<int> masks;
        int m = uniform(rng, 1, std::min(max_sets, full)), cover = 0;
        while (static_cast<int>(masks.size()) < m) masks.insert(uniform(rng, 1, full));
        for (int x : masks) cover |= x;
        if (cover != full) continue;
        h.sets.clear();
        for (int x : masks) {
            std::set<int> s;
            for (int i = 0; i < l; ++i)
                if (x >> i & 1) s.insert(i + 1);
            h.sets.push_back(s);
        }
        return h;
    }
}

CosetInstance random_coset(Rng &rng, int n, int l) {
    CosetInstance c;
    c.a.assign(n, std::vector<int>(l));
    for (auto &row : c.a)
        for (auto &x : row) x = uniform(rng, 0, 1);
    c.y.resize(n);
    for (auto &x : c.y) x = uniform(rng, 0, 1);
    c.k = uniform(rng, 1, l);
    return c;
}

} // namespace tlearn
