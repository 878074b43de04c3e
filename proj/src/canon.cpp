#include "tlearn/canon.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>

namespace tlearn {

PrefixOp op_not() { return PrefixOp{UnaryOp::Not, std::nullopt}; }
PrefixOp op_ltl(UnaryOp op) { return PrefixOp{op, std::nullopt}; }
PrefixOp op_atl(UnaryOp op, Coalition c) { return PrefixOp{op, c}; }

Formula apply_prefix(const OpSequence &qt, Formula body) {
    for (auto it = qt.rbegin(); it != qt.rend(); ++it) body = temp(it->op, body, it->coal);
    return body;
}

std::pair<OpSequence, Formula> split_prefix(const Formula &f) {
    OpSequence qt;
    Formula g = f;
    while (g->kind == Kind::Not || g->kind == Kind::TempUnary) {
        qt.push_back(PrefixOp{g->unary_op(), g->coal});
        g = g->left;
    }
    return {qt, g};
}

std::string print_sequence(const OpSequence &qt, Style style) {
    if (qt.empty()) return "eps";
    auto f = apply_prefix(qt, prop("x"));
    auto s = print_formula(f, style);
    s.pop_back();
    while (!s.empty() && s.back() == ' ') s.pop_back();
    return s;
}

// ------------------------------------------------------------------ LTL

namespace {

// FG word reduced by FF=F, GG=G, FGF=GF, GFG=FG.
std::string reduce_fg(const std::string &w) {
    std::string blocks;
    for (char c : w)
        if (blocks.empty() || blocks.back() != c) blocks.push_back(c);
    if (blocks.size() <= 1) return blocks;
    return blocks.substr(blocks.size() - 2);
}

struct LtlClass {
    int next = 0;
    std::string fg;
    int parity = 0;
    bool operator<(const LtlClass &o) const {
        return std::tie(next, fg, parity) < std::tie(o.next, o.fg, o.parity);
    }
};

LtlClass step(LtlClass c, UnaryOp op) {
    switch (op) {
    case UnaryOp::Not: c.parity ^= 1; break;
    case UnaryOp::Next: ++c.next; break;
    case UnaryOp::Eventually: c.fg = reduce_fg(c.fg + (c.parity ? 'G' : 'F')); break;
    case UnaryOp::Globally: c.fg = reduce_fg(c.fg + (c.parity ? 'F' : 'G')); break;
    }
    return c;
}

LtlClass ltl_class(const OpSequence &qt) {
    LtlClass c;
    for (auto &o : qt) c = step(c, o.op);
    return c;
}

// Shortest X-free word over u for every reachable (fg, parity) class.
std::map<std::pair<std::string, int>, OpSequence> ltl_class_reps(const std::set<UnaryOp> &u) {
    std::map<std::pair<std::string, int>, OpSequence> reps;
    std::deque<OpSequence> queue{{}};
    reps[{"", 0}] = {};
    static const UnaryOp order[] = {UnaryOp::Eventually, UnaryOp::Globally, UnaryOp::Not};
    while (!queue.empty()) {
        auto cur = queue.front();
        queue.pop_front();
        for (auto op : order) {
            if (!u.count(op)) continue;
            auto next = cur;
            next.push_back(op_ltl(op));
            auto c = ltl_class(next);
            std::pair key{c.fg, c.parity};
            if (reps.count(key)) continue;
            reps[key] = next;
            queue.push_back(next);
        }
    }
    return reps;
}

} // namespace

std::vector<OpSequence> seqqt_ltl(const std::set<UnaryOp> &u, int max_len) {
    std::vector<OpSequence> out;
    auto reps = ltl_class_reps(u);
    std::vector<OpSequence> bodies;
    for (auto &[key, seq] : reps) bodies.push_back(seq);
    std::stable_sort(bodies.begin(), bodies.end(),
                     [](const OpSequence &a, const OpSequence &b) { return a.size() < b.size(); });
    int max_x = u.count(UnaryOp::Next) ? max_len : 0;
    for (int k = 0; k <= max_x; ++k)
        for (auto &b : bodies) {
            if (k + static_cast<int>(b.size()) > max_len) continue;
            OpSequence s(k, op_ltl(UnaryOp::Next));
            s.insert(s.end(), b.begin(), b.end());
            out.push_back(s);
        }
    std::stable_sort(out.begin(), out.end(),
                     [](const OpSequence &a, const OpSequence &b) { return a.size() < b.size(); });
    return out;
}

OpSequence ltl_canonicalize_prefix(const OpSequence &qt, const std::set<UnaryOp> &u) {
    for (auto &o : qt)
        if (!u.count(o.op)) throw std::invalid_argument("prefix uses an operator outside the fragment");
    auto c = ltl_class(qt);
    auto reps = ltl_class_reps(u);
    OpSequence out(c.next, op_ltl(UnaryOp::Next));
    auto &body = reps.at({c.fg, c.parity});
    out.insert(out.end(), body.begin(), body.end());
    return out;
}

Formula ltl_canonicalize(const Formula &f, const std::set<UnaryOp> &u) {
    auto [qt, body] = split_prefix(f);
    Formula inner = body;
    if (body->kind == Kind::LogicBinary)
        inner = logic(body->logic_op(), ltl_canonicalize(body->left, u), ltl_canonicalize(body->right, u));
    else if (body->kind == Kind::TempBinary)
        inner = temp2(body->temp_op(), ltl_canonicalize(body->left, u), ltl_canonicalize(body->right, u),
                      body->coal);
    return apply_prefix(ltl_canonicalize_prefix(qt, u), inner);
}

std::vector<Formula> prefixed_enumerate(const std::vector<OpSequence> &prefixes,
                                        const std::vector<std::string> &props,
                                        const std::set<BinLogicOp> &bl, int n, int max_size) {
    // cores[s][m]: prefix-free formulas of tree size s with m binary nodes
    using Table = std::vector<std::vector<std::vector<Formula>>>;
    Table cores(max_size + 1, std::vector<std::vector<Formula>>(n + 1));
    Table all(max_size + 1, std::vector<std::vector<Formula>>(n + 1));
    for (int s = 1; s <= max_size; ++s) {
        for (int m = 0; m <= n; ++m) {
            if (s == 1 && m == 0)
                for (auto &p : props) cores[1][0].push_back(prop(p));
            if (m >= 1)
                for (auto op : bl)
                    for (int ls = 1; ls + 1 < s; ++ls)
                        for (int lm = 0; lm <= m - 1; ++lm)
                            for (auto &l : all[ls][lm])
                                for (auto &r : all[s - 1 - ls][m - 1 - lm])
                                    cores[s][m].push_back(logic(op, l, r));
            for (auto &qt : prefixes) {
                int cs = s - static_cast<int>(qt.size());
                if (cs < 1) continue;
                for (auto &c : cores[cs][m]) all[s][m].push_back(apply_prefix(qt, c));
            }
        }
    }
    std::vector<Formula> out;
    for (int s = 1; s <= max_size; ++s)
        for (int m = 0; m <= n; ++m) out.insert(out.end(), all[s][m].begin(), all[s][m].end());
    return out;
}

std::vector<Formula> ltl_unif_enumerate(const std::vector<std::string> &props, const std::set<UnaryOp> &u,
                                        const std::set<BinLogicOp> &bl, int n, int max_size) {
    return prefixed_enumerate(seqqt_ltl(u, std::max(0, max_size - 1)), props, bl, n, max_size);
}

// ------------------------------------------------------------ ATL / CTL

PrefixOp dual(const PrefixOp &o, int agents) {
    if (o.op == UnaryOp::Not) return o;
    PrefixOp d = o;
    if (o.op == UnaryOp::Eventually) d.op = UnaryOp::Globally;
    if (o.op == UnaryOp::Globally) d.op = UnaryOp::Eventually;
    if (o.coal) d.coal = coalition_all(agents) & ~*o.coal;
    return d;
}

std::pair<OpSequence, int> unneg(const OpSequence &qt, int x, int agents) {
    OpSequence out;
    for (auto &o : qt) {
        if (o.op == UnaryOp::Not) {
            x = 1 - x;
            continue;
        }
        out.push_back(x ? dual(o, agents) : o);
    }
    return {out, x};
}

Quant dom_f(Quant a, Quant b) {
    return a == Quant::Exists || b == Quant::Exists ? Quant::Exists : Quant::Forall;
}

Quant dom_g(Quant a, Quant b) {
    return a == Quant::Forall || b == Quant::Forall ? Quant::Forall : Quant::Exists;
}

namespace {

struct CtlOp {
    Quant q;
    char h;  // 'F' or 'G'
    bool operator==(const CtlOp &o) const { return q == o.q && h == o.h; }
};

Quant dom(char h, Quant a, Quant b) { return h == 'F' ? dom_f(a, b) : dom_g(a, b); }

std::pair<std::vector<CtlOp>, int> ctl_normal_form(const OpSequence &qt) {
    std::vector<CtlOp> ops;
    int parity = 0;
    for (auto &o : qt) {
        if (o.op == UnaryOp::Not) {
            parity ^= 1;
            continue;
        }
        if (!o.coal || (o.op != UnaryOp::Eventually && o.op != UnaryOp::Globally))
            throw std::invalid_argument("CTL prefix expects quantified F or G");
        Quant q = *o.coal & 1 ? Quant::Exists : Quant::Forall;
        char h = o.op == UnaryOp::Eventually ? 'F' : 'G';
        if (parity) {
            q = q == Quant::Exists ? Quant::Forall : Quant::Exists;
            h = h == 'F' ? 'G' : 'F';
        }
        ops.push_back({q, h});
    }
    const CtlOp ef{Quant::Exists, 'F'}, ag{Quant::Forall, 'G'};
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i + 1 < ops.size() && !changed; ++i)
            if (ops[i].h == ops[i + 1].h) {
                ops[i].q = dom(ops[i].h, ops[i].q, ops[i + 1].q);
                ops.erase(ops.begin() + i + 1);
                changed = true;
            }
        for (std::size_t i = 0; i + 3 < ops.size() && !changed; ++i) {
            char h1 = ops[i].h, h2 = ops[i + 1].h;
            if (h1 == h2 || ops[i + 2].h != h1 || ops[i + 3].h != h2) continue;
            if (ops[i].q == dom(h1, ops[i].q, ops[i + 2].q) &&
                ops[i + 3].q == dom(h2, ops[i + 1].q, ops[i + 3].q)) {
                ops.erase(ops.begin() + i + 1, ops.begin() + i + 3);
                changed = true;
            }
        }
        for (std::size_t i = 0; i < ops.size() && !changed; ++i)
            for (std::size_t j = i + 2; j < ops.size() && !changed; ++j)
                if ((ops[i] == ef && ops[j] == ag) || (ops[i] == ag && ops[j] == ef)) {
                    ops.erase(ops.begin() + i + 1, ops.begin() + j);
                    changed = true;
                }
    }
    return {ops, parity};
}

} // namespace

std::string ctl_nox_key(const OpSequence &qt) {
    auto [ops, parity] = ctl_normal_form(qt);
    std::string key;
    for (auto &o : ops) {
        key += o.q == Quant::Exists ? 'E' : 'A';
        key += o.h;
    }
    key += parity ? "|1" : "|0";
    return key;
}

std::vector<OpSequence> ctl_nox_prefixes(const std::set<UnaryOp> &u, int max_len) {
    for (auto op : u)
        if (op == UnaryOp::Next) throw std::invalid_argument("ctl_nox_prefixes: X not allowed");
    std::vector<PrefixOp> alphabet;
    for (auto op : {UnaryOp::Eventually, UnaryOp::Globally})
        if (u.count(op))
            for (Coalition c : {Coalition(1), Coalition(0)}) alphabet.push_back(op_atl(op, c));
    if (u.count(UnaryOp::Not)) alphabet.push_back(op_not());
    std::map<std::string, OpSequence> reps;
    std::vector<OpSequence> order{{}}, frontier{{}};
    reps[ctl_nox_key({})] = {};
    for (int len = 1; len <= max_len && !frontier.empty(); ++len) {
        std::vector<OpSequence> next;
        for (auto &seq : frontier)
            for (auto &o : alphabet) {
                auto s = seq;
                s.push_back(o);
                auto key = ctl_nox_key(s);
                if (reps.count(key)) continue;
                reps[key] = s;
                next.push_back(s);
                order.push_back(s);
            }
        frontier = std::move(next);
    }
    if (!frontier.empty()) throw std::logic_error("ctl_nox_prefixes: closure not reached within length cap");
    return order;
}

std::vector<OpSequence> ctl_nox_prefixes() {
    return ctl_nox_prefixes({UnaryOp::Eventually, UnaryOp::Globally, UnaryOp::Not});
}

int ctl_nox_bound(int n, const std::set<UnaryOp> &u) {
    std::size_t bp = 0;
    for (auto &s : ctl_nox_prefixes(u)) bp = std::max(bp, s.size());
    int b = static_cast<int>(bp) + 1;
    for (int i = 0; i < n; ++i) b = 2 * b + static_cast<int>(bp) + 1;
    return b;
}

std::vector<OpSequence> atl2_quant_alt(UnaryOp h, int max_len) {
    std::vector<OpSequence> out{{}};
    const Coalition one = 1, two = 2, both = 3;
    if (max_len >= 1) {
        out.push_back({op_atl(h, 0)});
        out.push_back({op_atl(h, both)});
    }
    for (Coalition first : {one, two}) {
        OpSequence s;
        Coalition c = first;
        for (int len = 1; len <= max_len; ++len) {
            s.push_back(op_atl(h, c));
            out.push_back(s);
            c = c == one ? two : one;
        }
    }
    std::stable_sort(out.begin(), out.end(),
                     [](const OpSequence &a, const OpSequence &b) { return a.size() < b.size(); });
    return out;
}

std::vector<Sketch> atl2_sketches(const std::set<BinLogicOp> &bl, UnaryOp h, int n, int max_size) {
    auto quants = atl2_quant_alt(h, std::max(0, max_size - 1));
    // by[m]: sketches with exactly m binary nodes, tree size <= max_size
    std::vector<std::vector<Sketch>> by(n + 1);
    auto hole = prop(kHole);
    for (auto &qt : quants)
        if (static_cast<int>(qt.size()) + 1 <= max_size) by[0].push_back({apply_prefix(qt, hole), 1});
    for (int m = 1; m <= n; ++m)
        for (auto op : bl)
            for (int lm = 0; lm <= m - 1; ++lm)
                for (auto &l : by[lm])
                    for (auto &r : by[m - 1 - lm]) {
                        int core = static_cast<int>(l.tmpl->tree_size + r.tmpl->tree_size) + 1;
                        if (core > max_size) continue;
                        auto body = logic(op, l.tmpl, r.tmpl);
                        for (auto &qt : quants)
                            if (core + static_cast<int>(qt.size()) <= max_size)
                                by[m].push_back({apply_prefix(qt, body), l.holes + r.holes});
                    }
    std::vector<Sketch> out;
    for (auto &v : by) out.insert(out.end(), v.begin(), v.end());
    std::stable_sort(out.begin(), out.end(),
                     [](const Sketch &a, const Sketch &b) { return a.tmpl->tree_size < b.tmpl->tree_size; });
    return out;
}

Formula instantiate(const Sketch &s, const std::vector<std::string> &fill) {
    std::size_t next = 0;
    std::function<Formula(const Formula &)> go = [&](const Formula &f) -> Formula {
        switch (f->kind) {
        case Kind::Prop:
            if (f->name != kHole) return f;
            if (next >= fill.size()) throw std::invalid_argument("instantiate: not enough fillers");
            return prop(fill[next++]);
        case Kind::Not: return neg(go(f->left));
        case Kind::TempUnary: return temp(f->unary_op(), go(f->left), f->coal);
        case Kind::LogicBinary: {
            auto l = go(f->left);
            return logic(f->logic_op(), l, go(f->right));
        }
        case Kind::TempBinary: {
            auto l = go(f->left);
            return temp2(f->temp_op(), l, go(f->right), f->coal);
        }
        }
        return f;
    };
    auto out = go(s.tmpl);
    if (next != fill.size()) throw std::invalid_argument("instantiate: too many fillers");
    return out;
}

} // namespace tlearn
