#include "tlearn/checker.hpp"

#include <algorithm>
#include <functional>

namespace tlearn {

Arena make_arena(const Model &m) {
    Arena a;
    std::visit(
        [&](const auto &x) {
            using T = std::decay_t<decltype(x)>;
            a.props = x.props;
            if constexpr (std::is_same_v<T, UPWord>) {
                if (x.v.empty()) throw CheckError("word loop is empty");
                a.type = Arena::Type::Lasso;
                a.labels = x.u;
                a.labels.insert(a.labels.end(), x.v.begin(), x.v.end());
                a.n = static_cast<int>(a.labels.size());
                a.succ.resize(a.n);
                for (int q = 0; q + 1 < a.n; ++q) a.succ[q] = {q + 1};
                a.succ[a.n - 1] = {static_cast<int>(x.u.size())};
                a.initial = {0};
            } else if constexpr (std::is_same_v<T, Kripke>) {
                require_valid(x);
                a.type = Arena::Type::TurnBased;
                a.n = x.num_states();
                a.labels = x.labels;
                a.succ = x.succ;
                a.owner.assign(a.n, 1);
                a.initial = x.initial;
            } else if constexpr (std::is_same_v<T, TurnBased>) {
                require_valid(x);
                a.type = Arena::Type::TurnBased;
                a.agents = x.agents;
                a.n = x.num_states();
                a.labels = x.labels;
                a.succ = x.succ;
                a.owner = x.owner;
                a.initial = x.initial;
            } else {
                require_valid(x);
                a.type = Arena::Type::Concurrent;
                a.agents = x.agents;
                a.n = x.num_states();
                a.labels = x.labels;
                a.d = x.d;
                a.delta = x.delta;
                a.initial = x.initial;
            }
        },
        m);
    return a;
}

namespace {

void check_coalition(const Arena &a, Coalition c) {
    if (c & ~coalition_all(a.agents))
        throw CheckError("coalition index out of range for " + std::to_string(a.agents) + " agents");
}

bool can_force(const Arena &a, int q, Coalition c, const StateSet &z) {
    const auto &d = a.d[q];
    int k = a.agents;
    std::vector<int> stride(k, 1);
    for (int i = 1; i < k; ++i) stride[i] = stride[i - 1] * d[i - 1];
    std::vector<int> ours, theirs;
    for (int i = 0; i < k; ++i) (c >> i & 1 ? ours : theirs).push_back(i);
    // odometer over the coalition's joint actions
    std::vector<int> mine(ours.size(), 0);
    while (true) {
        int base = 0;
        for (std::size_t j = 0; j < ours.size(); ++j) base += mine[j] * stride[ours[j]];
        std::vector<int> other(theirs.size(), 0);
        bool all_in = true;
        while (all_in) {
            int idx = base;
            for (std::size_t j = 0; j < theirs.size(); ++j) idx += other[j] * stride[theirs[j]];
            if (!z[a.delta[q][idx]]) all_in = false;
            std::size_t j = 0;
            while (j < theirs.size() && ++other[j] == d[theirs[j]]) other[j++] = 0;
            if (j == theirs.size()) break;
        }
        if (all_in) return true;
        std::size_t j = 0;
        while (j < ours.size() && ++mine[j] == d[ours[j]]) mine[j++] = 0;
        if (j == ours.size()) return false;
    }
}

StateSet lfp(const Arena &a, const std::function<StateSet(const StateSet &)> &step) {
    StateSet z(a.n);
    while (true) {
        StateSet next = step(z);
        if (next == z) return z;
        z = std::move(next);
    }
}

StateSet gfp(const Arena &a, const std::function<StateSet(const StateSet &)> &step) {
    StateSet z(a.n);
    z.set();
    while (true) {
        StateSet next = step(z);
        if (next == z) return z;
        z = std::move(next);
    }
}

} // namespace

StateSet cpre(const Arena &a, Coalition c, const StateSet &z) {
    StateSet out(a.n);
    switch (a.type) {
    case Arena::Type::Lasso:
        for (int q = 0; q < a.n; ++q) out[q] = z[a.succ[q][0]];
        break;
    case Arena::Type::TurnBased:
        for (int q = 0; q < a.n; ++q) {
            const auto &s = a.succ[q];
            if (c >> (a.owner[q] - 1) & 1)
                out[q] = std::any_of(s.begin(), s.end(), [&](int r) { return z[r]; });
            else
                out[q] = std::all_of(s.begin(), s.end(), [&](int r) { return z[r]; });
        }
        break;
    case Arena::Type::Concurrent:
        for (int q = 0; q < a.n; ++q) out[q] = can_force(a, q, c, z);
        break;
    }
    return out;
}

StateSet sat_prop(const Arena &a, const std::string &name, PropMode mode) {
    if (mode == PropMode::Strict && std::find(a.props.begin(), a.props.end(), name) == a.props.end())
        throw CheckError("undeclared proposition '" + name + "'");
    StateSet out(a.n);
    for (int q = 0; q < a.n; ++q) out[q] = a.labels[q].count(name) > 0;
    return out;
}

namespace {

Coalition resolve(const Arena &a, std::optional<Coalition> c) {
    if (!c) {
        if (a.type != Arena::Type::Lasso) throw CheckError("path formula evaluated on a branching model");
        return 0;
    }
    check_coalition(a, *c);
    return *c;
}

StateSet until(const Arena &a, Coalition c, const StateSet &x, const StateSet &y) {
    return lfp(a, [&](const StateSet &z) { return y | (x & cpre(a, c, z)); });
}

} // namespace

StateSet sat_unary(const Arena &a, UnaryOp op, std::optional<Coalition> c, const StateSet &z) {
    if (op == UnaryOp::Not) return ~z;
    Coalition co = resolve(a, c);
    switch (op) {
    case UnaryOp::Next: return cpre(a, co, z);
    case UnaryOp::Eventually:
        return lfp(a, [&](const StateSet &w) { return z | cpre(a, co, w); });
    case UnaryOp::Globally:
        return gfp(a, [&](const StateSet &w) { return z & cpre(a, co, w); });
    default: return z;
    }
}

StateSet sat_logic(BinLogicOp op, const StateSet &x, const StateSet &y) {
    switch (op) {
    case BinLogicOp::Or: return x | y;
    case BinLogicOp::And: return x & y;
    case BinLogicOp::Implies: return ~x | y;
    case BinLogicOp::ImpliedBy: return x | ~y;
    case BinLogicOp::Iff: return ~(x ^ y);
    case BinLogicOp::NotOr: return ~(x | y);
    case BinLogicOp::NotAnd: return ~(x & y);
    case BinLogicOp::NotImplies: return x & ~y;
    case BinLogicOp::NotImpliedBy: return ~x & y;
    case BinLogicOp::NotIff: return x ^ y;
    }
    return x;
}

StateSet sat_temp2(const Arena &a, BinTempOp op, std::optional<Coalition> c, const StateSet &x,
                   const StateSet &y) {
    Coalition co = resolve(a, c);
    if (!c) {
        // word clauses: R = !(!x U !y), W = (x U y) | G x, M = (x R y) & F x
        switch (op) {
        case BinTempOp::Until: return until(a, 0, x, y);
        case BinTempOp::Release: return ~until(a, 0, ~x, ~y);
        case BinTempOp::WeakUntil:
            return until(a, 0, x, y) | sat_unary(a, UnaryOp::Globally, std::nullopt, x);
        case BinTempOp::MightyRelease:
            return ~until(a, 0, ~x, ~y) & sat_unary(a, UnaryOp::Eventually, std::nullopt, x);
        }
    }
    switch (op) {
    case BinTempOp::Until: return until(a, co, x, y);
    case BinTempOp::Release:
        return gfp(a, [&](const StateSet &z) { return y & (x | cpre(a, co, z)); });
    case BinTempOp::WeakUntil:
        return gfp(a, [&](const StateSet &z) { return y | (x & cpre(a, co, z)); });
    case BinTempOp::MightyRelease:
        return lfp(a, [&](const StateSet &z) { return (x & y) | (y & cpre(a, co, z)); });
    }
    return x;
}

StateSet sat(const Arena &a, const Formula &f, PropMode mode, SatCache *cache) {
    SatCache local;
    SatCache &memo = cache ? *cache : local;
    std::function<StateSet(const Formula &)> go = [&](const Formula &g) -> StateSet {
        auto it = memo.find(g);
        if (it != memo.end()) return it->second;
        StateSet r;
        switch (g->kind) {
        case Kind::Prop: r = sat_prop(a, g->name, mode); break;
        case Kind::Not: r = ~go(g->left); break;
        case Kind::TempUnary: r = sat_unary(a, g->unary_op(), g->coal, go(g->left)); break;
        case Kind::LogicBinary: r = sat_logic(g->logic_op(), go(g->left), go(g->right)); break;
        case Kind::TempBinary: r = sat_temp2(a, g->temp_op(), g->coal, go(g->left), go(g->right)); break;
        }
        memo.emplace(g, r);
        return r;
    };
    return go(f);
}

bool eval_arena(const Formula &f, const Arena &a, PropMode mode) {
    StateSet s = sat(a, f, mode);
    return std::all_of(a.initial.begin(), a.initial.end(), [&](int q) { return s[q]; });
}

bool eval_ltl(const Formula &f, const UPWord &w, PropMode mode) {
    if (f->mode == Mode::State) throw CheckError("eval_ltl expects a coalition-free formula");
    return eval_arena(f, make_arena(w), mode);
}

bool eval_state(const Formula &f, const Model &m, int q, PropMode mode) {
    Arena a = make_arena(m);
    if (q < 0 || q >= a.n) throw CheckError("state index out of range");
    return sat(a, f, mode)[q];
}

bool eval_model(const Formula &f, const Model &m, PropMode mode) {
    return eval_arena(f, make_arena(m), mode);
}

// ---------------------------------------------------------------- oracle

namespace {

StateSet oracle_sat(const Formula &f, const TurnBased &t);

StateSet oracle_temporal(UnaryOp op, Coalition c, const StateSet &target, const TurnBased &t) {
    int n = t.num_states();
    std::vector<int> controlled;
    for (int q = 0; q < n; ++q)
        if (c >> (t.owner[q] - 1) & 1) controlled.push_back(q);
    std::vector<int> choice(controlled.size(), 0);
    StateSet win(n);
    while (true) {
        std::vector<std::vector<int>> next(n);
        for (int q = 0; q < n; ++q) next[q] = t.succ[q];
        for (std::size_t j = 0; j < controlled.size(); ++j)
            next[controlled[j]] = {t.succ[controlled[j]][choice[j]]};
        for (int q = 0; q < n; ++q) {
            if (win[q]) continue;
            bool ok = true;
            if (op == UnaryOp::Next) {
                for (int r : next[q]) ok = ok && target[r];
            } else {
                // states reachable from q, restricted to the avoid region for F
                std::vector<int> seen(n, 0), stack{q};
                std::vector<int> order;
                seen[q] = 1;
                while (!stack.empty()) {
                    int s = stack.back();
                    stack.pop_back();
                    order.push_back(s);
                    if (op == UnaryOp::Eventually && target[s]) continue;
                    for (int r : next[s])
                        if (!seen[r]) {
                            seen[r] = 1;
                            stack.push_back(r);
                        }
                }
                if (op == UnaryOp::Globally) {
                    for (int s : order) ok = ok && target[s];
                } else {
                    // a T-avoiding infinite path exists iff the reachable non-T part has a cycle
                    std::vector<int> indeg(n, 0), alive(n, 0);
                    for (int s : order)
                        if (!target[s]) alive[s] = 1;
                    for (int s : order)
                        if (alive[s])
                            for (int r : next[s])
                                if (alive[r]) ++indeg[r];
                    std::vector<int> queue;
                    for (int s : order)
                        if (alive[s] && indeg[s] == 0) queue.push_back(s);
                    int removed = 0;
                    while (!queue.empty()) {
                        int s = queue.back();
                        queue.pop_back();
                        ++removed;
                        for (int r : next[s])
                            if (alive[r] && --indeg[r] == 0) queue.push_back(r);
                    }
                    int total = 0;
                    for (int s : order) total += alive[s];
                    ok = removed == total;
                }
            }
            if (ok) win[q] = true;
        }
        std::size_t j = 0;
        while (j < controlled.size() && ++choice[j] == static_cast<int>(t.succ[controlled[j]].size()))
            choice[j++] = 0;
        if (j == controlled.size()) break;
    }
    return win;
}

StateSet oracle_sat(const Formula &f, const TurnBased &t) {
    int n = t.num_states();
    switch (f->kind) {
    case Kind::Prop: {
        StateSet s(n);
        for (int q = 0; q < n; ++q) s[q] = t.labels[q].count(f->name) > 0;
        return s;
    }
    case Kind::Not: return ~oracle_sat(f->left, t);
    case Kind::LogicBinary:
        return sat_logic(f->logic_op(), oracle_sat(f->left, t), oracle_sat(f->right, t));
    case Kind::TempUnary:
        if (!f->coal) throw CheckError("oracle: temporal operator without coalition");
        if (*f->coal & ~coalition_all(t.agents)) throw CheckError("coalition index out of range");
        return oracle_temporal(f->unary_op(), *f->coal, oracle_sat(f->left, t), t);
    case Kind::TempBinary: throw CheckError("oracle: binary temporal operators unsupported");
    }
    return StateSet(n);
}

} // namespace

bool oracle_eval_turn_based(const Formula &f, const TurnBased &t, int q) {
    if (t.num_states() > 8) throw CheckError("oracle: structure exceeds 8 states");
    require_valid(t);
    if (q < 0 || q >= t.num_states()) throw CheckError("state index out of range");
    return oracle_sat(f, t)[q];
}

} // namespace tlearn
