#include "tlearn/learner.hpp"

#include <chrono>
#include <functional>
#include <unordered_map>

#include "tlearn/canon.hpp"

namespace tlearn {

const char *logic_label(Logic l) {
    switch (l) {
    case Logic::LTL: return "LTL";
    case Logic::CTL: return "CTL";
    case Logic::ATL: return "ATL";
    }
    return "?";
}

Logic parse_logic(const std::string &s) {
    if (s == "LTL" || s == "ltl") return Logic::LTL;
    if (s == "CTL" || s == "ctl") return Logic::CTL;
    if (s == "ATL" || s == "atl") return Logic::ATL;
    throw InstanceError("unknown logic '" + s + "'");
}

const char *verdict_name(Verdict v) {
    switch (v) {
    case Verdict::Positive: return "positive";
    case Verdict::Negative: return "negative";
    case Verdict::Inconclusive: return "inconclusive";
    }
    return "?";
}

void validate_instance(const LearningInstance &inst) {
    if (inst.bound < 1) throw InstanceError("bound must be at least 1");
    if (inst.props.empty()) throw InstanceError("proposition set is empty");
    if (inst.agents < 1 || inst.agents > kMaxAgents) throw InstanceError("agent count out of range");
    if (inst.logic != Logic::ATL && inst.agents != 1) throw InstanceError("LTL and CTL instances have one agent");
    if (inst.fragment.bin_budget && *inst.fragment.bin_budget < 0) throw InstanceError("negative budget");
    auto check = [&](const Model &m) {
        require_valid(m);
        auto k = kind_of(m);
        switch (inst.logic) {
        case Logic::LTL:
            if (k != ModelKind::Word) throw InstanceError("LTL instances take words");
            break;
        case Logic::CTL:
            if (k != ModelKind::Kripke) throw InstanceError("CTL instances take Kripke structures");
            break;
        case Logic::ATL:
            if (k != ModelKind::TurnBased && k != ModelKind::Cgs)
                throw InstanceError("ATL instances take game structures");
            if (model_agents(m) > inst.agents) throw InstanceError("model has more agents than the instance");
            break;
        }
        std::set<std::string> declared(model_props(m).begin(), model_props(m).end());
        for (auto &p : inst.props)
            if (!declared.count(p)) throw InstanceError("model does not declare proposition '" + p + "'");
    };
    for (auto &m : inst.positives) check(m);
    for (auto &m : inst.negatives) check(m);
}

bool separates(const Formula &f, const LearningInstance &inst) {
    for (auto &m : inst.positives)
        if (!eval_model(f, m)) return false;
    for (auto &m : inst.negatives)
        if (eval_model(f, m)) return false;
    return true;
}

// ------------------------------------------------------------ sample view

namespace {

// Disjoint union of all sample models, positives first.
struct Sample {
    Arena arena;
    std::vector<std::vector<int>> pos_init, neg_init;
};

Sample build_sample(const LearningInstance &inst) {
    std::vector<Model> models = inst.positives;
    models.insert(models.end(), inst.negatives.begin(), inst.negatives.end());
    bool concurrent = false;
    for (auto &m : models) concurrent = concurrent || kind_of(m) == ModelKind::Cgs;
    Sample s;
    Arena &u = s.arena;
    u.agents = inst.agents;
    u.props = inst.props;
    u.type = inst.logic == Logic::LTL ? Arena::Type::Lasso
             : concurrent             ? Arena::Type::Concurrent
                                      : Arena::Type::TurnBased;
    for (std::size_t i = 0; i < models.size(); ++i) {
        Model m = models[i];
        if (concurrent) {
            if (auto t = std::get_if<TurnBased>(&m)) m = turn_based_to_cgs(*t);
            if (auto k = std::get_if<Kripke>(&m)) m = kripke_to_cgs(*k);
        }
        Arena a = make_arena(m);
        int off = u.n;
        u.n += a.n;
        u.labels.insert(u.labels.end(), a.labels.begin(), a.labels.end());
        std::vector<int> init;
        for (int q : a.initial) init.push_back(q + off);
        (i < inst.positives.size() ? s.pos_init : s.neg_init).push_back(init);
        if (concurrent) {
            for (int q = 0; q < a.n; ++q) {
                auto d = a.d[q];
                d.resize(inst.agents, 1);
                u.d.push_back(d);
                std::vector<int> t;
                for (int r : a.delta[q]) t.push_back(r + off);
                u.delta.push_back(t);
            }
        } else {
            for (int q = 0; q < a.n; ++q) {
                std::vector<int> t;
                for (int r : a.succ[q]) t.push_back(r + off);
                u.succ.push_back(t);
                u.owner.push_back(a.owner.empty() ? 1 : a.owner[q]);
            }
        }
    }
    return s;
}

bool sample_separates(const Sample &s, const StateSet &z) {
    for (auto &init : s.pos_init)
        for (int q : init)
            if (!z[q]) return false;
    for (auto &init : s.neg_init) {
        bool all = true;
        for (int q : init) all = all && z[q];
        if (all) return false;
    }
    return true;
}

std::vector<std::optional<Coalition>> coalitions_for(const LearningInstance &inst) {
    if (inst.logic == Logic::LTL) return {std::nullopt};
    std::vector<std::optional<Coalition>> out;
    for (Coalition c = 0; c <= coalition_all(inst.agents); ++c) out.push_back(c);
    return out;
}

double ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

struct Cand {
    std::uint32_t sig;
    std::uint16_t bins;
    Kind kind;
    std::uint8_t op;
    std::optional<Coalition> coal;
    std::int32_t left = -1, right = -1;
    std::string name;
};

} // namespace

// --------------------------------------------------------------- generic

LearnResult learn_generic(const LearningInstance &inst, const LearnOptions &opt) {
    validate_instance(inst);
    auto t0 = std::chrono::steady_clock::now();
    Sample sample = build_sample(inst);
    const Arena &a = sample.arena;
    const FragmentSpec &fs = inst.fragment;
    const int budget = fs.bin_budget.value_or(-1);
    auto coals = coalitions_for(inst);

    std::vector<Cand> cands;
    std::vector<std::vector<std::int32_t>> by_size(inst.bound + 1);
    std::vector<StateSet> sigs;
    std::unordered_map<StateSet, std::uint32_t> sig_index;
    std::vector<std::uint16_t> sig_bins;
    LearnResult res;
    std::int32_t found = -1;

    // Returns true when the candidate is a separator.
    auto offer = [&](Cand c, StateSet z, int size) {
        ++res.stats.candidates;
        auto it = sig_index.find(z);
        if (it != sig_index.end()) {
            if (budget < 0 || c.bins >= sig_bins[it->second]) return false;
            sig_bins[it->second] = c.bins;
            c.sig = it->second;
        } else {
            c.sig = static_cast<std::uint32_t>(sigs.size());
            sig_index.emplace(z, c.sig);
            sigs.push_back(std::move(z));
            sig_bins.push_back(c.bins);
        }
        cands.push_back(c);
        by_size[size].push_back(static_cast<std::int32_t>(cands.size() - 1));
        if (sample_separates(sample, sigs[c.sig])) {
            found = static_cast<std::int32_t>(cands.size() - 1);
            return true;
        }
        return false;
    };
    auto capped = [&] { return res.stats.candidates >= opt.candidate_cap; };

    std::vector<UnaryOp> unary;
    for (auto op : {UnaryOp::Not, UnaryOp::Next, UnaryOp::Eventually, UnaryOp::Globally})
        if (fs.allows(op)) unary.push_back(op);

    bool done = false;
    for (int s = 1; s <= inst.bound && !done; ++s) {
        if (s == 1) {
            for (auto &p : inst.props) {
                Cand c{0, 0, Kind::Prop, 0, std::nullopt, -1, -1, p};
                if ((done = offer(c, sat_prop(a, p), 1))) break;
            }
            continue;
        }
        for (auto op : unary) {
            auto cs = op == UnaryOp::Not ? std::vector<std::optional<Coalition>>{std::nullopt} : coals;
            for (auto &co : cs) {
                for (std::size_t i = 0; i < by_size[s - 1].size() && !done; ++i) {
                    if (capped()) break;
                    auto child = by_size[s - 1][i];
                    Cand c{0, cands[child].bins, op == UnaryOp::Not ? Kind::Not : Kind::TempUnary,
                           static_cast<std::uint8_t>(op), co, child, -1, {}};
                    done = offer(c, sat_unary(a, op, co, sigs[cands[child].sig]), s);
                }
                if (done || capped()) break;
            }
            if (done || capped()) break;
        }
        if (budget == 0 || done || capped()) {
            if (capped() && !done) break;
            continue;
        }
        auto binary = [&](Kind kind, std::uint8_t op, std::optional<Coalition> co) {
            for (int ls = 1; ls + 1 < s; ++ls) {
                int rs = s - 1 - ls;
                for (std::size_t i = 0; i < by_size[ls].size(); ++i) {
                    auto l = by_size[ls][i];
                    int lb = cands[l].bins;
                    if (budget >= 0 && lb + 1 > budget) continue;
                    for (std::size_t j = 0; j < by_size[rs].size(); ++j) {
                        if (capped()) return false;
                        auto r = by_size[rs][j];
                        int bins = lb + cands[r].bins + 1;
                        if (budget >= 0 && bins > budget) continue;
                        const StateSet &x = sigs[cands[l].sig];
                        const StateSet &y = sigs[cands[r].sig];
                        StateSet z = kind == Kind::LogicBinary
                                         ? sat_logic(static_cast<BinLogicOp>(op), x, y)
                                         : sat_temp2(a, static_cast<BinTempOp>(op), co, x, y);
                        Cand c{0, static_cast<std::uint16_t>(bins), kind, op, co, l, r, {}};
                        if (offer(c, std::move(z), s)) return true;
                    }
                }
            }
            return false;
        };
        for (auto op : fs.bin_logic) {
            if ((done = binary(Kind::LogicBinary, static_cast<std::uint8_t>(op), std::nullopt))) break;
            if (capped()) break;
        }
        if (!done && !capped())
            for (auto op : fs.bin_temp) {
                for (auto &co : coals) {
                    if ((done = binary(Kind::TempBinary, static_cast<std::uint8_t>(op), co))) break;
                    if (capped()) break;
                }
                if (done || capped()) break;
            }
        if (capped() && !done) break;
    }

    res.stats.distinct = sigs.size();
    res.stats.elapsed_ms = ms_since(t0);
    if (found >= 0) {
        std::function<Formula(std::int32_t)> build = [&](std::int32_t i) -> Formula {
            const Cand &c = cands[i];
            switch (c.kind) {
            case Kind::Prop: return prop(c.name);
            case Kind::Not: return neg(build(c.left));
            case Kind::TempUnary: return temp(static_cast<UnaryOp>(c.op), build(c.left), c.coal);
            case Kind::LogicBinary: return logic(static_cast<BinLogicOp>(c.op), build(c.left), build(c.right));
            case Kind::TempBinary:
                return temp2(static_cast<BinTempOp>(c.op), build(c.left), build(c.right), c.coal);
            }
            return nullptr;
        };
        res.verdict = Verdict::Positive;
        res.witness = build(found);
    } else {
        res.verdict = capped() ? Verdict::Inconclusive : Verdict::Negative;
    }
    return res;
}

// ----------------------------------------------------------- specialized

namespace {

LearnResult check_stream(const LearningInstance &inst, const std::vector<Formula> &cands,
                         std::chrono::steady_clock::time_point t0) {
    Sample sample = build_sample(inst);
    SatCache cache;
    LearnResult res;
    for (auto &f : cands) {
        ++res.stats.candidates;
        if ((int)f->tree_size > inst.bound) continue;
        if (sample_separates(sample, sat(sample.arena, f, PropMode::Strict, &cache))) {
            res.verdict = Verdict::Positive;
            res.witness = f;
            break;
        }
    }
    res.stats.distinct = cache.size();
    res.stats.elapsed_ms = ms_since(t0);
    return res;
}

void require_finite_budget(const LearningInstance &inst, const char *who) {
    if (!inst.fragment.bin_budget) throw InstanceError(std::string(who) + ": binary budget must be finite");
    if (!inst.fragment.bin_temp.empty())
        throw InstanceError(std::string(who) + ": binary temporal operators are not supported");
}

} // namespace

LearnResult learn_ltl_unary(const LearningInstance &inst) {
    validate_instance(inst);
    if (inst.logic != Logic::LTL) throw InstanceError("learn_ltl_unary: LTL instance expected");
    require_finite_budget(inst, "learn_ltl_unary");
    auto t0 = std::chrono::steady_clock::now();
    auto cands = ltl_unif_enumerate(inst.props, inst.fragment.unary, inst.fragment.bin_logic,
                                    *inst.fragment.bin_budget, inst.bound);
    return check_stream(inst, cands, t0);
}

LearnResult learn_ctl_noX(const LearningInstance &inst) {
    validate_instance(inst);
    if (inst.logic != Logic::CTL) throw InstanceError("learn_ctl_noX: CTL instance expected");
    if (inst.fragment.allows(UnaryOp::Next)) throw InstanceError("learn_ctl_noX: X is not allowed");
    require_finite_budget(inst, "learn_ctl_noX");
    auto t0 = std::chrono::steady_clock::now();
    int n = *inst.fragment.bin_budget;
    int limit = std::min(inst.bound, ctl_nox_bound(n, inst.fragment.unary));
    auto cands = prefixed_enumerate(ctl_nox_prefixes(inst.fragment.unary), inst.props,
                                    inst.fragment.bin_logic, n, limit);
    return check_stream(inst, cands, t0);
}

LearnResult learn_atl2_single(const LearningInstance &inst, UnaryOp h) {
    validate_instance(inst);
    if (inst.logic != Logic::ATL || inst.agents != 2) throw InstanceError("learn_atl2_single: ATL(2) instance expected");
    if (h != UnaryOp::Eventually && h != UnaryOp::Globally) throw InstanceError("learn_atl2_single: H must be F or G");
    if (inst.fragment.unary != std::set<UnaryOp>{h})
        throw InstanceError("learn_atl2_single: fragment must allow exactly one unary operator");
    require_finite_budget(inst, "learn_atl2_single");
    auto t0 = std::chrono::steady_clock::now();
    auto sketches = atl2_sketches(inst.fragment.bin_logic, h, *inst.fragment.bin_budget, inst.bound);
    std::vector<Formula> cands;
    for (auto &sk : sketches) {
        std::vector<std::size_t> idx(sk.holes, 0);
        while (true) {
            std::vector<std::string> fill;
            for (auto i : idx) fill.push_back(inst.props[i]);
            cands.push_back(instantiate(sk, fill));
            std::size_t j = 0;
            while (j < idx.size() && ++idx[j] == inst.props.size()) idx[j++] = 0;
            if (j == idx.size()) break;
        }
    }
    return check_stream(inst, cands, t0);
}

LearnResult learn_atl2_promising(const LearningInstance &inst) {
    validate_instance(inst);
    if (inst.logic != Logic::ATL || inst.agents != 2) throw InstanceError("learn_atl2_promising: ATL(2) instance expected");
    auto t0 = std::chrono::steady_clock::now();
    Sample sample = build_sample(inst);
    const Arena &a = sample.arena;
    const PrefixOp ops[] = {op_atl(UnaryOp::Eventually, 1), op_atl(UnaryOp::Eventually, 2),
                            op_atl(UnaryOp::Globally, 1), op_atl(UnaryOp::Eventually, 3)};
    struct Node {
        StateSet z;
        std::string body;
        OpSequence qt;  // outermost first
    };
    LearnResult res;
    std::unordered_map<StateSet, int> seen;
    std::vector<Node> level;
    for (auto &p : inst.props) {
        auto z = sat_prop(a, p);
        ++res.stats.candidates;
        if (seen.emplace(z, 1).second) level.push_back({z, p, {}});
    }
    for (int s = 1; s <= inst.bound; ++s) {
        for (auto &nd : level)
            if (sample_separates(sample, nd.z)) {
                res.verdict = Verdict::Positive;
                res.witness = apply_prefix(nd.qt, prop(nd.body));
                res.stats.distinct = seen.size();
                res.stats.elapsed_ms = ms_since(t0);
                return res;
            }
        if (s == inst.bound) break;
        std::vector<Node> next;
        for (auto &nd : level)
            for (auto &o : ops) {
                if (!inst.fragment.allows(o.op)) continue;
                ++res.stats.candidates;
                auto z = sat_unary(a, o.op, o.coal, nd.z);
                if (!seen.emplace(z, s + 1).second) continue;
                OpSequence qt{o};
                qt.insert(qt.end(), nd.qt.begin(), nd.qt.end());
                next.push_back({std::move(z), nd.body, std::move(qt)});
            }
        level = std::move(next);
    }
    res.verdict = Verdict::Negative;
    res.stats.distinct = seen.size();
    res.stats.elapsed_ms = ms_since(t0);
    return res;
}

// ------------------------------------------------------------------ JSON

nlohmann::json instance_to_json(const LearningInstance &inst) {
    nlohmann::json j;
    j["logic"] = logic_label(inst.logic);
    j["agents"] = inst.agents;
    j["props"] = inst.props;
    j["bound"] = inst.bound;
    j["fragment"] = print_fragment(inst.fragment);
    j["positives"] = nlohmann::json::array();
    j["negatives"] = nlohmann::json::array();
    for (auto &m : inst.positives) j["positives"].push_back(model_to_json(m));
    for (auto &m : inst.negatives) j["negatives"].push_back(model_to_json(m));
    return j;
}

LearningInstance instance_from_json(const nlohmann::json &j) {
    if (!j.is_object()) throw InstanceError("instance: expected an object");
    for (auto it = j.begin(); it != j.end(); ++it) {
        static const std::set<std::string> known{"logic", "agents", "props", "bound",
                                                 "fragment", "positives", "negatives"};
        if (!known.count(it.key())) throw InstanceError("instance: unknown field '" + it.key() + "'");
    }
    LearningInstance inst;
    try {
        inst.logic = parse_logic(j.at("logic").get<std::string>());
        inst.agents = j.value("agents", 1);
        inst.props = j.at("props").get<std::vector<std::string>>();
        inst.bound = j.at("bound").get<int>();
        inst.fragment = parse_fragment(j.at("fragment").get<std::string>());
        for (auto &m : j.at("positives")) inst.positives.push_back(model_from_json(m));
        for (auto &m : j.at("negatives")) inst.negatives.push_back(model_from_json(m));
    } catch (const nlohmann::json::exception &e) {
        throw InstanceError(std::string("instance: ") + e.what());
    }
    validate_instance(inst);
    return inst;
}

nlohmann::json result_to_json(const LearnResult &r, Style style, bool with_stats) {
    nlohmann::json j;
    j["verdict"] = verdict_name(r.verdict);
    if (r.witness) {
        j["witness"] = print_formula(*r.witness, style);
        j["size"] = size(*r.witness);
    }
    if (with_stats) {
        j["stats"]["candidates"] = r.stats.candidates;
        j["stats"]["distinct"] = r.stats.distinct;
        j["stats"]["elapsed_ms"] = r.stats.elapsed_ms;
    }
    return j;
}

} // namespace tlearn
