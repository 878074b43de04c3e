#include "tlearn/gadgets.hpp"

#include <algorithm>
#include <bit>
#include <map>

namespace tlearn {

void validate_hit(const HitInstance &h) {
    if (h.l < 1) throw GadgetError("hitting set: l must be positive");
    if (h.sets.empty()) throw GadgetError("hitting set: no sets");
    if (h.k < 1 || h.k > h.l) throw GadgetError("hitting set: k must lie in [1, l]");
    for (auto &c : h.sets) {
        if (c.empty()) throw GadgetError("hitting set: empty set");
        for (int j : c)
            if (j < 1 || j > h.l) throw GadgetError("hitting set: element out of range");
    }
}

bool covers(const HitInstance &h) {
    std::set<int> cover;
    for (auto &c : h.sets) cover.insert(c.begin(), c.end());
    return static_cast<int>(cover.size()) == h.l;
}

void validate_coset(const CosetInstance &c) {
    if (c.a.empty() || c.a[0].empty()) throw GadgetError("coset weight: empty matrix");
    std::size_t l = c.a[0].size();
    for (auto &row : c.a) {
        if (row.size() != l) throw GadgetError("coset weight: ragged matrix");
        for (int v : row)
            if (v != 0 && v != 1) throw GadgetError("coset weight: entries must be 0 or 1");
    }
    if (c.y.size() != c.a.size()) throw GadgetError("coset weight: y has the wrong length");
    for (int v : c.y)
        if (v != 0 && v != 1) throw GadgetError("coset weight: entries must be 0 or 1");
    if (c.k < 1 || c.k > static_cast<int>(l)) throw GadgetError("coset weight: k must lie in [1, l]");
}

namespace {

// Masks over `width` bits ordered by popcount, then numerically.
std::vector<std::uint32_t> masks_by_weight(int width, int max_weight) {
    std::vector<std::uint32_t> out;
    for (std::uint32_t m = 0; m < (1u << width); ++m)
        if (std::popcount(m) <= max_weight) out.push_back(m);
    std::stable_sort(out.begin(), out.end(),
                     [](std::uint32_t a, std::uint32_t b) { return std::popcount(a) < std::popcount(b); });
    return out;
}

} // namespace

std::optional<std::set<int>> solve_hit_brute(const HitInstance &h) {
    validate_hit(h);
    if (h.l > 20) throw GadgetError("hitting set: l exceeds the brute-force guard of 20");
    std::vector<std::uint32_t> set_masks;
    for (auto &c : h.sets) {
        std::uint32_t m = 0;
        for (int j : c) m |= 1u << (j - 1);
        set_masks.push_back(m);
    }
    for (std::uint32_t m : masks_by_weight(h.l, h.k)) {
        bool hits = std::all_of(set_masks.begin(), set_masks.end(), [&](std::uint32_t s) { return (s & m) != 0; });
        if (!hits) continue;
        std::set<int> out;
        for (int j = 1; j <= h.l; ++j)
            if (m >> (j - 1) & 1) out.insert(j);
        return out;
    }
    return std::nullopt;
}

std::optional<std::vector<int>> solve_cw_brute(const CosetInstance &c) {
    validate_coset(c);
    int l = static_cast<int>(c.a[0].size());
    if (l > 16) throw GadgetError("coset weight: l exceeds the brute-force guard of 16");
    for (std::uint32_t m : masks_by_weight(l, c.k)) {
        bool ok = true;
        for (std::size_t i = 0; i < c.a.size() && ok; ++i) {
            int s = 0;
            for (int j = 0; j < l; ++j) s ^= c.a[i][j] & static_cast<int>(m >> j & 1);
            ok = s == c.y[i];
        }
        if (!ok) continue;
        std::vector<int> x(l);
        for (int j = 0; j < l; ++j) x[j] = m >> j & 1;
        return x;
    }
    return std::nullopt;
}

// ------------------------------------------------------------- families

namespace {

const std::map<std::string, Family> &family_table() {
    static const std::map<std::string, Family> t{
        {"or", Family::Or},
        {"and", Family::And},
        {"nand", Family::NotAnd},
        {"nor", Family::NotOr},
        {"weak-until", Family::WeakUntil},
        {"mighty-release", Family::MightyRelease},
        {"iff", Family::Iff},
        {"until", Family::Until},
        {"release", Family::Release},
        {"ctl-x", Family::CtlX},
        {"reach-ctl", Family::ReachCtl},
        {"reach-atl2", Family::ReachAtl2},
        {"atl2", Family::Atl2},
        {"atl3", Family::Atl3},
    };
    return t;
}

} // namespace

const char *family_name(Family f) {
    for (auto &[name, v] : family_table())
        if (v == f) return name.c_str();
    return "?";
}

Family parse_family(const std::string &s) {
    static const std::map<std::string, Family> alias{
        {"W", Family::WeakUntil}, {"M", Family::MightyRelease}, {"U", Family::Until}, {"R", Family::Release}};
    if (auto it = alias.find(s); it != alias.end()) return it->second;
    auto &t = family_table();
    auto it = t.find(s);
    if (it == t.end()) throw GadgetError("unknown family '" + s + "'");
    return it->second;
}

bool is_ltl_family(Family f) {
    switch (f) {
    case Family::CtlX:
    case Family::ReachCtl:
    case Family::ReachAtl2:
    case Family::Atl2:
    case Family::Atl3: return false;
    default: return true;
    }
}

// ----------------------------------------------------------- binary wrap

std::vector<std::string> wrap_props(int n) {
    std::vector<std::string> out;
    for (int i = 1; i <= n; ++i) out.push_back("p" + std::to_string(i));
    return out;
}

Formula wrap_chain(BinLogicOp op, int n) {
    if (n < 1) throw GadgetError("wrap: n must be positive");
    auto ps = wrap_props(n);
    if (op == BinLogicOp::NotAnd) {
        Formula f = prop(ps[0]);
        for (int i = 1; i < n; ++i) f = logic(op, f, prop(ps[i]));
        return f;
    }
    Formula f = prop(ps[n - 1]);
    for (int i = n - 2; i >= 0; --i) f = logic(op, prop(ps[i]), f);
    return f;
}

namespace {

bool eval_chain(BinLogicOp op, int n, const Label &s) {
    Formula f = wrap_chain(op, n);
    UPWord w = make_word(wrap_props(n), {}, {s});
    return eval_ltl(f, w, PropMode::Lenient);
}

// A single self-looping structure in the model class of `like`.
Model trivial_like(const Model &like, const Label &s, int agents, const std::vector<std::string> &props) {
    switch (kind_of(like)) {
    case ModelKind::Word: return make_word(props, {}, {s});
    case ModelKind::Kripke: {
        Kripke k;
        k.props = props;
        int q = k.add_state("q", s);
        k.succ[q] = {q};
        k.initial = {q};
        return k;
    }
    case ModelKind::TurnBased: return trivial_structure(s, agents, props);
    case ModelKind::Cgs: return turn_based_to_cgs(trivial_structure(s, agents, props));
    }
    return make_word(props, {}, {s});
}

Model with_props(Model m, const std::vector<std::string> &props) {
    std::visit([&](auto &x) { x.props = props; }, m);
    return m;
}

} // namespace

ReductionBundle wrap_binary(const ReductionBundle &b, BinLogicOp op, int n) {
    if (n < 1) throw GadgetError("wrap: n must be positive");
    if (op != BinLogicOp::Or && op != BinLogicOp::And && op != BinLogicOp::NotAnd && op != BinLogicOp::Iff)
        throw GadgetError(std::string("wrap: unsupported operator ") + logic_name(op));
    const auto &in = b.instance;
    if (in.fragment.bin_budget.value_or(1) != 0) throw GadgetError("wrap: base fragment must have budget 0");
    for (const auto *side : {&in.positives, &in.negatives})
        for (auto &m : *side)
            if (!is_proper(m, {})) throw GadgetError("wrap: base structures must be (0, {})-proper");
    if (in.positives.empty() && in.negatives.empty()) throw GadgetError("wrap: empty base instance");
    const Model &like = in.positives.empty() ? in.negatives[0] : in.positives[0];

    auto primed = wrap_props(n);
    std::vector<std::string> all{"p", "pbar"};
    all.insert(all.end(), primed.begin(), primed.end());
    Label prop_n(all.begin(), all.end());
    Label prop_primed(primed.begin(), primed.end());

    Label s_base;
    std::vector<Label> set_a, set_b;
    switch (op) {
    case BinLogicOp::Or:
        for (auto &pi : primed) set_a.push_back({pi});
        set_b.push_back({});
        break;
    case BinLogicOp::And:
    case BinLogicOp::Iff:
        s_base = prop_primed;
        set_a.push_back(prop_n);
        for (auto &pi : primed) {
            Label s = prop_n;
            s.erase(pi);
            set_b.push_back(s);
        }
        break;
    default: {
        // nand: pick S_n with the chain true, and for each p_i a pair differing only in p_i.
        bool found = false;
        for (std::uint32_t m = 0; m < (1u << n) && !found; ++m) {
            Label s;
            for (int i = 0; i < n; ++i)
                if (m >> i & 1) s.insert(primed[i]);
            if (eval_chain(op, n, s)) {
                s_base = s;
                found = true;
            }
        }
        if (!found) throw GadgetError("wrap: no satisfying base label");
        for (int i = 0; i < n; ++i) {
            bool paired = false;
            for (std::uint32_t m = 0; m < (1u << i) && !paired; ++m) {
                Label base;
                for (int j = 0; j < i; ++j)
                    if (m >> j & 1) base.insert(primed[j]);
                for (int j = i + 1; j < n; ++j) base.insert(primed[j]);
                Label with = base;
                with.insert(primed[i]);
                bool a = eval_chain(op, n, with), c = eval_chain(op, n, base);
                if (a == c) continue;
                Label yes = a ? with : base, no = a ? base : with;
                yes.insert({"p", "pbar"});
                no.insert({"p", "pbar"});
                set_a.push_back(yes);
                set_b.push_back(no);
                paired = true;
            }
            if (!paired) throw GadgetError("wrap: no distinguishing pair");
        }
    }
    }

    ReductionBundle out = b;
    auto &inst = out.instance;
    inst.props = all;
    inst.bound = in.bound + 2 * n;
    inst.fragment.bin_logic = {op};
    inst.fragment.bin_budget = n;
    inst.positives.clear();
    inst.negatives.clear();
    auto lift = [&](const Model &m) { return with_props(relabel_add(m, s_base), all); };
    std::vector<Model> pos, neg, ta, tb;
    for (auto &m : in.positives) pos.push_back(lift(m));
    for (auto &m : in.negatives) neg.push_back(lift(m));
    for (auto &s : set_a) ta.push_back(trivial_like(like, s, in.agents, all));
    for (auto &s : set_b) tb.push_back(trivial_like(like, s, in.agents, all));
    bool swap = op == BinLogicOp::NotAnd;
    auto &p_out = swap ? neg : pos;
    auto &n_out = swap ? pos : neg;
    inst.positives = p_out;
    inst.positives.insert(inst.positives.end(), swap ? tb.begin() : ta.begin(), swap ? tb.end() : ta.end());
    inst.negatives = n_out;
    inst.negatives.insert(inst.negatives.end(), swap ? ta.begin() : tb.begin(), swap ? ta.end() : tb.end());
    if (b.witness) out.witness = logic(op, *b.witness, wrap_chain(op, n));
    return out;
}

// -------------------------------------------------------------- sources

nlohmann::json hit_to_json(const HitInstance &h) {
    nlohmann::json j;
    j["l"] = h.l;
    j["sets"] = nlohmann::json::array();
    for (auto &c : h.sets) j["sets"].push_back(std::vector<int>(c.begin(), c.end()));
    j["k"] = h.k;
    return j;
}

HitInstance hit_from_json(const nlohmann::json &j) {
    HitInstance h;
    try {
        h.l = j.at("l").get<int>();
        h.k = j.at("k").get<int>();
        for (auto &c : j.at("sets")) {
            auto v = c.get<std::vector<int>>();
            h.sets.emplace_back(v.begin(), v.end());
        }
    } catch (const nlohmann::json::exception &e) {
        throw GadgetError(std::string("hitting set: ") + e.what());
    }
    validate_hit(h);
    return h;
}

nlohmann::json coset_to_json(const CosetInstance &c) {
    return {{"a", c.a}, {"y", c.y}, {"k", c.k}};
}

CosetInstance coset_from_json(const nlohmann::json &j) {
    CosetInstance c;
    try {
        c.a = j.at("a").get<std::vector<std::vector<int>>>();
        c.y = j.at("y").get<std::vector<int>>();
        c.k = j.at("k").get<int>();
    } catch (const nlohmann::json::exception &e) {
        throw GadgetError(std::string("coset weight: ") + e.what());
    }
    validate_coset(c);
    return c;
}

} // namespace tlearn
