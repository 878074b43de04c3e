#include "tlearn/gadgets.hpp"

#include <algorithm>
#include <functional>

namespace tlearn {

namespace {

std::string a_(int j) { return "a" + std::to_string(j); }
std::string b_(int j) { return "b" + std::to_string(j); }
std::string x_(int i) { return "x" + std::to_string(i); }
std::string a_(int i, int j) { return "a" + std::to_string(i) + "_" + std::to_string(j); }
std::string b_(int i, int j) { return "b" + std::to_string(i) + "_" + std::to_string(j); }

FragmentSpec family_fragment(Family f) {
    FragmentSpec fs;
    switch (f) {
    case Family::Or: fs.bin_logic = {BinLogicOp::Or}; break;
    case Family::And: fs.bin_logic = {BinLogicOp::And}; break;
    case Family::NotAnd: fs.bin_logic = {BinLogicOp::NotAnd}; break;
    case Family::NotOr: fs.bin_logic = {BinLogicOp::NotOr}; break;
    case Family::WeakUntil: fs.bin_temp = {BinTempOp::WeakUntil}; break;
    case Family::MightyRelease: fs.bin_temp = {BinTempOp::MightyRelease}; break;
    case Family::Until: fs.bin_temp = {BinTempOp::Until}; break;
    case Family::Release: fs.bin_temp = {BinTempOp::Release}; break;
    case Family::Iff:
        fs.unary = {UnaryOp::Not};
        fs.bin_logic = {BinLogicOp::Iff};
        break;
    default: throw GadgetError(std::string("not an LTL family: ") + family_name(f));
    }
    return fs;
}

UPWord constant(const std::vector<std::string> &props, Label s) { return make_word(props, {}, {std::move(s)}); }

// Letter of alpha_i: a_j for j in C, b_j otherwise.
Label coded(int l, const std::set<int> &c) {
    Label s;
    for (int j = 1; j <= l; ++j) s.insert(c.count(j) ? a_(j) : b_(j));
    return s;
}

Label all_b(int l) {
    Label s;
    for (int j = 1; j <= l; ++j) s.insert(b_(j));
    return s;
}

std::vector<int> padded(const std::set<int> &h, int l, int k) {
    std::set<int> out = h;
    for (int j = 1; j <= l && static_cast<int>(out.size()) < k; ++j) out.insert(j);
    return {out.begin(), out.end()};
}

Formula chain(const std::vector<Formula> &items, const std::function<Formula(Formula, Formula)> &join) {
    Formula f = items.back();
    for (int i = static_cast<int>(items.size()) - 2; i >= 0; --i) f = join(items[i], f);
    return f;
}

} // namespace

ReductionBundle trivial_ltl_bundle(Family family, Source source) {
    ReductionBundle b;
    b.family = family;
    b.source = std::move(source);
    b.trivial = true;
    auto &in = b.instance;
    in.logic = Logic::LTL;
    in.props = {"p"};
    in.positives = {constant(in.props, {"p"})};
    in.negatives = {constant(in.props, {})};
    in.bound = 1;
    in.fragment = family_fragment(family);
    b.witness = prop("p");
    return b;
}

std::vector<std::string> ur_props(int l) {
    std::vector<std::string> out;
    for (int i = 1; i <= l; ++i)
        for (int j = i; j <= l; ++j) {
            out.push_back(a_(i, j));
            out.push_back(b_(i, j));
        }
    return out;
}

UPWord ur_word(int l, const std::set<int> &c, bool until) {
    auto props = ur_props(l);
    std::vector<Label> u;
    for (int i = 1; i <= l; ++i) {
        Label s;
        for (int k = 1; k <= l; ++k)
            for (int j = k; j <= l; ++j) {
                bool in_s = k <= i && i <= j && c.count(j);
                s.insert(in_s ? a_(k, j) : b_(k, j));
            }
        u.push_back(s);
    }
    Label tail = until ? Label(props.begin(), props.end()) : Label{};
    return make_word(props, u, {tail});
}

ReductionBundle gen_ltl(Family family, const HitInstance &h) {
    validate_hit(h);
    if (family == Family::Iff) throw GadgetError("the iff family takes a coset weight source");
    if ((family == Family::NotAnd || family == Family::NotOr) && h.k >= h.l) return trivial_ltl_bundle(family, h);

    ReductionBundle b;
    b.family = family;
    b.source = h;
    auto &in = b.instance;
    in.logic = Logic::LTL;
    in.fragment = family_fragment(family);
    const int l = h.l, k = h.k;
    std::vector<Model> alphas;

    switch (family) {
    case Family::Or:
    case Family::And:
    case Family::WeakUntil:
    case Family::MightyRelease: {
        for (int j = 1; j <= l; ++j) in.props.push_back(a_(j));
        for (int j = 1; j <= l; ++j) in.props.push_back(b_(j));
        for (auto &c : h.sets) alphas.push_back(constant(in.props, coded(l, c)));
        Model beta = constant(in.props, all_b(l));
        bool disj = family == Family::Or || family == Family::WeakUntil;
        in.positives = disj ? alphas : std::vector<Model>{beta};
        in.negatives = disj ? std::vector<Model>{beta} : alphas;
        in.bound = 2 * k - 1;
        break;
    }
    case Family::NotAnd: {
        for (int j = 1; j <= l; ++j) in.props.push_back(a_(j));
        for (int j = 1; j <= l; ++j) in.props.push_back(b_(j));
        for (int i = 1; i <= k; ++i) in.props.push_back(x_(i));
        Label xs, xs_short;
        for (int i = 1; i <= k; ++i) xs.insert(x_(i));
        for (int i = 1; i < k; ++i) xs_short.insert(x_(i));
        auto join = [](Label s, const Label &t) {
            s.insert(t.begin(), t.end());
            return s;
        };
        for (auto &c : h.sets) in.positives.push_back(constant(in.props, join(xs, coded(l, c))));
        in.positives.push_back(constant(in.props, join(xs_short, all_b(l))));
        in.negatives.push_back(constant(in.props, join(xs, all_b(l))));
        for (int i = 1; i < k; ++i) {
            Label s = join(xs_short, all_b(l));
            s.erase(x_(i));
            in.negatives.push_back(constant(in.props, s));
        }
        in.negatives.push_back(constant(in.props, join(xs, all_b(l))));
        in.bound = 4 * k - 1;
        break;
    }
    case Family::NotOr: {
        for (int j = 1; j <= l; ++j) in.props.push_back(a_(j));
        for (int j = 1; j <= l; ++j) in.props.push_back(b_(j));
        for (int i = 1; i <= k; ++i) in.props.push_back(x_(i));
        in.positives.push_back(constant(in.props, all_b(l)));
        for (int i = 1; i < k; ++i) {
            Label s = all_b(l);
            s.insert({x_(i), x_(k)});
            in.positives.push_back(constant(in.props, s));
        }
        in.positives.push_back(constant(in.props, all_b(l)));
        for (auto &c : h.sets) in.negatives.push_back(constant(in.props, coded(l, c)));
        Label s = all_b(l);
        s.insert(x_(k));
        in.negatives.push_back(constant(in.props, s));
        in.bound = 4 * k - 1;
        break;
    }
    case Family::Until:
    case Family::Release: {
        bool until = family == Family::Until;
        in.props = ur_props(l);
        std::set<int> full;
        for (int j = 1; j <= l; ++j) full.insert(j);
        Model v = ur_word(l, full, until);
        std::vector<Model> vs;
        for (auto &c : h.sets) {
            std::set<int> rest;
            std::set_difference(full.begin(), full.end(), c.begin(), c.end(), std::inserter(rest, rest.end()));
            vs.push_back(ur_word(l, rest, until));
        }
        in.positives = until ? vs : std::vector<Model>{v};
        in.negatives = until ? std::vector<Model>{v} : vs;
        in.bound = 2 * k - 1;
        break;
    }
    default: throw GadgetError(std::string("not an LTL family: ") + family_name(family));
    }

    if (auto sol = solve_hit_brute(h)) b.witness = witness_ltl(family, *sol, l, k);
    return b;
}

Formula witness_ltl(Family family, const std::set<int> &h, int l, int k) {
    if (h.empty()) throw GadgetError("witness: empty hitting set");
    std::vector<int> js(h.begin(), h.end());
    auto props_of = [&](auto name) {
        std::vector<Formula> out;
        for (int j : js) out.push_back(prop(name(j)));
        return out;
    };
    auto an = [](int j) { return a_(j); };
    auto bn = [](int j) { return b_(j); };
    switch (family) {
    case Family::Or:
        return chain(props_of(an), [](Formula x, Formula y) { return logic(BinLogicOp::Or, x, y); });
    case Family::And:
        return chain(props_of(bn), [](Formula x, Formula y) { return logic(BinLogicOp::And, x, y); });
    case Family::WeakUntil:
        return chain(props_of(an), [](Formula x, Formula y) { return temp2(BinTempOp::WeakUntil, x, y); });
    case Family::MightyRelease:
        return chain(props_of(bn), [](Formula x, Formula y) { return temp2(BinTempOp::MightyRelease, x, y); });
    case Family::NotAnd:
    case Family::NotOr: {
        bool nand = family == Family::NotAnd;
        BinLogicOp op = nand ? BinLogicOp::NotAnd : BinLogicOp::NotOr;
        int kk = std::max<int>(k, static_cast<int>(h.size()));
        std::vector<int> hs = padded(h, l, kk);
        auto lit = [&](int j) { return prop(nand ? b_(j) : a_(j)); };
        Formula f = logic(op, lit(hs[kk - 1]), prop(x_(kk)));
        for (int i = kk - 1; i >= 1; --i) f = logic(op, lit(hs[i - 1]), logic(op, prop(x_(i)), f));
        return f;
    }
    case Family::Until:
    case Family::Release: {
        bool until = family == Family::Until;
        BinTempOp op = until ? BinTempOp::Until : BinTempOp::Release;
        std::vector<int> idx{1};
        idx.insert(idx.end(), js.begin(), js.end());
        int r = static_cast<int>(js.size());
        auto lit = [&](int i, int j) { return prop(until ? b_(i, j) : a_(i, j)); };
        Formula f = lit(idx[r - 1], idx[r]);
        for (int p = r; p >= 2; --p) f = temp2(op, f, lit(idx[p - 2], idx[p - 1]));
        return f;
    }
    default: throw GadgetError(std::string("no LTL witness for family ") + family_name(family));
    }
}

Formula witness_iff(const std::vector<int> &x) {
    std::vector<Formula> items;
    for (std::size_t j = 0; j < x.size(); ++j)
        if (x[j]) items.push_back(prop(a_(static_cast<int>(j) + 1)));
    if (items.empty()) throw GadgetError("witness: x has no ones");
    return chain(items, [](Formula p, Formula q) { return logic(BinLogicOp::Iff, p, q); });
}

ReductionBundle gen_ltl_iff(const CosetInstance &c) {
    validate_coset(c);
    if (std::all_of(c.y.begin(), c.y.end(), [](int v) { return v == 0; }))
        return trivial_ltl_bundle(Family::Iff, c);
    ReductionBundle b;
    b.family = Family::Iff;
    b.source = c;
    auto &in = b.instance;
    in.logic = Logic::LTL;
    in.fragment = family_fragment(Family::Iff);
    int l = static_cast<int>(c.a[0].size());
    for (int j = 1; j <= l; ++j) in.props.push_back(a_(j));
    in.positives.push_back(constant(in.props, Label(in.props.begin(), in.props.end())));
    for (std::size_t i = 0; i < c.a.size(); ++i) {
        Label s;
        for (int j = 1; j <= l; ++j)
            if (c.a[i][j - 1] == 0) s.insert(a_(j));
        (c.y[i] ? in.negatives : in.positives).push_back(constant(in.props, s));
    }
    in.bound = 2 * c.k;
    if (auto x = solve_cw_brute(c)) b.witness = witness_iff(*x);
    return b;
}

ReductionBundle lift_ltl_to_ctl(const ReductionBundle &b) {
    if (b.instance.logic != Logic::LTL) throw GadgetError("lift: expected an LTL bundle");
    ReductionBundle out = b;
    auto &in = out.instance;
    in.logic = Logic::CTL;
    auto lift = [](std::vector<Model> &ms) {
        for (auto &m : ms) m = kripke_from_word(std::get<UPWord>(m));
    };
    lift(in.positives);
    lift(in.negatives);
    if (b.witness) out.witness = ltl_to_state(*b.witness);
    return out;
}

} // namespace tlearn
