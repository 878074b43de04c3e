#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "tlearn/canon.hpp"
#include "tlearn/checker.hpp"
#include "tlearn/gadgets.hpp"
#include "tlearn/learner.hpp"
#include "tlearn/selftest.hpp"

using namespace tlearn;
using nlohmann::json;

namespace {

// Malformed or inconsistent input; maps to exit 3.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

json read_json(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error &e) {
        throw InputError(path + ": " + e.what());
    }
}

void write_json(const std::string &path, const json &j) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write '" + path + "'");
    out << j.dump(2) << '\n';
}

Style style_for(const LearningInstance &in) { return in.logic == Logic::CTL ? Style::Ctl : Style::Atl; }

UnaryOp parse_fg(const std::string &s) {
    if (s == "F") return UnaryOp::Eventually;
    if (s == "G") return UnaryOp::Globally;
    throw InputError("operator must be F or G, got '" + s + "'");
}

// "1,3;1,2,4"
std::vector<std::set<int>> parse_sets(const std::string &text) {
    std::vector<std::set<int>> out;
    std::stringstream all(text);
    std::string part;
    while (std::getline(all, part, ';')) {
        std::set<int> s;
        std::stringstream ps(part);
        std::string item;
        while (std::getline(ps, item, ','))
            try {
                std::size_t used = 0;
                int v = std::stoi(item, &used);
                if (used != item.size()) throw std::invalid_argument(item);
                s.insert(v);
            } catch (const std::logic_error &) {
                throw InputError("bad set element '" + item + "'");
            }
        out.push_back(s);
    }
    return out;
}

// ------------------------------------------------------------------ learn

struct LearnArgs {
    std::string instance, fragment, learner = "generic";
    std::optional<int> bound;
    std::uint64_t cap = LearnOptions{}.candidate_cap;
    bool stats = false;
};

int cmd_learn(const LearnArgs &a, bool as_json) {
    auto in = instance_from_json(read_json(a.instance));
    if (!a.fragment.empty()) in.fragment = parse_fragment(a.fragment);
    if (a.bound) in.bound = *a.bound;
    LearnResult r;
    if (a.learner == "generic") {
        LearnOptions opt;
        opt.candidate_cap = a.cap;
        r = learn_generic(in, opt);
    } else if (a.learner == "ltl-unary") {
        r = learn_ltl_unary(in);
    } else if (a.learner == "ctl-nox") {
        r = learn_ctl_noX(in);
    } else if (a.learner == "atl2-single") {
        if (in.fragment.unary.size() != 1) throw InstanceError("atl2-single: fragment must have one unary operator");
        r = learn_atl2_single(in, *in.fragment.unary.begin());
    } else {
        r = learn_atl2_promising(in);
    }
    if (as_json) {
        auto j = result_to_json(r, style_for(in), true);
        if (!a.stats) j["stats"].erase("elapsed_ms");
        std::cout << j.dump(2) << '\n';
    } else {
        std::cout << "verdict     " << verdict_name(r.verdict) << '\n';
        if (r.witness) {
            std::cout << "witness     " << print_formula(*r.witness, style_for(in)) << '\n';
            std::cout << "size        " << size(*r.witness) << '\n';
        }
        std::cout << "candidates  " << r.stats.candidates << '\n';
        std::cout << "distinct    " << r.stats.distinct << '\n';
        if (a.stats) std::cout << "elapsed_ms  " << r.stats.elapsed_ms << '\n';
    }
    return 0;
}

// ------------------------------------------------------------------ check

int cmd_check(const std::string &formula, const std::string &instance, bool expect_positive, bool as_json) {
    auto in = instance_from_json(read_json(instance));
    auto f = parse_formula(formula, in.agents);
    validate_instance(in);
    bool frag = in_fragment(f, in.fragment);
    bool fits = static_cast<int>(size(f)) <= in.bound;
    bool sep = separates(f, in);
    bool ok = frag && fits && sep;
    if (as_json) {
        json j;
        j["verdict"] = ok ? "positive" : "negative";
        j["separates"] = sep;
        j["in_fragment"] = frag;
        j["size"] = size(f);
        j["bound"] = in.bound;
        std::cout << j.dump(2) << '\n';
    } else {
        std::cout << "verdict      " << (ok ? "positive" : "negative") << '\n';
        std::cout << "separates    " << (sep ? "true" : "false") << '\n';
        std::cout << "in_fragment  " << (frag ? "true" : "false") << '\n';
        std::cout << "size         " << size(f) << " (bound " << in.bound << ")\n";
    }
    return expect_positive && !ok ? 1 : 0;
}

// ------------------------------------------------------------------- eval

int cmd_eval(const std::string &formula, const std::vector<std::string> &models, bool lenient, bool as_json) {
    auto f = parse_formula(formula);
    PropMode mode = lenient ? PropMode::Lenient : PropMode::Strict;
    json out = json::array();
    for (auto &path : models) {
        auto m = model_from_json(read_json(path));
        bool v = eval_model(f, m, mode);
        if (as_json) out.push_back({{"model", path}, {"value", v}});
        else if (models.size() == 1) std::cout << (v ? "true" : "false") << '\n';
        else std::cout << path << "  " << (v ? "true" : "false") << '\n';
    }
    if (as_json) std::cout << out.dump(2) << '\n';
    return 0;
}

// -------------------------------------------------------------------- gen

struct GenArgs {
    std::string family, source, sets, op = "F", wrap, out;
    std::optional<int> l, k, bound;
    int n = 1;
    bool with_not = false, lift = false;
};

ReductionBundle build_bundle(const GenArgs &a) {
    Family fam = parse_family(a.family);
    std::optional<json> src;
    if (!a.source.empty()) src = read_json(a.source);
    auto hit = [&] {
        if (src) return hit_from_json(*src);
        if (!a.l || !a.k || a.sets.empty()) throw InputError("need --source or all of --l, --sets, --k");
        return HitInstance{*a.l, parse_sets(a.sets), *a.k};
    };
    switch (fam) {
    case Family::Iff:
        if (!src) throw InputError("the iff family takes a coset source via --source");
        return gen_ltl_iff(coset_from_json(*src));
    case Family::CtlX: return gen_ctl_x(hit(), a.with_not);
    case Family::Atl2: return gen_atl2(hit());
    case Family::Atl3: return gen_atl3(hit(), parse_fg(a.op), a.bound);
    case Family::ReachCtl:
    case Family::ReachAtl2: {
        if (!src) throw InputError("reach families take a model via --source");
        auto m = model_from_json(*src);
        if (fam == Family::ReachCtl) {
            if (kind_of(m) != ModelKind::Kripke) throw InputError("reach-ctl expects a Kripke structure");
            return gen_reach_ctl(std::get<Kripke>(m), parse_fg(a.op));
        }
        if (kind_of(m) != ModelKind::TurnBased) throw InputError("reach-atl2 expects a turn-based structure");
        return gen_reach_atl2(std::get<TurnBased>(m), parse_fg(a.op));
    }
    default: return gen_ltl(fam, hit());
    }
}

json sidecar(const ReductionBundle &b) {
    json j;
    j["family"] = family_name(b.family);
    if (auto h = std::get_if<HitInstance>(&b.source)) j["source"] = hit_to_json(*h);
    else if (auto c = std::get_if<CosetInstance>(&b.source)) j["source"] = coset_to_json(*c);
    else j["source"] = nullptr;
    j["trivial"] = b.trivial;
    if (b.witness) j["witness"] = print_formula(*b.witness, style_for(b.instance));
    else j["witness"] = nullptr;
    return j;
}

int cmd_gen(const GenArgs &a, bool as_json) {
    auto b = build_bundle(a);
    if (a.lift) b = lift_ltl_to_ctl(b);
    if (!a.wrap.empty()) {
        auto op = logic_from_name(a.wrap);
        if (!op) throw InputError("unknown binary operator '" + a.wrap + "'");
        b = wrap_binary(b, *op, a.n);
    }
    std::string prefix = a.out.empty() ? std::string(family_name(b.family)) : a.out;
    std::string inst = prefix + ".json", side = prefix + ".source.json";
    write_json(inst, instance_to_json(b.instance));
    write_json(side, sidecar(b));
    if (as_json) std::cout << json{{"instance", inst}, {"sidecar", side}}.dump(2) << '\n';
    else std::cout << inst << '\n' << side << '\n';
    return 0;
}

// ------------------------------------------------------------------ canon

int cmd_canon(const std::string &formula, const std::string &fragment, bool as_json) {
    auto f = parse_formula(formula);
    json j;
    std::string text;
    if (f->mode == Mode::State) {
        int agents = std::max(1, max_agent(f));
        auto [qt, body] = split_prefix(f);
        auto [qt2, x] = unneg(qt, 0, agents);
        Style style = agents == 1 ? Style::Ctl : Style::Atl;
        text = print_formula(apply_prefix(qt2, x ? neg(body) : body), style);
        bool ctl_nox = agents == 1 && std::none_of(qt.begin(), qt.end(), [](const PrefixOp &o) {
            return o.op == UnaryOp::Next;
        });
        if (ctl_nox) j["ctl_class"] = ctl_nox_key(qt);
    } else {
        std::set<UnaryOp> u{UnaryOp::Not, UnaryOp::Next, UnaryOp::Eventually, UnaryOp::Globally};
        if (!fragment.empty()) u = parse_fragment(fragment).unary;
        text = print_formula(ltl_canonicalize(f, u));
    }
    j["canonical"] = text;
    if (as_json) std::cout << j.dump(2) << '\n';
    else std::cout << text << '\n';
    return 0;
}

// --------------------------------------------------------------- selftest

int cmd_selftest(const std::string &tier, std::uint64_t seed, const std::vector<int> &only, bool timing,
                 bool as_json) {
    Tier t;
    try {
        t = parse_tier(tier);
    } catch (const std::invalid_argument &e) {
        throw InputError(e.what());
    }
    for (int id : only)
        if (id < 1 || id > kNumCriteria) throw InputError("criterion " + std::to_string(id) + " does not exist");
    auto results = run_selftest(t, seed, only);
    if (as_json) {
        json j;
        j["tier"] = tier_name(t);
        j["seed"] = seed;
        j["criteria"] = json::array();
        for (auto &r : results) j["criteria"].push_back(criterion_to_json(r, timing));
        std::cout << j.dump(2) << '\n';
    } else {
        int failed = 0;
        for (auto &r : results) {
            std::cout << format_result(r, timing) << '\n';
            for (auto &n : r.notes) std::cout << "        " << n << '\n';
            failed += !r.pass;
        }
        std::cout << results.size() - failed << '/' << results.size() << " criteria passed\n";
    }
    return 0;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Temporal-logic formula learning toolkit"};
    app.require_subcommand(1);
    bool as_json = false;
    app.add_flag("--json", as_json, "Machine-readable JSON output");

    LearnArgs la;
    auto *learn = app.add_subcommand("learn", "Search for a separating formula");
    learn->add_option("--instance", la.instance, "Learning instance JSON")->required();
    learn->add_option("--fragment", la.fragment, "Override fragment, e.g. \"U=F,G;Bt=;Bl=or;n=0\"");
    learn->add_option("--bound", la.bound, "Override size bound B");
    learn->add_option("--learner", la.learner, "Search procedure")
        ->check(CLI::IsMember({"generic", "ltl-unary", "ctl-nox", "atl2-single", "atl2-promising"}));
    learn->add_option("--cap", la.cap, "Candidate cap for the generic learner");
    learn->add_flag("--stats", la.stats, "Include elapsed time");

    std::string formula, instance;
    bool expect_positive = false;
    auto *check = app.add_subcommand("check", "Check whether a formula separates an instance");
    check->add_option("-f,--formula", formula, "Formula text")->required();
    check->add_option("--instance", instance, "Learning instance JSON")->required();
    check->add_flag("--expect-positive", expect_positive, "Exit 1 unless the formula is a valid answer");

    std::vector<std::string> models;
    bool lenient = false;
    auto *eval = app.add_subcommand("eval", "Evaluate a formula on models");
    eval->add_option("-f,--formula", formula, "Formula text")->required();
    eval->add_option("-m,--model", models, "Model JSON (repeatable)")->required();
    eval->add_flag("--lenient", lenient, "Undeclared propositions are false");

    GenArgs ga;
    auto *gen = app.add_subcommand("gen", "Generate a reduction instance");
    gen->add_option("--family", ga.family, "Family tag, e.g. or, nand, U, ctl-x, atl3")->required();
    gen->add_option("--source", ga.source, "Source instance JSON (hitting set, coset weight, or model)");
    gen->add_option("--l", ga.l, "Universe size");
    gen->add_option("--sets", ga.sets, "Sets, e.g. \"1,3;1,2,4\"");
    gen->add_option("--k", ga.k, "Budget");
    gen->add_option("--op", ga.op, "F or G for atl3 and reach families");
    gen->add_option("--bound", ga.bound, "Override the atl3 bound");
    gen->add_flag("--with-not", ga.with_not, "Allow negation in the ctl-x fragment");
    gen->add_flag("--lift", ga.lift, "Lift an LTL instance to CTL");
    gen->add_option("--wrap", ga.wrap, "Wrap with a binary operator: or, and, nand, iff");
    gen->add_option("--n", ga.n, "Wrapper budget")->check(CLI::PositiveNumber);
    gen->add_option("--out", ga.out, "Output prefix; writes PREFIX.json and PREFIX.source.json");

    std::string fragment;
    auto *canon = app.add_subcommand("canon", "Print the canonical form of a formula's prefixes");
    canon->add_option("-f,--formula", formula, "Formula text")->required();
    canon->add_option("--fragment", fragment, "Fragment giving the LTL unary operators");

    std::string tier = "quick";
    std::uint64_t seed = kDefaultSeed;
    std::vector<int> only;
    bool timing = false;
    auto *selftest = app.add_subcommand("selftest", "Run the acceptance suites");
    selftest->add_option("--tier", tier, "quick or full");
    selftest->add_option("--seed", seed, "Base seed");
    selftest->add_option("--only", only, "Criterion numbers to run");
    selftest->add_flag("--timing", timing, "Show elapsed time per criterion");

    for (auto *sc : app.get_subcommands({})) sc->add_flag("--json", as_json, "Machine-readable JSON output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        std::cerr << "tlearn: " << e.what() << '\n';
        return 2;
    }

    try {
        if (*learn) return cmd_learn(la, as_json);
        if (*check) return cmd_check(formula, instance, expect_positive, as_json);
        if (*eval) return cmd_eval(formula, models, lenient, as_json);
        if (*gen) return cmd_gen(ga, as_json);
        if (*canon) return cmd_canon(formula, fragment, as_json);
        if (*selftest) return cmd_selftest(tier, seed, only, timing, as_json);
    } catch (const ParseError &e) {
        std::cerr << "tlearn: formula: " << e.what() << " (at " << e.position() << ")\n";
        return 3;
    } catch (const std::exception &e) {
        std::cerr << "tlearn: " << e.what() << '\n';
        return 3;
    }
    return 2;
}
