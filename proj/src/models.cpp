#include "tlearn/models.hpp"

#include <algorithm>
#include <sstream>

namespace tlearn {

const Label &UPWord::letter(std::size_t i) const {
    if (i == 0) throw ModelError("word positions are 1-based");
    if (v.empty()) throw ModelError("word has empty loop");
    if (i <= u.size()) return u[i - 1];
    return v[(i - u.size() - 1) % v.size()];
}

std::size_t UPWord::suffix_class(std::size_t i) const {
    if (i == 0) throw ModelError("word positions are 1-based");
    if (v.empty()) throw ModelError("word has empty loop");
    if (i <= u.size()) return i;
    return u.size() + 1 + (i - u.size() - 1) % v.size();
}

int Kripke::add_state(const std::string &name, Label label) {
    names.push_back(name);
    labels.push_back(std::move(label));
    succ.emplace_back();
    return num_states() - 1;
}

int TurnBased::add_state(const std::string &name, Label label, int agent) {
    names.push_back(name);
    labels.push_back(std::move(label));
    owner.push_back(agent);
    succ.emplace_back();
    return num_states() - 1;
}

int Cgs::num_profiles(int q) const {
    int n = 1;
    for (int x : d.at(q)) n *= x;
    return n;
}

ModelKind kind_of(const Model &m) { return static_cast<ModelKind>(m.index()); }

const char *kind_name(ModelKind k) {
    switch (k) {
    case ModelKind::Word: return "word";
    case ModelKind::Kripke: return "kripke";
    case ModelKind::TurnBased: return "turn_based";
    case ModelKind::Cgs: return "cgs";
    }
    return "?";
}

const std::vector<std::string> &model_props(const Model &m) {
    return std::visit([](const auto &x) -> const std::vector<std::string> & { return x.props; }, m);
}

int model_agents(const Model &m) {
    if (auto t = std::get_if<TurnBased>(&m)) return t->agents;
    if (auto c = std::get_if<Cgs>(&m)) return c->agents;
    return 1;
}

UPWord make_word(std::vector<std::string> props, std::vector<Label> u, std::vector<Label> v) {
    if (v.empty()) throw ModelError("word loop must be nonempty");
    return UPWord{std::move(props), std::move(u), std::move(v)};
}

Kripke kripke_from_word(const UPWord &w) {
    if (w.v.empty()) throw ModelError("word loop must be nonempty");
    Kripke k;
    k.props = w.props;
    for (std::size_t i = 0; i < w.u.size(); ++i) k.add_state("u" + std::to_string(i + 1), w.u[i]);
    for (std::size_t i = 0; i < w.v.size(); ++i) k.add_state("v" + std::to_string(i + 1), w.v[i]);
    int n = k.num_states();
    for (int q = 0; q + 1 < n; ++q) k.succ[q] = {q + 1};
    k.succ[n - 1] = {static_cast<int>(w.u.size())};
    k.initial = {0};
    return k;
}

Cgs turn_based_to_cgs(const TurnBased &t) {
    Cgs c;
    c.props = t.props;
    c.agents = t.agents;
    c.names = t.names;
    c.labels = t.labels;
    c.initial = t.initial;
    for (int q = 0; q < t.num_states(); ++q) {
        std::vector<int> d(t.agents, 1);
        int own = t.owner[q];
        int n = static_cast<int>(t.succ[q].size());
        d[own - 1] = n;
        c.d.push_back(d);
        c.delta.push_back(t.succ[q]);
    }
    return c;
}

Cgs kripke_to_cgs(const Kripke &k) {
    return turn_based_to_cgs(kripke_to_turn_based(k));
}

TurnBased kripke_to_turn_based(const Kripke &k) {
    TurnBased t;
    t.props = k.props;
    t.agents = 1;
    t.names = k.names;
    t.labels = k.labels;
    t.owner.assign(k.num_states(), 1);
    t.succ = k.succ;
    t.initial = k.initial;
    return t;
}

TurnBased trivial_structure(const Label &s, int agents, std::vector<std::string> props) {
    TurnBased t;
    t.props = std::move(props);
    t.agents = agents;
    int q = t.add_state("q", s, 1);
    t.edge(q, q);
    t.initial = {q};
    return t;
}

// ------------------------------------------------------------- validation

namespace {

void check_labels(const std::vector<Label> &labels, const std::vector<std::string> &props,
                  std::vector<std::string> &out, const std::string &where) {
    std::set<std::string> declared(props.begin(), props.end());
    for (std::size_t i = 0; i < labels.size(); ++i)
        for (const auto &p : labels[i])
            if (!declared.count(p))
                out.push_back(where + " " + std::to_string(i) + ": undeclared proposition '" + p + "'");
}

void check_graph(int n, const std::vector<std::vector<int>> &succ, const std::vector<int> &initial,
                 std::vector<std::string> &out) {
    if (n == 0) out.push_back("no states");
    if (initial.empty()) out.push_back("no initial state");
    for (int q : initial)
        if (q < 0 || q >= n) out.push_back("initial state out of range");
    if (static_cast<int>(succ.size()) != n) {
        out.push_back("successor table size mismatch");
        return;
    }
    for (int q = 0; q < n; ++q) {
        if (succ[q].empty()) out.push_back("state " + std::to_string(q) + " has no successor");
        for (int r : succ[q])
            if (r < 0 || r >= n) out.push_back("state " + std::to_string(q) + " has successor out of range");
    }
}

} // namespace

std::vector<std::string> validate(const Model &m) {
    std::vector<std::string> out;
    std::visit(
        [&](const auto &x) {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, UPWord>) {
                if (x.v.empty()) out.push_back("word loop is empty");
                check_labels(x.u, x.props, out, "prefix letter");
                check_labels(x.v, x.props, out, "loop letter");
            } else if constexpr (std::is_same_v<T, Kripke>) {
                check_labels(x.labels, x.props, out, "state");
                check_graph(x.num_states(), x.succ, x.initial, out);
            } else if constexpr (std::is_same_v<T, TurnBased>) {
                check_labels(x.labels, x.props, out, "state");
                check_graph(x.num_states(), x.succ, x.initial, out);
                if (x.agents < 1) out.push_back("agent count must be positive");
                if (static_cast<int>(x.owner.size()) != x.num_states()) out.push_back("owner table size mismatch");
                else
                    for (int q = 0; q < x.num_states(); ++q)
                        if (x.owner[q] < 1 || x.owner[q] > x.agents)
                            out.push_back("state " + std::to_string(q) + " owner out of range");
            } else {
                int n = x.num_states();
                check_labels(x.labels, x.props, out, "state");
                if (n == 0) out.push_back("no states");
                if (x.initial.empty()) out.push_back("no initial state");
                for (int q : x.initial)
                    if (q < 0 || q >= n) out.push_back("initial state out of range");
                if (x.agents < 1) out.push_back("agent count must be positive");
                if (static_cast<int>(x.d.size()) != n || static_cast<int>(x.delta.size()) != n) {
                    out.push_back("action table size mismatch");
                    return;
                }
                for (int q = 0; q < n; ++q) {
                    if (static_cast<int>(x.d[q].size()) != x.agents) {
                        out.push_back("state " + std::to_string(q) + " action counts do not match agents");
                        continue;
                    }
                    bool ok = true;
                    for (int a : x.d[q])
                        if (a < 1) {
                            out.push_back("state " + std::to_string(q) + " has an agent with no action");
                            ok = false;
                        }
                    if (!ok) continue;
                    if (static_cast<int>(x.delta[q].size()) != x.num_profiles(q))
                        out.push_back("state " + std::to_string(q) + " transition table is not total");
                    for (int r : x.delta[q])
                        if (r < 0 || r >= n) out.push_back("state " + std::to_string(q) + " has target out of range");
                }
            }
        },
        m);
    return out;
}

void require_valid(const Model &m) {
    auto v = validate(m);
    if (!v.empty()) throw ModelError("invalid " + std::string(kind_name(kind_of(m))) + ": " + v.front());
}

bool is_proper(const Model &m, const Label &s, const std::string &p, const std::string &pbar) {
    Label with_p = s, with_pbar = s;
    with_p.insert(p);
    with_pbar.insert(pbar);
    auto ok = [&](const Label &l) { return l == with_p || l == with_pbar; };
    return std::visit(
        [&](const auto &x) {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, UPWord>) {
                return std::all_of(x.u.begin(), x.u.end(), ok) && std::all_of(x.v.begin(), x.v.end(), ok);
            } else {
                return std::all_of(x.labels.begin(), x.labels.end(), ok);
            }
        },
        m);
}

bool is_self_looping(const TurnBased &t) {
    for (int q = 0; q < t.num_states(); ++q)
        if (std::find(t.succ[q].begin(), t.succ[q].end(), q) == t.succ[q].end()) return false;
    return true;
}

Model relabel_add(const Model &m, const Label &extra) {
    Model out = m;
    std::visit(
        [&](auto &x) {
            for (const auto &p : extra)
                if (std::find(x.props.begin(), x.props.end(), p) == x.props.end()) x.props.push_back(p);
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, UPWord>) {
                for (auto &l : x.u) l.insert(extra.begin(), extra.end());
                for (auto &l : x.v) l.insert(extra.begin(), extra.end());
            } else {
                for (auto &l : x.labels) l.insert(extra.begin(), extra.end());
            }
        },
        out);
    return out;
}

std::string dump_model(const Model &m) {
    std::ostringstream os;
    std::visit(
        [&](const auto &x) {
            using T = std::decay_t<decltype(x)>;
            auto label = [](const Label &l) {
                std::string s = "{";
                bool first = true;
                for (auto &p : l) {
                    if (!first) s += ',';
                    s += p;
                    first = false;
                }
                return s + "}";
            };
            if constexpr (std::is_same_v<T, UPWord>) {
                for (auto &l : x.u) os << label(l) << ' ';
                os << "(";
                for (std::size_t i = 0; i < x.v.size(); ++i) os << (i ? " " : "") << label(x.v[i]);
                os << ")^w\n";
            } else {
                for (int q = 0; q < x.num_states(); ++q) {
                    bool init = std::find(x.initial.begin(), x.initial.end(), q) != x.initial.end();
                    os << (init ? "> " : "  ") << x.names[q] << ' ' << label(x.labels[q]);
                    if constexpr (std::is_same_v<T, TurnBased>) os << " owner " << x.owner[q];
                    if constexpr (std::is_same_v<T, Cgs>) {
                        os << " d";
                        for (int a : x.d[q]) os << ' ' << a;
                        os << " ->";
                        for (int r : x.delta[q]) os << ' ' << x.names[r];
                    } else {
                        os << " ->";
                        for (int r : x.succ[q]) os << ' ' << x.names[r];
                    }
                    os << '\n';
                }
            }
        },
        m);
    return os.str();
}

} // namespace tlearn
