#include "tlearn/models.hpp"

#include <map>

namespace tlearn {

using nlohmann::json;

namespace {

void only_fields(const json &j, std::initializer_list<const char *> allowed, const std::string &where) {
    if (!j.is_object()) throw ModelError(where + ": expected an object");
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (auto a : allowed) ok = ok || it.key() == a;
        if (!ok) throw ModelError(where + ": unknown field '" + it.key() + "'");
    }
}

const json &field(const json &j, const char *key, const std::string &where) {
    auto it = j.find(key);
    if (it == j.end()) throw ModelError(where + ": missing field '" + key + "'");
    return *it;
}

Label read_label(const json &j, const std::string &where) {
    if (!j.is_array()) throw ModelError(where + ": letter must be an array of propositions");
    Label l;
    for (auto &p : j) {
        if (!p.is_string()) throw ModelError(where + ": proposition must be a string");
        l.insert(p.get<std::string>());
    }
    return l;
}

json write_label(const Label &l) { return json(std::vector<std::string>(l.begin(), l.end())); }

std::vector<std::string> read_props(const json &j) {
    std::vector<std::string> out;
    for (auto &p : field(j, "props", "model")) {
        if (!p.is_string()) throw ModelError("model: proposition must be a string");
        out.push_back(p.get<std::string>());
    }
    return out;
}

struct StateTable {
    std::vector<std::string> names;
    std::map<std::string, int> index;

    void build(const json &states) {
        if (!states.is_array() || states.empty()) throw ModelError("model: 'states' must be a nonempty array");
        for (std::size_t i = 0; i < states.size(); ++i) {
            std::string name = states[i].contains("name") ? states[i]["name"].get<std::string>()
                                                          : "q" + std::to_string(i);
            if (index.count(name)) throw ModelError("model: duplicate state name '" + name + "'");
            index[name] = static_cast<int>(i);
            names.push_back(name);
        }
    }
    int resolve(const json &ref) const {
        if (ref.is_number_integer()) {
            int i = ref.get<int>();
            if (i < 0 || i >= static_cast<int>(names.size())) throw ModelError("model: state index out of range");
            return i;
        }
        if (!ref.is_string()) throw ModelError("model: state reference must be a name or index");
        auto it = index.find(ref.get<std::string>());
        if (it == index.end()) throw ModelError("model: unknown state '" + ref.get<std::string>() + "'");
        return it->second;
    }
    std::vector<int> resolve_all(const json &refs) const {
        if (!refs.is_array()) throw ModelError("model: expected an array of states");
        std::vector<int> out;
        for (auto &r : refs) out.push_back(resolve(r));
        return out;
    }
};

template <class G>
json graph_states(const G &g, bool with_owner) {
    json states = json::array();
    for (int q = 0; q < g.num_states(); ++q) {
        json s;
        s["name"] = g.names[q];
        s["labels"] = write_label(g.labels[q]);
        if constexpr (std::is_same_v<G, TurnBased>)
            if (with_owner) s["owner"] = g.owner[q];
        json succ = json::array();
        for (int r : g.succ[q]) succ.push_back(g.names[r]);
        s["succ"] = succ;
        states.push_back(s);
    }
    return states;
}

template <class G>
json initial_names(const G &g) {
    json out = json::array();
    for (int q : g.initial) out.push_back(g.names[q]);
    return out;
}

} // namespace

json model_to_json(const Model &m) {
    json j;
    std::visit(
        [&](const auto &x) {
            using T = std::decay_t<decltype(x)>;
            j["props"] = x.props;
            if constexpr (std::is_same_v<T, UPWord>) {
                j["type"] = "word";
                json u = json::array(), v = json::array();
                for (auto &l : x.u) u.push_back(write_label(l));
                for (auto &l : x.v) v.push_back(write_label(l));
                j["prefix"] = u;
                j["loop"] = v;
            } else if constexpr (std::is_same_v<T, Kripke>) {
                j["type"] = "kripke";
                j["states"] = graph_states(x, false);
                j["initial"] = initial_names(x);
            } else if constexpr (std::is_same_v<T, TurnBased>) {
                j["type"] = "turn_based";
                j["agents"] = x.agents;
                j["states"] = graph_states(x, true);
                j["initial"] = initial_names(x);
            } else {
                j["type"] = "cgs";
                j["agents"] = x.agents;
                json states = json::array();
                for (int q = 0; q < x.num_states(); ++q) {
                    json s;
                    s["name"] = x.names[q];
                    s["labels"] = write_label(x.labels[q]);
                    s["actions"] = x.d[q];
                    json delta = json::array();
                    for (int r : x.delta[q]) delta.push_back(x.names[r]);
                    s["delta"] = delta;
                    states.push_back(s);
                }
                j["states"] = states;
                j["initial"] = initial_names(x);
            }
        },
        m);
    return j;
}

Model model_from_json(const json &j) {
    if (!j.is_object()) throw ModelError("model: expected an object");
    std::string type = field(j, "type", "model").get<std::string>();
    Model out;
    if (type == "word") {
        only_fields(j, {"type", "props", "prefix", "loop"}, "word");
        UPWord w;
        w.props = read_props(j);
        if (j.contains("prefix"))
            for (auto &l : j["prefix"]) w.u.push_back(read_label(l, "word prefix"));
        for (auto &l : field(j, "loop", "word")) w.v.push_back(read_label(l, "word loop"));
        out = w;
    } else if (type == "kripke" || type == "turn_based") {
        bool tb = type == "turn_based";
        if (tb) only_fields(j, {"type", "props", "agents", "states", "initial"}, type);
        else only_fields(j, {"type", "props", "states", "initial"}, type);
        StateTable st;
        st.build(field(j, "states", type));
        Kripke k;
        TurnBased t;
        std::vector<std::string> props = read_props(j);
        for (auto &s : j["states"]) {
            if (tb) only_fields(s, {"name", "labels", "succ", "owner"}, "state");
            else only_fields(s, {"name", "labels", "succ"}, "state");
            Label l = s.contains("labels") ? read_label(s["labels"], "state labels") : Label{};
            auto succ = st.resolve_all(field(s, "succ", "state"));
            if (tb) {
                t.add_state(st.names[t.num_states()], l, field(s, "owner", "state").get<int>());
                t.succ.back() = succ;
            } else {
                k.add_state(st.names[k.num_states()], l);
                k.succ.back() = succ;
            }
        }
        auto init = st.resolve_all(field(j, "initial", type));
        if (tb) {
            t.props = props;
            t.agents = field(j, "agents", type).get<int>();
            t.initial = init;
            out = t;
        } else {
            k.props = props;
            k.initial = init;
            out = k;
        }
    } else if (type == "cgs") {
        only_fields(j, {"type", "props", "agents", "states", "initial"}, type);
        StateTable st;
        st.build(field(j, "states", type));
        Cgs c;
        c.props = read_props(j);
        c.agents = field(j, "agents", type).get<int>();
        for (auto &s : j["states"]) {
            only_fields(s, {"name", "labels", "actions", "delta"}, "state");
            c.names.push_back(st.names[c.names.size()]);
            c.labels.push_back(s.contains("labels") ? read_label(s["labels"], "state labels") : Label{});
            c.d.push_back(field(s, "actions", "state").get<std::vector<int>>());
            c.delta.push_back(st.resolve_all(field(s, "delta", "state")));
        }
        c.initial = st.resolve_all(field(j, "initial", type));
        out = c;
    } else {
        throw ModelError("model: unknown type '" + type + "'");
    }
    require_valid(out);
    return out;
}

} // namespace tlearn
