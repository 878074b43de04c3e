#pragma once

#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace tlearn {

using Label = std::set<std::string>;

class ModelError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// w = u . v^omega
struct UPWord {
    std::vector<std::string> props;
    std::vector<Label> u;
    std::vector<Label> v;

    std::size_t size() const { return u.size() + v.size(); }
    // 1-based positions, lasso arithmetic.
    const Label &letter(std::size_t i) const;
    std::size_t suffix_class(std::size_t i) const;
};

struct Kripke {
    std::vector<std::string> props;
    std::vector<std::string> names;
    std::vector<Label> labels;
    std::vector<std::vector<int>> succ;
    std::vector<int> initial;

    int num_states() const { return static_cast<int>(labels.size()); }
    int add_state(const std::string &name, Label label);
};

struct TurnBased {
    std::vector<std::string> props;
    int agents = 2;
    std::vector<std::string> names;
    std::vector<Label> labels;
    std::vector<int> owner;  // 1-based agent
    std::vector<std::vector<int>> succ;
    std::vector<int> initial;

    int num_states() const { return static_cast<int>(labels.size()); }
    int add_state(const std::string &name, Label label, int agent);
    void edge(int from, int to) { succ.at(from).push_back(to); }
};

struct Cgs {
    std::vector<std::string> props;
    int agents = 1;
    std::vector<std::string> names;
    std::vector<Label> labels;
    std::vector<std::vector<int>> d;      // d[q][a-1] >= 1
    std::vector<std::vector<int>> delta;  // delta[q][profile], agent 1 least significant
    std::vector<int> initial;

    int num_states() const { return static_cast<int>(labels.size()); }
    int num_profiles(int q) const;
};

using Model = std::variant<UPWord, Kripke, TurnBased, Cgs>;

enum class ModelKind { Word, Kripke, TurnBased, Cgs };
ModelKind kind_of(const Model &m);
const char *kind_name(ModelKind k);
const std::vector<std::string> &model_props(const Model &m);
int model_agents(const Model &m);

UPWord make_word(std::vector<std::string> props, std::vector<Label> u, std::vector<Label> v);
Kripke kripke_from_word(const UPWord &w);
Cgs turn_based_to_cgs(const TurnBased &t);
Cgs kripke_to_cgs(const Kripke &k);
TurnBased kripke_to_turn_based(const Kripke &k);
// Single self-looping state; owner is agent 1.
TurnBased trivial_structure(const Label &s, int agents, std::vector<std::string> props);

// Empty result means well formed.
std::vector<std::string> validate(const Model &m);
void require_valid(const Model &m);

// Every state labelled S u {p} or S u {pbar}.
bool is_proper(const Model &m, const Label &s, const std::string &p = "p",
               const std::string &pbar = "pbar");
bool is_self_looping(const TurnBased &t);

// Adds `extra` to every label and to the proposition list.
Model relabel_add(const Model &m, const Label &extra);

nlohmann::json model_to_json(const Model &m);
Model model_from_json(const nlohmann::json &j);
std::string dump_model(const Model &m);

} // namespace tlearn
