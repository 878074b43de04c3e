#include "tlearn/formula.hpp"

#include <algorithm>
#include <cctype>
#include <cstring>
#include <functional>
#include <sstream>
#include <unordered_set>

namespace tlearn {

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
    return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

Mode join_mode(Mode a, Mode b) {
    if (a == Mode::None) return b;
    if (b == Mode::None || a == b) return a;
    throw FormulaError("formula mixes path and state operators");
}

Formula finish(Node n) {
    std::size_t h = std::hash<int>()(static_cast<int>(n.kind) * 31 + n.op);
    if (n.coal) h = mix(h, *n.coal + 1000);
    if (!n.name.empty()) h = mix(h, std::hash<std::string>()(n.name));
    if (n.left) h = mix(h, n.left->hash);
    if (n.right) h = mix(h, n.right->hash);
    n.hash = h;
    n.tree_size = 1 + (n.left ? n.left->tree_size : 0) + (n.right ? n.right->tree_size : 0);
    return std::make_shared<const Node>(std::move(n));
}

void check_coal(const std::optional<Coalition> &c) {
    if (c && (*c >> kMaxAgents) != 0) throw FormulaError("coalition index out of range");
}

} // namespace

ParseError::ParseError(const std::string &msg, std::size_t pos)
    : std::runtime_error(msg + " at position " + std::to_string(pos)), pos_(pos) {}

Coalition coalition_of(std::initializer_list<int> agents) {
    Coalition c = 0;
    for (int a : agents) {
        if (a < 1 || a > kMaxAgents) throw FormulaError("agent index out of range");
        c |= Coalition(1) << (a - 1);
    }
    return c;
}

Coalition coalition_all(int k) {
    return k >= 32 ? ~Coalition(0) : (Coalition(1) << k) - 1;
}

std::vector<int> coalition_members(Coalition c) {
    std::vector<int> out;
    for (int i = 0; i < 32; ++i)
        if (c >> i & 1) out.push_back(i + 1);
    return out;
}

Formula prop(const std::string &name) {
    if (name.empty()) throw FormulaError("empty proposition name");
    Node n;
    n.kind = Kind::Prop;
    n.name = name;
    return finish(std::move(n));
}

Formula neg(Formula f) {
    Node n;
    n.kind = Kind::Not;
    n.op = static_cast<std::uint8_t>(UnaryOp::Not);
    n.mode = f->mode;
    n.left = std::move(f);
    return finish(std::move(n));
}

Formula temp(UnaryOp op, Formula f, std::optional<Coalition> c) {
    if (op == UnaryOp::Not) return neg(std::move(f));
    check_coal(c);
    Node n;
    n.kind = Kind::TempUnary;
    n.op = static_cast<std::uint8_t>(op);
    n.coal = c;
    n.mode = join_mode(c ? Mode::State : Mode::Path, f->mode);
    n.left = std::move(f);
    return finish(std::move(n));
}

Formula logic(BinLogicOp op, Formula l, Formula r) {
    Node n;
    n.kind = Kind::LogicBinary;
    n.op = static_cast<std::uint8_t>(op);
    n.mode = join_mode(l->mode, r->mode);
    n.left = std::move(l);
    n.right = std::move(r);
    return finish(std::move(n));
}

Formula temp2(BinTempOp op, Formula l, Formula r, std::optional<Coalition> c) {
    check_coal(c);
    Node n;
    n.kind = Kind::TempBinary;
    n.op = static_cast<std::uint8_t>(op);
    n.coal = c;
    n.mode = join_mode(join_mode(c ? Mode::State : Mode::Path, l->mode), r->mode);
    n.left = std::move(l);
    n.right = std::move(r);
    return finish(std::move(n));
}

bool equal(const Formula &a, const Formula &b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->hash != b->hash || a->kind != b->kind || a->op != b->op ||
        a->coal != b->coal || a->name != b->name || a->tree_size != b->tree_size)
        return false;
    if (a->left && !equal(a->left, b->left)) return false;
    if (a->right && !equal(a->right, b->right)) return false;
    return true;
}

std::vector<Formula> subformulas(const Formula &f) {
    std::unordered_set<Formula, FormulaHash, FormulaEq> seen;
    std::vector<Formula> out;
    std::function<void(const Formula &)> walk = [&](const Formula &g) {
        if (seen.count(g)) return;
        if (g->left) walk(g->left);
        if (g->right) walk(g->right);
        seen.insert(g);
        out.push_back(g);
    };
    walk(f);
    return out;
}

std::size_t size(const Formula &f) { return subformulas(f).size(); }

std::size_t bin_count(const Formula &f) {
    auto subs = subformulas(f);
    return std::count_if(subs.begin(), subs.end(), [](const Formula &g) {
        return g->kind == Kind::LogicBinary || g->kind == Kind::TempBinary;
    });
}

std::set<std::string> props(const Formula &f) {
    std::set<std::string> out;
    std::function<void(const Formula &)> walk = [&](const Formula &g) {
        if (g->kind == Kind::Prop) out.insert(g->name);
        if (g->left) walk(g->left);
        if (g->right) walk(g->right);
    };
    walk(f);
    return out;
}

int max_agent(const Formula &f) {
    int m = 0;
    if (f->coal)
        for (int a : coalition_members(*f->coal)) m = std::max(m, a);
    if (f->left) m = std::max(m, max_agent(f->left));
    if (f->right) m = std::max(m, max_agent(f->right));
    return m;
}

int depth(const Formula &f) {
    int d = 0;
    if (f->left) d = std::max(d, depth(f->left));
    if (f->right) d = std::max(d, depth(f->right));
    return d + 1;
}

bool in_fragment(const Formula &f, const FragmentSpec &fs) {
    for (const auto &g : subformulas(f)) {
        switch (g->kind) {
        case Kind::Prop: break;
        case Kind::Not:
        case Kind::TempUnary:
            if (!fs.allows(g->unary_op())) return false;
            break;
        case Kind::LogicBinary:
            if (!fs.bin_logic.count(g->logic_op())) return false;
            break;
        case Kind::TempBinary:
            if (!fs.bin_temp.count(g->temp_op())) return false;
            break;
        }
    }
    return !fs.bin_budget || static_cast<int>(bin_count(f)) <= *fs.bin_budget;
}

// ---------------------------------------------------------------- names

const char *unary_symbol(UnaryOp op) {
    switch (op) {
    case UnaryOp::Not: return "!";
    case UnaryOp::Next: return "X";
    case UnaryOp::Eventually: return "F";
    case UnaryOp::Globally: return "G";
    }
    return "?";
}

const char *temp_symbol(BinTempOp op) {
    static const char *names[] = {"U", "R", "W", "M"};
    return names[static_cast<int>(op)];
}

const char *logic_symbol(BinLogicOp op) {
    static const char *names[] = {"|", "&", "->", "<-", "<->", "!|", "!&", "!->", "!<-", "!<->"};
    return names[static_cast<int>(op)];
}

const char *logic_name(BinLogicOp op) {
    static const char *names[] = {"or", "and", "imp", "impby", "iff",
                                  "nor", "nand", "nimp", "nimpby", "niff"};
    return names[static_cast<int>(op)];
}

std::optional<BinLogicOp> logic_from_name(const std::string &name) {
    for (int i = 0; i < kNumBinLogic; ++i) {
        auto op = static_cast<BinLogicOp>(i);
        if (name == logic_name(op) || name == logic_symbol(op)) return op;
    }
    return std::nullopt;
}

bool apply_logic(BinLogicOp op, bool a, bool b) {
    switch (op) {
    case BinLogicOp::Or: return a || b;
    case BinLogicOp::And: return a && b;
    case BinLogicOp::Implies: return !a || b;
    case BinLogicOp::ImpliedBy: return a || !b;
    case BinLogicOp::Iff: return a == b;
    case BinLogicOp::NotOr: return !(a || b);
    case BinLogicOp::NotAnd: return !(a && b);
    case BinLogicOp::NotImplies: return a && !b;
    case BinLogicOp::NotImpliedBy: return !a && b;
    case BinLogicOp::NotIff: return a != b;
    }
    return false;
}

// ------------------------------------------------------------ fragments

namespace {

std::vector<std::string> split(const std::string &s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) out.push_back(cur);
    if (!s.empty() && s.back() == sep) out.emplace_back();
    return out;
}

std::string trim(const std::string &s) {
    auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

} // namespace

FragmentSpec parse_fragment(const std::string &text) {
    FragmentSpec fs;
    bool saw_n = false;
    for (const auto &part : split(text, ';')) {
        auto p = trim(part);
        if (p.empty()) continue;
        auto eq = p.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("fragment: missing '=' in '" + p + "'");
        auto key = trim(p.substr(0, eq));
        auto val = trim(p.substr(eq + 1));
        std::vector<std::string> items;
        for (auto &it : split(val, ','))
            if (!trim(it).empty()) items.push_back(trim(it));
        if (key == "U") {
            for (auto &it : items) {
                if (it == "!" || it == "not" || it == "N") fs.unary.insert(UnaryOp::Not);
                else if (it == "X") fs.unary.insert(UnaryOp::Next);
                else if (it == "F") fs.unary.insert(UnaryOp::Eventually);
                else if (it == "G") fs.unary.insert(UnaryOp::Globally);
                else throw std::invalid_argument("fragment: unknown unary operator '" + it + "'");
            }
        } else if (key == "Bt") {
            for (auto &it : items) {
                bool ok = false;
                for (int i = 0; i < 4; ++i)
                    if (it == temp_symbol(static_cast<BinTempOp>(i))) {
                        fs.bin_temp.insert(static_cast<BinTempOp>(i));
                        ok = true;
                    }
                if (!ok) throw std::invalid_argument("fragment: unknown temporal operator '" + it + "'");
            }
        } else if (key == "Bl") {
            for (auto &it : items) {
                auto op = logic_from_name(it);
                if (!op) throw std::invalid_argument("fragment: unknown logical operator '" + it + "'");
                fs.bin_logic.insert(*op);
            }
        } else if (key == "n") {
            saw_n = true;
            if (val == "inf" || val.empty()) fs.bin_budget.reset();
            else {
                std::size_t used = 0;
                int n = std::stoi(val, &used);
                if (used != val.size() || n < 0) throw std::invalid_argument("fragment: bad budget '" + val + "'");
                fs.bin_budget = n;
            }
        } else {
            throw std::invalid_argument("fragment: unknown key '" + key + "'");
        }
    }
    if (!saw_n) fs.bin_budget = 0;
    return fs;
}

std::string print_fragment(const FragmentSpec &fs) {
    std::string out = "U=";
    bool first = true;
    for (auto op : fs.unary) {
        if (!first) out += ',';
        out += unary_symbol(op);
        first = false;
    }
    out += ";Bt=";
    first = true;
    for (auto op : fs.bin_temp) {
        if (!first) out += ',';
        out += temp_symbol(op);
        first = false;
    }
    out += ";Bl=";
    first = true;
    for (auto op : fs.bin_logic) {
        if (!first) out += ',';
        out += logic_name(op);
        first = false;
    }
    out += ";n=";
    out += fs.bin_budget ? std::to_string(*fs.bin_budget) : "inf";
    return out;
}

// ---------------------------------------------------------- translations

Formula ltl_to_state(const Formula &f) {
    switch (f->kind) {
    case Kind::Prop: return f;
    case Kind::Not: return neg(ltl_to_state(f->left));
    case Kind::TempUnary:
        if (f->coal) throw FormulaError("ltl_to_state: formula already carries a coalition");
        return temp(f->unary_op(), ltl_to_state(f->left), Coalition(1));
    case Kind::LogicBinary:
        return logic(f->logic_op(), ltl_to_state(f->left), ltl_to_state(f->right));
    case Kind::TempBinary:
        if (f->coal) throw FormulaError("ltl_to_state: formula already carries a coalition");
        return temp2(f->temp_op(), ltl_to_state(f->left), ltl_to_state(f->right), Coalition(1));
    }
    return f;
}

Formula state_to_ltl(const Formula &f) {
    switch (f->kind) {
    case Kind::Prop: return f;
    case Kind::Not: return neg(state_to_ltl(f->left));
    case Kind::TempUnary: return temp(f->unary_op(), state_to_ltl(f->left));
    case Kind::LogicBinary:
        return logic(f->logic_op(), state_to_ltl(f->left), state_to_ltl(f->right));
    case Kind::TempBinary:
        return temp2(f->temp_op(), state_to_ltl(f->left), state_to_ltl(f->right));
    }
    return f;
}

// -------------------------------------------------------------- printing

namespace {

bool is_infix(const Formula &f) {
    return f->kind == Kind::LogicBinary || (f->kind == Kind::TempBinary && !f->coal);
}

std::string coal_prefix(Coalition c, Style style) {
    if (style == Style::Ctl && (c == 0 || c == 1)) return c == 0 ? "A" : "E";
    std::string s = "<";
    bool first = true;
    for (int a : coalition_members(c)) {
        if (!first) s += ',';
        s += std::to_string(a);
        first = false;
    }
    return s + ">";
}

void print_rec(const Formula &f, Style style, std::string &out);

void print_operand(const Formula &f, Style style, std::string &out) {
    if (is_infix(f)) {
        out += '(';
        print_rec(f, style, out);
        out += ')';
    } else {
        print_rec(f, style, out);
    }
}

void print_rec(const Formula &f, Style style, std::string &out) {
    switch (f->kind) {
    case Kind::Prop: out += f->name; return;
    case Kind::Not:
        out += '!';
        print_operand(f->left, style, out);
        return;
    case Kind::TempUnary:
        if (f->coal) out += coal_prefix(*f->coal, style);
        out += unary_symbol(f->unary_op());
        if (!is_infix(f->left)) out += ' ';
        print_operand(f->left, style, out);
        return;
    case Kind::LogicBinary:
    case Kind::TempBinary: {
        bool boxed = f->kind == Kind::TempBinary && f->coal;
        if (boxed) out += coal_prefix(*f->coal, style) + "(";
        print_operand(f->left, style, out);
        out += ' ';
        out += f->kind == Kind::LogicBinary ? logic_symbol(f->logic_op()) : temp_symbol(f->temp_op());
        out += ' ';
        if (boxed) print_operand(f->right, style, out);
        else print_rec(f->right, style, out);
        if (boxed) out += ')';
        return;
    }
    }
}

} // namespace

std::string print_formula(const Formula &f, Style style) {
    std::string out;
    print_rec(f, style, out);
    return out;
}

// --------------------------------------------------------------- parsing

namespace {

struct BinTok {
    bool temporal;
    int op;
};

class Parser {
public:
    Parser(const std::string &text, int max_agents)
        : s_(text), max_agents_(max_agents > 0 ? max_agents : kMaxAgents) {}

    Formula run() {
        auto f = formula();
        skip();
        if (pos_ != s_.size()) throw ParseError("unexpected trailing input", pos_);
        return f;
    }

private:
    const std::string &s_;
    std::size_t pos_ = 0;
    int max_agents_;

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool starts(const char *lit) const { return s_.compare(pos_, std::strlen(lit), lit) == 0; }

    std::optional<BinTok> peek_binop(std::size_t &len) {
        skip();
        // longest match first
        static const std::pair<const char *, int> logic_toks[] = {
            {"!<->", 9}, {"!<-", 8}, {"!->", 7}, {"!&", 6}, {"!|", 5},
            {"<->", 4}, {"<-", 3}, {"->", 2}, {"&", 1}, {"|", 0}};
        for (auto &[lit, op] : logic_toks)
            if (starts(lit)) {
                len = std::strlen(lit);
                return BinTok{false, op};
            }
        static const char temps[] = "URWM";
        if (pos_ < s_.size())
            for (int i = 0; i < 4; ++i)
                if (s_[pos_] == temps[i]) {
                    len = 1;
                    return BinTok{true, i};
                }
        return std::nullopt;
    }

    Formula formula() {
        auto left = unary();
        std::size_t len = 0;
        auto tok = peek_binop(len);
        if (!tok) return left;
        pos_ += len;
        auto right = formula();
        return build_bin(*tok, left, right, std::nullopt);
    }

    Formula build_bin(BinTok tok, Formula l, Formula r, std::optional<Coalition> c) {
        try {
            if (tok.temporal) return temp2(static_cast<BinTempOp>(tok.op), l, r, c);
            return logic(static_cast<BinLogicOp>(tok.op), l, r);
        } catch (const FormulaError &e) {
            throw ParseError(e.what(), pos_);
        }
    }

    Coalition coalition() {
        // at '<'
        std::size_t start = pos_;
        ++pos_;
        Coalition c = 0;
        skip();
        if (pos_ < s_.size() && s_[pos_] == '>') {
            ++pos_;
            return c;
        }
        while (true) {
            skip();
            std::size_t b = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            if (b == pos_) throw ParseError("expected agent index in coalition", pos_);
            int a = std::stoi(s_.substr(b, pos_ - b));
            if (a < 1 || a > max_agents_) throw ParseError("coalition index out of range", b);
            c |= Coalition(1) << (a - 1);
            skip();
            if (pos_ < s_.size() && s_[pos_] == ',') { ++pos_; continue; }
            if (pos_ < s_.size() && s_[pos_] == '>') { ++pos_; break; }
            throw ParseError("unterminated coalition", start);
        }
        return c;
    }

    Formula quantified(Coalition c) {
        skip();
        if (pos_ >= s_.size()) throw ParseError("expected temporal operator after coalition", pos_);
        char ch = s_[pos_];
        if (ch == 'X' || ch == 'F' || ch == 'G') {
            ++pos_;
            auto op = ch == 'X' ? UnaryOp::Next : ch == 'F' ? UnaryOp::Eventually : UnaryOp::Globally;
            auto body = unary();
            try {
                return temp(op, body, c);
            } catch (const FormulaError &e) {
                throw ParseError(e.what(), pos_);
            }
        }
        if (ch == '(') {
            ++pos_;
            auto l = unary();
            std::size_t len = 0;
            auto tok = peek_binop(len);
            if (!tok || !tok->temporal) throw ParseError("expected U, R, W or M after coalition", pos_);
            pos_ += len;
            auto r = formula();
            skip();
            if (pos_ >= s_.size() || s_[pos_] != ')') throw ParseError("expected ')'", pos_);
            ++pos_;
            return build_bin(*tok, l, r, c);
        }
        throw ParseError("expected temporal operator after coalition", pos_);
    }

    Formula unary() {
        skip();
        if (pos_ >= s_.size()) throw ParseError("unexpected end of input", pos_);
        char ch = s_[pos_];
        if (ch == '!') {
            ++pos_;
            return neg(unary());
        }
        if (ch == '(') {
            ++pos_;
            auto f = formula();
            skip();
            if (pos_ >= s_.size() || s_[pos_] != ')') throw ParseError("expected ')'", pos_);
            ++pos_;
            return f;
        }
        if (ch == '<') return quantified(coalition());
        if (ch == 'A') { ++pos_; return quantified(0); }
        if (ch == 'E') {
            if (max_agents_ < 1) throw ParseError("coalition index out of range", pos_);
            ++pos_;
            return quantified(1);
        }
        if (ch == 'X' || ch == 'F' || ch == 'G') {
            ++pos_;
            auto op = ch == 'X' ? UnaryOp::Next : ch == 'F' ? UnaryOp::Eventually : UnaryOp::Globally;
            auto body = unary();
            try {
                return temp(op, body);
            } catch (const FormulaError &e) {
                throw ParseError(e.what(), pos_);
            }
        }
        if (std::islower(static_cast<unsigned char>(ch))) {
            std::size_t b = pos_;
            while (pos_ < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
                ++pos_;
            return prop(s_.substr(b, pos_ - b));
        }
        if (std::isupper(static_cast<unsigned char>(ch)))
            throw ParseError(std::string("unknown operator '") + ch + "'", pos_);
        throw ParseError(std::string("unexpected character '") + ch + "'", pos_);
    }
};

} // namespace

Formula parse_formula(const std::string &text, int max_agents) {
    return Parser(text, max_agents).run();
}

} // namespace tlearn
