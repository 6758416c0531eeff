#include "problem.hpp"

#include <cctype>
#include <set>

#include "errors.hpp"
#include "expression.hpp"

namespace bvkit {

namespace {

struct Statement {
    std::string text;
    int line, column;  // of the first character of text
};

// Splits on ';' with comments removed; positions refer to the original text.
std::vector<Statement> split_statements(const std::string& src, int& end_line, int& end_col) {
    std::vector<Statement> out;
    Statement cur{"", 1, 1};
    bool started = false;
    int line = 1, col = 1;
    for (size_t i = 0; i < src.size(); ++i) {
        char c = src[i];
        if (c == '#') {
            while (i < src.size() && src[i] != '\n') ++i;
            if (i == src.size()) break;
            c = '\n';
        }
        if (c == ';') {
            if (started) out.push_back(cur);
            cur = {"", line, col + 1};
            started = false;
        } else {
            if (!started && !std::isspace(static_cast<unsigned char>(c))) {
                started = true;
                cur = {"", line, col};
            }
            if (started) cur.text += c;
        }
        if (c == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    if (started) {
        end_line = cur.line;
        end_col = cur.column;
        throw ParseError("missing ';' after statement", cur.line, cur.column);
    }
    end_line = line;
    end_col = col;
    return out;
}

bool is_ident(const std::string& s) {
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
    for (char c : s)
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
    return true;
}

// Position of offset k inside a statement.
std::pair<int, int> locate(const Statement& st, size_t k) {
    int line = st.line, col = st.column;
    for (size_t i = 0; i < k && i < st.text.size(); ++i) {
        if (st.text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

size_t skip_space(const std::string& s, size_t k) {
    while (k < s.size() && std::isspace(static_cast<unsigned char>(s[k]))) ++k;
    return k;
}

std::string read_word(const std::string& s, size_t& k) {
    size_t b = k;
    while (k < s.size() && (std::isalnum(static_cast<unsigned char>(s[k])) || s[k] == '_')) ++k;
    return s.substr(b, k - b);
}

}  // namespace

bool known_option(const std::string& key) {
    static const std::set<std::string> keys = {"depth", "pmax", "bound", "order"};
    return keys.count(key) > 0;
}

MonomialOrder parse_order(const std::string& name) {
    if (name == "grevlex") return MonomialOrder::Grevlex;
    if (name == "lex") return MonomialOrder::Lex;
    throw invalid("unknown monomial order '" + name + "' (expected grevlex or lex)");
}

int ProblemSpec::option_int(const std::string& key, int fallback) const {
    auto it = options.find(key);
    return it == options.end() ? fallback : std::stoi(it->second);
}

MonomialOrder ProblemSpec::order() const {
    auto it = options.find("order");
    return it == options.end() ? MonomialOrder::Grevlex : parse_order(it->second);
}

std::string ProblemSpec::to_text() const {
    std::string s = "vars";
    for (const auto& c : coords) s += " " + c;
    s += ";\n";
    if (s0) {
        s += "S0 = " + s0->to_string(coords) + ";\n";
    } else {
        s += "dS0 = ";
        for (size_t i = 0; i < partials.size(); ++i) s += (i ? ", " : "") + partials[i].to_string(coords);
        s += ";\n";
    }
    for (const auto& [k, v] : options) s += "option " + k + "=" + v + ";\n";
    return s;
}

ProblemSpec parse_problem(const std::string& text) {
    int end_line = 1, end_col = 1;
    auto stmts = split_statements(text, end_line, end_col);
    ProblemSpec spec;
    bool have_vars = false, have_action = false;
    for (const auto& st : stmts) {
        const std::string& s = st.text;
        size_t k = 0;
        std::string head = read_word(s, k);
        auto at = [&](size_t off) { return locate(st, off); };
        auto fail = [&](const std::string& msg, size_t off) {
            auto [l, c] = at(off);
            throw ParseError(msg, l, c);
        };
        if (head == "vars") {
            if (have_vars) fail("duplicate 'vars' statement", 0);
            have_vars = true;
            std::set<std::string> seen;
            while (true) {
                k = skip_space(s, k);
                if (k >= s.size()) break;
                size_t b = k;
                std::string name = read_word(s, k);
                if (name.empty()) fail("expected a variable name", b);
                if (!is_ident(name)) fail("invalid variable name '" + name + "'", b);
                if (!seen.insert(name).second) fail("duplicate variable '" + name + "'", b);
                if (name == "option" || name == "vars") fail("reserved word used as a variable", b);
                spec.coords.push_back(name);
                k = skip_space(s, k);
                if (k < s.size() && s[k] == ',') ++k;
            }
            if (spec.coords.empty()) fail("'vars' needs at least one variable", 0);
            if (spec.coords.size() > 12) fail("at most 12 variables are supported", 0);
        } else if (head == "S0" || head == "dS0") {
            if (!have_vars) fail("'" + head + "' before 'vars'", 0);
            if (have_action) fail("the action is already given", 0);
            have_action = true;
            k = skip_space(s, k);
            if (k >= s.size() || s[k] != '=') fail("expected '=' after " + head, k);
            ++k;
            int n = static_cast<int>(spec.coords.size());
            if (head == "S0") {
                auto [l, c] = at(k);
                spec.s0 = parse_polynomial(s.substr(k), spec.coords, l, c);
                for (int i = 0; i < n; ++i) spec.partials.push_back(spec.s0->derivative(i));
            } else {
                // comma-separated components
                size_t b = k;
                int depth = 0;
                for (size_t i = k; i <= s.size(); ++i) {
                    if (i < s.size() && s[i] == '(') ++depth;
                    if (i < s.size() && s[i] == ')') --depth;
                    if (i == s.size() || (s[i] == ',' && depth == 0)) {
                        auto [l, c] = at(b);
                        spec.partials.push_back(parse_polynomial(s.substr(b, i - b), spec.coords, l, c));
                        b = i + 1;
                    }
                }
                if (static_cast<int>(spec.partials.size()) != n)
                    fail("dS0 needs " + std::to_string(n) + " components, got " + std::to_string(spec.partials.size()), 0);
                for (int i = 0; i < n; ++i)
                    for (int j = i + 1; j < n; ++j)
                        if (spec.partials[i].derivative(j) != spec.partials[j].derivative(i))
                            fail("one-form is not closed: d" + spec.coords[j] + " of component " + spec.coords[i] +
                                     " differs from d" + spec.coords[i] + " of component " + spec.coords[j],
                                 0);
            }
        } else if (head == "option") {
            k = skip_space(s, k);
            size_t b = k;
            std::string key = read_word(s, k);
            if (!known_option(key)) fail("unknown option '" + key + "'", b);
            k = skip_space(s, k);
            if (k >= s.size() || s[k] != '=') fail("expected '=' after option name", k);
            k = skip_space(s, k + 1);
            size_t vb = k;
            std::string value = read_word(s, k);
            if (skip_space(s, k) != s.size()) fail("unexpected text after option value", skip_space(s, k));
            if (key == "order") {
                if (value != "grevlex" && value != "lex") fail("order must be grevlex or lex", vb);
            } else {
                bool digits = !value.empty();
                for (char c : value) digits = digits && std::isdigit(static_cast<unsigned char>(c));
                if (!digits) fail("option " + key + " needs a nonnegative integer", vb);
            }
            spec.options[key] = value;
        } else {
            fail(head.empty() ? "expected a statement" : "unknown statement '" + head + "'", 0);
        }
    }
    if (!have_vars) throw ParseError("missing 'vars' statement", end_line, end_col);
    if (!have_action) throw ParseError("missing 'S0 = ...' or 'dS0 = ...' statement", end_line, end_col);
    return spec;
}

}  // namespace bvkit
