// Command-line front end. Talks to the library only through the C API.
#include <CLI11.hpp>
#include <json.hpp>

#include <bvkit/bvkit.h>

#include <cctype>
#include <cstdio>
#include <fstream>
#include <future>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using Json = nlohmann::ordered_json;

namespace {

// Thrown to leave a command with a message and exit status.
struct Exit {
    int code;
    std::string message;
};

void check(bvkit_status st, const std::string& what) {
    if (st != BVKIT_OK) throw Exit{st == BVKIT_ERR_CHECK_FAILED ? 1 : 2, what + ": " + bvkit_last_error()};
}

std::string take(char* s) {
    std::string out = s ? s : "";
    bvkit_string_free(s);
    return out;
}

template <class T, void (*Free)(T*)>
struct Handle {
    T* p = nullptr;
    Handle() = default;
    Handle(const Handle&) = delete;
    Handle& operator=(const Handle&) = delete;
    ~Handle() { Free(p); }
};
using Problem = Handle<bvkit_problem, bvkit_problem_free>;
using Resolution = Handle<bvkit_resolution, bvkit_resolution_free>;
using Solution = Handle<bvkit_solution, bvkit_solution_free>;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Exit{2, "cannot read '" + path + "'"};
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Exit{2, "cannot write '" + path + "'"};
    out << text;
    if (text.empty() || text.back() != '\n') out << '\n';
}

// "example:<id>" names the problem of a registry example.
std::string input_text(const std::string& arg) {
    const std::string tag = "example:";
    if (arg.rfind(tag, 0) == 0) {
        char* t = nullptr;
        check(bvkit_example_problem(arg.substr(tag.size()).c_str(), &t), "example problem");
        return take(t);
    }
    return read_file(arg);
}

bool looks_like_json(const std::string& text) {
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) return c == '{';
    return false;
}

void load_problem(const std::string& arg, Problem& p) { check(bvkit_problem_parse(input_text(arg).c_str(), &p.p), arg); }

// Paper-style names: xs -> x*, b1s -> β1*, b1 -> β1; '*' products become '·'.
class Display {
public:
    explicit Display(const Json& resolution) {
        for (const auto& c : resolution.at("coords")) {
            std::string x = c.get<std::string>();
            names_[x + "s"] = x + "*";
        }
        for (const auto& g : resolution.at("generators")) {
            std::string n = g.at("name").get<std::string>();
            if (n.size() < 2 || n.back() != 's') continue;
            std::string base = n.substr(0, n.size() - 1);
            size_t k = 0;
            while (k < base.size() && std::isalpha(static_cast<unsigned char>(base[k]))) ++k;
            auto it = greek().find(base.substr(0, k));
            std::string sym = (it == greek().end() ? base.substr(0, k) : it->second) + base.substr(k);
            names_[n] = sym + "*";
            names_[base] = sym;
        }
    }

    std::string operator()(const std::string& s) const {
        std::string out;
        for (size_t i = 0; i < s.size();) {
            char c = s[i];
            if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                size_t b = i;
                while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
                std::string w = s.substr(b, i - b);
                auto it = names_.find(w);
                out += it == names_.end() ? w : it->second;
            } else {
                out += c == '*' ? std::string("·") : std::string(1, c);
                ++i;
            }
        }
        return out;
    }

private:
    std::map<std::string, std::string> names_;
    static const std::map<std::string, std::string>& greek() {
        static const std::map<std::string, std::string> g = {{"b", "β"}, {"g", "γ"}, {"c", "ξ"}, {"d", "ρ"},
                                                             {"e", "σ"}, {"f", "τ"}, {"k", "κ"}, {"l", "λ"},
                                                             {"m", "μ"}, {"n", "ν"}};
        return g;
    }
};

struct Common {
    bool json = false;
    std::string out;
};

// Prints the JSON document or the human text, and saves JSON when asked.
void emit(const Common& c, const std::string& json, const std::string& human) {
    if (!c.out.empty()) write_file(c.out, json);
    std::cout << (c.json ? json + "\n" : human);
}

bvkit_order order_of(const std::string& flag, const Problem* p) {
    if (flag == "lex") return BVKIT_ORDER_LEX;
    if (flag == "grevlex") return BVKIT_ORDER_GREVLEX;
    return p && p->p ? bvkit_problem_order(p->p) : BVKIT_ORDER_GREVLEX;
}

int pick(int flag, const Problem& p, const char* key, int fallback) {
    return flag >= 0 ? flag : bvkit_problem_option(p.p, key, fallback);
}

std::string counts_text(const Json& res) {
    std::string s;
    int deg = -2;
    for (const auto& c : res.at("counts")) s += (s.empty() ? "" : ", ") + std::to_string(deg--) + ": " + std::to_string(c.get<int>());
    return s.empty() ? "none" : s;
}

void load_solution(const std::string& path, Solution& s) {
    std::string text = read_file(path);
    check(bvkit_solution_from_json(text.c_str(), &s.p), path);
}

Json solution_json(const Solution& s) {
    char* j = nullptr;
    check(bvkit_solution_to_json(s.p, &j), "solution");
    return Json::parse(take(j));
}

std::string verify_text(const Json& v) {
    std::ostringstream o;
    o << "[S,S] vanishes through order " << v.at("order").get<int>() << (v.at("exact").get<bool>() ? " (identically)" : "")
      << "\nS restricts to S0: " << (v.at("restricts_to_s0").get<bool>() ? "yes" : "no")
      << "\nS = S_lin mod I^(2): " << (v.at("associated").get<bool>() ? "yes" : "no") << "\n";
    return o.str();
}

// Names the first violated invariant of a verify report, if any.
std::optional<std::string> verify_failure(const Json& v) {
    int p = v.at("requested").get<int>();
    if (v.at("order").get<int>() < p)
        return "[S,S] not in F^" + std::to_string(p + 1) + " and I^(2) (offending weight " +
               std::to_string(v.at("failure_weight").get<int>()) + ")";
    if (!v.at("restricts_to_s0").get<bool>()) return "S does not restrict to S0";
    if (!v.at("associated").get<bool>()) return "S differs from S_lin modulo I^(2)";
    return std::nullopt;
}

std::string cohomology_text(const std::string& label, const Json& r) {
    std::ostringstream o;
    o << label << ": dim " << r.at("dim").get<size_t>() << " (polynomial degree <= " << r.at("bound").get<int>() << ", "
      << (r.at("stable").get<bool>() ? "stable at the next bound" : "not yet stable") << ")\n";
    for (const auto& b : r.at("basis")) o << "  " << b.get<std::string>() << "\n";
    return o.str();
}

std::string example_text(const Json& r) {
    std::ostringstream o;
    o << r.at("id").get<std::string>() << "  " << r.at("title").get<std::string>() << "\n";
    for (const auto& c : r.at("checks")) {
        o << "  " << (c.at("ok").get<bool>() ? "ok    " : "FAIL  ") << c.at("name").get<std::string>();
        std::string d = c.at("detail").get<std::string>();
        if (!d.empty()) o << "  (" << d << ")";
        o << "\n";
    }
    for (const auto& n : r.at("notes")) o << "  note  " << n.get<std::string>() << "\n";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f", r.at("seconds").get<double>());
    o << "  " << (r.at("ok").get<bool>() ? "passed" : "FAILED") << " in " << buf << " s\n";
    return o.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"bvkit: Batalin-Vilkovisky data for polynomial actions"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(bvkit_version()));

    Common common;
    int depth = -1, pmax = -1, bound = -1, p = 0;
    std::string order, input, input2, fexpr, gexpr;
    std::optional<uint64_t> seed;
    auto add_common = [&](CLI::App* c) {
        c->add_flag("--json", common.json, "Print JSON instead of text");
        c->add_option("--out", common.out, "Also write the JSON result to this path");
    };

    auto* tate = app.add_subcommand("tate", "Build and check a Koszul-Tate resolution");
    tate->add_option("problem", input, "Problem file, or example:<id>")->required();
    tate->add_option("--depth", depth, "Certify exactness in degrees -1..-depth")->check(CLI::NonNegativeNumber);
    add_common(tate);

    auto* solve = app.add_subcommand("solve", "Solve the classical master equation");
    solve->add_option("problem", input, "Problem file, or example:<id>")->required();
    solve->add_option("--depth", depth, "Resolution depth (defaults to pmax)")->check(CLI::NonNegativeNumber);
    solve->add_option("--pmax", pmax, "Filtration order (defaults to depth)")->check(CLI::NonNegativeNumber);
    solve->add_option("--seed", seed, "Shift every lift by a seeded random exact term");
    add_common(solve);

    auto* verify = app.add_subcommand("verify", "Verify a saved solution");
    verify->add_option("solution", input, "Solution JSON")->required();
    verify->add_option("--pmax", pmax, "Order to check (defaults to the solution's order)")->check(CLI::NonNegativeNumber);
    add_common(verify);

    auto* gauge = app.add_subcommand("gauge", "Find a gauge transformation between two solutions");
    gauge->add_option("first", input, "Solution JSON")->required();
    gauge->add_option("second", input2, "Solution JSON over the same resolution")->required();
    gauge->add_option("--pmax", pmax, "Filtration order")->check(CLI::NonNegativeNumber);
    add_common(gauge);

    auto* brst = app.add_subcommand("brst", "BRST cohomology in degrees 0 and 1");
    brst->require_subcommand(1);
    auto add_brst = [&](const char* name, const char* help) {
        auto* c = brst->add_subcommand(name, help);
        c->add_option("problem", input, "Problem file, or example:<id>")->required();
        c->add_option("--bound", bound, "Polynomial degree bound")->check(CLI::NonNegativeNumber);
        c->add_option("--order", order, "Monomial order for normal forms")->check(CLI::IsMember({"grevlex", "lex"}));
        add_common(c);
        return c;
    };
    auto* h0 = add_brst("h0", "Invariant functions modulo the Jacobian ideal");
    auto* h1 = add_brst("h1", "Degree-one cohomology");
    auto* bracket = add_brst("bracket", "Induced bracket of two invariants");
    bracket->add_option("--f", fexpr, "First invariant")->required();
    bracket->add_option("--g", gexpr, "Second invariant")->required();
    auto* e2 = add_brst("e2", "E2 page of the weight spectral sequence");
    e2->add_option("--p", p, "Column p");
    e2->add_option("--depth", depth, "Resolution depth when solving from a problem file")->check(CLI::NonNegativeNumber);

    auto* example = app.add_subcommand("example", "Run the checks of a registry example");
    example->add_option("id", input, "Example id, 'all' or 'list'")->required();
    example->add_flag("--check", "Run the example's checks (the default)");
    add_common(example);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (tate->parsed()) {
            Problem prob;
            load_problem(input, prob);
            int d = pick(depth, prob, "depth", 3);
            Resolution r;
            check(bvkit_resolution_build(prob.p, d, &r.p), "tate");
            char *rj = nullptr, *cj = nullptr;
            check(bvkit_resolution_to_json(r.p, &rj), "tate");
            check(bvkit_resolution_check(r.p, d, &cj), "tate");
            Json res = Json::parse(take(rj)), acyc = Json::parse(take(cj));
            Display show(res);
            std::ostringstream o;
            o << "generators per degree: " << counts_text(res) << "\n";
            for (const auto& g : res.at("generators"))
                o << "  " << show(g.at("name").get<std::string>()) << " (degree " << g.at("degree").get<int>()
                  << ")  delta = " << show(g.at("delta").get<std::string>()) << "\n";
            bool ok = acyc.at("ok").get<bool>();
            o << "acyclic in degrees -1..-" << d << ": " << (ok ? "yes" : "no") << "\n";
            emit(common, res.dump(2), o.str());
            if (!ok)
                throw Exit{1, "acyclicity fails in degree " + std::to_string(acyc.at("failed_degree").get<int>())};
        } else if (solve->parsed()) {
            Problem prob;
            load_problem(input, prob);
            int P = pmax >= 0 ? pmax : bvkit_problem_option(prob.p, "pmax", depth >= 0 ? depth : bvkit_problem_option(prob.p, "depth", 3));
            int d = pick(depth, prob, "depth", P);
            Resolution r;
            check(bvkit_resolution_build(prob.p, d, &r.p), "solve");
            Solution s;
            check(bvkit_solve(r.p, P, seed ? 1 : 0, seed.value_or(0), &s.p), "solve");
            char* vj = nullptr;
            check(bvkit_verify(s.p, P, &vj), "verify");
            Json sol = solution_json(s), v = Json::parse(take(vj));
            Display show(sol.at("resolution"));
            std::ostringstream o;
            o << "S = " << show(sol.at("S").get<std::string>()) << "\n" << verify_text(v);
            emit(common, sol.dump(2), o.str());
            if (auto f = verify_failure(v)) throw Exit{1, *f};
        } else if (verify->parsed()) {
            Solution s;
            load_solution(input, s);
            int P = pmax >= 0 ? pmax : solution_json(s).at("order").get<int>();
            char* vj = nullptr;
            check(bvkit_verify(s.p, P, &vj), "verify");
            Json v = Json::parse(take(vj));
            emit(common, v.dump(2), verify_text(v));
            if (auto f = verify_failure(v)) throw Exit{1, *f};
        } else if (gauge->parsed()) {
            Solution a, b;
            load_solution(input, a);
            load_solution(input2, b);
            Json aj = solution_json(a);
            int P = pmax >= 0 ? pmax : aj.at("order").get<int>();
            char* gj = nullptr;
            check(bvkit_gauge(a.p, b.p, P, &gj), "gauge");
            Json g = Json::parse(take(gj));
            Display show(aj.at("resolution"));
            std::ostringstream o;
            o << "gauge word of length " << g.at("length").get<size_t>() << "\n";
            int i = 1;
            for (const auto& u : g.at("u")) o << "  u" << i++ << " = " << show(u.get<std::string>()) << "\n";
            o << "transport confirmed modulo F^" << P + 1 << ": " << (g.at("confirmed").get<bool>() ? "yes" : "no") << "\n";
            emit(common, g.dump(2), o.str());
            if (!g.at("confirmed").get<bool>()) throw Exit{1, "transported solution differs from the second solution"};
        } else if (brst->parsed()) {
            std::string text = input_text(input);
            if (e2->parsed()) {
                Solution s;
                Problem prob;
                if (looks_like_json(text)) {
                    check(bvkit_solution_from_json(text.c_str(), &s.p), input);
                } else {
                    check(bvkit_problem_parse(text.c_str(), &prob.p), input);
                    int P = std::max(p + 1, 0);
                    int d = std::max(pick(depth, prob, "depth", P), P);
                    Resolution r;
                    check(bvkit_resolution_build(prob.p, d, &r.p), "e2");
                    check(bvkit_solve(r.p, P, 0, 0, &s.p), "e2");
                }
                int B = bound >= 0 ? bound : (prob.p ? bvkit_problem_option(prob.p, "bound", 6) : 6);
                char* ej = nullptr;
                check(bvkit_brst_e2(s.p, p, B, order_of(order, &prob), &ej), "e2");
                Json r = Json::parse(take(ej));
                emit(common, r.dump(2), cohomology_text("E2^{" + std::to_string(p) + ",0}", r));
            } else {
                Problem prob;
                check(bvkit_problem_parse(text.c_str(), &prob.p), input);
                int B = pick(bound, prob, "bound", 6);
                bvkit_order ord = order_of(order, &prob);
                char* rj = nullptr;
                if (h0->parsed() || h1->parsed()) {
                    bool zero = h0->parsed();
                    check(zero ? bvkit_brst_h0(prob.p, B, ord, &rj) : bvkit_brst_h1(prob.p, B, ord, &rj), "brst");
                    Json r = Json::parse(take(rj));
                    emit(common, r.dump(2), cohomology_text(zero ? "H0" : "H1", r));
                } else {
                    check(bvkit_brst_bracket(prob.p, fexpr.c_str(), gexpr.c_str(), B, ord, &rj), "bracket");
                    Json r = Json::parse(take(rj));
                    std::ostringstream o;
                    o << "B(f, g) on the symmetry generators:\n";
                    int i = 1;
                    for (const auto& v : r.at("cochain")) o << "  tau" << i++ << " -> " << v.get<std::string>() << "\n";
                    o << "class in H1: " << (r.at("coboundary").get<bool>() ? "zero" : "nonzero") << "\n";
                    emit(common, r.dump(2), o.str());
                }
            }
        } else if (example->parsed()) {
            std::vector<std::string> ids;
            int n = bvkit_example_count();
            if (input == "list") {
                Json a = Json::array();
                std::string t;
                for (int i = 0; i < n; ++i) {
                    a.push_back(bvkit_example_id(i));
                    t += std::string(bvkit_example_id(i)) + "\n";
                }
                emit(common, a.dump(2), t);
                return 0;
            }
            if (input == "all")
                for (int i = 0; i < n; ++i) ids.push_back(bvkit_example_id(i));
            else
                ids.push_back(input);
            // Examples are independent; results are printed in id order.
            std::vector<std::future<std::pair<bvkit_status, std::string>>> jobs;
            for (const auto& id : ids)
                jobs.push_back(std::async(std::launch::async, [id] {
                    char* rj = nullptr;
                    bvkit_status st = bvkit_example_run(id.c_str(), &rj);
                    return std::make_pair(st, st == BVKIT_OK || st == BVKIT_ERR_CHECK_FAILED ? take(rj)
                                                                                             : std::string(bvkit_last_error()));
                }));
            Json all = Json::array();
            std::string text;
            std::vector<std::string> failed;
            for (size_t i = 0; i < ids.size(); ++i) {
                auto [st, body] = jobs[i].get();
                if (st != BVKIT_OK && st != BVKIT_ERR_CHECK_FAILED) throw Exit{2, ids[i] + ": " + body};
                Json r = Json::parse(body);
                text += example_text(r);
                all.push_back(r);
                if (!r.at("ok").get<bool>())
                    for (const auto& c : r.at("checks"))
                        if (!c.at("ok").get<bool>()) failed.push_back(ids[i] + ": " + c.at("name").get<std::string>());
            }
            emit(common, (ids.size() == 1 ? all[0] : all).dump(2), text);
            if (!failed.empty()) {
                std::string msg = "failed checks:";
                for (const auto& f : failed) msg += "\n  " + f;
                throw Exit{1, msg};
            }
        }
    } catch (const Exit& e) {
        std::cerr << "bvkit: " << e.message << "\n";
        return e.code;
    } catch (const std::exception& e) {
        std::cerr << "bvkit: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
