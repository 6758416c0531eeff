#include "graded.hpp"

#include <algorithm>
#include <climits>
#include <set>

#include "expression.hpp"

namespace bvkit {

GeneratorTable::GeneratorTable(std::vector<std::string> coords, std::vector<Generator> gens)
    : coords_(std::move(coords)), gens_(std::move(gens)), dual_(coords_.size(), -1) {
    std::set<std::string> names(coords_.begin(), coords_.end());
    if (names.size() != coords_.size()) throw invalid("duplicate coordinate name");
    for (size_t i = 0; i < gens_.size(); ++i) {
        const auto& g = gens_[i];
        if (!names.insert(g.name).second) throw invalid("duplicate generator name '" + g.name + "'");
        if (g.degree == 0) throw invalid("generator '" + g.name + "' has degree 0");
        if (g.coord >= 0) {
            if (g.coord >= ncoords() || g.degree != -1 || dual_[g.coord] != -1)
                throw invalid("bad coordinate dual '" + g.name + "'");
            dual_[g.coord] = static_cast<int>(i);
        }
        if (g.partner >= 0) {
            if (g.partner >= size() || gens_[g.partner].partner != static_cast<int>(i) ||
                g.degree + gens_[g.partner].degree != -1)
                throw invalid("inconsistent pairing for '" + g.name + "'");
        }
    }
}

std::shared_ptr<const GeneratorTable> GeneratorTable::make(
    std::vector<std::string> coords, const std::vector<std::pair<std::string, int>>& negatives,
    bool with_partners) {
    std::vector<Generator> gens;
    for (size_t i = 0; i < coords.size(); ++i) gens.push_back({coords[i] + "s", -1, -1, static_cast<int>(i)});
    size_t first = gens.size();
    for (const auto& [name, deg] : negatives) {
        if (deg > -2) throw invalid("generator '" + name + "' must have degree <= -2");
        gens.push_back({name, deg, -1, -1});
    }
    if (with_partners) {
        size_t count = negatives.size();
        for (size_t k = 0; k < count; ++k) {
            const auto& name = negatives[k].first;
            if (name.size() < 2 || name.back() != 's')
                throw invalid("negative generator '" + name + "' must end in 's'");
            int neg = static_cast<int>(first + k);
            int pos = static_cast<int>(gens.size());
            gens.push_back({name.substr(0, name.size() - 1), -negatives[k].second - 1, neg, -1});
            gens[neg].partner = pos;
        }
    }
    return std::make_shared<const GeneratorTable>(std::move(coords), std::move(gens));
}

int GeneratorTable::index_of(const std::string& name) const {
    for (int i = 0; i < size(); ++i)
        if (gens_[i].name == name) return i;
    return -1;
}

int GeneratorTable::coord_index(const std::string& name) const {
    for (int i = 0; i < ncoords(); ++i)
        if (coords_[i] == name) return i;
    return -1;
}

GradingData grading(const GeneratorTable& t, const GMono& m) {
    GradingData d;
    for (const auto& [g, e] : m) {
        int deg = t[g].degree;
        d.degree += deg * e;
        if (deg > 0) {
            d.weight += deg * e;
            d.positive_count += e;
        }
    }
    return d;
}

int gmono_multiply(const GeneratorTable& t, const GMono& a, const GMono& b, GMono& out) {
    out.clear();
    int parity = 0;
    for (const auto& [gb, eb] : b) {
        if (!t.odd(gb)) continue;
        for (const auto& [ga, ea] : a) {
            if (!t.odd(ga)) continue;
            if (ga == gb) return 0;
            if (ga > gb) parity ^= 1;
        }
    }
    size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
            out.push_back(a[i++]);
        } else if (i == a.size() || b[j].first < a[i].first) {
            out.push_back(b[j++]);
        } else {
            out.push_back({a[i].first, static_cast<uint16_t>(a[i].second + b[j].second)});
            ++i;
            ++j;
        }
    }
    return parity ? -1 : 1;
}

int gmono_exponent(const GMono& m, int gen) {
    for (const auto& [g, e] : m)
        if (g == gen) return e;
    return 0;
}

int gmono_derive(const GeneratorTable& t, const GMono& m, int gen, bool left, GMono& out) {
    out.clear();
    int found = -1;
    for (size_t k = 0; k < m.size(); ++k)
        if (m[k].first == gen) found = static_cast<int>(k);
    if (found < 0) return 0;
    int e = m[found].second;
    out = m;
    if (e == 1)
        out.erase(out.begin() + found);
    else
        out[found].second = static_cast<uint16_t>(e - 1);
    if (!t.odd(gen)) return e;
    int passed = 0;
    for (size_t k = 0; k < m.size(); ++k) {
        if (static_cast<int>(k) == found || !t.odd(m[k].first)) continue;
        if (left ? static_cast<int>(k) < found : static_cast<int>(k) > found) passed += m[k].second;
    }
    return (passed & 1) ? -1 : 1;
}

GradedPolynomial GradedPolynomial::scalar(TablePtr t, const Polynomial& f) {
    GradedPolynomial r(std::move(t));
    r.add_term({}, f);
    return r;
}

GradedPolynomial GradedPolynomial::generator(TablePtr t, int gen) {
    int n = t->ncoords();
    GradedPolynomial r(std::move(t));
    r.add_term({{static_cast<uint16_t>(gen), 1}}, Polynomial::constant(n, 1));
    return r;
}

GradedPolynomial GradedPolynomial::coordinate(TablePtr t, int i) {
    int n = t->ncoords();
    return scalar(std::move(t), Polynomial::variable(n, i));
}

GradedPolynomial GradedPolynomial::term(TablePtr t, const GMono& m, const Polynomial& f) {
    GradedPolynomial r(std::move(t));
    r.add_term(m, f);
    return r;
}

void GradedPolynomial::add_term(const GMono& m, const Polynomial& f) {
    if (f.is_zero()) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, f);
        return;
    }
    it->second += f;
    if (it->second.is_zero()) terms_.erase(it);
}

GradedPolynomial& GradedPolynomial::operator+=(const GradedPolynomial& o) {
    if (!t_) t_ = o.t_;
    for (const auto& [m, f] : o.terms_) add_term(m, f);
    return *this;
}

GradedPolynomial& GradedPolynomial::operator-=(const GradedPolynomial& o) {
    if (!t_) t_ = o.t_;
    for (const auto& [m, f] : o.terms_) add_term(m, -f);
    return *this;
}

GradedPolynomial GradedPolynomial::operator+(const GradedPolynomial& o) const {
    GradedPolynomial r = *this;
    r += o;
    return r;
}

GradedPolynomial GradedPolynomial::operator-(const GradedPolynomial& o) const {
    GradedPolynomial r = *this;
    r -= o;
    return r;
}

GradedPolynomial GradedPolynomial::operator-() const {
    GradedPolynomial r = *this;
    for (auto& [m, f] : r.terms_) f = -f;
    return r;
}

GradedPolynomial GradedPolynomial::operator*(const GradedPolynomial& o) const {
    GradedPolynomial r(t_ ? t_ : o.t_);
    GMono m;
    for (const auto& [ma, fa] : terms_)
        for (const auto& [mb, fb] : o.terms_) {
            int s = gmono_multiply(*r.t_, ma, mb, m);
            if (s == 0) continue;
            Polynomial c = fa * fb;
            r.add_term(m, s > 0 ? c : -c);
        }
    return r;
}

GradedPolynomial GradedPolynomial::operator*(const Polynomial& f) const {
    GradedPolynomial r(t_);
    for (const auto& [m, c] : terms_) r.add_term(m, c * f);
    return r;
}

GradedPolynomial GradedPolynomial::operator*(const Rational& c) const {
    GradedPolynomial r(t_);
    if (c == 0) return r;
    for (const auto& [m, f] : terms_) r.terms_.emplace(m, f * c);
    return r;
}

Polynomial GradedPolynomial::scalar_part() const {
    auto it = terms_.find(GMono{});
    return it == terms_.end() ? Polynomial(nvars()) : it->second;
}

std::vector<GradingData> GradedPolynomial::term_gradings() const {
    std::vector<GradingData> out;
    for (const auto& [m, f] : terms_) out.push_back(grading(*t_, m));
    return out;
}

bool GradedPolynomial::homogeneous(int degree) const {
    for (const auto& [m, f] : terms_)
        if (grading(*t_, m).degree != degree) return false;
    return true;
}

int GradedPolynomial::min_weight() const {
    int w = INT_MAX;
    for (const auto& [m, f] : terms_) w = std::min(w, grading(*t_, m).weight);
    return w;
}

int GradedPolynomial::max_weight() const {
    int w = -1;
    for (const auto& [m, f] : terms_) w = std::max(w, grading(*t_, m).weight);
    return w;
}

bool GradedPolynomial::in_I2() const {
    for (const auto& [m, f] : terms_)
        if (grading(*t_, m).positive_count < 2) return false;
    return true;
}

std::string GradedPolynomial::to_string() const {
    if (terms_.empty()) return "0";
    std::vector<std::pair<int, const GMono*>> order;
    for (const auto& [m, f] : terms_) order.push_back({grading(*t_, m).weight, &m});
    std::stable_sort(order.begin(), order.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    std::string s;
    for (const auto& [w, m] : order) {
        if (!s.empty()) s += " + ";
        s += "(" + terms_.at(*m).to_string(t_->coords()) + ")";
        for (const auto& [g, e] : *m) {
            s += "*" + (*t_)[g].name;
            if (e > 1) s += "^" + std::to_string(e);
        }
    }
    return s;
}

GradedPolynomial truncate(const GradedPolynomial& a, int p) {
    GradedPolynomial r(a.table());
    for (const auto& [m, f] : a.terms())
        if (grading(*a.table(), m).weight <= p) r.add_term(m, f);
    return r;
}

GradedPolynomial gr_project(const GradedPolynomial& a, int p) {
    GradedPolynomial r(a.table());
    for (const auto& [m, f] : a.terms())
        if (grading(*a.table(), m).weight == p) r.add_term(m, f);
    return r;
}

GradingData grading_data(const GradedPolynomial& a, const GMono& m) { return grading(*a.table(), m); }

GradedPolynomial retable(const GradedPolynomial& a, const TablePtr& t) {
    if (a.table() == t) return a;
    GradedPolynomial r(t);
    for (const auto& [m, f] : a.terms()) {
        for (const auto& [g, e] : m)
            if (g >= t->size()) throw Error(ErrorKind::Internal, "retable: generator out of range");
        r.add_term(m, f);
    }
    return r;
}

GradedPolynomial parse_graded(const std::string& text, const TablePtr& t) {
    ExprAlgebra<GradedPolynomial> alg;
    alg.ident = [&](const std::string& name, int line, int col) {
        int c = t->coord_index(name);
        if (c >= 0) return GradedPolynomial::coordinate(t, c);
        int g = t->index_of(name);
        if (g >= 0) return GradedPolynomial::generator(t, g);
        throw ParseError("unbound variable '" + name + "'", line, col);
    };
    alg.constant = [&](const Rational& c) {
        return GradedPolynomial::scalar(t, Polynomial::constant(t->ncoords(), c));
    };
    alg.as_constant = [](const GradedPolynomial& p) -> std::optional<Rational> {
        if (p.is_zero()) return Rational(0);
        if (p.terms().size() != 1 || !p.terms().begin()->first.empty()) return std::nullopt;
        const Polynomial& f = p.terms().begin()->second;
        if (!f.is_constant()) return std::nullopt;
        return f.constant_term();
    };
    return evaluate(*parse_expression(text), alg);
}

GradedPolynomial embed(const GradedPolynomial& a, const TablePtr& target, const std::vector<int>& coord_map,
                       const std::vector<int>& gen_map) {
    GradedPolynomial r(target);
    int n = target->ncoords();
    for (const auto& [m, f] : a.terms()) {
        GradedPolynomial acc = GradedPolynomial::scalar(target, f.embed(n, coord_map));
        for (const auto& [g, e] : m)
            for (int k = 0; k < e; ++k) acc = acc * GradedPolynomial::generator(target, gen_map[g]);
        r += acc;
    }
    return r;
}

}  // namespace bvkit
