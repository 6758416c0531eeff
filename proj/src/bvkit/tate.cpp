#include "tate.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "antibracket.hpp"

namespace bvkit {

std::string level_prefix(int level) {
    static const char* letters[] = {"b", "g", "c", "d", "e", "f", "k", "l", "m", "n"};
    if (level >= 1 && level <= 10) return letters[level - 1];
    return "t" + std::to_string(level) + "_";
}

TateResolution::TateResolution(std::vector<std::string> coords, std::vector<Polynomial> partials,
                               std::optional<Polynomial> s0)
    : coords_(std::move(coords)), partials_(std::move(partials)), s0_(std::move(s0)) {
    int n = ncoords();
    if (s0_ && partials_.empty())
        for (int i = 0; i < n; ++i) partials_.push_back(s0_->derivative(i));
    if (static_cast<int>(partials_.size()) != n) throw invalid("need one partial derivative per coordinate");
    for (auto& p : partials_)
        if (p.nvars() != n) p = p.embed(n, {});
    if (s0_) {
        for (int i = 0; i < n; ++i)
            if (s0_->derivative(i) != partials_[i]) throw invalid("partials do not match S0");
    } else {
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (partials_[i].derivative(j) != partials_[j].derivative(i))
                    throw invalid("one-form is not closed: d_" + coords_[j] + " of component " + coords_[i] +
                                  " differs from d_" + coords_[i] + " of component " + coords_[j]);
    }
    rebuild_table();
}

void TateResolution::rebuild_table() {
    std::vector<std::pair<std::string, int>> neg;
    for (const auto& g : gens_) neg.push_back({g.name, g.degree});
    table_ = GeneratorTable::make(coords_, neg, false);
    for (auto& g : gens_) g.delta = retable(g.delta, table_);
}

void TateResolution::add_generator(const std::string& name, int degree, const GradedPolynomial& delta) {
    if (degree > -2) throw invalid("resolution generators have degree <= -2");
    if (!delta.is_zero() && !delta.homogeneous(degree + 1))
        throw invalid("delta of '" + name + "' must have degree " + std::to_string(degree + 1));
    for (const auto& [m, f] : delta.terms())
        for (const auto& [g, e] : m)
            if (g >= table_->size()) throw invalid("delta of '" + name + "' uses an unknown generator");
    gens_.push_back({name, degree, delta});
    rebuild_table();
}

std::vector<int> TateResolution::counts() const {
    std::vector<int> c;
    for (const auto& g : gens_) {
        size_t k = static_cast<size_t>(-g.degree - 2);
        if (c.size() <= k) c.resize(k + 1, 0);
        ++c[k];
    }
    return c;
}

TateResolution TateResolution::without_generator(const std::string& name) const {
    int n = ncoords();
    std::set<int> removed;  // table indices
    for (size_t k = 0; k < gens_.size(); ++k) {
        bool drop = gens_[k].name == name;
        for (const auto& [m, f] : gens_[k].delta.terms())
            for (const auto& [g, e] : m)
                if (removed.count(g)) drop = true;
        if (drop) removed.insert(n + static_cast<int>(k));
    }
    TateResolution out(coords_, partials_, s0_);
    std::vector<int> gen_map(table_->size(), -1);
    for (int i = 0; i < n; ++i) gen_map[i] = i;
    int next = n;
    for (size_t k = 0; k < gens_.size(); ++k) {
        if (removed.count(n + static_cast<int>(k))) continue;
        gen_map[n + k] = next++;
        std::vector<int> cmap(n);
        for (int i = 0; i < n; ++i) cmap[i] = i;
        // Remaining generators only reference remaining ones; indices shift down.
        GradedPolynomial d(out.table());
        for (const auto& [m, f] : gens_[k].delta.terms()) {
            GMono mm;
            for (const auto& [g, e] : m) mm.push_back({static_cast<uint16_t>(gen_map[g]), e});
            d.add_term(mm, f);
        }
        out.add_generator(gens_[k].name, gens_[k].degree, d);
    }
    out.set_depth(depth_);
    return out;
}

GradedPolynomial tate_delta(const TateResolution& r, const GradedPolynomial& a) {
    const TablePtr& t = a.table();
    GradedPolynomial out(t);
    int n = r.ncoords();
    int ngen = static_cast<int>(r.generators().size());
    std::set<int> used;
    for (const auto& [m, f] : a.terms())
        for (const auto& [g, e] : m) used.insert(g);
    for (int g : used) {
        const Generator& gen = (*t)[g];
        GradedPolynomial dg(t);
        if (gen.coord >= 0) {
            dg = GradedPolynomial::scalar(t, r.partials()[gen.coord]);
        } else if (gen.degree < 0) {
            int k = g - n;
            if (k < 0 || k >= ngen || r.generators()[k].name != gen.name)
                throw Error(ErrorKind::Internal, "table does not extend the resolution");
            dg = retable(r.generators()[k].delta, t);
        } else {
            continue;
        }
        out += dg * left_derivative(a, g);
    }
    return out;
}

std::vector<GMono> negative_monomials(const GeneratorTable& t, int d, int min_gen_degree) {
    std::vector<int> gens;
    for (int i = 0; i < t.size(); ++i)
        if (t[i].degree < 0 && t[i].degree >= min_gen_degree) gens.push_back(i);
    std::vector<GMono> out;
    GMono cur;
    std::function<void(size_t, int)> rec = [&](size_t k, int left) {
        if (left == 0) {
            out.push_back(cur);
            return;
        }
        if (k == gens.size()) return;
        int g = gens[k];
        int deg = -t[g].degree;
        int maxe = t.odd(g) ? 1 : left / deg;
        for (int e = std::min(maxe, left / deg); e >= 0; --e) {
            if (e) cur.push_back({static_cast<uint16_t>(g), static_cast<uint16_t>(e)});
            rec(k + 1, left - e * deg);
            if (e) cur.pop_back();
        }
    };
    if (d <= 0) rec(0, -d);
    std::sort(out.begin(), out.end());
    return out;
}

DegreeSlice::DegreeSlice(const TablePtr& t, int degree)
    : t_(t), degree_(degree), basis_(negative_monomials(*t, degree)) {}

ModuleVector DegreeSlice::coords(const GradedPolynomial& a) const {
    ModuleVector v(basis_.size(), Polynomial(t_->ncoords()));
    for (const auto& [m, f] : a.terms()) {
        auto it = std::lower_bound(basis_.begin(), basis_.end(), m);
        if (it == basis_.end() || *it != m)
            throw Error(ErrorKind::Internal, "monomial outside degree slice " + std::to_string(degree_));
        v[it - basis_.begin()] = f;
    }
    return v;
}

GradedPolynomial DegreeSlice::element(const ModuleVector& v) const {
    GradedPolynomial a(t_);
    for (size_t k = 0; k < basis_.size(); ++k) a.add_term(basis_[k], v[k]);
    return a;
}

BoundaryModule::BoundaryModule(const TateResolution& r, const TablePtr& t, int degree)
    : target_(t, degree), source_(t, degree - 1) {
    for (const auto& m : source_.basis())
        images_.push_back(
            target_.coords(tate_delta(r, GradedPolynomial::term(t, m, Polynomial::constant(t->ncoords(), 1)))));
    if (target_.size() > 0)
        mb_ = std::make_unique<ModuleBasis>(t->ncoords(), static_cast<int>(target_.size()), images_,
                                            MonomialOrder::Grevlex, true);
}

bool BoundaryModule::contains(const GradedPolynomial& a) const {
    if (a.is_zero()) return true;
    if (!mb_) return false;
    return mb_->contains(target_.coords(a));
}

std::optional<GradedPolynomial> BoundaryModule::lift(const GradedPolynomial& a) const {
    if (a.is_zero()) return GradedPolynomial(a.table());
    if (!mb_) return std::nullopt;
    auto c = mb_->lift(target_.coords(a));
    if (!c) return std::nullopt;
    return source_.element(*c);
}

namespace {

// Dense exponent comparison from the highest generator index down.
bool later_generator_greater(const GMono& a, const GMono& b) {
    size_t i = a.size(), j = b.size();
    while (i > 0 && j > 0) {
        const auto& x = a[i - 1];
        const auto& y = b[j - 1];
        if (x.first != y.first) return x.first > y.first;
        if (x.second != y.second) return x.second > y.second;
        --i;
        --j;
    }
    return i > 0;
}

// Scales so that the leading coefficient (on the monomial involving the latest
// generator, then grevlex) is 1.
GradedPolynomial normalize_cocycle(const GradedPolynomial& c) {
    const GMono* lead = nullptr;
    for (const auto& [m, f] : c.terms())
        if (!lead || later_generator_greater(m, *lead)) lead = &m;
    Rational lc = c.terms().at(*lead).leading().coeff;
    return c * (1 / lc);
}

bool in_span(int nvars, int rank, const std::vector<ModuleVector>& gens, const ModuleVector& v) {
    if (gens.empty()) {
        for (const auto& p : v)
            if (!p.is_zero()) return false;
        return true;
    }
    ModuleBasis mb(nvars, rank, gens);
    return mb.contains(v);
}

// Cocycles of R^{-d} generating ker(delta) as an O_X-module.
std::vector<GradedPolynomial> cocycle_generators(const TateResolution& r, const DegreeSlice& z) {
    const TablePtr& t = r.table();
    DegreeSlice prev(t, z.degree() + 1);
    std::vector<ModuleVector> cols;
    for (const auto& m : z.basis())
        cols.push_back(prev.coords(tate_delta(r, GradedPolynomial::term(t, m, Polynomial::constant(t->ncoords(), 1)))));
    std::vector<GradedPolynomial> out;
    if (z.size() == 0) return out;
    if (prev.size() == 0) {
        for (size_t k = 0; k < z.size(); ++k) {
            ModuleVector e(z.size(), Polynomial(t->ncoords()));
            e[k] = Polynomial::constant(t->ncoords(), 1);
            out.push_back(z.element(e));
        }
        return out;
    }
    for (const auto& s : syzygy_basis(t->ncoords(), static_cast<int>(prev.size()), cols))
        out.push_back(z.element(s));
    return out;
}

}  // namespace

TateResolution build_resolution(const std::vector<std::string>& coords, const std::vector<Polynomial>& partials,
                                const std::optional<Polynomial>& s0, int depth) {
    if (depth < 1) throw invalid("depth must be at least 1");
    TateResolution r(coords, partials, s0);
    int n = r.ncoords();
    for (int d = 1; d <= depth; ++d) {
        const TablePtr t = r.table();
        DegreeSlice z(t, -d);
        auto cocycles = cocycle_generators(r, z);
        BoundaryModule b(r, t, -d);
        int rank = static_cast<int>(z.size());
        std::vector<ModuleVector> span;
        for (const auto& m : b.source().basis())
            span.push_back(z.coords(tate_delta(r, GradedPolynomial::term(t, m, Polynomial::constant(n, 1)))));
        std::vector<GradedPolynomial> kept;
        for (const auto& c0 : cocycles) {
            GradedPolynomial c = normalize_cocycle(c0);
            ModuleVector v = z.coords(c);
            if (in_span(n, rank, span, v)) continue;
            span.push_back(v);
            kept.push_back(c);
        }
        int idx = 1;
        for (const auto& c : kept)
            r.add_generator(level_prefix(d) + std::to_string(idx++) + "s", -d - 1, c);
        r.set_depth(d);
    }
    return r;
}

AcyclicityReport check_acyclic(const TateResolution& r, int d) {
    AcyclicityReport rep;
    const TablePtr& t = r.table();
    for (int j = 1; j <= d; ++j) {
        DegreeSlice z(t, -j);
        BoundaryModule b(r, t, -j);
        for (const auto& c : cocycle_generators(r, z)) {
            if (!b.contains(c)) {
                rep.ok = false;
                rep.failed_degree = -j;
                rep.witness = c;
                return rep;
            }
        }
    }
    return rep;
}

GradedPolynomial TateMorphism::apply(const TateResolution& source, const TateResolution& target,
                                     const GradedPolynomial& a) const {
    const TablePtr& tt = target.table();
    int n = source.ncoords();
    GradedPolynomial out(tt);
    for (const auto& [m, f] : a.terms()) {
        GradedPolynomial acc = GradedPolynomial::scalar(tt, f);
        for (const auto& [g, e] : m) {
            GradedPolynomial img(tt);
            if (g < n) {
                img = GradedPolynomial::generator(tt, g);
            } else {
                size_t k = g - n;
                if (k >= images.size() || !images[k].table())
                    throw Error(ErrorKind::Internal, "morphism undefined on '" + source.generators()[k].name + "'");
                img = retable(images[k], tt);
            }
            for (int i = 0; i < e; ++i) acc = acc * img;
        }
        out += acc;
    }
    return out;
}

namespace {

class Lifter {
public:
    explicit Lifter(const TateResolution& r) : r_(r) {}
    GradedPolynomial lift(const GradedPolynomial& a, int degree, const std::string& what) {
        auto it = cache_.find(degree);
        if (it == cache_.end())
            it = cache_.emplace(degree, std::make_unique<BoundaryModule>(r_, r_.table(), degree)).first;
        auto b = it->second->lift(retable(a, r_.table()));
        if (!b) throw LiftError("cannot lift image of '" + what + "': target not exact in degree " + std::to_string(degree));
        return *b;
    }

private:
    const TateResolution& r_;
    std::map<int, std::unique_ptr<BoundaryModule>> cache_;
};

void check_same_base(const TateResolution& a, const TateResolution& b) {
    if (a.coords() != b.coords() || a.partials() != b.partials())
        throw invalid("resolutions are over different (X, dS0)");
}

std::vector<size_t> by_degree(const TateResolution& r) {
    std::vector<size_t> order(r.generators().size());
    for (size_t k = 0; k < order.size(); ++k) order[k] = k;
    std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        return r.generators()[a].degree > r.generators()[b].degree;
    });
    return order;
}

}  // namespace

TateMorphism extend_morphism(const TateResolution& source, const TateResolution& target,
                             const std::vector<std::pair<std::string, GradedPolynomial>>& partial_images,
                             int depth) {
    check_same_base(source, target);
    TateMorphism phi;
    phi.images.resize(source.generators().size());
    Lifter lifter(target);
    for (size_t k : by_degree(source)) {
        const auto& g = source.generators()[k];
        if (g.degree < -depth) break;
        GradedPolynomial rhs = phi.apply(source, target, g.delta);
        const GradedPolynomial* given = nullptr;
        for (const auto& [name, img] : partial_images)
            if (name == g.name) given = &img;
        if (given) {
            GradedPolynomial img = retable(*given, target.table());
            if (!img.is_zero() && !img.homogeneous(g.degree))
                throw invalid("image of '" + g.name + "' has the wrong degree");
            if (tate_delta(target, img) != rhs)
                throw invalid("image of '" + g.name + "' does not commute with delta");
            phi.images[k] = img;
        } else {
            phi.images[k] = lifter.lift(rhs, g.degree + 1, g.name);
        }
    }
    return phi;
}

namespace {

// Morphism under construction between resolutions that grow by padding.
struct Partial {
    std::vector<GradedPolynomial> img;  // unset entries have no table
    bool defined(size_t k) const { return k < img.size() && img[k].table(); }
    void set(size_t k, GradedPolynomial v) {
        if (img.size() <= k) img.resize(k + 1);
        img[k] = std::move(v);
    }
    TateMorphism as_morphism() const { return TateMorphism{img}; }
};

GradedPolynomial gen_element(const TateResolution& r, size_t k) {
    return GradedPolynomial::generator(r.table(), r.ncoords() + static_cast<int>(k));
}

// Defines images of all generators of degree `degree` that lack one, by lifting.
void extend_level(const TateResolution& src, const TateResolution& dst, Partial& m, int degree) {
    Lifter lifter(dst);
    for (size_t k = 0; k < src.generators().size(); ++k) {
        const auto& g = src.generators()[k];
        if (g.degree != degree || m.defined(k)) continue;
        GradedPolynomial rhs = m.as_morphism().apply(src, dst, g.delta);
        m.set(k, lifter.lift(rhs, degree + 1, g.name));
    }
}

// Name-preserving initial images where the target has a same-named generator
// with a compatible differential; otherwise lifted.
void initial_level(const TateResolution& src, const TateResolution& dst, Partial& m, int degree) {
    for (size_t k = 0; k < src.generators().size(); ++k) {
        const auto& g = src.generators()[k];
        if (g.degree != degree || m.defined(k)) continue;
        for (size_t j = 0; j < dst.generators().size(); ++j) {
            const auto& h = dst.generators()[j];
            if (h.name != g.name || h.degree != g.degree) continue;
            GradedPolynomial rhs = m.as_morphism().apply(src, dst, g.delta);
            if (retable(h.delta, dst.table()) == rhs) m.set(k, gen_element(dst, j));
        }
    }
    extend_level(src, dst, m, degree);
}

}  // namespace

Stabilization stabilize(const TateResolution& e0, const TateResolution& f0, int d) {
    check_same_base(e0, f0);
    if (d < 2) throw invalid("stabilize: d must be at least 2");
    TateResolution e = e0, f = f0;
    Partial fw, bw;
    std::vector<int> vc, wc;
    initial_level(e, f, fw, -2);
    initial_level(f, e, bw, -2);
    for (int level = 2; level <= d; ++level) {
        std::vector<size_t> ts, ss;
        for (size_t k = 0; k < e.generators().size(); ++k)
            if (e.generators()[k].degree == -level) ts.push_back(k);
        for (size_t k = 0; k < f.generators().size(); ++k)
            if (f.generators()[k].degree == -level) ss.push_back(k);
        bool iso = true;
        for (size_t k : ts)
            if (bw.as_morphism().apply(f, e, fw.img[k]) != gen_element(e, k)) iso = false;
        for (size_t k : ss)
            if (fw.as_morphism().apply(e, f, bw.img[k]) != gen_element(f, k)) iso = false;
        if (!iso) {
            Partial fw_old = fw, bw_old = bw;
            std::vector<size_t> sp, tp;  // indices of S'_j in E and T'_i in F
            for (size_t j = 0; j < ss.size(); ++j) {
                std::string base = "v" + std::to_string(level) + "_" + std::to_string(j + 1);
                e.add_generator(base + "as", -level, GradedPolynomial(e.table()));
                sp.push_back(e.generators().size() - 1);
                e.add_generator(base + "bs", -level - 1, gen_element(e, sp.back()));
            }
            for (size_t i = 0; i < ts.size(); ++i) {
                std::string base = "w" + std::to_string(level) + "_" + std::to_string(i + 1);
                f.add_generator(base + "as", -level, GradedPolynomial(f.table()));
                tp.push_back(f.generators().size() - 1);
                f.add_generator(base + "bs", -level - 1, gen_element(f, tp.back()));
            }
            for (size_t i = 0; i < ts.size(); ++i)
                fw.set(ts[i], retable(fw_old.img[ts[i]], f.table()) + gen_element(f, tp[i]));
            for (size_t j = 0; j < ss.size(); ++j)
                bw.set(ss[j], retable(bw_old.img[ss[j]], e.table()) + gen_element(e, sp[j]));
            for (size_t j = 0; j < ss.size(); ++j)
                fw.set(sp[j], gen_element(f, ss[j]) -
                                  fw.as_morphism().apply(e, f, retable(bw_old.img[ss[j]], e.table())));
            for (size_t i = 0; i < ts.size(); ++i)
                bw.set(tp[i], gen_element(e, ts[i]) -
                                  bw.as_morphism().apply(f, e, retable(fw_old.img[ts[i]], f.table())));
        }
        vc.push_back(iso ? 0 : static_cast<int>(ss.size()));
        wc.push_back(iso ? 0 : static_cast<int>(ts.size()));
        if (level < d) {
            initial_level(e, f, fw, -level - 1);
            initial_level(f, e, bw, -level - 1);
        }
    }
    // Verify mutual inverses on all generators of degree >= -d.
    for (size_t k = 0; k < e.generators().size(); ++k)
        if (e.generators()[k].degree >= -d &&
            bw.as_morphism().apply(f, e, fw.img[k]) != gen_element(e, k))
            throw Error(ErrorKind::CheckFailed, "stabilize: backward o forward is not the identity");
    for (size_t k = 0; k < f.generators().size(); ++k)
        if (f.generators()[k].degree >= -d &&
            fw.as_morphism().apply(e, f, bw.img[k]) != gen_element(f, k))
            throw Error(ErrorKind::CheckFailed, "stabilize: forward o backward is not the identity");
    e.set_depth(std::min(e0.depth(), d));
    f.set_depth(std::min(f0.depth(), d));
    return Stabilization{e, f, fw.as_morphism(), bw.as_morphism(), vc, wc};
}

}  // namespace bvkit
