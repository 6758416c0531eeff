#include "groebner.hpp"

#include <algorithm>
#include <functional>

namespace bvkit {

namespace {

using MTerm = ModuleBasis::MTerm;
using MVec = ModuleBasis::MVec;

struct Ctx {
    MonomialOrder ord;
    int active;  // terms at positions >= active are never reduced nor leading
    bool product_criterion;
};

int cmp(const Ctx& c, int pa, const Monomial& a, int pb, const Monomial& b) {
    if (pa != pb) return pa < pb ? 1 : -1;
    return a.compare(b, c.ord);
}

void sort_desc(const Ctx& c, MVec& v) {
    std::sort(v.begin(), v.end(), [&](const MTerm& a, const MTerm& b) {
        return cmp(c, a.pos, a.mono, b.pos, b.mono) > 0;
    });
}

MVec to_mvec(const Ctx& c, const ModuleVector& v, int offset = 0) {
    MVec out;
    for (size_t k = 0; k < v.size(); ++k)
        for (const auto& t : v[k].terms()) out.push_back({static_cast<int>(k) + offset, t.mono, t.coeff});
    sort_desc(c, out);
    return out;
}

ModuleVector to_module(const MVec& v, int nvars, int first, int count) {
    std::vector<std::vector<Term>> parts(count);
    for (const auto& t : v)
        if (t.pos >= first && t.pos < first + count) parts[t.pos - first].push_back({t.mono, t.coeff});
    ModuleVector out;
    for (auto& p : parts) out.push_back(Polynomial::from_terms(nvars, std::move(p)));
    return out;
}

// Returns a[from..] + coef * mono * b[skip..], merged in descending order.
MVec merge_axpy(const Ctx& c, const MVec& a, size_t from, const MVec& b, size_t skip,
                const Rational& coef, const Monomial& mono) {
    MVec out;
    out.reserve(a.size() - from + b.size() - skip);
    size_t i = from, j = skip;
    while (i < a.size() || j < b.size()) {
        if (j == b.size()) {
            out.push_back(a[i++]);
            continue;
        }
        Monomial bm = b[j].mono * mono;
        int s = i == a.size() ? -1 : cmp(c, a[i].pos, a[i].mono, b[j].pos, bm);
        if (s > 0) {
            out.push_back(a[i++]);
        } else if (s < 0) {
            out.push_back({b[j].pos, bm, b[j].coeff * coef});
            ++j;
        } else {
            Rational x = b[j].coeff * coef;
            x += a[i].coeff;
            if (x != 0) out.push_back({a[i].pos, bm, std::move(x)});
            ++i;
            ++j;
        }
    }
    return out;
}

class Engine {
public:
    Engine(Ctx c) : c_(c) {}

    void add_input(MVec v) {
        if (v.empty() || v[0].pos >= c_.active) return;
        make_monic(v);
        insert(std::move(v));
    }

    void run() {
        while (!pairs_.empty()) {
            auto it = std::min_element(pairs_.begin(), pairs_.end(), [](const Pair& a, const Pair& b) {
                if (a.lcm.degree() != b.lcm.degree()) return a.lcm.degree() < b.lcm.degree();
                return a.serial < b.serial;
            });
            Pair p = *it;
            pairs_.erase(it);
            MVec s = spoly(p);
            s = reduce(std::move(s), false);
            if (s.empty() || s[0].pos >= c_.active) continue;
            make_monic(s);
            insert(std::move(s));
        }
    }

    // Minimal, inter-reduced, monic basis in ascending lead order.
    std::vector<MVec> reduced_basis() {
        std::vector<size_t> keep;
        for (size_t a : g_) {
            bool redundant = false;
            for (size_t b : g_) {
                if (a == b) continue;
                const auto& la = elems_[a][0];
                const auto& lb = elems_[b][0];
                if (la.pos != lb.pos || !lb.mono.divides(la.mono)) continue;
                if (lb.mono == la.mono && b > a) continue;
                redundant = true;
                break;
            }
            if (!redundant) keep.push_back(a);
        }
        g_ = keep;
        std::vector<MVec> out;
        for (size_t a : keep) {
            std::vector<size_t> others;
            for (size_t b : keep)
                if (b != a) others.push_back(b);
            out.push_back(reduce_with(elems_[a], others, true, 1));
        }
        std::sort(out.begin(), out.end(), [&](const MVec& a, const MVec& b) {
            return cmp(c_, a[0].pos, a[0].mono, b[0].pos, b[0].mono) < 0;
        });
        return out;
    }

    MVec reduce(MVec p, bool full) const { return reduce_with(std::move(p), g_, full, 0); }

private:
    struct Pair {
        size_t i, j;
        Monomial lcm;
        size_t serial;
    };

    Ctx c_;
    std::vector<MVec> elems_;
    std::vector<size_t> g_;
    std::vector<Pair> pairs_;
    size_t serial_ = 0;

    static void make_monic(MVec& v) {
        if (v[0].coeff == 1) return;
        Rational inv = 1 / v[0].coeff;
        for (auto& t : v) t.coeff *= inv;
    }

    MVec spoly(const Pair& p) const {
        const MVec& a = elems_[p.i];
        const MVec& b = elems_[p.j];
        MVec sa;
        Monomial ma = p.lcm / a[0].mono;
        sa.reserve(a.size());
        for (size_t k = 1; k < a.size(); ++k) sa.push_back({a[k].pos, a[k].mono * ma, a[k].coeff});
        return merge_axpy(c_, sa, 0, b, 1, Rational(-1), p.lcm / b[0].mono);
    }

    // Reduces terms at positions < active using the listed elements. `start` skips
    // that many leading terms of p (kept as is), used for tail reduction.
    MVec reduce_with(MVec p, const std::vector<size_t>& by, bool full, size_t start) const {
        MVec r(p.begin(), p.begin() + std::min(start, p.size()));
        size_t i = r.size();
        while (i < p.size()) {
            const MTerm& t = p[i];
            if (t.pos >= c_.active) {
                r.insert(r.end(), p.begin() + i, p.end());
                break;
            }
            const MVec* red = nullptr;
            for (size_t k : by) {
                const MTerm& l = elems_[k][0];
                if (l.pos == t.pos && l.mono.divides(t.mono)) {
                    red = &elems_[k];
                    break;
                }
            }
            if (!red) {
                if (!full) {
                    r.insert(r.end(), p.begin() + i, p.end());
                    break;
                }
                r.push_back(t);
                ++i;
                continue;
            }
            Rational coef = -t.coeff / (*red)[0].coeff;
            p = merge_axpy(c_, p, i + 1, *red, 1, coef, t.mono / (*red)[0].mono);
            i = 0;
        }
        return r;
    }

    // Gebauer-Moeller update with the new element h.
    void insert(MVec h) {
        size_t hi = elems_.size();
        elems_.push_back(std::move(h));
        const MTerm& lh = elems_[hi][0];

        struct Cand {
            size_t g;
            Monomial lcm;
            bool coprime;
        };
        std::vector<Cand> cands;
        for (size_t g : g_) {
            const MTerm& lg = elems_[g][0];
            if (lg.pos != lh.pos) continue;
            cands.push_back({g, lh.mono.lcm(lg.mono), c_.product_criterion && lh.mono.coprime(lg.mono)});
        }
        // M/F criteria: keep a candidate only if no other candidate's lcm divides its lcm
        // (among equal lcms the first survives).
        std::vector<Cand> d;
        for (size_t a = 0; a < cands.size(); ++a) {
            bool drop = false;
            if (!cands[a].coprime) {
                for (size_t b = 0; b < cands.size() && !drop; ++b) {
                    if (a == b) continue;
                    if (!cands[b].lcm.divides(cands[a].lcm)) continue;
                    if (cands[b].lcm == cands[a].lcm) {
                        bool b_first_or_coprime = cands[b].coprime || b < a;
                        if (b_first_or_coprime) drop = true;
                    } else {
                        drop = true;
                    }
                }
            }
            if (!drop) d.push_back(cands[a]);
        }
        // Chain criterion on old pairs.
        std::vector<Pair> kept;
        for (auto& p : pairs_) {
            const MTerm& li = elems_[p.i][0];
            bool remove = li.pos == lh.pos && lh.mono.divides(p.lcm) &&
                          li.mono.lcm(lh.mono) != p.lcm && elems_[p.j][0].mono.lcm(lh.mono) != p.lcm;
            if (!remove) kept.push_back(std::move(p));
        }
        pairs_ = std::move(kept);
        for (auto& cd : d)
            if (!cd.coprime) pairs_.push_back({cd.g, hi, cd.lcm, serial_++});

        std::vector<size_t> ng;
        for (size_t g : g_) {
            const MTerm& lg = elems_[g][0];
            if (!(lg.pos == lh.pos && lh.mono.divides(lg.mono))) ng.push_back(g);
        }
        ng.push_back(hi);
        g_ = std::move(ng);
    }
};

}  // namespace

ModuleBasis::ModuleBasis(int nvars, int rank, std::vector<ModuleVector> gens, MonomialOrder order,
                         bool track)
    : n_(nvars), rank_(rank), order_(order), track_(track), gens_(std::move(gens)) {
    for (const auto& g : gens_)
        if (static_cast<int>(g.size()) != rank_) throw invalid("module generator has wrong rank");
    Ctx c{order_, rank_, rank_ == 1};
    Engine e(c);
    for (size_t i = 0; i < gens_.size(); ++i) {
        MVec v = to_mvec(c, gens_[i]);
        if (track_) v.push_back({rank_ + static_cast<int>(i), Monomial(n_), Rational(1)});
        e.add_input(std::move(v));
    }
    e.run();
    internal_ = e.reduced_basis();
    for (const auto& v : internal_) {
        basis_.push_back(to_module(v, n_, 0, rank_));
        if (track_) transform_.push_back(to_module(v, n_, rank_, static_cast<int>(gens_.size())));
    }
}

namespace {

MVec reduce_by(const Ctx& c, MVec p, const std::vector<MVec>& by, bool full) {
    MVec r;
    size_t i = 0;
    while (i < p.size()) {
        const MTerm& t = p[i];
        if (t.pos >= c.active) {
            r.insert(r.end(), p.begin() + i, p.end());
            break;
        }
        const MVec* red = nullptr;
        for (const auto& g : by) {
            if (g[0].pos == t.pos && g[0].mono.divides(t.mono)) {
                red = &g;
                break;
            }
        }
        if (!red) {
            if (!full) {
                r.insert(r.end(), p.begin() + i, p.end());
                break;
            }
            r.push_back(t);
            ++i;
            continue;
        }
        Rational coef = -t.coeff / (*red)[0].coeff;
        p = merge_axpy(c, p, i + 1, *red, 1, coef, t.mono / (*red)[0].mono);
        i = 0;
    }
    return r;
}

}  // namespace

ModuleVector ModuleBasis::normal_form(const ModuleVector& v) const {
    Ctx c{order_, rank_, false};
    MVec r = reduce_by(c, to_mvec(c, v), internal_, true);
    return to_module(r, n_, 0, rank_);
}

bool ModuleBasis::contains(const ModuleVector& v) const {
    Ctx c{order_, rank_, false};
    MVec r = reduce_by(c, to_mvec(c, v), internal_, false);
    return r.empty() || r[0].pos >= rank_;
}

std::optional<std::vector<Polynomial>> ModuleBasis::lift(const ModuleVector& v) const {
    if (!track_) throw Error(ErrorKind::Internal, "lift requires a tracked basis");
    Ctx c{order_, rank_, false};
    MVec r = reduce_by(c, to_mvec(c, v), internal_, false);
    if (!r.empty() && r[0].pos < rank_) return std::nullopt;
    ModuleVector t = to_module(r, n_, rank_, static_cast<int>(gens_.size()));
    for (auto& p : t) p = -p;
    return t;
}

std::vector<std::pair<int, Monomial>> ModuleBasis::leading_terms() const {
    std::vector<std::pair<int, Monomial>> out;
    for (const auto& v : internal_) out.push_back({v[0].pos, v[0].mono});
    return out;
}

namespace {

std::vector<ModuleVector> wrap(const std::vector<Polynomial>& gens) {
    std::vector<ModuleVector> out;
    for (const auto& g : gens) out.push_back({g});
    return out;
}

}  // namespace

GroebnerBasis::GroebnerBasis(int nvars, std::vector<Polynomial> gens, MonomialOrder order, bool track)
    : mb_(nvars, 1, wrap(gens), order, track), gens_(std::move(gens)) {
    for (const auto& v : mb_.basis()) basis_.push_back(v[0]);
    for (const auto& lt : mb_.leading_terms()) leads_.push_back(lt.second);
}

bool GroebnerBasis::is_unit() const {
    for (const auto& m : leads_)
        if (m.is_one()) return true;
    return false;
}

Polynomial GroebnerBasis::normal_form(const Polynomial& f) const { return mb_.normal_form({f})[0]; }

std::optional<std::vector<Polynomial>> GroebnerBasis::lift(const Polynomial& f) const {
    return mb_.lift({f});
}

bool GroebnerBasis::is_standard(const Monomial& m) const {
    for (const auto& l : leads_)
        if (l.divides(m)) return false;
    return true;
}

std::vector<Monomial> GroebnerBasis::standard_monomials(int bound) const {
    std::vector<Monomial> out;
    int n = nvars();
    for (int d = 0; d <= bound; ++d) {
        std::vector<Monomial> layer;
        Monomial m(n);
        std::function<void(int, int)> rec = [&](int i, int left) {
            if (i == n - 1 || n == 0) {
                if (n) m.set(i, left);
                if ((n || left == 0) && is_standard(m)) layer.push_back(m);
                return;
            }
            for (int e = 0; e <= left; ++e) {
                m.set(i, e);
                rec(i + 1, left - e);
            }
            m.set(i, 0);
        };
        rec(0, d);
        std::sort(layer.begin(), layer.end(), [](const Monomial& a, const Monomial& b) {
            return a.compare(b, MonomialOrder::Grevlex) < 0;
        });
        out.insert(out.end(), layer.begin(), layer.end());
    }
    return out;
}

GroebnerBasis groebner_basis(int nvars, const std::vector<Polynomial>& gens, MonomialOrder order) {
    return GroebnerBasis(nvars, gens, order, true);
}

Polynomial normal_form(const Polynomial& f, const GroebnerBasis& gb) { return gb.normal_form(f); }

std::optional<MembershipCertificate> lift_membership(int nvars, const Polynomial& f,
                                                     const std::vector<Polynomial>& gens) {
    GroebnerBasis gb(nvars, gens, MonomialOrder::Grevlex, true);
    auto c = gb.lift(f);
    if (!c) return std::nullopt;
    return MembershipCertificate{std::move(*c)};
}

std::optional<MembershipCertificate> lift_membership(int nvars, int rank, const ModuleVector& v,
                                                     const std::vector<ModuleVector>& gens) {
    ModuleBasis mb(nvars, rank, gens, MonomialOrder::Grevlex, true);
    auto c = mb.lift(v);
    if (!c) return std::nullopt;
    return MembershipCertificate{std::move(*c)};
}

std::vector<ModuleVector> syzygy_basis(int nvars, int rank, const std::vector<ModuleVector>& gens) {
    int m = static_cast<int>(gens.size());
    Ctx c{MonomialOrder::Grevlex, rank + m, false};
    Engine e(c);
    for (int i = 0; i < m; ++i) {
        if (static_cast<int>(gens[i].size()) != rank) throw invalid("module generator has wrong rank");
        MVec v = to_mvec(c, gens[i]);
        v.push_back({rank + i, Monomial(nvars), Rational(1)});
        e.add_input(std::move(v));
    }
    e.run();
    std::vector<ModuleVector> out;
    for (const auto& v : e.reduced_basis())
        if (v[0].pos >= rank) out.push_back(to_module(v, nvars, rank, m));
    return out;
}

}  // namespace bvkit
