#include "qc/groebner.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>

namespace qc {

MonomialOrder MonomialOrder::degrevlex() {
    return degrevlex({var::w, var::a5, var::a4, var::a3, var::a2, var::a1, var::a0, var::y, var::x});
}

MonomialOrder MonomialOrder::lex(std::vector<int> priority) {
    MonomialOrder o;
    o.kind = Kind::Lex;
    o.priority = std::move(priority);
    return o;
}

MonomialOrder MonomialOrder::degrevlex(std::vector<int> priority) {
    MonomialOrder o;
    o.kind = Kind::DegRevLex;
    o.priority = std::move(priority);
    return o;
}

MonomialOrder MonomialOrder::elimination(std::vector<int> eliminated, std::vector<int> rest) {
    MonomialOrder o;
    o.kind = Kind::Elim;
    o.block = static_cast<int>(eliminated.size());
    o.priority = std::move(eliminated);
    o.priority.insert(o.priority.end(), rest.begin(), rest.end());
    return o;
}

std::vector<int> MonomialOrder::full_priority() const {
    std::vector<int> p;
    std::vector<bool> seen(kNumVars, false);
    for (int v : priority) {
        if (v < 0 || v >= kNumVars || seen[v]) throw std::invalid_argument("invalid variable priority list");
        seen[v] = true;
        p.push_back(v);
    }
    for (int v = 0; v < kNumVars; ++v)
        if (!seen[v]) p.push_back(v);
    return p;
}

std::string MonomialOrder::str() const {
    std::ostringstream os;
    os << (kind == Kind::Lex ? "lex" : kind == Kind::DegRevLex ? "degrevlex" : "elim") << "(";
    auto p = full_priority();
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (i) os << (kind == Kind::Elim && static_cast<int>(i) == block ? " | " : " > ");
        os << VariableTable::name(p[i]);
    }
    os << ")";
    return os.str();
}

namespace {

using Exp = std::array<std::int32_t, kNumVars>;

struct Term {
    Exp e;
    Integer c;
};

using Poly = std::vector<Term>;

std::int32_t deg(const Exp& e, int from = 0, int to = kNumVars) {
    std::int32_t d = 0;
    for (int i = from; i < to; ++i) d += e[i];
    return d;
}

class Ord {
public:
    Ord(const MonomialOrder& o) : kind_(o.kind), block_(o.block), perm_(o.full_priority()) {}

    int cmp(const Exp& a, const Exp& b) const {
        switch (kind_) {
            case MonomialOrder::Kind::Lex:
                for (int i = 0; i < kNumVars; ++i)
                    if (a[i] != b[i]) return a[i] > b[i] ? 1 : -1;
                return 0;
            case MonomialOrder::Kind::DegRevLex:
                return drl(a, b, 0, kNumVars);
            case MonomialOrder::Kind::Elim: {
                int c = drl(a, b, 0, block_);
                return c ? c : drl(a, b, block_, kNumVars);
            }
        }
        return 0;
    }

    Exp to_exp(const Mono& m) const {
        Exp e{};
        for (int i = 0; i < kNumVars; ++i) {
            auto v = m.e[perm_[i]];
            if (v > (1 << 30)) throw std::overflow_error("exponent too large for the Groebner engine");
            e[i] = static_cast<std::int32_t>(v);
        }
        return e;
    }

    Mono to_mono(const Exp& e) const {
        Mono m;
        for (int i = 0; i < kNumVars; ++i) m.e[perm_[i]] = e[i];
        return m;
    }

private:
    MonomialOrder::Kind kind_;
    int block_;
    std::vector<int> perm_;

    static int drl(const Exp& a, const Exp& b, int from, int to) {
        std::int32_t da = deg(a, from, to), db = deg(b, from, to);
        if (da != db) return da > db ? 1 : -1;
        for (int i = to - 1; i >= from; --i)
            if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
        return 0;
    }
};

bool divides(const Exp& a, const Exp& b) {
    for (int i = 0; i < kNumVars; ++i)
        if (a[i] > b[i]) return false;
    return true;
}

Exp lcm(const Exp& a, const Exp& b) {
    Exp r;
    for (int i = 0; i < kNumVars; ++i) r[i] = std::max(a[i], b[i]);
    return r;
}

Exp sub(const Exp& a, const Exp& b) {
    Exp r;
    for (int i = 0; i < kNumVars; ++i) r[i] = a[i] - b[i];
    return r;
}

Exp add(const Exp& a, const Exp& b) {
    Exp r;
    for (int i = 0; i < kNumVars; ++i) r[i] = a[i] + b[i];
    return r;
}

bool coprime(const Exp& a, const Exp& b) {
    for (int i = 0; i < kNumVars; ++i)
        if (a[i] && b[i]) return false;
    return true;
}

Integer content(const Poly& p) {
    Integer g = 0;
    for (const auto& t : p) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.c.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

// divides by the content and makes the leading coefficient positive; returns the divisor used
Integer make_primitive(Poly& p) {
    if (p.empty()) return 1;
    Integer g = content(p);
    if (sgn(p.front().c) < 0) g = -g;
    if (g != 1)
        for (auto& t : p) mpz_divexact(t.c.get_mpz_t(), t.c.get_mpz_t(), g.get_mpz_t());
    return g;
}

// integer polynomial proportional to q; returns the factor f with result = f*q
Poly to_internal(const MultiPoly& q, const Ord& ord, Rational* factor = nullptr) {
    Integer d = q.denominator_lcm();
    Poly p;
    p.reserve(q.size());
    for (const auto& [m, c] : q.terms()) {
        Rational v = c * Rational(d);
        p.push_back({ord.to_exp(m), v.get_num()});
    }
    std::sort(p.begin(), p.end(), [&](const Term& a, const Term& b) { return ord.cmp(a.e, b.e) > 0; });
    Integer g = make_primitive(p);
    if (factor) *factor = Rational(d) / Rational(g);
    return p;
}

MultiPoly to_external(const Poly& p, const Ord& ord, const Rational& divide_by) {
    std::vector<MultiPoly::Term> terms;
    terms.reserve(p.size());
    for (const auto& t : p) terms.emplace_back(ord.to_mono(t.e), Rational(t.c) / divide_by);
    return MultiPoly::from_terms(std::move(terms));
}

class Clock {
public:
    explicit Clock(const Budget& b) : budget_(b), start_(std::chrono::steady_clock::now()) {}
    double elapsed() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }
    void step() {
        ++steps_;
        if (steps_ > budget_.max_steps) throw budget_exhausted("step budget exhausted");
        if ((steps_ & 63) == 0 && elapsed() > budget_.max_seconds) throw budget_exhausted("time budget exhausted");
    }
    std::uint64_t steps() const { return steps_; }

private:
    Budget budget_;
    std::chrono::steady_clock::time_point start_;
    std::uint64_t steps_ = 0;
};

struct Reducer {
    const Poly* p;
};

// Full reduction of p by the reducers. Returns the scale s such that result = s * (input mod ideal).
Rational reduce(Poly& p, const std::vector<const Poly*>& reducers, const Ord& ord, Clock* clock, bool full = true) {
    Rational scale = 1;
    std::size_t done = 0;
    int since_content = 0;
    Poly next;
    while (done < p.size()) {
        const Exp& lead = p[done].e;
        const Poly* g = nullptr;
        std::int32_t dl = deg(lead);
        for (const Poly* r : reducers) {
            if (deg(r->front().e) > dl || !divides(r->front().e, lead)) continue;
            if (!g || r->size() < g->size()) g = r;
        }
        if (!g) {
            if (!full) break;
            ++done;
            continue;
        }
        if (clock) clock->step();
        Exp m = sub(lead, g->front().e);
        Integer d;
        mpz_gcd(d.get_mpz_t(), g->front().c.get_mpz_t(), p[done].c.get_mpz_t());
        Integer a = g->front().c / d, b = p[done].c / d;
        if (a != 1) {
            for (auto& t : p) t.c *= a;
            scale *= Rational(a);
        }
        // p <- p - b*m*g on the part starting at `done`
        next.clear();
        next.reserve(p.size() + g->size());
        for (std::size_t i = 0; i < done; ++i) next.push_back(std::move(p[i]));
        std::size_t i = done + 1, j = 1;
        while (i < p.size() && j < g->size()) {
            Exp ge = add((*g)[j].e, m);
            int c = ord.cmp(p[i].e, ge);
            if (c > 0) {
                next.push_back(std::move(p[i++]));
            } else if (c < 0) {
                next.push_back({ge, -b * (*g)[j].c});
                ++j;
            } else {
                Integer v = p[i].c - b * (*g)[j].c;
                if (v != 0) next.push_back({ge, std::move(v)});
                ++i;
                ++j;
            }
        }
        for (; i < p.size(); ++i) next.push_back(std::move(p[i]));
        for (; j < g->size(); ++j) next.push_back({add((*g)[j].e, m), -b * (*g)[j].c});
        p.swap(next);
        if (++since_content >= 8) {
            since_content = 0;
            Integer c = content(p);
            if (c > 1) {
                for (auto& t : p) mpz_divexact(t.c.get_mpz_t(), t.c.get_mpz_t(), c.get_mpz_t());
                scale /= Rational(c);
            }
        }
    }
    return scale;
}

struct Pair {
    int i, j;
    Exp lcm;
    int sugar;
};

class Engine {
public:
    Engine(const Ord& ord, const Budget& budget) : ord_(ord), clock_(budget) {}

    // returns false when the ideal is the unit ideal
    bool run(std::vector<Poly> input) {
        std::sort(input.begin(), input.end(), [&](const Poly& a, const Poly& b) { return ord_.cmp(a.front().e, b.front().e) < 0; });
        for (auto& p : input) {
            if (p.empty()) continue;
            int s = 0;
            for (const auto& t : p) s = std::max(s, deg(t.e));
            reduce(p, reducers(), ord_, &clock_);
            if (p.empty()) continue;
            if (deg(p.front().e) == 0) return false;
            make_primitive(p);
            add_poly(std::move(p), s);
        }
        while (!pairs_.empty()) {
            std::size_t best = 0;
            for (std::size_t k = 1; k < pairs_.size(); ++k) {
                const Pair& a = pairs_[k];
                const Pair& b = pairs_[best];
                if (a.sugar < b.sugar || (a.sugar == b.sugar && ord_.cmp(a.lcm, b.lcm) < 0)) best = k;
            }
            Pair pr = pairs_[best];
            pairs_[best] = pairs_.back();
            pairs_.pop_back();
            ++stats.pairs_reduced;
            Poly s = spoly(pr);
            reduce(s, reducers(), ord_, &clock_);
            if (s.empty()) {
                ++stats.zero_reductions;
                continue;
            }
            if (deg(s.front().e) == 0) return false;
            make_primitive(s);
            add_poly(std::move(s), pr.sugar);
        }
        return true;
    }

    std::vector<Poly> reduced_basis() {
        std::vector<Poly> out;
        for (std::size_t k = 0; k < polys_.size(); ++k)
            if (active_[k]) out.push_back(polys_[k]);
        for (std::size_t k = 0; k < out.size(); ++k) {
            std::vector<const Poly*> others;
            for (std::size_t l = 0; l < out.size(); ++l)
                if (l != k) others.push_back(&out[l]);
            reduce(out[k], others, ord_, &clock_);
            make_primitive(out[k]);
        }
        std::sort(out.begin(), out.end(), [&](const Poly& a, const Poly& b) { return ord_.cmp(a.front().e, b.front().e) < 0; });
        return out;
    }

    GbStats stats;
    Clock& clock() { return clock_; }

private:
    const Ord& ord_;
    Clock clock_;
    std::vector<Poly> polys_;
    std::vector<bool> active_;
    std::vector<int> sugar_;
    std::vector<Pair> pairs_;

    std::vector<const Poly*> reducers() const {
        std::vector<const Poly*> r;
        for (std::size_t k = 0; k < polys_.size(); ++k)
            if (active_[k]) r.push_back(&polys_[k]);
        return r;
    }

    Pair make_pair(int i, int j) const {
        Pair p{i, j, lcm(polys_[i].front().e, polys_[j].front().e), 0};
        int dl = deg(p.lcm);
        p.sugar = std::max(sugar_[i] + dl - deg(polys_[i].front().e), sugar_[j] + dl - deg(polys_[j].front().e));
        return p;
    }

    Poly spoly(const Pair& pr) const {
        const Poly& f = polys_[pr.i];
        const Poly& g = polys_[pr.j];
        Exp mf = sub(pr.lcm, f.front().e), mg = sub(pr.lcm, g.front().e);
        Integer d;
        mpz_gcd(d.get_mpz_t(), f.front().c.get_mpz_t(), g.front().c.get_mpz_t());
        Integer cf = g.front().c / d, cg = f.front().c / d;
        Poly out;
        out.reserve(f.size() + g.size());
        std::size_t i = 1, j = 1;
        while (i < f.size() && j < g.size()) {
            Exp a = add(f[i].e, mf), b = add(g[j].e, mg);
            int c = ord_.cmp(a, b);
            if (c > 0) {
                out.push_back({a, cf * f[i].c});
                ++i;
            } else if (c < 0) {
                out.push_back({b, -cg * g[j].c});
                ++j;
            } else {
                Integer v = cf * f[i].c - cg * g[j].c;
                if (v != 0) out.push_back({a, std::move(v)});
                ++i;
                ++j;
            }
        }
        for (; i < f.size(); ++i) out.push_back({add(f[i].e, mf), cf * f[i].c});
        for (; j < g.size(); ++j) out.push_back({add(g[j].e, mg), -cg * g[j].c});
        return out;
    }

    void add_poly(Poly h, int sugar) {
        int t = static_cast<int>(polys_.size());
        polys_.push_back(std::move(h));
        active_.push_back(true);
        sugar_.push_back(sugar);
        const Exp& lh = polys_[t].front().e;

        std::vector<Pair> C, D;
        for (int k = 0; k < t; ++k)
            if (active_[k]) C.push_back(make_pair(k, t));
        while (!C.empty()) {
            Pair p1 = C.back();
            C.pop_back();
            bool keep = coprime(polys_[p1.i].front().e, lh);
            if (!keep) {
                keep = true;
                for (const auto& p2 : C)
                    if (divides(p2.lcm, p1.lcm)) {
                        keep = false;
                        break;
                    }
                if (keep)
                    for (const auto& p2 : D)
                        if (divides(p2.lcm, p1.lcm)) {
                            keep = false;
                            break;
                        }
            }
            if (keep) D.push_back(p1);
        }
        std::vector<Pair> kept;
        for (const auto& p : pairs_) {
            bool drop = divides(lh, p.lcm) && lcm(polys_[p.i].front().e, lh) != p.lcm &&
                        lcm(polys_[p.j].front().e, lh) != p.lcm;
            if (!drop) kept.push_back(p);
        }
        for (const auto& p : D)
            if (!coprime(polys_[p.i].front().e, lh)) kept.push_back(p);
        pairs_.swap(kept);
        for (int k = 0; k < t; ++k)
            if (active_[k] && divides(lh, polys_[k].front().e)) active_[k] = false;
    }
};

GroebnerBasis unit_basis(const MonomialOrder& order) {
    GroebnerBasis gb;
    gb.order = order;
    gb.generators = {MultiPoly(1)};
    return gb;
}

}  // namespace

int MonomialOrder::compare(const Mono& a, const Mono& b) const {
    Ord o(*this);
    return o.cmp(o.to_exp(a), o.to_exp(b));
}

bool GroebnerBasis::is_unit() const { return generators.size() == 1 && generators[0] == MultiPoly(1); }

MultiPoly GroebnerBasis::leading_monomial(std::size_t i) const {
    Ord o(order);
    const auto& g = generators.at(i);
    const Mono* best = nullptr;
    for (const auto& t : g.terms())
        if (!best || o.cmp(o.to_exp(t.first), o.to_exp(*best)) > 0) best = &t.first;
    return best ? MultiPoly::monomial(*best, 1) : MultiPoly();
}

GbResult buchberger(const std::vector<MultiPoly>& gens, const MonomialOrder& order, const Budget& budget) {
    Ord ord(order);
    Engine engine(ord, budget);
    GbResult result;
    result.basis.order = order;
    std::vector<Poly> input;
    for (const auto& g : gens)
        if (!g.is_zero()) input.push_back(to_internal(g, ord));
    try {
        if (input.empty()) {
            result.basis.generators.clear();
        } else if (!engine.run(std::move(input))) {
            result.basis = unit_basis(order);
        } else {
            for (const auto& p : engine.reduced_basis()) {
                Rational lc(p.front().c);
                result.basis.generators.push_back(to_external(p, ord, lc));
            }
        }
    } catch (const budget_exhausted&) {
        result.status = GbStatus::BudgetExhausted;
        result.basis.generators.clear();
        result.basis.reduced = false;
    }
    result.stats = engine.stats;
    result.stats.reduction_steps = engine.clock().steps();
    result.stats.seconds = engine.clock().elapsed();
    return result;
}

GroebnerBasis groebner(const std::vector<MultiPoly>& gens, const MonomialOrder& order, const Budget& budget) {
    GbResult r = buchberger(gens, order, budget);
    if (!r.ok()) throw budget_exhausted("Groebner basis computation exceeded its budget");
    return r.basis;
}

MultiPoly normal_form(const MultiPoly& p, const GroebnerBasis& gb) {
    if (p.is_zero()) return p;
    if (gb.is_unit()) return {};
    Ord ord(gb.order);
    std::vector<Poly> basis;
    for (const auto& g : gb.generators) basis.push_back(to_internal(g, ord));
    std::vector<const Poly*> reducers;
    for (const auto& b : basis) reducers.push_back(&b);
    Rational factor;
    Poly q = to_internal(p, ord, &factor);
    Rational scale = reduce(q, reducers, ord, nullptr);
    return to_external(q, ord, factor * scale);
}

bool is_member(const MultiPoly& p, const GroebnerBasis& gb) { return normal_form(p, gb).is_zero(); }

Division divide(const MultiPoly& p, const std::vector<MultiPoly>& divisors, const MonomialOrder& order) {
    Ord ord(order);
    auto lead = [&](const MultiPoly& q) -> MultiPoly::Term {
        const MultiPoly::Term* best = nullptr;
        for (const auto& t : q.terms())
            if (!best || ord.cmp(ord.to_exp(t.first), ord.to_exp(best->first)) > 0) best = &t;
        return *best;
    };
    Division d;
    d.quotients.assign(divisors.size(), MultiPoly());
    std::vector<MultiPoly::Term> leads;
    for (const auto& g : divisors) {
        if (g.is_zero()) throw std::invalid_argument("division by the zero polynomial");
        leads.push_back(lead(g));
    }
    MultiPoly rest = p;
    while (!rest.is_zero()) {
        auto lt = lead(rest);
        bool reduced = false;
        for (std::size_t i = 0; i < divisors.size(); ++i) {
            if (!leads[i].first.divides(lt.first)) continue;
            MultiPoly q = MultiPoly::monomial(lt.first / leads[i].first, lt.second / leads[i].second);
            d.quotients[i] += q;
            rest -= q * divisors[i];
            reduced = true;
            break;
        }
        if (!reduced) {
            MultiPoly t = MultiPoly::monomial(lt.first, lt.second);
            d.remainder += t;
            rest -= t;
        }
    }
    return d;
}

RadicalResult is_in_radical(const MultiPoly& p, const std::vector<MultiPoly>& gens, const Budget& budget) {
    if (p.uses(var::w)) throw std::invalid_argument("is_in_radical: p must not use w");
    for (const auto& g : gens)
        if (g.uses(var::w)) throw std::invalid_argument("is_in_radical: generators must not use w");
    std::vector<MultiPoly> all = gens;
    all.push_back(MultiPoly(1) - MultiPoly::variable(var::w) * p);
    GbResult r = buchberger(all, MonomialOrder::degrevlex(), budget);
    RadicalResult out;
    out.status = r.status;
    out.member = r.ok() && r.basis.is_unit();
    out.stats = r.stats;
    return out;
}

IntersectResult intersect(const std::vector<MultiPoly>& a, const std::vector<MultiPoly>& b, const Budget& budget) {
    for (const auto& g : a)
        if (g.uses(var::w)) throw std::invalid_argument("intersect: generators must not use w");
    for (const auto& g : b)
        if (g.uses(var::w)) throw std::invalid_argument("intersect: generators must not use w");
    MultiPoly w = MultiPoly::variable(var::w);
    std::vector<MultiPoly> all;
    for (const auto& g : a) all.push_back(w * g);
    for (const auto& g : b) all.push_back((MultiPoly(1) - w) * g);
    auto rest = MonomialOrder::degrevlex().full_priority();
    rest.erase(std::remove(rest.begin(), rest.end(), var::w), rest.end());
    GbResult r = buchberger(all, MonomialOrder::elimination({var::w}, rest), budget);
    IntersectResult out;
    out.status = r.status;
    if (r.ok())
        for (const auto& g : r.basis.generators)
            if (!g.uses(var::w)) out.generators.push_back(g);
    return out;
}

std::vector<Rational> evaluate_ideal(const std::vector<MultiPoly>& gens, const std::map<int, Rational>& point) {
    std::vector<Rational> out;
    for (const auto& g : gens) {
        MultiPoly v = evaluate(g, point);
        if (!v.is_constant()) throw std::invalid_argument("evaluate_ideal: unbound parameter in " + g.str());
        out.push_back(v.constant_term());
    }
    return out;
}

}  // namespace qc
