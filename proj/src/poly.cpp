#include "qc/poly.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <unordered_map>

namespace qc {

const std::array<std::string, kNumVars>& VariableTable::names() {
    static const std::array<std::string, kNumVars> n = {"x", "y", "a0", "a1", "a2", "a3", "a4", "a5", "w"};
    return n;
}

const std::string& VariableTable::name(int index) {
    if (index < 0 || index >= kNumVars) throw table_mismatch("variable index out of range");
    return names()[index];
}

int VariableTable::index_of(std::string_view name) {
    const auto& n = names();
    for (int i = 0; i < kNumVars; ++i)
        if (n[i] == name) return i;
    return -1;
}

namespace {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("exponent overflow");
    return r;
}

}  // namespace

std::int64_t Mono::degree() const {
    std::int64_t d = 0;
    for (auto v : e) d = checked_add(d, v);
    return d;
}

bool Mono::is_one() const {
    for (auto v : e)
        if (v) return false;
    return true;
}

bool Mono::divides(const Mono& o) const {
    for (int i = 0; i < kNumVars; ++i)
        if (e[i] > o.e[i]) return false;
    return true;
}

Mono Mono::operator*(const Mono& o) const {
    Mono r;
    for (int i = 0; i < kNumVars; ++i) r.e[i] = checked_add(e[i], o.e[i]);
    return r;
}

Mono Mono::operator/(const Mono& o) const {
    Mono r;
    for (int i = 0; i < kNumVars; ++i) {
        r.e[i] = e[i] - o.e[i];
        if (r.e[i] < 0) throw std::domain_error("monomial not divisible");
    }
    return r;
}

int grevlex_cmp(const Mono& a, const Mono& b) {
    std::int64_t da = a.degree(), db = b.degree();
    if (da != db) return da > db ? 1 : -1;
    for (int i = kNumVars - 1; i >= 0; --i) {
        if (a.e[i] != b.e[i]) return a.e[i] < b.e[i] ? 1 : -1;
    }
    return 0;
}

std::size_t MonoHash::operator()(const Mono& m) const {
    std::size_t h = 1469598103934665603ull;
    for (auto v : m.e) {
        h ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
}

namespace {

bool term_before(const MultiPoly::Term& a, const MultiPoly::Term& b) { return grevlex_cmp(a.first, b.first) > 0; }

}  // namespace

MultiPoly::MultiPoly(const Rational& c) {
    if (c != 0) terms_.emplace_back(Mono{}, c);
}

MultiPoly MultiPoly::variable(int index) {
    if (index < 0 || index >= kNumVars) throw table_mismatch("variable index out of range");
    Mono m;
    m.e[index] = 1;
    return monomial(m, 1);
}

MultiPoly MultiPoly::variable(std::string_view name) {
    int i = VariableTable::index_of(name);
    if (i < 0) throw table_mismatch("unknown variable: " + std::string(name));
    return variable(i);
}

MultiPoly MultiPoly::monomial(const Mono& m, const Rational& c) {
    MultiPoly p;
    if (c != 0) p.terms_.emplace_back(m, c);
    return p;
}

MultiPoly MultiPoly::from_terms(std::vector<Term> terms) {
    std::sort(terms.begin(), terms.end(), term_before);
    MultiPoly p;
    for (auto& t : terms) {
        if (!p.terms_.empty() && p.terms_.back().first == t.first) {
            p.terms_.back().second += t.second;
        } else {
            if (!p.terms_.empty() && p.terms_.back().second == 0) p.terms_.pop_back();
            p.terms_.push_back(std::move(t));
        }
    }
    if (!p.terms_.empty() && p.terms_.back().second == 0) p.terms_.pop_back();
    return p;
}

bool MultiPoly::is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].first.is_one()); }

Rational MultiPoly::constant_term() const {
    if (!terms_.empty() && terms_.back().first.is_one()) return terms_.back().second;
    return 0;
}

Rational MultiPoly::coefficient(const Mono& m) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                               [](const Term& t, const Mono& k) { return grevlex_cmp(t.first, k) > 0; });
    if (it != terms_.end() && it->first == m) return it->second;
    return 0;
}

std::int64_t MultiPoly::total_degree() const { return terms_.empty() ? -1 : terms_.front().first.degree(); }

std::int64_t MultiPoly::degree_in(int index) const {
    std::int64_t d = terms_.empty() ? -1 : 0;
    for (const auto& t : terms_) d = std::max(d, t.first.e[index]);
    return d;
}

std::int64_t MultiPoly::xy_degree() const {
    std::int64_t d = -1;
    for (const auto& t : terms_) d = std::max(d, t.first.xy_degree());
    return d;
}

std::int64_t MultiPoly::xy_low_degree() const {
    if (terms_.empty()) return -1;
    std::int64_t d = std::numeric_limits<std::int64_t>::max();
    for (const auto& t : terms_) d = std::min(d, t.first.xy_degree());
    return d;
}

bool MultiPoly::uses(int index) const {
    for (const auto& t : terms_)
        if (t.first.e[index]) return true;
    return false;
}

std::vector<int> MultiPoly::variables() const {
    std::vector<int> v;
    for (int i = 0; i < kNumVars; ++i)
        if (uses(i)) v.push_back(i);
    return v;
}

MultiPoly MultiPoly::operator-() const {
    MultiPoly r = *this;
    for (auto& t : r.terms_) t.second = -t.second;
    return r;
}

namespace {

std::vector<MultiPoly::Term> merge(const std::vector<MultiPoly::Term>& a, const std::vector<MultiPoly::Term>& b,
                                   bool subtract) {
    std::vector<MultiPoly::Term> out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        int c = grevlex_cmp(a[i].first, b[j].first);
        if (c > 0) {
            out.push_back(a[i++]);
        } else if (c < 0) {
            out.emplace_back(b[j].first, subtract ? Rational(-b[j].second) : b[j].second);
            ++j;
        } else {
            Rational s = subtract ? Rational(a[i].second - b[j].second) : Rational(a[i].second + b[j].second);
            if (s != 0) out.emplace_back(a[i].first, std::move(s));
            ++i;
            ++j;
        }
    }
    for (; i < a.size(); ++i) out.push_back(a[i]);
    for (; j < b.size(); ++j) out.emplace_back(b[j].first, subtract ? Rational(-b[j].second) : b[j].second);
    return out;
}

}  // namespace

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
    if (o.terms_.empty()) return *this;
    terms_ = merge(terms_, o.terms_, false);
    return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
    if (o.terms_.empty()) return *this;
    terms_ = merge(terms_, o.terms_, true);
    return *this;
}

MultiPoly& MultiPoly::operator*=(const MultiPoly& o) { return *this = *this * o; }

MultiPoly& MultiPoly::operator*=(const Rational& c) {
    if (c == 0) {
        terms_.clear();
    } else {
        for (auto& t : terms_) t.second *= c;
    }
    return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    if (b.size() == 1) {
        MultiPoly r = a.mul_mono(b.terms_[0].first);
        return r *= b.terms_[0].second;
    }
    if (a.size() == 1) {
        MultiPoly r = b.mul_mono(a.terms_[0].first);
        return r *= a.terms_[0].second;
    }
    std::unordered_map<Mono, Rational, MonoHash> acc;
    acc.reserve(a.size() * b.size());
    Rational tmp;
    for (const auto& s : a.terms_) {
        for (const auto& t : b.terms_) {
            mpq_mul(tmp.get_mpq_t(), s.second.get_mpq_t(), t.second.get_mpq_t());
            auto [it, fresh] = acc.try_emplace(s.first * t.first, tmp);
            if (!fresh) it->second += tmp;
        }
    }
    std::vector<MultiPoly::Term> terms;
    terms.reserve(acc.size());
    for (auto& kv : acc)
        if (kv.second != 0) terms.emplace_back(kv.first, std::move(kv.second));
    std::sort(terms.begin(), terms.end(), term_before);
    MultiPoly r;
    r.terms_ = std::move(terms);
    return r;
}

bool operator==(const MultiPoly& a, const MultiPoly& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
        if (a.terms_[i].first != b.terms_[i].first || a.terms_[i].second != b.terms_[i].second) return false;
    return true;
}

MultiPoly MultiPoly::pow(std::uint64_t n) const {
    MultiPoly result(1), base = *this;
    while (n) {
        if (n & 1) result = result * base;
        n >>= 1;
        if (n) base = base * base;
    }
    return result;
}

MultiPoly MultiPoly::mul_mono(const Mono& m) const {
    MultiPoly r = *this;
    for (auto& t : r.terms_) t.first = t.first * m;
    return r;
}

MultiPoly MultiPoly::div_mono(const Mono& m) const {
    MultiPoly r = *this;
    for (auto& t : r.terms_) t.first = t.first / m;
    return r;
}

MultiPoly MultiPoly::scale_to_monic() const {
    if (terms_.empty()) return *this;
    Rational inv = 1 / terms_.front().second;
    return *this * inv;
}

Integer MultiPoly::denominator_lcm() const {
    Integer l = 1;
    for (const auto& t : terms_) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.second.get_den_mpz_t());
    return l;
}

namespace {

std::string mono_str(const Mono& m) {
    std::string s;
    for (int i = 0; i < kNumVars; ++i) {
        if (!m.e[i]) continue;
        if (!s.empty()) s += '*';
        s += VariableTable::name(i);
        if (m.e[i] > 1) s += '^' + std::to_string(m.e[i]);
    }
    return s;
}

}  // namespace

std::string MultiPoly::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        bool neg = c < 0;
        Rational a = neg ? Rational(-c) : c;
        if (first) {
            if (neg) out += '-';
        } else {
            out += neg ? " - " : " + ";
        }
        first = false;
        if (m.is_one()) {
            out += to_string(a);
        } else if (a == 1) {
            out += mono_str(m);
        } else {
            out += to_string(a) + '*' + mono_str(m);
        }
    }
    return out;
}

std::string to_string(const MultiPoly& p) { return p.str(); }

MultiPoly x_() { return MultiPoly::variable(var::x); }
MultiPoly y_() { return MultiPoly::variable(var::y); }
MultiPoly a_(int i) { return MultiPoly::variable(var::a(i)); }

MultiPoly substitute(const MultiPoly& p, const std::map<int, MultiPoly>& bindings) {
    for (const auto& kv : bindings)
        if (kv.first < 0 || kv.first >= kNumVars) throw table_mismatch("binding for unknown variable");
    if (bindings.empty()) return p;
    std::map<std::pair<int, std::int64_t>, MultiPoly> powers;
    auto power_of = [&](int v, std::int64_t k) -> const MultiPoly& {
        auto key = std::make_pair(v, k);
        auto it = powers.find(key);
        if (it != powers.end()) return it->second;
        return powers.emplace(key, bindings.at(v).pow(static_cast<std::uint64_t>(k))).first->second;
    };
    std::unordered_map<Mono, Rational, MonoHash> acc;
    for (const auto& [m, c] : p.terms()) {
        Mono rest = m;
        MultiPoly factor(c);
        for (const auto& kv : bindings) {
            std::int64_t k = m.e[kv.first];
            if (!k) continue;
            rest.e[kv.first] = 0;
            factor = factor * power_of(kv.first, k);
        }
        for (const auto& [fm, fc] : factor.terms()) {
            auto [it, fresh] = acc.try_emplace(fm * rest, fc);
            if (!fresh) it->second += fc;
        }
    }
    std::vector<MultiPoly::Term> terms;
    for (auto& kv : acc)
        if (kv.second != 0) terms.emplace_back(kv.first, kv.second);
    return MultiPoly::from_terms(std::move(terms));
}

MultiPoly evaluate(const MultiPoly& p, const std::map<int, Rational>& values) {
    std::map<int, MultiPoly> b;
    for (const auto& kv : values) b.emplace(kv.first, MultiPoly(kv.second));
    return substitute(p, b);
}

MultiPoly diff(const MultiPoly& p, int index) {
    if (index < 0 || index >= kNumVars) throw table_mismatch("unknown variable");
    std::vector<MultiPoly::Term> terms;
    for (const auto& [m, c] : p.terms()) {
        if (!m.e[index]) continue;
        Mono d = m;
        d.e[index] -= 1;
        terms.emplace_back(d, c * Rational(static_cast<long>(m.e[index])));
    }
    return MultiPoly::from_terms(std::move(terms));
}

MultiPoly homogeneous_component(const MultiPoly& p, std::int64_t k) {
    std::vector<MultiPoly::Term> terms;
    for (const auto& t : p.terms())
        if (t.first.xy_degree() == k) terms.push_back(t);
    return MultiPoly::from_terms(std::move(terms));
}

MultiPoly xy_coefficient(const MultiPoly& p, std::int64_t i, std::int64_t j) {
    std::vector<MultiPoly::Term> terms;
    for (const auto& [m, c] : p.terms()) {
        if (m.e[var::x] != i || m.e[var::y] != j) continue;
        Mono r = m;
        r.e[var::x] = r.e[var::y] = 0;
        terms.emplace_back(r, c);
    }
    return MultiPoly::from_terms(std::move(terms));
}

std::map<std::pair<std::int64_t, std::int64_t>, MultiPoly> xy_coefficients(const MultiPoly& p) {
    std::map<std::pair<std::int64_t, std::int64_t>, std::vector<MultiPoly::Term>> groups;
    for (const auto& [m, c] : p.terms()) {
        Mono r = m;
        r.e[var::x] = r.e[var::y] = 0;
        groups[{m.e[var::x], m.e[var::y]}].emplace_back(r, c);
    }
    std::map<std::pair<std::int64_t, std::int64_t>, MultiPoly> out;
    for (auto& kv : groups) out.emplace(kv.first, MultiPoly::from_terms(std::move(kv.second)));
    return out;
}

}  // namespace qc
