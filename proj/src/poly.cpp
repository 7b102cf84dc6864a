#include "cartdiff/poly.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace cartdiff {

Poly Poly::constant(int nvars, const Rational& c) {
    Poly p(nvars);
    if (!c.is_zero()) p.terms_[Exponents(nvars, 0)] = c;
    return p;
}

Poly Poly::variable(int nvars, int index) {
    Poly p(nvars);
    Exponents e(nvars, 0);
    e.at(index) = 1;
    p.terms_[std::move(e)] = Rational(1);
    return p;
}

Poly Poly::monomial(Exponents e, const Rational& c) {
    Poly p(static_cast<int>(e.size()));
    if (!c.is_zero()) p.terms_[std::move(e)] = c;
    return p;
}

int Poly::degree() const {
    int d = 0;
    for (const auto& [e, c] : terms_)
        d = std::max(d, std::accumulate(e.begin(), e.end(), 0));
    return d;
}

void Poly::accumulate(const Exponents& e, const Rational& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(e, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
}

Poly Poly::operator-() const {
    Poly r(nvars_);
    for (const auto& [e, c] : terms_) r.terms_[e] = -c;
    return r;
}

Poly operator+(const Poly& a, const Poly& b) {
    Poly r = a;
    for (const auto& [e, c] : b.terms_) r.accumulate(e, c);
    return r;
}

Poly operator-(const Poly& a, const Poly& b) {
    Poly r = a;
    for (const auto& [e, c] : b.terms_) r.accumulate(e, -c);
    return r;
}

Poly operator*(const Poly& a, const Poly& b) {
    Poly r(a.nvars_);
    Poly::Exponents e(a.nvars_, 0);
    for (const auto& [ea, ca] : a.terms_) {
        for (const auto& [eb, cb] : b.terms_) {
            for (int i = 0; i < a.nvars_; ++i) e[i] = ea[i] + eb[i];
            r.accumulate(e, ca * cb);
        }
    }
    return r;
}

Poly Poly::scaled(const Rational& c) const {
    Poly r(nvars_);
    if (c.is_zero()) return r;
    for (const auto& [e, k] : terms_) r.terms_[e] = k * c;
    return r;
}

Poly Poly::derivative(int var) const {
    Poly r(nvars_);
    for (const auto& [e, c] : terms_) {
        if (e[var] == 0) continue;
        Exponents d = e;
        d[var] -= 1;
        r.accumulate(d, c * Rational(e[var]));
    }
    return r;
}

Poly Poly::substitute(std::span<const Poly> args, int out_vars) const {
    Poly r(out_vars);
    // Power cache per argument, grown on demand.
    std::vector<std::vector<Poly>> powers(args.size());
    auto power = [&](std::size_t i, int k) -> const Poly& {
        auto& cache = powers[i];
        if (cache.empty()) cache.push_back(Poly::constant(out_vars, Rational(1)));
        while (static_cast<int>(cache.size()) <= k) cache.push_back(cache.back() * args[i]);
        return cache[k];
    };
    for (const auto& [e, c] : terms_) {
        Poly term = Poly::constant(out_vars, c);
        for (std::size_t i = 0; i < args.size(); ++i)
            if (e[i] != 0) term = term * power(i, e[i]);
        r = r + term;
    }
    return r;
}

Rational Poly::eval(std::span<const Rational> point) const {
    Rational total(0);
    for (const auto& [e, c] : terms_) {
        Rational t = c;
        for (int i = 0; i < nvars_; ++i)
            for (int k = 0; k < e[i]; ++k) t *= point[i];
        total += t;
    }
    return total;
}

Poly Poly::linear_filter(int lo, int hi, bool drop_outside) const {
    Poly r(nvars_);
    for (const auto& [e, c] : terms_) {
        int inside = 0, outside = 0;
        for (int i = 0; i < nvars_; ++i)
            (i >= lo && i < hi ? inside : outside) += e[i];
        if (inside != 1) continue;
        if (drop_outside && outside != 0) continue;
        r.terms_[e] = c;
    }
    return r;
}

std::string Poly::str(std::span<const std::string> names) const {
    if (terms_.empty()) return "0";
    std::vector<const Terms::value_type*> order;
    order.reserve(terms_.size());
    for (const auto& t : terms_) order.push_back(&t);
    auto total = [](const Exponents& e) { return std::accumulate(e.begin(), e.end(), 0); };
    std::sort(order.begin(), order.end(), [&](auto* a, auto* b) {
        int da = total(a->first), db = total(b->first);
        if (da != db) return da > db;
        return a->first > b->first;
    });
    std::ostringstream os;
    bool first = true;
    for (auto* t : order) {
        const auto& [e, c] = *t;
        Rational mag = c.sign() < 0 ? -c : c;
        if (first) {
            if (c.sign() < 0) os << "-";
        } else {
            os << (c.sign() < 0 ? "-" : "+");
        }
        first = false;
        bool has_vars = std::any_of(e.begin(), e.end(), [](int k) { return k != 0; });
        bool wrote = false;
        if (!mag.is_one() || !has_vars) {
            os << mag.str();
            wrote = true;
        }
        for (int i = 0; i < nvars_; ++i) {
            if (e[i] == 0) continue;
            if (wrote) os << "*";
            os << names[i];
            if (e[i] > 1) os << "^" << e[i];
            wrote = true;
        }
    }
    return os.str();
}

PolyMap::PolyMap(Shape d, Shape c, std::vector<Poly> parts)
    : dom(std::move(d)), cod(std::move(c)), comps(std::move(parts)) {
    if (static_cast<int>(comps.size()) != cod.leaves())
        throw ShapeError("polynomial map has " + std::to_string(comps.size()) +
                         " components for codomain " + cod.str());
    for (const auto& p : comps)
        if (p.nvars() != dom.leaves())
            throw ShapeError("component variable count " + std::to_string(p.nvars()) +
                             " does not match domain " + dom.str());
}

bool PolyMap::operator==(const PolyMap& o) const {
    return dom == o.dom && cod == o.cod && comps == o.comps;
}

std::string PolyMap::str(std::span<const std::string> names) const {
    if (comps.size() == 1) return comps.front().str(names);
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < comps.size(); ++i) {
        if (i) os << ",";
        os << comps[i].str(names);
    }
    os << "]";
    return os.str();
}

std::string PolyMap::str() const {
    auto names = default_names(dom.leaves());
    return str(names);
}

PolyMap poly_id(const Shape& a) {
    int n = a.leaves();
    std::vector<Poly> comps;
    comps.reserve(n);
    for (int i = 0; i < n; ++i) comps.push_back(Poly::variable(n, i));
    return PolyMap(a, a, std::move(comps));
}

PolyMap poly_zero(const Shape& dom, const Shape& cod) {
    return PolyMap(dom, cod, std::vector<Poly>(cod.leaves(), Poly(dom.leaves())));
}

PolyMap poly_proj0(const Shape& a, const Shape& b) {
    Shape d = Shape::prod(a, b);
    int n = d.leaves();
    std::vector<Poly> comps;
    for (int i = 0; i < a.leaves(); ++i) comps.push_back(Poly::variable(n, i));
    return PolyMap(d, a, std::move(comps));
}

PolyMap poly_proj1(const Shape& a, const Shape& b) {
    Shape d = Shape::prod(a, b);
    int n = d.leaves();
    std::vector<Poly> comps;
    for (int i = 0; i < b.leaves(); ++i) comps.push_back(Poly::variable(n, a.leaves() + i));
    return PolyMap(d, b, std::move(comps));
}

PolyMap poly_pair(const PolyMap& f, const PolyMap& g) {
    require_same_shape(f.dom, g.dom, "pair");
    std::vector<Poly> comps = f.comps;
    comps.insert(comps.end(), g.comps.begin(), g.comps.end());
    return PolyMap(f.dom, Shape::prod(f.cod, g.cod), std::move(comps));
}

PolyMap poly_add(const PolyMap& f, const PolyMap& g) {
    require_same_shape(f.dom, g.dom, "add");
    require_same_shape(f.cod, g.cod, "add");
    std::vector<Poly> comps;
    comps.reserve(f.comps.size());
    for (std::size_t i = 0; i < f.comps.size(); ++i) comps.push_back(f.comps[i] + g.comps[i]);
    return PolyMap(f.dom, f.cod, std::move(comps));
}

PolyMap poly_compose(const PolyMap& f, const PolyMap& g) {
    require_same_shape(f.cod, g.dom, "compose");
    int n = f.dom.leaves();
    std::vector<Poly> comps;
    comps.reserve(g.comps.size());
    for (const auto& q : g.comps) comps.push_back(q.substitute(f.comps, n));
    return PolyMap(f.dom, g.cod, std::move(comps));
}

PolyMap poly_differential(const PolyMap& f) {
    int n = f.dom.leaves();
    Shape dd = Shape::prod(f.dom, f.dom);
    std::vector<Poly> comps;
    comps.reserve(f.comps.size());
    for (const auto& p : f.comps) {
        Poly out(2 * n);
        for (int i = 0; i < n; ++i) {
            Poly di = p.derivative(i);
            for (const auto& [e, c] : di.terms()) {
                Poly::Exponents e2(2 * n, 0);
                std::copy(e.begin(), e.end(), e2.begin());
                e2[n + i] += 1;
                out.accumulate(e2, c);
            }
        }
        comps.push_back(std::move(out));
    }
    return PolyMap(dd, f.cod, std::move(comps));
}

PolyMap poly_linearize(const PolyMap& f) {
    std::vector<Poly> comps;
    comps.reserve(f.comps.size());
    for (const auto& p : f.comps)
        comps.push_back(p.linear_filter(0, f.dom.leaves(), true));
    return PolyMap(f.dom, f.cod, std::move(comps));
}

PolyMap poly_partial_linearize(const Shape& context, const PolyMap& f) {
    if (!f.dom.is_prod() || f.dom.left() != context)
        throw ShapeError("partial linearization: domain " + f.dom.str() +
                         " does not start with context " + context.str());
    int k = context.leaves();
    int n = f.dom.leaves();
    std::vector<Poly> comps;
    comps.reserve(f.comps.size());
    for (const auto& p : f.comps) comps.push_back(p.linear_filter(k, n, false));
    return PolyMap(f.dom, f.cod, std::move(comps));
}

std::vector<Rational> poly_eval(const PolyMap& f, std::span<const Rational> point) {
    if (static_cast<int>(point.size()) != f.dom.leaves())
        throw ShapeError("evaluation arity " + std::to_string(point.size()) +
                         " does not match domain " + f.dom.str());
    std::vector<Rational> out;
    out.reserve(f.comps.size());
    for (const auto& p : f.comps) out.push_back(p.eval(point));
    return out;
}

bool poly_eq(const PolyMap& f, const PolyMap& g) {
    require_same_shape(f.dom, g.dom, "poly_eq");
    require_same_shape(f.cod, g.cod, "poly_eq");
    return f.comps == g.comps;
}

std::vector<std::string> default_names(int count) {
    static const char* letters[] = {"x", "y", "z", "w", "u", "v", "s", "t"};
    std::vector<std::string> names;
    names.reserve(count);
    for (int i = 0; i < count; ++i) {
        if (count <= 8)
            names.push_back(letters[i]);
        else
            names.push_back("x" + std::to_string(i + 1));
    }
    return names;
}

} // namespace cartdiff
