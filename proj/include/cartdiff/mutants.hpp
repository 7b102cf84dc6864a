#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cartdiff/closed_model.hpp"
#include "cartdiff/combinators.hpp"
#include "cartdiff/poly_model.hpp"
#include "cartdiff/smooth_model.hpp"
#include "cartdiff/tower_model.hpp"

namespace cartdiff {

/// One deliberately broken combinator, used to prove the law suites can
/// detect violations. `breaks` names a law expected to fail.
struct MutantInfo {
    std::string id;
    std::string model;
    std::string breaks;
    std::string what;
};

inline const std::vector<MutantInfo>& mutant_catalog() {
    static const std::vector<MutantInfo> table = {
        {"cd3-zero", "poly", "CD.3", "derivative is constantly zero"},
        {"cd3-swap", "poly", "CD.3", "derivative with base and direction swapped"},
        {"cd3-double", "poly", "CD.3", "derivative counted twice"},
        {"cd2-value", "poly", "CD.2", "derivative returns the value at the base point"},
        {"cd5-frozen", "poly", "CD.5", "Jacobian frozen at zero instead of the base point"},
        {"cd2-diff", "poly", "CD.2", "one-step difference f(x+y)-f(x), not linear in y"},
        {"l2-identity", "poly", "L.2", "linearization returns the map unchanged"},
        {"l2-affine", "poly", "L.2", "degree<=1 filter keeps constant terms"},
        {"l3-quadratic", "poly", "L.3", "keeps the quadratic monomials instead of linear"},
        {"ls2-total", "poly", "LS.2", "context ignored: linearizes every variable"},
        {"ls3-context", "poly", "LS.3", "filters the context block instead of the argument"},
        {"ls8-fork", "poly", "LS.8", "gives up on contexts with more than one leaf"},
        {"cd1-parity", "poly", "CD.1", "derivative rescaled by the parity of the term count"},
        {"cd4-reverse", "poly", "CD.4", "derivative components reversed on tuple codomains"},
        {"cd7-skew", "poly", "CD.7", "degree-weighted skew term breaks mixed-partial symmetry"},
        {"l1-parity", "poly", "L.1", "linearization rescaled by the parity of the term count"},
        {"l4-reverse", "poly", "L.4", "linearization components reversed on tuple codomains"},
        {"ls1-parity", "poly", "LS.1", "partial linearization rescaled by the term-count parity"},
        {"ls4-reverse", "poly", "LS.4", "partial linearization components reversed"},
        {"ls7-skew", "poly", "LS.7", "degree-weighted cross term breaks partial interchange"},
        {"tower-shift2", "tower", "CD.3", "shifts the sequence two steps per derivative"},
        {"smooth-nochain", "smooth", "CD.5", "drops the inner factor of the chain rule"},
        {"closed-l-at-one", "closed", "L.5", "linearizes around one instead of zero"},
    };
    return table;
}

inline std::optional<MutantInfo> find_mutant(const std::string& id) {
    for (const auto& m : mutant_catalog())
        if (m.id == id) return m;
    return std::nullopt;
}

template <class M>
struct Combinators {
    DiffCombinator<M> d;
    LinCombinator<M> l;
    LinSystem<M> lsys;
};

namespace detail {

inline PolyMap poly_scale(const PolyMap& f, long k) {
    std::vector<Poly> comps;
    for (const auto& p : f.comps) comps.push_back(p.scaled(Rational(k)));
    return PolyMap(f.dom, f.cod, std::move(comps));
}

inline int poly_term_count(const PolyMap& f) {
    int n = 0;
    for (const auto& p : f.comps) n += static_cast<int>(p.terms().size());
    return n;
}

inline PolyMap poly_reverse_comps(PolyMap f) {
    std::reverse(f.comps.begin(), f.comps.end());
    return f;
}

inline int poly_total_degree(const PolyMap& f) {
    int d = 0;
    for (const auto& p : f.comps) d = std::max(d, p.degree());
    return d;
}

// Adds deg(f) * x0^2 * y0 to every component of a doubled-domain map.
inline PolyMap poly_skew(PolyMap df, int base_leaves, int weight) {
    if (base_leaves == 0 || weight == 0) return df;
    int n = 2 * base_leaves;
    for (auto& p : df.comps) {
        Poly::Exponents e(n, 0);
        e[0] = 2;
        e[base_leaves] = 1;
        p.accumulate(e, Rational(weight));
    }
    return df;
}

// Adds deg(f) * z0 * a0 to every component of a map in context.
inline PolyMap poly_cross(PolyMap lf, int ctx_leaves, int weight) {
    int n = lf.dom.leaves();
    if (ctx_leaves == 0 || ctx_leaves >= n || weight == 0) return lf;
    for (auto& p : lf.comps) {
        Poly::Exponents e(n, 0);
        e[0] = 1;
        e[ctx_leaves] = 1;
        p.accumulate(e, Rational(weight));
    }
    return lf;
}

inline PolyMap poly_degree_window(const PolyMap& f, int lo, int hi) {
    std::vector<Poly> comps;
    for (const auto& p : f.comps) {
        Poly q(p.nvars());
        for (const auto& [e, c] : p.terms()) {
            int deg = 0;
            for (int k : e) deg += k;
            if (deg >= lo && deg <= hi) q.accumulate(e, c);
        }
        comps.push_back(std::move(q));
    }
    return PolyMap(f.dom, f.cod, std::move(comps));
}

// Symbolic derivative that forgets the chain rule on the transcendental
// nodes: d sin(u) = cos(u) instead of cos(u) du.
inline SmoothTerm::Ptr broken_derivative(const SmoothTerm::Ptr& t, int var) {
    using T = SmoothTerm;
    switch (t->op()) {
        case T::Op::Const: return T::constant(Rational(0));
        case T::Op::Var: return T::constant(Rational(t->var() == var ? 1 : 0));
        case T::Op::Add:
            return T::add(broken_derivative(t->child0(), var),
                          broken_derivative(t->child1(), var));
        case T::Op::Mul:
            return T::add(T::mul(broken_derivative(t->child0(), var), t->child1()),
                          T::mul(t->child0(), broken_derivative(t->child1(), var)));
        case T::Op::Neg: return T::neg(broken_derivative(t->child0(), var));
        case T::Op::Sin: return T::cos(t->child0());
        case T::Op::Cos: return T::neg(T::sin(t->child0()));
        case T::Op::Exp: return T::exp(t->child0());
    }
    return T::constant(Rational(0));
}

inline ClosedValue ones_value(const Shape& shape) {
    switch (shape.kind()) {
        case Shape::Kind::Ground: return ClosedValue::scalar(Num(1.0));
        case Shape::Kind::Unit: return ClosedValue::unit();
        case Shape::Kind::Prod:
            return ClosedValue::pair(ones_value(shape.left()), ones_value(shape.right()));
        case Shape::Kind::Hom: {
            Shape cod = shape.right();
            return ClosedValue::closure([cod](const ClosedValue&) { return ones_value(cod); });
        }
    }
    return ClosedValue::unit();
}

} // namespace detail

/// Canonical or mutated combinator triple for the polynomial model.
/// Linearizations are derived from the (possibly mutated) derivative
/// unless the mutant targets them directly.
inline void require_known_mutant(const std::string& mutant, const std::string& model) {
    if (mutant.empty()) return;
    auto info = find_mutant(mutant);
    if (!info || info->model != model)
        throw std::invalid_argument("unknown " + model + " mutant: " + mutant);
}

inline Combinators<PolyModel> poly_combinators(const PolyModel& m, const std::string& mutant) {
    require_known_mutant(mutant, "poly");
    Combinators<PolyModel> c;
    c.d = m.differential();
    if (mutant == "cd3-zero") {
        c.d = [&m](const PolyMap& f) { return m.zero(Shape::prod(f.dom, f.dom), f.cod); };
    } else if (mutant == "cd3-swap") {
        c.d = [&m](const PolyMap& f) {
            return m.compose(sym(m, f.dom, f.dom), poly_differential(f));
        };
    } else if (mutant == "cd3-double") {
        c.d = [](const PolyMap& f) { return detail::poly_scale(poly_differential(f), 2); };
    } else if (mutant == "cd2-value") {
        c.d = [&m](const PolyMap& f) { return m.compose(m.proj0(f.dom, f.dom), f); };
    } else if (mutant == "cd5-frozen") {
        c.d = [&m](const PolyMap& f) {
            return m.compose(m.proj1(f.dom, f.dom), poly_linearize(f));
        };
    } else if (mutant == "cd2-diff") {
        c.d = [&m](const PolyMap& f) {
            auto on_sum = m.compose(oplus(m, f.dom), f);
            auto at_base = m.compose(m.proj0(f.dom, f.dom), f);
            return poly_add(on_sum, detail::poly_scale(at_base, -1));
        };
    } else if (mutant == "cd1-parity") {
        c.d = [](const PolyMap& f) {
            auto df = poly_differential(f);
            return detail::poly_term_count(f) % 2 == 0 ? detail::poly_scale(df, 2) : df;
        };
    } else if (mutant == "cd4-reverse") {
        c.d = [](const PolyMap& f) { return detail::poly_reverse_comps(poly_differential(f)); };
    } else if (mutant == "cd7-skew") {
        c.d = [](const PolyMap& f) {
            return detail::poly_skew(poly_differential(f), f.dom.leaves(),
                                     detail::poly_total_degree(f));
        };
    }
    c.l = l_from_d(m, c.d);
    c.lsys = lc_from_d(m, c.d);
    if (mutant == "l2-identity") {
        c.l = [](const PolyMap& f) { return f; };
    } else if (mutant == "l2-affine") {
        c.l = [](const PolyMap& f) { return detail::poly_degree_window(f, 0, 1); };
    } else if (mutant == "l3-quadratic") {
        c.l = [](const PolyMap& f) { return detail::poly_degree_window(f, 2, 2); };
    } else if (mutant == "ls2-total") {
        c.lsys = [](const Shape&, const PolyMap& f) { return poly_linearize(f); };
    } else if (mutant == "ls3-context") {
        c.lsys = [](const Shape& context, const PolyMap& f) {
            std::vector<Poly> comps;
            for (const auto& p : f.comps)
                comps.push_back(p.linear_filter(0, context.leaves(), false));
            return PolyMap(f.dom, f.cod, std::move(comps));
        };
    } else if (mutant == "l1-parity") {
        c.l = [](const PolyMap& f) {
            auto lf = poly_linearize(f);
            return detail::poly_term_count(f) % 2 == 0 ? detail::poly_scale(lf, 2) : lf;
        };
    } else if (mutant == "l4-reverse") {
        c.l = [](const PolyMap& f) { return detail::poly_reverse_comps(poly_linearize(f)); };
    } else if (mutant == "ls1-parity") {
        c.lsys = [](const Shape& context, const PolyMap& f) {
            auto lf = poly_partial_linearize(context, f);
            return detail::poly_term_count(f) % 2 == 0 ? detail::poly_scale(lf, 2) : lf;
        };
    } else if (mutant == "ls4-reverse") {
        c.lsys = [](const Shape& context, const PolyMap& f) {
            return detail::poly_reverse_comps(poly_partial_linearize(context, f));
        };
    } else if (mutant == "ls7-skew") {
        c.lsys = [](const Shape& context, const PolyMap& f) {
            return detail::poly_cross(poly_partial_linearize(context, f), context.leaves(),
                                      detail::poly_total_degree(f));
        };
    } else if (mutant == "ls8-fork") {
        c.lsys = [](const Shape& context, const PolyMap& f) {
            if (context.leaves() <= 1) return poly_partial_linearize(context, f);
            return poly_zero(f.dom, f.cod);
        };
    }
    return c;
}

inline Combinators<TowerModel> tower_combinators(const TowerModel& m,
                                                 const std::string& mutant) {
    Combinators<TowerModel> c;
    require_known_mutant(mutant, "tower");
    c.d = m.differential();
    if (mutant == "tower-shift2") c.d = [](const Tower& t) { return shift(shift(t)); };
    c.l = l_from_d(m, c.d);
    c.lsys = lc_from_d(m, c.d);
    return c;
}

inline Combinators<SmoothModel> smooth_combinators(const SmoothModel& m,
                                                   const std::string& mutant) {
    Combinators<SmoothModel> c;
    require_known_mutant(mutant, "smooth");
    c.d = m.differential();
    if (mutant == "smooth-nochain") {
        c.d = [](const SmoothMap& f) {
            int n = f.dom.leaves();
            std::vector<SmoothTerm::Ptr> comps;
            for (const auto& t : f.comps) {
                SmoothTerm::Ptr acc = SmoothTerm::constant(Rational(0));
                for (int i = 0; i < n; ++i)
                    acc = SmoothTerm::add(acc,
                                          SmoothTerm::mul(detail::broken_derivative(t, i),
                                                          SmoothTerm::variable(n + i)));
                comps.push_back(acc);
            }
            return SmoothMap(Shape::prod(f.dom, f.dom), f.cod, std::move(comps));
        };
    }
    c.l = l_from_d(m, c.d);
    c.lsys = lc_from_d(m, c.d);
    return c;
}

inline Combinators<ClosedModel> closed_combinators(const ClosedModel& m,
                                                   const std::string& mutant) {
    Combinators<ClosedModel> c;
    require_known_mutant(mutant, "closed");
    c.d = m.differential_combinator();
    c.l = m.linearize_combinator();
    c.lsys = lc_from_d(m, c.d);
    if (mutant == "closed-l-at-one") {
        c.l = [](const ClosedMorphism& f) {
            auto fb = f.body;
            Shape a = f.dom;
            return ClosedMorphism{
                a, f.cod,
                [fb, a](const ClosedValue& v) {
                    int tag = Num::fresh_tag();
                    return extract_value(fb(seed_value(detail::ones_value(a), v, tag)), tag);
                },
                "Lmut[" + f.label + "]"};
        };
    }
    return c;
}

} // namespace cartdiff
