#pragma once

#include <concepts>
#include <functional>
#include <string>

#include "cartdiff/report.hpp"
#include "cartdiff/shape.hpp"

namespace cartdiff {

/// What a model must provide: the Cartesian left additive interface plus
/// its equality contract. Everything else (structural maps, predicates,
/// slices, combinator constructions, law suites) is derived generically.
template <class M>
concept Model = requires(const M m, const typename M::Morphism f, const Shape s) {
    { m.name() } -> std::convertible_to<std::string>;
    { m.dom(f) } -> std::convertible_to<Shape>;
    { m.cod(f) } -> std::convertible_to<Shape>;
    { m.id(s) } -> std::same_as<typename M::Morphism>;
    { m.compose(f, f) } -> std::same_as<typename M::Morphism>;
    { m.pair(f, f) } -> std::same_as<typename M::Morphism>;
    { m.proj0(s, s) } -> std::same_as<typename M::Morphism>;
    { m.proj1(s, s) } -> std::same_as<typename M::Morphism>;
    { m.add(f, f) } -> std::same_as<typename M::Morphism>;
    { m.zero(s, s) } -> std::same_as<typename M::Morphism>;
    { m.equal(f, f) } -> std::same_as<bool>;
    { m.show(f) } -> std::convertible_to<std::string>;
    { m.eq_contract() } -> std::convertible_to<EqContract>;
};

template <class M>
using MorphismOf = typename M::Morphism;

/// f x g = <pi0 f, pi1 g>
template <Model M>
MorphismOf<M> prod_map(const M& m, const MorphismOf<M>& f, const MorphismOf<M>& g) {
    auto p0 = m.proj0(m.dom(f), m.dom(g));
    auto p1 = m.proj1(m.dom(f), m.dom(g));
    return m.pair(m.compose(p0, f), m.compose(p1, g));
}

/// <1, 0> : A -> A x X
template <Model M>
MorphismOf<M> id_zero(const M& m, const Shape& a, const Shape& x) {
    return m.pair(m.id(a), m.zero(a, x));
}

/// <0, 1> : A -> X x A
template <Model M>
MorphismOf<M> zero_id(const M& m, const Shape& a, const Shape& x) {
    return m.pair(m.zero(a, x), m.id(a));
}

/// Addition map of an object: plus_A = pi0 + pi1 : A x A -> A.
template <Model M>
MorphismOf<M> oplus(const M& m, const Shape& a) {
    return m.add(m.proj0(a, a), m.proj1(a, a));
}

/// Symmetry tau : A x B -> B x A.
template <Model M>
MorphismOf<M> sym(const M& m, const Shape& a, const Shape& b) {
    return m.pair(m.proj1(a, b), m.proj0(a, b));
}

/// Interchange c : (A x B) x (C x D) -> (A x C) x (B x D).
template <Model M>
MorphismOf<M> interchange(const M& m, const Shape& a, const Shape& b, const Shape& c,
                          const Shape& d) {
    auto left = prod_map(m, m.proj0(a, b), m.proj0(c, d));
    auto right = prod_map(m, m.proj1(a, b), m.proj1(c, d));
    return m.pair(left, right);
}

/// Lifting map l : A x D -> (A x B) x (C x D), inserting zeros in the
/// middle two arguments.
template <Model M>
MorphismOf<M> lift(const M& m, const Shape& a, const Shape& b, const Shape& c,
                   const Shape& d) {
    return prod_map(m, id_zero(m, a, b), zero_id(m, d, c));
}

/// alpha : C x (A x B) -> (C x A) x B.
template <Model M>
MorphismOf<M> alpha(const M& m, const Shape& c, const Shape& a, const Shape& b) {
    auto first = prod_map(m, m.id(c), m.proj0(a, b));
    auto second = m.compose(m.proj1(c, Shape::prod(a, b)), m.proj1(a, b));
    return m.pair(first, second);
}

template <Model M>
MorphismOf<M> alpha_inv(const M& m, const Shape& c, const Shape& a, const Shape& b) {
    Shape ca = Shape::prod(c, a);
    auto p0 = m.proj0(ca, b);
    auto to_c = m.compose(p0, m.proj0(c, a));
    auto to_a = m.compose(p0, m.proj1(c, a));
    return m.pair(to_c, m.pair(to_a, m.proj1(ca, b)));
}

/// beta : C x (A x B) -> (C x B) x A; equals (1 x tau) alpha.
template <Model M>
MorphismOf<M> beta(const M& m, const Shape& c, const Shape& a, const Shape& b) {
    auto first = prod_map(m, m.id(c), m.proj1(a, b));
    auto second = m.compose(m.proj1(c, Shape::prod(a, b)), m.proj0(a, b));
    return m.pair(first, second);
}

template <Model M>
MorphismOf<M> beta_inv(const M& m, const Shape& c, const Shape& a, const Shape& b) {
    Shape cb = Shape::prod(c, b);
    auto p0 = m.proj0(cb, a);
    auto to_c = m.compose(p0, m.proj0(c, b));
    auto to_b = m.compose(p0, m.proj1(c, b));
    return m.pair(to_c, m.pair(m.proj1(cb, a), to_b));
}

/// Semi-additive test: plus_A f = pi0 f + pi1 f.
template <Model M>
bool is_semi_additive(const M& m, const MorphismOf<M>& f) {
    Shape a = m.dom(f);
    auto lhs = m.compose(oplus(m, a), f);
    auto rhs = m.add(m.compose(m.proj0(a, a), f), m.compose(m.proj1(a, a), f));
    return m.equal(lhs, rhs);
}

/// Reduced test: 0 f = 0, with the zero map out of the terminal object.
template <Model M>
bool is_reduced(const M& m, const MorphismOf<M>& f) {
    Shape a = m.dom(f), b = m.cod(f);
    return m.equal(m.compose(m.zero(Shape::unit(), a), f), m.zero(Shape::unit(), b));
}

template <Model M>
bool is_additive(const M& m, const MorphismOf<M>& f) {
    return is_reduced(m, f) && is_semi_additive(m, f);
}

/// Constant test: 0 f = f with the zero endomap of the domain.
template <Model M>
bool is_constant(const M& m, const MorphismOf<M>& f) {
    Shape a = m.dom(f);
    return m.equal(m.compose(m.zero(a, a), f), f);
}

/// Splits the domain of a slice morphism into (context, argument).
inline std::pair<Shape, Shape> slice_split(const Shape& context, const Shape& dom) {
    if (!dom.is_prod() || dom.left() != context)
        throw ShapeError("context mismatch: domain " + dom.str() +
                         " does not extend context " + context.str());
    return {dom.left(), dom.right()};
}

/// Identity of the simple slice over C at A: pi1 : C x A -> A.
template <Model M>
MorphismOf<M> slice_id(const M& m, const Shape& context, const Shape& a) {
    return m.proj1(context, a);
}

/// Slice composite of f : C x A -> B and g : C x B -> D, i.e. <pi0, f> g.
template <Model M>
MorphismOf<M> slice_compose(const M& m, const Shape& context, const MorphismOf<M>& f,
                            const MorphismOf<M>& g) {
    auto [c, a] = slice_split(context, m.dom(f));
    slice_split(context, m.dom(g));
    return m.compose(m.pair(m.proj0(c, a), f), g);
}

/// Substitution along h : C' -> C, sending f : C x A -> B to (h x 1) f.
template <Model M>
MorphismOf<M> substitute(const M& m, const MorphismOf<M>& h, const MorphismOf<M>& f) {
    auto [c, a] = slice_split(m.cod(h), m.dom(f));
    return m.compose(prod_map(m, h, m.id(a)), f);
}

/// Additive in the second argument: (1 x plus) f = (1 x pi0) f + (1 x pi1) f
/// and <pi0, 0> f = 0.
template <Model M>
bool is_additive_in_context(const M& m, const Shape& context, const MorphismOf<M>& f) {
    auto [c, a] = slice_split(context, m.dom(f));
    auto via_sum = m.compose(prod_map(m, m.id(c), oplus(m, a)), f);
    auto one_pi0 = m.compose(prod_map(m, m.id(c), m.proj0(a, a)), f);
    auto one_pi1 = m.compose(prod_map(m, m.id(c), m.proj1(a, a)), f);
    if (!m.equal(via_sum, m.add(one_pi0, one_pi1))) return false;
    auto killed = m.compose(m.pair(m.proj0(c, a), m.zero(Shape::prod(c, a), a)), f);
    return m.equal(killed, m.zero(Shape::prod(c, a), m.cod(f)));
}

/// Constant in the second argument: <pi0, 0> f = f.
template <Model M>
bool is_constant_in_context(const M& m, const Shape& context, const MorphismOf<M>& f) {
    auto [c, a] = slice_split(context, m.dom(f));
    auto killed = m.compose(m.pair(m.proj0(c, a), m.zero(Shape::prod(c, a), a)), f);
    return m.equal(killed, f);
}

/// The simple slice category over a fixed context, presented as a model
/// itself: morphisms A -> B are base morphisms C x A -> B. Products, sums
/// and zero are inherited pointwise from the base.
template <Model M>
class SliceModel {
public:
    using Morphism = MorphismOf<M>;

    SliceModel(const M& base, Shape context) : base_(base), context_(std::move(context)) {}

    std::string name() const { return base_.name() + "[" + context_.str() + "]"; }
    const Shape& context() const { return context_; }

    Shape dom(const Morphism& f) const { return slice_split(context_, base_.dom(f)).second; }
    Shape cod(const Morphism& f) const { return base_.cod(f); }

    Morphism id(const Shape& a) const { return slice_id(base_, context_, a); }
    Morphism compose(const Morphism& f, const Morphism& g) const {
        return slice_compose(base_, context_, f, g);
    }
    Morphism pair(const Morphism& f, const Morphism& g) const { return base_.pair(f, g); }
    Morphism proj0(const Shape& a, const Shape& b) const {
        return base_.compose(base_.proj1(context_, Shape::prod(a, b)), base_.proj0(a, b));
    }
    Morphism proj1(const Shape& a, const Shape& b) const {
        return base_.compose(base_.proj1(context_, Shape::prod(a, b)), base_.proj1(a, b));
    }
    Morphism add(const Morphism& f, const Morphism& g) const { return base_.add(f, g); }
    Morphism zero(const Shape& a, const Shape& b) const {
        return base_.zero(Shape::prod(context_, a), b);
    }
    bool equal(const Morphism& f, const Morphism& g) const { return base_.equal(f, g); }
    std::string show(const Morphism& f) const { return base_.show(f); }
    EqContract eq_contract() const { return base_.eq_contract(); }

private:
    const M& base_;
    Shape context_;
};

} // namespace cartdiff
