#pragma once

#include <functional>

#include "cartdiff/core.hpp"

namespace cartdiff {

/// A differential combinator on a model: f : A -> B to D[f] : A x A -> B.
template <class M>
using DiffCombinator = std::function<MorphismOf<M>(const MorphismOf<M>&)>;

/// A (total) linearizing combinator: f : A -> B to L[f] : A -> B.
template <class M>
using LinCombinator = std::function<MorphismOf<M>(const MorphismOf<M>&)>;

/// A system of linearizing combinators: one linearizing combinator per
/// context, L^C[f] : C x A -> B for f : C x A -> B.
template <class M>
using LinSystem = std::function<MorphismOf<M>(const Shape&, const MorphismOf<M>&)>;

/// Linearization from differentiation: L[f] = <0,1> D[f], evaluating the
/// derivative at zero in its first argument.
template <Model M>
LinCombinator<M> l_from_d(const M& m, DiffCombinator<M> d) {
    return [&m, d = std::move(d)](const MorphismOf<M>& f) {
        Shape a = m.dom(f);
        return m.compose(zero_id(m, a, a), d(f));
    };
}

/// Differentiation in context: D^C[f] = <1 x pi0, 0 x pi1> D[f], the
/// partial derivative holding the context fixed.
template <Model M>
DiffCombinator<M> d_in_context(const M& m, DiffCombinator<M> d, Shape context) {
    return [&m, d = std::move(d), context = std::move(context)](const MorphismOf<M>& f) {
        auto [c, a] = slice_split(context, m.dom(f));
        auto first = prod_map(m, m.id(c), m.proj0(a, a));
        auto second = prod_map(m, m.zero(c, c), m.proj1(a, a));
        return m.compose(m.pair(first, second), d(f));
    };
}

/// Partial linearization from differentiation: L^C[f] = l D[f], the
/// lifting map evaluating at zero in context positions.
template <Model M>
LinSystem<M> lc_from_d(const M& m, DiffCombinator<M> d) {
    return [&m, d = std::move(d)](const Shape& context, const MorphismOf<M>& f) {
        auto [c, a] = slice_split(context, m.dom(f));
        return m.compose(lift(m, c, a, c, a), d(f));
    };
}

/// Differentiation from partial linearization: D[f] = L^A[plus_A f],
/// linearizing the second summand of f applied to a sum.
template <Model M>
DiffCombinator<M> d_from_system(const M& m, LinSystem<M> lsys) {
    return [&m, lsys = std::move(lsys)](const MorphismOf<M>& f) {
        Shape a = m.dom(f);
        return lsys(a, m.compose(oplus(m, a), f));
    };
}

/// Total linearization from a system: L[f] = <0,1> L^T[pi1 f], passing
/// through the slice over the terminal object.
template <Model M>
LinCombinator<M> total_l_from_system(const M& m, LinSystem<M> lsys) {
    return [&m, lsys = std::move(lsys)](const MorphismOf<M>& f) {
        Shape a = m.dom(f);
        Shape top = Shape::unit();
        auto embedded = m.compose(m.proj1(top, a), f);
        return m.compose(zero_id(m, a, top), lsys(top, embedded));
    };
}

/// The two partial linearizations of f : C x (A x B) -> D, linearizing one
/// factor of the argument while holding the context and the other factor:
///   L0[f] = beta L^{C x B}[beta^-1 f]    (linearize A)
///   L1[f] = alpha L^{C x A}[alpha^-1 f]  (linearize B)
template <Model M>
std::pair<MorphismOf<M>, MorphismOf<M>> partial_pair(const M& m, const LinSystem<M>& lsys,
                                                     const Shape& context,
                                                     const MorphismOf<M>& f) {
    auto [c, ab] = slice_split(context, m.dom(f));
    if (!ab.is_prod())
        throw ShapeError("partial linearization pair needs a product argument, got " +
                         ab.str());
    Shape a = ab.left(), b = ab.right();
    auto l0 = m.compose(beta(m, c, a, b),
                        lsys(Shape::prod(c, b), m.compose(beta_inv(m, c, a, b), f)));
    auto l1 = m.compose(alpha(m, c, a, b),
                        lsys(Shape::prod(c, a), m.compose(alpha_inv(m, c, a, b), f)));
    return {std::move(l0), std::move(l1)};
}

} // namespace cartdiff
