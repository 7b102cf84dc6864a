#pragma once

#include <string>
#include <vector>

#include "cartdiff/combinators.hpp"
#include "cartdiff/core.hpp"
#include "cartdiff/rng.hpp"
#include "cartdiff/smooth.hpp"

namespace cartdiff {

/// The transcendental model: symbolic sin/cos/exp terms with symbolic
/// differentiation; equality is seeded random-point sampling.
class SmoothModel {
public:
    using Morphism = SmoothMap;

    explicit SmoothModel(SampledEq eq = {}) : eq_(eq) {}

    std::string name() const { return "smooth"; }
    const SampledEq& sampling() const { return eq_; }

    Shape dom(const Morphism& f) const { return f.dom; }
    Shape cod(const Morphism& f) const { return f.cod; }

    Morphism id(const Shape& a) const { return smooth_id(a); }
    Morphism compose(const Morphism& f, const Morphism& g) const {
        return smooth_compose(f, g);
    }
    Morphism pair(const Morphism& f, const Morphism& g) const { return smooth_pair(f, g); }
    Morphism proj0(const Shape& a, const Shape& b) const { return smooth_proj0(a, b); }
    Morphism proj1(const Shape& a, const Shape& b) const { return smooth_proj1(a, b); }
    Morphism add(const Morphism& f, const Morphism& g) const { return smooth_add(f, g); }
    Morphism zero(const Shape& a, const Shape& b) const { return smooth_zero(a, b); }

    bool equal(const Morphism& f, const Morphism& g) const { return sampled_eq(f, g, eq_); }
    std::string show(const Morphism& f) const { return f.str(); }
    EqContract eq_contract() const { return EqContract::sampled(eq_.tolerance, eq_.points); }

    DiffCombinator<SmoothModel> differential() const {
        return [](const Morphism& f) { return smooth_differential(f); };
    }
    /// Derivative evaluated at zero in the base block; constant folding of
    /// the exact values at zero happens in the term constructors.
    LinCombinator<SmoothModel> linearize() const {
        return [this](const Morphism& f) {
            Shape a = f.dom;
            return smooth_compose(smooth_pair(smooth_zero(a, a), smooth_id(a)),
                                  smooth_differential(f));
        };
    }

private:
    SampledEq eq_;
};

/// Random smooth terms. Arguments of exp are drawn from the exp-free
/// grammar so a single generated map never overflows on the sampling box;
/// composites can still blow up at some points, which the sampler skips.
class SmoothGen {
public:
    explicit SmoothGen(int max_depth = 3) : depth_(max_depth) {}

    Shape shape(Rng& rng, int cap = 2) const {
        int n = static_cast<int>(rng.range(1, cap));
        if (n == 1) return Shape::ground();
        return Shape::prod(Shape::ground(), Shape::ground());
    }
    Shape small_shape(Rng& rng) const { return shape(rng, 2); }

    SmoothMap map(Rng& rng, const Shape& dom, const Shape& cod) const {
        int n = dom.leaves();
        std::vector<SmoothTerm::Ptr> comps;
        for (int j = 0; j < cod.leaves(); ++j) comps.push_back(term(rng, n, depth_, true));
        return SmoothMap(dom, cod, std::move(comps));
    }

    /// Every component vanishes at zero: sums of var-times-term products.
    SmoothMap reduced_map(Rng& rng, const Shape& dom, const Shape& cod) const {
        int n = dom.leaves();
        std::vector<SmoothTerm::Ptr> comps;
        for (int j = 0; j < cod.leaves(); ++j) {
            SmoothTerm::Ptr acc = SmoothTerm::constant(Rational(0));
            int parts = static_cast<int>(rng.range(1, 2));
            for (int k = 0; k < parts && n > 0; ++k)
                acc = SmoothTerm::add(
                    acc, SmoothTerm::mul(SmoothTerm::variable(static_cast<int>(rng.below(n))),
                                         term(rng, n, depth_ - 1, false)));
            comps.push_back(acc);
        }
        return SmoothMap(dom, cod, std::move(comps));
    }

    /// Linear combinations of the variables.
    SmoothMap additive_map(Rng& rng, const Shape& dom, const Shape& cod) const {
        int n = dom.leaves();
        std::vector<SmoothTerm::Ptr> comps;
        for (int j = 0; j < cod.leaves(); ++j) {
            SmoothTerm::Ptr acc = SmoothTerm::constant(Rational(0));
            for (int v = 0; v < n; ++v)
                acc = SmoothTerm::add(
                    acc, SmoothTerm::mul(SmoothTerm::constant(Rational(rng.range(-2, 2))),
                                         SmoothTerm::variable(v)));
            comps.push_back(acc);
        }
        return SmoothMap(dom, cod, std::move(comps));
    }

    SmoothTerm::Ptr term(Rng& rng, int nvars, int depth, bool allow_exp) const {
        if (depth <= 0 || rng.chance(1, 5)) {
            if (nvars > 0 && rng.chance(3, 4))
                return SmoothTerm::variable(static_cast<int>(rng.below(nvars)));
            return SmoothTerm::constant(Rational(rng.range(-2, 2)));
        }
        switch (rng.below(allow_exp ? 6 : 5)) {
            case 0:
                return SmoothTerm::add(term(rng, nvars, depth - 1, allow_exp),
                                       term(rng, nvars, depth - 1, allow_exp));
            case 1:
                return SmoothTerm::mul(term(rng, nvars, depth - 1, allow_exp),
                                       term(rng, nvars, depth - 1, allow_exp));
            case 2: return SmoothTerm::neg(term(rng, nvars, depth - 1, allow_exp));
            case 3: return SmoothTerm::sin(term(rng, nvars, depth - 1, allow_exp));
            case 4: return SmoothTerm::cos(term(rng, nvars, depth - 1, allow_exp));
            default: return SmoothTerm::exp(term(rng, nvars, depth - 1, false));
        }
    }

private:
    int depth_;
};

} // namespace cartdiff
