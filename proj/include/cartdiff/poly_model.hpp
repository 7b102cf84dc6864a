#pragma once

#include <string>
#include <vector>

#include "cartdiff/combinators.hpp"
#include "cartdiff/core.hpp"
#include "cartdiff/poly.hpp"
#include "cartdiff/rng.hpp"

namespace cartdiff {

/// The exact polynomial model: morphisms are tuples of multivariate
/// polynomials over the rationals; every combinator is decidable and all
/// law checks compare canonical forms.
class PolyModel {
public:
    using Morphism = PolyMap;

    std::string name() const { return "poly"; }

    Shape dom(const Morphism& f) const { return f.dom; }
    Shape cod(const Morphism& f) const { return f.cod; }

    Morphism id(const Shape& a) const { return poly_id(a); }
    Morphism compose(const Morphism& f, const Morphism& g) const { return poly_compose(f, g); }
    Morphism pair(const Morphism& f, const Morphism& g) const { return poly_pair(f, g); }
    Morphism proj0(const Shape& a, const Shape& b) const { return poly_proj0(a, b); }
    Morphism proj1(const Shape& a, const Shape& b) const { return poly_proj1(a, b); }
    Morphism add(const Morphism& f, const Morphism& g) const { return poly_add(f, g); }
    Morphism zero(const Shape& a, const Shape& b) const { return poly_zero(a, b); }

    bool equal(const Morphism& f, const Morphism& g) const { return poly_eq(f, g); }
    std::string show(const Morphism& f) const { return f.str(); }
    EqContract eq_contract() const { return EqContract::make_exact(); }

    DiffCombinator<PolyModel> differential() const {
        return [](const Morphism& f) { return poly_differential(f); };
    }
    LinCombinator<PolyModel> linearize() const {
        return [](const Morphism& f) { return poly_linearize(f); };
    }
    LinSystem<PolyModel> partial_linearize() const {
        return [](const Shape& c, const Morphism& f) { return poly_partial_linearize(c, f); };
    }
};

/// Budgets for generated polynomial instances.
struct PolyGenConfig {
    int max_leaves = 3;
    int max_degree = 3;
    long coeff_lo = -2;
    long coeff_hi = 2;
    int max_terms = 4;
};

/// Seeded generator and greedy shrinker for polynomial instances.
class PolyGen {
public:
    explicit PolyGen(PolyGenConfig cfg = {}) : cfg_(cfg) {}

    /// Random product tree with between 1 and max_leaves ground leaves;
    /// occasionally a unit leaf to cover degenerate domains.
    Shape shape(Rng& rng, int max_leaves = 0) const {
        int cap = max_leaves > 0 ? max_leaves : cfg_.max_leaves;
        int n = static_cast<int>(rng.range(1, cap));
        return build_shape(rng, n);
    }

    /// Small shape for laws with many independent objects.
    Shape small_shape(Rng& rng) const { return shape(rng, 2); }

    PolyMap map(Rng& rng, const Shape& dom, const Shape& cod) const {
        int n = dom.leaves();
        std::vector<Poly> comps;
        comps.reserve(cod.leaves());
        for (int j = 0; j < cod.leaves(); ++j) comps.push_back(poly(rng, n));
        return PolyMap(dom, cod, std::move(comps));
    }

    /// No constant terms, so the map vanishes at zero.
    PolyMap reduced_map(Rng& rng, const Shape& dom, const Shape& cod) const {
        PolyMap f = map(rng, dom, cod);
        for (auto& comp : f.comps) {
            Poly::Exponents z(comp.nvars(), 0);
            auto it = comp.terms().find(z);
            if (it != comp.terms().end()) comp.accumulate(z, -it->second);
        }
        return f;
    }

    /// Homogeneous linear components: additive over the rationals.
    PolyMap additive_map(Rng& rng, const Shape& dom, const Shape& cod) const {
        int n = dom.leaves();
        std::vector<Poly> comps;
        for (int j = 0; j < cod.leaves(); ++j) {
            Poly p(n);
            for (int v = 0; v < n; ++v) {
                Poly::Exponents e(n, 0);
                e[v] = 1;
                p.accumulate(e, Rational(rng.range(cfg_.coeff_lo, cfg_.coeff_hi)));
            }
            comps.push_back(std::move(p));
        }
        return PolyMap(dom, cod, std::move(comps));
    }

    /// Greedy minimization: repeatedly zero one coefficient or decrement
    /// one exponent, keeping the change whenever the predicate still fails.
    template <class StillFails>
    std::vector<PolyMap> shrink(std::vector<PolyMap> inputs, StillFails&& fails) const {
        bool changed = true;
        int round = 0;
        while (changed && round++ < 64) {
            changed = false;
            for (std::size_t mi = 0; mi < inputs.size(); ++mi) {
                for (std::size_t ci = 0; ci < inputs[mi].comps.size(); ++ci) {
                    const Poly& p = inputs[mi].comps[ci];
                    std::vector<Poly::Exponents> keys;
                    keys.reserve(p.terms().size());
                    for (const auto& [e, c] : p.terms()) keys.push_back(e);
                    for (const auto& key : keys) {
                        auto it = inputs[mi].comps[ci].terms().find(key);
                        if (it == inputs[mi].comps[ci].terms().end()) continue;
                        Rational coeff = it->second;
                        // Try dropping the whole term.
                        Poly dropped = inputs[mi].comps[ci];
                        dropped.accumulate(key, -coeff);
                        if (try_replace(inputs, mi, ci, dropped, fails)) {
                            changed = true;
                            continue;
                        }
                        // Try lowering each exponent by one.
                        for (std::size_t v = 0; v < key.size(); ++v) {
                            if (key[v] == 0) continue;
                            Poly lowered = inputs[mi].comps[ci];
                            lowered.accumulate(key, -coeff);
                            Poly::Exponents e2 = key;
                            e2[v] -= 1;
                            lowered.accumulate(e2, coeff);
                            if (try_replace(inputs, mi, ci, lowered, fails)) {
                                changed = true;
                                break;
                            }
                        }
                    }
                }
            }
        }
        return inputs;
    }

private:
    Shape build_shape(Rng& rng, int leaves) const {
        if (leaves <= 1) {
            if (rng.chance(1, 16)) return Shape::prod(Shape::unit(), Shape::ground());
            return Shape::ground();
        }
        int left = static_cast<int>(rng.range(1, leaves - 1));
        return Shape::prod(build_shape(rng, left), build_shape(rng, leaves - left));
    }

    Poly poly(Rng& rng, int nvars) const {
        Poly p(nvars);
        int terms = static_cast<int>(rng.range(0, cfg_.max_terms));
        for (int t = 0; t < terms; ++t) {
            Poly::Exponents e(nvars, 0);
            int deg = static_cast<int>(rng.range(0, cfg_.max_degree));
            for (int d = 0; d < deg && nvars > 0; ++d) e[rng.below(nvars)] += 1;
            p.accumulate(e, Rational(rng.range(cfg_.coeff_lo, cfg_.coeff_hi)));
        }
        return p;
    }

    template <class StillFails>
    bool try_replace(std::vector<PolyMap>& inputs, std::size_t mi, std::size_t ci,
                     const Poly& candidate, StillFails&& fails) const {
        Poly saved = inputs[mi].comps[ci];
        if (candidate == saved) return false;
        inputs[mi].comps[ci] = candidate;
        if (fails(inputs)) return true;
        inputs[mi].comps[ci] = saved;
        return false;
    }

    PolyGenConfig cfg_;
};

} // namespace cartdiff
