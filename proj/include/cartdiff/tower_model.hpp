#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "cartdiff/combinators.hpp"
#include "cartdiff/core.hpp"
#include "cartdiff/poly.hpp"
#include "cartdiff/poly_model.hpp"

namespace cartdiff {

/// A truncated derivative sequence (f_0, ..., f_k) over the polynomial
/// model, with f_n on the n-fold doubled domain. Towers here are always
/// canonical: f_{n+1} is the derivative of f_n, so entry 0 determines the
/// rest and every operation re-derives from it.
struct Tower {
    std::vector<PolyMap> entries; // depth k stores k+1 entries

    int depth() const { return static_cast<int>(entries.size()) - 1; }
    const PolyMap& base() const { return entries.front(); }
    const Shape& dom() const { return entries.front().dom; }
    const Shape& cod() const { return entries.front().cod; }

    std::string str() const {
        std::string out = "(";
        for (std::size_t i = 0; i < entries.size(); ++i) {
            if (i) out += ";";
            out += entries[i].str();
        }
        return out + ")";
    }
};

/// Canonical tower of a polynomial map: entry n is the n-fold derivative.
inline Tower tower_of(const PolyMap& f, int depth) {
    if (depth < 0) throw std::invalid_argument("tower depth must be non-negative");
    Tower t;
    t.entries.push_back(f);
    for (int n = 0; n < depth; ++n) t.entries.push_back(poly_differential(t.entries.back()));
    return t;
}

/// Left shift: the differential combinator of the tower model. Consumes
/// one depth level.
inline Tower shift(const Tower& t) {
    if (t.depth() < 1) throw std::out_of_range("cannot shift a depth-0 tower");
    Tower s;
    s.entries.assign(t.entries.begin() + 1, t.entries.end());
    return s;
}

/// Linearization by the replicate-pi1 form: entry 0 is <0,1> f_1 and each
/// later entry precomposes one more pi1. Canonical towers stay canonical
/// and the depth is preserved.
inline Tower tower_linearize(const Tower& t) {
    if (t.depth() < 1) throw std::out_of_range("cannot linearize a depth-0 tower");
    Shape a = t.dom();
    Tower out;
    out.entries.push_back(poly_compose(poly_pair(poly_zero(a, a), poly_id(a)), t.entries[1]));
    Shape level = a;
    for (int n = 1; n <= t.depth(); ++n) {
        out.entries.push_back(poly_compose(poly_proj1(level, level), out.entries.back()));
        level = Shape::prod(level, level);
    }
    return out;
}

/// Strict equality: same depth, same shapes, entrywise equal.
inline bool tower_eq(const Tower& s, const Tower& t) {
    if (s.depth() != t.depth())
        throw std::invalid_argument("tower depth mismatch: " + std::to_string(s.depth()) +
                                    " vs " + std::to_string(t.depth()));
    return s.entries == t.entries;
}

/// Drops entries past the given depth.
inline Tower truncate(const Tower& t, int depth) {
    Tower out;
    out.entries.assign(t.entries.begin(), t.entries.begin() + depth + 1);
    return out;
}

/// The cofree-style model at finite depth. Structural maps are built at
/// the default depth; composites live at the minimum depth of their
/// parts, so identities checked at depth d are validated to order d minus
/// the number of shifts applied. Law equality therefore compares entries
/// up to the common depth (entry 0 determines a canonical tower, so this
/// decides equality of the underlying morphisms).
class TowerModel {
public:
    using Morphism = Tower;

    explicit TowerModel(int depth = 3) : depth_(depth) {}

    std::string name() const { return "tower"; }
    int default_depth() const { return depth_; }

    Shape dom(const Morphism& f) const { return f.dom(); }
    Shape cod(const Morphism& f) const { return f.cod(); }

    Morphism id(const Shape& a) const { return tower_of(poly_id(a), depth_); }
    Morphism compose(const Morphism& f, const Morphism& g) const {
        return tower_of(poly_compose(f.base(), g.base()), std::min(f.depth(), g.depth()));
    }
    Morphism pair(const Morphism& f, const Morphism& g) const {
        return tower_of(poly_pair(f.base(), g.base()), std::min(f.depth(), g.depth()));
    }
    Morphism proj0(const Shape& a, const Shape& b) const {
        return tower_of(poly_proj0(a, b), depth_);
    }
    Morphism proj1(const Shape& a, const Shape& b) const {
        return tower_of(poly_proj1(a, b), depth_);
    }
    Morphism add(const Morphism& f, const Morphism& g) const {
        return tower_of(poly_add(f.base(), g.base()), std::min(f.depth(), g.depth()));
    }
    Morphism zero(const Shape& a, const Shape& b) const {
        return tower_of(poly_zero(a, b), depth_);
    }

    bool equal(const Morphism& f, const Morphism& g) const {
        int d = std::min(f.depth(), g.depth());
        for (int n = 0; n <= d; ++n)
            if (!poly_eq(f.entries[n], g.entries[n])) return false;
        return true;
    }

    std::string show(const Morphism& f) const { return f.str(); }
    EqContract eq_contract() const { return EqContract::make_exact(); }

    DiffCombinator<TowerModel> differential() const {
        return [](const Morphism& f) { return shift(f); };
    }
    LinCombinator<TowerModel> linearize() const {
        return [](const Morphism& f) { return tower_linearize(f); };
    }

private:
    int depth_;
};

/// Tower instances are canonical towers over generated polynomial maps;
/// shrinking happens on the base map and re-derives the entries.
class TowerGen {
public:
    explicit TowerGen(int depth = 3, PolyGenConfig cfg = {}) : depth_(depth), inner_(cfg) {}

    Shape shape(Rng& rng) const { return inner_.shape(rng); }
    Shape small_shape(Rng& rng) const { return inner_.small_shape(rng); }

    Tower map(Rng& rng, const Shape& dom, const Shape& cod) const {
        return tower_of(inner_.map(rng, dom, cod), depth_);
    }
    Tower reduced_map(Rng& rng, const Shape& dom, const Shape& cod) const {
        return tower_of(strip_constant(inner_.map(rng, dom, cod)), depth_);
    }
    Tower additive_map(Rng& rng, const Shape& dom, const Shape& cod) const {
        return tower_of(poly_linearize(inner_.map(rng, dom, cod)), depth_);
    }

    template <class StillFails>
    std::vector<Tower> shrink(std::vector<Tower> inputs, StillFails&& fails) const {
        std::vector<PolyMap> bases;
        std::vector<int> depths;
        for (const auto& t : inputs) {
            bases.push_back(t.base());
            depths.push_back(t.depth());
        }
        auto rebuilt = [&](const std::vector<PolyMap>& bs) {
            std::vector<Tower> ts;
            for (std::size_t i = 0; i < bs.size(); ++i)
                ts.push_back(tower_of(bs[i], depths[i]));
            return ts;
        };
        auto base_fails = [&](const std::vector<PolyMap>& bs) { return fails(rebuilt(bs)); };
        return rebuilt(inner_.shrink(std::move(bases), base_fails));
    }

    static PolyMap strip_constant(PolyMap f) {
        for (auto& comp : f.comps) {
            Poly::Exponents zero(comp.nvars(), 0);
            auto it = comp.terms().find(zero);
            if (it != comp.terms().end()) comp.accumulate(zero, -it->second);
        }
        return f;
    }

private:
    int depth_;
    PolyGen inner_;
};

} // namespace cartdiff
