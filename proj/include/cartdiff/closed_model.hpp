#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "cartdiff/combinators.hpp"
#include "cartdiff/core.hpp"
#include "cartdiff/laws.hpp"
#include "cartdiff/rng.hpp"
#include "cartdiff/smooth.hpp"
#include "cartdiff/smooth_model.hpp"

namespace cartdiff {

/// A real number carrying nested infinitesimal perturbations. Each
/// derivative evaluation seeds a fresh tag; arithmetic treats a value with
/// a lower tag as constant with respect to a higher tag, which keeps
/// nested and interleaved differentiation from confusing perturbations.
class Num {
public:
    Num() : re_(0.0) {}
    explicit Num(double re) : re_(re) {}
    static Num dual(int tag, const Num& primal, const Num& tangent);

    bool plain() const { return tag_ < 0; }
    int tag() const { return tag_; }
    const Num& primal() const { return *p_; }
    const Num& tangent() const { return *t_; }

    /// The underlying double; the value must be plain.
    double force() const;

    friend Num operator+(const Num& a, const Num& b);
    friend Num operator*(const Num& a, const Num& b);
    friend Num operator-(const Num& a);
    friend Num sin(const Num& a);
    friend Num cos(const Num& a);
    friend Num exp(const Num& a);

    /// Coefficient of the perturbation with the given tag.
    static Num extract(const Num& n, int tag);

    /// Fresh, strictly increasing perturbation tag.
    static int fresh_tag();

private:
    double re_ = 0.0;
    int tag_ = -1;
    std::shared_ptr<const Num> p_, t_;
};

/// A runtime value of the closed model: scalar, unit, pair, or closure.
class ClosedValue {
public:
    enum class Kind { Scalar, Unit, Pair, Closure };
    using Fn = std::function<ClosedValue(const ClosedValue&)>;

    static ClosedValue scalar(Num n);
    static ClosedValue unit();
    static ClosedValue pair(ClosedValue a, ClosedValue b);
    static ClosedValue closure(Fn f);

    Kind kind() const { return kind_; }
    const Num& num() const;
    const ClosedValue& first() const;
    const ClosedValue& second() const;
    ClosedValue apply(const ClosedValue& arg) const;

private:
    Kind kind_ = Kind::Unit;
    Num num_;
    std::shared_ptr<const ClosedValue> a_, b_;
    std::shared_ptr<const Fn> fn_;
};

ClosedValue zero_value(const Shape& shape);
ClosedValue add_values(const ClosedValue& a, const ClosedValue& b);

/// Pointwise dual seeding: scalars become tag-level duals, closures seed
/// after application.
ClosedValue seed_value(const ClosedValue& x, const ClosedValue& y, int tag);

/// Pointwise tangent extraction; closures extract after application.
ClosedValue extract_value(const ClosedValue& v, int tag);

/// A morphism of the closed model: an executable body between shapes that
/// may contain function spaces.
struct ClosedMorphism {
    Shape dom, cod;
    ClosedValue::Fn body;
    std::string label;

    ClosedValue operator()(const ClosedValue& v) const { return body(v); }
};

/// Evaluates a symbolic term over perturbation-carrying scalars.
Num eval_term(const SmoothTerm::Ptr& t, std::span<const Num> point);

/// Number of scalar samples harvested from a value of this shape; a
/// function leaf contributes the count of its result after application.
int scalar_count(const Shape& shape);

/// Sampling parameters for closed-model equality: function values are
/// compared by applying both sides to the same sampled arguments.
struct ClosedEq {
    double tolerance = 1e-6;
    int points = 100;
    int hom_samples = 10;
    std::uint64_t seed = 42;
};

/// Deterministic random value of a shape; function leaves become smooth
/// random closures that genuinely use their argument.
ClosedValue random_value(const Shape& shape, Rng& rng);

bool values_close(const ClosedValue& a, const ClosedValue& b, const Shape& shape,
                  const ClosedEq& cfg, Rng& rng);

/// The operational Cartesian closed model: scalars, pairs and closures,
/// with derivatives computed by running bodies over dual numbers.
class ClosedModel {
public:
    using Morphism = ClosedMorphism;

    explicit ClosedModel(ClosedEq eq = {}) : eq_(eq) {}

    std::string name() const { return "closed"; }
    const ClosedEq& sampling() const { return eq_; }

    Shape dom(const Morphism& f) const { return f.dom; }
    Shape cod(const Morphism& f) const { return f.cod; }

    Morphism id(const Shape& a) const;
    Morphism compose(const Morphism& f, const Morphism& g) const;
    Morphism pair(const Morphism& f, const Morphism& g) const;
    Morphism proj0(const Shape& a, const Shape& b) const;
    Morphism proj1(const Shape& a, const Shape& b) const;
    Morphism add(const Morphism& f, const Morphism& g) const;
    Morphism zero(const Shape& a, const Shape& b) const;

    bool equal(const Morphism& f, const Morphism& g) const { return equal_salted(f, g, 0); }
    bool equal_salted(const Morphism& f, const Morphism& g, std::uint64_t salt) const;
    std::string show(const Morphism& f) const { return f.label; }
    EqContract eq_contract() const { return EqContract::sampled(eq_.tolerance, eq_.points); }

    /// Morphism from symbolic components over the flattened domain.
    Morphism from_terms(const Shape& dom, const Shape& cod,
                        std::vector<SmoothTerm::Ptr> comps) const;

    // Closed structure.
    Morphism curry(const Morphism& f) const;   // C x A -> B  to  A -> [C,B]
    Morphism uncurry(const Morphism& g) const; // A -> [C,B]  to  C x A -> B
    Morphism eval_map(const Shape& c, const Shape& a) const;
    Morphism eta(const Shape& c, const Shape& a) const;
    Morphism mu(const Shape& c, const Shape& a) const;
    Morphism hom_map(const Morphism& f, const Morphism& g) const;
    Morphism theta(const Shape& c, const Shape& a, const Shape& b) const;
    Morphism theta_inv(const Shape& c, const Shape& a, const Shape& b) const;
    Morphism phi(const Shape& a, const Shape& c, const Shape& b) const;
    Morphism phi_inv(const Shape& a, const Shape& c, const Shape& b) const;

    // Differential structure.
    Morphism differential(const Morphism& f) const;
    Morphism exp_linearize(const Morphism& f) const;
    /// L^C[f] = uncurry(L[curry(f)]).
    Morphism partial_from_total(const Morphism& f) const;
    /// D_L[f] = uncurry(L[curry(plus_A f)]).
    Morphism d_from_exp(const Morphism& f) const;

    DiffCombinator<ClosedModel> differential_combinator() const {
        return [this](const Morphism& f) { return differential(f); };
    }
    LinCombinator<ClosedModel> linearize_combinator() const {
        return [this](const Morphism& f) { return exp_linearize(f); };
    }

private:
    ClosedEq eq_;
};

/// Generator for closed-model instances: symbolic bodies for plain maps,
/// with composites through curry/uncurry so closures appear inside.
class ClosedGen {
public:
    explicit ClosedGen(const ClosedModel& m, int depth = 2) : m_(m), inner_(depth) {}

    Shape shape(Rng& rng, int cap = 2) const { return inner_.shape(rng, cap); }
    Shape small_shape(Rng& rng) const { return inner_.small_shape(rng); }

    ClosedMorphism map(Rng& rng, const Shape& dom, const Shape& cod) const;
    ClosedMorphism reduced_map(Rng& rng, const Shape& dom, const Shape& cod) const;
    ClosedMorphism additive_map(Rng& rng, const Shape& dom, const Shape& cod) const;

    /// A morphism whose body routes through closures: the composite
    /// uncurry(curry .) or an eta/ev sandwich around a symbolic core.
    ClosedMorphism closure_heavy_map(Rng& rng, const Shape& dom, const Shape& cod) const;

private:
    const ClosedModel& m_;
    SmoothGen inner_;
};

/// Laws specific to the closed setting: compatibility of the derivative
/// and the linearization with currying and evaluation, the exponentiable
/// axioms, the hom-monad identities, the canonical isomorphisms, and the
/// reconstruction round trips.
std::vector<LawReport> check_closed(const ClosedModel& m, const ClosedGen& gen, LawConfig cfg);

} // namespace cartdiff
