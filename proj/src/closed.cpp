#include "cartdiff/closed_model.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>

namespace cartdiff {

// ---------------------------------------------------------------------------
// Tagged dual numbers.

Num Num::dual(int tag, const Num& primal, const Num& tangent) {
    Num n;
    n.tag_ = tag;
    n.p_ = std::make_shared<Num>(primal);
    n.t_ = std::make_shared<Num>(tangent);
    return n;
}

double Num::force() const {
    if (!plain()) throw std::logic_error("unextracted perturbation left in a scalar");
    return re_;
}

int Num::fresh_tag() {
    static std::atomic<int> counter{0};
    return counter.fetch_add(1, std::memory_order_relaxed);
}

Num operator+(const Num& a, const Num& b) {
    if (a.plain() && b.plain()) return Num(a.re_ + b.re_);
    if (!a.plain() && (b.plain() || a.tag_ > b.tag_))
        return Num::dual(a.tag_, a.primal() + b, a.tangent());
    if (!b.plain() && (a.plain() || b.tag_ > a.tag_))
        return Num::dual(b.tag_, a + b.primal(), b.tangent());
    return Num::dual(a.tag_, a.primal() + b.primal(), a.tangent() + b.tangent());
}

Num operator*(const Num& a, const Num& b) {
    if (a.plain() && b.plain()) return Num(a.re_ * b.re_);
    if (!a.plain() && (b.plain() || a.tag_ > b.tag_))
        return Num::dual(a.tag_, a.primal() * b, a.tangent() * b);
    if (!b.plain() && (a.plain() || b.tag_ > a.tag_))
        return Num::dual(b.tag_, a * b.primal(), a * b.tangent());
    return Num::dual(a.tag_, a.primal() * b.primal(),
                     a.primal() * b.tangent() + a.tangent() * b.primal());
}

Num operator-(const Num& a) {
    if (a.plain()) return Num(-a.re_);
    return Num::dual(a.tag_, -a.primal(), -a.tangent());
}

Num sin(const Num& a) {
    if (a.plain()) return Num(std::sin(a.force()));
    return Num::dual(a.tag(), sin(a.primal()), a.tangent() * cos(a.primal()));
}

Num cos(const Num& a) {
    if (a.plain()) return Num(std::cos(a.force()));
    return Num::dual(a.tag(), cos(a.primal()), -(a.tangent() * sin(a.primal())));
}

Num exp(const Num& a) {
    if (a.plain()) return Num(std::exp(a.force()));
    return Num::dual(a.tag(), exp(a.primal()), a.tangent() * exp(a.primal()));
}

Num Num::extract(const Num& n, int tag) {
    if (n.plain() || n.tag_ < tag) return Num(0.0);
    if (n.tag_ == tag) return n.tangent();
    return Num::dual(n.tag_, extract(n.primal(), tag), extract(n.tangent(), tag));
}

// ---------------------------------------------------------------------------
// Values.

ClosedValue ClosedValue::scalar(Num n) {
    ClosedValue v;
    v.kind_ = Kind::Scalar;
    v.num_ = std::move(n);
    return v;
}

ClosedValue ClosedValue::unit() {
    ClosedValue v;
    v.kind_ = Kind::Unit;
    return v;
}

ClosedValue ClosedValue::pair(ClosedValue a, ClosedValue b) {
    ClosedValue v;
    v.kind_ = Kind::Pair;
    v.a_ = std::make_shared<ClosedValue>(std::move(a));
    v.b_ = std::make_shared<ClosedValue>(std::move(b));
    return v;
}

ClosedValue ClosedValue::closure(Fn f) {
    ClosedValue v;
    v.kind_ = Kind::Closure;
    v.fn_ = std::make_shared<Fn>(std::move(f));
    return v;
}

const Num& ClosedValue::num() const {
    if (kind_ != Kind::Scalar) throw std::logic_error("value is not a scalar");
    return num_;
}

const ClosedValue& ClosedValue::first() const {
    if (kind_ != Kind::Pair) throw std::logic_error("value is not a pair");
    return *a_;
}

const ClosedValue& ClosedValue::second() const {
    if (kind_ != Kind::Pair) throw std::logic_error("value is not a pair");
    return *b_;
}

ClosedValue ClosedValue::apply(const ClosedValue& arg) const {
    if (kind_ != Kind::Closure) throw std::logic_error("value is not a closure");
    return (*fn_)(arg);
}

ClosedValue zero_value(const Shape& shape) {
    switch (shape.kind()) {
        case Shape::Kind::Ground: return ClosedValue::scalar(Num(0.0));
        case Shape::Kind::Unit: return ClosedValue::unit();
        case Shape::Kind::Prod:
            return ClosedValue::pair(zero_value(shape.left()), zero_value(shape.right()));
        case Shape::Kind::Hom: {
            Shape cod = shape.right();
            return ClosedValue::closure([cod](const ClosedValue&) { return zero_value(cod); });
        }
    }
    return ClosedValue::unit();
}

ClosedValue add_values(const ClosedValue& a, const ClosedValue& b) {
    if (a.kind() != b.kind()) throw std::logic_error("adding values of different kinds");
    switch (a.kind()) {
        case ClosedValue::Kind::Scalar: return ClosedValue::scalar(a.num() + b.num());
        case ClosedValue::Kind::Unit: return a;
        case ClosedValue::Kind::Pair:
            return ClosedValue::pair(add_values(a.first(), b.first()),
                                     add_values(a.second(), b.second()));
        case ClosedValue::Kind::Closure:
            return ClosedValue::closure([a, b](const ClosedValue& c) {
                return add_values(a.apply(c), b.apply(c));
            });
    }
    return a;
}

ClosedValue seed_value(const ClosedValue& x, const ClosedValue& y, int tag) {
    if (x.kind() != y.kind()) throw std::logic_error("seeding values of different kinds");
    switch (x.kind()) {
        case ClosedValue::Kind::Scalar: {
            // x + eps*y through the arithmetic, not a raw dual node: the
            // parts may already involve this tag when closures are seeded
            // and later applied to seeded arguments.
            Num eps = Num::dual(tag, Num(0.0), Num(1.0));
            return ClosedValue::scalar(x.num() + eps * y.num());
        }
        case ClosedValue::Kind::Unit: return x;
        case ClosedValue::Kind::Pair:
            return ClosedValue::pair(seed_value(x.first(), y.first(), tag),
                                     seed_value(x.second(), y.second(), tag));
        case ClosedValue::Kind::Closure:
            return ClosedValue::closure([x, y, tag](const ClosedValue& c) {
                return seed_value(x.apply(c), y.apply(c), tag);
            });
    }
    return x;
}

ClosedValue extract_value(const ClosedValue& v, int tag) {
    switch (v.kind()) {
        case ClosedValue::Kind::Scalar:
            return ClosedValue::scalar(Num::extract(v.num(), tag));
        case ClosedValue::Kind::Unit: return v;
        case ClosedValue::Kind::Pair:
            return ClosedValue::pair(extract_value(v.first(), tag),
                                     extract_value(v.second(), tag));
        case ClosedValue::Kind::Closure:
            return ClosedValue::closure(
                [v, tag](const ClosedValue& c) { return extract_value(v.apply(c), tag); });
    }
    return v;
}

Num eval_term(const SmoothTerm::Ptr& t, std::span<const Num> point) {
    switch (t->op()) {
        case SmoothTerm::Op::Const: return Num(t->value().to_double());
        case SmoothTerm::Op::Var: return point[static_cast<std::size_t>(t->var())];
        case SmoothTerm::Op::Add:
            return eval_term(t->child0(), point) + eval_term(t->child1(), point);
        case SmoothTerm::Op::Mul:
            return eval_term(t->child0(), point) * eval_term(t->child1(), point);
        case SmoothTerm::Op::Neg: return -eval_term(t->child0(), point);
        case SmoothTerm::Op::Sin: return sin(eval_term(t->child0(), point));
        case SmoothTerm::Op::Cos: return cos(eval_term(t->child0(), point));
        case SmoothTerm::Op::Exp: return exp(eval_term(t->child0(), point));
    }
    return Num(0.0);
}

int scalar_count(const Shape& shape) {
    switch (shape.kind()) {
        case Shape::Kind::Ground: return 1;
        case Shape::Kind::Unit: return 0;
        case Shape::Kind::Prod:
            return scalar_count(shape.left()) + scalar_count(shape.right());
        case Shape::Kind::Hom: return scalar_count(shape.right());
    }
    return 0;
}

namespace {

// Scalars harvested from a value: function leaves are applied to prepared
// arguments (drawn once per closure) and harvested recursively.
void plan_args(const Shape& s, Rng& rng, std::vector<ClosedValue>& out) {
    switch (s.kind()) {
        case Shape::Kind::Ground:
        case Shape::Kind::Unit: return;
        case Shape::Kind::Prod:
            plan_args(s.left(), rng, out);
            plan_args(s.right(), rng, out);
            return;
        case Shape::Kind::Hom:
            out.push_back(random_value(s.left(), rng));
            plan_args(s.right(), rng, out);
            return;
    }
}

void harvest(const ClosedValue& v, const Shape& s, const std::vector<ClosedValue>& args,
             std::size_t& next, std::vector<Num>& out) {
    switch (s.kind()) {
        case Shape::Kind::Ground: out.push_back(v.num()); return;
        case Shape::Kind::Unit: return;
        case Shape::Kind::Prod:
            harvest(v.first(), s.left(), args, next, out);
            harvest(v.second(), s.right(), args, next, out);
            return;
        case Shape::Kind::Hom: {
            ClosedValue r = v.apply(args[next++]);
            harvest(r, s.right(), args, next, out);
            return;
        }
    }
}

SmoothTerm::Ptr bounded_term(Rng& rng, int nvars, int depth) {
    if (depth <= 0 || rng.chance(1, 4)) {
        if (nvars > 0 && rng.chance(3, 4))
            return SmoothTerm::variable(static_cast<int>(rng.below(nvars)));
        return SmoothTerm::constant(Rational(rng.range(-2, 2)));
    }
    switch (rng.below(5)) {
        case 0:
            return SmoothTerm::add(bounded_term(rng, nvars, depth - 1),
                                   bounded_term(rng, nvars, depth - 1));
        case 1:
            return SmoothTerm::mul(bounded_term(rng, nvars, depth - 1),
                                   bounded_term(rng, nvars, depth - 1));
        case 2: return SmoothTerm::neg(bounded_term(rng, nvars, depth - 1));
        case 3: return SmoothTerm::sin(bounded_term(rng, nvars, depth - 1));
        default: return SmoothTerm::cos(bounded_term(rng, nvars, depth - 1));
    }
}

using Builder = std::function<ClosedValue(std::span<const Num>)>;

Builder random_builder(const Shape& a, int nvars, Rng& rng) {
    switch (a.kind()) {
        case Shape::Kind::Ground: {
            auto t = bounded_term(rng, nvars, 2);
            return [t](std::span<const Num> nums) {
                return ClosedValue::scalar(eval_term(t, nums));
            };
        }
        case Shape::Kind::Unit:
            return [](std::span<const Num>) { return ClosedValue::unit(); };
        case Shape::Kind::Prod: {
            Builder l = random_builder(a.left(), nvars, rng);
            Builder r = random_builder(a.right(), nvars, rng);
            return [l, r](std::span<const Num> nums) {
                return ClosedValue::pair(l(nums), r(nums));
            };
        }
        case Shape::Kind::Hom: {
            // Sub-closures do not consume the harvested scalars.
            ClosedValue h = random_value(a, rng);
            return [h](std::span<const Num>) { return h; };
        }
    }
    return [](std::span<const Num>) { return ClosedValue::unit(); };
}

std::string clip(std::string s) {
    if (s.size() > 96) s = s.substr(0, 93) + "...";
    return s;
}

} // namespace

ClosedValue random_value(const Shape& shape, Rng& rng) {
    switch (shape.kind()) {
        case Shape::Kind::Ground: return ClosedValue::scalar(Num(rng.real(-1.0, 1.0)));
        case Shape::Kind::Unit: return ClosedValue::unit();
        case Shape::Kind::Prod:
            return ClosedValue::pair(random_value(shape.left(), rng),
                                     random_value(shape.right(), rng));
        case Shape::Kind::Hom: {
            Shape c = shape.left();
            auto args = std::make_shared<std::vector<ClosedValue>>();
            plan_args(c, rng, *args);
            Builder out = random_builder(shape.right(), scalar_count(c), rng);
            return ClosedValue::closure([c, args, out](const ClosedValue& v) {
                std::vector<Num> nums;
                std::size_t next = 0;
                harvest(v, c, *args, next, nums);
                return out(nums);
            });
        }
    }
    return ClosedValue::unit();
}

bool values_close(const ClosedValue& a, const ClosedValue& b, const Shape& shape,
                  const ClosedEq& cfg, Rng& rng) {
    switch (shape.kind()) {
        case Shape::Kind::Ground: {
            double x = a.num().force(), y = b.num().force();
            if (!std::isfinite(x) || !std::isfinite(y))
                throw SampleError("non-finite value during closed-model comparison");
            double scale = std::max({1.0, std::fabs(x), std::fabs(y)});
            return std::fabs(x - y) <= cfg.tolerance * scale;
        }
        case Shape::Kind::Unit: return true;
        case Shape::Kind::Prod:
            return values_close(a.first(), b.first(), shape.left(), cfg, rng) &&
                   values_close(a.second(), b.second(), shape.right(), cfg, rng);
        case Shape::Kind::Hom: {
            for (int i = 0; i < cfg.hom_samples; ++i) {
                ClosedValue arg = random_value(shape.left(), rng);
                if (!values_close(a.apply(arg), b.apply(arg), shape.right(), cfg, rng))
                    return false;
            }
            return true;
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// Model operations.

ClosedMorphism ClosedModel::id(const Shape& a) const {
    return {a, a, [](const ClosedValue& v) { return v; }, "1"};
}

ClosedMorphism ClosedModel::compose(const Morphism& f, const Morphism& g) const {
    require_same_shape(f.cod, g.dom, "compose");
    auto fb = f.body, gb = g.body;
    return {f.dom, g.cod, [fb, gb](const ClosedValue& v) { return gb(fb(v)); },
            clip(f.label + ";" + g.label)};
}

ClosedMorphism ClosedModel::pair(const Morphism& f, const Morphism& g) const {
    require_same_shape(f.dom, g.dom, "pair");
    auto fb = f.body, gb = g.body;
    return {f.dom, Shape::prod(f.cod, g.cod),
            [fb, gb](const ClosedValue& v) { return ClosedValue::pair(fb(v), gb(v)); },
            clip("<" + f.label + "," + g.label + ">")};
}

ClosedMorphism ClosedModel::proj0(const Shape& a, const Shape& b) const {
    return {Shape::prod(a, b), a, [](const ClosedValue& v) { return v.first(); }, "pi0"};
}

ClosedMorphism ClosedModel::proj1(const Shape& a, const Shape& b) const {
    return {Shape::prod(a, b), b, [](const ClosedValue& v) { return v.second(); }, "pi1"};
}

ClosedMorphism ClosedModel::add(const Morphism& f, const Morphism& g) const {
    require_same_shape(f.dom, g.dom, "add");
    require_same_shape(f.cod, g.cod, "add");
    auto fb = f.body, gb = g.body;
    return {f.dom, f.cod,
            [fb, gb](const ClosedValue& v) { return add_values(fb(v), gb(v)); },
            clip("(" + f.label + "+" + g.label + ")")};
}

ClosedMorphism ClosedModel::zero(const Shape& a, const Shape& b) const {
    return {a, b, [b](const ClosedValue&) { return zero_value(b); }, "0"};
}

bool ClosedModel::equal_salted(const Morphism& f, const Morphism& g,
                               std::uint64_t salt) const {
    require_same_shape(f.dom, g.dom, "closed_eq");
    require_same_shape(f.cod, g.cod, "closed_eq");
    for (int p = 0; p < eq_.points; ++p) {
        Rng mix(eq_.seed ^ (salt * 0x9e3779b97f4a7c15ULL + 0x1234567ULL * (p + 1)));
        Rng rng(mix.next());
        ClosedValue v = random_value(f.dom, rng);
        if (!values_close(f(v), g(v), f.cod, eq_, rng)) return false;
    }
    return true;
}

ClosedMorphism ClosedModel::from_terms(const Shape& dom, const Shape& cod,
                                       std::vector<SmoothTerm::Ptr> comps) const {
    if (!dom.hom_free() || !cod.hom_free())
        throw ShapeError("symbolic bodies need function-free shapes, got " + dom.str() +
                         " -> " + cod.str());
    SmoothMap as_map(dom, cod, comps); // reuse the arity checks
    std::string label = as_map.str();
    auto terms = std::make_shared<std::vector<SmoothTerm::Ptr>>(std::move(comps));
    Shape d = dom, c = cod;
    auto body = [terms, d, c](const ClosedValue& v) {
        std::vector<Num> nums;
        std::vector<ClosedValue> no_args;
        std::size_t next = 0;
        harvest(v, d, no_args, next, nums);
        std::vector<Num> outs;
        outs.reserve(terms->size());
        for (const auto& t : *terms) outs.push_back(eval_term(t, nums));
        std::size_t at = 0;
        std::function<ClosedValue(const Shape&)> build = [&](const Shape& s) -> ClosedValue {
            switch (s.kind()) {
                case Shape::Kind::Ground: return ClosedValue::scalar(outs[at++]);
                case Shape::Kind::Unit: return ClosedValue::unit();
                default:
                    return ClosedValue::pair(build(s.left()), build(s.right()));
            }
        };
        return build(c);
    };
    return {dom, cod, body, clip(label)};
}

ClosedMorphism ClosedModel::curry(const Morphism& f) const {
    if (!f.dom.is_prod())
        throw ShapeError("curry needs a product domain, got " + f.dom.str());
    Shape c = f.dom.left(), a = f.dom.right();
    auto fb = f.body;
    return {a, Shape::hom(c, f.cod),
            [fb](const ClosedValue& av) {
                return ClosedValue::closure([fb, av](const ClosedValue& cv) {
                    return fb(ClosedValue::pair(cv, av));
                });
            },
            clip("curry(" + f.label + ")")};
}

ClosedMorphism ClosedModel::uncurry(const Morphism& g) const {
    if (!g.cod.is_hom())
        throw ShapeError("uncurry needs a function-space codomain, got " + g.cod.str());
    Shape c = g.cod.left(), b = g.cod.right();
    auto gb = g.body;
    return {Shape::prod(c, g.dom), b,
            [gb](const ClosedValue& v) { return gb(v.second()).apply(v.first()); },
            clip("uncurry(" + g.label + ")")};
}

ClosedMorphism ClosedModel::eval_map(const Shape& c, const Shape& a) const {
    return {Shape::prod(c, Shape::hom(c, a)), a,
            [](const ClosedValue& v) { return v.second().apply(v.first()); }, "ev"};
}

ClosedMorphism ClosedModel::eta(const Shape& c, const Shape& a) const {
    Morphism e = curry(proj1(c, a));
    e.label = "eta";
    return e;
}

ClosedMorphism ClosedModel::mu(const Shape& c, const Shape& a) const {
    Shape cca = Shape::hom(c, Shape::hom(c, a));
    Morphism inner = pair(proj0(c, cca), eval_map(c, Shape::hom(c, a)));
    Morphism m = curry(compose(inner, eval_map(c, a)));
    m.label = "mu";
    return m;
}

ClosedMorphism ClosedModel::hom_map(const Morphism& f, const Morphism& g) const {
    Shape da = Shape::hom(f.cod, g.dom);
    Morphism pre = prod_map(*this, f, id(da));
    Morphism m = curry(compose(pre, compose(eval_map(f.cod, g.dom), g)));
    m.label = clip("[" + f.label + "," + g.label + "]");
    return m;
}

ClosedMorphism ClosedModel::theta(const Shape& c, const Shape& a, const Shape& b) const {
    Shape ha = Shape::hom(c, a), hb = Shape::hom(c, b);
    Morphism left = compose(prod_map(*this, id(c), proj0(ha, hb)), eval_map(c, a));
    Morphism right = compose(prod_map(*this, id(c), proj1(ha, hb)), eval_map(c, b));
    Morphism m = curry(pair(left, right));
    m.label = "theta";
    return m;
}

ClosedMorphism ClosedModel::theta_inv(const Shape& c, const Shape& a, const Shape& b) const {
    Morphism m = pair(hom_map(id(c), proj0(a, b)), hom_map(id(c), proj1(a, b)));
    m.label = "theta_inv";
    return m;
}

ClosedMorphism ClosedModel::phi(const Shape& a, const Shape& c, const Shape& b) const {
    Shape hcb = Shape::hom(c, b);
    Shape hahcb = Shape::hom(a, hcb);
    Morphism reassoc = alpha_inv(*this, c, a, hahcb);
    Morphism apply_inner = prod_map(*this, id(c), eval_map(a, hcb));
    Morphism m = curry(compose(reassoc, compose(apply_inner, eval_map(c, b))));
    m.label = "phi";
    return m;
}

ClosedMorphism ClosedModel::phi_inv(const Shape& a, const Shape& c, const Shape& b) const {
    Shape hcab = Shape::hom(Shape::prod(c, a), b);
    return {hcab, Shape::hom(a, Shape::hom(c, b)),
            [](const ClosedValue& h) {
                return ClosedValue::closure([h](const ClosedValue& av) {
                    return ClosedValue::closure([h, av](const ClosedValue& cv) {
                        return h.apply(ClosedValue::pair(cv, av));
                    });
                });
            },
            "phi_inv"};
}

ClosedMorphism ClosedModel::differential(const Morphism& f) const {
    auto fb = f.body;
    return {Shape::prod(f.dom, f.dom), f.cod,
            [fb](const ClosedValue& v) {
                int tag = Num::fresh_tag();
                return extract_value(fb(seed_value(v.first(), v.second(), tag)), tag);
            },
            clip("D[" + f.label + "]")};
}

ClosedMorphism ClosedModel::exp_linearize(const Morphism& f) const {
    auto fb = f.body;
    Shape a = f.dom;
    return {a, f.cod,
            [fb, a](const ClosedValue& v) {
                int tag = Num::fresh_tag();
                return extract_value(fb(seed_value(zero_value(a), v, tag)), tag);
            },
            clip("L[" + f.label + "]")};
}

ClosedMorphism ClosedModel::partial_from_total(const Morphism& f) const {
    Morphism m = uncurry(exp_linearize(curry(f)));
    m.label = clip("Lc[" + f.label + "]");
    return m;
}

ClosedMorphism ClosedModel::d_from_exp(const Morphism& f) const {
    Morphism plus_then_f = compose(oplus(*this, f.dom), f);
    Morphism m = uncurry(exp_linearize(curry(plus_then_f)));
    m.label = clip("DL[" + f.label + "]");
    return m;
}

// ---------------------------------------------------------------------------
// Generator.

ClosedMorphism ClosedGen::map(Rng& rng, const Shape& dom, const Shape& cod) const {
    SmoothMap s = inner_.map(rng, dom, cod);
    return m_.from_terms(dom, cod, s.comps);
}

ClosedMorphism ClosedGen::reduced_map(Rng& rng, const Shape& dom, const Shape& cod) const {
    SmoothMap s = inner_.reduced_map(rng, dom, cod);
    return m_.from_terms(dom, cod, s.comps);
}

ClosedMorphism ClosedGen::additive_map(Rng& rng, const Shape& dom, const Shape& cod) const {
    SmoothMap s = inner_.additive_map(rng, dom, cod);
    return m_.from_terms(dom, cod, s.comps);
}

ClosedMorphism ClosedGen::closure_heavy_map(Rng& rng, const Shape& dom,
                                            const Shape& cod) const {
    ClosedMorphism core = map(rng, dom, cod);
    if (dom.is_prod() && rng.chance(1, 2)) return m_.uncurry(m_.curry(core));
    // Route the input through eta and ev before the symbolic core.
    Shape probe = Shape::ground();
    ClosedMorphism loop =
        m_.compose(m_.pair(m_.zero(dom, probe), m_.eta(probe, dom)), m_.eval_map(probe, dom));
    return m_.compose(loop, core);
}

// ---------------------------------------------------------------------------
// Closed-suite laws.

std::vector<LawReport> check_closed(const ClosedModel& m, const ClosedGen& gen, LawConfig cfg) {
    LawRunner<ClosedModel, ClosedGen> run(m, gen, cfg);
    using Case = LawCase<ClosedModel>;
    auto D = m.differential_combinator();

    run.law("CL.lambda", [&](Rng& rng) -> std::optional<Case> {
        Shape c = gen.small_shape(rng), a = gen.small_shape(rng), b = gen.small_shape(rng);
        auto f = gen.map(rng, Shape::prod(c, a), b);
        return Case{{{"f", f}}, [&m, &D, c](const auto& v) {
                        auto lhs = m.differential(m.curry(v[0]));
                        auto dc = d_in_context(m, D, c)(v[0]);
                        auto rhs = m.curry(dc);
                        return m.equal(lhs, rhs);
                    }};
    });

    run.law("CL.ev", [&](Rng& rng) -> std::optional<Case> {
        Shape c = gen.small_shape(rng), a = gen.small_shape(rng);
        return Case{{}, [&m, c, a](const auto&) {
                        auto ev = m.eval_map(c, a);
                        Shape h = Shape::hom(c, a);
                        auto lifted = m.compose(lift(m, c, h, c, h), m.differential(ev));
                        return m.equal(lifted, ev);
                    }};
    });

    run.law("CL.Llambda", [&](Rng& rng) -> std::optional<Case> {
        Shape c = gen.small_shape(rng), a = gen.small_shape(rng), b = gen.small_shape(rng);
        auto f = gen.map(rng, Shape::prod(c, a), b);
        return Case{{{"f", f}}, [&m, c, a](const auto& v) {
                        auto lhs = m.exp_linearize(m.curry(v[0]));
                        auto lc = m.compose(lift(m, c, a, c, a), m.differential(v[0]));
                        return m.equal(lhs, m.curry(lc));
                    }};
    });

    run.law("CL.Lc", [&](Rng& rng) -> std::optional<Case> {
        Shape c = gen.small_shape(rng), a = gen.small_shape(rng), b = gen.small_shape(rng);
        auto f = gen.map(rng, Shape::prod(c, a), b);
        return Case{{{"f", f}}, [&m, c, a](const auto& v) {
                        auto via_curry = m.partial_from_total(v[0]);
                        auto via_lift = m.compose(lift(m, c, a, c, a), m.differential(v[0]));
                        return m.equal(via_curry, via_lift);
                    }};
    });

    run.law("CL.Lev", [&](Rng& rng) -> std::optional<Case> {
        Shape c = gen.small_shape(rng), a = gen.small_shape(rng);
        return Case{{}, [&m, c, a](const auto&) {
                        auto ev = m.eval_map(c, a);
                        return m.equal(m.partial_from_total(ev), ev);
                    }};
    });

    run.law("EL.1", [&](Rng& rng) -> std::optional<Case> {
        Shape c = gen.small_shape(rng), a = gen.small_shape(rng);
        return Case{{}, [&m, c, a](const auto&) {
                        auto e = m.eta(c, a);
                        if (!m.equal(m.exp_linearize(e), e)) return false;
                        auto u = m.mu(c, a);
                        return m.equal(m.exp_linearize(u), u);
                    }};
    });

    run.law("EL.2", [&](Rng& rng) -> std::optional<Case> {
        Shape c = gen.small_shape(rng), d = gen.small_shape(rng);
        Shape a = gen.small_shape(rng), b = gen.small_shape(rng);
        auto f = gen.map(rng, c, d);
        auto g = gen.map(rng, a, b);
        return Case{{{"f", f}, {"g", g}}, [&m](const auto& v) {
                        auto lhs = m.exp_linearize(m.hom_map(v[0], v[1]));
                        auto rhs = m.hom_map(v[0], m.exp_linearize(v[1]));
                        return m.equal(lhs, rhs);
                    }};
    });

    run.law("EL.3", [&](Rng& rng) -> std::optional<Case> {
        Shape a = gen.small_shape(rng), b = gen.small_shape(rng);
        auto f = gen.map(rng, Shape::prod(a, b), gen.small_shape(rng));
        return Case{{{"f", f}}, [&m, a, b](const auto& v) {
                        auto l0 = [&](const ClosedMorphism& k) {
                            auto swapped = m.compose(sym(m, b, a), k);
                            return m.compose(sym(m, a, b),
                                             m.uncurry(m.exp_linearize(m.curry(swapped))));
                        };
                        auto l1 = [&](const ClosedMorphism& k) {
                            return m.uncurry(m.exp_linearize(m.curry(k)));
                        };
                        return m.equal(l0(l1(v[0])), l1(l0(v[0])));
                    }};
    });

    run.law("CL.monad", [&](Rng& rng) -> std::optional<Case> {
        Shape c = gen.small_shape(rng), a = gen.small_shape(rng);
        return Case{{}, [&m, c, a](const auto&) {
                        Shape hca = Shape::hom(c, a);
                        auto mu_outer = m.mu(c, a);
                        auto mu_inner = m.mu(c, hca);
                        // mu mu = [1, mu] mu.
                        auto lhs = m.compose(mu_inner, mu_outer);
                        auto rhs = m.compose(m.hom_map(m.id(c), mu_outer), mu_outer);
                        if (!m.equal(lhs, rhs)) return false;
                        // eta mu = 1 = [1, eta] mu.
                        auto eta_outer = m.eta(c, hca);
                        if (!m.equal(m.compose(eta_outer, mu_outer), m.id(hca))) return false;
                        auto pushed = m.compose(m.hom_map(m.id(c), m.eta(c, a)), mu_outer);
                        return m.equal(pushed, m.id(hca));
                    }};
    });

    run.law("CL.theta", [&](Rng& rng) -> std::optional<Case> {
        Shape c = gen.small_shape(rng), a = gen.small_shape(rng), b = gen.small_shape(rng);
        return Case{{}, [&m, c, a, b](const auto&) {
                        auto th = m.theta(c, a, b);
                        auto ti = m.theta_inv(c, a, b);
                        if (!m.equal(m.compose(th, ti), m.id(m.dom(th)))) return false;
                        return m.equal(m.compose(ti, th), m.id(m.dom(ti)));
                    }};
    });

    run.law("CL.phi", [&](Rng& rng) -> std::optional<Case> {
        Shape a = gen.small_shape(rng), c = gen.small_shape(rng), b = gen.small_shape(rng);
        return Case{{}, [&m, a, c, b](const auto&) {
                        auto ph = m.phi(a, c, b);
                        auto pi = m.phi_inv(a, c, b);
                        if (!m.equal(m.compose(ph, pi), m.id(m.dom(ph)))) return false;
                        if (!m.equal(m.compose(pi, ph), m.id(m.dom(pi)))) return false;
                        // phi = [pi1, [pi0, 1]] mu.
                        Shape ca = Shape::prod(c, a);
                        auto outer = m.hom_map(m.proj1(c, a),
                                               m.hom_map(m.proj0(c, a), m.id(b)));
                        auto via_mu = m.compose(outer, m.mu(ca, b));
                        return m.equal(ph, via_mu);
                    }};
    });

    run.law("RT.closed.D", [&](Rng& rng) -> std::optional<Case> {
        Shape a = gen.small_shape(rng), b = gen.small_shape(rng);
        auto f = rng.chance(1, 3) ? gen.closure_heavy_map(rng, a, b) : gen.map(rng, a, b);
        return Case{{{"f", f}}, [&m](const auto& v) {
                        return m.equal(m.d_from_exp(v[0]), m.differential(v[0]));
                    }};
    });

    run.law("RT.closed.L", [&](Rng& rng) -> std::optional<Case> {
        Shape a = gen.small_shape(rng), b = gen.small_shape(rng);
        auto f = rng.chance(1, 3) ? gen.closure_heavy_map(rng, a, b) : gen.map(rng, a, b);
        return Case{{{"f", f}}, [&m, a](const auto& v) {
                        // Total linearization recovered through the
                        // terminal-context slice of the curry route.
                        Shape top = Shape::unit();
                        auto embedded = m.compose(m.proj1(top, a), v[0]);
                        auto in_slice = m.partial_from_total(embedded);
                        auto back = m.compose(zero_id(m, a, top), in_slice);
                        return m.equal(back, m.exp_linearize(v[0]));
                    }};
    });

    run.law("CL.curry", [&](Rng& rng) -> std::optional<Case> {
        Shape c = gen.small_shape(rng), a = gen.small_shape(rng), b = gen.small_shape(rng);
        auto f = gen.map(rng, Shape::prod(c, a), b);
        auto g = gen.map(rng, Shape::prod(c, a), b);
        return Case{{{"f", f}, {"g", g}}, [&m, c, a](const auto& v) {
                        if (!m.equal(m.uncurry(m.curry(v[0])), v[0])) return false;
                        // curry is additive.
                        auto sum = m.curry(m.add(v[0], v[1]));
                        if (!m.equal(sum, m.add(m.curry(v[0]), m.curry(v[1])))) return false;
                        // curry(pi1) = eta, and uncurry(curry(ev)) = ev.
                        if (!m.equal(m.curry(m.proj1(c, a)), m.eta(c, a))) return false;
                        auto ev = m.eval_map(c, a);
                        return m.equal(m.uncurry(m.curry(ev)), ev);
                    }};
    });

    return run.take();
}

} // namespace cartdiff
