#include <doctest.h>

#include <cmath>

#include "cartdiff/closed_model.hpp"
#include "cartdiff/poly.hpp"

using namespace cartdiff;

namespace {
const Shape R = Shape::ground();
const Shape R2 = Shape::prod(R, R);
using T = SmoothTerm;

double scalar_at(const ClosedMorphism& f, std::initializer_list<double> xs) {
    ClosedValue v = ClosedValue::unit();
    std::vector<double> flat(xs);
    if (flat.size() == 1) {
        v = ClosedValue::scalar(Num(flat[0]));
    } else {
        v = ClosedValue::scalar(Num(flat[0]));
        for (std::size_t i = 1; i < flat.size(); ++i)
            v = ClosedValue::pair(v, ClosedValue::scalar(Num(flat[i])));
    }
    return f(v).num().force();
}
} // namespace

TEST_CASE("tagged duals compute nested derivatives") {
    // d/dx (x^3 + x) at 2 = 13.
    int t1 = Num::fresh_tag();
    Num x = Num::dual(t1, Num(2.0), Num(1.0));
    Num y = x * x * x + x;
    CHECK(Num::extract(y, t1).force() == doctest::Approx(13.0));

    // Second derivative of x^3 at 1 = 6, via nested tags.
    int outer = Num::fresh_tag();
    Num x0 = Num::dual(outer, Num(1.0), Num(1.0));
    int inner = Num::fresh_tag();
    Num x1 = Num::dual(inner, x0, Num(1.0));
    Num w = x1 * x1 * x1;
    Num first = Num::extract(w, inner);
    CHECK(Num::extract(first, outer).force() == doctest::Approx(6.0));

    // Distinct tags do not interfere: d/dx d/dy (x*y) = 1.
    int tx = Num::fresh_tag(), ty = Num::fresh_tag();
    Num a = Num::dual(tx, Num(5.0), Num(1.0));
    Num b = Num::dual(ty, Num(7.0), Num(1.0));
    Num p = a * b;
    CHECK(Num::extract(Num::extract(p, ty), tx).force() == doctest::Approx(1.0));

    CHECK(sin(Num(0.0)).force() == doctest::Approx(0.0));
}

TEST_CASE("differential by dual numbers matches known values") {
    ClosedModel m;
    // f(x) = x^3 + x: D[f](2,1) = 13.
    auto x = T::variable(0);
    auto f = m.from_terms(R, R, {T::add(T::mul(T::mul(x, x), x), x)});
    auto df = m.differential(f);
    CHECK(scalar_at(df, {2.0, 1.0}) == doctest::Approx(13.0));
    // D[f](2, 3) scales the direction.
    CHECK(scalar_at(df, {2.0, 3.0}) == doctest::Approx(39.0));
    // Identity derivative is the projection.
    auto did = m.differential(m.id(R));
    CHECK(scalar_at(did, {5.0, 9.0}) == doctest::Approx(9.0));
    // d_from_exp reproduces it.
    CHECK(scalar_at(m.d_from_exp(f), {2.0, 1.0}) == doctest::Approx(13.0));
}

TEST_CASE("linearization at zero via duals") {
    ClosedModel m;
    auto sinx = m.from_terms(R, R, {T::sin(T::variable(0))});
    auto lsin = m.exp_linearize(sinx);
    for (double v : {0.3, -0.7, 1.1})
        CHECK(scalar_at(lsin, {v}) == doctest::Approx(v));

    // f(c,a) = c*a + a^3 partially linearizes to c*a.
    auto c = T::variable(0), a = T::variable(1);
    auto f = m.from_terms(R2, R, {T::add(T::mul(c, a), T::mul(T::mul(a, a), a))});
    auto lc = m.partial_from_total(f);
    for (double cv : {0.5, -1.2})
        for (double av : {0.4, 2.0})
            CHECK(scalar_at(lc, {cv, av}) == doctest::Approx(cv * av));

    // Constant in the second argument: f(c,a) = c^2 gives zero.
    auto g = m.from_terms(R2, R, {T::mul(c, c)});
    auto lg = m.partial_from_total(g);
    CHECK(scalar_at(lg, {3.0, 2.0}) == doctest::Approx(0.0));
}

TEST_CASE("curry and uncurry round trip pointwise") {
    ClosedModel m;
    auto c = T::variable(0), a = T::variable(1);
    auto f = m.from_terms(R2, R, {T::mul(c, a)});
    auto rt = m.uncurry(m.curry(f));
    Rng rng(151);
    for (int i = 0; i < 100; ++i) {
        double cv = rng.real(-1, 1), av = rng.real(-1, 1);
        CHECK(scalar_at(rt, {cv, av}) == doctest::Approx(cv * av));
    }
    CHECK(m.equal(rt, f));
    // curry(pi1) is the monad unit.
    CHECK(m.equal(m.curry(m.proj1(R, R)), m.eta(R, R)));
    // uncurry(curry(ev)) = ev.
    auto ev = m.eval_map(R, R);
    CHECK(m.equal(m.uncurry(m.curry(ev)), ev));
}

TEST_CASE("monad identities and canonical isomorphisms hold at samples") {
    ClosedModel m(ClosedEq{1e-6, 30, 6, 23});
    Shape c = R, a = R;
    Shape hca = Shape::hom(c, a);
    auto mu_outer = m.mu(c, a);
    // eta mu = 1.
    CHECK(m.equal(m.compose(m.eta(c, hca), mu_outer), m.id(hca)));
    // [1,1] = 1 by functoriality.
    CHECK(m.equal(m.hom_map(m.id(c), m.id(a)), m.id(hca)));
    // theta / theta_inv round trip.
    auto th = m.theta(c, a, R);
    auto ti = m.theta_inv(c, a, R);
    CHECK(m.equal(m.compose(th, ti), m.id(m.dom(th))));
    CHECK(m.equal(m.compose(ti, th), m.id(m.dom(ti))));
    // phi / phi_inv round trip.
    auto ph = m.phi(a, c, R);
    CHECK(m.equal(m.compose(ph, m.phi_inv(a, c, R)), m.id(m.dom(ph))));
}

TEST_CASE("derivative symmetry for second derivatives at samples") {
    ClosedModel m(ClosedEq{1e-6, 40, 6, 29});
    ClosedGen gen(m);
    Rng rng(157);
    for (int i = 0; i < 10; ++i) {
        Shape a = gen.shape(rng);
        auto f = gen.map(rng, a, R);
        auto ddf = m.differential(m.differential(f));
        auto cmap = interchange(m, a, a, a, a);
        CHECK(m.equal(m.compose(cmap, ddf), ddf));
    }
}

TEST_CASE("closed suite passes") {
    ClosedModel m(ClosedEq{1e-6, 25, 5, 31});
    ClosedGen gen(m);
    for (const auto& r : check_closed(m, gen, LawConfig{42, 8})) {
        INFO(r.line());
        CHECK(r.status == LawStatus::Pass);
    }
}

TEST_CASE("generic differential suites pass on the closed model") {
    ClosedModel m(ClosedEq{1e-6, 25, 5, 37});
    ClosedGen gen(m);
    LawConfig cfg{42, 8};
    auto d = m.differential_combinator();
    for (const auto& r : check_cd(m, gen, d, cfg)) {
        INFO(r.line());
        CHECK(r.status != LawStatus::Fail);
    }
    for (const auto& r : check_l(m, gen, l_from_d(m, d), cfg)) {
        INFO(r.line());
        CHECK(r.status != LawStatus::Fail);
    }
}

TEST_CASE("dual extraction is exact for integer polynomial bodies") {
    ClosedModel m;
    const Shape R2d = Shape::prod(Shape::ground(), Shape::ground());
    // f(x,y) = x^2 y + 3x: duals over small integers are exact doubles.
    auto x = SmoothTerm::variable(0), y = SmoothTerm::variable(1);
    auto body = SmoothTerm::add(SmoothTerm::mul(SmoothTerm::mul(x, x), y),
                                SmoothTerm::mul(SmoothTerm::constant(Rational(3)), x));
    auto f = m.from_terms(R2d, Shape::ground(), {body});
    auto df = m.differential(f);

    Poly p(2);
    p.accumulate({2, 1}, Rational(1));
    p.accumulate({1, 0}, Rational(3));
    PolyMap fp(R2d, Shape::ground(), {p});
    PolyMap dfp = poly_differential(fp);

    Rng rng(173);
    for (int i = 0; i < 50; ++i) {
        long xs = rng.range(-5, 5), ys = rng.range(-5, 5);
        long as = rng.range(-5, 5), bs = rng.range(-5, 5);
        ClosedValue v = ClosedValue::pair(
            ClosedValue::pair(ClosedValue::scalar(Num(double(xs))),
                              ClosedValue::scalar(Num(double(ys)))),
            ClosedValue::pair(ClosedValue::scalar(Num(double(as))),
                              ClosedValue::scalar(Num(double(bs)))));
        double got = df(v).num().force();
        std::vector<Rational> pt{Rational(xs), Rational(ys), Rational(as), Rational(bs)};
        double want = poly_eval(dfp, pt)[0].to_double();
        CHECK(got == want); // bit-exact: small integer arithmetic
    }
}
