#include <doctest.h>

#include <cmath>

#include "cartdiff/laws.hpp"
#include "cartdiff/smooth_model.hpp"

using namespace cartdiff;

namespace {
const Shape R = Shape::ground();
const Shape R2 = Shape::prod(R, R);

using T = SmoothTerm;

// Central finite differences along a direction: an oracle for the
// symbolic derivative, independent of SmoothTerm::derivative.
double fd_directional(const SmoothMap& f, std::size_t comp, const std::vector<double>& x,
                      const std::vector<double>& y, double step) {
    std::vector<double> fwd(x), bwd(x);
    for (std::size_t i = 0; i < x.size(); ++i) {
        fwd[i] += step * y[i];
        bwd[i] -= step * y[i];
    }
    return (f.comps[comp]->eval(fwd) - f.comps[comp]->eval(bwd)) / (2 * step);
}
} // namespace

TEST_CASE("worked derivative of exp(x)cos(y)") {
    // g(x,y) = exp(x) cos(y).
    SmoothMap g(R2, R, {T::mul(T::exp(T::variable(0)), T::cos(T::variable(1)))});
    SmoothMap dg = smooth_differential(g);

    // Expected: exp(x)cos(y) z - exp(x)sin(y) w, built independently.
    auto expect =
        T::add(T::mul(T::mul(T::exp(T::variable(0)), T::cos(T::variable(1))), T::variable(2)),
               T::neg(T::mul(T::mul(T::exp(T::variable(0)), T::sin(T::variable(1))),
                             T::variable(3))));
    SmoothMap want(Shape::prod(R2, R2), R, {expect});
    CHECK(sampled_eq(dg, want, SampledEq{1e-9, 100, 7}));

    // Linearization folds to the first variable exactly.
    SmoothModel m;
    SmoothMap lg = m.linearize()(g);
    CHECK(lg.comps[0]->op() == T::Op::Var);
    CHECK(lg.comps[0]->var() == 0);
    CHECK(lg.str() == "x");
}

TEST_CASE("linearization folds exact values at zero") {
    SmoothModel m;
    auto L = m.linearize();
    SmoothMap sinx(R, R, {T::sin(T::variable(0))});
    CHECK(L(sinx).str() == "x");
    SmoothMap expx(R, R, {T::exp(T::variable(0))});
    CHECK(L(expx).str() == "x");
    SmoothMap konst(R, R, {T::constant(Rational(3))});
    CHECK(L(konst).str() == "0");
}

TEST_CASE("symbolic derivative against central differences") {
    // f(x) = sin(x) * x: derivative (cos(x) x + sin(x)) y.
    SmoothMap f(R, R, {T::mul(T::sin(T::variable(0)), T::variable(0))});
    SmoothMap df = smooth_differential(f);
    Rng rng(127);
    for (int i = 0; i < 20; ++i) {
        std::vector<double> x{rng.real(-1, 1)}, y{rng.real(-1, 1)};
        std::vector<double> xy{x[0], y[0]};
        double sym = df.comps[0]->eval(xy);
        double fd = fd_directional(f, 0, x, y, 1e-6);
        CHECK(std::fabs(sym - fd) < 1e-6);
        double manual = (std::cos(x[0]) * x[0] + std::sin(x[0])) * y[0];
        CHECK(std::fabs(sym - manual) < 1e-12);
    }

    // Generated corpus: symbolic D within 1e-4 of central differences.
    SmoothGen gen;
    Rng grng(131);
    for (int c = 0; c < 100; ++c) {
        Shape a = gen.shape(grng);
        SmoothMap g = gen.map(grng, a, R);
        SmoothMap dg = smooth_differential(g);
        int n = a.leaves();
        for (int rep = 0; rep < 5; ++rep) {
            std::vector<double> x, y, xy;
            for (int v = 0; v < n; ++v) x.push_back(grng.real(-1, 1));
            for (int v = 0; v < n; ++v) y.push_back(grng.real(-1, 1));
            xy = x;
            xy.insert(xy.end(), y.begin(), y.end());
            double sym = dg.comps[0]->eval(xy);
            if (!std::isfinite(sym)) continue;
            double fd = fd_directional(g, 0, x, y, 1e-5);
            double scale = std::max(1.0, std::fabs(sym));
            CHECK(std::fabs(sym - fd) <= 1e-4 * scale);
        }
    }
}

TEST_CASE("sampled equality contract") {
    // sin^2 + cos^2 = 1 at tolerance 1e-9.
    auto s = T::sin(T::variable(0)), c = T::cos(T::variable(0));
    SmoothMap pyth(R, R, {T::add(T::mul(s, s), T::mul(c, c))});
    SmoothMap one(R, R, {T::constant(Rational(1))});
    CHECK(sampled_eq(pyth, one, SampledEq{1e-9, 100, 11}));

    // x differs from x + 1e-3 x^2 at tolerance 1e-6.
    auto x = T::variable(0);
    SmoothMap lhs(R, R, {x});
    SmoothMap rhs(R, R,
                  {T::add(x, T::mul(T::constant(Rational(1, 1000)), T::mul(x, x)))});
    CHECK(!sampled_eq(lhs, rhs, SampledEq{1e-6, 100, 11}));

    // Reflexive, and deterministic per seed.
    SmoothGen gen;
    Rng rng(137);
    for (int i = 0; i < 20; ++i) {
        SmoothMap f = gen.map(rng, gen.shape(rng), gen.shape(rng));
        CHECK(sampled_eq(f, f, SampledEq{1e-9, 50, 13}));
    }
}

TEST_CASE("second derivative symmetry under sampling") {
    SmoothModel m(SampledEq{1e-6, 100, 17});
    SmoothGen gen;
    Rng rng(139);
    auto d = m.differential();
    for (int i = 0; i < 30; ++i) {
        Shape a = gen.shape(rng);
        SmoothMap f = gen.map(rng, a, R);
        auto ddf = d(d(f));
        auto c = interchange(m, a, a, a, a);
        CHECK(m.equal(m.compose(c, ddf), ddf));
    }
}

TEST_CASE("smooth model passes the differential and linearization suites") {
    SmoothModel m(SampledEq{1e-6, 40, 19});
    SmoothGen gen;
    LawConfig cfg{42, 25};
    auto d = m.differential();
    for (const auto& r : check_cd(m, gen, d, cfg)) {
        INFO(r.line());
        CHECK(r.status != LawStatus::Fail);
    }
    for (const auto& r : check_l(m, gen, l_from_d(m, d), cfg)) {
        INFO(r.line());
        CHECK(r.status != LawStatus::Fail);
    }
    for (const auto& r : check_system(m, gen, lc_from_d(m, d), cfg)) {
        INFO(r.line());
        CHECK(r.status != LawStatus::Fail);
    }
    for (const auto& r : check_roundtrips(m, gen, d, cfg)) {
        INFO(r.line());
        CHECK(r.status != LawStatus::Fail);
    }
}

TEST_CASE("term printing") {
    auto t = T::add(T::mul(T::constant(Rational(2)), T::sin(T::variable(0))),
                    T::neg(T::mul(T::variable(0), T::variable(1))));
    std::vector<std::string> names{"x", "y"};
    CHECK(t->str(names) == "2*sin(x)-x*y");
    auto u = T::mul(T::add(T::variable(0), T::constant(Rational(1))), T::variable(1));
    CHECK(u->str(names) == "(x+1)*y");
}
