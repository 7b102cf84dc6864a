#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "cartdiff/rational.hpp"
#include "cartdiff/shape.hpp"

namespace cartdiff {

/// Sparse multivariate polynomial with exact rational coefficients.
/// Canonical form: terms keyed by exponent vector (one entry per input
/// variable), zero coefficients absent. The coefficient rig is pluggable
/// in principle; only the rationals ship.
class Poly {
public:
    using Exponents = std::vector<int>;
    using Terms = std::map<Exponents, Rational>;

    explicit Poly(int nvars = 0) : nvars_(nvars) {}

    static Poly constant(int nvars, const Rational& c);
    static Poly variable(int nvars, int index);
    /// Single monomial c * x^e.
    static Poly monomial(Exponents e, const Rational& c);

    int nvars() const { return nvars_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    int degree() const;

    /// Adds c * x^e, dropping the term if the sum cancels.
    void accumulate(const Exponents& e, const Rational& c);

    Poly operator-() const;
    friend Poly operator+(const Poly& a, const Poly& b);
    friend Poly operator-(const Poly& a, const Poly& b);
    friend Poly operator*(const Poly& a, const Poly& b);
    Poly scaled(const Rational& c) const;

    bool operator==(const Poly& o) const { return nvars_ == o.nvars_ && terms_ == o.terms_; }
    bool operator!=(const Poly& o) const { return !(*this == o); }

    /// Partial derivative with respect to one variable.
    Poly derivative(int var) const;

    /// Substitutes args[i] for variable i; every arg is a polynomial in
    /// `out_vars` variables, which becomes the result's variable count.
    Poly substitute(std::span<const Poly> args, int out_vars) const;

    Rational eval(std::span<const Rational> point) const;

    /// Keeps the terms whose total degree over the variable window
    /// [lo, hi) is exactly one; `drop_outside` additionally requires zero
    /// degree outside the window.
    Poly linear_filter(int lo, int hi, bool drop_outside) const;

    /// Canonical text: monomials sorted by total degree descending then
    /// lexicographically descending, e.g. `3*x^2*y+y`. Compact (no spaces).
    std::string str(std::span<const std::string> names) const;

private:
    int nvars_;
    Terms terms_;
};

/// A morphism of the polynomial model: one polynomial per codomain leaf,
/// each in leaves(dom) variables (left-to-right leaf order of `dom`).
struct PolyMap {
    Shape dom, cod;
    std::vector<Poly> comps;

    PolyMap(Shape d, Shape c, std::vector<Poly> parts);

    bool operator==(const PolyMap& o) const;

    std::string str(std::span<const std::string> names) const;
    std::string str() const;
};

PolyMap poly_id(const Shape& a);
PolyMap poly_zero(const Shape& dom, const Shape& cod);
PolyMap poly_proj0(const Shape& a, const Shape& b);
PolyMap poly_proj1(const Shape& a, const Shape& b);
PolyMap poly_pair(const PolyMap& f, const PolyMap& g);
PolyMap poly_add(const PolyMap& f, const PolyMap& g);
/// Diagrammatic composite: first f, then g.
PolyMap poly_compose(const PolyMap& f, const PolyMap& g);

/// Total derivative: for f : A -> B yields A*A -> B, linear in the second
/// variable block (the directional-derivative Jacobian form).
PolyMap poly_differential(const PolyMap& f);

/// Keeps exactly the monomials of total degree 1; agrees with evaluating
/// the derivative at zero in the first block.
PolyMap poly_linearize(const PolyMap& f);

/// For f : C*A -> B keeps the monomials of degree 1 in the A block (any
/// degree in C); agrees with the lifting-map route through the derivative.
PolyMap poly_partial_linearize(const Shape& context, const PolyMap& f);

std::vector<Rational> poly_eval(const PolyMap& f, std::span<const Rational> point);

/// Exact decision procedure: canonical-form comparison.
bool poly_eq(const PolyMap& f, const PolyMap& g);

/// Default variable names for a domain split into blocks: `x`, `y`, `z`,
/// ... single letters while available, indexed names afterwards.
std::vector<std::string> default_names(int count);

} // namespace cartdiff
