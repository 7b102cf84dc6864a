#pragma once

#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "cartdiff/rational.hpp"
#include "cartdiff/shape.hpp"

namespace cartdiff {

/// Symbolic smooth expression over rational constants, variables, +, *,
/// negation, sin, cos and exp. Nodes are immutable and shared; the smart
/// constructors fold rational constants and the exact values at zero
/// (sin 0 = 0, cos 0 = 1, exp 0 = 1) but perform no other simplification.
class SmoothTerm {
public:
    enum class Op { Const, Var, Add, Mul, Neg, Sin, Cos, Exp };
    using Ptr = std::shared_ptr<const SmoothTerm>;

    static Ptr constant(const Rational& c);
    static Ptr variable(int index);
    static Ptr add(const Ptr& a, const Ptr& b);
    static Ptr mul(const Ptr& a, const Ptr& b);
    static Ptr neg(const Ptr& a);
    static Ptr sin(const Ptr& a);
    static Ptr cos(const Ptr& a);
    static Ptr exp(const Ptr& a);

    Op op() const { return op_; }
    const Rational& value() const { return value_; }
    int var() const { return var_; }
    const Ptr& child0() const { return a_; }
    const Ptr& child1() const { return b_; }

    bool is_const() const { return op_ == Op::Const; }
    bool is_zero_const() const { return is_const() && value_.is_zero(); }

    double eval(std::span<const double> point) const;

    /// Symbolic partial derivative with respect to one variable.
    static Ptr derivative(const Ptr& t, int var);

    /// Replaces variable i by args[i].
    static Ptr substitute(const Ptr& t, std::span<const Ptr> args);

    /// Largest variable index occurring, or -1.
    int max_var() const;

    std::string str(std::span<const std::string> names) const;

private:
    SmoothTerm(Op op, Rational v, int var, Ptr a, Ptr b)
        : op_(op), value_(std::move(v)), var_(var), a_(std::move(a)), b_(std::move(b)) {}

    Op op_;
    Rational value_;
    int var_ = -1;
    Ptr a_, b_;
};

/// A morphism of the smooth model: one term per codomain leaf, over
/// leaves(dom) variables.
struct SmoothMap {
    Shape dom, cod;
    std::vector<SmoothTerm::Ptr> comps;

    SmoothMap(Shape d, Shape c, std::vector<SmoothTerm::Ptr> parts);

    std::string str(std::span<const std::string> names) const;
    std::string str() const;
};

SmoothMap smooth_id(const Shape& a);
SmoothMap smooth_zero(const Shape& dom, const Shape& cod);
SmoothMap smooth_proj0(const Shape& a, const Shape& b);
SmoothMap smooth_proj1(const Shape& a, const Shape& b);
SmoothMap smooth_pair(const SmoothMap& f, const SmoothMap& g);
SmoothMap smooth_add(const SmoothMap& f, const SmoothMap& g);
SmoothMap smooth_compose(const SmoothMap& f, const SmoothMap& g);

/// Symbolic total derivative: linear in the second variable block by
/// construction.
SmoothMap smooth_differential(const SmoothMap& f);

std::vector<double> smooth_eval(const SmoothMap& f, std::span<const double> point);

/// Seeded random-point equality: tolerance is applied absolutely and
/// relative to the larger magnitude. Non-finite evaluations at a point
/// cause a resample; after five times the point budget the comparison
/// aborts.
struct SampledEq {
    double tolerance = 1e-6;
    int points = 100;
    std::uint64_t seed = 42;
    double box_lo = -1.0;
    double box_hi = 1.0;
};

/// Raised when sampling cannot produce enough finite evaluations.
class SampleError : public std::runtime_error {
public:
    explicit SampleError(const std::string& what) : std::runtime_error(what) {}
};

/// Bookkeeping for one comparison: how many points were thrown away for
/// non-finite evaluations, with a note naming the first such point.
struct SampleStats {
    int resampled = 0;
    std::string note;
};

bool sampled_eq(const SmoothMap& f, const SmoothMap& g, const SampledEq& cfg,
                SampleStats* stats = nullptr);

} // namespace cartdiff
