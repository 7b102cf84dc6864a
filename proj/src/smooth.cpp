#include "cartdiff/smooth.hpp"

#include <cmath>
#include <sstream>

#include "cartdiff/rng.hpp"

namespace cartdiff {

SmoothTerm::Ptr SmoothTerm::constant(const Rational& c) {
    return Ptr(new SmoothTerm(Op::Const, c, -1, nullptr, nullptr));
}

SmoothTerm::Ptr SmoothTerm::variable(int index) {
    return Ptr(new SmoothTerm(Op::Var, Rational(0), index, nullptr, nullptr));
}

SmoothTerm::Ptr SmoothTerm::add(const Ptr& a, const Ptr& b) {
    if (a->is_const() && b->is_const()) return constant(a->value() + b->value());
    if (a->is_zero_const()) return b;
    if (b->is_zero_const()) return a;
    return Ptr(new SmoothTerm(Op::Add, Rational(0), -1, a, b));
}

SmoothTerm::Ptr SmoothTerm::mul(const Ptr& a, const Ptr& b) {
    if (a->is_const() && b->is_const()) return constant(a->value() * b->value());
    if (a->is_zero_const() || b->is_zero_const()) return constant(Rational(0));
    if (a->is_const() && a->value().is_one()) return b;
    if (b->is_const() && b->value().is_one()) return a;
    // Hoist negation out of products so sums print as subtraction.
    if (a->op() == Op::Neg) return neg(mul(a->child0(), b));
    if (b->op() == Op::Neg) return neg(mul(a, b->child0()));
    return Ptr(new SmoothTerm(Op::Mul, Rational(0), -1, a, b));
}

SmoothTerm::Ptr SmoothTerm::neg(const Ptr& a) {
    if (a->is_const()) return constant(-a->value());
    if (a->op() == Op::Neg) return a->child0();
    return Ptr(new SmoothTerm(Op::Neg, Rational(0), -1, a, nullptr));
}

SmoothTerm::Ptr SmoothTerm::sin(const Ptr& a) {
    if (a->is_zero_const()) return constant(Rational(0));
    return Ptr(new SmoothTerm(Op::Sin, Rational(0), -1, a, nullptr));
}

SmoothTerm::Ptr SmoothTerm::cos(const Ptr& a) {
    if (a->is_zero_const()) return constant(Rational(1));
    return Ptr(new SmoothTerm(Op::Cos, Rational(0), -1, a, nullptr));
}

SmoothTerm::Ptr SmoothTerm::exp(const Ptr& a) {
    if (a->is_zero_const()) return constant(Rational(1));
    return Ptr(new SmoothTerm(Op::Exp, Rational(0), -1, a, nullptr));
}

double SmoothTerm::eval(std::span<const double> point) const {
    switch (op_) {
        case Op::Const: return value_.to_double();
        case Op::Var: return point[static_cast<std::size_t>(var_)];
        case Op::Add: return a_->eval(point) + b_->eval(point);
        case Op::Mul: return a_->eval(point) * b_->eval(point);
        case Op::Neg: return -a_->eval(point);
        case Op::Sin: return std::sin(a_->eval(point));
        case Op::Cos: return std::cos(a_->eval(point));
        case Op::Exp: return std::exp(a_->eval(point));
    }
    return 0.0;
}

SmoothTerm::Ptr SmoothTerm::derivative(const Ptr& t, int var) {
    switch (t->op()) {
        case Op::Const: return constant(Rational(0));
        case Op::Var: return constant(Rational(t->var() == var ? 1 : 0));
        case Op::Add: return add(derivative(t->child0(), var), derivative(t->child1(), var));
        case Op::Mul:
            return add(mul(derivative(t->child0(), var), t->child1()),
                       mul(t->child0(), derivative(t->child1(), var)));
        case Op::Neg: return neg(derivative(t->child0(), var));
        case Op::Sin: return mul(cos(t->child0()), derivative(t->child0(), var));
        case Op::Cos: return neg(mul(sin(t->child0()), derivative(t->child0(), var)));
        case Op::Exp: return mul(exp(t->child0()), derivative(t->child0(), var));
    }
    return constant(Rational(0));
}

SmoothTerm::Ptr SmoothTerm::substitute(const Ptr& t, std::span<const Ptr> args) {
    switch (t->op()) {
        case Op::Const: return t;
        case Op::Var: return args[static_cast<std::size_t>(t->var())];
        case Op::Add: return add(substitute(t->child0(), args), substitute(t->child1(), args));
        case Op::Mul: return mul(substitute(t->child0(), args), substitute(t->child1(), args));
        case Op::Neg: return neg(substitute(t->child0(), args));
        case Op::Sin: return sin(substitute(t->child0(), args));
        case Op::Cos: return cos(substitute(t->child0(), args));
        case Op::Exp: return exp(substitute(t->child0(), args));
    }
    return t;
}

int SmoothTerm::max_var() const {
    switch (op_) {
        case Op::Const: return -1;
        case Op::Var: return var_;
        case Op::Add:
        case Op::Mul: return std::max(a_->max_var(), b_->max_var());
        default: return a_ ? a_->max_var() : -1;
    }
}

namespace {

int precedence(SmoothTerm::Op op) {
    switch (op) {
        case SmoothTerm::Op::Add: return 1;
        case SmoothTerm::Op::Neg: return 2;
        case SmoothTerm::Op::Mul: return 3;
        default: return 4;
    }
}

void print(const SmoothTerm& t, std::span<const std::string> names, std::ostringstream& os,
           int parent_prec) {
    int prec = precedence(t.op());
    bool parens = prec < parent_prec;
    if (parens) os << "(";
    switch (t.op()) {
        case SmoothTerm::Op::Const: os << t.value().str(); break;
        case SmoothTerm::Op::Var: os << names[static_cast<std::size_t>(t.var())]; break;
        case SmoothTerm::Op::Add: {
            print(*t.child0(), names, os, prec);
            const auto& rhs = *t.child1();
            if (rhs.op() == SmoothTerm::Op::Neg) {
                os << "-";
                print(*rhs.child0(), names, os, precedence(SmoothTerm::Op::Neg) + 1);
            } else {
                os << "+";
                print(rhs, names, os, prec + 1);
            }
            break;
        }
        case SmoothTerm::Op::Mul:
            print(*t.child0(), names, os, prec);
            os << "*";
            print(*t.child1(), names, os, prec + 1);
            break;
        case SmoothTerm::Op::Neg:
            os << "-";
            print(*t.child0(), names, os, prec + 1);
            break;
        case SmoothTerm::Op::Sin:
        case SmoothTerm::Op::Cos:
        case SmoothTerm::Op::Exp: {
            const char* name = t.op() == SmoothTerm::Op::Sin   ? "sin"
                               : t.op() == SmoothTerm::Op::Cos ? "cos"
                                                               : "exp";
            os << name << "(";
            print(*t.child0(), names, os, 0);
            os << ")";
            break;
        }
    }
    if (parens) os << ")";
}

std::vector<std::string> smooth_names(int count) {
    static const char* letters[] = {"x", "y", "z", "w", "u", "v", "s", "t"};
    std::vector<std::string> names;
    for (int i = 0; i < count; ++i)
        names.push_back(count <= 8 ? letters[i] : "x" + std::to_string(i + 1));
    return names;
}

} // namespace

std::string SmoothTerm::str(std::span<const std::string> names) const {
    std::ostringstream os;
    print(*this, names, os, 0);
    return os.str();
}

SmoothMap::SmoothMap(Shape d, Shape c, std::vector<SmoothTerm::Ptr> parts)
    : dom(std::move(d)), cod(std::move(c)), comps(std::move(parts)) {
    if (static_cast<int>(comps.size()) != cod.leaves())
        throw ShapeError("smooth map has " + std::to_string(comps.size()) +
                         " components for codomain " + cod.str());
    for (const auto& t : comps)
        if (t->max_var() >= dom.leaves())
            throw ShapeError("smooth term uses a variable outside domain " + dom.str());
}

std::string SmoothMap::str(std::span<const std::string> names) const {
    if (comps.size() == 1) return comps.front()->str(names);
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < comps.size(); ++i) {
        if (i) os << ",";
        os << comps[i]->str(names);
    }
    os << "]";
    return os.str();
}

std::string SmoothMap::str() const {
    auto names = smooth_names(dom.leaves());
    return str(names);
}

SmoothMap smooth_id(const Shape& a) {
    std::vector<SmoothTerm::Ptr> comps;
    for (int i = 0; i < a.leaves(); ++i) comps.push_back(SmoothTerm::variable(i));
    return SmoothMap(a, a, std::move(comps));
}

SmoothMap smooth_zero(const Shape& dom, const Shape& cod) {
    return SmoothMap(
        dom, cod, std::vector<SmoothTerm::Ptr>(cod.leaves(), SmoothTerm::constant(Rational(0))));
}

SmoothMap smooth_proj0(const Shape& a, const Shape& b) {
    std::vector<SmoothTerm::Ptr> comps;
    for (int i = 0; i < a.leaves(); ++i) comps.push_back(SmoothTerm::variable(i));
    return SmoothMap(Shape::prod(a, b), a, std::move(comps));
}

SmoothMap smooth_proj1(const Shape& a, const Shape& b) {
    std::vector<SmoothTerm::Ptr> comps;
    for (int i = 0; i < b.leaves(); ++i) comps.push_back(SmoothTerm::variable(a.leaves() + i));
    return SmoothMap(Shape::prod(a, b), b, std::move(comps));
}

SmoothMap smooth_pair(const SmoothMap& f, const SmoothMap& g) {
    require_same_shape(f.dom, g.dom, "pair");
    auto comps = f.comps;
    comps.insert(comps.end(), g.comps.begin(), g.comps.end());
    return SmoothMap(f.dom, Shape::prod(f.cod, g.cod), std::move(comps));
}

SmoothMap smooth_add(const SmoothMap& f, const SmoothMap& g) {
    require_same_shape(f.dom, g.dom, "add");
    require_same_shape(f.cod, g.cod, "add");
    std::vector<SmoothTerm::Ptr> comps;
    for (std::size_t i = 0; i < f.comps.size(); ++i)
        comps.push_back(SmoothTerm::add(f.comps[i], g.comps[i]));
    return SmoothMap(f.dom, f.cod, std::move(comps));
}

SmoothMap smooth_compose(const SmoothMap& f, const SmoothMap& g) {
    require_same_shape(f.cod, g.dom, "compose");
    std::vector<SmoothTerm::Ptr> comps;
    for (const auto& t : g.comps) comps.push_back(SmoothTerm::substitute(t, f.comps));
    return SmoothMap(f.dom, g.cod, std::move(comps));
}

SmoothMap smooth_differential(const SmoothMap& f) {
    int n = f.dom.leaves();
    std::vector<SmoothTerm::Ptr> comps;
    for (const auto& t : f.comps) {
        SmoothTerm::Ptr acc = SmoothTerm::constant(Rational(0));
        for (int i = 0; i < n; ++i)
            acc = SmoothTerm::add(
                acc, SmoothTerm::mul(SmoothTerm::derivative(t, i), SmoothTerm::variable(n + i)));
        comps.push_back(acc);
    }
    return SmoothMap(Shape::prod(f.dom, f.dom), f.cod, std::move(comps));
}

std::vector<double> smooth_eval(const SmoothMap& f, std::span<const double> point) {
    if (static_cast<int>(point.size()) != f.dom.leaves())
        throw ShapeError("evaluation arity " + std::to_string(point.size()) +
                         " does not match domain " + f.dom.str());
    std::vector<double> out;
    for (const auto& t : f.comps) out.push_back(t->eval(point));
    return out;
}

bool sampled_eq(const SmoothMap& f, const SmoothMap& g, const SampledEq& cfg,
                SampleStats* stats) {
    require_same_shape(f.dom, g.dom, "sampled_eq");
    require_same_shape(f.cod, g.cod, "sampled_eq");
    int n = f.dom.leaves();
    int used = 0, attempts = 0;
    std::vector<double> point(n);
    while (used < cfg.points) {
        if (attempts > 5 * cfg.points)
            throw SampleError("sampled_eq: gave up after " + std::to_string(attempts) +
                              " attempts without enough finite evaluations");
        // Stream depends only on (seed, attempt index), so the same points
        // are visited for every comparison at a given arity.
        Rng rng(cfg.seed + 0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(attempts));
        ++attempts;
        for (auto& x : point) x = rng.real(cfg.box_lo, cfg.box_hi);
        auto fa = smooth_eval(f, point);
        auto gb = smooth_eval(g, point);
        bool finite = true;
        for (double v : fa) finite = finite && std::isfinite(v);
        for (double v : gb) finite = finite && std::isfinite(v);
        if (!finite) {
            if (stats) {
                if (stats->resampled == 0)
                    stats->note = "non-finite at attempt " + std::to_string(attempts - 1);
                ++stats->resampled;
            }
            continue;
        }
        ++used;
        for (std::size_t i = 0; i < fa.size(); ++i) {
            double scale = std::max({1.0, std::fabs(fa[i]), std::fabs(gb[i])});
            if (std::fabs(fa[i] - gb[i]) > cfg.tolerance * scale) return false;
        }
    }
    return true;
}

} // namespace cartdiff
