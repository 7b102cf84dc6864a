#include "cartdiff/demo.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "cartdiff/combinators.hpp"
#include "cartdiff/parser.hpp"
#include "cartdiff/poly_model.hpp"

namespace cartdiff {

std::string demo_interchange() {
    PolyModel m;
    auto lsys = lc_from_d(m, m.differential());

    ParsedExpr e = parse_expression("x*y + 2*x*y^3 + 3*x + 4*y");
    PolyMap f = to_poly_map(e);
    auto names = e.all_names();

    // View the two variables as the two factors of the argument over the
    // terminal context.
    Shape a = Shape::ground(), b = Shape::ground();
    Shape dom = Shape::prod(Shape::unit(), Shape::prod(a, b));
    PolyMap g(dom, f.cod, f.comps);

    auto [l0, l1] = partial_pair(m, lsys, Shape::unit(), g);
    auto [l0_of_l1, unused1] = partial_pair(m, lsys, Shape::unit(), l1);
    auto [unused0, l1_of_l0] = partial_pair(m, lsys, Shape::unit(), l0);
    PolyMap total = poly_linearize(f);

    std::ostringstream os;
    os << "f(x,y)      = " << f.str(names) << "\n";
    os << "L[f]        = " << total.str(names) << "   (linearize x and y jointly)\n";
    os << "L0[f]       = " << l0.str(names) << "   (linearize x, keep y in context)\n";
    os << "L1[f]       = " << l1.str(names) << "   (linearize y, keep x in context)\n";
    os << "L1[L0[f]]   = " << l1_of_l0.str(names) << "\n";
    os << "L0[L1[f]]   = " << l0_of_l1.str(names) << "\n";
    os << "The two passes commute: linearizing one factor at a time, in\n";
    os << "either order, keeps exactly the terms linear in both.\n";
    return os.str();
}

std::string demo_c1() {
    std::ostringstream os;
    os << "Total linearization does not provide partial linearization in\n"
          "general. Consider once-continuously-differentiable real maps and\n"
          "f(x) = |x|^(3/2). Its derivative f'(x) = 3x / (2 sqrt(|x|))\n"
          "exists and is continuous, so f qualifies, and the total\n"
          "linearization L[f](x) = f'(0) x = 0 is fine.\n\n"
          "Partial linearization of (x, z) -> f(x + z) in z, however, would\n"
          "produce the full derivative map\n\n"
          "    D[f](x, y) = 3 x y / (2 sqrt(|x|))\n\n"
          "whose own derivative blows up at x = 0, so it is not once\n"
          "continuously differentiable and leaves the setting. A table of\n"
          "the slopes involved:\n\n";
    os << "      x        f(x) = |x|^(3/2)   f'(x)\n";
    for (double x : {-1.0, -0.25, -0.04, 0.0, 0.04, 0.25, 1.0}) {
        double fx = std::pow(std::fabs(x), 1.5);
        double dfx = x == 0.0 ? 0.0 : 1.5 * x / std::sqrt(std::fabs(x));
        char buf[80];
        std::snprintf(buf, sizeof buf, "   %6.2f   %12.4f   %12.4f\n", x, fx, dfx);
        os << buf;
    }
    os << "\nThe slope ratio f'(x)/x = 1.5/sqrt(|x|) diverges near zero:\n"
          "no continuous derivative-of-the-derivative exists, so a partial\n"
          "linearization operator cannot be defined on this category even\n"
          "though the total one is.\n";
    return os.str();
}

} // namespace cartdiff
