#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "cartdiff/closed_model.hpp"
#include "cartdiff/demo.hpp"
#include "cartdiff/laws.hpp"
#include "cartdiff/matrix_model.hpp"
#include "cartdiff/mutants.hpp"
#include "cartdiff/parser.hpp"
#include "cartdiff/poly_model.hpp"
#include "cartdiff/smooth_model.hpp"
#include "cartdiff/tower_model.hpp"

using namespace cartdiff;

namespace {

struct LawsOptions {
    std::string model = "poly";
    std::string suite = "all";
    std::uint64_t seed = 42;
    bool seed_given = false;
    int budget = 500;
    double tol = 1e-6;
    int points = 100;
    std::string format = "text";
    std::string mutant;
};

std::vector<std::string> split_names(const std::string& csv) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : csv) {
        if (c == ',') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else if (!std::isspace(static_cast<unsigned char>(c))) {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

int emit_reports(std::vector<LawReport> reports, const LawsOptions& opt) {
    bool ok = true;
    for (const auto& r : reports) ok = ok && r.status == LawStatus::Pass;
    if (opt.format == "structured") {
        for (const auto& r : reports) std::cout << r.line() << "\n";
    } else {
        std::cout << "model=" << opt.model << " suite=" << opt.suite << " seed=" << opt.seed
                  << " budget=" << opt.budget << "\n";
        std::cout << format_table(reports);
        std::cout << (ok ? "all laws passed" : "LAW FAILURES PRESENT") << "\n";
    }
    return ok ? 0 : 1;
}

bool suite_on(const std::string& suite, const std::string& name) {
    return suite == "all" || suite == name;
}

template <class M, class Gen>
std::vector<LawReport> run_standard_suites(const M& m, const Gen& gen,
                                           const Combinators<M>& c, const LawsOptions& opt) {
    LawConfig cfg{opt.seed, opt.budget};
    std::vector<LawReport> all;
    auto append = [&all](std::vector<LawReport> rs) {
        for (auto& r : rs) all.push_back(std::move(r));
    };
    if (suite_on(opt.suite, "cd")) append(check_cd(m, gen, c.d, cfg));
    if (suite_on(opt.suite, "l")) append(check_l(m, gen, c.l, cfg));
    if (suite_on(opt.suite, "system")) {
        append(check_system(m, gen, c.lsys, cfg));
        append(check_interchange_equiv(m, gen, c.lsys, cfg));
    }
    if (suite_on(opt.suite, "roundtrip")) append(check_roundtrips(m, gen, c.d, cfg));
    if (suite_on(opt.suite, "linear"))
        append(check_linear_characterizations(m, gen, c.d, cfg));
    return all;
}

int cmd_laws(const LawsOptions& opt) {
    const std::set<std::string> suites{"cd", "l", "system", "closed", "roundtrip", "linear",
                                       "all"};
    if (!suites.count(opt.suite)) {
        std::cerr << "unknown suite: " << opt.suite << "\n";
        return 2;
    }
    try {
        if (opt.model == "poly") {
            PolyModel m;
            PolyGen gen;
            return emit_reports(run_standard_suites(m, gen, poly_combinators(m, opt.mutant), opt),
                                opt);
        }
        if (opt.model == "biproduct") {
            if (!opt.mutant.empty()) {
                std::cerr << "no mutants are defined for the biproduct model\n";
                return 2;
            }
            BiproductModel m;
            MatrixGen gen;
            Combinators<BiproductModel> c;
            c.d = m.differential();
            c.l = l_from_d(m, c.d);
            c.lsys = lc_from_d(m, c.d);
            return emit_reports(run_standard_suites(m, gen, c, opt), opt);
        }
        if (opt.model == "tower") {
            TowerModel m(3);
            TowerGen gen(3);
            return emit_reports(
                run_standard_suites(m, gen, tower_combinators(m, opt.mutant), opt), opt);
        }
        if (opt.model == "smooth") {
            SmoothModel m(SampledEq{opt.tol, opt.points, opt.seed});
            SmoothGen gen;
            return emit_reports(
                run_standard_suites(m, gen, smooth_combinators(m, opt.mutant), opt), opt);
        }
        if (opt.model == "closed") {
            ClosedModel m(ClosedEq{opt.tol, opt.points, 10, opt.seed});
            ClosedGen gen(m);
            auto c = closed_combinators(m, opt.mutant);
            std::vector<LawReport> all;
            if (opt.suite != "closed") {
                auto rs = run_standard_suites(m, gen, c, opt);
                for (auto& r : rs) all.push_back(std::move(r));
            }
            if (suite_on(opt.suite, "closed")) {
                LawConfig cfg{opt.seed, opt.budget};
                if (!opt.mutant.empty()) {
                    // Run the linearization axioms against the mutated L.
                    for (auto& r : check_l(m, gen, c.l, cfg)) all.push_back(std::move(r));
                }
                for (auto& r : check_closed(m, gen, cfg)) all.push_back(std::move(r));
            }
            return emit_reports(std::move(all), opt);
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }
    std::cerr << "unknown model: " << opt.model << "\n";
    return 2;
}

struct ExprOptions {
    std::string expr;
    std::string model = "poly";
    std::string ctx;
};

enum class ExprKind { Diff, Lin, Plin };

int cmd_expr(ExprKind kind, const ExprOptions& opt) {
    std::vector<std::string> ctx = split_names(opt.ctx);
    if (kind == ExprKind::Plin && ctx.empty()) {
        // The context may also come from a leading ctx(...) declaration.
    }
    ParsedExpr parsed;
    try {
        parsed = parse_expression(opt.expr, ctx);
    } catch (const ParseError& e) {
        std::cerr << caret_message(opt.expr, e) << "\n";
        return 2;
    }
    try {
        if (kind == ExprKind::Plin && parsed.ctx_names.empty()) {
            std::cerr << "plin needs a context: pass --ctx or declare ctx(...)\n";
            return 2;
        }
        bool smooth = opt.model == "smooth" || parsed.transcendental;
        auto base_names = parsed.all_names();
        if (smooth && opt.model == "poly" && parsed.transcendental) {
            std::cerr << "sin/cos/exp need --model smooth\n";
            return 2;
        }
        if (smooth) {
            SmoothModel m;
            SmoothMap f = to_smooth_map(parsed);
            if (kind == ExprKind::Diff) {
                auto dirs = direction_names(base_names);
                auto names = base_names;
                names.insert(names.end(), dirs.begin(), dirs.end());
                std::cout << smooth_differential(f).str(names) << "\n";
            } else if (kind == ExprKind::Lin) {
                std::cout << m.linearize()(f).str(base_names) << "\n";
            } else {
                Shape c = chain_shape(static_cast<int>(parsed.ctx_names.size()));
                auto lc = m.compose(lift(m, c, f.dom.right(), c, f.dom.right()),
                                    smooth_differential(f));
                std::cout << lc.str(base_names) << "\n";
            }
            return 0;
        }
        PolyMap f = to_poly_map(parsed);
        if (kind == ExprKind::Diff) {
            auto dirs = direction_names(base_names);
            auto names = base_names;
            names.insert(names.end(), dirs.begin(), dirs.end());
            std::cout << poly_differential(f).str(names) << "\n";
        } else if (kind == ExprKind::Lin) {
            std::cout << poly_linearize(f).str(base_names) << "\n";
        } else {
            Shape c = chain_shape(static_cast<int>(parsed.ctx_names.size()));
            std::cout << poly_partial_linearize(c, f).str(base_names) << "\n";
        }
        return 0;
    } catch (const ParseError& e) {
        std::cerr << caret_message(opt.expr, e) << "\n";
        return 2;
    } catch (const ShapeError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Executable engine for differential and linearizing combinators"};
    app.require_subcommand(1);

    ExprOptions diff_opt, lin_opt, plin_opt;
    LawsOptions laws_opt;
    std::string demo_name;

    auto add_expr = [](CLI::App* cmd, ExprOptions& o, bool with_ctx) {
        cmd->add_option("expr", o.expr, "expression, e.g. \"x^3+x\" or \"[x+y, x*y]\"")
            ->required();
        cmd->add_option("--model", o.model, "poly|smooth")->default_val("poly");
        if (with_ctx)
            cmd->add_option("--ctx", o.ctx, "comma-separated context variables");
        else
            cmd->add_option("--ctx", o.ctx, "comma-separated context variables");
    };

    auto* diff_cmd = app.add_subcommand("diff", "total derivative of a map");
    add_expr(diff_cmd, diff_opt, false);
    auto* lin_cmd = app.add_subcommand("lin", "linearization (derivative at zero)");
    add_expr(lin_cmd, lin_opt, false);
    auto* plin_cmd = app.add_subcommand("plin", "partial linearization in context");
    add_expr(plin_cmd, plin_opt, true);

    auto* laws_cmd = app.add_subcommand("laws", "run axiom suites and report");
    laws_cmd->add_option("--model", laws_opt.model, "poly|biproduct|tower|smooth|closed")
        ->default_val("poly");
    laws_cmd->add_option("--suite", laws_opt.suite, "cd|l|system|closed|roundtrip|linear|all")
        ->default_val("all");
    auto* seed_opt =
        laws_cmd->add_option("--seed", laws_opt.seed, "generator seed (echoed in output)");
    laws_cmd->add_option("--budget", laws_opt.budget, "cases per law")->default_val(500);
    laws_cmd->add_option("--tol", laws_opt.tol, "sampled-equality tolerance")
        ->default_val(1e-6);
    laws_cmd->add_option("--points", laws_opt.points, "sampled-equality points")
        ->default_val(100);
    laws_cmd->add_option("--format", laws_opt.format, "text|structured")->default_val("text");
    laws_cmd->add_option("--mutant", laws_opt.mutant,
                         "run with a documented broken combinator");

    auto* demo_cmd = app.add_subcommand("demo", "print a worked example");
    demo_cmd->add_option("name", demo_name, "interchange|c1")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (diff_cmd->parsed()) return cmd_expr(ExprKind::Diff, diff_opt);
    if (lin_cmd->parsed()) return cmd_expr(ExprKind::Lin, lin_opt);
    if (plin_cmd->parsed()) return cmd_expr(ExprKind::Plin, plin_opt);
    if (laws_cmd->parsed()) {
        if (!*seed_opt) {
            if (const char* env = std::getenv("CARTDIFF_SEED")) {
                laws_opt.seed = std::strtoull(env, nullptr, 10);
            }
        }
        return cmd_laws(laws_opt);
    }
    if (demo_cmd->parsed()) {
        if (demo_name == "interchange") {
            std::cout << demo_interchange();
            return 0;
        }
        if (demo_name == "c1") {
            std::cout << demo_c1();
            return 0;
        }
        std::cerr << "unknown demo: " << demo_name << "\n";
        return 2;
    }
    return 2;
}
