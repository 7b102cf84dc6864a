#include <doctest.h>

#include <set>

#include "cartdiff/laws.hpp"
#include "cartdiff/mutants.hpp"
#include "cartdiff/matrix_model.hpp"
#include "cartdiff/poly_model.hpp"
#include "cartdiff/tower_model.hpp"

using namespace cartdiff;

namespace {

template <class M, class Gen>
void expect_all_pass(const M& m, const Gen& gen, const DiffCombinator<M>& d, LawConfig cfg) {
    auto lsys = lc_from_d(m, d);
    auto l = l_from_d(m, d);
    for (const auto& r : check_cd(m, gen, d, cfg)) {
        INFO(r.line());
        CHECK(r.status == LawStatus::Pass);
    }
    for (const auto& r : check_l(m, gen, l, cfg)) {
        INFO(r.line());
        CHECK(r.status == LawStatus::Pass);
    }
    for (const auto& r : check_system(m, gen, lsys, cfg)) {
        INFO(r.line());
        CHECK(r.status == LawStatus::Pass);
    }
    for (const auto& r : check_interchange_equiv(m, gen, lsys, cfg)) {
        INFO(r.line());
        CHECK(r.status == LawStatus::Pass);
    }
    for (const auto& r : check_roundtrips(m, gen, d, cfg)) {
        INFO(r.line());
        CHECK(r.status == LawStatus::Pass);
    }
    for (const auto& r : check_linear_characterizations(m, gen, d, cfg)) {
        INFO(r.line());
        CHECK(r.status == LawStatus::Pass);
    }
}

} // namespace

TEST_CASE("polynomial model satisfies every suite") {
    PolyModel m;
    PolyGen gen;
    expect_all_pass(m, gen, m.differential(), LawConfig{42, 60});
}

TEST_CASE("biproduct model satisfies every suite") {
    BiproductModel m;
    MatrixGen gen;
    expect_all_pass(m, gen, m.differential(), LawConfig{42, 60});
}

TEST_CASE("tower model satisfies every suite") {
    TowerModel m(3);
    TowerGen gen(3);
    expect_all_pass(m, gen, m.differential(), LawConfig{42, 25});
}

TEST_CASE("a broken combinator is reported with a replayable counterexample") {
    PolyModel m;
    PolyGen gen;
    DiffCombinator<PolyModel> broken = [&m](const PolyMap& f) {
        return m.zero(Shape::prod(f.dom, f.dom), f.cod);
    };
    auto run = [&] { return check_cd(m, gen, broken, LawConfig{42, 40}); };
    auto reports = run();
    bool cd3_failed = false;
    std::string first_line;
    for (const auto& r : reports) {
        if (r.law == "CD.3" && r.status == LawStatus::Fail) {
            cd3_failed = true;
            CHECK(!r.counterexample.empty());
        }
        if (r.status == LawStatus::Fail && first_line.empty()) first_line = r.line();
    }
    CHECK(cd3_failed);
    // Same seed, same counterexample.
    auto again = run();
    std::string second_line;
    for (const auto& r : again)
        if (r.status == LawStatus::Fail && second_line.empty()) second_line = r.line();
    CHECK(first_line == second_line);
}

TEST_CASE("law reports serialize to the line format") {
    LawReport r;
    r.law = "CD.5";
    r.model = "poly";
    r.seed = 42;
    r.cases = 500;
    r.status = LawStatus::Pass;
    r.eq = EqContract::make_exact();
    CHECK(r.line() == "law=CD.5 model=poly seed=42 cases=500 status=pass eq=exact");
    r.status = LawStatus::Fail;
    r.counterexample = "case#3;f=x^2";
    r.eq = EqContract::sampled(1e-6, 100);
    CHECK(r.line() ==
          "law=CD.5 model=poly seed=42 cases=500 status=fail eq=sampled:1e-06,100 "
          "counterexample=case#3;f=x^2");
}

TEST_CASE("counterexamples are shrunk to small witnesses") {
    PolyModel m;
    PolyGen gen;
    // A mutant that keeps constants: fails L.2 (the result is not reduced).
    LinCombinator<PolyModel> affine = [](const PolyMap& f) {
        std::vector<Poly> comps;
        for (const auto& p : f.comps) {
            Poly q(p.nvars());
            for (const auto& [e, c] : p.terms()) {
                int deg = 0;
                for (int k : e) deg += k;
                if (deg <= 1) q.accumulate(e, c);
            }
            comps.push_back(std::move(q));
        }
        return PolyMap(f.dom, f.cod, std::move(comps));
    };
    auto reports = check_l(m, gen, affine, LawConfig{42, 80});
    bool l2_failed = false;
    for (const auto& r : reports)
        if (r.law == "L.2" && r.status == LawStatus::Fail) {
            l2_failed = true;
            CHECK(r.counterexample.find("f=") != std::string::npos);
        }
    CHECK(l2_failed);
}

TEST_CASE("the documented mutants jointly trip every axiom") {
    PolyModel m;
    PolyGen gen;
    std::set<std::string> killed;
    for (const auto& info : mutant_catalog()) {
        if (info.model != "poly") continue;
        auto c = poly_combinators(m, info.id);
        LawConfig cfg{42, 60};
        auto rs = check_cd(m, gen, c.d, cfg);
        for (auto& r : check_l(m, gen, c.l, cfg)) rs.push_back(r);
        for (auto& r : check_system(m, gen, c.lsys, cfg)) rs.push_back(r);
        bool documented_failed = false;
        for (const auto& r : rs)
            if (r.status == LawStatus::Fail) {
                killed.insert(r.law);
                if (r.law == info.breaks) documented_failed = true;
            }
        INFO(info.id);
        CHECK(documented_failed);
    }
    for (const char* law :
         {"CD.1", "CD.2", "CD.3", "CD.4", "CD.5", "CD.6", "CD.7", "L.1", "L.2", "L.3", "L.4",
          "L.5", "L.6", "LS.1", "LS.2", "LS.3", "LS.4", "LS.5", "LS.6", "LS.7", "LS.7a",
          "LS.8"}) {
        INFO(law);
        CHECK(killed.count(law) == 1);
    }
}
