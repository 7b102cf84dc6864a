// Acceptance suite: one line per criterion, nonzero exit when any fails.
// argv[1] is the path to the command-line binary (used by criterion 1).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "cartdiff/closed_model.hpp"
#include "cartdiff/laws.hpp"
#include "cartdiff/matrix_model.hpp"
#include "cartdiff/mutants.hpp"
#include "cartdiff/parser.hpp"
#include "cartdiff/poly_model.hpp"
#include "cartdiff/smooth_model.hpp"
#include "cartdiff/tower_model.hpp"

using namespace cartdiff;
using Clock = std::chrono::steady_clock;

namespace {

std::string g_cli;
int g_failures = 0;

void criterion(int n, const std::string& what, double limit_seconds,
               const std::function<bool(std::string&)>& body) {
    std::string detail;
    auto start = Clock::now();
    bool ok = false;
    try {
        ok = body(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(Clock::now() - start).count();
    if (limit_seconds > 0 && secs > limit_seconds) {
        ok = false;
        detail += (detail.empty() ? "" : "; ") + std::string("over time budget");
    }
    std::printf("[%s] criterion %d: %s (%.2fs)%s%s\n", ok ? "PASS" : "FAIL", n, what.c_str(),
                secs, detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
    if (!ok) ++g_failures;
}

std::string run_cli(const std::string& args, int& exit_code) {
    std::string cmd = g_cli + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) {
        exit_code = -1;
        return "";
    }
    std::string out;
    char buf[4096];
    while (std::size_t n = std::fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
    int status = pclose(pipe);
    exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    while (!out.empty() && (out.back() == '\n' || out.back() == '\r')) out.pop_back();
    return out;
}

// Canonical form of an expected expression: parse with the given variable
// blocks and reprint.
std::string canon(const std::string& expr, const std::vector<std::string>& ctx = {}) {
    ParsedExpr e = parse_expression(expr, ctx);
    PolyMap f = to_poly_map(e);
    auto names = e.all_names();
    return f.str(names);
}

bool reports_all_pass(const std::vector<LawReport>& rs, std::string& detail) {
    for (const auto& r : rs) {
        if (r.status != LawStatus::Pass) {
            detail = r.line();
            return false;
        }
    }
    return true;
}

} // namespace

int main(int argc, char** argv) {
    if (argc > 1) g_cli = argv[1];

    criterion(1, "golden worked examples through the command line, exact", 1.0,
              [&](std::string& detail) {
                  if (g_cli.empty()) {
                      detail = "no CLI path given";
                      return false;
                  }
                  struct Golden {
                      std::string args;
                      std::string expect;
                      std::vector<std::string> ctx;
                  };
                  std::vector<Golden> cases = {
                      {"lin \"x^2*y+3*x+z+1\"", "3*x+z", {}},
                      {"plin --ctx z \"z^3*x+z^2*x^3+x+1\"", "z^3*x+x", {"z"}},
                      {"diff \"x^3+x\"", "3*x^2*y+y", {}},
                  };
                  for (const auto& c : cases) {
                      int code = 0;
                      std::string got = run_cli(c.args, code);
                      std::string want = canon(c.expect, c.ctx);
                      if (code != 0 || got != want) {
                          detail = c.args + " -> `" + got + "` wanted `" + want + "`";
                          return false;
                      }
                  }
                  int code = 0;
                  std::string demo = run_cli("demo interchange", code);
                  if (code != 0) {
                      detail = "demo interchange exited " + std::to_string(code);
                      return false;
                  }
                  for (const std::string& needed :
                       {canon("x*y+2*x*y^3+3*x"), canon("x*y+4*y"), canon("x*y")}) {
                      if (demo.find(needed) == std::string::npos) {
                          detail = "demo output lacks `" + needed + "`";
                          return false;
                      }
                  }
                  return true;
              });

    criterion(2, "polynomial axiom suites, 500 exact cases per law", 60.0,
              [&](std::string& detail) {
                  PolyModel m;
                  PolyGen gen;
                  LawConfig cfg{42, 500};
                  auto d = m.differential();
                  auto rs = check_cd(m, gen, d, cfg);
                  for (auto& r : check_l(m, gen, l_from_d(m, d), cfg)) rs.push_back(r);
                  for (auto& r : check_system(m, gen, lc_from_d(m, d), cfg)) rs.push_back(r);
                  int laws_seen = static_cast<int>(rs.size());
                  if (laws_seen < 7 + 9 + 10) {
                      detail = "law count " + std::to_string(laws_seen);
                      return false;
                  }
                  return reports_all_pass(rs, detail);
              });

    criterion(3, "reconstruction round trips, 200 exact cases each way", 30.0,
              [&](std::string& detail) {
                  PolyModel m;
                  PolyGen gen;
                  auto rs = check_roundtrips(m, gen, m.differential(), LawConfig{42, 200});
                  return reports_all_pass(rs, detail);
              });

    criterion(4, "both interchange formulations agree on a shared 200-case corpus", 0,
              [&](std::string& detail) {
                  PolyModel m;
                  PolyGen gen;
                  auto lsys = lc_from_d(m, m.differential());
                  auto rs = check_interchange_equiv(m, gen, lsys, LawConfig{42, 200});
                  if (!reports_all_pass(rs, detail)) return false;
                  // The structural interchange/lift identity, exactly.
                  auto sys = check_system(m, gen, lsys, LawConfig{42, 200});
                  for (const auto& r : sys)
                      if (r.law == "LS.cl") return r.status == LawStatus::Pass;
                  detail = "structural identity report missing";
                  return false;
              });

    criterion(5, "biproduct model: full suite exact and every map linear", 0,
              [&](std::string& detail) {
                  BiproductModel m;
                  MatrixGen gen;
                  LawConfig cfg{42, 200};
                  auto d = m.differential();
                  auto rs = check_cd(m, gen, d, cfg);
                  for (auto& r : check_l(m, gen, l_from_d(m, d), cfg)) rs.push_back(r);
                  for (auto& r : check_system(m, gen, lc_from_d(m, d), cfg)) rs.push_back(r);
                  for (auto& r : check_roundtrips(m, gen, d, cfg)) rs.push_back(r);
                  for (auto& r : check_linear_characterizations(m, gen, d, cfg))
                      rs.push_back(r);
                  if (!reports_all_pass(rs, detail)) return false;
                  Rng rng(42);
                  for (int i = 0; i < 200; ++i) {
                      Shape a = gen.shape(rng), b = gen.shape(rng);
                      auto f = gen.map(rng, a, b);
                      auto fixed = m.compose(zero_id(m, a, a), d(f));
                      if (!m.equal(fixed, f)) {
                          detail = "map failed the zero-evaluation linearity test";
                          return false;
                      }
                  }
                  return true;
              });

    criterion(6, "tower entries agree with iterated polynomial derivatives, 100 maps", 0,
              [&](std::string& detail) {
                  Rng rng(42);
                  PolyGen gen;
                  for (int i = 0; i < 100; ++i) {
                      Shape a = gen.shape(rng), b = gen.shape(rng);
                      PolyMap f = gen.map(rng, a, b);
                      Tower t = tower_of(f, 3);
                      if (!tower_eq(shift(t), tower_of(poly_differential(f), 2))) {
                          detail = "shift disagrees with the derivative";
                          return false;
                      }
                      if (!tower_eq(tower_linearize(t), tower_of(poly_linearize(f), 3))) {
                          detail = "tower linearization disagrees with the filter";
                          return false;
                      }
                  }
                  return true;
              });

    criterion(7, "smooth model: worked linearization, finite differences, symmetry", 0,
              [&](std::string& detail) {
                  using T = SmoothTerm;
                  const Shape R = Shape::ground();
                  const Shape R2 = Shape::prod(R, R);
                  SmoothModel m(SampledEq{1e-9, 100, 42});
                  // L[exp(x)cos(y)] = x within 1e-9 at 100 seeded points.
                  SmoothMap g(R2, R, {T::mul(T::exp(T::variable(0)), T::cos(T::variable(1)))});
                  SmoothMap just_x(R2, R, {T::variable(0)});
                  if (!sampled_eq(m.linearize()(g), just_x, SampledEq{1e-9, 100, 42})) {
                      detail = "linearization of exp*cos misses x at 1e-9";
                      return false;
                  }
                  // Symbolic derivative vs central differences, 100 terms.
                  SmoothGen gen;
                  Rng rng(42);
                  for (int c = 0; c < 100; ++c) {
                      Shape a = gen.shape(rng);
                      SmoothMap f = gen.map(rng, a, R);
                      SmoothMap df = smooth_differential(f);
                      int n = a.leaves();
                      for (int rep = 0; rep < 3; ++rep) {
                          std::vector<double> x, y, xy;
                          for (int v = 0; v < n; ++v) x.push_back(rng.real(-1, 1));
                          for (int v = 0; v < n; ++v) y.push_back(rng.real(-1, 1));
                          xy = x;
                          xy.insert(xy.end(), y.begin(), y.end());
                          double sym = df.comps[0]->eval(xy);
                          if (!std::isfinite(sym)) continue;
                          const double step = 1e-5;
                          std::vector<double> fwd(x), bwd(x);
                          for (int v = 0; v < n; ++v) {
                              fwd[v] += step * y[v];
                              bwd[v] -= step * y[v];
                          }
                          double fd = (f.comps[0]->eval(fwd) - f.comps[0]->eval(bwd)) /
                                      (2 * step);
                          if (std::fabs(sym - fd) > 1e-4 * std::max(1.0, std::fabs(sym))) {
                              detail = "symbolic and finite-difference derivatives differ";
                              return false;
                          }
                      }
                  }
                  // Second-derivative symmetry at 1e-6.
                  SmoothModel msym(SampledEq{1e-6, 100, 42});
                  auto d = msym.differential();
                  for (int i = 0; i < 40; ++i) {
                      Shape a = gen.shape(rng);
                      SmoothMap f = gen.map(rng, a, R);
                      auto ddf = d(d(f));
                      auto cmap = interchange(msym, a, a, a, a);
                      bool same;
                      try {
                          same = msym.equal(msym.compose(cmap, ddf), ddf);
                      } catch (const SampleError&) {
                          continue;
                      }
                      if (!same) {
                          detail = "second derivative not symmetric";
                          return false;
                      }
                  }
                  return true;
              });

    criterion(8, "closed model: curry laws, exponentiable axioms, reconstruction", 120.0,
              [&](std::string& detail) {
                  ClosedModel m(ClosedEq{1e-6, 100, 10, 42});
                  ClosedGen gen(m);
                  // 13 law families, 9 cases each: a 117-case corpus.
                  auto rs = check_closed(m, gen, LawConfig{42, 9});
                  int corpus = 0;
                  for (const auto& r : rs) corpus += r.cases;
                  if (corpus < 100) {
                      detail = "corpus of " + std::to_string(corpus) + " cases";
                      return false;
                  }
                  return reports_all_pass(rs, detail);
              });

    criterion(9, "every documented mutant is caught with a replayable counterexample", 0,
              [&](std::string& detail) {
                  if (mutant_catalog().size() < 10) {
                      detail = "fewer than ten documented mutants";
                      return false;
                  }
                  auto first_failure = [](const std::vector<LawReport>& rs) -> std::string {
                      for (const auto& r : rs)
                          if (r.status == LawStatus::Fail && !r.counterexample.empty())
                              return r.line();
                      return "";
                  };
                  for (const auto& info : mutant_catalog()) {
                      std::string seen, again;
                      bool expected_law_failed = false;
                      auto scan = [&](const std::vector<LawReport>& rs) {
                          for (const auto& r : rs)
                              if (r.law == info.breaks && r.status == LawStatus::Fail)
                                  expected_law_failed = true;
                          return first_failure(rs);
                      };
                      if (info.model == "poly") {
                          PolyModel m;
                          PolyGen gen;
                          auto c = poly_combinators(m, info.id);
                          auto run = [&] {
                              LawConfig cfg{42, 120};
                              auto rs = check_cd(m, gen, c.d, cfg);
                              for (auto& r : check_l(m, gen, c.l, cfg)) rs.push_back(r);
                              for (auto& r : check_system(m, gen, c.lsys, cfg))
                                  rs.push_back(r);
                              return rs;
                          };
                          seen = scan(run());
                          again = first_failure(run());
                      } else if (info.model == "tower") {
                          TowerModel m(3);
                          TowerGen gen(3);
                          auto c = tower_combinators(m, info.id);
                          auto run = [&] { return check_cd(m, gen, c.d, LawConfig{42, 60}); };
                          seen = scan(run());
                          again = first_failure(run());
                      } else if (info.model == "smooth") {
                          SmoothModel m(SampledEq{1e-6, 40, 42});
                          SmoothGen gen;
                          auto c = smooth_combinators(m, info.id);
                          auto run = [&] { return check_cd(m, gen, c.d, LawConfig{42, 40}); };
                          seen = scan(run());
                          again = first_failure(run());
                      } else if (info.model == "closed") {
                          ClosedModel m(ClosedEq{1e-6, 40, 6, 42});
                          ClosedGen gen(m);
                          auto c = closed_combinators(m, info.id);
                          auto run = [&] { return check_l(m, gen, c.l, LawConfig{42, 25}); };
                          seen = scan(run());
                          again = first_failure(run());
                      }
                      if (seen.empty()) {
                          detail = info.id + " was not detected";
                          return false;
                      }
                      if (!expected_law_failed) {
                          detail = info.id + " did not fail its documented law " + info.breaks;
                          return false;
                      }
                      if (seen != again) {
                          detail = info.id + " counterexample is not replayable";
                          return false;
                      }
                  }
                  return true;
              });

    if (g_failures == 0) {
        std::printf("acceptance: all criteria passed\n");
        return 0;
    }
    std::printf("acceptance: %d criterion(s) failed\n", g_failures);
    return 1;
}
