#pragma once

#include <cctype>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "cartdiff/combinators.hpp"
#include "cartdiff/core.hpp"
#include "cartdiff/report.hpp"
#include "cartdiff/rng.hpp"
#include "cartdiff/smooth.hpp"

namespace cartdiff {

struct LawConfig {
    std::uint64_t seed = 42;
    int cases = 500;
};

namespace detail {

template <class M, class Gen>
concept HasShrink = requires(const Gen g, std::vector<typename M::Morphism> v) {
    g.shrink(v, [](const std::vector<typename M::Morphism>&) { return true; });
};

template <class M>
concept HasSaltedEqual = requires(const M m, const typename M::Morphism f, std::uint64_t s) {
    { m.equal_salted(f, f, s) } -> std::same_as<bool>;
};

} // namespace detail

/// One generated law instance: named inputs plus the predicate deciding
/// whether the law holds for them. Shrinking rewrites the inputs only.
template <class M>
struct LawCase {
    std::vector<std::pair<std::string, typename M::Morphism>> inputs;
    std::function<bool(const std::vector<typename M::Morphism>&)> holds;
    /// Extra context for the counterexample line, e.g. the drawn shapes.
    std::string note = {};
};

/// Runs a batch of cases for one law and aggregates a report. Each case
/// draws from its own stream of (suite seed, law id, case index), so
/// results do not depend on evaluation order.
template <class M, class Gen>
class LawRunner {
public:
    LawRunner(const M& m, const Gen& gen, LawConfig cfg) : m_(m), gen_(gen), cfg_(cfg) {}

    template <class MakeCase>
    void law(const std::string& id, MakeCase&& make_case) {
        LawReport rep;
        rep.law = id;
        rep.model = m_.name();
        rep.seed = cfg_.seed;
        rep.eq = m_.eq_contract();
        int made = 0;
        for (int i = 0; i < cfg_.cases; ++i) {
            Rng rng = case_stream(cfg_.seed, id, static_cast<std::uint64_t>(i));
            std::optional<LawCase<M>> c = make_case(rng);
            if (!c) continue;
            std::vector<typename M::Morphism> ms;
            ms.reserve(c->inputs.size());
            for (auto& [name, mo] : c->inputs) ms.push_back(mo);
            bool ok;
            std::string breakage;
            try {
                ok = c->holds(ms);
            } catch (const SampleError&) {
                // Sampling could not decide this instance; it is dropped,
                // never counted as a pass.
                continue;
            } catch (const ShapeError& e) {
                // The combinator under test produced an ill-typed
                // morphism: that falsifies the law.
                ok = false;
                breakage = e.what();
            } catch (const std::out_of_range& e) {
                // Depth underflow from a runaway combinator, same verdict.
                ok = false;
                breakage = e.what();
            } catch (const std::invalid_argument& e) {
                ok = false;
                breakage = e.what();
            }
            for (auto& ch : breakage)
                if (std::isspace(static_cast<unsigned char>(ch))) ch = '_';
            ++made;
            if (!ok) {
                rep.cases = made;
                rep.status = LawStatus::Fail;
                if constexpr (detail::HasShrink<M, Gen>) {
                    auto fails = [&](const std::vector<typename M::Morphism>& v) {
                        try {
                            return !c->holds(v);
                        } catch (const SampleError&) {
                            return false;
                        } catch (const ShapeError&) {
                            return true;
                        } catch (const std::out_of_range&) {
                            return true;
                        } catch (const std::invalid_argument&) {
                            return true;
                        }
                    };
                    ms = gen_.shrink(ms, fails);
                }
                std::ostringstream os;
                os << "case#" << i;
                if (!breakage.empty()) os << ";shape-error:" << breakage;
                if (!c->note.empty()) os << ";" << c->note;
                for (std::size_t k = 0; k < ms.size(); ++k)
                    os << ";" << c->inputs[k].first << "=" << m_.show(ms[k]);
                rep.counterexample = os.str();
                reports_.push_back(rep);
                return;
            }
        }
        rep.cases = made;
        rep.status = made == 0 ? LawStatus::Skip : LawStatus::Pass;
        reports_.push_back(rep);
    }

    std::vector<LawReport> take() { return std::move(reports_); }

private:
    const M& m_;
    const Gen& gen_;
    LawConfig cfg_;
    std::vector<LawReport> reports_;
};

/// The seven differential combinator axioms.
template <Model M, class Gen>
std::vector<LawReport> check_cd(const M& m, const Gen& gen, const DiffCombinator<M>& d,
                                LawConfig cfg) {
    LawRunner<M, Gen> run(m, gen, cfg);
    using Case = LawCase<M>;

    run.law("CD.1", [&](Rng& rng) -> std::optional<Case> {
        Shape a = gen.shape(rng), b = gen.shape(rng);
        auto f = gen.map(rng, a, b), g = gen.map(rng, a, b);
        return Case{{{"f", f}, {"g", g}},
                    [&m, &d, a, b](const auto& v) {
                        if (!m.equal(d(m.add(v[0], v[1])), m.add(d(v[0]), d(v[1])))) return false;
                        Shape aa = Shape::prod(a, a);
                        return m.equal(d(m.zero(a, b)), m.zero(aa, b));
                    }};
    });

    run.law("CD.2", [&](Rng& rng) -> std::optional<Case> {
        Shape a = gen.shape(rng), b = gen.shape(rng);
        auto f = gen.map(rng, a, b);
        return Case{{{"f", f}}, [&m, &d, a, b](const auto& v) {
                        auto df = d(v[0]);
                        auto via_sum = m.compose(prod_map(m, m.id(a), oplus(m, a)), df);
                        auto p0 = m.compose(prod_map(m, m.id(a), m.proj0(a, a)), df);
                        auto p1 = m.compose(prod_map(m, m.id(a), m.proj1(a, a)), df);
                        if (!m.equal(via_sum, m.add(p0, p1))) return false;
                        return m.equal(m.compose(id_zero(m, a, a), df), m.zero(a, b));
                    }};
    });

    run.law("CD.3", [&](Rng& rng) -> std::optional<Case> {
        Shape a = gen.shape(rng), b = gen.shape(rng);
        return Case{{},
                    [&m, &d, a, b](const auto&) {
                        if (!m.equal(d(m.id(a)), m.proj1(a, a))) return false;
                        Shape ab = Shape::prod(a, b);
                        auto pi1 = m.proj1(ab, ab);
                        if (!m.equal(d(m.proj0(a, b)), m.compose(pi1, m.proj0(a, b))))
                            return false;
                        return m.equal(d(m.proj1(a, b)), m.compose(pi1, m.proj1(a, b)));
                    },
                    "A=" + a.str() + ";B=" + b.str()};
    });

    run.law("CD.4", [&](Rng& rng) -> std::optional<Case> {
        Shape a = gen.shape(rng), b = gen.shape(rng), c = gen.shape(rng);
        auto f = gen.map(rng, a, b), g = gen.map(rng, a, c);
        return Case{{{"f", f}, {"g", g}}, [&m, &d](const auto& v) {
                        return m.equal(d(m.pair(v[0], v[1])), m.pair(d(v[0]), d(v[1])));
                    }};
    });

    run.law("CD.5", [&](Rng& rng) -> std::optional<Case> {
        Shape a = gen.shape(rng), b = gen.shape(rng), c = gen.shape(rng);
        auto f = gen.map(rng, a, b), g = gen.map(rng, b, c);
        return Case{{{"f", f}, {"g", g}}, [&m, &d, a](const auto& v) {
                        auto lhs = d(m.compose(v[0], v[1]));
                        auto first = m.compose(m.proj0(a, a), v[0]);
                        auto rhs = m.compose(m.pair(first, d(v[0])), d(v[1]));
                        return m.equal(lhs, rhs);
                    }};
    });

    run.law("CD.6", [&](Rng& rng) -> std::optional<Case> {
        Shape a = gen.shape(rng), b = gen.shape(rng);
        auto f = gen.map(rng, a, b);
        return Case{{{"f", f}}, [&m, &d, a](const auto& v) {
                        auto df = d(v[0]);
                        return m.equal(m.compose(lift(m, a, a, a, a), d(df)), df);
                    }};
    });

    run.law("CD.7", [&](Rng& rng) -> std::optional<Case> {
        Shape a = gen.shape(rng), b = gen.shape(rng);
        auto f = gen.map(rng, a, b);
        return Case{{{"f", f}}, [&m, &d, a](const auto& v) {
                        auto ddf = d(d(v[0]));
                        return m.equal(m.compose(interchange(m, a, a, a, a), ddf), ddf);
                    }};
    });

    return run.take();
}

/// The six linearizing combinator axioms plus the constant / reduced /
/// semi-additive composite simplifications.
template <Model M, class Gen>
std::vector<LawReport> check_l(const M& m, const Gen& gen, const LinCombinator<M>& l,
                               LawConfig cfg) {
    LawRunner<M, Gen> run(m, gen, cfg);
    using Case = LawCase<M>;

    run.law("L.1", [&](Rng& rng) -> std::optional<Case> {
        Shape a = gen.shape(rng), b = gen.shape(rng);
        auto f = gen.map(rng, a, b), g = gen.map(rng, a, b);
        return Case{{{"f", f}, {"g", g}}, [&m, &l, a, b](const auto& v) {
                        if (!m.equal(l(m.add(v[0], v[1])), m.add(l(v[0]), l(v[1]))))
                            return false;
                        return m.equal(l(m.zero(a, b)), m.zero(a, b));
                    }};
    });

    run.law("L.2", [&](Rng& rng) -> std::optional<Case> {
        Shape a = gen.shape(rng), b = gen.shape(rng), z = gen.shape(rng);
        auto f = gen.map(rng, a, b);
        return Case{{{"f", f}}, [&m, &l, a, b, z](const auto& v) {
                        auto lf = l(v[0]);
                        auto via_sum = m.compose(oplus(m, a), lf);
                        auto split = m.add(m.compose(m.proj0(a, a), lf),
                                           m.compose(m.proj1(a, a), lf));
                        if (!m.equal(via_sum, split)) return false;
                        return m.equal(m.compose(m.zero(z, a), lf), m.zero(z, b));
                    }};
    });

    run.law("L.3", [&](Rng& rng) -> std::optional<Case> {
        Shape a = gen.shape(rng), b = gen.shape(rng);
        return Case{{},
                    [&m, &l, a, b](const auto&) {
                        if (!m.equal(l(m.id(a)), m.id(a))) return false;
                        if (!m.equal(l(m.proj0(a, b)), m.proj0(a, b))) return false;
                        return m.equal(l(m.proj1(a, b)), m.proj1(a, b));
                    },
                    "A=" + a.str() + ";B=" + b.str()};
    });

    run.law("L.4", [&](Rng& rng) -> std::optional<Case> {
        Shape a = gen.shape(rng), b = gen.shape(rng), c = gen.shape(rng);
        auto f = gen.map(rng, a, b), g = gen.map(rng, a, c);
        return Case{{{"f", f}, {"g", g}}, [&m, &l](const auto& v) {
                        return m.equal(l(m.pair(v[0], v[1])), m.pair(l(v[0]), l(v[1])));
                    }};
    });

    run.law("L.5", [&](Rng& rng) -> std::optional<Case> {
        Shape a = gen.shape(rng), b = gen.shape(rng), c = gen.shape(rng);
        auto f = gen.map(rng, a, b), g = gen.map(rng, b, c);
        return Case{{{"f", f}, {"g", g}}, [&m, &l, a, b](const auto& v) {
                        auto lhs = l(m.compose(v[0], v[1]));
                        // (1 + 0 f) g, computed literally.
                        auto perturbed = m.add(m.id(b), m.compose(m.zero(b, a), v[0]));
                        auto rhs = m.compose(l(v[0]), l(m.compose(perturbed, v[1])));
                        return m.equal(lhs, rhs);
                    }};
    });

    run.law("L.6", [&](Rng& rng) -> std::optional<Case> {
        auto f = gen.map(rng, gen.shape(rng), gen.shape(rng));
        return Case{{{"f", f}},
                    [&m, &l](const auto& v) { return m.equal(l(l(v[0])), l(v[0])); }};
    });

    run.law("L.const", [&](Rng& rng) -> std::optional<Case> {
        Shape a = gen.shape(rng), b = gen.shape(rng);
        auto point = gen.map(rng, Shape::unit(), b);
        auto f = m.compose(m.zero(a, Shape::unit()), point);
        return Case{{{"f", f}}, [&m, &l, a, b](const auto& v) {
                        return m.equal(l(v[0]), m.zero(a, b));
                    }};
    });

    run.law("L.reduced", [&](Rng& rng) -> std::optional<Case> {
        Shape a = gen.shape(rng), b = gen.shape(rng), c = gen.shape(rng);
        auto f = gen.reduced_map(rng, a, b);
        auto g = gen.map(rng, b, c);
        return Case{{{"f", f}, {"g", g}}, [&m, &l](const auto& v) {
                        return m.equal(l(m.compose(v[0], v[1])),
                                       m.compose(l(v[0]), l(v[1])));
                    }};
    });

    run.law("L.semiadd", [&](Rng& rng) -> std::optional<Case> {
        Shape a = gen.shape(rng), b = gen.shape(rng), c = gen.shape(rng);
        auto f = gen.map(rng, a, b);
        auto g = gen.additive_map(rng, b, c);
        return Case{{{"f", f}, {"g", g}}, [&m, &l](const auto& v) {
                        return m.equal(l(m.compose(v[0], v[1])),
                                       m.compose(l(v[0]), l(v[1])));
                    }};
    });

    return run.take();
}

/// The system axioms: the six slice axioms in generated contexts plus the
/// interchange axiom in both forms, the structural interchange/lift
/// identity behind their equivalence, and substitution compatibility.
template <Model M, class Gen>
std::vector<LawReport> check_system(const M& m, const Gen& gen, const LinSystem<M>& lsys,
                                    LawConfig cfg) {
    LawRunner<M, Gen> run(m, gen, cfg);
    using Case = LawCase<M>;

    run.law("LS.1", [&](Rng& rng) -> std::optional<Case> {
        Shape c = gen.small_shape(rng), a = gen.small_shape(rng), b = gen.small_shape(rng);
        Shape ca = Shape::prod(c, a);
        auto f = gen.map(rng, ca, b), g = gen.map(rng, ca, b);
        return Case{{{"f", f}, {"g", g}}, [&m, &lsys, c, ca, b](const auto& v) {
                        if (!m.equal(lsys(c, m.add(v[0], v[1])),
                                     m.add(lsys(c, v[0]), lsys(c, v[1]))))
                            return false;
                        return m.equal(lsys(c, m.zero(ca, b)), m.zero(ca, b));
                    }};
    });

    run.law("LS.2", [&](Rng& rng) -> std::optional<Case> {
        Shape c = gen.small_shape(rng), a = gen.small_shape(rng), b = gen.small_shape(rng);
        auto f = gen.map(rng, Shape::prod(c, a), b);
        return Case{{{"f", f}}, [&m, &lsys, c, a, b](const auto& v) {
                        auto lf = lsys(c, v[0]);
                        return is_additive_in_context(m, c, lf);
                    }};
    });

    run.law("LS.3", [&](Rng& rng) -> std::optional<Case> {
        Shape c = gen.small_shape(rng), a = gen.small_shape(rng), b = gen.small_shape(rng);
        return Case{{},
                    [&m, &lsys, c, a, b](const auto&) {
                        auto pi1 = m.proj1(c, a);
                        if (!m.equal(lsys(c, pi1), pi1)) return false;
                        Shape ab = Shape::prod(a, b);
                        auto p = m.proj1(c, ab);
                        auto pi1pi0 = m.compose(p, m.proj0(a, b));
                        auto pi1pi1 = m.compose(p, m.proj1(a, b));
                        return m.equal(lsys(c, pi1pi0), pi1pi0) &&
                               m.equal(lsys(c, pi1pi1), pi1pi1);
                    },
                    "C=" + c.str() + ";A=" + a.str() + ";B=" + b.str()};
    });

    run.law("LS.4", [&](Rng& rng) -> std::optional<Case> {
        Shape c = gen.small_shape(rng), a = gen.small_shape(rng);
        Shape b = gen.small_shape(rng), d = gen.small_shape(rng);
        Shape ca = Shape::prod(c, a);
        auto f = gen.map(rng, ca, b), g = gen.map(rng, ca, d);
        return Case{{{"f", f}, {"g", g}}, [&m, &lsys, c](const auto& v) {
                        return m.equal(lsys(c, m.pair(v[0], v[1])),
                                       m.pair(lsys(c, v[0]), lsys(c, v[1])));
                    }};
    });

    run.law("LS.5", [&](Rng& rng) -> std::optional<Case> {
        Shape c = gen.small_shape(rng), a = gen.small_shape(rng);
        Shape b = gen.small_shape(rng), d = gen.small_shape(rng);
        auto f = gen.map(rng, Shape::prod(c, a), b);
        auto g = gen.map(rng, Shape::prod(c, b), d);
        return Case{{{"f", f}, {"g", g}}, [&m, &lsys, c, a, b](const auto& v) {
                        Shape ca = Shape::prod(c, a), cb = Shape::prod(c, b);
                        auto pi0 = m.proj0(c, a);
                        auto lhs = lsys(c, m.compose(m.pair(pi0, v[0]), v[1]));
                        // <pi0, pi1 + <pi0,0> f> g, computed literally.
                        auto killed = m.compose(m.pair(m.proj0(c, b), m.zero(cb, a)), v[0]);
                        auto middle = m.pair(m.proj0(c, b), m.add(m.proj1(c, b), killed));
                        auto rhs = m.compose(m.pair(pi0, lsys(c, v[0])),
                                             lsys(c, m.compose(middle, v[1])));
                        return m.equal(lhs, rhs);
                    }};
    });

    run.law("LS.6", [&](Rng& rng) -> std::optional<Case> {
        Shape c = gen.small_shape(rng), a = gen.small_shape(rng), b = gen.small_shape(rng);
        auto f = gen.map(rng, Shape::prod(c, a), b);
        return Case{{{"f", f}}, [&m, &lsys, c](const auto& v) {
                        return m.equal(lsys(c, lsys(c, v[0])), lsys(c, v[0]));
                    }};
    });

    run.law("LS.7", [&](Rng& rng) -> std::optional<Case> {
        Shape c = gen.small_shape(rng), a = gen.small_shape(rng), b = gen.small_shape(rng);
        auto f = gen.map(rng, Shape::prod(c, Shape::prod(a, b)), gen.small_shape(rng));
        return Case{{{"f", f}}, [&m, &lsys, c](const auto& v) {
                        auto [l0, l1] = partial_pair(m, lsys, c, v[0]);
                        auto [l0_then, u1] = partial_pair(m, lsys, c, l1);
                        auto [u0, l1_then] = partial_pair(m, lsys, c, l0);
                        return m.equal(l1_then, l0_then);
                    }};
    });

    run.law("LS.7a", [&](Rng& rng) -> std::optional<Case> {
        Shape c = gen.small_shape(rng), a = gen.small_shape(rng);
        Shape b = gen.small_shape(rng), d = gen.small_shape(rng);
        Shape dom = Shape::prod(Shape::prod(c, a), Shape::prod(b, d));
        auto f = gen.map(rng, dom, gen.small_shape(rng));
        return Case{{{"f", f}}, [&m, &lsys, c, a, b, d](const auto& v) {
                        Shape ca = Shape::prod(c, a), cb = Shape::prod(c, b);
                        auto c_to_f = interchange(m, c, b, a, d);
                        auto c_to_g = interchange(m, c, a, b, d);
                        auto lhs = m.compose(
                            c_to_g, lsys(cb, m.compose(c_to_f, lsys(ca, v[0]))));
                        auto rhs = lsys(
                            ca, m.compose(c_to_g, lsys(cb, m.compose(c_to_f, v[0]))));
                        return m.equal(lhs, rhs);
                    }};
    });

    run.law("LS.cl", [&](Rng& rng) -> std::optional<Case> {
        Shape c = gen.small_shape(rng), a = gen.small_shape(rng);
        Shape b = gen.small_shape(rng), d = gen.small_shape(rng);
        return Case{{},
                    [&m, c, a, b, d](const auto&) {
                        Shape ca = Shape::prod(c, a), bd = Shape::prod(b, d);
                        Shape cb = Shape::prod(c, b), ad = Shape::prod(a, d);
                        Shape x1 = Shape::prod(ca, bd);
                        auto c1 = interchange(m, c, a, b, d);  // X' -> X''
                        auto c2 = interchange(m, c, b, a, d);  // X'' -> X'
                        auto l1 = lift(m, ca, bd, ca, bd);     // X' -> X' x X'
                        auto l2 = lift(m, cb, ad, cb, ad);     // X'' -> X'' x X''
                        auto cbig = interchange(m, x1, x1, x1, x1);
                        auto lhs = m.compose(
                            c1, m.compose(l2, m.compose(prod_map(m, c2, c2),
                                                        m.compose(prod_map(m, l1, l1), cbig))));
                        auto c2x2 = prod_map(m, c2, c2);
                        auto rhs = m.compose(
                            l1, m.compose(prod_map(m, c1, c1),
                                          m.compose(prod_map(m, l2, l2),
                                                    prod_map(m, c2x2, c2x2))));
                        return m.equal(lhs, rhs);
                    },
                    "C=" + c.str() + ";A=" + a.str() + ";B=" + b.str() + ";D=" + d.str()};
    });

    run.law("LS.8", [&](Rng& rng) -> std::optional<Case> {
        Shape c = gen.small_shape(rng), c2 = gen.small_shape(rng), a = gen.small_shape(rng);
        auto f = gen.map(rng, Shape::prod(c, a), gen.small_shape(rng));
        auto h = gen.map(rng, c2, c);
        return Case{{{"f", f}, {"h", h}}, [&m, &lsys, c, c2, a](const auto& v) {
                        auto reindex = prod_map(m, v[1], m.id(a));
                        auto lhs = m.compose(reindex, lsys(c, v[0]));
                        auto rhs = lsys(c2, m.compose(reindex, v[0]));
                        return m.equal(lhs, rhs);
                    }};
    });

    return run.take();
}

/// Verifies that the two interchange formulations agree verdict-for-verdict
/// on a shared corpus: each case evaluates both forms and passes iff their
/// truth values coincide.
template <Model M, class Gen>
std::vector<LawReport> check_interchange_equiv(const M& m, const Gen& gen,
                                               const LinSystem<M>& lsys, LawConfig cfg) {
    LawRunner<M, Gen> run(m, gen, cfg);
    using Case = LawCase<M>;

    run.law("EQ.L7", [&](Rng& rng) -> std::optional<Case> {
        Shape c = gen.small_shape(rng), a = gen.small_shape(rng);
        Shape b = gen.small_shape(rng), d = gen.small_shape(rng);
        auto f = gen.map(rng, Shape::prod(c, Shape::prod(a, b)), gen.small_shape(rng));
        Shape dom = Shape::prod(Shape::prod(c, a), Shape::prod(b, d));
        auto g = gen.map(rng, dom, gen.small_shape(rng));
        return Case{{{"f", f}, {"g", g}}, [&m, &lsys, c, a, b, d](const auto& v) {
                        auto [l0, l1] = partial_pair(m, lsys, c, v[0]);
                        auto [x0, u1] = partial_pair(m, lsys, c, l1);
                        auto [u0, x1] = partial_pair(m, lsys, c, l0);
                        bool v7 = m.equal(x1, x0);
                        Shape ca = Shape::prod(c, a), cb = Shape::prod(c, b);
                        auto c_to_f = interchange(m, c, b, a, d);
                        auto c_to_g = interchange(m, c, a, b, d);
                        auto lhs = m.compose(
                            c_to_g, lsys(cb, m.compose(c_to_f, lsys(ca, v[1]))));
                        auto rhs = lsys(
                            ca, m.compose(c_to_g, lsys(cb, m.compose(c_to_f, v[1]))));
                        bool v7a = m.equal(lhs, rhs);
                        return v7 == v7a;
                    }};
    });

    return run.take();
}

/// The two directions of the differential / system correspondence, plus
/// the total-linearization agreement, as exact morphism identities.
template <Model M, class Gen>
std::vector<LawReport> check_roundtrips(const M& m, const Gen& gen,
                                        const DiffCombinator<M>& d, LawConfig cfg) {
    LawRunner<M, Gen> run(m, gen, cfg);
    using Case = LawCase<M>;
    LinSystem<M> lsys = lc_from_d(m, d);
    DiffCombinator<M> d_back = d_from_system(m, lsys);

    run.law("RT.D", [&](Rng& rng) -> std::optional<Case> {
        auto f = gen.map(rng, gen.shape(rng), gen.shape(rng));
        return Case{{{"f", f}}, [&m, &d, &d_back](const auto& v) {
                        return m.equal(d_back(v[0]), d(v[0]));
                    }};
    });

    run.law("RT.LC", [&](Rng& rng) -> std::optional<Case> {
        Shape c = gen.small_shape(rng), a = gen.small_shape(rng);
        auto f = gen.map(rng, Shape::prod(c, a), gen.small_shape(rng));
        return Case{{{"f", f}}, [&m, &lsys, &d_back, c](const auto& v) {
                        auto rebuilt = lc_from_d(m, d_back);
                        return m.equal(rebuilt(c, v[0]), lsys(c, v[0]));
                    }};
    });

    run.law("RT.L", [&](Rng& rng) -> std::optional<Case> {
        auto f = gen.map(rng, gen.shape(rng), gen.shape(rng));
        return Case{{{"f", f}}, [&m, &d, &lsys](const auto& v) {
                        auto via_system = total_l_from_system(m, lsys);
                        auto direct = l_from_d(m, d);
                        return m.equal(via_system(v[0]), direct(v[0]));
                    }};
    });

    return run.take();
}

/// Linearity characterizations: the zero-evaluation fixed point, the
/// context version through the lifting map, linearity of derivatives in
/// their second argument, and closure of linear maps under the Cartesian
/// left additive operations.
template <Model M, class Gen>
std::vector<LawReport> check_linear_characterizations(const M& m, const Gen& gen,
                                                      const DiffCombinator<M>& d,
                                                      LawConfig cfg) {
    LawRunner<M, Gen> run(m, gen, cfg);
    using Case = LawCase<M>;
    LinCombinator<M> l = l_from_d(m, d);
    LinSystem<M> lsys = lc_from_d(m, d);

    run.law("LIN.char", [&](Rng& rng) -> std::optional<Case> {
        Shape a = gen.shape(rng), b = gen.shape(rng);
        auto raw = gen.map(rng, a, b);
        auto f = rng.chance(1, 2) ? l(raw) : raw;
        return Case{{{"f", f}}, [&m, &d, a](const auto& v) {
                        bool lin = m.equal(d(v[0]), m.compose(m.proj1(a, a), v[0]));
                        auto at_zero = m.compose(zero_id(m, a, a), d(v[0]));
                        bool fixed = m.equal(at_zero, v[0]);
                        if (lin != fixed) return false;
                        // <0,1>D[f] is linear for every f.
                        return m.equal(d(at_zero), m.compose(m.proj1(a, a), at_zero));
                    }};
    });

    run.law("LIN.ctx", [&](Rng& rng) -> std::optional<Case> {
        Shape c = gen.small_shape(rng), a = gen.small_shape(rng);
        auto raw = gen.map(rng, Shape::prod(c, a), gen.small_shape(rng));
        auto f = rng.chance(1, 2) ? lsys(c, raw) : raw;
        return Case{{{"f", f}}, [&m, &d, c, a](const auto& v) {
                        auto dc = d_in_context(m, d, c);
                        auto arg_only = m.compose(prod_map(m, m.id(c), m.proj1(a, a)), v[0]);
                        bool lin_slice = m.equal(dc(v[0]), arg_only);
                        auto lifted = m.compose(lift(m, c, a, c, a), d(v[0]));
                        bool fixed = m.equal(lifted, v[0]);
                        return lin_slice == fixed;
                    }};
    });

    run.law("LIN.D2", [&](Rng& rng) -> std::optional<Case> {
        Shape a = gen.shape(rng);
        auto f = gen.map(rng, a, gen.shape(rng));
        return Case{{{"f", f}}, [&m, &d, a](const auto& v) {
                        auto df = d(v[0]);
                        return m.equal(m.compose(lift(m, a, a, a, a), d(df)), df);
                    }};
    });

    run.law("LIN.closure", [&](Rng& rng) -> std::optional<Case> {
        Shape a = gen.shape(rng), b = gen.shape(rng), c = gen.shape(rng);
        auto f = l(gen.map(rng, a, b));
        auto g = l(gen.map(rng, b, c));
        auto h = l(gen.map(rng, a, b));
        return Case{{{"f", f}, {"g", g}, {"h", h}},
                    [&m, &d, &l, a, b, c](const auto& v) {
                        auto linear = [&](const auto& k) { return m.equal(l(k), k); };
                        if (!linear(m.id(a)) || !linear(m.zero(a, b))) return false;
                        if (!linear(m.proj0(a, b)) || !linear(m.proj1(a, b))) return false;
                        if (!linear(m.compose(v[0], v[1]))) return false;
                        if (!linear(m.pair(v[0], v[2]))) return false;
                        if (!linear(m.add(v[0], v[2]))) return false;
                        return linear(prod_map(m, v[0], v[1]));
                    }};
    });

    return run.take();
}

} // namespace cartdiff
