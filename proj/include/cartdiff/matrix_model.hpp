#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "cartdiff/combinators.hpp"
#include "cartdiff/core.hpp"
#include "cartdiff/rational.hpp"
#include "cartdiff/rng.hpp"
#include "cartdiff/shape.hpp"

namespace cartdiff {

/// A linear map between flattened shapes: rows indexed by codomain
/// leaves, columns by domain leaves. Products are direct sums.
struct MatrixMap {
    Shape dom, cod;
    // rows x cols, dense; row-major.
    std::vector<std::vector<Rational>> entries;

    MatrixMap(Shape d, Shape c)
        : dom(std::move(d)), cod(std::move(c)),
          entries(cod.leaves(), std::vector<Rational>(dom.leaves())) {}

    int rows() const { return static_cast<int>(entries.size()); }
    int cols() const { return rows() == 0 ? dom.leaves() : static_cast<int>(entries[0].size()); }

    bool operator==(const MatrixMap& o) const {
        return dom == o.dom && cod == o.cod && entries == o.entries;
    }

    /// Matrix literal: `[[1,0],[2,3]]`.
    std::string str() const {
        std::ostringstream os;
        os << "[";
        for (int r = 0; r < rows(); ++r) {
            if (r) os << ",";
            os << "[";
            for (int c = 0; c < cols(); ++c) {
                if (c) os << ",";
                os << entries[r][c].str();
            }
            os << "]";
        }
        os << "]";
        return os.str();
    }
};

/// The degenerate sanity model: every morphism is linear by construction
/// and the derivative just projects the second argument; all suites must
/// come out exactly true, which validates the harness itself.
class BiproductModel {
public:
    using Morphism = MatrixMap;

    std::string name() const { return "biproduct"; }

    Shape dom(const Morphism& f) const { return f.dom; }
    Shape cod(const Morphism& f) const { return f.cod; }

    Morphism id(const Shape& a) const {
        MatrixMap m(a, a);
        for (int i = 0; i < m.rows(); ++i) m.entries[i][i] = Rational(1);
        return m;
    }

    Morphism compose(const Morphism& f, const Morphism& g) const {
        require_same_shape(f.cod, g.dom, "compose");
        MatrixMap m(f.dom, g.cod);
        for (int r = 0; r < m.rows(); ++r)
            for (int c = 0; c < m.cols(); ++c) {
                Rational acc(0);
                for (int k = 0; k < f.rows(); ++k) acc += g.entries[r][k] * f.entries[k][c];
                m.entries[r][c] = acc;
            }
        return m;
    }

    Morphism pair(const Morphism& f, const Morphism& g) const {
        require_same_shape(f.dom, g.dom, "pair");
        MatrixMap m(f.dom, Shape::prod(f.cod, g.cod));
        for (int r = 0; r < f.rows(); ++r) m.entries[r] = f.entries[r];
        for (int r = 0; r < g.rows(); ++r) m.entries[f.rows() + r] = g.entries[r];
        return m;
    }

    Morphism proj0(const Shape& a, const Shape& b) const {
        MatrixMap m(Shape::prod(a, b), a);
        for (int i = 0; i < a.leaves(); ++i) m.entries[i][i] = Rational(1);
        return m;
    }

    Morphism proj1(const Shape& a, const Shape& b) const {
        MatrixMap m(Shape::prod(a, b), b);
        for (int i = 0; i < b.leaves(); ++i) m.entries[i][a.leaves() + i] = Rational(1);
        return m;
    }

    Morphism add(const Morphism& f, const Morphism& g) const {
        require_same_shape(f.dom, g.dom, "add");
        require_same_shape(f.cod, g.cod, "add");
        MatrixMap m(f.dom, f.cod);
        for (int r = 0; r < m.rows(); ++r)
            for (int c = 0; c < m.cols(); ++c)
                m.entries[r][c] = f.entries[r][c] + g.entries[r][c];
        return m;
    }

    Morphism zero(const Shape& a, const Shape& b) const { return MatrixMap(a, b); }

    bool equal(const Morphism& f, const Morphism& g) const {
        require_same_shape(f.dom, g.dom, "matrix_eq");
        require_same_shape(f.cod, g.cod, "matrix_eq");
        return f.entries == g.entries;
    }

    std::string show(const Morphism& f) const { return f.str(); }
    EqContract eq_contract() const { return EqContract::make_exact(); }

    /// D[f] = pi1 f: the block matrix [0 | f] on the doubled domain.
    DiffCombinator<BiproductModel> differential() const {
        return [this](const Morphism& f) {
            MatrixMap m(Shape::prod(f.dom, f.dom), f.cod);
            int n = f.dom.leaves();
            for (int r = 0; r < f.rows(); ++r)
                for (int c = 0; c < f.cols(); ++c) m.entries[r][n + c] = f.entries[r][c];
            return m;
        };
    }
};

/// Generator for matrix instances; every map is already additive, so the
/// reduced and additive draws coincide with the general one.
class MatrixGen {
public:
    Shape shape(Rng& rng, int cap = 3) const {
        int n = static_cast<int>(rng.range(1, cap));
        return build(rng, n);
    }
    Shape small_shape(Rng& rng) const { return shape(rng, 2); }

    MatrixMap map(Rng& rng, const Shape& dom, const Shape& cod) const {
        MatrixMap m(dom, cod);
        for (auto& row : m.entries)
            for (auto& e : row) e = Rational(rng.range(-2, 2));
        return m;
    }
    MatrixMap reduced_map(Rng& rng, const Shape& dom, const Shape& cod) const {
        return map(rng, dom, cod);
    }
    MatrixMap additive_map(Rng& rng, const Shape& dom, const Shape& cod) const {
        return map(rng, dom, cod);
    }

    template <class StillFails>
    std::vector<MatrixMap> shrink(std::vector<MatrixMap> inputs, StillFails&& fails) const {
        bool changed = true;
        int round = 0;
        while (changed && round++ < 32) {
            changed = false;
            for (auto& mm : inputs)
                for (auto& row : mm.entries)
                    for (auto& e : row) {
                        if (e.is_zero()) continue;
                        Rational saved = e;
                        e = Rational(0);
                        if (fails(inputs)) {
                            changed = true;
                        } else {
                            e = saved;
                        }
                    }
        }
        return inputs;
    }

private:
    Shape build(Rng& rng, int leaves) const {
        if (leaves <= 1) return Shape::ground();
        int left = static_cast<int>(rng.range(1, leaves - 1));
        return Shape::prod(build(rng, left), build(rng, leaves - left));
    }
};

} // namespace cartdiff
