#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>

namespace cartdiff {

/// Error raised whenever two shapes that should agree do not. The message
/// always names both offending shapes in canonical bracketed syntax.
class ShapeError : public std::runtime_error {
public:
    explicit ShapeError(const std::string& what) : std::runtime_error(what) {}
};

/// A finite binary product tree over ground objects. `R` is the ground
/// object, `1` the terminal object, `(S*T)` a binary product and `[S,T]`
/// a function space (used only by the closed model). Equality is
/// structural; immutable and cheap to copy.
class Shape {
public:
    enum class Kind : std::uint8_t { Ground, Unit, Prod, Hom };

    static Shape ground(int id = 0);
    static Shape unit();
    static Shape prod(const Shape& a, const Shape& b);
    static Shape hom(const Shape& a, const Shape& b);

    /// n-fold doubling P(A) = A*A applied n times.
    static Shape doubled(const Shape& a, int times);

    Kind kind() const { return node_->kind; }
    bool is_ground() const { return kind() == Kind::Ground; }
    bool is_unit() const { return kind() == Kind::Unit; }
    bool is_prod() const { return kind() == Kind::Prod; }
    bool is_hom() const { return kind() == Kind::Hom; }
    int ground_id() const { return node_->gid; }

    /// Left/right child of a Prod or Hom node.
    Shape left() const;
    Shape right() const;

    /// Number of scalar leaves in left-to-right order (Unit contributes
    /// zero). Rejects shapes containing Hom nodes.
    int leaves() const;

    /// True when no Hom node occurs anywhere in the tree.
    bool hom_free() const;

    int depth() const;

    bool operator==(const Shape& o) const;
    bool operator!=(const Shape& o) const { return !(*this == o); }

    /// Canonical syntax, e.g. `((R*R)*1)` or `[R,(R*R)]`.
    std::string str() const;

    static Shape parse(const std::string& text);

private:
    struct Node {
        Kind kind;
        int gid = 0;
        std::shared_ptr<const Node> a, b;
    };
    explicit Shape(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

/// Throws ShapeError mentioning both shapes unless they are equal.
void require_same_shape(const Shape& a, const Shape& b, const char* where);

} // namespace cartdiff
