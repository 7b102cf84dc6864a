#include "cartdiff/shape.hpp"

#include <cstddef>

namespace cartdiff {

Shape Shape::ground(int id) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Ground;
    n->gid = id;
    return Shape(std::move(n));
}

Shape Shape::unit() {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Unit;
    return Shape(std::move(n));
}

Shape Shape::prod(const Shape& a, const Shape& b) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Prod;
    n->a = a.node_;
    n->b = b.node_;
    return Shape(std::move(n));
}

Shape Shape::hom(const Shape& a, const Shape& b) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Hom;
    n->a = a.node_;
    n->b = b.node_;
    return Shape(std::move(n));
}

Shape Shape::doubled(const Shape& a, int times) {
    Shape s = a;
    for (int i = 0; i < times; ++i) s = prod(s, s);
    return s;
}

Shape Shape::left() const {
    if (!is_prod() && !is_hom())
        throw ShapeError("shape " + str() + " has no left component");
    return Shape(node_->a);
}

Shape Shape::right() const {
    if (!is_prod() && !is_hom())
        throw ShapeError("shape " + str() + " has no right component");
    return Shape(node_->b);
}

int Shape::leaves() const {
    switch (kind()) {
        case Kind::Ground: return 1;
        case Kind::Unit: return 0;
        case Kind::Prod: return left().leaves() + right().leaves();
        case Kind::Hom:
            throw ShapeError("shape " + str() + " has a function space, no flat leaf list");
    }
    return 0;
}

bool Shape::hom_free() const {
    switch (kind()) {
        case Kind::Ground:
        case Kind::Unit: return true;
        case Kind::Prod: return left().hom_free() && right().hom_free();
        case Kind::Hom: return false;
    }
    return true;
}

int Shape::depth() const {
    if (is_prod() || is_hom()) return 1 + std::max(left().depth(), right().depth());
    return 0;
}

bool Shape::operator==(const Shape& o) const {
    if (node_ == o.node_) return true;
    if (kind() != o.kind()) return false;
    switch (kind()) {
        case Kind::Ground: return ground_id() == o.ground_id();
        case Kind::Unit: return true;
        case Kind::Prod:
        case Kind::Hom: return left() == o.left() && right() == o.right();
    }
    return false;
}

std::string Shape::str() const {
    switch (kind()) {
        case Kind::Ground:
            return ground_id() == 0 ? "R" : "R" + std::to_string(ground_id());
        case Kind::Unit: return "1";
        case Kind::Prod: return "(" + left().str() + "*" + right().str() + ")";
        case Kind::Hom: return "[" + left().str() + "," + right().str() + "]";
    }
    return "?";
}

namespace {

Shape parse_shape(const std::string& s, std::size_t& i) {
    auto fail = [&](const char* msg) {
        throw ShapeError(std::string("bad shape syntax at offset ") + std::to_string(i) +
                         ": " + msg + " in `" + s + "`");
    };
    if (i >= s.size()) fail("unexpected end");
    char ch = s[i];
    if (ch == 'R') {
        ++i;
        std::size_t start = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        int id = start == i ? 0 : std::stoi(s.substr(start, i - start));
        return Shape::ground(id);
    }
    if (ch == '1') {
        ++i;
        return Shape::unit();
    }
    if (ch == '(') {
        ++i;
        Shape a = parse_shape(s, i);
        if (i >= s.size() || s[i] != '*') fail("expected `*`");
        ++i;
        Shape b = parse_shape(s, i);
        if (i >= s.size() || s[i] != ')') fail("expected `)`");
        ++i;
        return Shape::prod(a, b);
    }
    if (ch == '[') {
        ++i;
        Shape a = parse_shape(s, i);
        if (i >= s.size() || s[i] != ',') fail("expected `,`");
        ++i;
        Shape b = parse_shape(s, i);
        if (i >= s.size() || s[i] != ']') fail("expected `]`");
        ++i;
        return Shape::hom(a, b);
    }
    fail("expected `R`, `1`, `(` or `[`");
    return Shape::unit();
}

} // namespace

Shape Shape::parse(const std::string& text) {
    std::size_t i = 0;
    Shape s = parse_shape(text, i);
    if (i != text.size())
        throw ShapeError("trailing characters after shape in `" + text + "`");
    return s;
}

void require_same_shape(const Shape& a, const Shape& b, const char* where) {
    if (a != b)
        throw ShapeError(std::string(where) + ": shape mismatch between " + a.str() +
                         " and " + b.str());
}

} // namespace cartdiff
