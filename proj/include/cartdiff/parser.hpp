#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "cartdiff/poly.hpp"
#include "cartdiff/smooth.hpp"

namespace cartdiff {

/// Parse failure with the offending position; the CLI prints a caret.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t pos)
        : std::runtime_error(what), position(pos) {}
    std::size_t position;
};

/// Result of parsing an expression: tuple components as symbolic terms,
/// variables split into a context block and an argument block.
/// Variable indices follow ctx_names then arg_names.
struct ParsedExpr {
    std::vector<std::string> ctx_names;
    std::vector<std::string> arg_names;
    std::vector<SmoothTerm::Ptr> comps;
    bool transcendental = false;

    std::vector<std::string> all_names() const {
        std::vector<std::string> names = ctx_names;
        names.insert(names.end(), arg_names.begin(), arg_names.end());
        return names;
    }
};

/// Grammar: integers, rationals `p/q`, variables, `+ - * ^`, parentheses,
/// tuples `[e1,e2,...]`, and (for the smooth model) `sin( ) cos( ) exp( )`.
/// An optional leading `ctx(z1,...) args(x1,...)` declares the blocks;
/// `ctx` may also be supplied separately. Undeclared variables join the
/// argument block in order of first occurrence.
ParsedExpr parse_expression(const std::string& text, const std::vector<std::string>& ctx = {});

/// Left-associated product of ground leaves; zero leaves is the unit.
Shape chain_shape(int leaves);

/// Exact polynomial form; rejects transcendental nodes. The domain is
/// Prod(ctx block, arg block) when a context was declared.
PolyMap to_poly_map(const ParsedExpr& e);

SmoothMap to_smooth_map(const ParsedExpr& e);

/// Fresh names for the direction block of a derivative: single letters
/// not already in use, then indexed fallbacks.
std::vector<std::string> direction_names(std::span<const std::string> used);

/// Multi-line message with a caret under the failing position.
std::string caret_message(const std::string& text, const ParseError& err);

} // namespace cartdiff
