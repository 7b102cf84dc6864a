#pragma once

#include <string>

namespace cartdiff {

/// Worked example of partial linearization in each factor and the
/// interchange of the two passes.
std::string demo_interchange();

/// Narrative demonstration that total linearization does not force
/// partial linearization once maps are merely continuously differentiable.
std::string demo_c1();

} // namespace cartdiff
