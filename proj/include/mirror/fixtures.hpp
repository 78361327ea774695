// fixtures.hpp
// Built-in example decompositions, embedded for reproducibility.
#pragma once

#include <string>
#include <vector>

#include "mirror/polytope.hpp"

namespace mirror {

// interval    : σ = [-1,1] split at 0, base cell [-1,0]
// local-p2    : σ = Conv{(1,0),(0,1),(-1,-1)} star-subdivided at the origin
// star-square : σ = Conv{±e1, ±e2} star-subdivided at the origin
// simplex     : σ = Conv{0, 1} as a single cell (rank-0 case)
std::vector<std::string> fixture_names();
bool is_fixture(const std::string& name);
std::string fixture_json(const std::string& name);
Decomposition load_fixture(const std::string& name);

}  // namespace mirror
