#include "mirror/fixtures.hpp"

namespace mirror {

std::vector<std::string> fixture_names() { return {"interval", "local-p2", "star-square", "simplex"}; }

bool is_fixture(const std::string& name) {
    for (const auto& n : fixture_names())
        if (n == name) return true;
    return false;
}

std::string fixture_json(const std::string& name) {
    if (name == "interval") {
        return R"({"dim": 1,
                   "vertices": [[-1], [0], [1]],
                   "maximal_cells": [[0, 1], [1, 2]],
                   "base_cell": 0})";
    }
    if (name == "local-p2") {
        return R"({"dim": 2,
                   "vertices": [[1, 0], [0, 1], [-1, -1], [0, 0]],
                   "maximal_cells": [[3, 0, 1], [3, 1, 2], [3, 2, 0]],
                   "base_cell": 0})";
    }
    if (name == "star-square") {
        return R"({"dim": 2,
                   "vertices": [[0, 0], [1, 0], [0, 1], [-1, 0], [0, -1]],
                   "maximal_cells": [[0, 1, 2], [0, 2, 3], [0, 3, 4], [0, 4, 1]],
                   "base_cell": 0})";
    }
    if (name == "simplex") {
        return R"({"dim": 1,
                   "vertices": [[0], [1]],
                   "maximal_cells": [[0, 1]],
                   "base_cell": 0})";
    }
    fail(Errc::malformed_input, "unknown fixture '" + name + "'");
}

Decomposition load_fixture(const std::string& name) {
    Decomposition dec = parse_decomposition(fixture_json(name));
    require_valid(dec);
    return dec;
}

}  // namespace mirror
