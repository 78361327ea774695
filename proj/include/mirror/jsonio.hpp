// jsonio.hpp
// JSON conversions. Integers are emitted as JSON numbers when they fit in
// 64 bits and as decimal strings otherwise; both forms are accepted on input.
#pragma once

#include <json.hpp>
#include <string>

#include "mirror/error.hpp"
#include "mirror/numeric.hpp"

namespace mirror {

using Json = nlohmann::ordered_json;

inline Json int_to_json(const Int& v) {
    if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max())
        return static_cast<std::int64_t>(v);
    return v.str();
}

inline Int int_from_json(const Json& j) {
    if (j.is_number_integer()) return Int(j.get<std::int64_t>());
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        if (s.empty()) fail(Errc::malformed_input, "empty integer string");
        std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (i == s.size()) fail(Errc::malformed_input, "bad integer string '" + s + "'");
        for (; i < s.size(); ++i)
            if (s[i] < '0' || s[i] > '9') fail(Errc::malformed_input, "bad integer string '" + s + "'");
        return Int(s);
    }
    fail(Errc::malformed_input, "expected integer, got " + std::string(j.type_name()));
}

inline Json intvec_to_json(const IntVec& v) {
    Json a = Json::array();
    for (const auto& x : v) a.push_back(int_to_json(x));
    return a;
}

inline IntVec intvec_from_json(const Json& j) {
    if (!j.is_array()) fail(Errc::malformed_input, "expected array of integers");
    IntVec v;
    v.reserve(j.size());
    for (const auto& x : j) v.push_back(int_from_json(x));
    return v;
}

}  // namespace mirror
