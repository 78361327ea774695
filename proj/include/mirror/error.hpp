// error.hpp
// Error taxonomy shared across the library; the CLI maps codes to exit codes.
#pragma once

#include <stdexcept>
#include <string>

namespace mirror {

enum class Errc {
    malformed_input,
    non_standard_simplex,
    not_covering,
    bad_face_intersection,
    origin_missing,
    base_cell_without_origin,
    not_adjacent,
    cone_not_smooth,
    rank_zero_q,
    outside_tangent_wedge,
    override_not_convex,
    constant_term_not_one,
    truncation_overflow,
    vertex_not_interior,
    leaf_cap_exceeded,
    integrality,
    internal,
};

inline const char* errc_name(Errc c) {
    switch (c) {
        case Errc::malformed_input: return "MALFORMED_INPUT";
        case Errc::non_standard_simplex: return "NON_STANDARD_SIMPLEX";
        case Errc::not_covering: return "NOT_COVERING";
        case Errc::bad_face_intersection: return "BAD_FACE_INTERSECTION";
        case Errc::origin_missing: return "ORIGIN_MISSING";
        case Errc::base_cell_without_origin: return "BASE_CELL_WITHOUT_ORIGIN";
        case Errc::not_adjacent: return "NOT_ADJACENT";
        case Errc::cone_not_smooth: return "CONE_NOT_SMOOTH";
        case Errc::rank_zero_q: return "RANK_ZERO_Q";
        case Errc::outside_tangent_wedge: return "OUTSIDE_TANGENT_WEDGE";
        case Errc::override_not_convex: return "OVERRIDE_NOT_CONVEX";
        case Errc::constant_term_not_one: return "CONSTANT_TERM_NOT_ONE";
        case Errc::truncation_overflow: return "TRUNCATION_OVERFLOW";
        case Errc::vertex_not_interior: return "VERTEX_NOT_INTERIOR";
        case Errc::leaf_cap_exceeded: return "LEAF_CAP_EXCEEDED";
        case Errc::integrality: return "INTEGRALITY";
        case Errc::internal: return "INTERNAL";
    }
    return "UNKNOWN";
}

class Error : public std::runtime_error {
  public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
    Errc code() const { return code_; }

  private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

inline void require(bool ok, Errc code, const std::string& what) {
    if (!ok) fail(code, what);
}

}  // namespace mirror
