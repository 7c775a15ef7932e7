#pragma once

#include <stdexcept>
#include <string>

namespace idem {

/// Failure codes for every domain-level error the library can raise.
enum class errc {
    indeterminate_sum,
    overflow,
    duplicate_label,
    empty_space,
    mismatched_spaces,
    unknown_point,
    not_normalized,
    no_atoms,
    weight_above_zero,
    non_finite_value,
    non_finite_translate,
    symmetry_violation,
    triangle_violation,
    diameter_exceeds_one,
    non_positive_distance,
    missing_distance,
    not_reaching_top,
    out_of_range,
    kind_mismatch,
    dimension_mismatch,
    empty_probe_set,
    not_strictly_increasing,
    parse_error,
    schema_error,
};

inline const char* errc_name(errc c) {
    switch (c) {
        case errc::indeterminate_sum: return "IndeterminateSum";
        case errc::overflow: return "Overflow";
        case errc::duplicate_label: return "DuplicateLabel";
        case errc::empty_space: return "EmptySpace";
        case errc::mismatched_spaces: return "MismatchedSpaces";
        case errc::unknown_point: return "UnknownPoint";
        case errc::not_normalized: return "NotNormalized";
        case errc::no_atoms: return "NoAtoms";
        case errc::weight_above_zero: return "WeightAboveZero";
        case errc::non_finite_value: return "NonFiniteValue";
        case errc::non_finite_translate: return "NonFiniteTranslate";
        case errc::symmetry_violation: return "SymmetryViolation";
        case errc::triangle_violation: return "TriangleViolation";
        case errc::diameter_exceeds_one: return "DiameterExceedsOne";
        case errc::non_positive_distance: return "NonPositiveDistance";
        case errc::missing_distance: return "MissingDistance";
        case errc::not_reaching_top: return "NotReachingTop";
        case errc::out_of_range: return "OutOfRange";
        case errc::kind_mismatch: return "KindMismatch";
        case errc::dimension_mismatch: return "DimensionMismatch";
        case errc::empty_probe_set: return "EmptyProbeSet";
        case errc::not_strictly_increasing: return "NotStrictlyIncreasing";
        case errc::parse_error: return "ParseError";
        case errc::schema_error: return "SchemaError";
    }
    return "UnknownError";
}

/// Domain error carrying a machine-checkable code alongside the message.
class error : public std::runtime_error {
  public:
    error(errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    errc code() const noexcept { return code_; }

  private:
    errc code_;
};

[[noreturn]] inline void raise(errc code, const std::string& what) { throw error(code, what); }

}  // namespace idem
