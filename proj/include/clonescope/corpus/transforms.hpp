#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "clonescope/rng.hpp"

namespace clonescope::corpus {

enum class Transform {
    RenameIdentifiers,
    ReorderIndependentStatements,
    InsertDeadCode,
    ConstantPerturbation,
};

inline constexpr std::size_t kTransformCount = 4;

std::string_view transform_name(Transform t) noexcept;
std::optional<Transform> transform_from_name(std::string_view name) noexcept;
std::vector<Transform> all_transforms();

/// Renames every user identifier to a0, a1, ... in order of first
/// appearance. Builtins (msg, require, keccak256, ...), member names after
/// '.', and names used as types are kept. Works on any token sequence.
std::string rename_identifiers(std::string_view source);

/// Swaps one randomly chosen pair of adjacent top-level statements that
/// neither read what the other writes nor have external effects. Returns the
/// input unchanged when no such pair exists.
std::string reorder_independent_statements(std::string_view function_source, Rng& rng);

/// Inserts floor(fraction * n) lines `uint __dK = 0;` before randomly chosen
/// top-level statements, n being the statement count.
std::string insert_dead_code(std::string_view function_source, Rng& rng, double fraction = 0.2);

/// Shifts decimal integer literals >= 2 by +1..+9. Each literal changes with
/// probability 1/2; at least one changes when any is eligible.
std::string perturb_constants(std::string_view function_source, Rng& rng);

std::string apply_transform(Transform t, std::string_view function_source, Rng& rng);

}  // namespace clonescope::corpus
