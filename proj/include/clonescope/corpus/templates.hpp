#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "clonescope/rng.hpp"

namespace clonescope::corpus {

/// Random function in the supported subset: a one-line header followed by
/// 5 to 9 top-level statements, one per line (blocks span several lines).
std::string generate_function(Rng& rng, const std::string& name);

/// `count` functions named t0, t1, ... from independent random streams.
std::vector<std::string> generate_templates(std::size_t count, std::uint64_t seed);

}  // namespace clonescope::corpus
