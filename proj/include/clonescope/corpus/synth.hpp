#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "clonescope/corpus/pairs_io.hpp"
#include "clonescope/corpus/transforms.hpp"

namespace clonescope::corpus {

/// Positives are (f, t(f)) for every base function f and transform t, in base
/// order. Negatives follow: round(negative_ratio * positives) distinct pairs
/// whose sides come from different bases, each side being the base itself or
/// one of its variants. Deterministic in seed. Throws clonescope::Error if a
/// base function does not parse.
std::vector<PairRecord> synthesize_clones(std::span<const std::string> base_functions,
                                          std::span<const Transform> transforms, std::uint64_t seed,
                                          double negative_ratio = 2.0);

}  // namespace clonescope::corpus
