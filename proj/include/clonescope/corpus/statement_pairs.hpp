#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "clonescope/classifier/gbdt.hpp"
#include "clonescope/corpus/pairs_io.hpp"
#include "clonescope/frontend/ast.hpp"

namespace clonescope::corpus {

/// Structural fingerprint of a statement: the node-kind tree with operator,
/// member, type and unit spellings kept, identifiers and literal values
/// erased.
std::string skeleton(const AstNode& node);

struct StatementPairOptions {
    double negative_ratio = 2.0;
    std::size_t max_positives = 2000;
    std::uint64_t seed = 0;
};

/// Statement-tree pairs drawn from the functions of each record. A pair is
/// labeled 1 when both trees have the same skeleton. All positives are kept
/// up to max_positives; negatives are sampled at negative_ratio per positive,
/// half of them between trees of the same statement kind.
std::vector<gbdt::LabeledPair> derive_statement_pairs(std::span<const PairRecord> records,
                                                      const StatementPairOptions& options);

}  // namespace clonescope::corpus
