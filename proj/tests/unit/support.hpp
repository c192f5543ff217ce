#pragma once

#include <string>
#include <vector>

#include "clonescope/classifier/gbdt.hpp"
#include "clonescope/corpus/pairs_io.hpp"
#include "clonescope/corpus/statement_pairs.hpp"
#include "clonescope/corpus/synth.hpp"
#include "clonescope/corpus/templates.hpp"
#include "clonescope/rng.hpp"

namespace clonescope::fixtures {

inline const std::vector<std::string>& small_templates() {
    static const auto t = corpus::generate_templates(12, 77);
    return t;
}

inline const std::vector<corpus::PairRecord>& small_corpus() {
    static const auto records = corpus::synthesize_clones(small_templates(), corpus::all_transforms(), 78);
    return records;
}

// Statement-pair classifier shared by the tests that need a trained model.
inline const gbdt::GbdtModel& small_model() {
    static const gbdt::GbdtModel m = [] {
        corpus::StatementPairOptions o;
        o.seed = 79;
        gbdt::HyperPoint h;
        h.num_rounds = 40;
        h.min_samples_leaf = 5;
        return gbdt::train(corpus::derive_statement_pairs(small_corpus(), o), h, 80);
    }();
    return m;
}

}  // namespace clonescope::fixtures
