#include "clonescope/corpus/synth.hpp"

#include <cmath>
#include <set>
#include <tuple>

#include "clonescope/error.hpp"
#include "clonescope/frontend/parser.hpp"

namespace clonescope::corpus {

std::vector<PairRecord> synthesize_clones(std::span<const std::string> base_functions,
                                          std::span<const Transform> transforms, std::uint64_t seed,
                                          double negative_ratio) {
    const std::size_t n = base_functions.size();
    // variants[i][0] is the base, variants[i][1 + t] its t-th transform
    std::vector<std::vector<std::string>> variants(n);
    std::vector<PairRecord> out;
    for (std::size_t i = 0; i < n; ++i) {
        try {
            frontend::parse_function(base_functions[i]);
        } catch (const Error& e) {
            throw Error("base function " + std::to_string(i) + ": " + e.what());
        }
        variants[i].push_back(base_functions[i]);
        for (const auto t : transforms) {
            Rng rng(substream(seed, "transform-" + std::to_string(i) + "-" + std::string(transform_name(t))));
            variants[i].push_back(apply_transform(t, base_functions[i], rng));
            PairRecord r;
            r.id = "pos-" + std::to_string(i) + "-" + std::string(transform_name(t));
            r.source_a = base_functions[i];
            r.source_b = variants[i].back();
            r.label = 1;
            r.origin = Origin::SyntheticTransform;
            out.push_back(std::move(r));
        }
    }

    if (n < 2) return out;
    const auto wanted = static_cast<std::size_t>(std::lround(negative_ratio * static_cast<double>(out.size())));
    const std::size_t per_side = transforms.size() + 1;
    const std::size_t capacity = n * (n - 1) / 2 * per_side * per_side;
    Rng rng(substream(seed, "negatives"));
    std::set<std::tuple<std::size_t, std::size_t, std::size_t, std::size_t>> used;
    for (std::size_t k = 0; k < wanted && used.size() < capacity;) {
        std::size_t i = rng.index(n);
        std::size_t j = rng.index(n - 1);
        if (j >= i) ++j;
        std::size_t vi = rng.index(per_side);
        std::size_t vj = rng.index(per_side);
        const auto key = i < j ? std::tuple{i, vi, j, vj} : std::tuple{j, vj, i, vi};
        if (!used.insert(key).second) continue;
        PairRecord r;
        r.id = "neg-" + std::to_string(k);
        r.source_a = variants[i][vi];
        r.source_b = variants[j][vj];
        r.label = 0;
        r.origin = Origin::SyntheticTransform;
        out.push_back(std::move(r));
        ++k;
    }
    return out;
}

}  // namespace clonescope::corpus
