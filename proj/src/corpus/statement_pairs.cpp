#include "clonescope/corpus/statement_pairs.hpp"

#include <map>

#include "clonescope/error.hpp"
#include "clonescope/features.hpp"
#include "clonescope/frontend/parser.hpp"
#include "clonescope/rng.hpp"
#include "clonescope/statement_tree.hpp"

namespace clonescope::corpus {

namespace {

struct Prepared {
    std::vector<features::FeatureSet> features;
    std::vector<std::string> skeletons;
};

struct Candidate {
    const Prepared* a;
    const Prepared* b;
    std::size_t i;
    std::size_t j;
};

void append_skeleton(const AstNode& n, std::string& out) {
    out += node_kind_name(n.kind);
    switch (n.kind) {
        case NodeKind::Identifier:
        case NodeKind::NumberLiteral:
        case NodeKind::StringLiteral:
        case NodeKind::BoolLiteral:
            break;
        default:
            if (n.value) out.append(":").append(*n.value);
    }
    if (n.children.empty()) return;
    out += '(';
    for (std::size_t i = 0; i < n.children.size(); ++i) {
        if (i > 0) out += ',';
        append_skeleton(n.children[i], out);
    }
    out += ')';
}

template <class T>
void take_sample(std::vector<T>& pool, std::size_t count, Rng& rng, std::vector<T>& out) {
    count = std::min(count, pool.size());
    for (std::size_t k = 0; k < count; ++k) {
        std::swap(pool[k], pool[k + rng.index(pool.size() - k)]);
        out.push_back(pool[k]);
    }
    pool.erase(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(count));
}

}  // namespace

std::string skeleton(const AstNode& node) {
    std::string out;
    append_skeleton(node, out);
    return out;
}

std::vector<gbdt::LabeledPair> derive_statement_pairs(std::span<const PairRecord> records,
                                                      const StatementPairOptions& options) {
    std::map<std::string, Prepared, std::less<>> cache;
    auto prepare = [&](const std::string& source, const std::string& id) -> const Prepared& {
        auto it = cache.find(source);
        if (it != cache.end()) return it->second;
        Prepared p;
        try {
            for (const auto& t : stree::decompose(frontend::parse_function(source))) {
                p.features.push_back(features::extract_features(t));
                p.skeletons.push_back(skeleton(t.root));
            }
        } catch (const Error& e) {
            throw Error("record " + id + ": " + e.what());
        }
        return cache.emplace(source, std::move(p)).first->second;
    };

    std::vector<Candidate> positives;
    std::vector<Candidate> same_kind;
    std::vector<Candidate> other;
    for (const auto& r : records) {
        const Prepared& a = prepare(r.source_a, r.id);
        const Prepared& b = prepare(r.source_b, r.id);
        for (std::size_t i = 0; i < a.features.size(); ++i) {
            for (std::size_t j = 0; j < b.features.size(); ++j) {
                const Candidate c{&a, &b, i, j};
                if (a.skeletons[i] == b.skeletons[j])
                    positives.push_back(c);
                else if (a.features[i].kind == b.features[j].kind)
                    same_kind.push_back(c);
                else
                    other.push_back(c);
            }
        }
    }

    Rng rng(substream(options.seed, "statement-pairs"));
    std::vector<Candidate> pos;
    take_sample(positives, options.max_positives, rng, pos);
    const auto n_neg = static_cast<std::size_t>(options.negative_ratio * static_cast<double>(pos.size()) + 0.5);
    std::vector<Candidate> neg;
    take_sample(same_kind, n_neg / 2, rng, neg);
    take_sample(other, n_neg - neg.size(), rng, neg);
    if (neg.size() < n_neg) take_sample(same_kind, n_neg - neg.size(), rng, neg);

    std::vector<gbdt::LabeledPair> out;
    out.reserve(pos.size() + neg.size());
    auto emit = [&](const Candidate& c, int y) {
        out.push_back({features::pair_features(c.a->features[c.i], c.b->features[c.j]), y});
    };
    for (const auto& c : pos) emit(c, 1);
    for (const auto& c : neg) emit(c, 0);
    rng.shuffle(out.begin(), out.end());
    return out;
}

}  // namespace clonescope::corpus
