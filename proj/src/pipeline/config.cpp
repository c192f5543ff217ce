#include "clonescope/pipeline/config.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <stdexcept>

#include "clonescope/error.hpp"

namespace clonescope::pipeline {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& v, std::size_t line, const std::string& key) {
    double out = 0.0;
    const auto* end = v.data() + v.size();
    const auto [ptr, ec] = std::from_chars(v.data(), end, out);
    if (ec != std::errc() || ptr != end) throw SchemaError(line, "'" + key + "' expects a number, got '" + v + "'");
    return out;
}

int to_int(const std::string& v, std::size_t line, const std::string& key) {
    int out = 0;
    const auto* end = v.data() + v.size();
    const auto [ptr, ec] = std::from_chars(v.data(), end, out);
    if (ec != std::errc() || ptr != end) throw SchemaError(line, "'" + key + "' expects an integer, got '" + v + "'");
    return out;
}

}  // namespace

void RunConfig::validate() const {
    if (!(delta > 0.0 && delta < 1.0)) throw Error("delta must lie in (0, 1)");
    if (!(tau > 0.0 && tau < 1.0)) throw Error("tau must lie in (0, 1)");
    try {
        gbdt::validate(hyper);
    } catch (const std::invalid_argument& e) {
        throw Error(e.what());
    }
}

std::uint64_t parse_seed(const std::string& text) {
    std::uint64_t out = 0;
    const auto t = trim(text);
    const auto* end = t.data() + t.size();
    const auto [ptr, ec] = std::from_chars(t.data(), end, out);
    if (t.empty() || ec != std::errc() || ptr != end) throw Error("invalid seed '" + text + "'");
    return out;
}

RunConfig parse_config(std::istream& in, RunConfig c) {
    std::string raw;
    for (std::size_t line = 1; std::getline(in, raw); ++line) {
        if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        const auto text = trim(raw);
        if (text.empty()) continue;
        const auto eq = text.find('=');
        if (eq == std::string::npos) throw SchemaError(line, "expected key = value");
        const auto key = trim(text.substr(0, eq));
        const auto value = trim(text.substr(eq + 1));
        if (key == "seed") {
            try {
                c.seed = parse_seed(value);
            } catch (const Error&) {
                throw SchemaError(line, "invalid seed '" + value + "'");
            }
        } else if (key == "delta") {
            c.delta = to_double(value, line, key);
        } else if (key == "tau") {
            c.tau = to_double(value, line, key);
        } else if (key == "mode") {
            try {
                c.mode = similarity::mode_from_name(value);
            } catch (const Error& e) {
                throw SchemaError(line, e.what());
            }
        } else if (key == "hyper") {
            c.hyper_path = value;
        } else if (key == "model") {
            c.model_path = value;
        } else if (key == "train") {
            c.train_path = value;
        } else if (key == "json_out") {
            c.json_out = value;
        } else if (key == "text_out") {
            c.text_out = value;
        } else if (key == "num_leaves") {
            c.hyper.num_leaves = to_int(value, line, key);
        } else if (key == "max_depth") {
            c.hyper.max_depth = to_int(value, line, key);
        } else if (key == "learning_rate") {
            c.hyper.learning_rate = to_double(value, line, key);
        } else if (key == "num_rounds") {
            c.hyper.num_rounds = to_int(value, line, key);
        } else if (key == "min_samples_leaf") {
            c.hyper.min_samples_leaf = to_int(value, line, key);
        } else if (key == "feature_fraction") {
            c.hyper.feature_fraction = to_double(value, line, key);
        } else if (key == "bagging_fraction") {
            c.hyper.bagging_fraction = to_double(value, line, key);
        } else {
            throw SchemaError(line, "unknown key '" + key + "'");
        }
    }
    return c;
}

RunConfig load_config(const std::filesystem::path& path, RunConfig base) {
    std::ifstream in(path);
    if (!in) throw Error("cannot read " + path.string());
    try {
        return parse_config(in, std::move(base));
    } catch (const SchemaError& e) {
        throw Error(path.string() + ": " + e.what());
    }
}

void apply_environment(RunConfig& config) {
    if (const char* s = std::getenv("CLONESCOPE_SEED"); s && *s) config.seed = parse_seed(s);
}

}  // namespace clonescope::pipeline
