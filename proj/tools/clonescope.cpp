// clonescope command-line driver.
//
// Exit codes: 0 success (compare: not a clone), 1 compare found a clone,
// 2 any error.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "clonescope/classifier/gbdt.hpp"
#include "clonescope/classifier/model_io.hpp"
#include "clonescope/corpus/grouping.hpp"
#include "clonescope/corpus/pairs_io.hpp"
#include "clonescope/corpus/synth.hpp"
#include "clonescope/corpus/templates.hpp"
#include "clonescope/error.hpp"
#include "clonescope/features.hpp"
#include "clonescope/frontend/ast_json.hpp"
#include "clonescope/frontend/parser.hpp"
#include "clonescope/hpo/optimizer.hpp"
#include "clonescope/pipeline/pipeline.hpp"
#include "clonescope/statement_tree.hpp"

namespace fs = std::filesystem;
using namespace clonescope;
using clonescope::ordered_json;

namespace {

void emit_json(const ordered_json& j, const std::string& path) {
    if (path.empty() || path == "-") {
        std::cout << j.dump(2) << "\n";
        return;
    }
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path);
    out << j.dump(2) << "\n";
}

ordered_json function_header(const FunctionAst& fn) {
    ordered_json params = ordered_json::array();
    for (const auto& [name, type] : fn.params) params.push_back({{"name", name}, {"type", type}});
    return {{"name", fn.name},
            {"contract", fn.contract_name},
            {"kind", function_kind_name(fn.kind)},
            {"span", span_to_json(fn.span)},
            {"params", std::move(params)}};
}

FunctionAst function_from(const std::string& file, const std::string& name) {
    return pipeline::load_function({file, name});
}

struct Globals {
    std::string config_path;
    std::optional<std::uint64_t> seed;
};

pipeline::RunConfig make_config(const Globals& g) {
    pipeline::RunConfig c;
    if (!g.config_path.empty()) c = pipeline::load_config(g.config_path);
    pipeline::apply_environment(c);
    if (g.seed) c.seed = *g.seed;
    return c;
}

std::vector<std::string> sol_files(const fs::path& dir) {
    if (!fs::is_directory(dir)) throw Error(dir.string() + " is not a directory");
    std::vector<std::string> files;
    for (const auto& e : fs::directory_iterator(dir))
        if (e.is_regular_file() && e.path().extension() == ".sol") files.push_back(e.path().string());
    std::sort(files.begin(), files.end());
    return files;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Statement-level clone detection for smart-contract functions"};
    app.require_subcommand(1);
    Globals g;
    app.add_option("--config", g.config_path, "key = value run configuration file");
    app.add_option("--seed", g.seed, "run seed (overrides CLONESCOPE_SEED and the config file)");

    // parse
    std::string parse_file;
    std::string parse_json;
    auto* cmd_parse = app.add_subcommand("parse", "Parse a contract file and dump its function ASTs");
    cmd_parse->add_option("file", parse_file)->required();
    cmd_parse->add_option("--json", parse_json, "output path (default stdout)");

    // decompose
    std::string dec_file;
    std::string dec_function;
    bool dec_json = false;
    auto* cmd_dec = app.add_subcommand("decompose", "Split a function into typed statement trees");
    cmd_dec->add_option("file", dec_file)->required();
    cmd_dec->add_option("--function", dec_function, "function name (optional if the file has one)");
    cmd_dec->add_flag("--json", dec_json, "emit JSON");

    // extract
    std::string ext_file;
    std::string ext_function;
    auto* cmd_ext = app.add_subcommand("extract", "Print the category feature bags of each statement tree");
    cmd_ext->add_option("file", ext_file)->required();
    cmd_ext->add_option("--function", ext_function);
    cmd_ext->add_flag("--json", "accepted for symmetry; output is always JSON");

    // train
    std::string train_pairs;
    std::string train_hyper;
    std::string train_out;
    bool train_importance = false;
    auto* cmd_train = app.add_subcommand("train", "Train the statement-pair classifier");
    cmd_train->add_option("--pairs", train_pairs, "PairRecord or feature-level JSONL")->required();
    cmd_train->add_option("--hyper", train_hyper, "hyperparameter JSON (default values otherwise)");
    cmd_train->add_option("--out", train_out, "model output path")->required();
    cmd_train->add_flag("--importance", train_importance, "print the feature-importance table");

    // optimize
    std::string opt_train;
    std::string opt_val;
    std::string opt_out;
    std::string opt_history;
    hpo::OptimizeOptions opt;
    auto* cmd_opt = app.add_subcommand("optimize", "Search classifier hyperparameters");
    cmd_opt->add_option("--train", opt_train)->required();
    cmd_opt->add_option("--val", opt_val)->required();
    cmd_opt->add_option("--budget", opt.budget)->capture_default_str();
    cmd_opt->add_option("--k", opt.k)->capture_default_str();
    cmd_opt->add_option("--steps", opt.steps)->capture_default_str();
    cmd_opt->add_option("--out", opt_out)->required();
    cmd_opt->add_option("--history", opt_history, "JSONL of every true-loss evaluation");

    // compare
    std::string cmp_a;
    std::string cmp_b;
    std::string cmp_model;
    std::string cmp_train;
    std::string cmp_json;
    std::string cmp_text;
    std::optional<double> cmp_delta;
    std::optional<double> cmp_tau;
    std::optional<std::string> cmp_mode;
    bool cmp_print_json = false;
    auto* cmd_cmp = app.add_subcommand("compare", "Compare two functions (exit 1 when they are clones)");
    cmd_cmp->add_option("a", cmp_a, "file.sol[:function]")->required();
    cmd_cmp->add_option("b", cmp_b, "file.sol[:function]")->required();
    cmd_cmp->add_option("--model", cmp_model);
    cmd_cmp->add_option("--train", cmp_train, "training pairs, used when no model is given");
    cmd_cmp->add_option("--delta", cmp_delta);
    cmd_cmp->add_option("--tau", cmp_tau);
    cmd_cmp->add_option("--mode", cmp_mode)->check(CLI::IsMember({"proportion", "literal"}));
    cmd_cmp->add_option("--json-out", cmp_json, "write the JSON report here");
    cmd_cmp->add_option("--text-out", cmp_text, "write the text report here");
    cmd_cmp->add_flag("--json", cmp_print_json, "print JSON instead of text");
    cmd_cmp->add_flag("--text", "print text (default)");

    // sweep
    std::string sw_model;
    std::string sw_pairs;
    std::vector<double> sw_deltas;
    std::optional<std::string> sw_mode;
    auto* cmd_sw = app.add_subcommand("sweep", "Precision and recall over a range of delta values");
    cmd_sw->add_option("--model", sw_model)->required();
    cmd_sw->add_option("--pairs", sw_pairs, "labeled function pairs (JSONL)")->required();
    cmd_sw->add_option("--deltas", sw_deltas, "default 0.50 to 0.90 step 0.05");
    cmd_sw->add_option("--mode", sw_mode)->check(CLI::IsMember({"proportion", "literal"}));

    // synth
    std::string syn_templates;
    std::size_t syn_generate = 0;
    std::string syn_out;
    std::vector<std::string> syn_transforms;
    std::string syn_emit;
    auto* cmd_syn = app.add_subcommand("synth", "Generate a labeled clone corpus");
    auto* syn_src = cmd_syn->add_option("--templates", syn_templates, "directory of .sol files");
    cmd_syn->add_option("--generate", syn_generate, "number of random template functions")->excludes(syn_src);
    cmd_syn->add_option("--transforms", syn_transforms, "subset of the four transforms (default all)");
    cmd_syn->add_option("--emit-templates", syn_emit, "also write generated templates into this directory");
    cmd_syn->add_option("--out", syn_out)->required();

    // group
    std::string grp_corpus;
    std::string grp_model;
    std::string grp_out;
    std::optional<double> grp_delta;
    auto* cmd_grp = app.add_subcommand("group", "Cluster functions around template functions");
    cmd_grp->add_option("--corpus", grp_corpus, "directory of .sol files")->required();
    cmd_grp->add_option("--model", grp_model)->required();
    cmd_grp->add_option("--delta", grp_delta);
    cmd_grp->add_option("--out", grp_out);

    // report
    std::string rep_file;
    auto* cmd_rep = app.add_subcommand("report", "Render a saved JSON report as text");
    cmd_rep->add_option("file", rep_file)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*cmd_parse) {
            const auto source = pipeline::read_file(parse_file);
            const auto result = frontend::parse_source(source);
            ordered_json functions = ordered_json::array();
            for (const auto& fn : result.functions) {
                auto j = function_header(fn);
                j["body"] = ast_to_json(fn.body);
                functions.push_back(std::move(j));
            }
            emit_json({{"schema_version", kSchemaVersion}, {"file", parse_file}, {"ast", ast_to_json(result.unit)},
                       {"functions", std::move(functions)}},
                      parse_json);
            return 0;
        }

        if (*cmd_dec) {
            const auto fn = function_from(dec_file, dec_function);
            const auto trees = stree::decompose(fn);
            if (dec_json) {
                ordered_json list = ordered_json::array();
                for (const auto& t : trees)
                    list.push_back({{"kind", stree::kind_name(t.kind)}, {"span", span_to_json(t.span)}, {"index", t.index}});
                emit_json({{"schema_version", kSchemaVersion}, {"function", fn.qualified_name()}, {"trees", std::move(list)}}, "");
            } else {
                for (const auto& t : trees)
                    std::cout << "ST" << t.index + 1 << "  " << stree::kind_name(t.kind) << "  lines " << t.span.start_line
                              << "-" << t.span.end_line << "\n";
            }
            return 0;
        }

        if (*cmd_ext) {
            const auto fn = function_from(ext_file, ext_function);
            ordered_json list = ordered_json::array();
            for (const auto& t : stree::decompose(fn)) {
                auto j = features::feature_set_to_json(features::extract_features(t));
                j["span"] = span_to_json(t.span);
                list.push_back(std::move(j));
            }
            emit_json({{"schema_version", kSchemaVersion}, {"function", fn.qualified_name()}, {"trees", std::move(list)}}, "");
            return 0;
        }

        if (*cmd_train) {
            auto cfg = make_config(g);
            if (!train_hyper.empty()) cfg.hyper_path = train_hyper;
            const auto data = pipeline::load_training_data(train_pairs, cfg.seed);
            const auto model = gbdt::train(data, pipeline::resolve_hyper(cfg), substream(cfg.seed, "model"));
            gbdt::save_model(model, train_out);
            std::cout << "trained on " << data.size() << " statement pairs; training cross-entropy "
                      << gbdt::cross_entropy(data, model) << "\n";
            if (train_importance) std::cout << gbdt::importance_table(gbdt::feature_importance(model));
            return 0;
        }

        if (*cmd_opt) {
            const auto cfg = make_config(g);
            opt.seed = cfg.seed;
            const auto train = pipeline::load_training_data(opt_train, substream(cfg.seed, "train-split"));
            const auto val = pipeline::load_training_data(opt_val, substream(cfg.seed, "val-split"));
            std::ofstream history;
            if (!opt_history.empty()) {
                history.open(opt_history);
                if (!history) throw Error("cannot write " + opt_history);
                opt.on_evaluation = [&](const hpo::HistoryEntry& e) { history << hpo::history_to_json(e).dump() << "\n"; };
            }
            const auto result = hpo::optimize(train, val, opt);
            const double default_loss = hpo::true_loss(train, val, gbdt::HyperPoint{}, result.training_seed);
            emit_json({{"schema_version", kSchemaVersion},
                       {"hyper", gbdt::to_json(result.best)},
                       {"loss", result.best_loss},
                       {"default_loss", default_loss},
                       {"evaluations", result.history.size()}},
                      opt_out);
            std::cout << "best validation cross-entropy " << result.best_loss << " (default hyperparameters "
                      << default_loss << ")\n";
            return 0;
        }

        if (*cmd_cmp) {
            auto cfg = make_config(g);
            if (!cmp_model.empty()) cfg.model_path = cmp_model;
            if (!cmp_train.empty()) cfg.train_path = cmp_train;
            if (cmp_delta) cfg.delta = *cmp_delta;
            if (cmp_tau) cfg.tau = *cmp_tau;
            if (cmp_mode) cfg.mode = similarity::mode_from_name(*cmp_mode);
            if (!cmp_json.empty()) cfg.json_out = cmp_json;
            if (!cmp_text.empty()) cfg.text_out = cmp_text;
            const auto report =
                pipeline::run_end_to_end(cfg, pipeline::FunctionRef::parse(cmp_a), pipeline::FunctionRef::parse(cmp_b));
            if (cmp_print_json)
                std::cout << similarity::report_to_json(report).dump(2) << "\n";
            else
                std::cout << similarity::render_text(report);
            return report.verdict == similarity::Verdict::Clone ? 1 : 0;
        }

        if (*cmd_sw) {
            const auto cfg = make_config(g);
            const auto model = gbdt::load_model(sw_model);
            const auto records = corpus::load_pairs(sw_pairs);
            const auto deltas = sw_deltas.empty() ? pipeline::default_deltas() : sw_deltas;
            const auto mode = sw_mode ? similarity::mode_from_name(*sw_mode) : cfg.mode;
            const auto rows = pipeline::sweep_delta(model, records, deltas, mode, cfg.tau);
            std::cout << pipeline::render_sweep(rows);
            return 0;
        }

        if (*cmd_syn) {
            const auto cfg = make_config(g);
            std::vector<std::string> bases;
            if (!syn_templates.empty()) {
                for (const auto& file : sol_files(syn_templates)) {
                    for (const auto& fn : frontend::parse_contract(pipeline::read_file(file))) bases.push_back(fn.source);
                }
            } else if (syn_generate > 0) {
                bases = corpus::generate_templates(syn_generate, substream(cfg.seed, "templates"));
            } else {
                throw Error("synth needs --templates DIR or --generate N");
            }
            std::vector<corpus::Transform> transforms;
            for (const auto& name : syn_transforms) {
                const auto t = corpus::transform_from_name(name);
                if (!t) throw Error("unknown transform '" + name + "'");
                transforms.push_back(*t);
            }
            if (transforms.empty()) transforms = corpus::all_transforms();
            if (!syn_emit.empty()) {
                fs::create_directories(syn_emit);
                for (std::size_t i = 0; i < bases.size(); ++i) {
                    std::ofstream out(fs::path(syn_emit) / ("t" + std::to_string(i) + ".sol"));
                    out << bases[i];
                }
            }
            const auto records = corpus::synthesize_clones(bases, transforms, cfg.seed);
            corpus::save_pairs(syn_out, records);
            std::cout << "wrote " << records.size() << " pairs from " << bases.size() << " functions\n";
            return 0;
        }

        if (*cmd_grp) {
            auto cfg = make_config(g);
            if (grp_delta) cfg.delta = *grp_delta;
            cfg.validate();
            const auto model = gbdt::load_model(grp_model);
            std::vector<FunctionAst> functions;
            std::vector<std::string> names;
            for (const auto& file : sol_files(grp_corpus)) {
                for (auto& fn : frontend::parse_contract(pipeline::read_file(file))) {
                    names.push_back(fs::path(file).filename().string() + ":" + fn.qualified_name());
                    functions.push_back(std::move(fn));
                }
            }
            const auto groups = corpus::group_corpus(functions, model, {cfg.delta, cfg.tau, cfg.mode});
            emit_json(corpus::groups_to_json(groups, names), grp_out);
            if (!grp_out.empty()) std::cout << functions.size() << " functions in " << groups.size() << " groups\n";
            return 0;
        }

        if (*cmd_rep) {
            std::ifstream in(rep_file);
            if (!in) throw Error("cannot read " + rep_file);
            ordered_json j;
            try {
                in >> j;
            } catch (const nlohmann::json::exception& e) {
                throw Error(rep_file + ": " + e.what());
            }
            std::cout << similarity::render_text(similarity::report_from_json(j));
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "clonescope: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
