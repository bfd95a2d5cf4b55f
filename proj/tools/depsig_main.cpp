// depsig: interpretable depression-sign classification over social-media posts.
// Subcommands: ingest, split, train, evaluate, predict, featurize, analyze,
// inspect, bootstrap. Exit codes: 0 success, 1 usage error, 2 data error,
// 3 numeric failure.

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "depsig/corpus.hpp"
#include "depsig/errors.hpp"
#include "depsig/evaluation.hpp"
#include "depsig/features.hpp"
#include "depsig/interpret.hpp"
#include "depsig/lexicon.hpp"
#include "depsig/model.hpp"
#include "depsig/tabular.hpp"
#include "depsig/text_analysis.hpp"

namespace {

using namespace depsig;
using nlohmann::json;

struct DataOptions {
    std::string path;
    std::string format; // "", "tsv" or "csv"
    std::string id_col = "id";
    std::string text_col = "text";
    std::string label_col = "label";
    bool no_label = false;
    std::vector<std::string> aliases; // "alias=label"
};

void add_data_options(CLI::App* cmd, DataOptions& opts, bool label_optional = true) {
    cmd->add_option("--data", opts.path, "input corpus file")->required();
    cmd->add_option("--format", opts.format, "tsv or csv (default: by file extension)")
        ->check(CLI::IsMember({"tsv", "csv"}));
    cmd->add_option("--id-col", opts.id_col, "header name of the id column");
    cmd->add_option("--text-col", opts.text_col, "header name of the text column");
    cmd->add_option("--label-col", opts.label_col, "header name of the label column");
    if (label_optional) {
        cmd->add_flag("--no-label", opts.no_label, "load the corpus without labels");
    }
    cmd->add_option("--label-alias", opts.aliases,
                    "extra label alias, e.g. --label-alias sev=severe (repeatable)");
}

TableFormat resolve_format(const DataOptions& opts) {
    if (opts.format == "tsv") return TableFormat::Tsv;
    if (opts.format == "csv") return TableFormat::Csv;
    const auto ext = std::filesystem::path(opts.path).extension().string();
    return ext == ".csv" ? TableFormat::Csv : TableFormat::Tsv;
}

LabelAliases resolve_aliases(const DataOptions& opts) {
    LabelAliases aliases = LabelAliases::defaults();
    for (const std::string& pair : opts.aliases) {
        const auto eq = pair.rfind('=');
        if (eq == std::string::npos || eq == 0) {
            throw DataError("label alias must look like alias=label: " + pair);
        }
        const auto target = aliases.parse(pair.substr(eq + 1));
        if (!target) throw DataError("unknown label in alias: " + pair);
        aliases.add(pair.substr(0, eq), *target);
    }
    return aliases;
}

LabeledCorpus load(const DataOptions& opts, bool require_labels) {
    ColumnMap columns;
    columns.id = opts.id_col;
    columns.text = opts.text_col;
    if (opts.no_label) columns.label = std::nullopt;
    else columns.label = opts.label_col;
    LabeledCorpus corpus =
        load_corpus(opts.path, resolve_format(opts), columns, resolve_aliases(opts));
    if (require_labels && !corpus.labeled()) {
        throw DataError("this command needs a labeled corpus");
    }
    return corpus;
}

Lexicon load_lexicon() { return Lexicon::load(Lexicon::default_resource_dir()); }

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write file: " + path);
    return out;
}

void log_config(const std::string& line) { std::cerr << "[depsig] " << line << "\n"; }

std::string fixed4(double v) {
    std::ostringstream s;
    s << std::fixed << std::setprecision(4) << v;
    return s.str();
}

// ---------------------------------------------------------------- ingest

struct IngestArgs {
    DataOptions data;
    bool stats = false;
    bool person_stats = false;
    std::string histogram_path;
    std::size_t bucket_width = 10;
    std::string output = "text";
};

void run_ingest(const IngestArgs& args) {
    log_config("ingest data=" + args.data.path);
    const LabeledCorpus corpus = load(args.data, false);

    json report;
    report["documents"] = corpus.size();

    if (corpus.labeled()) {
        const ClassDistribution dist = class_distribution(corpus);
        json counts;
        for (Label label : kAllLabels) {
            counts[std::string(label_name(label))] =
                dist.counts[static_cast<std::size_t>(label)];
        }
        report["class_counts"] = counts;
        report["total"] = dist.total;
    }

    if (args.person_stats && corpus.labeled()) {
        const Lexicon lexicon = load_lexicon();
        const Analyzer analyzer(lexicon);
        std::array<double, kNumClasses> p1_sum{};
        std::array<std::size_t, kNumClasses> n{};
        for (std::size_t i = 0; i < corpus.size(); ++i) {
            const auto doc = analyzer.analyze(corpus.doc(i).text);
            p1_sum[static_cast<std::size_t>(corpus.label(i))] += person_number(doc)[0];
            ++n[static_cast<std::size_t>(corpus.label(i))];
        }
        json ratios;
        for (Label label : kAllLabels) {
            const auto c = static_cast<std::size_t>(label);
            ratios[std::string(label_name(label))] =
                n[c] == 0 ? 0.0 : p1_sum[c] / static_cast<double>(n[c]);
        }
        report["mean_first_person_ratio"] = ratios;
    }

    if (!args.histogram_path.empty()) {
        const auto buckets = length_histogram(corpus, args.bucket_width);
        auto out = open_out(args.histogram_path);
        out << "bucket_start,bucket_end,count\n";
        for (const HistogramBucket& b : buckets) {
            out << b.start << ',' << b.end << ',' << b.count << '\n';
        }
        report["histogram_file"] = args.histogram_path;
    }

    if (args.output == "json") {
        std::cout << report.dump(2) << "\n";
        return;
    }
    std::cout << "documents: " << corpus.size() << "\n";
    if (corpus.labeled()) {
        const ClassDistribution dist = class_distribution(corpus);
        for (Label label : kAllLabels) {
            std::cout << label_name(label) << ": "
                      << dist.counts[static_cast<std::size_t>(label)] << "\n";
        }
        std::cout << "total: " << dist.total << "\n";
    }
    if (report.contains("mean_first_person_ratio")) {
        std::cout << "mean first-person usage ratio per class:\n";
        for (Label label : kAllLabels) {
            std::cout << "  " << label_name(label) << ": "
                      << fixed4(report["mean_first_person_ratio"]
                                    [std::string(label_name(label))].get<double>())
                      << "\n";
        }
    }
}

// ----------------------------------------------------------------- split

struct SplitArgs {
    DataOptions data;
    double test_fraction = 0.25;
    std::uint64_t seed = 0;
    std::string train_out;
    std::string test_out;
};

void run_split(const SplitArgs& args) {
    log_config("split data=" + args.data.path + " fraction=" + format_double(args.test_fraction) +
               " seed=" + std::to_string(args.seed));
    const LabeledCorpus corpus = load(args.data, true);
    const auto [train_set, test_set] = stratified_split(corpus, args.test_fraction, args.seed);
    const TableFormat format = resolve_format(args.data);
    save_corpus(train_set, args.train_out, format);
    save_corpus(test_set, args.test_out, format);
    std::cout << "train: " << train_set.size() << " documents -> " << args.train_out << "\n";
    std::cout << "test: " << test_set.size() << " documents -> " << args.test_out << "\n";
}

// ----------------------------------------------------------------- train

struct TrainArgs {
    DataOptions data;
    std::string features = "model2";
    std::string pos_softmax_input = "counts";
    double l2 = 1.0;
    int max_iter = 1000;
    double grad_tol = 1e-4;
    std::uint64_t seed = 0;
    int threads = 1;
    std::string out;
};

void run_train(const TrainArgs& args) {
    log_config("train data=" + args.data.path + " features=" + args.features +
               " l2=" + format_double(args.l2) + " max_iter=" + std::to_string(args.max_iter) +
               " grad_tol=" + format_double(args.grad_tol) + " seed=" + std::to_string(args.seed) +
               " pos_softmax_input=" + args.pos_softmax_input +
               " threads=" + std::to_string(args.threads));
    const LabeledCorpus corpus = load(args.data, true);
    const Lexicon lexicon = load_lexicon();
    const Analyzer analyzer(lexicon);

    const bool use_pnum = args.features == "model2";
    const PosSoftmaxInput pos_input =
        args.pos_softmax_input == "relfreq" ? PosSoftmaxInput::RelFreq : PosSoftmaxInput::Counts;

    const auto docs = analyze_corpus(corpus, analyzer, args.threads);
    FeatureSchema schema = FeatureSchema::fit(docs, use_pnum, pos_input, lexicon);
    const auto x = assemble_corpus(docs, schema, lexicon, args.threads);

    TrainConfig config;
    config.l2 = args.l2;
    config.max_iter = args.max_iter;
    config.grad_tol = args.grad_tol;
    config.seed = args.seed;

    const LinearModel model = train(x, corpus.labels(), std::move(schema), config);
    save_model(model, args.out);

    std::cout << "trained " << args.features << " on " << corpus.size() << " documents, "
              << model.dim() << " features\n";
    std::cout << "iterations: " << model.meta.iterations_run
              << ", final |grad|_inf: " << format_double(model.meta.final_grad_norm) << "\n";
    std::cout << "model written to " << args.out << "\n";
}

// -------------------------------------------------------------- evaluate

struct EvaluateArgs {
    DataOptions data;
    std::string model_path;
    std::string json_out;
    std::string confusion_out;
    std::string output = "text";
    int threads = 1;
};

json report_to_json(const EvalReport& report) {
    json j;
    j["macro_f1"] = report.macro_f1;
    j["accuracy"] = report.accuracy;
    j["total"] = report.matrix.total;
    json classes;
    for (Label label : kAllLabels) {
        const auto c = static_cast<std::size_t>(label);
        classes[std::string(label_name(label))] = {
            {"precision", report.per_class[c].precision},
            {"recall", report.per_class[c].recall},
            {"f1", report.per_class[c].f1},
            {"gold_count", report.gold_distribution.counts[c]},
        };
    }
    j["classes"] = classes;
    json matrix = json::array();
    for (std::size_t g = 0; g < kNumClasses; ++g) {
        matrix.push_back(report.matrix.m[g]);
    }
    j["confusion"] = matrix;
    return j;
}

void run_evaluate(const EvaluateArgs& args) {
    log_config("evaluate model=" + args.model_path + " data=" + args.data.path);
    const LinearModel model = load_model(args.model_path);
    const Lexicon lexicon = load_lexicon();
    const LabeledCorpus corpus = load(args.data, true);
    const EvalReport report = evaluate(model, corpus, lexicon, args.threads);

    if (!args.json_out.empty()) {
        auto out = open_out(args.json_out);
        out << report_to_json(report).dump(2) << "\n";
    }
    if (!args.confusion_out.empty()) {
        auto out = open_out(args.confusion_out);
        out << "gold";
        for (Label label : kAllLabels) out << ',' << csv_field(std::string(label_name(label)));
        out << '\n';
        for (Label g : kAllLabels) {
            out << csv_field(std::string(label_name(g)));
            for (std::size_t p = 0; p < kNumClasses; ++p) {
                out << ',' << report.matrix.m[static_cast<std::size_t>(g)][p];
            }
            out << '\n';
        }
    }

    if (args.output == "json") {
        std::cout << report_to_json(report).dump(2) << "\n";
        return;
    }
    std::cout << "macro F1: " << fixed4(report.macro_f1) << "\n";
    std::cout << "accuracy: " << fixed4(report.accuracy) << "\n";
    std::cout << "class                precision  recall   f1       gold\n";
    for (Label label : kAllLabels) {
        const auto c = static_cast<std::size_t>(label);
        std::ostringstream line;
        line << std::left << std::setw(20) << label_name(label) << ' '
             << fixed4(report.per_class[c].precision) << "     " << fixed4(report.per_class[c].recall)
             << "   " << fixed4(report.per_class[c].f1) << "   "
             << report.gold_distribution.counts[c];
        std::cout << line.str() << "\n";
    }
    std::cout << "confusion (rows=gold, cols=pred):\n";
    for (std::size_t g = 0; g < kNumClasses; ++g) {
        std::cout << " ";
        for (std::size_t p = 0; p < kNumClasses; ++p) {
            std::cout << " " << std::setw(6) << report.matrix.m[g][p];
        }
        std::cout << "\n";
    }
}

// --------------------------------------------------------------- predict

struct PredictArgs {
    DataOptions data;
    bool has_data = false;
    std::string model_path;
    std::string text;
    std::string out;
};

void run_predict(const PredictArgs& args) {
    log_config("predict model=" + args.model_path);
    const LinearModel model = load_model(args.model_path);
    const Lexicon lexicon = load_lexicon();
    const Analyzer analyzer(lexicon);

    auto predict_text = [&](const std::string& text) {
        const auto doc = analyzer.analyze(text);
        const auto vec = assemble(doc, model.schema, lexicon);
        return predict_proba(model, vec);
    };
    auto argmax_label = [&](const std::array<double, kNumClasses>& p) {
        std::size_t best = 0;
        for (std::size_t c = 1; c < kNumClasses; ++c) {
            if (p[c] > p[best]) best = c;
        }
        return model.label_order[best];
    };

    if (!args.text.empty()) {
        const auto p = predict_text(args.text);
        std::cout << label_name(argmax_label(p));
        for (double v : p) std::cout << '\t' << format_double(v);
        std::cout << "\n";
        return;
    }

    const LabeledCorpus corpus = load(args.data, false);
    std::ostream* out = &std::cout;
    std::ofstream file;
    if (!args.out.empty()) {
        file = open_out(args.out);
        out = &file;
    }
    *out << "id\tprediction\tp_not_depression\tp_moderate\tp_severe\n";
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        const auto p = predict_text(corpus.doc(i).text);
        *out << corpus.doc(i).id << '\t' << label_name(argmax_label(p));
        for (double v : p) *out << '\t' << format_double(v);
        *out << '\n';
    }
}

// ------------------------------------------------------------- featurize

struct FeaturizeArgs {
    DataOptions data;
    std::string model_path;
    std::string out;
};

void run_featurize(const FeaturizeArgs& args) {
    log_config("featurize model=" + args.model_path + " data=" + args.data.path);
    const LinearModel model = load_model(args.model_path);
    const Lexicon lexicon = load_lexicon();
    const Analyzer analyzer(lexicon);
    const LabeledCorpus corpus = load(args.data, false);

    std::ostream* out = &std::cout;
    std::ofstream file;
    if (!args.out.empty()) {
        file = open_out(args.out);
        out = &file;
    }

    for (std::size_t i = 0; i < corpus.size(); ++i) {
        const auto doc = analyzer.analyze(corpus.doc(i).text);
        const auto vec = assemble(doc, model.schema, lexicon);

        json j;
        j["id"] = corpus.doc(i).id;
        json words = json::array();
        for (const SparseEntry& e : vec.words) {
            words.push_back({model.schema.vocab().tokens()[e.index], e.count});
        }
        j["words"] = std::move(words);
        const auto* tail = vec.dense.data();
        j["pos"] = std::vector<double>(tail, tail + kNumPosTags);
        j["style"] = std::vector<double>(tail + kNumPosTags, tail + kNumPosTags + kStyleCount);
        if (model.schema.use_person_number()) {
            j["person_number"] = std::vector<double>(
                tail + kNumPosTags + kStyleCount,
                tail + kNumPosTags + kStyleCount + kPersonNumberCount);
        }
        *out << j.dump() << '\n';
    }
}

// --------------------------------------------------------------- analyze

struct AnalyzeArgs {
    DataOptions data;
    bool has_data = false;
    std::string text;
};

void print_analysis(std::ostream& out, const std::string& doc_id, const AnalyzedDocument& doc) {
    for (std::size_t s = 0; s < doc.sentences.size(); ++s) {
        for (std::size_t i = doc.sentences[s].begin; i < doc.sentences[s].end; ++i) {
            out << doc_id << '\t' << s << '\t' << doc.tokens[i].surface << '\t'
                << doc.tokens[i].start << '\t' << doc.tokens[i].end << '\t'
                << pos_tag_name(doc.tags[i]) << '\t';
            if (doc.morph[i].person) {
                out << static_cast<int>(*doc.morph[i].person);
            } else {
                out << '-';
            }
            out << '\t';
            if (doc.morph[i].number) {
                out << (*doc.morph[i].number == Number::Singular ? "sg" : "pl");
            } else {
                out << '-';
            }
            out << '\t' << doc.syllables[i] << '\n';
        }
    }
}

void run_analyze(const AnalyzeArgs& args) {
    log_config(args.has_data ? "analyze data=" + args.data.path : "analyze --text");
    const Lexicon lexicon = load_lexicon();
    const Analyzer analyzer(lexicon);
    std::cout << "doc\tsentence\ttoken\tstart\tend\ttag\tperson\tnumber\tsyllables\n";
    if (!args.has_data) {
        print_analysis(std::cout, "-", analyzer.analyze(args.text));
        return;
    }
    const LabeledCorpus corpus = load(args.data, false);
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        print_analysis(std::cout, corpus.doc(i).id, analyzer.analyze(corpus.doc(i).text));
    }
}

// --------------------------------------------------------------- inspect

struct InspectArgs {
    std::string model_path;
    std::size_t top = 5;
    std::string tmpl; // empty = all templates
    int cls = -1;     // -1 = all classes
    std::string out;
    std::string output = "text";
};

void run_inspect(const InspectArgs& args) {
    log_config("inspect model=" + args.model_path + " top=" + std::to_string(args.top));
    const LinearModel model = load_model(args.model_path);
    const auto ranking = rank_coefficients(model);

    if (!args.out.empty()) {
        auto out = open_out(args.out);
        emit_ranking_csv(ranking, out);
    }
    if (args.output == "csv") {
        emit_ranking_csv(ranking, std::cout);
        return;
    }

    std::vector<FeatureTemplate> templates;
    if (args.tmpl.empty()) {
        templates = {FeatureTemplate::Words, FeatureTemplate::PosDist,
                     FeatureTemplate::ReadabilityStyle};
        if (model.schema.use_person_number()) templates.push_back(FeatureTemplate::PersonNumber);
    } else {
        const auto t = feature_template_from_name(args.tmpl);
        if (!t) throw DataError("unknown template: " + args.tmpl);
        templates = {*t};
    }
    std::vector<Label> classes;
    if (args.cls < 0) {
        classes.assign(kAllLabels.begin(), kAllLabels.end());
    } else {
        if (args.cls > 2) throw DataError("class must be 0, 1 or 2");
        classes = {static_cast<Label>(args.cls)};
    }

    // The printed rank is the feature's position in the class's full
    // |coefficient| ranking, not within the template.
    for (Label cls : classes) {
        for (FeatureTemplate tmpl : templates) {
            std::cout << "class=" << label_name(cls)
                      << " template=" << feature_template_name(tmpl) << "\n";
            for (const auto& e : top_k_by_template(ranking, tmpl, cls, args.top)) {
                std::cout << "  rank " << e.rank << ": " << e.feature_name << " = "
                          << format_double(e.weight) << "\n";
            }
        }
    }
}

// ------------------------------------------------------------- bootstrap

struct BootstrapArgs {
    DataOptions data;
    std::string features = "model2";
    std::string pos_softmax_input = "counts";
    double l2 = 1.0;
    int max_iter = 1000;
    double grad_tol = 1e-4;
    int runs = 50;
    double fraction = 0.8;
    std::uint64_t seed = 0;
    int threads = 1;
    std::string out;
};

void run_bootstrap(const BootstrapArgs& args) {
    log_config("bootstrap data=" + args.data.path + " runs=" + std::to_string(args.runs) +
               " fraction=" + format_double(args.fraction) + " seed=" + std::to_string(args.seed));
    const LabeledCorpus corpus = load(args.data, true);
    const Lexicon lexicon = load_lexicon();

    TrainConfig train_config;
    train_config.l2 = args.l2;
    train_config.max_iter = args.max_iter;
    train_config.grad_tol = args.grad_tol;
    train_config.seed = args.seed;

    BootstrapConfig config;
    config.n_runs = args.runs;
    config.subsample_fraction = args.fraction;
    config.seed = args.seed;

    const PosSoftmaxInput pos_input =
        args.pos_softmax_input == "relfreq" ? PosSoftmaxInput::RelFreq : PosSoftmaxInput::Counts;
    const BootstrapReport report =
        bootstrap_importance(corpus, args.features == "model2", train_config, config, lexicon,
                             pos_input, args.threads);

    if (!args.out.empty()) {
        auto out = open_out(args.out);
        emit_bootstrap_csv(report, out);
        std::cout << "bootstrap report (" << report.stats.size() << " rows) written to "
                  << args.out << "\n";
    } else {
        emit_bootstrap_csv(report, std::cout);
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"depsig: interpretable detection of depression signs in social-media posts"};
    app.require_subcommand(1);
    app.set_config("--config", "", "read options from an INI/TOML file (flags take precedence)");

    IngestArgs ingest_args;
    auto* ingest = app.add_subcommand("ingest", "load a corpus and report statistics");
    add_data_options(ingest, ingest_args.data);
    ingest->add_flag("--stats", ingest_args.stats, "print class distribution (default)");
    ingest->add_flag("--person-stats", ingest_args.person_stats,
                     "report the mean first-person usage ratio per class");
    ingest->add_option("--histogram", ingest_args.histogram_path,
                       "write a post-length histogram CSV to this path");
    ingest->add_option("--bucket-width", ingest_args.bucket_width, "histogram bucket width")
        ->check(CLI::PositiveNumber);
    ingest->add_option("--output", ingest_args.output, "text or json")
        ->check(CLI::IsMember({"text", "json"}));

    SplitArgs split_args;
    auto* split = app.add_subcommand("split", "stratified train/test split");
    add_data_options(split, split_args.data, false);
    split->add_option("--test-fraction", split_args.test_fraction, "test fraction in (0,1)")
        ->required();
    split->add_option("--seed", split_args.seed, "PRNG seed");
    split->add_option("--train-out", split_args.train_out, "output path for the train part")
        ->required();
    split->add_option("--test-out", split_args.test_out, "output path for the test part")
        ->required();

    TrainArgs train_args;
    auto* train_cmd = app.add_subcommand("train", "train a logistic-regression model");
    add_data_options(train_cmd, train_args.data, false);
    train_cmd->add_option("--features", train_args.features, "model1 or model2")
        ->check(CLI::IsMember({"model1", "model2"}));
    train_cmd->add_option("--l2", train_args.l2, "L2 regularization strength")
        ->check(CLI::NonNegativeNumber);
    train_cmd->add_option("--max-iter", train_args.max_iter, "iteration cap")
        ->check(CLI::PositiveNumber);
    train_cmd->add_option("--grad-tol", train_args.grad_tol, "gradient infinity-norm tolerance");
    train_cmd->add_option("--seed", train_args.seed, "seed recorded in the model metadata");
    train_cmd->add_option("--pos-softmax-input", train_args.pos_softmax_input,
                          "softmax input: counts or relfreq")
        ->check(CLI::IsMember({"counts", "relfreq"}));
    train_cmd->add_option("--threads", train_args.threads, "vectorization threads")
        ->check(CLI::PositiveNumber);
    train_cmd->add_option("--out", train_args.out, "model output path")->required();

    EvaluateArgs eval_args;
    auto* evaluate_cmd = app.add_subcommand("evaluate", "evaluate a model on labeled data");
    add_data_options(evaluate_cmd, eval_args.data, false);
    evaluate_cmd->add_option("--model", eval_args.model_path, "model file")->required();
    evaluate_cmd->add_option("--json", eval_args.json_out, "write the report as JSON here");
    evaluate_cmd->add_option("--confusion", eval_args.confusion_out,
                             "write the confusion matrix as CSV here");
    evaluate_cmd->add_option("--output", eval_args.output, "text or json")
        ->check(CLI::IsMember({"text", "json"}));
    evaluate_cmd->add_option("--threads", eval_args.threads, "prediction threads")
        ->check(CLI::PositiveNumber);

    PredictArgs predict_args;
    auto* predict_cmd = app.add_subcommand("predict", "predict labels for new text");
    predict_cmd->add_option("--model", predict_args.model_path, "model file")->required();
    predict_cmd->add_option("--text", predict_args.text, "classify this one text");
    auto* predict_data =
        predict_cmd->add_option("--data", predict_args.data.path, "classify a whole file");
    predict_cmd->add_option("--format", predict_args.data.format, "tsv or csv")
        ->check(CLI::IsMember({"tsv", "csv"}));
    predict_cmd->add_option("--id-col", predict_args.data.id_col, "id column name");
    predict_cmd->add_option("--text-col", predict_args.data.text_col, "text column name");
    predict_cmd->add_option("--out", predict_args.out, "write predictions TSV here");

    FeaturizeArgs feat_args;
    auto* featurize_cmd =
        app.add_subcommand("featurize", "dump per-document feature vectors as JSON lines");
    add_data_options(featurize_cmd, feat_args.data);
    featurize_cmd->add_option("--model", feat_args.model_path, "model file (fixes the schema)")
        ->required();
    featurize_cmd->add_option("--out", feat_args.out, "output path (default stdout)");

    AnalyzeArgs analyze_args;
    auto* analyze_cmd =
        app.add_subcommand("analyze", "emit token/tag/morphology TSV for debugging");
    auto* analyze_file =
        analyze_cmd->add_option("file", analyze_args.data.path, "corpus file to analyze");
    analyze_cmd->add_option("--text", analyze_args.text, "analyze this one text instead");
    auto* analyze_data =
        analyze_cmd->add_option("--data", analyze_args.data.path, "corpus file to analyze")
            ->excludes(analyze_file);
    analyze_cmd->add_option("--format", analyze_args.data.format, "tsv or csv")
        ->check(CLI::IsMember({"tsv", "csv"}));
    analyze_cmd->add_option("--id-col", analyze_args.data.id_col, "id column name");
    analyze_cmd->add_option("--text-col", analyze_args.data.text_col, "text column name");

    InspectArgs inspect_args;
    auto* inspect_cmd =
        app.add_subcommand("inspect", "rank model coefficients by absolute weight");
    inspect_cmd->add_option("--model", inspect_args.model_path, "model file")->required();
    inspect_cmd->add_option("--top", inspect_args.top, "entries per class and template")
        ->check(CLI::PositiveNumber);
    inspect_cmd->add_option("--template", inspect_args.tmpl, "words, pos, read or pnum")
        ->check(CLI::IsMember({"words", "pos", "read", "pnum"}));
    inspect_cmd->add_option("--class", inspect_args.cls, "restrict to one class ordinal (0-2)");
    inspect_cmd->add_option("--out", inspect_args.out, "write the full ranking CSV here");
    inspect_cmd->add_option("--output", inspect_args.output, "text or csv")
        ->check(CLI::IsMember({"text", "csv"}));

    BootstrapArgs bootstrap_args;
    auto* bootstrap_cmd =
        app.add_subcommand("bootstrap", "coefficient stability over stratified subsamples");
    add_data_options(bootstrap_cmd, bootstrap_args.data, false);
    bootstrap_cmd->add_option("--features", bootstrap_args.features, "model1 or model2")
        ->check(CLI::IsMember({"model1", "model2"}));
    bootstrap_cmd->add_option("--runs", bootstrap_args.runs, "number of retrainings")
        ->check(CLI::PositiveNumber);
    bootstrap_cmd->add_option("--fraction", bootstrap_args.fraction, "subsample fraction (0,1]");
    bootstrap_cmd->add_option("--seed", bootstrap_args.seed, "PRNG seed");
    bootstrap_cmd->add_option("--l2", bootstrap_args.l2, "L2 regularization strength")
        ->check(CLI::NonNegativeNumber);
    bootstrap_cmd->add_option("--max-iter", bootstrap_args.max_iter, "iteration cap per run")
        ->check(CLI::PositiveNumber);
    bootstrap_cmd->add_option("--grad-tol", bootstrap_args.grad_tol, "gradient tolerance");
    bootstrap_cmd->add_option("--pos-softmax-input", bootstrap_args.pos_softmax_input,
                              "softmax input: counts or relfreq")
        ->check(CLI::IsMember({"counts", "relfreq"}));
    bootstrap_cmd->add_option("--threads", bootstrap_args.threads, "vectorization threads")
        ->check(CLI::PositiveNumber);
    bootstrap_cmd->add_option("--out", bootstrap_args.out, "report CSV path (default stdout)");

    for (CLI::App* sub : app.get_subcommands({})) sub->configurable();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*predict_cmd) {
            predict_args.has_data = predict_data->count() > 0;
            if (!predict_args.has_data && predict_args.text.empty()) {
                throw CLI::RequiredError("predict: --text or --data");
            }
            predict_args.data.no_label = true;
        }
        if (*analyze_cmd) {
            analyze_args.has_data = analyze_data->count() > 0 || analyze_file->count() > 0;
            if (!analyze_args.has_data && analyze_args.text.empty()) {
                throw CLI::RequiredError("analyze: --text or a corpus file");
            }
            analyze_args.data.no_label = true;
        }

        if (*ingest) run_ingest(ingest_args);
        else if (*split) run_split(split_args);
        else if (*train_cmd) run_train(train_args);
        else if (*evaluate_cmd) run_evaluate(eval_args);
        else if (*predict_cmd) run_predict(predict_args);
        else if (*featurize_cmd) {
            feat_args.data.no_label = true;
            run_featurize(feat_args);
        }
        else if (*analyze_cmd) run_analyze(analyze_args);
        else if (*inspect_cmd) run_inspect(inspect_args);
        else if (*bootstrap_cmd) run_bootstrap(bootstrap_args);
    } catch (const CLI::Error& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const depsig::NumericError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const depsig::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
