#include "depsig/interpret.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "depsig/errors.hpp"
#include "depsig/rng.hpp"
#include "depsig/tabular.hpp"

namespace depsig {

std::vector<CoefficientEntry> rank_coefficients(const LinearModel& model) {
    const std::size_t dim = model.dim();
    std::vector<CoefficientEntry> ranking;
    ranking.reserve(kNumClasses * dim);

    for (Label label : model.label_order) {
        const auto cls = static_cast<std::size_t>(label);
        std::vector<CoefficientEntry> entries;
        entries.reserve(dim);
        for (std::size_t j = 0; j < dim; ++j) {
            const auto col = model.schema.column(j);
            CoefficientEntry e;
            e.cls = label;
            e.tmpl = col.tmpl;
            e.feature_name = std::string(col.name);
            e.weight = model.weight(cls, j);
            e.abs_weight = std::abs(e.weight);
            entries.push_back(std::move(e));
        }
        std::sort(entries.begin(), entries.end(),
                  [](const CoefficientEntry& a, const CoefficientEntry& b) {
                      if (a.abs_weight != b.abs_weight) return a.abs_weight > b.abs_weight;
                      if (a.tmpl != b.tmpl) return a.tmpl < b.tmpl;
                      return a.feature_name < b.feature_name;
                  });
        for (std::size_t r = 0; r < entries.size(); ++r) entries[r].rank = r + 1;
        ranking.insert(ranking.end(), std::make_move_iterator(entries.begin()),
                       std::make_move_iterator(entries.end()));
    }
    return ranking;
}

std::vector<CoefficientEntry> top_k_by_template(std::span<const CoefficientEntry> ranking,
                                                FeatureTemplate tmpl, Label cls,
                                                std::size_t k) {
    if (k < 1) throw DataError("top-k needs k >= 1");
    std::vector<CoefficientEntry> out;
    for (const CoefficientEntry& e : ranking) {
        if (e.cls == cls && e.tmpl == tmpl) {
            out.push_back(e); // ranking is already sorted within the class
            if (out.size() == k) break;
        }
    }
    return out;
}

BootstrapReport bootstrap_importance(const LabeledCorpus& corpus, bool use_person_number,
                                     const TrainConfig& train_config,
                                     const BootstrapConfig& bootstrap_config,
                                     const Lexicon& lexicon, PosSoftmaxInput pos_input,
                                     int threads) {
    if (bootstrap_config.n_runs < 2) throw DataError("bootstrap needs at least 2 runs");
    if (!(bootstrap_config.subsample_fraction > 0.0 &&
          bootstrap_config.subsample_fraction <= 1.0)) {
        throw DataError("subsample fraction must lie in (0, 1]");
    }

    // One shared coordinate system: vocabulary and scaler are fitted on the
    // full corpus, so per-run weights are comparable and averageable.
    const Analyzer analyzer(lexicon);
    const auto docs = analyze_corpus(corpus, analyzer, threads);
    const FeatureSchema schema = FeatureSchema::fit(docs, use_person_number, pos_input, lexicon);
    const auto vectors = assemble_corpus(docs, schema, lexicon, threads);
    const std::size_t dim = schema.dimension();

    std::array<std::vector<std::size_t>, kNumClasses> per_class;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        per_class[static_cast<std::size_t>(corpus.label(i))].push_back(i);
    }

    Rng rng(bootstrap_config.seed);
    std::vector<std::vector<double>> run_weights;
    run_weights.reserve(static_cast<std::size_t>(bootstrap_config.n_runs));

    for (int run = 0; run < bootstrap_config.n_runs; ++run) {
        // Stratified subsample without replacement, rounded per class.
        std::vector<bool> selected(corpus.size(), false);
        for (const auto& members : per_class) {
            auto indices = members;
            const auto take = static_cast<std::size_t>(std::lround(
                bootstrap_config.subsample_fraction * static_cast<double>(members.size())));
            shuffle(indices, rng);
            for (std::size_t k = 0; k < take && k < indices.size(); ++k) {
                selected[indices[k]] = true;
            }
        }

        std::vector<FeatureVector> x;
        std::vector<Label> y;
        for (std::size_t i = 0; i < corpus.size(); ++i) {
            if (!selected[i]) continue;
            x.push_back(vectors[i]);
            y.push_back(corpus.label(i));
        }
        TrainResult fitted = train_weights(x, y, dim, train_config);
        run_weights.push_back(std::move(fitted.weights));
    }

    BootstrapReport report;
    report.n_runs = bootstrap_config.n_runs;
    report.subsample_fraction = bootstrap_config.subsample_fraction;
    report.seed = bootstrap_config.seed;
    report.stats.reserve(kNumClasses * dim);

    const double runs = static_cast<double>(bootstrap_config.n_runs);
    for (Label label : kAllLabels) {
        const auto cls = static_cast<std::size_t>(label);
        for (std::size_t j = 0; j < dim; ++j) {
            double mean = 0.0;
            double lo = run_weights.front()[cls * dim + j];
            double hi = lo;
            std::size_t positive = 0, negative = 0, zero = 0;
            for (const auto& weights : run_weights) {
                const double w = weights[cls * dim + j];
                mean += w;
                lo = std::min(lo, w);
                hi = std::max(hi, w);
                if (w > 0.0) ++positive;
                else if (w < 0.0) ++negative;
                else ++zero;
            }
            mean /= runs;
            double variance = 0.0;
            if (lo == hi) {
                // constant sample: exact answer, no accumulated rounding
                mean = lo;
            } else {
                for (const auto& weights : run_weights) {
                    const double d = weights[cls * dim + j] - mean;
                    variance += d * d;
                }
                variance /= runs;
            }

            const auto col = schema.column(j);
            BootstrapFeatureStat stat;
            stat.cls = label;
            stat.tmpl = col.tmpl;
            stat.feature_name = std::string(col.name);
            stat.mean = mean;
            stat.stddev = std::sqrt(variance);
            stat.sign_consistency =
                static_cast<double>(std::max({positive, negative, zero})) / runs;
            report.stats.push_back(std::move(stat));
        }
    }
    return report;
}

void emit_ranking_csv(std::span<const CoefficientEntry> ranking, std::ostream& out) {
    out << "class,template,feature_name,weight,abs_weight,rank\n";
    for (const CoefficientEntry& e : ranking) {
        out << csv_field(std::string(label_name(e.cls))) << ','
            << feature_template_name(e.tmpl) << ',' << csv_field(e.feature_name) << ','
            << format_double(e.weight) << ',' << format_double(e.abs_weight) << ','
            << e.rank << '\n';
    }
}

void emit_bootstrap_csv(const BootstrapReport& report, std::ostream& out) {
    out << "class,template,feature_name,mean,std,sign_consistency\n";
    for (const BootstrapFeatureStat& s : report.stats) {
        out << csv_field(std::string(label_name(s.cls))) << ','
            << feature_template_name(s.tmpl) << ',' << csv_field(s.feature_name) << ','
            << format_double(s.mean) << ',' << format_double(s.stddev) << ','
            << format_double(s.sign_consistency) << '\n';
    }
}

} // namespace depsig
