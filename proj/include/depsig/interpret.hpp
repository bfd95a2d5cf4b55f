#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "depsig/corpus.hpp"
#include "depsig/features.hpp"
#include "depsig/model.hpp"

namespace depsig {

// One coefficient in the per-class |weight| ranking. rank is 1-based within
// the class. Magnitudes are only comparable within a template: word counts
// are unnormalized while every other block lives in [0, 1], so reports group
// by template and no cross-template ordering is ever asserted.
struct CoefficientEntry {
    Label cls = Label::NotDepression;
    FeatureTemplate tmpl = FeatureTemplate::Words;
    std::string feature_name;
    double weight = 0.0;
    double abs_weight = 0.0;
    std::size_t rank = 0;
};

// All D features of every class, sorted per class by |weight| descending;
// ties break by (template, name) for determinism.
std::vector<CoefficientEntry> rank_coefficients(const LinearModel& model);

// The k largest-|weight| entries of one (class, template), each keeping its
// global within-class rank. k larger than the block returns the whole block.
std::vector<CoefficientEntry> top_k_by_template(std::span<const CoefficientEntry> ranking,
                                                FeatureTemplate tmpl, Label cls,
                                                std::size_t k);

struct BootstrapConfig {
    int n_runs = 50;                 // >= 2
    double subsample_fraction = 0.8; // in (0, 1]
    std::uint64_t seed = 0;
};

struct BootstrapFeatureStat {
    Label cls = Label::NotDepression;
    FeatureTemplate tmpl = FeatureTemplate::Words;
    std::string feature_name;
    double mean = 0.0;
    double stddev = 0.0;           // population standard deviation over runs
    double sign_consistency = 0.0; // fraction of runs agreeing on the modal sign
};

struct BootstrapReport {
    std::vector<BootstrapFeatureStat> stats; // class-major, schema column order
    int n_runs = 0;
    double subsample_fraction = 0.0;
    std::uint64_t seed = 0;
};

// Trains one model per stratified subsample (without replacement, class
// proportions preserved) and aggregates per-feature weight statistics. The
// vocabulary and scaler are fitted once on the full corpus so the weights of
// all runs live in one coordinate system.
BootstrapReport bootstrap_importance(const LabeledCorpus& corpus, bool use_person_number,
                                     const TrainConfig& train_config,
                                     const BootstrapConfig& bootstrap_config,
                                     const Lexicon& lexicon,
                                     PosSoftmaxInput pos_input = PosSoftmaxInput::Counts,
                                     int threads = 1);

// CSV emitters for coefficient-ranking and stability plots. Stable column
// order, round-trip-safe numbers.
void emit_ranking_csv(std::span<const CoefficientEntry> ranking, std::ostream& out);
void emit_bootstrap_csv(const BootstrapReport& report, std::ostream& out);

} // namespace depsig
