#pragma once

#include <array>
#include <span>

#include "depsig/corpus.hpp"
#include "depsig/label.hpp"
#include "depsig/model.hpp"

namespace depsig {

// Rows = gold class, columns = predicted class.
struct ConfusionMatrix {
    std::array<std::array<std::size_t, kNumClasses>, kNumClasses> m{};
    std::size_t total = 0;
};

ConfusionMatrix confusion(std::span<const Label> gold, std::span<const Label> pred);

struct Prf {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
};

// Standard definitions; any 0/0 denominator yields 0 so that macro averaging
// stays a mean over exactly three classes.
Prf class_prf(const ConfusionMatrix& m, Label cls);

// Unweighted mean of the three per-class F1 scores (the shared task's
// ranking metric).
double macro_f1(const ConfusionMatrix& m);

struct EvalReport {
    std::array<Prf, kNumClasses> per_class{};
    double macro_f1 = 0.0;
    double accuracy = 0.0;
    ClassDistribution gold_distribution;
    ConfusionMatrix matrix;
};

// Predicts every document of a labeled corpus and assembles the report.
EvalReport evaluate(const LinearModel& model, const LabeledCorpus& corpus,
                    const Lexicon& lexicon, int threads = 1);

} // namespace depsig
