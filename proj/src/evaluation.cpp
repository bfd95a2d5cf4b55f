#include "depsig/evaluation.hpp"

#include "depsig/errors.hpp"

namespace depsig {

ConfusionMatrix confusion(std::span<const Label> gold, std::span<const Label> pred) {
    if (gold.size() != pred.size()) throw LengthMismatch(gold.size(), pred.size());
    if (gold.empty()) throw DataError("confusion matrix needs at least one pair");
    ConfusionMatrix m;
    for (std::size_t i = 0; i < gold.size(); ++i) {
        ++m.m[static_cast<std::size_t>(gold[i])][static_cast<std::size_t>(pred[i])];
    }
    m.total = gold.size();
    return m;
}

Prf class_prf(const ConfusionMatrix& m, Label cls) {
    const auto c = static_cast<std::size_t>(cls);
    std::size_t predicted = 0, gold = 0;
    for (std::size_t g = 0; g < kNumClasses; ++g) predicted += m.m[g][c];
    for (std::size_t p = 0; p < kNumClasses; ++p) gold += m.m[c][p];
    const double tp = static_cast<double>(m.m[c][c]);

    Prf prf;
    prf.precision = predicted == 0 ? 0.0 : tp / static_cast<double>(predicted);
    prf.recall = gold == 0 ? 0.0 : tp / static_cast<double>(gold);
    const double denom = prf.precision + prf.recall;
    prf.f1 = denom == 0.0 ? 0.0 : 2.0 * prf.precision * prf.recall / denom;
    return prf;
}

double macro_f1(const ConfusionMatrix& m) {
    double sum = 0.0;
    for (Label label : kAllLabels) sum += class_prf(m, label).f1;
    return sum / static_cast<double>(kNumClasses);
}

EvalReport evaluate(const LinearModel& model, const LabeledCorpus& corpus,
                    const Lexicon& lexicon, int threads) {
    if (corpus.empty()) throw DataError("cannot evaluate on an empty corpus");
    if (!corpus.labeled()) throw DataError("evaluation requires gold labels");

    const Analyzer analyzer(lexicon);
    const auto docs = analyze_corpus(corpus, analyzer, threads);
    const auto vectors = assemble_corpus(docs, model.schema, lexicon, threads);

    std::vector<Label> predictions;
    predictions.reserve(vectors.size());
    for (const FeatureVector& x : vectors) predictions.push_back(predict(model, x));

    EvalReport report;
    report.matrix = confusion(corpus.labels(), predictions);
    for (Label label : kAllLabels) {
        report.per_class[static_cast<std::size_t>(label)] = class_prf(report.matrix, label);
    }
    report.macro_f1 = macro_f1(report.matrix);
    std::size_t correct = 0;
    for (std::size_t c = 0; c < kNumClasses; ++c) correct += report.matrix.m[c][c];
    report.accuracy = static_cast<double>(correct) / static_cast<double>(report.matrix.total);
    report.gold_distribution = class_distribution(corpus);
    return report;
}

} // namespace depsig
