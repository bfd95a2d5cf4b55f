#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "depsig/corpus.hpp"
#include "depsig/lexicon.hpp"
#include "depsig/text_analysis.hpp"

namespace depsig {

enum class FeatureTemplate : std::uint8_t { Words, PosDist, ReadabilityStyle, PersonNumber };

std::string_view feature_template_name(FeatureTemplate t); // words|pos|read|pnum
std::optional<FeatureTemplate> feature_template_from_name(std::string_view name);

// Ordered token -> column map. Entries are the lowercased word tokens of
// length >= 2 seen in the fitting corpus, in lexicographic column order.
class VocabularyIndex {
public:
    VocabularyIndex() = default;

    static VocabularyIndex fit(std::span<const AnalyzedDocument> docs);

    bool fitted() const { return !tokens_.empty(); }
    std::size_t size() const { return tokens_.size(); }
    const std::vector<std::string>& tokens() const { return tokens_; }
    std::optional<std::uint32_t> index_of(std::string_view token) const;

    // Rebuilds the lookup map from an externally supplied token order
    // (model deserialization).
    static VocabularyIndex from_tokens(std::vector<std::string> tokens);

private:
    std::vector<std::string> tokens_;
    std::unordered_map<std::string, std::uint32_t> index_;
};

inline constexpr std::size_t kStyleCount = 22;
extern const std::array<std::string_view, kStyleCount> kStyleNames;
inline constexpr std::size_t kPersonNumberCount = 5;
extern const std::array<std::string_view, kPersonNumberCount> kPersonNumberNames;

// Whether softmax sees raw tag counts or relative frequencies. The default
// is raw counts; the alternative stays available as a switch.
enum class PosSoftmaxInput : std::uint8_t { Counts, RelFreq };

// Per-column train min/max for the readability/style block.
class StyleScaler {
public:
    static StyleScaler fit(std::span<const std::array<double, kStyleCount>> raw_rows);

    bool fitted() const { return fitted_; }

    // (x - min) / (max - min), clamped to [0, 1]; constant columns map to 0.
    std::array<double, kStyleCount> scale(const std::array<double, kStyleCount>& raw) const;

    const std::array<double, kStyleCount>& mins() const { return min_; }
    const std::array<double, kStyleCount>& maxs() const { return max_; }

    static StyleScaler from_params(const std::array<double, kStyleCount>& mins,
                                   const std::array<double, kStyleCount>& maxs);

private:
    bool fitted_ = false;
    std::array<double, kStyleCount> min_{};
    std::array<double, kStyleCount> max_{};
};

struct SparseEntry {
    std::uint32_t index = 0; // vocabulary column
    std::uint32_t count = 0;
};

// Raw term counts over the vocabulary; out-of-vocabulary tokens are ignored
// and counts are deliberately left unnormalized.
std::vector<SparseEntry> vectorize_words(const AnalyzedDocument& doc,
                                         const VocabularyIndex& vocab);

// softmax(tag counts) over the fixed 17-tag order, max-subtracted. Sums to 1
// with every component strictly positive; an empty document is uniform 1/17.
std::array<double, kNumPosTags> pos_distribution(const AnalyzedDocument& doc,
                                                 PosSoftmaxInput input = PosSoftmaxInput::Counts);

// The 22 raw readability/style metrics (see kStyleNames). All zero when the
// document has no word token.
std::array<double, kStyleCount> readability_style(const AnalyzedDocument& doc,
                                                  const Lexicon& lexicon);

// (p1, p2, p3, sg, pl): usage fractions over person-marked and number-marked
// tokens; all-zero halves when no token is marked.
std::array<double, kPersonNumberCount> person_number(const AnalyzedDocument& doc);

// The named, ordered feature space: Words block, then PosDist (17),
// ReadabilityStyle (22) and, for Model 2, PersonNumber (5).
class FeatureSchema {
public:
    FeatureSchema() = default;

    static FeatureSchema fit(std::span<const AnalyzedDocument> docs, bool use_person_number,
                             PosSoftmaxInput pos_input, const Lexicon& lexicon);

    std::size_t dimension() const;
    bool use_person_number() const { return use_person_number_; }
    PosSoftmaxInput pos_input() const { return pos_input_; }
    const VocabularyIndex& vocab() const { return vocab_; }
    const StyleScaler& scaler() const { return scaler_; }

    struct Column {
        FeatureTemplate tmpl;
        std::string_view name;
    };
    Column column(std::size_t index) const;
    std::size_t block_offset(FeatureTemplate t) const;

    static FeatureSchema assemble_parts(VocabularyIndex vocab, StyleScaler scaler,
                                        bool use_person_number, PosSoftmaxInput pos_input);

private:
    VocabularyIndex vocab_;
    StyleScaler scaler_;
    bool use_person_number_ = false;
    PosSoftmaxInput pos_input_ = PosSoftmaxInput::Counts;
};

// A document's position in the feature space: sparse word counts plus the
// dense tail (PosDist ‖ ReadabilityStyle ‖ PersonNumber as active). Dense
// values all lie in [0, 1].
struct FeatureVector {
    std::vector<SparseEntry> words;   // indices < dense_offset
    std::vector<double> dense;        // columns [dense_offset, dim)
    std::size_t dense_offset = 0;     // = vocabulary size
    std::size_t dim = 0;
};

FeatureVector assemble(const AnalyzedDocument& doc, const FeatureSchema& schema,
                       const Lexicon& lexicon);

// Corpus-level helpers. Per-document work is pure, so it parallelizes with
// order-preserving collection; threads <= 1 runs inline.
std::vector<AnalyzedDocument> analyze_corpus(const LabeledCorpus& corpus,
                                             const Analyzer& analyzer, int threads = 1);
std::vector<FeatureVector> assemble_corpus(std::span<const AnalyzedDocument> docs,
                                           const FeatureSchema& schema, const Lexicon& lexicon,
                                           int threads = 1);

} // namespace depsig
