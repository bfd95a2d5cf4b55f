#include "depsig/features.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <set>
#include <thread>

#include "depsig/errors.hpp"

namespace depsig {

const std::array<std::string_view, kStyleCount> kStyleNames = {
    // grade-level metrics
    "flesch_reading_ease", "kincaid_grade", "ari", "coleman_liau", "gunning_fog",
    "lix", "rix", "smog", "dale_chall",
    // counts and ratios
    "word_count", "sentence_count", "chars_per_word", "syllables_per_word",
    "words_per_sentence", "type_token_ratio", "long_word_ratio", "complex_word_ratio",
    "pronoun_ratio", "conjunction_ratio", "preposition_ratio", "aux_ratio", "tobe_ratio",
};

const std::array<std::string_view, kPersonNumberCount> kPersonNumberNames = {
    "p1", "p2", "p3", "sg", "pl",
};

std::string_view feature_template_name(FeatureTemplate t) {
    switch (t) {
    case FeatureTemplate::Words: return "words";
    case FeatureTemplate::PosDist: return "pos";
    case FeatureTemplate::ReadabilityStyle: return "read";
    case FeatureTemplate::PersonNumber: return "pnum";
    }
    return "?";
}

std::optional<FeatureTemplate> feature_template_from_name(std::string_view name) {
    if (name == "words") return FeatureTemplate::Words;
    if (name == "pos") return FeatureTemplate::PosDist;
    if (name == "read") return FeatureTemplate::ReadabilityStyle;
    if (name == "pnum") return FeatureTemplate::PersonNumber;
    return std::nullopt;
}

namespace {

std::size_t codepoint_count(std::string_view s) {
    std::size_t n = 0;
    for (char c : s) {
        if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) ++n;
    }
    return n;
}

bool vocab_eligible(const Token& tok) {
    return tok.is_word && codepoint_count(tok.lower) >= 2;
}

// Letters/digits in a word token (apostrophes excluded): the "letters" count
// behind ARI, Coleman-Liau and the long-word ratio.
std::size_t letter_count(const Token& tok) { return word_char_count(tok.surface); }

void run_indexed(std::size_t n, int threads, const std::function<void(std::size_t)>& work) {
    if (threads <= 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) work(i);
        return;
    }
    const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(threads), n);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < n; i += workers) work(i);
        });
    }
    for (auto& t : pool) t.join();
}

} // namespace

VocabularyIndex VocabularyIndex::fit(std::span<const AnalyzedDocument> docs) {
    std::set<std::string> seen;
    for (const AnalyzedDocument& doc : docs) {
        for (const Token& tok : doc.tokens) {
            if (vocab_eligible(tok)) seen.insert(tok.lower);
        }
    }
    if (seen.empty()) throw EmptyVocabulary();
    return from_tokens(std::vector<std::string>(seen.begin(), seen.end()));
}

VocabularyIndex VocabularyIndex::from_tokens(std::vector<std::string> tokens) {
    VocabularyIndex vocab;
    vocab.tokens_ = std::move(tokens);
    vocab.index_.reserve(vocab.tokens_.size());
    for (std::uint32_t i = 0; i < vocab.tokens_.size(); ++i) {
        vocab.index_.emplace(vocab.tokens_[i], i);
    }
    return vocab;
}

std::optional<std::uint32_t> VocabularyIndex::index_of(std::string_view token) const {
    const auto it = index_.find(std::string(token));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::vector<SparseEntry> vectorize_words(const AnalyzedDocument& doc,
                                         const VocabularyIndex& vocab) {
    std::map<std::uint32_t, std::uint32_t> counts;
    for (const Token& tok : doc.tokens) {
        if (!vocab_eligible(tok)) continue;
        if (const auto idx = vocab.index_of(tok.lower)) ++counts[*idx];
    }
    std::vector<SparseEntry> entries;
    entries.reserve(counts.size());
    for (const auto& [index, count] : counts) entries.push_back({index, count});
    return entries;
}

std::array<double, kNumPosTags> pos_distribution(const AnalyzedDocument& doc,
                                                 PosSoftmaxInput input) {
    std::array<double, kNumPosTags> values{};
    for (PosTag tag : doc.tags) ++values[static_cast<std::size_t>(tag)];

    if (input == PosSoftmaxInput::RelFreq) {
        const double total = static_cast<double>(doc.tags.size());
        if (total > 0) {
            for (double& v : values) v /= total;
        }
    }

    const double max = *std::max_element(values.begin(), values.end());
    double sum = 0.0;
    for (double& v : values) {
        v = std::exp(v - max);
        sum += v;
    }
    for (double& v : values) v /= sum;
    return values;
}

std::array<double, kStyleCount> readability_style(const AnalyzedDocument& doc,
                                                  const Lexicon& lexicon) {
    std::array<double, kStyleCount> out{};

    std::size_t words = 0, syllables = 0, letters = 0;
    std::size_t complex_words = 0, long_words = 0, difficult_words = 0;
    std::set<std::string_view> types;
    std::size_t pronouns = 0, conjunctions = 0, prepositions = 0, auxiliaries = 0, be_forms = 0;

    for (std::size_t i = 0; i < doc.tokens.size(); ++i) {
        const Token& tok = doc.tokens[i];
        switch (doc.tags[i]) {
        case PosTag::Pron: ++pronouns; break;
        case PosTag::Cconj:
        case PosTag::Sconj: ++conjunctions; break;
        case PosTag::Adp: ++prepositions; break;
        case PosTag::Aux: ++auxiliaries; break;
        default: break;
        }
        if (!tok.is_word) continue;
        ++words;
        syllables += static_cast<std::size_t>(doc.syllables[i]);
        const std::size_t tok_letters = letter_count(tok);
        letters += tok_letters;
        if (tok_letters > 6) ++long_words;
        if (doc.syllables[i] >= 3) ++complex_words;
        if (lexicon.has_easy_words()) {
            if (!lexicon.is_easy_word(tok.lower)) ++difficult_words;
        }
        if (lexicon.is_be_form(tok.lower)) ++be_forms;
        types.insert(tok.lower);
    }
    if (!lexicon.has_easy_words()) difficult_words = complex_words;

    if (words == 0) return out; // all-zero by convention

    const double w = static_cast<double>(words);
    const double s = static_cast<double>(doc.sentences.size()); // >= 1 when W >= 1
    const double y = static_cast<double>(syllables);
    const double l = static_cast<double>(letters);
    const double cw = static_cast<double>(complex_words);
    const double lw = static_cast<double>(long_words);
    const double dw = static_cast<double>(difficult_words);

    out[0] = 206.835 - 1.015 * (w / s) - 84.6 * (y / w);            // flesch_reading_ease
    out[1] = 0.39 * (w / s) + 11.8 * (y / w) - 15.59;               // kincaid_grade
    out[2] = 4.71 * (l / w) + 0.5 * (w / s) - 21.43;                // ari
    out[3] = 0.0588 * (100.0 * l / w) - 0.296 * (100.0 * s / w) - 15.8; // coleman_liau
    out[4] = 0.4 * ((w / s) + 100.0 * cw / w);                      // gunning_fog
    out[5] = (w / s) + 100.0 * lw / w;                              // lix
    out[6] = lw / s;                                                // rix
    out[7] = 1.043 * std::sqrt(cw * 30.0 / s) + 3.1291;             // smog
    out[8] = 0.1579 * (100.0 * dw / w) + 0.0496 * (w / s);          // dale_chall
    if (dw / w > 0.05) out[8] += 3.6365;

    out[9] = w;                                      // word_count
    out[10] = s;                                     // sentence_count
    out[11] = l / w;                                 // chars_per_word
    out[12] = y / w;                                 // syllables_per_word
    out[13] = w / s;                                 // words_per_sentence
    out[14] = static_cast<double>(types.size()) / w; // type_token_ratio
    out[15] = lw / w;                                // long_word_ratio
    out[16] = cw / w;                                // complex_word_ratio
    out[17] = static_cast<double>(pronouns) / w;     // pronoun_ratio
    out[18] = static_cast<double>(conjunctions) / w; // conjunction_ratio
    out[19] = static_cast<double>(prepositions) / w; // preposition_ratio
    out[20] = static_cast<double>(auxiliaries) / w;  // aux_ratio
    out[21] = static_cast<double>(be_forms) / w;     // tobe_ratio
    return out;
}

StyleScaler StyleScaler::fit(std::span<const std::array<double, kStyleCount>> raw_rows) {
    StyleScaler scaler;
    scaler.fitted_ = true;
    scaler.min_.fill(0.0);
    scaler.max_.fill(0.0);
    bool first = true;
    for (const auto& row : raw_rows) {
        for (std::size_t c = 0; c < kStyleCount; ++c) {
            if (first) {
                scaler.min_[c] = scaler.max_[c] = row[c];
            } else {
                scaler.min_[c] = std::min(scaler.min_[c], row[c]);
                scaler.max_[c] = std::max(scaler.max_[c], row[c]);
            }
        }
        first = false;
    }
    return scaler;
}

StyleScaler StyleScaler::from_params(const std::array<double, kStyleCount>& mins,
                                     const std::array<double, kStyleCount>& maxs) {
    StyleScaler scaler;
    scaler.fitted_ = true;
    scaler.min_ = mins;
    scaler.max_ = maxs;
    return scaler;
}

std::array<double, kStyleCount> StyleScaler::scale(
    const std::array<double, kStyleCount>& raw) const {
    if (!fitted_) throw ScalerNotFitted();
    std::array<double, kStyleCount> out{};
    for (std::size_t c = 0; c < kStyleCount; ++c) {
        const double span = max_[c] - min_[c];
        if (span <= 0.0) {
            out[c] = 0.0; // constant training column
        } else {
            out[c] = std::clamp((raw[c] - min_[c]) / span, 0.0, 1.0);
        }
    }
    return out;
}

std::array<double, kPersonNumberCount> person_number(const AnalyzedDocument& doc) {
    std::array<double, kPersonNumberCount> out{};
    std::size_t person_marked = 0, number_marked = 0;
    std::array<std::size_t, 3> person_counts{};
    std::array<std::size_t, 2> number_counts{};
    for (const MorphFeatures& m : doc.morph) {
        if (m.person) {
            ++person_marked;
            ++person_counts[static_cast<std::size_t>(*m.person) - 1];
        }
        if (m.number) {
            ++number_marked;
            ++number_counts[static_cast<std::size_t>(*m.number)];
        }
    }
    if (person_marked > 0) {
        for (std::size_t k = 0; k < 3; ++k) {
            out[k] = static_cast<double>(person_counts[k]) / static_cast<double>(person_marked);
        }
    }
    if (number_marked > 0) {
        out[3] = static_cast<double>(number_counts[0]) / static_cast<double>(number_marked);
        out[4] = static_cast<double>(number_counts[1]) / static_cast<double>(number_marked);
    }
    return out;
}

FeatureSchema FeatureSchema::fit(std::span<const AnalyzedDocument> docs, bool use_person_number,
                                 PosSoftmaxInput pos_input, const Lexicon& lexicon) {
    FeatureSchema schema;
    schema.vocab_ = VocabularyIndex::fit(docs);
    std::vector<std::array<double, kStyleCount>> raw_rows;
    raw_rows.reserve(docs.size());
    for (const AnalyzedDocument& doc : docs) {
        raw_rows.push_back(readability_style(doc, lexicon));
    }
    schema.scaler_ = StyleScaler::fit(raw_rows);
    schema.use_person_number_ = use_person_number;
    schema.pos_input_ = pos_input;
    return schema;
}

FeatureSchema FeatureSchema::assemble_parts(VocabularyIndex vocab, StyleScaler scaler,
                                            bool use_person_number, PosSoftmaxInput pos_input) {
    FeatureSchema schema;
    schema.vocab_ = std::move(vocab);
    schema.scaler_ = std::move(scaler);
    schema.use_person_number_ = use_person_number;
    schema.pos_input_ = pos_input;
    return schema;
}

std::size_t FeatureSchema::dimension() const {
    return vocab_.size() + kNumPosTags + kStyleCount +
           (use_person_number_ ? kPersonNumberCount : 0);
}

std::size_t FeatureSchema::block_offset(FeatureTemplate t) const {
    switch (t) {
    case FeatureTemplate::Words: return 0;
    case FeatureTemplate::PosDist: return vocab_.size();
    case FeatureTemplate::ReadabilityStyle: return vocab_.size() + kNumPosTags;
    case FeatureTemplate::PersonNumber: return vocab_.size() + kNumPosTags + kStyleCount;
    }
    return 0;
}

FeatureSchema::Column FeatureSchema::column(std::size_t index) const {
    const std::size_t v = vocab_.size();
    if (index < v) {
        return {FeatureTemplate::Words, vocab_.tokens()[index]};
    }
    index -= v;
    if (index < kNumPosTags) {
        return {FeatureTemplate::PosDist, pos_tag_name(static_cast<PosTag>(index))};
    }
    index -= kNumPosTags;
    if (index < kStyleCount) {
        return {FeatureTemplate::ReadabilityStyle, kStyleNames[index]};
    }
    index -= kStyleCount;
    if (use_person_number_ && index < kPersonNumberCount) {
        return {FeatureTemplate::PersonNumber, kPersonNumberNames[index]};
    }
    throw DimensionMismatch("column index out of range");
}

FeatureVector assemble(const AnalyzedDocument& doc, const FeatureSchema& schema,
                       const Lexicon& lexicon) {
    if (!schema.vocab().fitted()) throw VocabularyMissing();
    if (!schema.scaler().fitted()) throw ScalerNotFitted();

    FeatureVector vec;
    vec.dense_offset = schema.vocab().size();
    vec.dim = schema.dimension();
    vec.words = vectorize_words(doc, schema.vocab());

    vec.dense.reserve(vec.dim - vec.dense_offset);
    for (double v : pos_distribution(doc, schema.pos_input())) vec.dense.push_back(v);
    for (double v : schema.scaler().scale(readability_style(doc, lexicon))) {
        vec.dense.push_back(v);
    }
    if (schema.use_person_number()) {
        for (double v : person_number(doc)) vec.dense.push_back(v);
    }
    return vec;
}

std::vector<AnalyzedDocument> analyze_corpus(const LabeledCorpus& corpus,
                                             const Analyzer& analyzer, int threads) {
    std::vector<AnalyzedDocument> docs(corpus.size());
    run_indexed(corpus.size(), threads,
                [&](std::size_t i) { docs[i] = analyzer.analyze(corpus.doc(i).text); });
    return docs;
}

std::vector<FeatureVector> assemble_corpus(std::span<const AnalyzedDocument> docs,
                                           const FeatureSchema& schema, const Lexicon& lexicon,
                                           int threads) {
    std::vector<FeatureVector> vectors(docs.size());
    run_indexed(docs.size(), threads,
                [&](std::size_t i) { vectors[i] = assemble(docs[i], schema, lexicon); });
    return vectors;
}

} // namespace depsig
