#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "depsig/label.hpp"
#include "depsig/tabular.hpp"

namespace depsig {

struct Document {
    std::string id;
    std::string text; // UTF-8; may be empty
};

// Ordered collection of documents with an optional parallel label list.
// Immutable after load; iteration order is insertion order.
class LabeledCorpus {
public:
    LabeledCorpus() = default;

    void add(Document doc);              // unlabeled corpora only
    void add(Document doc, Label label); // labeled corpora only

    bool labeled() const { return !labels_.empty(); }
    std::size_t size() const { return docs_.size(); }
    bool empty() const { return docs_.empty(); }

    const Document& doc(std::size_t i) const { return docs_[i]; }
    Label label(std::size_t i) const { return labels_[i]; }
    const std::vector<Document>& docs() const { return docs_; }
    const std::vector<Label>& labels() const { return labels_; }

private:
    std::vector<Document> docs_;
    std::vector<Label> labels_;
};

struct ClassDistribution {
    std::array<std::size_t, kNumClasses> counts{};
    std::size_t total = 0;
};

// Which header columns hold what. `label` empty means the corpus is loaded
// unlabeled even if a label column exists.
struct ColumnMap {
    std::string id = "id";
    std::string text = "text";
    std::optional<std::string> label = "label";
};

LabeledCorpus load_corpus(const std::filesystem::path& path, TableFormat format,
                          const ColumnMap& columns,
                          const LabelAliases& aliases = LabelAliases::defaults());

// Writes id/text[/label] with a header row. Labels use their canonical
// strings. TSV refuses texts containing tabs or newlines; use CSV for those.
void save_corpus(const LabeledCorpus& corpus, const std::filesystem::path& path,
                 TableFormat format);

ClassDistribution class_distribution(const LabeledCorpus& corpus);

// Seeded deterministic stratified partition. Per class c the test set gets
// round(test_fraction * |c|) documents (half away from zero); both halves
// keep the original corpus order.
std::pair<LabeledCorpus, LabeledCorpus> stratified_split(const LabeledCorpus& corpus,
                                                         double test_fraction,
                                                         std::uint64_t seed);

struct HistogramBucket {
    std::size_t start = 0; // inclusive word count
    std::size_t end = 0;   // inclusive
    std::size_t count = 0;
};

// Post-length histogram in words (analysis tokenizer). Buckets run
// contiguously from 0 through the longest document; counts sum to the
// corpus size. Empty corpus gives an empty histogram.
std::vector<HistogramBucket> length_histogram(const LabeledCorpus& corpus,
                                              std::size_t bucket_width);

} // namespace depsig
