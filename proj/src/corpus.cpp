#include "depsig/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <unordered_set>

#include "depsig/errors.hpp"
#include "depsig/rng.hpp"
#include "depsig/text_analysis.hpp"

namespace depsig {

void LabeledCorpus::add(Document doc) {
    if (!labels_.empty()) {
        throw DataError("cannot add an unlabeled document to a labeled corpus");
    }
    docs_.push_back(std::move(doc));
}

void LabeledCorpus::add(Document doc, Label label) {
    if (labels_.size() != docs_.size()) {
        throw DataError("cannot add a labeled document to an unlabeled corpus");
    }
    docs_.push_back(std::move(doc));
    labels_.push_back(label);
}

LabeledCorpus load_corpus(const std::filesystem::path& path, TableFormat format,
                          const ColumnMap& columns, const LabelAliases& aliases) {
    const Table table = read_table(path, format);

    const std::size_t id_col = table.column(columns.id);
    if (id_col == Table::npos) throw MissingColumn(columns.id);
    const std::size_t text_col = table.column(columns.text);
    if (text_col == Table::npos) throw MissingColumn(columns.text);
    std::size_t label_col = Table::npos;
    if (columns.label) {
        label_col = table.column(*columns.label);
        if (label_col == Table::npos) throw MissingColumn(*columns.label);
    }

    LabeledCorpus corpus;
    std::unordered_set<std::string> seen_ids;
    for (const TableRow& row : table.rows) {
        if (row.fields.size() != table.header.size()) {
            throw MalformedRow(row.line_no, "expected " + std::to_string(table.header.size()) +
                                                " fields, got " + std::to_string(row.fields.size()));
        }
        Document doc{row.fields[id_col], row.fields[text_col]};
        if (!seen_ids.insert(doc.id).second) throw DuplicateId(row.line_no, doc.id);

        if (label_col != Table::npos) {
            const std::string& raw = row.fields[label_col];
            const auto label = aliases.parse(raw);
            if (!label) throw UnknownLabel(row.line_no, raw);
            corpus.add(std::move(doc), *label);
        } else {
            corpus.add(std::move(doc));
        }
    }
    return corpus;
}

void save_corpus(const LabeledCorpus& corpus, const std::filesystem::path& path,
                 TableFormat format) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write file: " + path.string());

    const char sep = format == TableFormat::Tsv ? '\t' : ',';
    const bool labeled = corpus.labeled();
    out << "id" << sep << "text";
    if (labeled) out << sep << "label";
    out << '\n';

    for (std::size_t i = 0; i < corpus.size(); ++i) {
        const Document& doc = corpus.doc(i);
        const std::size_t row = i + 2; // 1-based, after the header
        if (format == TableFormat::Tsv) {
            out << tsv_field(doc.id, row) << sep << tsv_field(doc.text, row);
            if (labeled) out << sep << label_name(corpus.label(i));
        } else {
            out << csv_field(doc.id) << sep << csv_field(doc.text);
            if (labeled) out << sep << csv_field(std::string(label_name(corpus.label(i))));
        }
        out << '\n';
    }
    if (!out) throw DataError("write failed: " + path.string());
}

ClassDistribution class_distribution(const LabeledCorpus& corpus) {
    if (!corpus.labeled() && !corpus.empty()) {
        throw DataError("class_distribution requires a labeled corpus");
    }
    ClassDistribution dist;
    for (Label label : corpus.labels()) {
        ++dist.counts[static_cast<std::size_t>(label)];
    }
    dist.total = corpus.size();
    return dist;
}

std::pair<LabeledCorpus, LabeledCorpus> stratified_split(const LabeledCorpus& corpus,
                                                         double test_fraction,
                                                         std::uint64_t seed) {
    if (!corpus.labeled()) throw DataError("stratified_split requires a labeled corpus");
    if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
        throw DataError("test fraction must lie strictly between 0 and 1");
    }

    std::array<std::vector<std::size_t>, kNumClasses> per_class;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        per_class[static_cast<std::size_t>(corpus.label(i))].push_back(i);
    }
    for (Label label : kAllLabels) {
        const auto& members = per_class[static_cast<std::size_t>(label)];
        if (members.size() < 2) {
            throw ClassTooSmall(std::string(label_name(label)), members.size());
        }
    }

    Rng rng(seed);
    std::vector<bool> in_test(corpus.size(), false);
    for (Label label : kAllLabels) {
        auto members = per_class[static_cast<std::size_t>(label)];
        const auto take = static_cast<std::size_t>(
            std::lround(test_fraction * static_cast<double>(members.size())));
        shuffle(members, rng);
        for (std::size_t k = 0; k < take; ++k) in_test[members[k]] = true;
    }

    LabeledCorpus train, test;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        (in_test[i] ? test : train).add(corpus.doc(i), corpus.label(i));
    }
    return {std::move(train), std::move(test)};
}

std::vector<HistogramBucket> length_histogram(const LabeledCorpus& corpus,
                                              std::size_t bucket_width) {
    if (bucket_width < 1) throw DataError("bucket width must be >= 1");
    if (corpus.empty()) return {};

    std::vector<std::size_t> lengths;
    lengths.reserve(corpus.size());
    std::size_t max_len = 0;
    for (const Document& doc : corpus.docs()) {
        std::size_t words = 0;
        for (const Token& tok : tokenize(doc.text)) {
            if (tok.is_word) ++words;
        }
        lengths.push_back(words);
        max_len = std::max(max_len, words);
    }

    std::vector<HistogramBucket> buckets(max_len / bucket_width + 1);
    for (std::size_t b = 0; b < buckets.size(); ++b) {
        buckets[b].start = b * bucket_width;
        buckets[b].end = (b + 1) * bucket_width - 1;
    }
    for (std::size_t words : lengths) ++buckets[words / bucket_width].count;
    return buckets;
}

} // namespace depsig
