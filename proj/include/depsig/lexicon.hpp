#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>

#include "depsig/text_analysis.hpp"

namespace depsig {

// Bundled lexical resources, loaded once at startup and read-only after.
//
// pos_lexicon.txt: one entry per line,
//   form <TAB> TAG [<TAB> person|-] [<TAB> number|-] [<TAB> lemma]
// where person is 1|2|3, number is sg|pl, and the only lemma currently used
// is "be" (feeds the to-be style ratio). '#' starts a comment.
//
// easy_words.txt: one word per line; the Dale-Chall easy-word list. The file
// is optional: without it, difficult words fall back to the complex-word
// count (documented degradation).
class Lexicon {
public:
    struct Entry {
        PosTag tag = PosTag::X;
        std::optional<Person> person;
        std::optional<Number> number;
        bool lemma_be = false;
    };

    // Loads pos_lexicon.txt (required) and easy_words.txt (optional) from a
    // resource directory.
    static Lexicon load(const std::filesystem::path& dir);

    // DEPSIG_RESOURCES env var if set, else the directory compiled in at
    // build time.
    static std::filesystem::path default_resource_dir();

    const Entry* find(std::string_view lower_form) const;

    bool has_easy_words() const { return !easy_words_.empty(); }
    bool is_easy_word(std::string_view lower_form) const;
    bool is_be_form(std::string_view lower_form) const;

    std::size_t size() const { return entries_.size(); }

private:
    std::unordered_map<std::string, Entry> entries_;
    std::unordered_set<std::string> easy_words_;
};

} // namespace depsig
