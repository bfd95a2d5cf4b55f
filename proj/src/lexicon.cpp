#include "depsig/lexicon.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

#include "depsig/errors.hpp"

#ifndef DEPSIG_DEFAULT_RESOURCE_DIR
#define DEPSIG_DEFAULT_RESOURCE_DIR "resources"
#endif

namespace depsig {

namespace {

std::vector<std::string> split_tabs(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
        if (i == line.size() || line[i] == '\t') {
            fields.emplace_back(line.substr(start, i - start));
            start = i + 1;
        }
    }
    while (!fields.empty() && fields.back().empty()) fields.pop_back();
    return fields;
}

std::string strip_cr(std::string line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
}

} // namespace

Lexicon Lexicon::load(const std::filesystem::path& dir) {
    Lexicon lex;

    const auto pos_path = dir / "pos_lexicon.txt";
    std::ifstream pos_in(pos_path);
    if (!pos_in) throw DataError("cannot open lexicon: " + pos_path.string());

    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(pos_in, raw)) {
        ++line_no;
        const std::string line = strip_cr(raw);
        if (line.empty() || line[0] == '#') continue;
        const auto fields = split_tabs(line);
        if (fields.size() < 2) {
            throw DataError(pos_path.string() + ":" + std::to_string(line_no) +
                            ": expected 'form<TAB>TAG'");
        }
        Entry entry;
        const auto tag = pos_tag_from_name(fields[1]);
        if (!tag) {
            throw DataError(pos_path.string() + ":" + std::to_string(line_no) +
                            ": unknown tag \"" + fields[1] + "\"");
        }
        entry.tag = *tag;
        if (fields.size() > 2 && fields[2] != "-") {
            if (fields[2] == "1") entry.person = Person::First;
            else if (fields[2] == "2") entry.person = Person::Second;
            else if (fields[2] == "3") entry.person = Person::Third;
            else throw DataError(pos_path.string() + ":" + std::to_string(line_no) +
                                 ": person must be 1, 2, 3 or -");
        }
        if (fields.size() > 3 && fields[3] != "-") {
            if (fields[3] == "sg") entry.number = Number::Singular;
            else if (fields[3] == "pl") entry.number = Number::Plural;
            else throw DataError(pos_path.string() + ":" + std::to_string(line_no) +
                                 ": number must be sg, pl or -");
        }
        if (fields.size() > 4) entry.lemma_be = (fields[4] == "be");
        lex.entries_[fields[0]] = entry;
    }

    const auto easy_path = dir / "easy_words.txt";
    std::ifstream easy_in(easy_path);
    if (easy_in) {
        while (std::getline(easy_in, raw)) {
            const std::string line = strip_cr(raw);
            if (line.empty() || line[0] == '#') continue;
            lex.easy_words_.insert(line);
        }
    }
    // Missing easy-word list is tolerated: difficult-word counting then
    // degrades to the complex-word count.

    return lex;
}

std::filesystem::path Lexicon::default_resource_dir() {
    if (const char* env = std::getenv("DEPSIG_RESOURCES"); env && *env) {
        return std::filesystem::path(env);
    }
    return std::filesystem::path(DEPSIG_DEFAULT_RESOURCE_DIR);
}

const Lexicon::Entry* Lexicon::find(std::string_view lower_form) const {
    const auto it = entries_.find(std::string(lower_form));
    return it == entries_.end() ? nullptr : &it->second;
}

bool Lexicon::is_easy_word(std::string_view lower_form) const {
    return easy_words_.count(std::string(lower_form)) > 0;
}

bool Lexicon::is_be_form(std::string_view lower_form) const {
    const Entry* entry = find(lower_form);
    return entry != nullptr && entry->lemma_be;
}

} // namespace depsig
