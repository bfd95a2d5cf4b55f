#include "depsig/text_analysis.hpp"

#include <algorithm>
#include <array>

#include "depsig/lexicon.hpp"

namespace depsig {

namespace {

constexpr std::array<std::string_view, kNumPosTags> kTagNames = {
    "ADJ", "ADP", "ADV", "AUX", "CCONJ", "DET", "INTJ", "NOUN", "NUM",
    "PART", "PRON", "PROPN", "PUNCT", "SCONJ", "SYM", "VERB", "X",
};

struct Decoded {
    char32_t cp = 0;
    std::size_t len = 1;
};

// Minimal UTF-8 decoder; malformed bytes are consumed one at a time and
// classified as symbols, so analysis never fails on arbitrary input.
Decoded decode_utf8(std::string_view text, std::size_t i) {
    const auto byte = static_cast<unsigned char>(text[i]);
    if (byte < 0x80) return {byte, 1};
    std::size_t len = 0;
    char32_t cp = 0;
    if ((byte & 0xE0) == 0xC0) { len = 2; cp = byte & 0x1F; }
    else if ((byte & 0xF0) == 0xE0) { len = 3; cp = byte & 0x0F; }
    else if ((byte & 0xF8) == 0xF0) { len = 4; cp = byte & 0x07; }
    else return {0xFFFD, 1};
    if (i + len > text.size()) return {0xFFFD, 1};
    for (std::size_t k = 1; k < len; ++k) {
        const auto cont = static_cast<unsigned char>(text[i + k]);
        if ((cont & 0xC0) != 0x80) return {0xFFFD, 1};
        cp = (cp << 6) | (cont & 0x3F);
    }
    return {cp, len};
}

bool is_space_cp(char32_t cp) {
    switch (cp) {
    case U' ': case U'\t': case U'\n': case U'\r': case U'\v': case U'\f':
    case 0x00A0: case 0x1680: case 0x2028: case 0x2029: case 0x202F:
    case 0x205F: case 0x3000: case 0xFEFF:
        return true;
    default:
        return cp >= 0x2000 && cp <= 0x200A;
    }
}

bool is_ascii_digit(char32_t cp) { return cp >= U'0' && cp <= U'9'; }

bool is_letter_cp(char32_t cp) {
    if ((cp >= U'a' && cp <= U'z') || (cp >= U'A' && cp <= U'Z')) return true;
    if (cp >= 0xC0 && cp <= 0xFF) return cp != 0xD7 && cp != 0xF7;
    if (cp >= 0x100 && cp <= 0x24F) return true;  // Latin Extended-A/B
    if (cp >= 0x370 && cp <= 0x3FF) return true;  // Greek
    if (cp >= 0x400 && cp <= 0x52F) return true;  // Cyrillic
    return false;
}

bool is_word_cp(char32_t cp) { return is_ascii_digit(cp) || is_letter_cp(cp); }

bool is_apostrophe_cp(char32_t cp) { return cp == U'\'' || cp == 0x2019; }

bool is_upper_cp(char32_t cp) {
    if (cp >= U'A' && cp <= U'Z') return true;
    return cp >= 0xC0 && cp <= 0xDE && cp != 0xD7;
}

bool is_punct_cp(char32_t cp) {
    switch (cp) {
    case U'.': case U',': case U';': case U':': case U'!': case U'?':
    case U'\'': case U'"': case U'`': case U'(': case U')': case U'[':
    case U']': case U'{': case U'}': case U'-': case U'/':
    case 0x2013: case 0x2014: case 0x2018: case 0x2019: case 0x201C:
    case 0x201D: case 0x2026: case 0x00AB: case 0x00BB:
        return true;
    default:
        return false;
    }
}

std::string ascii_lower(std::string_view s) {
    std::string out(s);
    for (char& c : out) {
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    }
    return out;
}

bool ends_with(std::string_view s, std::string_view suffix) {
    return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

} // namespace

std::string_view pos_tag_name(PosTag tag) {
    return kTagNames[static_cast<std::size_t>(tag)];
}

std::optional<PosTag> pos_tag_from_name(std::string_view name) {
    for (std::size_t i = 0; i < kTagNames.size(); ++i) {
        if (kTagNames[i] == name) return static_cast<PosTag>(i);
    }
    return std::nullopt;
}

std::vector<Token> tokenize(std::string_view text) {
    std::vector<Token> tokens;
    std::size_t i = 0;
    while (i < text.size()) {
        const Decoded d = decode_utf8(text, i);
        if (is_space_cp(d.cp)) {
            i += d.len;
            continue;
        }
        const std::size_t start = i;
        if (is_word_cp(d.cp)) {
            i += d.len;
            while (i < text.size()) {
                const Decoded next = decode_utf8(text, i);
                if (is_word_cp(next.cp)) {
                    i += next.len;
                    continue;
                }
                if (is_apostrophe_cp(next.cp) && i + next.len < text.size()) {
                    // keep the apostrophe only when a word character follows
                    const Decoded after = decode_utf8(text, i + next.len);
                    if (is_word_cp(after.cp)) {
                        i += next.len + after.len;
                        continue;
                    }
                }
                break;
            }
        } else {
            i += d.len;
        }
        Token tok;
        tok.surface = std::string(text.substr(start, i - start));
        tok.lower = ascii_lower(tok.surface);
        tok.start = start;
        tok.end = i;
        tok.is_word = is_word_cp(d.cp);
        tokens.push_back(std::move(tok));
    }
    return tokens;
}

namespace {

bool is_terminator(const Token& tok) {
    return !tok.is_word && (tok.surface == "." || tok.surface == "!" || tok.surface == "?");
}

} // namespace

std::vector<SentenceRange> split_sentences(std::span<const Token> tokens) {
    std::vector<SentenceRange> sentences;
    std::size_t begin = 0;
    std::size_t i = 0;
    while (i < tokens.size()) {
        if (is_terminator(tokens[i])) {
            while (i + 1 < tokens.size() && is_terminator(tokens[i + 1])) ++i;
            sentences.push_back({begin, i + 1});
            begin = i + 1;
        }
        ++i;
    }
    if (begin < tokens.size()) sentences.push_back({begin, tokens.size()});
    return sentences;
}

int count_syllables(std::string_view word) {
    std::string letters;
    letters.reserve(word.size());
    for (char c : ascii_lower(word)) {
        if (c >= 'a' && c <= 'z') letters += c;
    }
    if (letters.empty()) return 1;

    auto is_vowel = [](char c) {
        return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u' || c == 'y';
    };
    int groups = 0;
    bool in_group = false;
    for (char c : letters) {
        if (is_vowel(c)) {
            if (!in_group) ++groups;
            in_group = true;
        } else {
            in_group = false;
        }
    }
    const std::size_t n = letters.size();
    if (letters.back() == 'e') {
        const bool le_after_consonant =
            n >= 3 && letters[n - 2] == 'l' && !is_vowel(letters[n - 3]);
        if (!le_after_consonant) --groups;
    }
    return std::max(groups, 1);
}

std::size_t word_char_count(std::string_view surface) {
    std::size_t count = 0;
    std::size_t i = 0;
    while (i < surface.size()) {
        const Decoded d = decode_utf8(surface, i);
        if (is_word_cp(d.cp)) ++count;
        i += d.len;
    }
    return count;
}

std::vector<PosTag> Analyzer::pos_tag(std::span<const Token> tokens,
                                      std::span<const SentenceRange> sentences) const {
    // First word-bearing token of each sentence: exempt from the PROPN rule.
    std::vector<bool> sentence_initial(tokens.size(), false);
    for (const SentenceRange& s : sentences) {
        for (std::size_t i = s.begin; i < s.end && i < tokens.size(); ++i) {
            if (tokens[i].is_word) {
                sentence_initial[i] = true;
                break;
            }
        }
    }

    std::vector<PosTag> tags;
    tags.reserve(tokens.size());
    for (std::size_t ti = 0; ti < tokens.size(); ++ti) {
        const Token& tok = tokens[ti];

        if (const Lexicon::Entry* entry = lex_->find(tok.lower)) {
            tags.push_back(entry->tag);
            continue;
        }
        if (!tok.is_word) {
            const Decoded d = decode_utf8(tok.surface, 0);
            tags.push_back(is_punct_cp(d.cp) ? PosTag::Punct : PosTag::Sym);
            continue;
        }

        const Decoded first = decode_utf8(tok.surface, 0);
        if (is_ascii_digit(first.cp)) {
            tags.push_back(PosTag::Num);
            continue;
        }

        // Capitalized (initial upper, no further uppercase -- all-caps is
        // shouting, not a name) and not sentence-initial.
        if (is_upper_cp(first.cp) && !sentence_initial[ti]) {
            bool other_upper = false;
            for (std::size_t i = first.len; i < tok.surface.size();) {
                const Decoded d = decode_utf8(tok.surface, i);
                if (is_upper_cp(d.cp)) {
                    other_upper = true;
                    break;
                }
                i += d.len;
            }
            if (!other_upper) {
                tags.push_back(PosTag::Propn);
                continue;
            }
        }

        const std::string& low = tok.lower;
        if (ends_with(low, "ly") && low.size() >= 3) tags.push_back(PosTag::Adv);
        else if (ends_with(low, "ing") && low.size() >= 5) tags.push_back(PosTag::Verb);
        else if (ends_with(low, "ed") && low.size() >= 4) tags.push_back(PosTag::Verb);
        else if ((ends_with(low, "ful") || ends_with(low, "less") || ends_with(low, "ous") ||
                  ends_with(low, "ive") || ends_with(low, "able") || ends_with(low, "ible")) &&
                 low.size() >= 5) tags.push_back(PosTag::Adj);
        else if (ends_with(low, "est") && low.size() >= 5) tags.push_back(PosTag::Adj);
        else tags.push_back(PosTag::Noun);
    }
    return tags;
}

std::vector<MorphFeatures> Analyzer::morph_analyze(std::span<const Token> tokens,
                                                   std::span<const PosTag> tags) const {
    std::vector<MorphFeatures> morph(tokens.size());
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        const Lexicon::Entry* entry = lex_->find(tokens[i].lower);
        if (!entry || (!entry->person && !entry->number)) continue;
        if (entry->tag == PosTag::Aux || entry->tag == PosTag::Verb) {
            // verb-form marking counts only when the token acts as AUX/VERB
            if (i < tags.size() && tags[i] != PosTag::Aux && tags[i] != PosTag::Verb) continue;
        }
        morph[i].person = entry->person;
        morph[i].number = entry->number;
    }
    return morph;
}

AnalyzedDocument Analyzer::analyze(std::string_view text) const {
    AnalyzedDocument doc;
    doc.tokens = tokenize(text);
    doc.sentences = split_sentences(doc.tokens);
    doc.tags = pos_tag(doc.tokens, doc.sentences);
    doc.morph = morph_analyze(doc.tokens, doc.tags);
    doc.syllables.reserve(doc.tokens.size());
    for (const Token& tok : doc.tokens) {
        doc.syllables.push_back(tok.is_word ? count_syllables(tok.lower) : 0);
    }
    return doc;
}

} // namespace depsig
