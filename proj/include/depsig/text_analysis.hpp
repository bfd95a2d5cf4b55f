#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace depsig {

class Lexicon;

// The 17-tag universal tagset, in the fixed column order used by the
// POS-distribution feature block.
enum class PosTag : std::uint8_t {
    Adj, Adp, Adv, Aux, Cconj, Det, Intj, Noun, Num,
    Part, Pron, Propn, Punct, Sconj, Sym, Verb, X,
};

inline constexpr std::size_t kNumPosTags = 17;

std::string_view pos_tag_name(PosTag tag);
std::optional<PosTag> pos_tag_from_name(std::string_view name);

enum class Person : std::uint8_t { First = 1, Second = 2, Third = 3 };
enum class Number : std::uint8_t { Singular, Plural };

// Person/number marking of one token; both fields absent for words that
// carry no overt marking.
struct MorphFeatures {
    std::optional<Person> person;
    std::optional<Number> number;

    bool marked() const { return person.has_value() || number.has_value(); }
    bool operator==(const MorphFeatures&) const = default;
};

struct Token {
    std::string surface;
    std::string lower;     // ASCII-case-folded surface
    std::size_t start = 0; // byte offsets into the source text, [start, end)
    std::size_t end = 0;
    bool is_word = false;  // contains a letter or digit
};

// Half-open range of token indices forming one sentence.
struct SentenceRange {
    std::size_t begin = 0;
    std::size_t end = 0;
};

struct AnalyzedDocument {
    std::vector<Token> tokens;
    std::vector<SentenceRange> sentences;
    std::vector<PosTag> tags;          // parallel to tokens
    std::vector<MorphFeatures> morph;  // parallel to tokens
    std::vector<int> syllables;        // parallel; 0 for non-word tokens
};

// Splits text into maximal letter/digit runs (internal apostrophes kept, so
// "don't" stays one token) plus one token per remaining non-whitespace
// codepoint. Total and deterministic on arbitrary UTF-8; offsets are byte
// positions, so slicing the input at token spans reproduces it exactly.
std::vector<Token> tokenize(std::string_view text);

// Sentence boundaries fall after runs of '.', '!' or '?' tokens; trailing
// material without a terminator forms a final sentence. The ranges cover
// every token, in order.
std::vector<SentenceRange> split_sentences(std::span<const Token> tokens);

// Heuristic syllable count: maximal vowel groups (a e i o u y), minus one
// for a terminal silent "e" unless the word ends in consonant+"le"; never
// below 1.
int count_syllables(std::string_view word);

// Number of letter/digit codepoints in a token surface (apostrophes and
// other punctuation excluded). The "letters" behind the readability
// metrics.
std::size_t word_char_count(std::string_view surface);

// Deterministic linguistic analysis over a loaded lexicon. All methods are
// pure; the lexicon is read-only, so one Analyzer may serve many threads.
class Analyzer {
public:
    explicit Analyzer(const Lexicon& lexicon) : lex_(&lexicon) {}

    // Three stages: closed-class lexicon lookup on the lowercased form,
    // then shape/suffix rules (punctuation, digits, capitalized
    // non-sentence-initial words, -ly/-ing/-ed and friends), then NOUN.
    std::vector<PosTag> pos_tag(std::span<const Token> tokens,
                                std::span<const SentenceRange> sentences) const;

    // Person/number from the morphology columns of the lexicon. Verb-form
    // entries apply only when the token is tagged AUX or VERB; pronoun
    // entries apply unconditionally.
    std::vector<MorphFeatures> morph_analyze(std::span<const Token> tokens,
                                             std::span<const PosTag> tags) const;

    AnalyzedDocument analyze(std::string_view text) const;

    const Lexicon& lexicon() const { return *lex_; }

private:
    const Lexicon* lex_;
};

} // namespace depsig
