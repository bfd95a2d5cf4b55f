#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace depsig {

// Ordinal class identity. The order is fixed: it is the index into every
// per-class array in the toolkit.
enum class Label : int {
    NotDepression = 0,
    Moderate = 1,
    Severe = 2,
};

inline constexpr std::size_t kNumClasses = 3;
inline constexpr std::array<Label, kNumClasses> kAllLabels = {
    Label::NotDepression, Label::Moderate, Label::Severe};

std::string_view label_name(Label label);

// Maps persisted label strings to classes. Matching is case-insensitive and
// whitespace-trimmed. Ships with the shared-task strings plus a few obvious
// variants; callers may add their own aliases.
class LabelAliases {
public:
    static LabelAliases defaults();

    void add(std::string_view alias, Label label);

    // Returns the class for a raw string, or nullopt if no alias matches.
    std::optional<Label> parse(std::string_view raw) const;

private:
    std::map<std::string, Label> aliases_; // keys lowercased and trimmed
};

} // namespace depsig
