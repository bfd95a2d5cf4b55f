#include "depsig/label.hpp"

#include <cctype>

namespace depsig {

std::string_view label_name(Label label) {
    switch (label) {
    case Label::NotDepression: return "not depression";
    case Label::Moderate: return "moderate";
    case Label::Severe: return "severe";
    }
    return "?";
}

namespace {

std::string normalize(std::string_view raw) {
    std::size_t begin = 0;
    std::size_t end = raw.size();
    while (begin < end && std::isspace(static_cast<unsigned char>(raw[begin]))) ++begin;
    while (end > begin && std::isspace(static_cast<unsigned char>(raw[end - 1]))) --end;
    std::string out;
    out.reserve(end - begin);
    for (std::size_t i = begin; i < end; ++i) {
        out += static_cast<char>(std::tolower(static_cast<unsigned char>(raw[i])));
    }
    return out;
}

} // namespace

LabelAliases LabelAliases::defaults() {
    LabelAliases a;
    a.add("not depression", Label::NotDepression);
    a.add("not_depression", Label::NotDepression);
    a.add("no depression", Label::NotDepression);
    a.add("0", Label::NotDepression);
    a.add("moderate", Label::Moderate);
    a.add("1", Label::Moderate);
    a.add("severe", Label::Severe);
    a.add("2", Label::Severe);
    return a;
}

void LabelAliases::add(std::string_view alias, Label label) {
    aliases_[normalize(alias)] = label;
}

std::optional<Label> LabelAliases::parse(std::string_view raw) const {
    auto it = aliases_.find(normalize(raw));
    if (it == aliases_.end()) return std::nullopt;
    return it->second;
}

} // namespace depsig
