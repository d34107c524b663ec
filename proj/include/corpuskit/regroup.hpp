#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <set>
#include <span>
#include <string>
#include <string_view>

namespace corpuskit {

class Vocabulary;

/// The single-character tokens eligible for merging. An empty rule set
/// makes regroup the identity.
struct RegroupRules {
    std::set<std::string> infix_tokens;

    static RegroupRules from_vocab(const Vocabulary& vocab);

    /// Builds rules from explicit token texts; each must be exactly one
    /// code point.
    static RegroupRules from_tokens(std::span<const std::string> tokens);

    bool empty() const { return infix_tokens.empty(); }
};

struct RegroupResult {
    std::string text;
    std::size_t merged_tokens = 0;   // infix tokens merged into ≥1 neighbor
    std::size_t removed_spaces = 0;  // always text-length delta vs input
};

/// Merges isolated infix tokens into neighboring word fragments: a token
/// that is exactly one infix character joins its left neighbor when that
/// neighbor ends in a letter and its right neighbor when that neighbor
/// starts with one. Only spaces are ever removed; repeated to fixpoint.
std::string regroup(std::string_view line, const RegroupRules& rules);

RegroupResult regroup_counted(std::string_view line, const RegroupRules& rules);

/// Applies regroup line by line; returns the total number of merged
/// tokens. Output lines are LF-terminated.
std::size_t regroup_file(const std::filesystem::path& input,
                         const std::filesystem::path& output, const RegroupRules& rules);

std::size_t regroup_stream(std::istream& in, std::ostream& out, const RegroupRules& rules);

}  // namespace corpuskit
