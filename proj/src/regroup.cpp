#include "corpuskit/regroup.hpp"

#include <fstream>
#include <vector>

#include "corpuskit/error.hpp"
#include "corpuskit/text.hpp"
#include "corpuskit/vocab.hpp"

namespace corpuskit {

RegroupRules RegroupRules::from_vocab(const Vocabulary& vocab) {
    RegroupRules rules;
    for (const AddedToken& token : vocab.added()) {
        if (token.policy == TokenPolicy::Infix) rules.infix_tokens.insert(token.text);
    }
    return rules;
}

RegroupRules RegroupRules::from_tokens(std::span<const std::string> tokens) {
    RegroupRules rules;
    for (const std::string& token : tokens) {
        if (text::codepoint_count(token) != 1) {
            throw ConfigError("infix token must be a single character: \"" + token + "\"");
        }
        rules.infix_tokens.insert(token);
    }
    return rules;
}

namespace {

/// One left-to-right pass: decides every space removal on the original
/// token layout, then rebuilds. Merges strictly remove spaces; no other
/// byte changes.
RegroupResult regroup_pass(std::string_view line, const RegroupRules& rules) {
    std::vector<std::string_view> tokens;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
        if (i == line.size() || line[i] == ' ') {
            tokens.push_back(line.substr(start, i - start));
            start = i + 1;
        }
    }

    const std::size_t n = tokens.size();
    std::vector<bool> keep_space(n > 0 ? n - 1 : 0, true);
    RegroupResult result;
    for (std::size_t i = 0; i < n; ++i) {
        if (!rules.infix_tokens.contains(std::string(tokens[i]))) continue;
        bool merged = false;
        if (i > 0 && !tokens[i - 1].empty() &&
            text::is_letter(text::last_codepoint(tokens[i - 1]))) {
            keep_space[i - 1] = false;
            merged = true;
        }
        if (i + 1 < n && !tokens[i + 1].empty() &&
            text::is_letter(text::first_codepoint(tokens[i + 1]))) {
            keep_space[i] = false;
            merged = true;
        }
        if (merged) ++result.merged_tokens;
    }

    result.text.reserve(line.size());
    for (std::size_t i = 0; i < n; ++i) {
        result.text.append(tokens[i]);
        if (i + 1 < n) {
            if (keep_space[i]) {
                result.text.push_back(' ');
            } else {
                ++result.removed_spaces;
            }
        }
    }
    return result;
}

}  // namespace

RegroupResult regroup_counted(std::string_view line, const RegroupRules& rules) {
    RegroupResult total;
    total.text.assign(line);
    if (rules.empty()) return total;
    for (;;) {
        RegroupResult pass = regroup_pass(total.text, rules);
        total.merged_tokens += pass.merged_tokens;
        total.removed_spaces += pass.removed_spaces;
        const bool changed = pass.text != total.text;
        total.text = std::move(pass.text);
        if (!changed) break;
    }
    return total;
}

std::string regroup(std::string_view line, const RegroupRules& rules) {
    return regroup_counted(line, rules).text;
}

std::size_t regroup_stream(std::istream& in, std::ostream& out, const RegroupRules& rules) {
    std::string line;
    std::size_t merges = 0;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        RegroupResult result = regroup_counted(line, rules);
        merges += result.merged_tokens;
        out << result.text << '\n';
        if (!out) throw DataError("write error at line " + std::to_string(lineno));
    }
    if (in.bad()) throw DataError("read error at line " + std::to_string(lineno + 1));
    return merges;
}

std::size_t regroup_file(const std::filesystem::path& input,
                         const std::filesystem::path& output, const RegroupRules& rules) {
    std::ifstream in(input, std::ios::binary);
    if (!in) throw DataError("cannot open file: " + input.string());
    std::ofstream out(output, std::ios::binary);
    if (!out) throw DataError("cannot open file for writing: " + output.string());
    try {
        return regroup_stream(in, out, rules);
    } catch (const DataError& e) {
        throw DataError(input.string() + ": " + e.what());
    }
}

}  // namespace corpuskit
