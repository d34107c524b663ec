#include "corpuskit/vocab.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>

#include "corpuskit/error.hpp"
#include "corpuskit/text.hpp"

namespace corpuskit {

namespace {

bool contains_whitespace(std::string_view s) {
    for (std::size_t i = 0; i < s.size();) {
        if (text::is_space(text::decode_at(s, i))) return true;
    }
    return false;
}

void validate_added_text(std::string_view token_text, TokenPolicy policy) {
    if (token_text.empty()) throw ConfigError("added token text must be nonempty");
    if (contains_whitespace(token_text)) {
        throw ConfigError("added token contains whitespace: \"" + std::string(token_text) + "\"");
    }
    if (token_text.find(Vocabulary::kBoundaryMarker) != std::string_view::npos) {
        throw ConfigError("added token contains the boundary marker: \"" +
                          std::string(token_text) + "\"");
    }
    if (policy == TokenPolicy::Infix && text::codepoint_count(token_text) != 1) {
        throw ConfigError("infix policy requires a single-character token: \"" +
                          std::string(token_text) + "\"");
    }
}

/// Greedy longest-match segmentation of one marker-prefixed word.
/// Calls on_token(id, byte_len) for matches and on_unknown(code point)
/// when no piece or added token covers the next character.
template <typename TokenFn, typename UnknownFn>
void segment_word(const Vocabulary& vocab, std::string_view marked, TokenFn&& on_token,
                  UnknownFn&& on_unknown) {
    std::size_t pos = 0;
    while (pos < marked.size()) {
        const std::string_view rest = marked.substr(pos);
        bool matched = false;
        for (std::size_t len : vocab.entry_lengths()) {
            if (len > rest.size()) continue;
            if (auto id = vocab.id_of(rest.substr(0, len))) {
                on_token(*id, len);
                pos += len;
                matched = true;
                break;
            }
        }
        if (!matched) {
            std::size_t next = pos;
            const char32_t cp = text::decode_at(marked, next);
            on_unknown(cp);
            pos = next;
        }
    }
}

}  // namespace

std::string_view to_string(TokenPolicy policy) {
    return policy == TokenPolicy::Infix ? "infix" : "word";
}

TokenPolicy policy_from_string(std::string_view name) {
    if (name == "infix") return TokenPolicy::Infix;
    if (name == "word") return TokenPolicy::Word;
    throw ConfigError("unknown token policy: \"" + std::string(name) + "\"");
}

TokenPolicy default_policy(std::string_view token_text) {
    return text::codepoint_count(token_text) == 1 ? TokenPolicy::Infix : TokenPolicy::Word;
}

Vocabulary::Vocabulary(std::vector<Piece> pieces, std::vector<AddedToken> added)
    : pieces_(std::move(pieces)), added_(std::move(added)) {
    if (pieces_.empty()) throw ConfigError("vocabulary needs at least the special pieces");
    index_.reserve(pieces_.size() + added_.size());
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
        if (pieces_[i].text.empty()) throw ConfigError("empty piece text");
        auto [it, inserted] = index_.emplace(pieces_[i].text, static_cast<int>(i));
        if (!inserted) throw ConfigError("duplicate piece: \"" + pieces_[i].text + "\"");
    }
    const auto special_id = [&](std::string_view special) {
        auto it = index_.find(special);
        if (it == index_.end()) {
            throw ConfigError("missing special token: " + std::string(special));
        }
        return it->second;
    };
    pad_id_ = special_id(kPadPiece);
    eos_id_ = special_id(kEosPiece);
    unk_id_ = special_id(kUnkPiece);

    for (std::size_t j = 0; j < added_.size(); ++j) {
        AddedToken& token = added_[j];
        validate_added_text(token.text, token.policy);
        token.id = piece_count() + static_cast<int>(j);
        auto [it, inserted] = index_.emplace(token.text, token.id);
        if (!inserted) throw ConfigError("duplicate piece: \"" + token.text + "\"");
    }

    std::set<std::size_t, std::greater<>> lengths;
    for (const Piece& piece : pieces_) lengths.insert(piece.text.size());
    for (const AddedToken& token : added_) lengths.insert(token.text.size());
    entry_lengths_.assign(lengths.begin(), lengths.end());
    max_entry_bytes_ = entry_lengths_.empty() ? 0 : entry_lengths_.front();
}

std::optional<int> Vocabulary::id_of(std::string_view piece_text) const {
    auto it = index_.find(piece_text);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

const std::string& Vocabulary::text_of(int id) const {
    if (id < 0 || id >= total_size()) {
        throw DataError("token id out of range: " + std::to_string(id));
    }
    if (id < piece_count()) return pieces_[id].text;
    return added_[id - piece_count()].text;
}

Vocabulary load_vocab(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open vocab file: " + path.string());

    std::vector<Piece> pieces;
    std::vector<AddedToken> added;
    std::string line;
    std::size_t lineno = 0;
    bool in_added = false;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string where = path.string() + ":" + std::to_string(lineno);
        if (!text::valid_utf8(line)) throw DataError(where + ": invalid UTF-8 byte sequence");
        if (line == "#added") {
            if (in_added) throw DataError(where + ": repeated #added separator");
            in_added = true;
            continue;
        }
        const std::size_t tab = line.find('\t');
        if (tab == std::string::npos || line.find('\t', tab + 1) != std::string::npos) {
            throw DataError(where + ": expected exactly 2 tab-separated columns");
        }
        const std::string first = line.substr(0, tab);
        const std::string second = line.substr(tab + 1);
        if (first.empty()) throw DataError(where + ": empty token text");
        if (!in_added) {
            double score = 0.0;
            const auto [ptr, ec] =
                std::from_chars(second.data(), second.data() + second.size(), score);
            if (ec != std::errc() || ptr != second.data() + second.size()) {
                throw DataError(where + ": malformed score \"" + second + "\"");
            }
            pieces.push_back({first, score});
        } else {
            if (second != "infix" && second != "word") {
                throw DataError(where + ": unknown token policy \"" + second + "\"");
            }
            added.push_back({first, policy_from_string(second), -1});
        }
    }
    if (in.bad()) throw DataError("read error: " + path.string());

    try {
        return Vocabulary(std::move(pieces), std::move(added));
    } catch (const ConfigError& e) {
        throw DataError(path.string() + ": " + e.what());
    }
}

void save_vocab(const Vocabulary& vocab, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot open file for writing: " + path.string());
    char buf[64];
    for (const Piece& piece : vocab.pieces()) {
        const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), piece.score);
        out << piece.text << '\t' << std::string_view(buf, ptr - buf) << '\n';
    }
    if (!vocab.added().empty()) {
        out << "#added\n";
        for (const AddedToken& token : vocab.added()) {
            out << token.text << '\t' << to_string(token.policy) << '\n';
        }
    }
    if (!out) throw DataError("write error: " + path.string());
}

ExtendResult extend_vocab(const Vocabulary& vocab,
                          std::span<const std::pair<std::string, TokenPolicy>> tokens) {
    std::vector<AddedToken> added = vocab.added();
    std::vector<std::string> appended;
    std::vector<std::string> skipped;
    std::set<std::string, std::less<>> pending;
    for (const auto& [token_text, policy] : tokens) {
        validate_added_text(token_text, policy);
        if (vocab.id_of(token_text) || pending.contains(token_text)) {
            skipped.push_back(token_text);
            continue;
        }
        added.push_back({token_text, policy, -1});
        pending.insert(token_text);
        appended.push_back(token_text);
    }
    return {Vocabulary(vocab.pieces(), std::move(added)), std::move(appended),
            std::move(skipped)};
}

TokenSequence encode(const Vocabulary& vocab, std::string_view input) {
    TokenSequence seq;
    std::string marked;
    for (std::string_view word : text::split_whitespace(input)) {
        marked.assign(Vocabulary::kBoundaryMarker);
        marked.append(word);
        segment_word(
            vocab, marked, [&](int id, std::size_t) { seq.ids.push_back(id); },
            [&](char32_t) { seq.ids.push_back(vocab.unk_id()); });
    }
    return seq;
}

std::string decode(const Vocabulary& vocab, const TokenSequence& tokens) {
    std::string raw;
    for (int id : tokens.ids) {
        const std::string& piece_text = vocab.text_of(id);  // range check
        if (id == vocab.unk_id()) {
            raw += " ? ";
        } else if (vocab.is_added(id)) {
            raw += ' ';
            raw += piece_text;
            raw += ' ';
        } else {
            std::size_t pos = 0;
            while (pos < piece_text.size()) {
                const std::size_t marker = piece_text.find(Vocabulary::kBoundaryMarker, pos);
                if (marker == std::string::npos) {
                    raw.append(piece_text, pos, std::string::npos);
                    break;
                }
                raw.append(piece_text, pos, marker - pos);
                raw += ' ';
                pos = marker + Vocabulary::kBoundaryMarker.size();
            }
        }
    }
    // collapse space runs, trim edges
    std::string out;
    out.reserve(raw.size());
    for (char c : raw) {
        if (c == ' ' && (out.empty() || out.back() == ' ')) continue;
        out.push_back(c);
    }
    while (!out.empty() && out.back() == ' ') out.pop_back();
    return out;
}

std::vector<CoverageEntry> coverage_report(const Vocabulary& vocab,
                                           std::span<const std::string> lines) {
    std::unordered_map<char32_t, std::uint64_t> counts;
    std::string marked;
    for (const std::string& line : lines) {
        for (std::string_view word : text::split_whitespace(line)) {
            marked.assign(Vocabulary::kBoundaryMarker);
            marked.append(word);
            segment_word(
                vocab, marked, [](int, std::size_t) {}, [&](char32_t cp) { ++counts[cp]; });
        }
    }
    std::vector<std::pair<char32_t, std::uint64_t>> ranked(counts.begin(), counts.end());
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    std::vector<CoverageEntry> report;
    report.reserve(ranked.size());
    for (const auto& [cp, count] : ranked) {
        CoverageEntry entry;
        text::append_utf8(entry.character, cp);
        entry.count = count;
        report.push_back(std::move(entry));
    }
    return report;
}

}  // namespace corpuskit
