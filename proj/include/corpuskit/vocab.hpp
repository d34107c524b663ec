#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace corpuskit {

/// How an added token behaves after decoding: Infix tokens (single
/// characters) are merged back into neighboring word fragments by the
/// regroup stage; Word tokens stand alone.
enum class TokenPolicy { Infix, Word };

std::string_view to_string(TokenPolicy policy);
TokenPolicy policy_from_string(std::string_view name);

/// Infix for single-character tokens, Word otherwise.
TokenPolicy default_policy(std::string_view token_text);

struct AddedToken {
    std::string text;
    TokenPolicy policy = TokenPolicy::Word;
    int id = -1;

    bool operator==(const AddedToken&) const = default;
};

struct Piece {
    std::string text;
    double score = 0.0;

    bool operator==(const Piece&) const = default;
};

struct TokenSequence {
    std::vector<int> ids;

    bool operator==(const TokenSequence&) const = default;
};

/// Piece vocabulary with an appended added-token section. Base piece ids
/// never change when tokens are added; added tokens take the next ids in
/// addition order. Immutable after construction.
class Vocabulary {
  public:
    static constexpr std::string_view kPadPiece = "<pad>";
    static constexpr std::string_view kEosPiece = "</s>";
    static constexpr std::string_view kUnkPiece = "<unk>";
    static constexpr std::string_view kBoundaryMarker = "\xE2\x96\x81";  // U+2581

    Vocabulary(std::vector<Piece> pieces, std::vector<AddedToken> added = {});

    int piece_count() const { return static_cast<int>(pieces_.size()); }
    int total_size() const { return static_cast<int>(pieces_.size() + added_.size()); }

    int unk_id() const { return unk_id_; }
    int pad_id() const { return pad_id_; }
    int eos_id() const { return eos_id_; }

    const std::vector<Piece>& pieces() const { return pieces_; }
    const std::vector<AddedToken>& added() const { return added_; }

    /// Exact id of a base piece or added token text, if present.
    std::optional<int> id_of(std::string_view piece_text) const;

    bool is_added(int id) const { return id >= piece_count() && id < total_size(); }
    const AddedToken& added_at(int id) const { return added_[id - piece_count()]; }

    /// Text of any valid id (piece or added token).
    const std::string& text_of(int id) const;

    /// Longest entry (piece or added token), in bytes.
    std::size_t max_entry_bytes() const { return max_entry_bytes_; }
    /// Distinct entry lengths in bytes, descending; drives greedy matching.
    const std::vector<std::size_t>& entry_lengths() const { return entry_lengths_; }

    bool operator==(const Vocabulary& other) const {
        return pieces_ == other.pieces_ && added_ == other.added_;
    }

  private:
    struct TransparentHash {
        using is_transparent = void;
        std::size_t operator()(std::string_view sv) const {
            return std::hash<std::string_view>{}(sv);
        }
    };

    std::vector<Piece> pieces_;
    std::vector<AddedToken> added_;
    std::unordered_map<std::string, int, TransparentHash, std::equal_to<>> index_;
    std::vector<std::size_t> entry_lengths_;
    std::size_t max_entry_bytes_ = 0;
    int unk_id_ = -1;
    int pad_id_ = -1;
    int eos_id_ = -1;
};

/// Loads the tsv vocab format: "piece<TAB>score" lines, then an optional
/// "#added" separator followed by "token<TAB>policy" lines.
Vocabulary load_vocab(const std::filesystem::path& path);

void save_vocab(const Vocabulary& vocab, const std::filesystem::path& path);

struct ExtendResult {
    Vocabulary vocab;
    std::vector<std::string> added;    // newly appended texts, in order
    std::vector<std::string> skipped;  // already present, reported not added
};

/// Appends tokens at the next free ids. Tokens already present (as piece
/// or added token) are skipped and reported; the input vocabulary is not
/// modified. Token texts must be nonempty, whitespace-free and must not
/// contain the boundary marker.
ExtendResult extend_vocab(const Vocabulary& vocab,
                          std::span<const std::pair<std::string, TokenPolicy>> tokens);

/// Segments text: whitespace pre-tokenization, boundary marker prefixed
/// to each word, then greedy longest-match against pieces and added-token
/// texts (added tokens match anywhere in a word). Characters covered by
/// no entry map to unk.
TokenSequence encode(const Vocabulary& vocab, std::string_view input);

/// Inverse rendering: pieces concatenate, boundary markers become spaces,
/// unk renders as "?" and added tokens render space-separated. Throws
/// DataError on an out-of-range id.
std::string decode(const Vocabulary& vocab, const TokenSequence& tokens);

struct CoverageEntry {
    std::string character;  // one code point, UTF-8
    std::uint64_t count = 0;

    bool operator==(const CoverageEntry&) const = default;
};

/// Characters that encode would map to unk, with occurrence counts,
/// descending (ties by ascending code point).
std::vector<CoverageEntry> coverage_report(const Vocabulary& vocab,
                                           std::span<const std::string> lines);

}  // namespace corpuskit
