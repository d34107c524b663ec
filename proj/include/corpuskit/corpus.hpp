#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace corpuskit {

struct SentencePair {
    std::uint64_t id = 0;  // position in ingestion order, dense 0..N-1
    std::string source;
    std::string target;

    bool operator==(const SentencePair&) const = default;
};

enum class Side { Source, Target };

enum class CorpusFormat { Tsv, MosesDual };

/// An in-memory parallel corpus. Immutable after load; iteration order is
/// ingestion order.
struct Corpus {
    std::vector<SentencePair> pairs;
    std::string origin;

    std::size_t size() const { return pairs.size(); }
    bool empty() const { return pairs.empty(); }
    auto begin() const { return pairs.begin(); }
    auto end() const { return pairs.end(); }
};

/// Loads a corpus. Tsv expects one path (two tab-separated columns per
/// line); MosesDual expects two paths with equal line counts. Lines are
/// kept byte-for-byte (minus the newline) and must be valid UTF-8.
Corpus load_parallel(CorpusFormat format, const std::vector<std::filesystem::path>& paths);

Corpus load_tsv(const std::filesystem::path& path);
Corpus load_moses(const std::filesystem::path& source_path,
                  const std::filesystem::path& target_path);

/// Writes the corpus as tsv. Throws DataError if any side contains a tab
/// or newline (such a pair cannot round-trip through the format).
void save_tsv(const Corpus& corpus, const std::filesystem::path& path);

/// Draws a uniform sample of exactly `test_size` pairs (the test side);
/// the complement becomes the train side. Both preserve the original
/// relative order. Ids are reassigned densely per output corpus, and the
/// same (corpus, test_size, seed) always yields identical outputs.
std::pair<Corpus, Corpus> split(const Corpus& corpus, std::size_t test_size,
                                std::uint64_t seed);

struct WordCount {
    std::string word;
    std::uint64_t count = 0;

    bool operator==(const WordCount&) const = default;
};

/// Top-k words on one side, ranked by descending count with ties broken
/// by ascending byte order. A word is a maximal non-whitespace run,
/// lowercased, with leading/trailing punctuation stripped.
std::vector<WordCount> top_k_words(const Corpus& corpus, Side side, std::size_t k);

/// Word normalization used by top_k_words; empty result means the token
/// was pure punctuation and does not count.
std::string normalize_word(std::string_view token);

}  // namespace corpuskit
