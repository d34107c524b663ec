#include "corpuskit/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <unordered_map>

#include "corpuskit/error.hpp"
#include "corpuskit/rand.hpp"
#include "corpuskit/text.hpp"

namespace corpuskit {

namespace {

std::ifstream open_or_throw(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open file: " + path.string());
    return in;
}

void check_utf8(std::string_view line, const std::filesystem::path& path, std::size_t lineno) {
    if (!text::valid_utf8(line)) {
        throw DataError(path.string() + ":" + std::to_string(lineno) +
                        ": invalid UTF-8 byte sequence");
    }
}

}  // namespace

Corpus load_tsv(const std::filesystem::path& path) {
    std::ifstream in = open_or_throw(path);
    Corpus corpus;
    corpus.origin = "tsv:" + path.string();
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        check_utf8(line, path, lineno);
        const std::size_t tab = line.find('\t');
        if (tab == std::string::npos || line.find('\t', tab + 1) != std::string::npos) {
            throw DataError(path.string() + ":" + std::to_string(lineno) +
                            ": expected exactly 2 tab-separated columns");
        }
        SentencePair pair;
        pair.id = corpus.pairs.size();
        pair.source = line.substr(0, tab);
        pair.target = line.substr(tab + 1);
        corpus.pairs.push_back(std::move(pair));
    }
    if (in.bad()) throw DataError("read error: " + path.string());
    return corpus;
}

Corpus load_moses(const std::filesystem::path& source_path,
                  const std::filesystem::path& target_path) {
    std::ifstream src = open_or_throw(source_path);
    std::ifstream tgt = open_or_throw(target_path);
    Corpus corpus;
    corpus.origin = "moses:" + source_path.string() + "," + target_path.string();
    std::string src_line, tgt_line;
    std::size_t lineno = 0;
    for (;;) {
        const bool has_src = static_cast<bool>(std::getline(src, src_line));
        const bool has_tgt = static_cast<bool>(std::getline(tgt, tgt_line));
        if (!has_src && !has_tgt) break;
        ++lineno;
        if (has_src != has_tgt) {
            throw DataError("line count mismatch between " + source_path.string() + " and " +
                            target_path.string() + " at line " + std::to_string(lineno));
        }
        check_utf8(src_line, source_path, lineno);
        check_utf8(tgt_line, target_path, lineno);
        SentencePair pair;
        pair.id = corpus.pairs.size();
        pair.source = src_line;
        pair.target = tgt_line;
        corpus.pairs.push_back(std::move(pair));
    }
    if (src.bad()) throw DataError("read error: " + source_path.string());
    if (tgt.bad()) throw DataError("read error: " + target_path.string());
    return corpus;
}

Corpus load_parallel(CorpusFormat format, const std::vector<std::filesystem::path>& paths) {
    switch (format) {
        case CorpusFormat::Tsv:
            if (paths.size() != 1) throw ConfigError("tsv format takes exactly one path");
            return load_tsv(paths[0]);
        case CorpusFormat::MosesDual:
            if (paths.size() != 2) throw ConfigError("moses-dual format takes exactly two paths");
            return load_moses(paths[0], paths[1]);
    }
    throw ConfigError("unknown corpus format");
}

void save_tsv(const Corpus& corpus, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot open file for writing: " + path.string());
    for (const SentencePair& pair : corpus.pairs) {
        if (pair.source.find_first_of("\t\n") != std::string::npos ||
            pair.target.find_first_of("\t\n") != std::string::npos) {
            throw DataError("pair " + std::to_string(pair.id) +
                            " contains a tab or newline and cannot be written as tsv");
        }
        out << pair.source << '\t' << pair.target << '\n';
    }
    if (!out) throw DataError("write error: " + path.string());
}

std::pair<Corpus, Corpus> split(const Corpus& corpus, std::size_t test_size,
                                std::uint64_t seed) {
    const std::size_t n = corpus.size();
    if (test_size > n) {
        throw ConfigError("test_size " + std::to_string(test_size) + " exceeds corpus size " +
                          std::to_string(n));
    }
    // Partial Fisher-Yates: the first test_size entries of the permutation
    // of 0..N-1 are fully determined after test_size swaps.
    std::vector<std::uint64_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    SplitMix64 rng(seed);
    for (std::size_t i = 0; i < test_size; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(rng.below(n - i));
        std::swap(idx[i], idx[j]);
    }
    std::vector<bool> in_test(n, false);
    for (std::size_t i = 0; i < test_size; ++i) in_test[idx[i]] = true;

    Corpus train, test;
    train.origin = corpus.origin + "#train";
    test.origin = corpus.origin + "#test";
    train.pairs.reserve(n - test_size);
    test.pairs.reserve(test_size);
    for (std::size_t i = 0; i < n; ++i) {
        Corpus& dest = in_test[i] ? test : train;
        SentencePair pair = corpus.pairs[i];
        pair.id = dest.pairs.size();
        dest.pairs.push_back(std::move(pair));
    }
    return {std::move(train), std::move(test)};
}

std::string normalize_word(std::string_view token) {
    return text::lowercase(text::strip_edge_punct(token));
}

std::vector<WordCount> top_k_words(const Corpus& corpus, Side side, std::size_t k) {
    std::unordered_map<std::string, std::uint64_t> counts;
    for (const SentencePair& pair : corpus.pairs) {
        const std::string& line = side == Side::Source ? pair.source : pair.target;
        for (std::string_view token : text::split_whitespace(line)) {
            std::string word = normalize_word(token);
            if (!word.empty()) ++counts[std::move(word)];
        }
    }
    std::vector<WordCount> ranked;
    ranked.reserve(counts.size());
    for (auto& [word, count] : counts) ranked.push_back({word, count});
    std::sort(ranked.begin(), ranked.end(), [](const WordCount& a, const WordCount& b) {
        if (a.count != b.count) return a.count > b.count;
        return a.word < b.word;
    });
    if (ranked.size() > k) ranked.resize(k);
    return ranked;
}

}  // namespace corpuskit
