#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "corpuskit/corpus.hpp"

namespace corpuskit {

/// Sorted unique 64-bit fingerprints of the word n-grams of a sentence.
struct ShingleSet {
    std::vector<std::uint64_t> elements;
    std::uint32_t order = 1;
    bool lowercased = true;

    bool empty() const { return elements.empty(); }
    std::size_t size() const { return elements.size(); }
};

/// Lowercases (optionally), splits on whitespace and fingerprints every
/// run of `n` consecutive words. Fewer than n words yields an empty set.
ShingleSet shingles(std::string_view sentence, std::uint32_t n, bool lowercase = true);

/// |a ∩ b| / |a ∪ b|. Both empty: 1.0; exactly one empty: 0.0. Throws
/// ConfigError when the sets were built with different parameters.
double exact_jaccard(const ShingleSet& a, const ShingleSet& b);

inline constexpr std::uint64_t kEmptySetMinimum = std::numeric_limits<std::uint64_t>::max();

struct MinHashSignature {
    std::vector<std::uint64_t> values;  // one minimum per permutation
    std::uint64_t seed = 0;

    std::uint32_t perm_count() const { return static_cast<std::uint32_t>(values.size()); }
};

/// values[i] = min over the set of h_i(x) with h_i(x) = (a_i·x + b_i)
/// mod (2^61 - 1), a_i odd; (a_i, b_i) drawn from a splitmix64 stream
/// seeded with `seed`. Empty sets fill with kEmptySetMinimum.
MinHashSignature minhash(const ShingleSet& set, std::uint32_t perms, std::uint64_t seed);

/// Fraction of positions where the signatures agree; an unbiased
/// estimator of the exact Jaccard similarity.
double estimate_jaccard(const MinHashSignature& x, const MinHashSignature& y);

/// Banded signature index: b bands of r rows each (b·r = signature
/// length). Insert everything, freeze once, then query concurrently.
class LshIndex {
  public:
    LshIndex(std::uint32_t bands, std::uint32_t rows, std::uint64_t seed,
             bool keep_signatures = true);

    void insert(std::uint64_t id, const MinHashSignature& sig);

    /// Sorts the band tables; inserts are rejected afterwards.
    void freeze();

    /// Ids sharing at least one band bucket with `sig`, sorted unique.
    std::vector<std::uint64_t> query(const MinHashSignature& sig) const;

    std::uint32_t bands() const { return bands_; }
    std::uint32_t rows() const { return rows_; }
    std::uint32_t perms() const { return bands_ * rows_; }
    std::uint64_t seed() const { return seed_; }
    std::size_t size() const { return count_; }

    /// Stored signatures (empty when keep_signatures was false).
    const std::unordered_map<std::uint64_t, MinHashSignature>& signatures() const {
        return signatures_;
    }

  private:
    std::uint64_t band_key(std::uint32_t band, const MinHashSignature& sig) const;
    void check_compatible(const MinHashSignature& sig) const;

    std::uint32_t bands_;
    std::uint32_t rows_;
    std::uint64_t seed_;
    bool keep_signatures_;
    bool frozen_ = false;
    std::size_t count_ = 0;
    // per band: (band key, id), sorted at freeze for binary search
    std::vector<std::vector<std::pair<std::uint64_t, std::uint64_t>>> tables_;
    std::unordered_map<std::uint64_t, MinHashSignature> signatures_;
};

/// Convenience matching the one-shot construction contract.
LshIndex build_lsh_index(const std::unordered_map<std::uint64_t, MinHashSignature>& signatures,
                         std::uint32_t bands, std::uint32_t rows);

enum class MatchSide { Source, Target, Either };

struct DedupParams {
    double threshold = 0.7;  // remove when similarity is strictly greater
    std::uint32_t shingle_order = 1;
    bool lowercase = true;
    std::uint32_t perms = 128;
    std::uint32_t bands = 16;
    std::uint32_t rows = 8;
    std::uint64_t seed = 0;
    MatchSide side = MatchSide::Either;

    void validate() const;
};

struct Removal {
    std::uint64_t test_id = 0;
    std::uint64_t train_id = 0;  // best verified match
    double jaccard = 0.0;        // its exact similarity
};

struct FilterResult {
    Corpus kept;  // ids reassigned densely; original order preserved
    std::vector<Removal> removed;
};

/// Indexes the train side(s) once and answers leak checks for individual
/// test pairs. Candidates from the banded index are always verified with
/// exact_jaccard before a pair is declared a leak.
class LeakChecker {
  public:
    LeakChecker(const Corpus& train, const DedupParams& params);

    /// The best verified match when the pair leaks (similarity strictly
    /// above the threshold on the configured side), nullopt otherwise.
    std::optional<Removal> check(const SentencePair& test_pair) const;

    const DedupParams& params() const { return params_; }

  private:
    struct SideIndex {
        Side side;
        LshIndex index;
    };

    const Corpus* train_;
    DedupParams params_;
    std::vector<SideIndex> indexes_;
};

/// Removes every test pair whose verified similarity to any train pair
/// exceeds the threshold. The removal report is sorted by test id.
FilterResult filter_test_set(const Corpus& train, const Corpus& test,
                             const DedupParams& params);

}  // namespace corpuskit
