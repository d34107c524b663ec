#include "corpuskit/dedup.hpp"

#include <algorithm>

#include "corpuskit/error.hpp"
#include "corpuskit/rand.hpp"
#include "corpuskit/text.hpp"
#include "parallel.hpp"

namespace corpuskit {

namespace {

constexpr std::uint64_t kMersenne61 = (1ULL << 61) - 1;

std::uint64_t mod_mersenne61(std::uint64_t v) {
    std::uint64_t s = (v & kMersenne61) + (v >> 61);
    if (s >= kMersenne61) s -= kMersenne61;
    return s;
}

std::uint64_t mulmod_mersenne61(std::uint64_t a, std::uint64_t b) {
    const unsigned __int128 z = static_cast<unsigned __int128>(a) * b;
    std::uint64_t s = static_cast<std::uint64_t>(z & kMersenne61) +
                      static_cast<std::uint64_t>(z >> 61);
    if (s >= kMersenne61) s -= kMersenne61;
    return s;
}

void write_le64(unsigned char* out, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out[i] = static_cast<unsigned char>(v >> (8 * i));
}

const std::string& side_text(const SentencePair& pair, Side side) {
    return side == Side::Source ? pair.source : pair.target;
}

}  // namespace

ShingleSet shingles(std::string_view sentence, std::uint32_t n, bool lowercase) {
    if (n == 0) throw ConfigError("shingle order must be >= 1");
    ShingleSet set;
    set.order = n;
    set.lowercased = lowercase;

    std::string normalized;
    std::string_view input = sentence;
    if (lowercase) {
        normalized = text::lowercase(sentence);
        input = normalized;
    }
    const std::vector<std::string_view> words = text::split_whitespace(input);
    if (words.size() < n) return set;

    set.elements.reserve(words.size() - n + 1);
    std::string joined;
    for (std::size_t i = 0; i + n <= words.size(); ++i) {
        if (n == 1) {
            set.elements.push_back(fnv1a64(words[i].data(), words[i].size()));
        } else {
            joined.clear();
            for (std::uint32_t j = 0; j < n; ++j) {
                if (j > 0) joined.push_back(' ');
                joined.append(words[i + j]);
            }
            set.elements.push_back(fnv1a64(joined.data(), joined.size()));
        }
    }
    std::sort(set.elements.begin(), set.elements.end());
    set.elements.erase(std::unique(set.elements.begin(), set.elements.end()),
                       set.elements.end());
    return set;
}

double exact_jaccard(const ShingleSet& a, const ShingleSet& b) {
    if (a.order != b.order || a.lowercased != b.lowercased) {
        throw ConfigError("mismatched shingle parameters");
    }
    if (a.empty() && b.empty()) return 1.0;
    if (a.empty() || b.empty()) return 0.0;
    std::size_t intersection = 0;
    std::size_t i = 0, j = 0;
    while (i < a.elements.size() && j < b.elements.size()) {
        if (a.elements[i] == b.elements[j]) {
            ++intersection;
            ++i;
            ++j;
        } else if (a.elements[i] < b.elements[j]) {
            ++i;
        } else {
            ++j;
        }
    }
    const std::size_t unions = a.elements.size() + b.elements.size() - intersection;
    return static_cast<double>(intersection) / static_cast<double>(unions);
}

MinHashSignature minhash(const ShingleSet& set, std::uint32_t perms, std::uint64_t seed) {
    if (perms == 0) throw ConfigError("permutation count must be >= 1");
    MinHashSignature sig;
    sig.seed = seed;
    sig.values.assign(perms, kEmptySetMinimum);
    if (set.empty()) return sig;

    SplitMix64 rng(seed);
    for (std::uint32_t i = 0; i < perms; ++i) {
        // odd multiplier in [1, p-2], offset in [0, p-1]
        const std::uint64_t a = (rng.next() % ((kMersenne61 - 1) / 2)) * 2 + 1;
        const std::uint64_t b = rng.next() % kMersenne61;
        std::uint64_t best = kEmptySetMinimum;
        for (std::uint64_t x : set.elements) {
            std::uint64_t h = mulmod_mersenne61(a, mod_mersenne61(x));
            h += b;
            if (h >= kMersenne61) h -= kMersenne61;
            if (h < best) best = h;
        }
        sig.values[i] = best;
    }
    return sig;
}

double estimate_jaccard(const MinHashSignature& x, const MinHashSignature& y) {
    if (x.values.size() != y.values.size() || x.seed != y.seed) {
        throw ConfigError("signatures built with different (k, seed) are not comparable");
    }
    if (x.values.empty()) throw ConfigError("empty signatures");
    std::size_t matches = 0;
    for (std::size_t i = 0; i < x.values.size(); ++i) {
        if (x.values[i] == y.values[i]) ++matches;
    }
    return static_cast<double>(matches) / static_cast<double>(x.values.size());
}

LshIndex::LshIndex(std::uint32_t bands, std::uint32_t rows, std::uint64_t seed,
                   bool keep_signatures)
    : bands_(bands), rows_(rows), seed_(seed), keep_signatures_(keep_signatures) {
    if (bands == 0 || rows == 0) throw ConfigError("bands and rows must be >= 1");
    tables_.resize(bands_);
}

void LshIndex::check_compatible(const MinHashSignature& sig) const {
    if (sig.perm_count() != perms()) {
        throw ConfigError("signature length " + std::to_string(sig.perm_count()) +
                          " does not match bands*rows = " + std::to_string(perms()));
    }
    if (sig.seed != seed_) {
        throw ConfigError("signature seed does not match the index seed");
    }
}

std::uint64_t LshIndex::band_key(std::uint32_t band, const MinHashSignature& sig) const {
    unsigned char buf[8];
    std::uint64_t h = fnv1a64(&band, sizeof(band));
    for (std::uint32_t r = 0; r < rows_; ++r) {
        write_le64(buf, sig.values[static_cast<std::size_t>(band) * rows_ + r]);
        h = fnv1a64(buf, sizeof(buf), h);
    }
    return h;
}

void LshIndex::insert(std::uint64_t id, const MinHashSignature& sig) {
    if (frozen_) throw ConfigError("cannot insert into a frozen index");
    check_compatible(sig);
    for (std::uint32_t band = 0; band < bands_; ++band) {
        tables_[band].emplace_back(band_key(band, sig), id);
    }
    if (keep_signatures_) signatures_.emplace(id, sig);
    ++count_;
}

void LshIndex::freeze() {
    if (frozen_) return;
    for (auto& table : tables_) std::sort(table.begin(), table.end());
    frozen_ = true;
}

std::vector<std::uint64_t> LshIndex::query(const MinHashSignature& sig) const {
    if (!frozen_) throw ConfigError("index must be frozen before querying");
    check_compatible(sig);
    std::vector<std::uint64_t> candidates;
    for (std::uint32_t band = 0; band < bands_; ++band) {
        const std::uint64_t key = band_key(band, sig);
        const auto& table = tables_[band];
        auto it = std::lower_bound(table.begin(), table.end(),
                                   std::make_pair(key, std::uint64_t{0}));
        for (; it != table.end() && it->first == key; ++it) {
            candidates.push_back(it->second);
        }
    }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    return candidates;
}

LshIndex build_lsh_index(const std::unordered_map<std::uint64_t, MinHashSignature>& signatures,
                         std::uint32_t bands, std::uint32_t rows) {
    std::optional<std::uint64_t> seed;
    for (const auto& [id, sig] : signatures) {
        if (static_cast<std::uint64_t>(bands) * rows != sig.perm_count()) {
            throw ConfigError("bands*rows = " + std::to_string(bands * rows) +
                              " does not match signature length " +
                              std::to_string(sig.perm_count()));
        }
        seed = sig.seed;
        break;
    }
    LshIndex index(bands, rows, seed.value_or(0));
    // deterministic insertion order regardless of map iteration order
    std::vector<std::uint64_t> ids;
    ids.reserve(signatures.size());
    for (const auto& [id, sig] : signatures) ids.push_back(id);
    std::sort(ids.begin(), ids.end());
    for (std::uint64_t id : ids) index.insert(id, signatures.at(id));
    index.freeze();
    return index;
}

void DedupParams::validate() const {
    if (threshold <= 0.0 || threshold > 1.0) {
        throw ConfigError("threshold must be in (0, 1]");
    }
    if (shingle_order == 0) throw ConfigError("shingle order must be >= 1");
    if (perms == 0 || bands == 0 || rows == 0) {
        throw ConfigError("perms, bands and rows must be >= 1");
    }
    if (static_cast<std::uint64_t>(bands) * rows != perms) {
        throw ConfigError("bands*rows = " + std::to_string(bands * rows) +
                          " does not match perms = " + std::to_string(perms));
    }
}

LeakChecker::LeakChecker(const Corpus& train, const DedupParams& params)
    : train_(&train), params_(params) {
    params_.validate();
    std::vector<Side> sides;
    if (params_.side == MatchSide::Source || params_.side == MatchSide::Either) {
        sides.push_back(Side::Source);
    }
    if (params_.side == MatchSide::Target || params_.side == MatchSide::Either) {
        sides.push_back(Side::Target);
    }
    for (Side side : sides) {
        indexes_.push_back({side, LshIndex(params_.bands, params_.rows, params_.seed,
                                           /*keep_signatures=*/false)});
        LshIndex& index = indexes_.back().index;
        // signatures are computed in parallel per chunk, inserted in order
        const std::size_t chunk = 1 << 14;
        std::vector<MinHashSignature> sigs(std::min(chunk, train.size()));
        for (std::size_t base = 0; base < train.size(); base += chunk) {
            const std::size_t count = std::min(chunk, train.size() - base);
            parallel_for(count, [&](std::size_t i) {
                const SentencePair& pair = train.pairs[base + i];
                sigs[i] = minhash(
                    shingles(side_text(pair, side), params_.shingle_order, params_.lowercase),
                    params_.perms, params_.seed);
            });
            for (std::size_t i = 0; i < count; ++i) {
                index.insert(train.pairs[base + i].id, sigs[i]);
            }
        }
        index.freeze();
    }
}

std::optional<Removal> LeakChecker::check(const SentencePair& test_pair) const {
    bool found = false;
    Removal best;
    best.test_id = test_pair.id;
    for (const SideIndex& side_index : indexes_) {
        const std::string& text = side_text(test_pair, side_index.side);
        const ShingleSet test_set = shingles(text, params_.shingle_order, params_.lowercase);
        const MinHashSignature sig = minhash(test_set, params_.perms, params_.seed);
        for (std::uint64_t train_id : side_index.index.query(sig)) {
            const ShingleSet train_set =
                shingles(side_text(train_->pairs[train_id], side_index.side),
                         params_.shingle_order, params_.lowercase);
            const double similarity = exact_jaccard(test_set, train_set);
            if (!found || similarity > best.jaccard ||
                (similarity == best.jaccard && train_id < best.train_id)) {
                best.train_id = train_id;
                best.jaccard = similarity;
                found = true;
            }
        }
    }
    if (found && best.jaccard > params_.threshold) return best;
    return std::nullopt;
}

FilterResult filter_test_set(const Corpus& train, const Corpus& test,
                             const DedupParams& params) {
    LeakChecker checker(train, params);
    FilterResult result;
    result.kept.origin = test.origin + "#kept";
    for (const SentencePair& pair : test.pairs) {
        if (std::optional<Removal> removal = checker.check(pair)) {
            result.removed.push_back(*removal);
        } else {
            SentencePair kept_pair = pair;
            kept_pair.id = result.kept.pairs.size();
            result.kept.pairs.push_back(std::move(kept_pair));
        }
    }
    return result;
}

}  // namespace corpuskit
