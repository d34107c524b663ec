#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace corpuskit {

enum class Smoothing { None, Floor, Exp };

std::string_view to_string(Smoothing smoothing);
Smoothing smoothing_from_string(std::string_view name);

struct BleuScore {
    double score = 0.0;                    // 0..100
    std::array<double, 4> precisions{};    // orders 1..4, as fractions
    double brevity_penalty = 1.0;
    std::uint64_t hyp_len = 0;
    std::uint64_t ref_len = 0;
};

/// mteval-13a tokenization: ASCII punctuation split off non-digit
/// neighbors, symbols always split, digit-internal periods and commas
/// kept attached, whitespace normalized.
std::vector<std::string> tokenize_13a(std::string_view line);

/// Single-reference corpus BLEU over 13a tokens with clipped n-gram
/// precisions (orders 1..4), optional smoothing of zero-match orders and
/// the standard brevity penalty.
BleuScore corpus_bleu(std::span<const std::string> hypotheses,
                      std::span<const std::string> references,
                      Smoothing smoothing = Smoothing::Exp);

/// Line-aligned corpus_bleu over two files; throws DataError with both
/// counts on a line-count mismatch.
BleuScore score_files(const std::filesystem::path& hyp_path,
                      const std::filesystem::path& ref_path,
                      Smoothing smoothing = Smoothing::Exp);

/// JSON report: {"score", "precisions", "bp", "sys_len", "ref_len",
/// "signature"}.
std::string bleu_report_json(const BleuScore& score, Smoothing smoothing);

}  // namespace corpuskit
