#include "corpuskit/bleu.hpp"

#include <cmath>
#include <fstream>
#include <unordered_map>

#include <json.hpp>

#include "corpuskit/error.hpp"
#include "corpuskit/text.hpp"

namespace corpuskit {

namespace {

void replace_all(std::string& s, std::string_view from, std::string_view to) {
    std::size_t pos = 0;
    while ((pos = s.find(from, pos)) != std::string::npos) {
        s.replace(pos, from.size(), to);
        pos += to.size();
    }
}

bool ascii_digit(char c) { return c >= '0' && c <= '9'; }

// the always-split class: ASCII ranges {-~ [-` space-& (-+ :-@ and /
bool split_always(char c) {
    return (c >= '{' && c <= '~') || (c >= '[' && c <= '`') || (c >= ' ' && c <= '&') ||
           (c >= '(' && c <= '+') || (c >= ':' && c <= '@') || c == '/';
}

bool period_or_comma(char c) { return c == '.' || c == ','; }

}  // namespace

std::string_view to_string(Smoothing smoothing) {
    switch (smoothing) {
        case Smoothing::None: return "none";
        case Smoothing::Floor: return "floor";
        case Smoothing::Exp: return "exp";
    }
    return "exp";
}

Smoothing smoothing_from_string(std::string_view name) {
    if (name == "none") return Smoothing::None;
    if (name == "floor") return Smoothing::Floor;
    if (name == "exp") return Smoothing::Exp;
    throw ConfigError("unknown smoothing method: \"" + std::string(name) + "\"");
}

std::vector<std::string> tokenize_13a(std::string_view input) {
    std::string line(input);
    replace_all(line, "<skipped>", "");
    replace_all(line, "-\n", "");
    replace_all(line, "\n", " ");
    if (line.find('&') != std::string::npos) {
        replace_all(line, "&quot;", "\"");
        replace_all(line, "&amp;", "&");
        replace_all(line, "&lt;", "<");
        replace_all(line, "&gt;", ">");
    }
    line = " " + line + " ";

    // pad the always-split class with spaces
    std::string a;
    a.reserve(line.size() * 2);
    for (char c : line) {
        if (split_always(c)) {
            a.push_back(' ');
            a.push_back(c);
            a.push_back(' ');
        } else {
            a.push_back(c);
        }
    }
    // period/comma after a non-digit
    std::string b;
    b.reserve(a.size());
    for (std::size_t i = 0; i < a.size();) {
        if (i + 1 < a.size() && period_or_comma(a[i + 1]) && !ascii_digit(a[i])) {
            b.push_back(a[i]);
            b.push_back(' ');
            b.push_back(a[i + 1]);
            b.push_back(' ');
            i += 2;
        } else {
            b.push_back(a[i++]);
        }
    }
    // period/comma before a non-digit
    std::string c;
    c.reserve(b.size());
    for (std::size_t i = 0; i < b.size();) {
        if (i + 1 < b.size() && period_or_comma(b[i]) && !ascii_digit(b[i + 1])) {
            c.push_back(' ');
            c.push_back(b[i]);
            c.push_back(' ');
            c.push_back(b[i + 1]);
            i += 2;
        } else {
            c.push_back(b[i++]);
        }
    }
    // dash after a digit
    std::string d;
    d.reserve(c.size());
    for (std::size_t i = 0; i < c.size();) {
        if (i + 1 < c.size() && ascii_digit(c[i]) && c[i + 1] == '-') {
            d.push_back(c[i]);
            d.push_back(' ');
            d.push_back('-');
            d.push_back(' ');
            i += 2;
        } else {
            d.push_back(c[i++]);
        }
    }

    std::vector<std::string> tokens;
    for (std::string_view token : text::split_whitespace(d)) {
        tokens.emplace_back(token);
    }
    return tokens;
}

namespace {

struct BleuStats {
    std::array<std::uint64_t, 4> correct{};
    std::array<std::uint64_t, 4> total{};
    std::uint64_t hyp_len = 0;
    std::uint64_t ref_len = 0;
};

void count_ngrams(const std::vector<std::string>& tokens, std::size_t order,
                  std::unordered_map<std::string, std::uint32_t>& counts) {
    counts.clear();
    if (tokens.size() < order) return;
    std::string key;
    for (std::size_t i = 0; i + order <= tokens.size(); ++i) {
        key.clear();
        for (std::size_t j = 0; j < order; ++j) {
            if (j > 0) key.push_back('\x1f');
            key.append(tokens[i + j]);
        }
        ++counts[key];
    }
}

void accumulate(BleuStats& stats, const std::string& hypothesis, const std::string& reference) {
    const std::vector<std::string> hyp = tokenize_13a(hypothesis);
    const std::vector<std::string> ref = tokenize_13a(reference);
    stats.hyp_len += hyp.size();
    stats.ref_len += ref.size();
    std::unordered_map<std::string, std::uint32_t> hyp_counts;
    std::unordered_map<std::string, std::uint32_t> ref_counts;
    for (std::size_t order = 1; order <= 4; ++order) {
        if (hyp.size() < order) break;
        count_ngrams(hyp, order, hyp_counts);
        count_ngrams(ref, order, ref_counts);
        stats.total[order - 1] += hyp.size() - order + 1;
        for (const auto& [ngram, count] : hyp_counts) {
            const auto it = ref_counts.find(ngram);
            if (it != ref_counts.end()) {
                stats.correct[order - 1] += std::min(count, it->second);
            }
        }
    }
}

BleuScore finalize(const BleuStats& stats, Smoothing smoothing) {
    BleuScore score;
    score.hyp_len = stats.hyp_len;
    score.ref_len = stats.ref_len;

    double smooth_factor = 1.0;
    for (std::size_t n = 0; n < 4; ++n) {
        if (stats.total[n] == 0) break;
        if (stats.correct[n] == 0) {
            switch (smoothing) {
                case Smoothing::Exp:
                    smooth_factor *= 2.0;
                    score.precisions[n] = 1.0 / (smooth_factor * stats.total[n]);
                    break;
                case Smoothing::Floor:
                    score.precisions[n] = 0.1 / static_cast<double>(stats.total[n]);
                    break;
                case Smoothing::None:
                    score.precisions[n] = 0.0;
                    break;
            }
        } else {
            score.precisions[n] = static_cast<double>(stats.correct[n]) /
                                  static_cast<double>(stats.total[n]);
        }
    }

    score.brevity_penalty = 1.0;
    if (stats.hyp_len < stats.ref_len) {
        score.brevity_penalty =
            stats.hyp_len == 0
                ? 0.0
                : std::exp(1.0 - static_cast<double>(stats.ref_len) /
                                     static_cast<double>(stats.hyp_len));
    }

    bool any_zero = false;
    double log_sum = 0.0;
    for (double p : score.precisions) {
        if (p <= 0.0) {
            any_zero = true;
            break;
        }
        log_sum += std::log(p);
    }
    score.score = any_zero ? 0.0 : 100.0 * score.brevity_penalty * std::exp(log_sum / 4.0);
    return score;
}

}  // namespace

BleuScore corpus_bleu(std::span<const std::string> hypotheses,
                      std::span<const std::string> references, Smoothing smoothing) {
    if (hypotheses.size() != references.size()) {
        throw ConfigError("hypothesis/reference length mismatch: " +
                          std::to_string(hypotheses.size()) + " vs " +
                          std::to_string(references.size()));
    }
    if (hypotheses.empty()) throw ConfigError("empty hypothesis list");
    BleuStats stats;
    for (std::size_t i = 0; i < hypotheses.size(); ++i) {
        accumulate(stats, hypotheses[i], references[i]);
    }
    return finalize(stats, smoothing);
}

BleuScore score_files(const std::filesystem::path& hyp_path,
                      const std::filesystem::path& ref_path, Smoothing smoothing) {
    std::ifstream hyp(hyp_path, std::ios::binary);
    if (!hyp) throw DataError("cannot open file: " + hyp_path.string());
    std::ifstream ref(ref_path, std::ios::binary);
    if (!ref) throw DataError("cannot open file: " + ref_path.string());

    BleuStats stats;
    std::string hyp_line, ref_line;
    std::size_t count = 0;
    for (;;) {
        const bool has_hyp = static_cast<bool>(std::getline(hyp, hyp_line));
        const bool has_ref = static_cast<bool>(std::getline(ref, ref_line));
        if (!has_hyp && !has_ref) break;
        if (has_hyp != has_ref) {
            std::size_t hyp_count = count + (has_hyp ? 1 : 0);
            std::size_t ref_count = count + (has_ref ? 1 : 0);
            std::string spare;
            while (has_hyp && std::getline(hyp, spare)) ++hyp_count;
            while (has_ref && std::getline(ref, spare)) ++ref_count;
            throw DataError("line count mismatch " + std::to_string(hyp_count) + " vs " +
                            std::to_string(ref_count));
        }
        ++count;
        accumulate(stats, hyp_line, ref_line);
    }
    if (count == 0) throw DataError("empty input files");
    return finalize(stats, smoothing);
}

std::string bleu_report_json(const BleuScore& score, Smoothing smoothing) {
    nlohmann::json report;
    report["score"] = score.score;
    report["precisions"] = score.precisions;
    report["bp"] = score.brevity_penalty;
    report["sys_len"] = score.hyp_len;
    report["ref_len"] = score.ref_len;
    report["signature"] = "13a|" + std::string(to_string(smoothing)) + "|ref:1";
    return report.dump(2);
}

}  // namespace corpuskit
