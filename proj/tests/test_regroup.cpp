#include <doctest.h>

#include <string>
#include <vector>

#include "corpuskit/error.hpp"
#include "corpuskit/rand.hpp"
#include "corpuskit/regroup.hpp"
#include "corpuskit/vocab.hpp"
#include "support.hpp"

using namespace corpuskit;
using testsupport::TempDir;
using testsupport::data_file;
using testsupport::read_file;
using testsupport::write_file;

namespace {

RegroupRules pt_rules() {
    const std::vector<std::string> tokens = {"ì", "ò", "Á", "Í", "Ó", "Ú", "í",
                                             "ú", "Â", "Ê", "Ã", "Õ", "ã", "õ"};
    return RegroupRules::from_tokens(tokens);
}

/// Strings over the regroup alphabet: words, isolated infix tokens,
/// punctuation and digits in random arrangements.
std::string random_line(SplitMix64& rng) {
    static const std::vector<std::string> atoms = {
        "casa", "ã",   "õ",    "x",  "não", "1984", ",",   ".",  "á",
        "Á",    "í",   "agua", "s",  "es",  "-",    "(",   ")",  "informaç",
        "est",  "o",   "deci", "ção"};
    const std::size_t words = 1 + rng.below(8);
    std::string line;
    for (std::size_t i = 0; i < words; ++i) {
        if (i > 0) line += ' ';
        line += atoms[rng.below(atoms.size())];
    }
    return line;
}

std::string drop_spaces(std::string_view s) {
    std::string out;
    for (char c : s) {
        if (c != ' ') out.push_back(c);
    }
    return out;
}

}  // namespace

TEST_CASE("regroup merges an infix token into both neighbors") {
    CHECK(regroup("indignaç ã o completa", pt_rules()) == "indignação completa");
}

TEST_CASE("regroup merges right-only at the beginning of a sentence") {
    CHECK(regroup("Á gua fresca", pt_rules()) == "Água fresca");
}

TEST_CASE("regroup merges left-only at the end of a sentence") {
    CHECK(regroup("o tat ú", pt_rules()) == "o tatú");
}

TEST_CASE("regroup leaves word-policy tokens alone") {
    CHECK(regroup("eu não como", pt_rules()) == "eu não como");
}

TEST_CASE("regroup leaves tokens without letter neighbors alone") {
    CHECK(regroup("ã", pt_rules()) == "ã");
    CHECK(regroup("ã ,", pt_rules()) == "ã ,");
    CHECK(regroup(", ã .", pt_rules()) == ", ã .");
    CHECK(regroup("1 ã 2", pt_rules()) == "1 ã 2");
}

TEST_CASE("regroup handles consecutive infix tokens") {
    CHECK(regroup("informa ç õ es", RegroupRules::from_tokens(
                                        std::vector<std::string>{"ç", "õ"})) ==
          "informações");
    CHECK(regroup("x ã õ y", pt_rules()) == "xãõy");
}

TEST_CASE("regroup with empty rules is the identity") {
    const RegroupRules none;
    CHECK(regroup("indignaç ã o completa", none) == "indignaç ã o completa");
}

TEST_CASE("regroup_counted reports merges and removed spaces") {
    const RegroupResult r = regroup_counted("indignaç ã o completa", pt_rules());
    CHECK(r.text == "indignação completa");
    CHECK(r.merged_tokens == 1);
    CHECK(r.removed_spaces == 2);
}

TEST_CASE("a 'vowel only' token respects the rule set exactly") {
    // only the configured characters merge; á is not in the rules
    CHECK(regroup("est á tua", pt_rules()) == "est á tua");
}

TEST_CASE("regroup is idempotent over generated strings") {
    const RegroupRules rules = pt_rules();
    SplitMix64 rng(2024);
    for (int i = 0; i < 12000; ++i) {
        const std::string line = random_line(rng);
        const std::string once = regroup(line, rules);
        const std::string twice = regroup(once, rules);
        REQUIRE_MESSAGE(once == twice, "input: \"", line, "\"");
    }
}

TEST_CASE("regroup only removes spaces, never other characters") {
    const RegroupRules rules = pt_rules();
    SplitMix64 rng(77);
    for (int i = 0; i < 12000; ++i) {
        const std::string line = random_line(rng);
        const RegroupResult r = regroup_counted(line, rules);
        REQUIRE_MESSAGE(drop_spaces(line) == drop_spaces(r.text), "input: \"", line, "\"");
        REQUIRE(r.text.size() <= line.size());
        REQUIRE(line.size() - r.text.size() == r.removed_spaces);
    }
}

TEST_CASE("regroup_file preserves line count and returns merges") {
    TempDir tmp;
    write_file(tmp.file("in.txt"), "indignaç ã o completa\nnada para juntar\n");
    const std::size_t merges = regroup_file(tmp.file("in.txt"), tmp.file("out.txt"), pt_rules());
    CHECK(merges == 1);
    CHECK(read_file(tmp.file("out.txt")) == "indignação completa\nnada para juntar\n");
}

TEST_CASE("regroup_file on an empty file") {
    TempDir tmp;
    write_file(tmp.file("in.txt"), "");
    CHECK(regroup_file(tmp.file("in.txt"), tmp.file("out.txt"), pt_rules()) == 0);
    CHECK(read_file(tmp.file("out.txt")).empty());
}

TEST_CASE("regroup_file is idempotent byte for byte") {
    TempDir tmp;
    write_file(tmp.file("in.txt"), "indignaç ã o completa\nÁ gua\n");
    regroup_file(tmp.file("in.txt"), tmp.file("once.txt"), pt_rules());
    const std::size_t merges =
        regroup_file(tmp.file("once.txt"), tmp.file("twice.txt"), pt_rules());
    CHECK(merges == 0);
    CHECK(read_file(tmp.file("once.txt")) == read_file(tmp.file("twice.txt")));
}

TEST_CASE("regroup_file reports missing input") {
    TempDir tmp;
    CHECK_THROWS_AS(regroup_file(tmp.file("absent.txt"), tmp.file("out.txt"), pt_rules()),
                    DataError);
}

TEST_CASE("rules built from a vocabulary take only infix tokens") {
    const Vocabulary vocab = load_vocab(data_file("fixture_vocab.tsv"));
    std::vector<std::pair<std::string, TokenPolicy>> tokens = {
        {"ã", TokenPolicy::Infix}, {"não", TokenPolicy::Word}};
    const Vocabulary extended = extend_vocab(vocab, tokens).vocab;
    const RegroupRules rules = RegroupRules::from_vocab(extended);
    CHECK(rules.infix_tokens == std::set<std::string>{"ã"});
}

TEST_CASE("from_tokens rejects multi-character tokens") {
    const std::vector<std::string> bad = {"ão"};
    CHECK_THROWS_AS(RegroupRules::from_tokens(bad), ConfigError);
}

TEST_CASE("composition: regroup repairs decoded text") {
    const Vocabulary base = load_vocab(data_file("fixture_vocab.tsv"));
    std::vector<std::pair<std::string, TokenPolicy>> tokens;
    for (const std::string& c :
         {"ì", "ò", "Á", "Í", "Ó", "Ú", "í", "ú", "Â", "Ê", "Ã", "Õ", "ã", "õ"}) {
        tokens.emplace_back(c, TokenPolicy::Infix);
    }
    tokens.emplace_back("não", TokenPolicy::Word);
    const Vocabulary vocab = extend_vocab(base, tokens).vocab;
    const RegroupRules rules = RegroupRules::from_vocab(vocab);

    for (const std::string s :
         {"indignação completa", "eu não como", "situação atual", "pães e bolos",
          "decisões difíceis"}) {
        CHECK(regroup(decode(vocab, encode(vocab, s)), rules) == s);
    }
}
