#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "slotforge/corpus.hpp"
#include "slotforge/diversity.hpp"

using namespace slotforge;

namespace {

using Toks = std::vector<std::string>;

// Exponential recursive Levenshtein with memoization; the independent
// oracle for the DP implementation.
std::size_t oracle_ed(const Toks& a, const Toks& b, std::size_t i, std::size_t j,
                      std::map<std::pair<std::size_t, std::size_t>, std::size_t>& memo) {
  if (i == a.size()) return b.size() - j;
  if (j == b.size()) return a.size() - i;
  auto key = std::make_pair(i, j);
  if (auto it = memo.find(key); it != memo.end()) return it->second;
  std::size_t best = std::min(
      {oracle_ed(a, b, i + 1, j, memo) + 1, oracle_ed(a, b, i, j + 1, memo) + 1,
       oracle_ed(a, b, i + 1, j + 1, memo) + (a[i] == b[j] ? 0 : 1)});
  memo[key] = best;
  return best;
}

std::size_t oracle_ed(const Toks& a, const Toks& b) {
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> memo;
  return oracle_ed(a, b, 0, 0, memo);
}

Toks random_seq(Rng& rng, std::size_t max_len) {
  static const Toks alphabet = {"a", "b", "c", "d"};
  Toks s;
  std::size_t len = uniform_index(rng, max_len + 1);
  for (std::size_t i = 0; i < len; ++i) s.push_back(alphabet[uniform_index(rng, 4)]);
  return s;
}

Toks split(const std::string& s) {
  std::istringstream ss(s);
  Toks out;
  std::string t;
  while (ss >> t) out.push_back(t);
  return out;
}

}  // namespace

TEST_CASE("edit distance on the workflow figure pair") {
  Toks a = split("give me the <distance> route to <poi_type>");
  Toks b = split("find me the <distance> route to <poi_type>");
  CHECK(edit_distance(a, b) == 1);
  CHECK(edit_distance(a, a) == 0);
  CHECK(edit_distance({}, a) == a.size());
}

TEST_CASE("edit distance matches the brute-force oracle on random pairs") {
  Rng rng(1234);
  for (int trial = 0; trial < 500; ++trial) {
    Toks a = random_seq(rng, 6), b = random_seq(rng, 6);
    CHECK(edit_distance(a, b) == oracle_ed(a, b));
  }
}

TEST_CASE("edit distance is a metric") {
  Rng rng(99);
  for (int trial = 0; trial < 300; ++trial) {
    Toks a = random_seq(rng, 6), b = random_seq(rng, 6), c = random_seq(rng, 6);
    std::size_t ab = edit_distance(a, b), ba = edit_distance(b, a);
    CHECK(ab == ba);
    CHECK((ab == 0) == (a == b));
    CHECK(edit_distance(a, c) <= ab + edit_distance(b, c));
  }
}

TEST_CASE("character-level variant differs from token-level where expected") {
  Toks a = {"abc"}, b = {"abd"};
  CHECK(edit_distance(a, b) == 1);
  CHECK(edit_distance_chars(a, b) == 1);
  Toks c = {"abcd"}, d = {"wxyz"};
  CHECK(edit_distance(c, d) == 1);
  CHECK(edit_distance_chars(c, d) == 4);
}

TEST_CASE("ldp formula and asymmetry") {
  CHECK(ldp(5, 5) == doctest::Approx(1.0));
  CHECK(ldp(7, 13) == doctest::Approx(std::exp(-6.0 / 7.0)).epsilon(1e-12));
  CHECK(ldp(4, 2) == doctest::Approx(std::exp(-0.5)));
  CHECK(ldp(2, 4) == doctest::Approx(std::exp(-1.0)));
  CHECK_THROWS_AS(ldp(0, 3), std::domain_error);
}

TEST_CASE("diversity score combines distance and penalty") {
  Toks a = split("give me the <distance> route to <poi_type>");
  Toks b = split("find me the <distance> route to <poi_type>");
  CHECK(diversity_score(a, b) == doctest::Approx(1.0));
  CHECK(diversity_score(a, a) == 0.0);
  Toks x = {"a", "b", "c"}, y = {"a", "d"};
  CHECK(diversity_score(x, y) ==
        doctest::Approx(2.0 * std::exp(-1.0 / 3.0)).epsilon(1e-9));
}

TEST_CASE("rank_alternatives sorts by score with deterministic tie-breaks") {
  DelexUtterance u{split("find me the <distance> route to <poi_type>")};
  std::vector<DelexUtterance> cluster = {
      {split("give me the <distance> route to <poi_type>")},   // score 1.0
      {split("is there a <distance> <poi_type>")},             // higher
      {split("i 'm desiring to eat at some <poi_type> is there any in <distance>")},
  };
  auto ranked = rank_alternatives(u, cluster);
  REQUIRE(ranked.size() == 3);
  CHECK(ranked[2].target == cluster[0]);  // the near-identical (1.0) pair ranks last
  CHECK(ranked[2].score == doctest::Approx(1.0));
  for (std::size_t i = 1; i < ranked.size(); ++i) {
    CHECK(ranked[i - 1].score >= ranked[i].score);
    CHECK(ranked[i].rank == i + 1);
  }

  CHECK(rank_alternatives(u, {}).empty());

  // equal scores: lexicographic target order, stable under input shuffling
  DelexUtterance base{{"a", "b", "c"}};
  std::vector<DelexUtterance> ties = {{{"a", "b", "z"}}, {{"a", "b", "d"}}};
  auto r1 = rank_alternatives(base, ties);
  std::swap(ties[0], ties[1]);
  auto r2 = rank_alternatives(base, ties);
  CHECK(r1[0].target.tokens == std::vector<std::string>{"a", "b", "d"});
  CHECK(r1[0].target == r2[0].target);
  CHECK(r1[1].target == r2[1].target);
}

namespace {

// K utterances sharing one frame, with K distinct delex forms.
Corpus cluster_corpus(std::size_t k) {
  Corpus c;
  for (std::size_t i = 0; i < k; ++i) {
    Utterance u;
    for (std::size_t j = 0; j <= i; ++j) {
      u.tokens.push_back("w" + std::to_string(j));
      u.tags.push_back(SlotTag::outside());
    }
    u.tokens.push_back("v");
    u.tags.push_back(SlotTag::begin("t"));
    c.utterances.push_back(std::move(u));
  }
  return c;
}

}  // namespace

TEST_CASE("pair filtering keeps the most diverse half") {
  CHECK(build_training_pairs(cluster_corpus(2)).size() == 2);
  // size 5: each member keeps ceil(4/2)=2 -> 10 pairs
  CHECK(build_training_pairs(cluster_corpus(5)).size() == 10);
  // singleton contributes nothing
  Corpus single = cluster_corpus(1);
  CHECK(build_training_pairs(single).empty());
}

TEST_CASE("pair counts follow K * ceil((K-1)/2) for distinct-template clusters") {
  for (std::size_t k = 2; k <= 8; ++k) {
    std::size_t expected = k * ((k - 1 + 1) / 2);
    CHECK(build_training_pairs(cluster_corpus(k)).size() == expected);
  }
}

TEST_CASE("pair sources end with exactly one rank token, targets carry none") {
  auto pairs = build_training_pairs(cluster_corpus(6));
  for (const auto& p : pairs) {
    REQUIRE(!p.source.empty());
    CHECK(is_rank_token(p.source.back()));
    for (std::size_t i = 0; i + 1 < p.source.size(); ++i)
      CHECK(!is_rank_token(p.source[i]));
    for (const auto& t : p.target) CHECK(!is_rank_token(t));
  }
}

TEST_CASE("constant_rank and filter options") {
  PairOptions all;
  all.filter_half = false;
  CHECK(build_training_pairs(cluster_corpus(5), all).size() == 20);

  PairOptions flat;
  flat.constant_rank = true;
  for (const auto& p : build_training_pairs(cluster_corpus(5), flat))
    CHECK(p.source.back() == "#1");
}

TEST_CASE("augmentation_ranks implements max(1, floor(K/2))") {
  Corpus c6 = cluster_corpus(6);
  auto clusters = cluster_by_frame(c6);
  SemanticFrame frame = frame_of(c6.utterances[0]);
  CHECK(augmentation_ranks(frame, clusters) == std::vector<std::size_t>{1, 2, 3});

  auto c1 = cluster_corpus(1);
  CHECK(augmentation_ranks(frame_of(c1.utterances[0]), cluster_by_frame(c1)) ==
        std::vector<std::size_t>{1});

  auto c7 = cluster_corpus(7);
  CHECK(augmentation_ranks(frame_of(c7.utterances[0]), cluster_by_frame(c7)).size() == 3);

  SemanticFrame absent;
  absent.counts["nope"] = 1;
  CHECK(augmentation_ranks(absent, clusters).empty());
}

TEST_CASE("rank token recognizer") {
  CHECK(is_rank_token("#1"));
  CHECK(is_rank_token("#12"));
  CHECK(!is_rank_token("#0"));
  CHECK(!is_rank_token("#"));
  CHECK(!is_rank_token("1"));
  CHECK(!is_rank_token("#x"));
}

TEST_CASE("pair TSV round trips") {
  auto pairs = build_training_pairs(cluster_corpus(4));
  std::string text = write_pairs(pairs);
  auto back = parse_pairs(text);
  CHECK(back == pairs);
  CHECK_THROWS_AS(parse_pairs("no tab here\n"), ParseError);
  CHECK_THROWS_AS(parse_pairs("a b\tc d\n"), ParseError);  // missing rank token
}
