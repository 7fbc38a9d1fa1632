#pragma once

#include <span>
#include <string>
#include <vector>

#include "slotforge/corpus.hpp"
#include "slotforge/delex.hpp"

namespace slotforge {

// Token-level Levenshtein distance, unit costs.
std::size_t edit_distance(std::span<const std::string> a, std::span<const std::string> b);
// Character-level variant, offered behind a config switch.
std::size_t edit_distance_chars(std::span<const std::string> a, std::span<const std::string> b);

// exp(-|len(a) - len(b)| / len(a)). Asymmetric: normalized by the first
// argument. len(a) == 0 is a domain error.
double ldp(std::size_t len_a, std::size_t len_b);

double diversity_score(std::span<const std::string> u, std::span<const std::string> u_prime);

struct RankedAlternative {
  DelexUtterance target;
  double score = 0;
  std::size_t rank = 0;          // 1 = most diverse
  std::size_t cluster_pos = 0;   // position in the input cluster
};

// Sorted by score descending; ties by target tokens lexicographically, then
// by cluster position. The input cluster must not contain u itself.
std::vector<RankedAlternative> rank_alternatives(const DelexUtterance& u,
                                                 const std::vector<DelexUtterance>& cluster);

struct TranslationPair {
  std::vector<std::string> source;  // delex tokens + final rank token "#k"
  std::vector<std::string> target;

  bool operator==(const TranslationPair&) const = default;
};

struct PairOptions {
  bool filter_half = true;     // keep only ranks <= ceil((K-1)/2)
  bool constant_rank = false;  // emit "#1" on every source
};

// D_seq2seq: for every utterance in every cluster of size >= 2, rank the
// other members and keep the most diverse half. Deduplicated, corpus order.
std::vector<TranslationPair> build_training_pairs(const Corpus& c, const PairOptions& opts = {});

// Generation rank requests for a frame's cluster of size K: 1..max(1, K/2).
// Absent frame yields an empty list.
std::vector<std::size_t> augmentation_ranks(
    const SemanticFrame& frame,
    const std::map<SemanticFrame, std::vector<std::size_t>>& clusters);

std::string rank_token(std::size_t rank);
bool is_rank_token(const std::string& tok);

// One pair per line: source tokens incl. #k, TAB, target tokens.
std::string write_pairs(const std::vector<TranslationPair>& pairs);
std::vector<TranslationPair> parse_pairs(const std::string& text);
void save_pairs(const std::vector<TranslationPair>& pairs, const std::string& path);
std::vector<TranslationPair> load_pairs(const std::string& path);

}  // namespace slotforge
