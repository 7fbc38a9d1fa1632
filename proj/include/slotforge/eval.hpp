#pragma once

#include <map>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "slotforge/corpus.hpp"
#include "slotforge/delex.hpp"

namespace slotforge {

using Chunk = std::tuple<std::string, std::size_t, std::size_t>;  // (type, start, end)

// Maximal chunks under conlleval IOB2 semantics; an I-X not continuing an
// X chunk starts a new X chunk.
std::set<Chunk> extract_chunks(const std::vector<SlotTag>& tags);

struct ChunkMetrics {
  double precision = 0;  // percentages in [0, 100]
  double recall = 0;
  double f1 = 0;
  std::size_t gold_chunks = 0;
  std::size_t predicted_chunks = 0;
  std::size_t correct_chunks = 0;
};

ChunkMetrics chunk_prf(const Corpus& gold,
                       const std::vector<std::vector<SlotTag>>& predicted);

struct AugmentationStats {
  std::size_t num_new_delex = 0;
  double avg_max_edit_distance = 0;
};

// num_new_delex counts deduplicated generations absent from the training
// delex set; avg_max_edit_distance averages each source's maximum distance
// to its generations, over sources with at least one generation.
AugmentationStats augmentation_stats(
    const std::set<DelexUtterance>& train_delex,
    const std::map<DelexUtterance, std::vector<DelexUtterance>>& generated);

std::string metrics_report_text(const std::map<std::string, double>& metrics);
std::string metrics_report_json(const std::map<std::string, double>& metrics);

}  // namespace slotforge
