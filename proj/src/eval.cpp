#include "slotforge/eval.hpp"

#include <sstream>

#include "slotforge/diversity.hpp"
#include "json.hpp"

namespace slotforge {

std::set<Chunk> extract_chunks(const std::vector<SlotTag>& tags) {
  Utterance u;
  u.tags = tags;
  u.tokens.assign(tags.size(), "_");
  std::set<Chunk> chunks;
  for (const auto& s : slot_segments(u)) chunks.insert({s.slot_type, s.start, s.end});
  return chunks;
}

ChunkMetrics chunk_prf(const Corpus& gold,
                       const std::vector<std::vector<SlotTag>>& predicted) {
  if (predicted.size() != gold.size())
    throw std::invalid_argument("chunk_prf: prediction count mismatch");
  ChunkMetrics m;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    if (predicted[i].size() != gold.utterances[i].tags.size())
      throw std::invalid_argument("chunk_prf: length mismatch at utterance " +
                                  std::to_string(i));
    auto g = extract_chunks(gold.utterances[i].tags);
    auto p = extract_chunks(predicted[i]);
    m.gold_chunks += g.size();
    m.predicted_chunks += p.size();
    for (const Chunk& c : p)
      if (g.count(c)) ++m.correct_chunks;
  }
  m.precision = m.predicted_chunks ? 100.0 * m.correct_chunks / m.predicted_chunks : 0.0;
  m.recall = m.gold_chunks ? 100.0 * m.correct_chunks / m.gold_chunks : 0.0;
  m.f1 = (m.precision + m.recall) > 0
             ? 2 * m.precision * m.recall / (m.precision + m.recall)
             : 0.0;
  return m;
}

AugmentationStats augmentation_stats(
    const std::set<DelexUtterance>& train_delex,
    const std::map<DelexUtterance, std::vector<DelexUtterance>>& generated) {
  AugmentationStats stats;
  std::set<DelexUtterance> distinct;
  double sum_max = 0;
  std::size_t sources = 0;
  for (const auto& [source, gens] : generated) {
    if (gens.empty()) continue;
    ++sources;
    std::size_t max_ed = 0;
    for (const DelexUtterance& g : gens) {
      distinct.insert(g);
      max_ed = std::max(max_ed, edit_distance(source.tokens, g.tokens));
    }
    sum_max += double(max_ed);
  }
  for (const DelexUtterance& g : distinct)
    if (!train_delex.count(g)) ++stats.num_new_delex;
  stats.avg_max_edit_distance = sources ? sum_max / double(sources) : 0.0;
  return stats;
}

std::string metrics_report_text(const std::map<std::string, double>& metrics) {
  std::ostringstream out;
  for (const auto& [k, v] : metrics) out << k << '\t' << v << '\n';
  return out.str();
}

std::string metrics_report_json(const std::map<std::string, double>& metrics) {
  nlohmann::json j;
  for (const auto& [k, v] : metrics) j[k] = v;
  return j.dump(2) + "\n";
}

}  // namespace slotforge
