#include "slotforge/synth.hpp"

#include <map>
#include <set>
#include <sstream>

namespace slotforge {

namespace {

// clang-format off
const std::vector<std::string> kTemplates = {
    // {distance, poi_type}
    "show me the {distance} {poi_type}",
    "give me the {distance} route to {poi_type}",
    "is there a {distance} {poi_type}",
    "find me the {distance} {poi_type} please",
    "i need directions to the {distance} {poi_type}",
    "what is the {distance} {poi_type} around here",
    "can you locate a {distance} {poi_type} for me",
    "where is the {distance} {poi_type}",
    // {poi_type}
    "find a {poi_type}",
    "i want to eat at some {poi_type}",
    "take me to a {poi_type}",
    "any {poi_type} nearby",
    "please direct me to a {poi_type}",
    "searching for a {poi_type} right now",
    "show a {poi_type} around",
    // {poi_type, city}
    "find a {poi_type} in {city}",
    "is there a {poi_type} near {city}",
    "i need a {poi_type} located in {city}",
    "show me a {poi_type} in {city}",
    "any good {poi_type} around {city}",
    "list every {poi_type} in {city}",
    // {cuisine, poi_type}
    "find a {cuisine} {poi_type}",
    "i feel like some {cuisine} food at a {poi_type}",
    "show me a {poi_type} serving {cuisine} dishes",
    "any {cuisine} {poi_type} close by",
    "where can i get {cuisine} at a {poi_type}",
    // {distance}
    "how far is the {distance} one",
    "tell me the {distance} option",
    "pick the {distance} alternative",
    "i prefer the {distance} choice",
    // {city}
    "what is the weather in {city}",
    "how are the roads in {city}",
    "tell me about traffic in {city}",
    "is it raining in {city}",
};

const std::map<std::string, std::vector<std::string>> kValues = {
    {"poi_type",
     {"restaurant", "hospital", "cafe", "gas station", "pharmacy", "hotel",
      "supermarket", "parking garage", "museum", "library", "bakery", "cinema"}},
    {"distance",
     {"closest", "nearest", "farthest", "quickest", "fastest", "slowest",
      "cheapest", "shortest", "least busy", "most direct"}},
    {"city",
     {"boston", "new york", "chicago", "seattle", "denver", "austin",
      "los angeles", "portland", "miami", "dallas", "san francisco", "houston"}},
    {"cuisine",
     {"thai", "italian", "mexican", "chinese", "indian", "greek", "french",
      "japanese", "korean", "vietnamese", "turkish"}},
};
// clang-format on

bool is_slot_token(const std::string& tok) {
  return tok.size() > 2 && tok.front() == '{' && tok.back() == '}';
}

Utterance sample_utterance(const std::string& tmpl, Rng& rng) {
  Utterance u;
  std::istringstream ss(tmpl);
  std::string tok;
  while (ss >> tok) {
    if (!is_slot_token(tok)) {
      u.tokens.push_back(tok);
      u.tags.push_back(SlotTag::outside());
      continue;
    }
    std::string type = tok.substr(1, tok.size() - 2);
    const auto& values = kValues.at(type);
    std::istringstream vs(values[uniform_index(rng, values.size())]);
    std::string vtok;
    bool first = true;
    while (vs >> vtok) {
      u.tokens.push_back(vtok);
      u.tags.push_back(first ? SlotTag::begin(type) : SlotTag::inside(type));
      first = false;
    }
  }
  return u;
}

Corpus sample_corpus(const std::vector<std::size_t>& pool, std::size_t n, Rng& rng,
                     const std::string& provenance) {
  Corpus c;
  c.provenance = provenance;
  for (std::size_t i = 0; i < n; ++i)
    c.utterances.push_back(sample_utterance(kTemplates[pool[uniform_index(rng, pool.size())]], rng));
  return c;
}

}  // namespace

SyntheticData make_synthetic(std::uint64_t seed, std::size_t n_train, std::size_t n_test) {
  if (n_train < 1 || n_test < 1)
    throw std::invalid_argument("make_synthetic: corpus sizes must be >= 1");
  // every 6th template (offset 3) is test-only, every 6th (offset 0) train-only
  std::vector<std::size_t> train_pool, test_pool;
  for (std::size_t i = 0; i < kTemplates.size(); ++i) {
    if (i % 6 != 3) train_pool.push_back(i);
    if (i % 6 != 0) test_pool.push_back(i);
  }
  Rng rng(seed);
  SyntheticData data;
  data.train = sample_corpus(train_pool, n_train, rng, "synthetic-train");
  data.dev = sample_corpus(train_pool, std::max<std::size_t>(30, n_train / 4), rng,
                           "synthetic-dev");
  data.test = sample_corpus(test_pool, n_test, rng, "synthetic-test");
  return data;
}

std::size_t synth_template_count() { return kTemplates.size(); }

std::size_t synth_frame_count() {
  std::set<std::set<std::string>> frames;
  for (const auto& tmpl : kTemplates) {
    std::set<std::string> frame;
    std::istringstream ss(tmpl);
    std::string tok;
    while (ss >> tok)
      if (is_slot_token(tok)) frame.insert(tok.substr(1, tok.size() - 2));
    frames.insert(std::move(frame));
  }
  return frames.size();
}

std::size_t synth_slot_type_count() { return kValues.size(); }

}  // namespace slotforge
