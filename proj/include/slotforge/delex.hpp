#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "slotforge/corpus.hpp"
#include "slotforge/rng.hpp"

namespace slotforge {

struct RealiseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Token sequence where each slot segment is collapsed to "<slot_type>".
struct DelexUtterance {
  std::vector<std::string> tokens;

  bool operator==(const DelexUtterance&) const = default;
  auto operator<=>(const DelexUtterance&) const = default;
};

bool is_placeholder(const std::string& tok);
std::string placeholder_for(const std::string& slot_type);
// "<city>" -> "city"; empty for non-placeholders.
std::string placeholder_type(const std::string& tok);

struct DelexAlignment {
  std::size_t placeholder_index;  // position in the delex token sequence
  SlotSegment segment;            // the original segment it replaced
};

struct DelexResult {
  DelexUtterance delex;
  std::vector<DelexAlignment> alignment;
};

DelexResult delexicalise(const Utterance& u);

// Slot type plus up to 2 tokens left / 3 tokens right of the placeholder in
// the delexicalised sequence.
struct ContextKey {
  std::string slot_type;
  std::vector<std::string> left;
  std::vector<std::string> right;

  std::string serialized() const;
  auto operator<=>(const ContextKey&) const = default;
};

inline constexpr std::size_t kContextLeft = 2;
inline constexpr std::size_t kContextRight = 3;

ContextKey context_key_at(const DelexUtterance& d, std::size_t placeholder_pos,
                          const std::string& slot_type);

class SlotValueMap {
 public:
  using Value = std::vector<std::string>;

  void add(const ContextKey& key, Value value);

  const std::map<ContextKey, std::set<Value>>& entries() const { return entries_; }
  bool has_type(const std::string& slot_type) const { return by_type_.count(slot_type) > 0; }

  // Exact key match, else the same-type key with minimum token edit distance
  // over concatenated left+right contexts (ties by serialized key order).
  // Throws RealiseError when the slot type is absent entirely.
  const std::set<Value>& lookup(const ContextKey& key) const;

  std::string serialized() const;  // sorted TSV, one line per (key, value)
  static SlotValueMap parse(const std::string& text);
  void save(const std::string& path) const;
  static SlotValueMap load(const std::string& path);

 private:
  std::map<ContextKey, std::set<Value>> entries_;
  std::map<std::string, std::set<ContextKey>> by_type_;
};

SlotValueMap build_slot_value_map(const Corpus& c);

Utterance realise(const DelexUtterance& d, const SlotValueMap& m, Rng& rng);

}  // namespace slotforge
