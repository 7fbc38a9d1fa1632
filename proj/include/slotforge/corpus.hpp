#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace slotforge {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// "O", "B-<type>" or "I-<type>".
struct SlotTag {
  enum class Kind { Outside, Begin, Inside };
  Kind kind = Kind::Outside;
  std::string slot_type;  // empty iff Outside

  static SlotTag outside() { return {}; }
  static SlotTag begin(std::string t) { return {Kind::Begin, std::move(t)}; }
  static SlotTag inside(std::string t) { return {Kind::Inside, std::move(t)}; }

  // Throws ParseError on anything not O/B-/I- shaped.
  static SlotTag parse(const std::string& s);
  std::string str() const;

  bool operator==(const SlotTag&) const = default;
};

struct Utterance {
  std::vector<std::string> tokens;
  std::vector<SlotTag> tags;

  bool operator==(const Utterance&) const = default;
};

struct SlotSegment {
  std::string slot_type;
  std::size_t start = 0;  // inclusive
  std::size_t end = 0;    // exclusive
  std::vector<std::string> value;

  bool operator==(const SlotSegment&) const = default;
};

// Order-insensitive multiset of slot types.
struct SemanticFrame {
  std::map<std::string, int> counts;

  bool empty() const { return counts.empty(); }
  bool operator==(const SemanticFrame&) const = default;
  auto operator<=>(const SemanticFrame&) const = default;
};

struct Corpus {
  std::vector<Utterance> utterances;
  std::string provenance;

  std::size_t size() const { return utterances.size(); }
};

// Maximal slot segments under IOB2 with conlleval repair: an I-X that does
// not continue an X chunk starts a new one.
std::vector<SlotSegment> slot_segments(const Utterance& u);

SemanticFrame frame_of(const Utterance& u);

// First column token, last column tag, blank lines delimit utterances.
Corpus parse_conll(const std::string& text, const std::string& provenance = "");
Corpus load_conll(const std::string& path);

std::string write_conll(const Corpus& c);
void save_conll(const Corpus& c, const std::string& path);

// Every corpus index appears in exactly one cluster, in corpus order.
std::map<SemanticFrame, std::vector<std::size_t>> cluster_by_frame(const Corpus& c);

}  // namespace slotforge
