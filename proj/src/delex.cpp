#include "slotforge/delex.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <sstream>

#include "slotforge/diversity.hpp"

namespace slotforge {

bool is_placeholder(const std::string& tok) {
  return tok.size() >= 3 && tok.front() == '<' && tok.back() == '>';
}

std::string placeholder_for(const std::string& slot_type) {
  return "<" + slot_type + ">";
}

std::string placeholder_type(const std::string& tok) {
  if (!is_placeholder(tok)) return "";
  return tok.substr(1, tok.size() - 2);
}

DelexResult delexicalise(const Utterance& u) {
  DelexResult r;
  auto segs = slot_segments(u);
  std::size_t seg_idx = 0;
  for (std::size_t i = 0; i < u.tokens.size(); ++i) {
    if (seg_idx < segs.size() && segs[seg_idx].start == i) {
      r.alignment.push_back({r.delex.tokens.size(), segs[seg_idx]});
      r.delex.tokens.push_back(placeholder_for(segs[seg_idx].slot_type));
      i = segs[seg_idx].end - 1;
      ++seg_idx;
    } else {
      r.delex.tokens.push_back(u.tokens[i]);
    }
  }
  return r;
}

std::string ContextKey::serialized() const {
  std::string s = slot_type;
  s += '\t';
  for (std::size_t i = 0; i < left.size(); ++i) {
    if (i) s += ' ';
    s += left[i];
  }
  s += '\t';
  for (std::size_t i = 0; i < right.size(); ++i) {
    if (i) s += ' ';
    s += right[i];
  }
  return s;
}

ContextKey context_key_at(const DelexUtterance& d, std::size_t pos,
                          const std::string& slot_type) {
  ContextKey key;
  key.slot_type = slot_type;
  std::size_t lo = pos >= kContextLeft ? pos - kContextLeft : 0;
  for (std::size_t i = lo; i < pos; ++i) key.left.push_back(d.tokens[i]);
  std::size_t hi = std::min(d.tokens.size(), pos + 1 + kContextRight);
  for (std::size_t i = pos + 1; i < hi; ++i) key.right.push_back(d.tokens[i]);
  return key;
}

void SlotValueMap::add(const ContextKey& key, Value value) {
  entries_[key].insert(std::move(value));
  by_type_[key.slot_type].insert(key);
}

const std::set<SlotValueMap::Value>& SlotValueMap::lookup(const ContextKey& key) const {
  if (auto it = entries_.find(key); it != entries_.end()) return it->second;
  auto ty = by_type_.find(key.slot_type);
  if (ty == by_type_.end() || ty->second.empty())
    throw RealiseError("no slot values for type '" + key.slot_type + "'");
  std::vector<std::string> query = key.left;
  query.insert(query.end(), key.right.begin(), key.right.end());
  const ContextKey* best = nullptr;
  std::size_t best_dist = std::numeric_limits<std::size_t>::max();
  for (const ContextKey& cand : ty->second) {
    std::vector<std::string> ctx = cand.left;
    ctx.insert(ctx.end(), cand.right.begin(), cand.right.end());
    std::size_t dist = edit_distance(query, ctx);
    if (dist < best_dist ||
        (dist == best_dist && best && cand.serialized() < best->serialized())) {
      best_dist = dist;
      best = &cand;
    }
  }
  return entries_.at(*best);
}

std::string SlotValueMap::serialized() const {
  std::vector<std::string> lines;
  for (const auto& [key, values] : entries_) {
    for (const auto& v : values) {
      std::string line = key.serialized();
      line += '\t';
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) line += ' ';
        line += v[i];
      }
      lines.push_back(std::move(line));
    }
  }
  std::sort(lines.begin(), lines.end());
  std::string out;
  for (const auto& l : lines) {
    out += l;
    out += '\n';
  }
  return out;
}

namespace {
std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  std::string tok;
  while (in >> tok) out.push_back(std::move(tok));
  return out;
}
}  // namespace

SlotValueMap SlotValueMap::parse(const std::string& text) {
  SlotValueMap m;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cols;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
      if (i == line.size() || line[i] == '\t') {
        cols.push_back(line.substr(start, i - start));
        start = i + 1;
      }
    }
    if (cols.size() != 4)
      throw ParseError("slot value map line needs 4 tab-separated fields: " + line);
    ContextKey key{cols[0], split_ws(cols[1]), split_ws(cols[2])};
    Value value = split_ws(cols[3]);
    if (value.empty()) throw ParseError("empty slot value in map line: " + line);
    m.add(key, std::move(value));
  }
  return m;
}

void SlotValueMap::save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << serialized();
}

SlotValueMap SlotValueMap::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

SlotValueMap build_slot_value_map(const Corpus& c) {
  SlotValueMap m;
  for (const Utterance& u : c.utterances) {
    DelexResult r = delexicalise(u);
    for (const DelexAlignment& a : r.alignment) {
      ContextKey key =
          context_key_at(r.delex, a.placeholder_index, a.segment.slot_type);
      m.add(key, a.segment.value);
    }
  }
  return m;
}

Utterance realise(const DelexUtterance& d, const SlotValueMap& m, Rng& rng) {
  Utterance u;
  for (std::size_t i = 0; i < d.tokens.size(); ++i) {
    const std::string& tok = d.tokens[i];
    std::string type = placeholder_type(tok);
    if (type.empty()) {
      u.tokens.push_back(tok);
      u.tags.push_back(SlotTag::outside());
      continue;
    }
    const auto& values = m.lookup(context_key_at(d, i, type));
    std::size_t pick = uniform_index(rng, values.size());
    auto it = values.begin();
    std::advance(it, pick);
    for (std::size_t j = 0; j < it->size(); ++j) {
      u.tokens.push_back((*it)[j]);
      u.tags.push_back(j == 0 ? SlotTag::begin(type) : SlotTag::inside(type));
    }
  }
  return u;
}

}  // namespace slotforge
