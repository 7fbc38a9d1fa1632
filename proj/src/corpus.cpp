#include "slotforge/corpus.hpp"

#include <fstream>
#include <sstream>

namespace slotforge {

SlotTag SlotTag::parse(const std::string& s) {
  if (s == "O") return outside();
  if (s.size() >= 3 && (s[0] == 'B' || s[0] == 'I') && s[1] == '-') {
    std::string type = s.substr(2);
    for (char c : type)
      if (std::isspace(static_cast<unsigned char>(c)))
        throw ParseError("whitespace in slot type: '" + s + "'");
    return s[0] == 'B' ? begin(std::move(type)) : inside(std::move(type));
  }
  throw ParseError("malformed tag '" + s + "'");
}

std::string SlotTag::str() const {
  switch (kind) {
    case Kind::Outside: return "O";
    case Kind::Begin: return "B-" + slot_type;
    case Kind::Inside: return "I-" + slot_type;
  }
  return "O";
}

std::vector<SlotSegment> slot_segments(const Utterance& u) {
  std::vector<SlotSegment> segs;
  for (std::size_t i = 0; i < u.tags.size(); ++i) {
    const SlotTag& t = u.tags[i];
    if (t.kind == SlotTag::Kind::Outside) continue;
    bool continues = t.kind == SlotTag::Kind::Inside && !segs.empty() &&
                     segs.back().end == i && segs.back().slot_type == t.slot_type;
    if (continues) {
      segs.back().end = i + 1;
      segs.back().value.push_back(u.tokens[i]);
    } else {
      segs.push_back({t.slot_type, i, i + 1, {u.tokens[i]}});
    }
  }
  return segs;
}

SemanticFrame frame_of(const Utterance& u) {
  SemanticFrame f;
  for (const auto& s : slot_segments(u)) ++f.counts[s.slot_type];
  return f;
}

Corpus parse_conll(const std::string& text, const std::string& provenance) {
  Corpus corpus;
  corpus.provenance = provenance;
  Utterance cur;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  auto flush = [&] {
    if (!cur.tokens.empty()) {
      corpus.utterances.push_back(std::move(cur));
      cur = {};
    }
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream cols(line);
    std::vector<std::string> fields;
    std::string f;
    while (cols >> f) fields.push_back(std::move(f));
    if (fields.empty()) {
      flush();
      continue;
    }
    if (fields.size() < 2)
      throw ParseError(provenance + ":" + std::to_string(lineno) +
                       ": expected at least 2 columns, got 1");
    cur.tokens.push_back(fields.front());
    try {
      cur.tags.push_back(SlotTag::parse(fields.back()));
    } catch (const ParseError& e) {
      throw ParseError(provenance + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  flush();
  if (corpus.utterances.empty())
    throw ParseError(provenance + ": empty corpus");
  return corpus;
}

Corpus load_conll(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_conll(buf.str(), path);
}

std::string write_conll(const Corpus& c) {
  std::string out;
  for (std::size_t i = 0; i < c.utterances.size(); ++i) {
    if (i) out += '\n';
    const Utterance& u = c.utterances[i];
    for (std::size_t j = 0; j < u.tokens.size(); ++j) {
      out += u.tokens[j];
      out += ' ';
      out += u.tags[j].str();
      out += '\n';
    }
  }
  return out;
}

void save_conll(const Corpus& c, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << write_conll(c);
}

std::map<SemanticFrame, std::vector<std::size_t>> cluster_by_frame(const Corpus& c) {
  std::map<SemanticFrame, std::vector<std::size_t>> clusters;
  for (std::size_t i = 0; i < c.utterances.size(); ++i)
    clusters[frame_of(c.utterances[i])].push_back(i);
  return clusters;
}

}  // namespace slotforge
