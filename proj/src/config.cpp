#include "slotforge/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace slotforge {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

}  // namespace

KeyValueConfig KeyValueConfig::parse(const std::string& text) {
  KeyValueConfig kv;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    auto eq = t.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(lineno) + " has no '=': " + t);
    std::string key = trim(t.substr(0, eq));
    if (key.empty())
      throw ConfigError("config line " + std::to_string(lineno) + " has empty key");
    kv.values_[key] = trim(t.substr(eq + 1));
  }
  return kv;
}

KeyValueConfig KeyValueConfig::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

std::string KeyValueConfig::get_string(const std::string& key,
                                       const std::string& fallback) const {
  auto it = values_.find(key);
  return it == values_.end() ? fallback : it->second;
}

long KeyValueConfig::get_int(const std::string& key, long fallback) const {
  auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  try {
    return std::stol(it->second);
  } catch (const std::exception&) {
    throw ConfigError("config key " + key + " is not an integer: " + it->second);
  }
}

double KeyValueConfig::get_double(const std::string& key, double fallback) const {
  auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  try {
    return std::stod(it->second);
  } catch (const std::exception&) {
    throw ConfigError("config key " + key + " is not a number: " + it->second);
  }
}

bool KeyValueConfig::get_bool(const std::string& key, bool fallback) const {
  auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  const std::string& v = it->second;
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ConfigError("config key " + key + " is not a boolean: " + v);
}

void PipelineConfig::validate() const {
  gen.validate();
  tagger.validate();
  if (seeds.empty()) throw ConfigError("seed list is empty");
  std::set<std::uint64_t> uniq(seeds.begin(), seeds.end());
  if (uniq.size() != seeds.size()) throw ConfigError("seed list has duplicates");
  if (top_m < 1) throw ConfigError("top_m must be >= 1");
  if (gen_dev_fraction < 0 || gen_dev_fraction >= 1)
    throw ConfigError("gen_dev_fraction must be in [0, 1)");
}

std::vector<std::uint64_t> parse_seed_list(const std::string& csv) {
  std::vector<std::uint64_t> seeds;
  std::istringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      seeds.push_back(std::stoull(item));
    } catch (const std::exception&) {
      throw ConfigError("bad seed value: " + item);
    }
  }
  if (seeds.empty()) throw ConfigError("empty seed list");
  return seeds;
}

PipelineConfig pipeline_config_from(const KeyValueConfig& kv) {
  PipelineConfig pc;
  pc.train_path = kv.get_string("paths.train", pc.train_path);
  pc.dev_path = kv.get_string("paths.dev", pc.dev_path);
  pc.test_path = kv.get_string("paths.test", pc.test_path);
  pc.output_dir = kv.get_string("paths.output_dir", pc.output_dir);
  pc.vectors_path = kv.get_string("paths.vectors", pc.vectors_path);

  pc.gen.num_layers = static_cast<int>(kv.get_int("gen.num_layers", pc.gen.num_layers));
  pc.gen.hidden_size = static_cast<int>(kv.get_int("gen.hidden_size", pc.gen.hidden_size));
  pc.gen.embed_size = static_cast<int>(kv.get_int("gen.embed_size", pc.gen.embed_size));
  pc.gen.max_source_len =
      static_cast<int>(kv.get_int("gen.max_source_len", pc.gen.max_source_len));
  pc.gen.beam_size = static_cast<int>(kv.get_int("gen.beam_size", pc.gen.beam_size));
  pc.gen.batch_size = static_cast<int>(kv.get_int("gen.batch_size", pc.gen.batch_size));
  pc.gen.learning_rate = kv.get_double("gen.learning_rate", pc.gen.learning_rate);
  pc.gen.lr_halving = kv.get_bool("gen.lr_halving", pc.gen.lr_halving);
  pc.gen.max_epochs = static_cast<int>(kv.get_int("gen.max_epochs", pc.gen.max_epochs));
  pc.gen.clip_norm = kv.get_double("gen.clip_norm", pc.gen.clip_norm);
  pc.gen.seed = static_cast<std::uint64_t>(kv.get_int("gen.seed", long(pc.gen.seed)));
  pc.gen.attention = kv.get_string("gen.attention", pc.gen.attention);
  pc.gen.bidirectional = kv.get_bool("gen.bidirectional", pc.gen.bidirectional);
  pc.gen.max_decode_len =
      static_cast<int>(kv.get_int("gen.max_decode_len", pc.gen.max_decode_len));

  pc.tagger.embed_size =
      static_cast<int>(kv.get_int("tagger.embed_size", pc.tagger.embed_size));
  pc.tagger.hidden_size =
      static_cast<int>(kv.get_int("tagger.hidden_size", pc.tagger.hidden_size));
  pc.tagger.dropout = kv.get_double("tagger.dropout", pc.tagger.dropout);
  pc.tagger.batch_size =
      static_cast<int>(kv.get_int("tagger.batch_size", pc.tagger.batch_size));
  pc.tagger.learning_rate = kv.get_double("tagger.learning_rate", pc.tagger.learning_rate);
  pc.tagger.max_epochs =
      static_cast<int>(kv.get_int("tagger.max_epochs", pc.tagger.max_epochs));
  pc.tagger.patience = static_cast<int>(kv.get_int("tagger.patience", pc.tagger.patience));
  pc.tagger.pretrained_vectors_path = pc.vectors_path;

  pc.top_m = static_cast<int>(kv.get_int("augment.top_m", pc.top_m));
  pc.enforce_frame_match =
      kv.get_bool("augment.enforce_frame_match", pc.enforce_frame_match);
  pc.no_seq2seq = kv.get_bool("augment.no_seq2seq", pc.no_seq2seq);
  pc.no_ranks = kv.get_bool("augment.no_ranks", pc.no_ranks);
  pc.no_filter = kv.get_bool("augment.no_filter", pc.no_filter);
  pc.gen_dev_fraction = kv.get_double("augment.gen_dev_fraction", pc.gen_dev_fraction);
  if (kv.has("seeds")) pc.seeds = parse_seed_list(kv.get_string("seeds", ""));
  return pc;
}

}  // namespace slotforge
