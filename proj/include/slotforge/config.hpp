#pragma once

#include <map>
#include <string>
#include <vector>

#include "slotforge/seq2seq.hpp"
#include "slotforge/tagger.hpp"

namespace slotforge {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// UTF-8 key=value lines with dotted section prefixes, '#' comments.
class KeyValueConfig {
 public:
  static KeyValueConfig parse(const std::string& text);
  static KeyValueConfig load(const std::string& path);

  void set(const std::string& key, const std::string& value) { values_[key] = value; }
  bool has(const std::string& key) const { return values_.count(key) > 0; }

  std::string get_string(const std::string& key, const std::string& fallback) const;
  long get_int(const std::string& key, long fallback) const;
  double get_double(const std::string& key, double fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;

  const std::map<std::string, std::string>& values() const { return values_; }

 private:
  std::map<std::string, std::string> values_;
};

struct PipelineConfig {
  std::string train_path;
  std::string dev_path;
  std::string test_path;
  std::string output_dir = "out";
  std::string vectors_path;  // optional pretrained word vectors

  GenConfig gen;
  TaggerConfig tagger;

  int top_m = 1;  // hypotheses kept per (source, rank)
  bool enforce_frame_match = false;
  bool no_seq2seq = false;
  bool no_ranks = false;
  bool no_filter = false;
  double gen_dev_fraction = 0.1;  // generator pair holdout
  std::vector<std::uint64_t> seeds = {1, 2, 3, 4, 5};

  void validate() const;
};

PipelineConfig pipeline_config_from(const KeyValueConfig& kv);
std::vector<std::uint64_t> parse_seed_list(const std::string& csv);

}  // namespace slotforge
