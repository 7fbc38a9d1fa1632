#include "slotforge/diversity.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace slotforge {

namespace {

template <typename Seq>
std::size_t levenshtein(const Seq& a, const Seq& b) {
  const std::size_t n = a.size(), m = b.size();
  std::vector<std::size_t> prev(m + 1), cur(m + 1);
  for (std::size_t j = 0; j <= m; ++j) prev[j] = j;
  for (std::size_t i = 1; i <= n; ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= m; ++j) {
      std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
    }
    std::swap(prev, cur);
  }
  return prev[m];
}

}  // namespace

std::size_t edit_distance(std::span<const std::string> a, std::span<const std::string> b) {
  return levenshtein(a, b);
}

std::size_t edit_distance_chars(std::span<const std::string> a,
                                std::span<const std::string> b) {
  auto join = [](std::span<const std::string> s) {
    std::string out;
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (i) out += ' ';
      out += s[i];
    }
    return out;
  };
  return levenshtein(join(a), join(b));
}

double ldp(std::size_t len_a, std::size_t len_b) {
  if (len_a == 0) throw std::domain_error("ldp: first sequence is empty");
  double diff = len_a > len_b ? double(len_a - len_b) : double(len_b - len_a);
  return std::exp(-diff / double(len_a));
}

double diversity_score(std::span<const std::string> u, std::span<const std::string> u_prime) {
  return double(edit_distance(u, u_prime)) * ldp(u.size(), u_prime.size());
}

std::vector<RankedAlternative> rank_alternatives(const DelexUtterance& u,
                                                 const std::vector<DelexUtterance>& cluster) {
  std::vector<RankedAlternative> out;
  out.reserve(cluster.size());
  for (std::size_t i = 0; i < cluster.size(); ++i)
    out.push_back({cluster[i], diversity_score(u.tokens, cluster[i].tokens), 0, i});
  std::sort(out.begin(), out.end(), [](const RankedAlternative& a, const RankedAlternative& b) {
    if (a.score != b.score) return a.score > b.score;
    if (a.target.tokens != b.target.tokens) return a.target.tokens < b.target.tokens;
    return a.cluster_pos < b.cluster_pos;
  });
  for (std::size_t i = 0; i < out.size(); ++i) out[i].rank = i + 1;
  return out;
}

std::string rank_token(std::size_t rank) { return "#" + std::to_string(rank); }

bool is_rank_token(const std::string& tok) {
  if (tok.size() < 2 || tok[0] != '#') return false;
  if (tok[1] == '0') return false;
  return std::all_of(tok.begin() + 1, tok.end(),
                     [](char c) { return c >= '0' && c <= '9'; });
}

std::vector<TranslationPair> build_training_pairs(const Corpus& c, const PairOptions& opts) {
  auto clusters = cluster_by_frame(c);
  std::vector<DelexUtterance> delexed(c.size());
  for (std::size_t i = 0; i < c.size(); ++i)
    delexed[i] = delexicalise(c.utterances[i]).delex;

  std::vector<TranslationPair> pairs;
  std::set<std::pair<std::vector<std::string>, std::vector<std::string>>> seen;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const auto& members = clusters.at(frame_of(c.utterances[i]));
    if (members.size() < 2) continue;
    std::vector<DelexUtterance> others;
    others.reserve(members.size() - 1);
    for (std::size_t j : members)
      if (j != i) others.push_back(delexed[j]);
    auto ranked = rank_alternatives(delexed[i], others);
    std::size_t keep = opts.filter_half ? (ranked.size() + 1) / 2 : ranked.size();
    for (std::size_t r = 0; r < keep; ++r) {
      TranslationPair p;
      p.source = delexed[i].tokens;
      p.source.push_back(rank_token(opts.constant_rank ? 1 : ranked[r].rank));
      p.target = ranked[r].target.tokens;
      if (seen.insert({p.source, p.target}).second) pairs.push_back(std::move(p));
    }
  }
  return pairs;
}

std::vector<std::size_t> augmentation_ranks(
    const SemanticFrame& frame,
    const std::map<SemanticFrame, std::vector<std::size_t>>& clusters) {
  auto it = clusters.find(frame);
  if (it == clusters.end()) return {};
  std::size_t n = std::max<std::size_t>(1, it->second.size() / 2);
  std::vector<std::size_t> ranks(n);
  for (std::size_t i = 0; i < n; ++i) ranks[i] = i + 1;
  return ranks;
}

std::string write_pairs(const std::vector<TranslationPair>& pairs) {
  std::string out;
  for (const auto& p : pairs) {
    for (std::size_t i = 0; i < p.source.size(); ++i) {
      if (i) out += ' ';
      out += p.source[i];
    }
    out += '\t';
    for (std::size_t i = 0; i < p.target.size(); ++i) {
      if (i) out += ' ';
      out += p.target[i];
    }
    out += '\n';
  }
  return out;
}

std::vector<TranslationPair> parse_pairs(const std::string& text) {
  std::vector<TranslationPair> pairs;
  std::istringstream in(text);
  std::string line;
  auto split = [](const std::string& s) {
    std::istringstream ss(s);
    std::vector<std::string> toks;
    std::string t;
    while (ss >> t) toks.push_back(std::move(t));
    return toks;
  };
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos)
      throw ParseError("pair line missing tab separator: " + line);
    TranslationPair p;
    p.source = split(line.substr(0, tab));
    p.target = split(line.substr(tab + 1));
    if (p.source.empty() || !is_rank_token(p.source.back()))
      throw ParseError("pair source must end with a rank token: " + line);
    pairs.push_back(std::move(p));
  }
  return pairs;
}

void save_pairs(const std::vector<TranslationPair>& pairs, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << write_pairs(pairs);
}

std::vector<TranslationPair> load_pairs(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_pairs(buf.str());
}

}  // namespace slotforge
