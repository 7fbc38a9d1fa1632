#pragma once

#include "slotforge/corpus.hpp"
#include "slotforge/rng.hpp"

namespace slotforge {

struct SyntheticData {
  Corpus train;
  Corpus dev;
  Corpus test;
};

// Samples labeled utterances from a built-in template grammar. Train and
// test draw from partially disjoint template pools so the test set carries
// unseen phrasings. Deterministic per seed; dev is sampled from the train
// pool (max(30, n_train / 4) utterances).
SyntheticData make_synthetic(std::uint64_t seed, std::size_t n_train, std::size_t n_test);

std::size_t synth_template_count();
std::size_t synth_frame_count();
std::size_t synth_slot_type_count();

}  // namespace slotforge
