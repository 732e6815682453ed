#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "polis/corpus/types.hpp"

namespace polis::synth {

/// Party marker tokens planted into synthetic texts; the mock backend
/// counts exactly these.
const std::vector<std::string>& rep_markers();
const std::vector<std::string>& dem_markers();

/// Civic vocabulary that dominates Politics texts and leaks into general
/// categories in proportion to their politics density.
const std::vector<std::string>& civic_vocabulary();

struct SynthConfig {
    std::size_t n_users = 2000; // half Republican, half Democratic
    std::uint64_t seed = 1;

    /// Category ladder with politics-marker density; higher density means
    /// more markers, more civic vocabulary, and more politically engaged
    /// participants.
    std::vector<std::pair<std::string, double>> categories = {
        {"Politics", 0.92}, {"Religion", 0.55},  {"Economics", 0.50}, {"Science", 0.42},
        {"Society", 0.36},  {"Health", 0.30},    {"News", 0.24},      {"Education", 0.18},
        {"Sports", 0.13},   {"Music", 0.09},     {"Movies", 0.06},    {"Cars", 0.04},
    };

    double politics_join_threshold = 0.45; // engagement above this joins Politics
    double plant_rate = 0.08;              // political leakage into general texts
    std::size_t topic_vocab_size = 60;
    std::size_t civic_draws = 8;
    std::size_t topic_draws = 20;
    int max_markers = 5;
};

struct SynthCorpus {
    corpus::Corpus corpus;
    std::set<std::string> planted_political_ids; // general texts with planted politics
    std::map<std::string, double> category_density;
};

/// Planted-marker corpus: every text's body carries topic tokens whose
/// tier tracks the marker intensity, civic tokens in proportion to the
/// category's density, and marker tokens of the author's true party (plus
/// occasional wrong-party noise). Deterministic for a given config.
SynthCorpus generate(const SynthConfig& config);

/// Small linearly separable corpus for the supervised-baseline checks:
/// party is fully determined by disjoint vocabulary.
corpus::Corpus generate_separable(std::size_t n_texts, std::uint64_t seed);

} // namespace polis::synth
