#include "polis/synth/generator.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <random>

#include "polis/corpus/load.hpp"
#include "polis/corpus/tokenizer.hpp"
#include "polis/util/errors.hpp"
#include "polis/util/hash.hpp"

namespace polis::synth {

using corpus::Category;
using corpus::Party;

const std::vector<std::string>& rep_markers() {
    static const std::vector<std::string> kMarkers = {
        "tariffhawk", "redwave",  "gunrally",  "borderfence",
        "taxslash",   "heartland", "oilpatch", "faithcaucus"};
    return kMarkers;
}

const std::vector<std::string>& dem_markers() {
    static const std::vector<std::string> kMarkers = {
        "greendeal",    "bluewave",  "unionhall",   "medicareall",
        "climatemarch", "evcharger", "studentdebt", "prochoice"};
    return kMarkers;
}

const std::vector<std::string>& civic_vocabulary() {
    static const std::vector<std::string> kCivic = {
        "ballot",       "senate",      "congress",    "filibuster",  "governor",
        "legislature",  "caucus",      "referendum",  "statute",     "amendment",
        "lobbying",     "electorate",  "incumbent",   "primaries",   "redistricting",
        "subsidy",      "regulation",  "deficit",     "treaty",      "judiciary",
        "veto",         "chamber",     "delegate",    "precinct",    "turnout",
        "mandate",      "policymaker", "reformbill",  "partisan",    "campaign",
        "coalition",    "oversight",   "hearings",    "commission",  "constituent",
        "bipartisan",   "legislation", "ordinance",   "municipal",   "federal"};
    return kCivic;
}

namespace {

const std::vector<std::string>& filler_words() {
    static const std::vector<std::string> kFiller = {"the", "and", "of", "to", "in", "is"};
    return kFiller;
}

std::string topic_token(const std::string& category, std::size_t tier) {
    std::string stem;
    for (char c : category) {
        if (std::isalnum(static_cast<unsigned char>(c))) {
            stem.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
        }
    }
    return stem + (tier < 10 ? "0" : "") + std::to_string(tier);
}

double clamp01(double x) {
    return std::min(0.95, std::max(0.02, x));
}

struct TextPlan {
    int markers_true = 0;
    int markers_wrong = 0;
    std::size_t civic = 0;
    std::size_t topic = 0;
    bool planted = false;
};

} // namespace

SynthCorpus generate(const SynthConfig& config) {
    if (config.n_users < 2 || config.n_users % 2 != 0) {
        throw ValidationError("synth: n_users must be even and >= 2");
    }
    SynthCorpus out;
    out.corpus.manifest.source = corpus::Source::ddo;
    for (const auto& [name, density] : config.categories) {
        if (!Category::parse(name)) {
            throw ValidationError("synth: unknown category " + name);
        }
        out.category_density[name] = density;
    }

    std::vector<corpus::UserRecord>& users = out.corpus.users;
    users.reserve(config.n_users);
    std::vector<double> engagement(config.n_users);
    for (std::size_t i = 0; i < config.n_users; ++i) {
        corpus::UserRecord u;
        u.user_id = "u" + std::to_string(1000000 + i).substr(1);
        u.party = i < config.n_users / 2 ? Party::Republican : Party::Democratic;
        u.source = corpus::Source::ddo;
        users.push_back(std::move(u));
        std::mt19937_64 rng(util::derive_seed(config.seed, "engage/" + users.back().user_id));
        engagement[i] = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    }

    corpus::WhitespaceTokenizer tokenizer;
    std::size_t debate_counter = 0;

    for (std::size_t i = 0; i < config.n_users; ++i) {
        const auto& user = users[i];
        double e = engagement[i];
        std::mt19937_64 rng(util::derive_seed(config.seed, "texts/" + user.user_id));
        std::uniform_real_distribution<double> unit(0.0, 1.0);

        for (const auto& [cat_name, density] : config.categories) {
            bool is_politics = cat_name == "Politics";
            bool joins = is_politics ? e > config.politics_join_threshold
                                     : unit(rng) < 0.18 + 0.62 * density * e;
            if (!joins) {
                continue;
            }
            std::size_t n_texts = 1 + (unit(rng) < 0.5 ? 1 : 0);
            for (std::size_t t = 0; t < n_texts; ++t) {
                TextPlan plan;
                double p_marker = clamp01(density * (0.25 + 0.75 * e));
                std::binomial_distribution<int> marker_draw(config.max_markers, p_marker);
                plan.markers_true = marker_draw(rng);
                plan.planted = !is_politics && unit(rng) < config.plant_rate;
                if (plan.planted) {
                    plan.markers_true += 2;
                    plan.civic = std::binomial_distribution<int>(
                        static_cast<int>(config.civic_draws), 0.70)(rng);
                    plan.topic = 6;
                } else if (is_politics) {
                    plan.civic = std::binomial_distribution<int>(
                        static_cast<int>(config.civic_draws), 0.75)(rng);
                    plan.topic = 10;
                } else {
                    plan.civic = std::binomial_distribution<int>(
                        static_cast<int>(config.civic_draws),
                        std::min(0.9, 0.45 * density * e))(rng);
                    plan.topic = config.topic_draws;
                }
                if (plan.markers_true >= 2 && unit(rng) < 0.15) {
                    plan.markers_wrong = 1;
                } else if (unit(rng) < 0.06) {
                    plan.markers_wrong = 1;
                }

                // Topic tokens are tiered: texts with more markers draw
                // from higher tiers, which is what gives word-level
                // confidence its gradient.
                double mu = std::min(plan.markers_true, config.max_markers) /
                            static_cast<double>(config.max_markers);
                std::normal_distribution<double> tier_draw(
                    mu * static_cast<double>(config.topic_vocab_size - 1), 12.0);
                std::vector<std::string> tokens;
                for (std::size_t j = 0; j < plan.topic; ++j) {
                    double raw = tier_draw(rng);
                    auto tier = static_cast<std::size_t>(std::min(
                        static_cast<double>(config.topic_vocab_size - 1), std::max(0.0, raw)));
                    tokens.push_back(topic_token(cat_name, tier));
                }
                const auto& civic = civic_vocabulary();
                for (std::size_t j = 0; j < plan.civic; ++j) {
                    tokens.push_back(civic[rng() % civic.size()]);
                }
                const auto& own =
                    user.party == Party::Republican ? rep_markers() : dem_markers();
                const auto& other =
                    user.party == Party::Republican ? dem_markers() : rep_markers();
                for (int j = 0; j < plan.markers_true; ++j) {
                    tokens.push_back(own[rng() % own.size()]);
                }
                for (int j = 0; j < plan.markers_wrong; ++j) {
                    tokens.push_back(other[rng() % other.size()]);
                }
                const auto& filler = filler_words();
                for (int j = 0; j < 6; ++j) {
                    tokens.push_back(filler[rng() % filler.size()]);
                }
                std::shuffle(tokens.begin(), tokens.end(), rng);

                corpus::TextUnit unit_out;
                unit_out.user_id = user.user_id;
                unit_out.category = *Category::parse(cat_name);
                unit_out.group_key = "d" + std::to_string(debate_counter++);
                unit_out.text_id = unit_out.group_key + "/" + user.user_id;
                std::string body;
                for (const auto& token : tokens) {
                    if (!body.empty()) {
                        body.push_back(' ');
                    }
                    body += token;
                }
                unit_out.body = std::move(body);
                unit_out.token_count = tokenizer.count(unit_out.body);
                if (plan.planted) {
                    out.planted_political_ids.insert(unit_out.text_id);
                }
                out.corpus.texts.push_back(std::move(unit_out));
            }
        }
    }
    out.corpus.manifest =
        corpus::build_manifest(corpus::Source::ddo, out.corpus.users, out.corpus.texts);
    return out;
}

corpus::Corpus generate_separable(std::size_t n_texts, std::uint64_t seed) {
    corpus::Corpus out;
    out.manifest.source = corpus::Source::ddo;
    corpus::WhitespaceTokenizer tokenizer;
    std::mt19937_64 rng(util::derive_seed(seed, "separable"));
    for (std::size_t i = 0; i < n_texts; ++i) {
        Party party = i % 2 == 0 ? Party::Republican : Party::Democratic;
        corpus::UserRecord user;
        user.user_id = "s" + std::to_string(i);
        user.party = party;
        user.source = corpus::Source::ddo;
        out.users.push_back(user);

        corpus::TextUnit text;
        text.user_id = user.user_id;
        text.category = *Category::parse("Society");
        text.group_key = "sd" + std::to_string(i);
        text.text_id = text.group_key + "/" + user.user_id;
        std::string stem = party == Party::Republican ? "redword" : "blueword";
        std::string body;
        for (int j = 0; j < 8; ++j) {
            body += stem + std::to_string(rng() % 20) + " ";
        }
        for (int j = 0; j < 7; ++j) {
            body += "common" + std::to_string(rng() % 20) + " ";
        }
        body.pop_back();
        text.body = std::move(body);
        text.token_count = tokenizer.count(text.body);
        out.texts.push_back(std::move(text));
    }
    out.manifest = corpus::build_manifest(corpus::Source::ddo, out.users, out.texts);
    return out;
}

} // namespace polis::synth
