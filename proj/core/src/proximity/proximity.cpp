#include "polis/proximity/proximity.hpp"

#include <algorithm>
#include <cmath>

#include "polis/metrics/metrics.hpp"
#include "polis/util/errors.hpp"

namespace polis::proximity {

using backend::EmbeddingVector;

std::map<std::string, CategoryProfile>
build_profiles(const std::vector<corpus::TextUnit>& texts,
               const std::map<std::string, std::string>& titles,
               backend::EmbeddingProvider& embedder, std::vector<std::string>* warnings) {
    struct Partial {
        corpus::Category category = corpus::Category::miscellaneous();
        std::set<std::string> users;
        std::vector<EmbeddingVector> content;
        std::set<std::string> groups;
    };
    std::map<std::string, Partial> partials;
    for (const auto& t : texts) {
        auto& p = partials[t.category.name()];
        p.category = t.category;
        p.users.insert(t.user_id);
        p.content.push_back(embedder.embed(t.body));
        p.groups.insert(t.group_key);
    }

    std::map<std::string, CategoryProfile> profiles;
    for (auto& [name, partial] : partials) {
        CategoryProfile profile;
        profile.category = partial.category;
        profile.user_set = std::move(partial.users);
        profile.n_texts = partial.content.size();
        profile.mean_content_embedding = backend::mean_embedding(partial.content);

        std::vector<EmbeddingVector> title_vectors;
        for (const auto& group : partial.groups) {
            auto it = titles.find(group);
            if (it == titles.end() || it->second.empty()) {
                if (warnings) {
                    warnings->push_back("no title for group \"" + group + "\" in category " +
                                        name);
                }
                continue;
            }
            title_vectors.push_back(embedder.embed(it->second));
        }
        profile.n_titles = title_vectors.size();
        profile.mean_title_embedding =
            title_vectors.empty()
                ? backend::make_embedding(std::vector<double>(embedder.dim(), 0.0))
                : backend::mean_embedding(title_vectors);
        profiles.emplace(name, std::move(profile));
    }
    return profiles;
}

double embedding_similarity(const CategoryProfile& a, const CategoryProfile& b,
                            SimilarityKind kind) {
    const EmbeddingVector& va =
        kind == SimilarityKind::content ? a.mean_content_embedding : a.mean_title_embedding;
    const EmbeddingVector& vb =
        kind == SimilarityKind::content ? b.mean_content_embedding : b.mean_title_embedding;
    return backend::cosine(va, vb);
}

double user_jaccard(const CategoryProfile& a, const CategoryProfile& b) {
    if (a.user_set.empty() && b.user_set.empty()) {
        return 0.0;
    }
    std::size_t inter = 0;
    for (const auto& u : a.user_set) {
        if (b.user_set.count(u)) {
            ++inter;
        }
    }
    std::size_t uni = a.user_set.size() + b.user_set.size() - inter;
    return static_cast<double>(inter) / static_cast<double>(uni);
}

double user_npmi(const CategoryProfile& a, const CategoryProfile& b,
                 const std::set<std::string>& universe) {
    if (universe.empty()) {
        throw ValidationError("user_npmi: empty universe");
    }
    for (const auto& u : a.user_set) {
        if (!universe.count(u)) {
            throw ValidationError("user_npmi: universe does not cover category " +
                                  a.category.name());
        }
    }
    for (const auto& u : b.user_set) {
        if (!universe.count(u)) {
            throw ValidationError("user_npmi: universe does not cover category " +
                                  b.category.name());
        }
    }
    double n = static_cast<double>(universe.size());
    double pa = static_cast<double>(a.user_set.size()) / n;
    double pb = static_cast<double>(b.user_set.size()) / n;
    if (pa == 0.0 || pb == 0.0) {
        throw ValidationError("user_npmi: PMI undefined for an empty category");
    }
    std::size_t inter = 0;
    for (const auto& u : a.user_set) {
        if (b.user_set.count(u)) {
            ++inter;
        }
    }
    double pab = static_cast<double>(inter) / n;
    if (pab == 0.0) {
        return -1.0; // events never co-occur
    }
    if (pab == 1.0) {
        return 1.0; // perfect co-occurrence over the whole universe
    }
    double pmi = std::log(pab / (pa * pb));
    return -pmi / std::log(pab);
}

ProximityReport proximity_report(const std::map<std::string, CategoryProfile>& profiles,
                                 const std::map<std::string, double>& f1_by_category) {
    auto politics_it = profiles.find("Politics");
    if (politics_it == profiles.end()) {
        throw ValidationError("proximity_report: no Politics profile");
    }
    const CategoryProfile& politics = politics_it->second;

    std::set<std::string> universe;
    for (const auto& [name, profile] : profiles) {
        universe.insert(profile.user_set.begin(), profile.user_set.end());
    }

    ProximityReport report;
    for (const auto& [name, profile] : profiles) {
        if (name == "Politics") {
            continue;
        }
        ProximityRow row;
        row.category = name;
        try {
            row.sim_content = embedding_similarity(profile, politics, SimilarityKind::content);
        } catch (const ValidationError&) {
            row.sim_content = std::nullopt;
        }
        try {
            row.sim_title = embedding_similarity(profile, politics, SimilarityKind::title);
        } catch (const ValidationError&) {
            row.sim_title = std::nullopt;
        }
        row.jaccard = user_jaccard(profile, politics);
        row.npmi = user_npmi(profile, politics, universe);
        auto f1 = f1_by_category.find(name);
        if (f1 != f1_by_category.end()) {
            row.f1 = f1->second;
        }
        row.n_texts = profile.n_texts;
        report.rows.push_back(std::move(row));
    }

    auto correlate = [&](const std::function<std::optional<double>(const ProximityRow&)>& get) {
        CorrelationSummary summary;
        std::vector<double> xs, ys;
        for (const auto& row : report.rows) {
            auto x = get(row);
            if (x && row.f1) {
                xs.push_back(*x);
                ys.push_back(*row.f1);
            }
        }
        if (xs.size() < 3) {
            summary.note = "fewer than 3 categories with both similarity and f1";
            return summary;
        }
        try {
            auto [r, p] = metrics::pearson_r(xs, ys);
            summary.valid = true;
            summary.r = r;
            summary.p = p;
        } catch (const ValidationError& e) {
            summary.note = e.what();
        }
        return summary;
    };
    report.content = correlate([](const ProximityRow& r) { return r.sim_content; });
    report.title = correlate([](const ProximityRow& r) { return r.sim_title; });
    report.jaccard = correlate([](const ProximityRow& r) { return std::optional<double>(r.jaccard); });
    report.npmi = correlate([](const ProximityRow& r) { return std::optional<double>(r.npmi); });
    return report;
}

} // namespace polis::proximity
