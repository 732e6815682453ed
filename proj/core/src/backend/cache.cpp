#include "polis/backend/cache.hpp"

#include <chrono>
#include <ctime>

#include "polis/util/hash.hpp"
#include "polis/util/jsonl.hpp"

namespace polis::backend {

using util::json;

namespace {

std::string now_iso8601() {
    auto now = std::chrono::system_clock::now();
    std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

} // namespace

PredictionCache::PredictionCache(std::filesystem::path file) : file_(std::move(file)) {
    if (!std::filesystem::exists(file_)) {
        return;
    }
    util::read_jsonl(file_, [&](std::size_t, const json& line) {
        if (!line.contains("key") || !line["key"].is_string()) {
            return;
        }
        Entry e;
        e.model_id = line.value("model", "");
        e.template_version = line.value("template_version", "");
        if (line.contains("party") && line["party"].is_string()) {
            e.party = corpus::parse_party(line["party"].get<std::string>());
        }
        if (line.contains("confidence") && line["confidence"].is_number_integer()) {
            e.confidence = line["confidence"].get<int>();
        }
        e.raw = line.value("raw", "");
        entries_[line["key"].get<std::string>()] = std::move(e);
    });
}

std::string PredictionCache::make_key(const std::string& model_id,
                                      const std::string& template_version,
                                      std::string_view body) {
    std::string material = model_id;
    material.push_back('\x1f');
    material += template_version;
    material.push_back('\x1f');
    material.append(body);
    return util::sha256_hex(material);
}

ParseOutcome PredictionCache::to_outcome(const Entry& e) const {
    if (e.party && e.confidence) {
        Prediction p;
        p.party = *e.party;
        p.confidence = *e.confidence;
        p.raw = e.raw;
        p.model_id = e.model_id;
        p.template_version = e.template_version;
        return p;
    }
    // Malformed entry: re-derive the reason from the stored raw response.
    return parse_prediction(e.raw);
}

std::optional<ParseOutcome> PredictionCache::lookup(const std::string& key) const {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = entries_.find(key);
    if (it == entries_.end()) {
        return std::nullopt;
    }
    return to_outcome(it->second);
}

void PredictionCache::insert(const std::string& key, const std::string& model_id,
                             const std::string& template_version, const ParseOutcome& outcome) {
    Entry e;
    e.model_id = model_id;
    e.template_version = template_version;
    if (const auto* p = std::get_if<Prediction>(&outcome)) {
        e.party = p->party;
        e.confidence = p->confidence;
        e.raw = p->raw;
    } else {
        e.raw = std::get<MalformedResponse>(outcome).raw;
    }

    json line = {{"key", key},
                 {"model", model_id},
                 {"template_version", template_version},
                 {"party", e.party ? json(corpus::to_string(*e.party)) : json(nullptr)},
                 {"confidence", e.confidence ? json(*e.confidence) : json(nullptr)},
                 {"raw", e.raw},
                 {"ts", now_iso8601()}};

    std::lock_guard<std::mutex> lock(mu_);
    entries_[key] = std::move(e);
    if (!file_.empty()) {
        util::append_jsonl(file_, line);
    }
}

std::size_t PredictionCache::size() const {
    std::lock_guard<std::mutex> lock(mu_);
    return entries_.size();
}

} // namespace polis::backend
