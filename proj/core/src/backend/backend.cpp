#include "polis/backend/backend.hpp"

#include <cstdlib>

#include <httplib.h>
#include <json.hpp>

#include "polis/util/errors.hpp"
#include "polis/util/hash.hpp"
#include "polis/util/text.hpp"

namespace polis::backend {

using corpus::Category;
using corpus::Party;
using nlohmann::json;

MockInferenceBackend::MockInferenceBackend(std::vector<std::string> rep_markers,
                                           std::vector<std::string> dem_markers,
                                           std::string model_id)
    : rep_(rep_markers.begin(), rep_markers.end()),
      dem_(dem_markers.begin(), dem_markers.end()),
      model_id_(std::move(model_id)) {}

CompletionResult MockInferenceBackend::complete(const std::string& prompt) {
    int rep = 0;
    int dem = 0;
    for (const auto& token : util::word_tokens(prompt)) {
        if (rep_.count(token)) {
            ++rep;
        } else if (dem_.count(token)) {
            ++dem;
        }
    }
    Party party;
    int confidence;
    if (rep == dem) {
        party = (util::sha256_hex(prompt)[0] % 2 == 0) ? Party::Republican : Party::Democratic;
        confidence = 1;
    } else {
        party = rep > dem ? Party::Republican : Party::Democratic;
        confidence = std::min(5, 1 + std::abs(rep - dem));
    }
    json reply = {{"party", corpus::to_string(party)}, {"confidence", confidence}};
    return CompletionResult::success(reply.dump());
}

MockCategorizerBackend::MockCategorizerBackend(
    std::unordered_map<std::string, Category> keyword_table, std::string model_id)
    : keywords_(std::move(keyword_table)), model_id_(std::move(model_id)) {}

CompletionResult MockCategorizerBackend::complete(const std::string& prompt) {
    auto tokens = util::word_tokens(prompt);
    std::size_t start = 0;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (tokens[i] == "description") {
            start = i + 1;
            break;
        }
    }
    Category picked = Category::miscellaneous();
    for (std::size_t i = start; i < tokens.size(); ++i) {
        auto it = keywords_.find(tokens[i]);
        if (it != keywords_.end()) {
            picked = it->second;
            break;
        }
    }
    json reply = {{"category", picked.name()}};
    return CompletionResult::success(reply.dump());
}

std::unordered_map<std::string, Category> MockCategorizerBackend::default_keywords() {
    auto cat = [](const char* name) { return *Category::parse(name); };
    return {
        {"politics", cat("Politics")},   {"election", cat("Politics")},
        {"policy", cat("Politics")},     {"church", cat("Religion")},
        {"faith", cat("Religion")},      {"tax", cat("Economics")},
        {"finance", cat("Economics")},   {"economy", cat("Economics")},
        {"stocks", cat("Economics")},    {"climate", cat("Science")},
        {"science", cat("Science")},     {"physics", cat("Science")},
        {"nutrition", cat("Health")},    {"fitness", cat("Health")},
        {"medicine", cat("Health")},     {"football", cat("Sports")},
        {"basketball", cat("Sports")},   {"league", cat("Sports")},
        {"guitar", cat("Music")},        {"album", cat("Music")},
        {"band", cat("Music")},          {"watch", cat("Fashion")},
        {"watches", cat("Fashion")},     {"sneakers", cat("Fashion")},
        {"makeup", cat("Fashion")},      {"film", cat("Movies")},
        {"movie", cat("Movies")},        {"cinema", cat("Movies")},
        {"sitcom", cat("TV")},           {"series", cat("TV")},
        {"gaming", cat("Games")},        {"videogame", cat("Games")},
        {"painting", cat("Arts")},       {"sculpture", cat("Arts")},
        {"car", cat("Cars")},            {"cars", cat("Cars")},
        {"mechanic", cat("Cars")},       {"teacher", cat("Education")},
        {"school", cat("Education")},    {"celebrity", cat("Entertainment")},
        {"memes", cat("Funny")},         {"jokes", cat("Funny")},
        {"headlines", cat("News")},      {"journalism", cat("News")},
        {"parenting", cat("People")},    {"philosophy", cat("Philosophy")},
        {"ethics", cat("Philosophy")},   {"travel", cat("Places-Travel")},
        {"tourism", cat("Places-Travel")}, {"software", cat("Technology")},
        {"gadgets", cat("Technology")},  {"programming", cat("Technology")},
        {"society", cat("Society")},     {"community", cat("Society")},
    };
}

namespace {

class HttpInferenceBackend : public InferenceBackend {
public:
    HttpInferenceBackend(const std::string& endpoint, std::string model_id,
                         const std::string& api_key_env, double temperature)
        : model_id_(std::move(model_id)), temperature_(temperature) {
        auto scheme_end = endpoint.find("://");
        if (scheme_end == std::string::npos) {
            throw ValidationError("backend endpoint must include a scheme: " + endpoint);
        }
        auto path_start = endpoint.find('/', scheme_end + 3);
        if (path_start == std::string::npos) {
            host_ = endpoint;
            path_ = "/v1/chat/completions";
        } else {
            host_ = endpoint.substr(0, path_start);
            path_ = endpoint.substr(path_start);
        }
        if (!api_key_env.empty()) {
            const char* key = std::getenv(api_key_env.c_str());
            if (key) {
                api_key_ = key;
            }
        }
    }

    CompletionResult complete(const std::string& prompt) override {
        httplib::Client client(host_);
        client.set_connection_timeout(10);
        client.set_read_timeout(120);
        httplib::Headers headers;
        if (!api_key_.empty()) {
            headers.emplace("Authorization", "Bearer " + api_key_);
        }
        json body = {{"model", model_id_},
                     {"messages", json::array({{{"role", "user"}, {"content", prompt}}})},
                     {"temperature", temperature_}};
        auto res = client.Post(path_, headers, body.dump(), "application/json");
        if (!res) {
            return CompletionResult::transient_failure("connection failure to " + host_);
        }
        if (res->status == 401 || res->status == 403) {
            return CompletionResult::permanent_failure("authentication rejected (HTTP " +
                                                       std::to_string(res->status) + ")");
        }
        if (res->status == 429 || res->status >= 500) {
            return CompletionResult::transient_failure("HTTP " + std::to_string(res->status));
        }
        if (res->status != 200) {
            return CompletionResult::permanent_failure("HTTP " + std::to_string(res->status) +
                                                       ": " + res->body);
        }
        auto doc = json::parse(res->body, nullptr, false);
        if (doc.is_discarded()) {
            return CompletionResult::transient_failure("non-JSON completion payload");
        }
        try {
            return CompletionResult::success(
                doc.at("choices").at(0).at("message").at("content").get<std::string>());
        } catch (const json::exception&) {
            return CompletionResult::transient_failure("unexpected completion payload shape");
        }
    }

    std::string model_id() const override { return model_id_; }

private:
    std::string host_;
    std::string path_;
    std::string model_id_;
    std::string api_key_;
    double temperature_;
};

} // namespace

std::unique_ptr<InferenceBackend> make_http_backend(const std::string& endpoint,
                                                    const std::string& model_id,
                                                    const std::string& api_key_env,
                                                    double temperature) {
    return std::make_unique<HttpInferenceBackend>(endpoint, model_id, api_key_env, temperature);
}

} // namespace polis::backend
