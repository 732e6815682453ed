#include "polis/backend/template.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "polis/backend/parse.hpp"
#include "polis/corpus/types.hpp"
#include "polis/util/errors.hpp"

namespace polis::backend {

namespace {

constexpr std::string_view kPlaceholder = "{text}";

std::size_t count_placeholders(std::string_view body) {
    std::size_t n = 0;
    for (std::size_t pos = body.find(kPlaceholder); pos != std::string_view::npos;
         pos = body.find(kPlaceholder, pos + kPlaceholder.size())) {
        ++n;
    }
    return n;
}

} // namespace

void PromptTemplate::validate() const {
    std::size_t n = count_placeholders(body);
    if (n != 1) {
        throw ValidationError("template \"" + template_id + "\" must contain exactly one " +
                              std::string(kPlaceholder) + " placeholder (found " +
                              std::to_string(n) + ")");
    }
    if (style == Style::few_shot) {
        // Few-shot templates must show the model a complete example answer.
        bool found = false;
        for (std::size_t pos = body.find('{'); pos != std::string::npos;
             pos = body.find('{', pos + 1)) {
            std::size_t close = body.find('}', pos);
            if (close == std::string::npos) {
                break;
            }
            if (is_prediction(parse_prediction(body.substr(pos, close - pos + 1)))) {
                found = true;
                break;
            }
        }
        if (!found) {
            throw ValidationError("few_shot template \"" + template_id +
                                  "\" embeds no fully formatted example response");
        }
    }
}

PromptTemplate PromptTemplate::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw MissingArtifactError("cannot open template file " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    auto doc = nlohmann::json::parse(buf.str(), nullptr, false);
    if (doc.is_discarded() || !doc.is_object()) {
        throw ValidationError("template file " + path.string() + " is not a JSON object");
    }
    PromptTemplate tpl;
    tpl.template_id = doc.value("template_id", path.stem().string());
    tpl.version = doc.value("version", "1");
    tpl.body = doc.value("body", "");
    std::string style = doc.value("style", "zero_shot");
    if (style == "zero_shot") {
        tpl.style = Style::zero_shot;
    } else if (style == "few_shot") {
        tpl.style = Style::few_shot;
    } else {
        throw ValidationError("template file " + path.string() + ": unknown style \"" +
                              style + "\"");
    }
    tpl.validate();
    return tpl;
}

std::string render_prompt(const PromptTemplate& tpl, std::string_view text) {
    if (text.empty()) {
        throw ValidationError("render_prompt: text is empty");
    }
    std::size_t pos = tpl.body.find(kPlaceholder);
    if (pos == std::string::npos) {
        throw ValidationError("template \"" + tpl.template_id + "\" has no placeholder");
    }
    std::string out;
    out.reserve(tpl.body.size() + text.size());
    out.append(tpl.body, 0, pos);
    out.append(text);
    out.append(tpl.body, pos + kPlaceholder.size(), std::string::npos);
    return out;
}

PromptTemplate default_alignment_template() {
    PromptTemplate tpl;
    tpl.template_id = "alignment-default";
    tpl.version = "1";
    tpl.style = PromptTemplate::Style::zero_shot;
    tpl.body =
        "You will read text a user posted in an online forum. Based only on this text, "
        "decide whether the author's political views align more closely with the "
        "Republican Party or the Democratic Party.\n"
        "Respond only with a JSON object with two fields: \"party\", either "
        "\"Republican\" or \"Democratic\", and \"confidence\", an integer from 1 "
        "(least confident) to 5 (most confident).\n"
        "\n"
        "Text:\n"
        "{text}\n";
    return tpl;
}

PromptTemplate default_category_template() {
    std::string names;
    for (const auto& name : corpus::Category::names()) {
        if (!names.empty()) {
            names += ", ";
        }
        names += name;
    }
    PromptTemplate tpl;
    tpl.template_id = "category-default";
    tpl.version = "1";
    tpl.style = PromptTemplate::Style::zero_shot;
    tpl.body = "Assign the online community introduced below to exactly one of these topic "
               "categories: " +
               names +
               ".\n"
               "Respond only with a JSON object {\"category\": \"<name>\"}.\n"
               "\n"
               "Description:\n"
               "{text}\n";
    return tpl;
}

} // namespace polis::backend
