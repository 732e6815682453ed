#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace polis::backend {

struct PromptTemplate {
    enum class Style { zero_shot, few_shot };

    std::string template_id;
    std::string version;
    std::string body; // must contain exactly one {text} placeholder
    Style style = Style::zero_shot;

    /// Throws ValidationError unless the body carries exactly one {text}
    /// placeholder and, for few_shot, at least one fully formatted example
    /// response (a parseable party/confidence JSON object).
    void validate() const;

    /// Reads a template file: JSON {"template_id","version","style","body"}.
    static PromptTemplate load(const std::filesystem::path& path);
};

std::string render_prompt(const PromptTemplate& tpl, std::string_view text);

/// Built-in defaults used when the operator supplies no template file.
PromptTemplate default_alignment_template();
PromptTemplate default_category_template();

} // namespace polis::backend
