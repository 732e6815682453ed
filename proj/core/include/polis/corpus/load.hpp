#pragma once

#include <filesystem>

#include "polis/corpus/tokenizer.hpp"
#include "polis/corpus/types.hpp"

namespace polis::corpus {

/// Loads a corpus and validates it against the canonical schema.
///
/// `path` may be either
///   - a directory holding users.jsonl + texts.jsonl (the canonical layout
///     this pipeline itself writes), or
///   - a single combined JSONL file where every line carries one author's
///     contribution to one group: user fields plus either "body" or, for
///     ddo, a "rounds" array that is joined in round order with a blank
///     line to form the text body.
///
/// token_count is recomputed with the supplied tokenizer on load.
Corpus load_corpus(const std::filesystem::path& path, Source source, const Tokenizer& tokenizer);

CorpusManifest build_manifest(Source source, const std::vector<UserRecord>& users,
                              const std::vector<TextUnit>& texts);

/// Recomputes manifest counts from the tables and raises ValidationError on
/// any mismatch.
void verify_manifest(const Corpus& corpus);

/// Writes users.jsonl, texts.jsonl and manifest.json into `dir`.
void write_corpus(const std::filesystem::path& dir, const Corpus& corpus);

} // namespace polis::corpus
