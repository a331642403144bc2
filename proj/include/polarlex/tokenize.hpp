#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace polarlex {

// Tweet tokenizer shared by the toxicity scorers, vocabulary construction
// and profile hashtag extraction. Lowercases, drops URLs and @-mentions,
// strips punctuation except '#' and '_', keeps hashtags intact.
std::vector<std::string> tokenize(std::string_view text);

// Lowercased '#'-prefixed tokens of a profile bio.
std::vector<std::string> extract_hashtags(std::string_view bio_text);

// Tokenizer output joined by single spaces; cache/idempotence key material.
std::string normalize_text(std::string_view text);

}  // namespace polarlex
