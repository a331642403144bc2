#pragma once

#include <map>
#include <set>
#include <string>

#include "polarlex/party.hpp"

namespace polarlex {

// Built-in English stopword list; config-overridable.
const std::set<std::string>& default_stopwords();

// Small built-in offensive-term lexicon for the offline scorer;
// config-overridable. Weights in [0,1].
const std::map<std::string, double>& default_toxicity_lexicon();

}  // namespace polarlex
