#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "polarlex/types.hpp"

namespace polarlex {

enum class ScorerKind { Lexicon, Remote };

struct ToxicityScore {
  std::string tweet_id;
  std::optional<double> score;  // present iff scorable
  ScorerKind scorer = ScorerKind::Lexicon;
  bool scorable = false;
  std::string error;  // failure cause when unscorable past the length gate
};

// Lowercased term -> weight in [0,1].
using ToxicityLexicon = std::map<std::string, double>;

ToxicityLexicon toxicity_lexicon_from_json(const std::string& json_text);

// Offline scorer: max weight over matched lexicon terms, 0 when none match.
// Texts shorter than two tokens after stripping are not scorable.
ToxicityScore score_lexicon(const std::string& tweet_id,
                            const std::string& text,
                            const ToxicityLexicon& lexicon);

struct RemoteScorerConfig {
  std::string host = "127.0.0.1";
  int port = 0;
  std::string path = "/score";
  int timeout_ms = 5000;
  int max_attempts = 3;
  int backoff_base_ms = 100;  // doubles per retry
  int max_in_flight = 4;
  std::string cache_path;  // JSONL sidecar; empty disables persistence
};

// Client for the external scoring contract: POST {"text": ...} ->
// {"toxicity": x}. Responses are cached by SHA-256 of the normalized text;
// identical texts trigger a single network call per process and re-runs can
// replay entirely from the sidecar.
class RemoteScorer {
 public:
  explicit RemoteScorer(RemoteScorerConfig config);
  ~RemoteScorer();

  ToxicityScore score(const std::string& tweet_id, const std::string& text);
  std::vector<ToxicityScore> score_many(
      const std::vector<std::pair<std::string, std::string>>& id_texts);

  std::uint64_t network_calls() const;
  std::uint64_t cache_hits() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

struct ThresholdReport {
  double threshold = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

struct CalibrationObjective {
  enum class Kind { MaxF1, MaxPrecisionAtRecallFloor };
  Kind kind = Kind::MaxF1;
  double recall_floor = 0.0;

  static CalibrationObjective max_f1() { return {}; }
  static CalibrationObjective precision_at_recall(double floor) {
    return {Kind::MaxPrecisionAtRecallFloor, floor};
  }
};

// Sweeps every distinct score plus 0 and 1 as candidate thresholds, with
// score > threshold predicting adversarial. Ties prefer the larger
// threshold. The validation set needs at least one positive and one
// negative example.
ThresholdReport calibrate_threshold(
    const std::vector<std::pair<double, bool>>& validation,
    const CalibrationObjective& objective);

}  // namespace polarlex
