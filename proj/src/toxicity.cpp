#include "polarlex/toxicity.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <condition_variable>
#include <fstream>
#include <mutex>
#include <set>
#include <thread>
#include <unordered_map>

#include "httplib.h"
#include "json.hpp"
#include "polarlex/io.hpp"
#include "polarlex/tokenize.hpp"

namespace polarlex {

ToxicityLexicon toxicity_lexicon_from_json(const std::string& json_text) {
  nlohmann::json j = nlohmann::json::parse(json_text);
  if (!j.is_object()) throw DataError("toxicity lexicon must be a JSON object");
  ToxicityLexicon lex;
  for (auto& [term, weight] : j.items()) {
    double w = weight.get<double>();
    if (w < 0.0 || w > 1.0)
      throw DataError("toxicity lexicon weight out of [0,1] for term: " + term);
    std::string key = term;
    std::transform(key.begin(), key.end(), key.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    lex[key] = w;
  }
  return lex;
}

ToxicityScore score_lexicon(const std::string& tweet_id,
                            const std::string& text,
                            const ToxicityLexicon& lexicon) {
  if (lexicon.empty()) throw UsageError("toxicity lexicon is empty");
  ToxicityScore s;
  s.tweet_id = tweet_id;
  s.scorer = ScorerKind::Lexicon;
  auto tokens = tokenize(text);
  if (tokens.size() < 2) return s;  // not scorable
  double best = 0.0;
  for (const auto& tok : tokens) {
    auto it = lexicon.find(tok);
    if (it != lexicon.end() && it->second > best) best = it->second;
  }
  s.scorable = true;
  s.score = best;
  return s;
}

// ---------------------------------------------------------------------------

struct RemoteScorer::Impl {
  RemoteScorerConfig config;
  std::mutex mu;
  std::condition_variable cv;
  std::unordered_map<std::string, double> cache;  // key -> toxicity
  std::set<std::string> in_flight;
  std::ofstream sidecar;
  std::uint64_t network_calls = 0;
  std::uint64_t cache_hits = 0;

  explicit Impl(RemoteScorerConfig cfg) : config(std::move(cfg)) {
    if (!config.cache_path.empty()) {
      if (io::file_exists(config.cache_path)) {
        io::for_each_jsonl(config.cache_path, [&](const nlohmann::json& j) {
          if (!j.contains("key") || !j.contains("toxicity")) return false;
          cache[j["key"].get<std::string>()] = j["toxicity"].get<double>();
          return true;
        });
      }
      sidecar.open(config.cache_path, std::ios::app);
    }
  }

  // One network round trip with retries. Returns toxicity or an error string.
  std::pair<std::optional<double>, std::string> fetch(const std::string& text) {
    httplib::Client client(config.host, config.port);
    client.set_connection_timeout(0, config.timeout_ms * 1000);
    client.set_read_timeout(config.timeout_ms / 1000,
                            (config.timeout_ms % 1000) * 1000);
    nlohmann::json body;
    body["text"] = text;
    std::string payload = body.dump();
    std::string last_error;
    for (int attempt = 0; attempt < config.max_attempts; ++attempt) {
      if (attempt > 0)
        std::this_thread::sleep_for(std::chrono::milliseconds(
            config.backoff_base_ms * (1 << (attempt - 1))));
      auto res = client.Post(config.path, payload, "application/json");
      {
        std::lock_guard<std::mutex> lock(mu);
        ++network_calls;
      }
      if (!res) {
        last_error = "connection failed";
        continue;
      }
      if (res->status < 200 || res->status >= 300) {
        last_error = "http status " + std::to_string(res->status);
        continue;
      }
      nlohmann::json j = nlohmann::json::parse(res->body, nullptr, false);
      if (j.is_discarded() || !j.contains("toxicity") ||
          !j["toxicity"].is_number())
        throw DataError("scorer protocol error: unparseable response body");
      double x = j["toxicity"].get<double>();
      if (x < 0.0 || x > 1.0)
        throw DataError("scorer protocol error: toxicity " +
                        std::to_string(x) + " outside [0,1]");
      return {x, ""};
    }
    return {std::nullopt, last_error};
  }
};

RemoteScorer::RemoteScorer(RemoteScorerConfig config)
    : impl_(std::make_unique<Impl>(std::move(config))) {}

RemoteScorer::~RemoteScorer() = default;

ToxicityScore RemoteScorer::score(const std::string& tweet_id,
                                  const std::string& text) {
  ToxicityScore s;
  s.tweet_id = tweet_id;
  s.scorer = ScorerKind::Remote;
  std::string norm = normalize_text(text);
  if (tokenize(text).size() < 2) return s;  // length gate, no network
  std::string key = io::sha256_hex(norm);

  {
    std::unique_lock<std::mutex> lock(impl_->mu);
    for (;;) {
      auto it = impl_->cache.find(key);
      if (it != impl_->cache.end()) {
        ++impl_->cache_hits;
        s.scorable = true;
        s.score = it->second;
        return s;
      }
      if (!impl_->in_flight.count(key)) break;
      impl_->cv.wait(lock);  // another thread is fetching this text
    }
    impl_->in_flight.insert(key);
  }

  std::pair<std::optional<double>, std::string> result;
  try {
    result = impl_->fetch(text);
  } catch (...) {
    std::lock_guard<std::mutex> lock(impl_->mu);
    impl_->in_flight.erase(key);
    impl_->cv.notify_all();
    throw;
  }

  std::lock_guard<std::mutex> lock(impl_->mu);
  impl_->in_flight.erase(key);
  if (result.first) {
    impl_->cache[key] = *result.first;
    if (impl_->sidecar.is_open()) {
      nlohmann::json line;
      line["key"] = key;
      line["toxicity"] = *result.first;
      impl_->sidecar << line.dump() << '\n';
      impl_->sidecar.flush();
    }
    s.scorable = true;
    s.score = *result.first;
  } else {
    s.error = result.second;
  }
  impl_->cv.notify_all();
  return s;
}

std::vector<ToxicityScore> RemoteScorer::score_many(
    const std::vector<std::pair<std::string, std::string>>& id_texts) {
  std::vector<ToxicityScore> out(id_texts.size());
  const int workers =
      std::max(1, std::min<int>(impl_->config.max_in_flight,
                                static_cast<int>(id_texts.size())));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= id_texts.size()) return;
      out[i] = score(id_texts[i].first, id_texts[i].second);
    }
  };
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  return out;
}

std::uint64_t RemoteScorer::network_calls() const {
  std::lock_guard<std::mutex> lock(impl_->mu);
  return impl_->network_calls;
}

std::uint64_t RemoteScorer::cache_hits() const {
  std::lock_guard<std::mutex> lock(impl_->mu);
  return impl_->cache_hits;
}

// ---------------------------------------------------------------------------

ThresholdReport calibrate_threshold(
    const std::vector<std::pair<double, bool>>& validation,
    const CalibrationObjective& objective) {
  std::size_t positives = 0;
  for (auto& [score, label] : validation) positives += label ? 1 : 0;
  if (positives == 0 || positives == validation.size())
    throw DataError(
        "calibration needs at least one positive and one negative example");

  std::set<double> candidates = {0.0, 1.0};
  for (auto& [score, label] : validation) candidates.insert(score);

  auto evaluate = [&](double threshold) {
    std::uint64_t tp = 0, fp = 0;
    for (auto& [score, label] : validation) {
      if (score > threshold) (label ? tp : fp) += 1;
    }
    ThresholdReport r;
    r.threshold = threshold;
    r.precision = (tp + fp) == 0 ? 0.0
                                 : static_cast<double>(tp) /
                                       static_cast<double>(tp + fp);
    r.recall = static_cast<double>(tp) / static_cast<double>(positives);
    r.f1 = (r.precision + r.recall) == 0.0
               ? 0.0
               : 2.0 * r.precision * r.recall / (r.precision + r.recall);
    return r;
  };

  std::optional<ThresholdReport> best;
  for (double t : candidates) {
    ThresholdReport r = evaluate(t);
    switch (objective.kind) {
      case CalibrationObjective::Kind::MaxF1:
        if (!best || r.f1 > best->f1 ||
            (r.f1 == best->f1 && r.threshold > best->threshold))
          best = r;
        break;
      case CalibrationObjective::Kind::MaxPrecisionAtRecallFloor:
        if (r.recall < objective.recall_floor) break;
        if (!best || r.precision > best->precision ||
            (r.precision == best->precision && r.threshold > best->threshold))
          best = r;
        break;
    }
  }
  if (!best)
    throw DataError("no threshold satisfies the recall floor " +
                    std::to_string(objective.recall_floor));
  return *best;
}

}  // namespace polarlex
