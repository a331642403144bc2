#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <atomic>
#include <thread>

#include "doctest.h"
#include "httplib.h"
#include "json.hpp"
#include "polarlex/io.hpp"
#include "polarlex/rng.hpp"
#include "polarlex/toxicity.hpp"
#include "test_support.hpp"

using namespace polarlex;
using testsup::TempDir;

TEST_CASE("sha256 known vectors") {
  CHECK(io::sha256_hex("") ==
        "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(io::sha256_hex("abc") ==
        "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  CHECK(io::sha256_hex(
            "abcdbcdecdefdefgefghfghighijhijkijkljklmklmnlmnomnopnopq") ==
        "248d6a61d20638b8e5c026930c3e6039a33ce45964ff2167f6ecedd419db06c1");
  // 56..64-byte messages exercise the two-block padding path.
  CHECK(io::sha256_hex(std::string(64, 'a')) ==
        "ffe054fe7ae0cb6dc65c3af9b61d5209f439851db43d0ba5997337df154668eb");
}

TEST_CASE("lexicon scorer applies the max rule") {
  ToxicityLexicon lex = {{"awful", 0.9}, {"meh", 0.4}};
  auto s = score_lexicon("t1", "this is awful and meh", lex);
  REQUIRE(s.scorable);
  CHECK(*s.score == 0.9);
  CHECK(s.scorer == ScorerKind::Lexicon);
}

TEST_CASE("lexicon scorer gives 0 without matches") {
  ToxicityLexicon lex = {{"awful", 0.9}};
  auto s = score_lexicon("t1", "perfectly nice words", lex);
  REQUIRE(s.scorable);
  CHECK(*s.score == 0.0);
}

TEST_CASE("single-token text is not scorable") {
  ToxicityLexicon lex = {{"awful", 0.9}};
  auto s = score_lexicon("t1", "awful", lex);
  CHECK_FALSE(s.scorable);
  CHECK_FALSE(s.score.has_value());
  // URLs and mentions are stripped before the gate.
  auto s2 = score_lexicon("t2", "@you https://t.co/x awful", lex);
  CHECK_FALSE(s2.scorable);
}

TEST_CASE("lexicon scoring is case-insensitive and deterministic") {
  ToxicityLexicon lex = toxicity_lexicon_from_json("{\"AWFUL\": 0.8}");
  auto a = score_lexicon("t", "AWFUL stuff", lex);
  auto b = score_lexicon("t", "awful STUFF", lex);
  REQUIRE(a.scorable);
  CHECK(*a.score == 0.8);
  CHECK(*a.score == *b.score);
}

TEST_CASE("empty lexicon is rejected") {
  CHECK_THROWS_AS(score_lexicon("t", "some text", {}), UsageError);
}

namespace {

struct StubServer {
  httplib::Server server;
  int port = 0;
  std::thread thread;
  std::atomic<int> hits{0};
  std::function<void(const httplib::Request&, httplib::Response&)> handler;

  StubServer() {
    server.Post("/score", [this](const httplib::Request& req,
                                 httplib::Response& res) {
      ++hits;
      handler(req, res);
    });
    port = server.bind_to_any_port("127.0.0.1");
    thread = std::thread([this] { server.listen_after_bind(); });
    server.wait_until_ready();
  }
  ~StubServer() {
    server.stop();
    thread.join();
  }
};

RemoteScorerConfig fast_config(int port, const std::string& cache = "") {
  RemoteScorerConfig cfg;
  cfg.port = port;
  cfg.backoff_base_ms = 1;
  cfg.cache_path = cache;
  return cfg;
}

}  // namespace

TEST_CASE("remote scorer passes the toxicity through") {
  StubServer stub;
  stub.handler = [](const httplib::Request& req, httplib::Response& res) {
    auto j = nlohmann::json::parse(req.body);
    CHECK(j.contains("text"));
    res.set_content("{\"toxicity\":0.85}", "application/json");
  };
  RemoteScorer scorer(fast_config(stub.port));
  auto s = scorer.score("t1", "some harsh words");
  REQUIRE(s.scorable);
  CHECK(*s.score == 0.85);
  CHECK(s.scorer == ScorerKind::Remote);
}

TEST_CASE("remote scorer marks unscorable after three failures") {
  StubServer stub;
  stub.handler = [](const httplib::Request&, httplib::Response& res) {
    res.status = 500;
  };
  RemoteScorer scorer(fast_config(stub.port));
  auto s = scorer.score("t1", "words that will fail");
  CHECK_FALSE(s.scorable);
  CHECK(s.error.find("500") != std::string::npos);
  CHECK(stub.hits == 3);
}

TEST_CASE("repeated identical text triggers a single network call") {
  StubServer stub;
  stub.handler = [](const httplib::Request&, httplib::Response& res) {
    res.set_content("{\"toxicity\":0.2}", "application/json");
  };
  RemoteScorer scorer(fast_config(stub.port));
  for (int i = 0; i < 5; ++i) {
    auto s = scorer.score("t" + std::to_string(i), "identical words here");
    REQUIRE(s.scorable);
    CHECK(*s.score == 0.2);
  }
  CHECK(stub.hits == 1);
  CHECK(scorer.network_calls() == 1);
  CHECK(scorer.cache_hits() == 4);
}

TEST_CASE("cache sidecar makes re-runs offline") {
  TempDir dir("toxcache");
  std::string cache = dir.path("cache.jsonl");
  {
    StubServer stub;
    stub.handler = [](const httplib::Request&, httplib::Response& res) {
      res.set_content("{\"toxicity\":0.66}", "application/json");
    };
    RemoteScorer scorer(fast_config(stub.port, cache));
    auto s = scorer.score("t1", "cache me if you can");
    REQUIRE(s.scorable);
  }
  // No server this time: the sidecar must answer.
  RemoteScorer offline(fast_config(1, cache));
  auto s = offline.score("t9", "cache me if you can");
  REQUIRE(s.scorable);
  CHECK(*s.score == 0.66);
  CHECK(offline.network_calls() == 0);
}

TEST_CASE("normalized text shares a cache slot") {
  StubServer stub;
  stub.handler = [](const httplib::Request&, httplib::Response& res) {
    res.set_content("{\"toxicity\":0.5}", "application/json");
  };
  RemoteScorer scorer(fast_config(stub.port));
  scorer.score("a", "Hello   WORLD!");
  scorer.score("b", "hello world");
  CHECK(stub.hits == 1);
}

TEST_CASE("out-of-range toxicity is a protocol error") {
  StubServer stub;
  stub.handler = [](const httplib::Request&, httplib::Response& res) {
    res.set_content("{\"toxicity\":1.7}", "application/json");
  };
  RemoteScorer scorer(fast_config(stub.port));
  CHECK_THROWS_AS(scorer.score("t1", "too hot to handle"), DataError);
}

TEST_CASE("score_many respects the in-flight bound and covers all rows") {
  StubServer stub;
  std::atomic<int> live{0}, peak{0};
  stub.handler = [&](const httplib::Request&, httplib::Response& res) {
    int now = ++live;
    int old = peak.load();
    while (now > old && !peak.compare_exchange_weak(old, now)) {}
    std::this_thread::sleep_for(std::chrono::milliseconds(5));
    res.set_content("{\"toxicity\":0.1}", "application/json");
    --live;
  };
  auto cfg = fast_config(stub.port);
  cfg.max_in_flight = 2;
  RemoteScorer scorer(cfg);
  std::vector<std::pair<std::string, std::string>> rows;
  for (int i = 0; i < 12; ++i)
    rows.push_back({"t" + std::to_string(i),
                    "unique text number " + std::to_string(i)});
  auto out = scorer.score_many(rows);
  REQUIRE(out.size() == 12);
  for (const auto& s : out) CHECK(s.scorable);
  CHECK(peak.load() <= 2);
}

TEST_CASE("calibration sweeps the 3-point fixture") {
  std::vector<std::pair<double, bool>> val = {
      {0.2, false}, {0.6, true}, {0.8, true}};
  auto rep = calibrate_threshold(val, CalibrationObjective::max_f1());
  // score > 0.2 predicts exactly the two positives.
  CHECK(rep.threshold == 0.2);
  CHECK(rep.precision == 1.0);
  CHECK(rep.recall == 1.0);
  CHECK(rep.f1 == 1.0);
}

TEST_CASE("perfect separation reaches P=R=F1=1") {
  std::vector<std::pair<double, bool>> val = {
      {0.1, false}, {0.3, false}, {0.75, true}, {0.9, true}};
  auto rep = calibrate_threshold(val, CalibrationObjective::max_f1());
  CHECK(rep.precision == 1.0);
  CHECK(rep.recall == 1.0);
  CHECK(rep.f1 == 1.0);
  CHECK(rep.threshold >= 0.3);
  CHECK(rep.threshold < 0.75);
}

TEST_CASE("degenerate validation sets are rejected") {
  CHECK_THROWS_AS(
      calibrate_threshold({{0.5, true}, {0.6, true}},
                          CalibrationObjective::max_f1()),
      DataError);
  CHECK_THROWS_AS(
      calibrate_threshold({{0.5, false}}, CalibrationObjective::max_f1()),
      DataError);
}

TEST_CASE("precision objective honors the recall floor") {
  std::vector<std::pair<double, bool>> val = {
      {0.1, false}, {0.4, true}, {0.5, false}, {0.8, true}, {0.9, true}};
  auto rep = calibrate_threshold(
      val, CalibrationObjective::precision_at_recall(0.6));
  CHECK(rep.recall >= 0.6);
  // Threshold 0.5 keeps {0.8, 0.9}: precision 1.0 at recall 2/3.
  CHECK(rep.threshold == 0.5);
  CHECK(rep.precision == 1.0);
}

TEST_CASE("recall is non-increasing in the threshold") {
  Rng rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<std::pair<double, bool>> val;
    int n = 5 + int(rng.below(40));
    bool saw_pos = false, saw_neg = false;
    for (int i = 0; i < n; ++i) {
      bool label = rng.bernoulli(0.4);
      saw_pos |= label;
      saw_neg |= !label;
      val.push_back({rng.unit(), label});
    }
    if (!saw_pos || !saw_neg) continue;
    std::size_t positives = 0;
    for (auto& [s, l] : val) positives += l;
    double prev_recall = 2.0;
    std::set<double> thresholds = {0.0, 1.0};
    for (auto& [s, l] : val) thresholds.insert(s);
    for (double t : thresholds) {
      std::size_t tp = 0;
      for (auto& [s, l] : val)
        if (s > t && l) ++tp;
      double recall = double(tp) / double(positives);
      CHECK(recall <= prev_recall);
      prev_recall = recall;
    }
  }
}
