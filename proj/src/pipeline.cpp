#include "polarlex/pipeline.hpp"

#include <algorithm>
#include <filesystem>
#include <set>

#include "json.hpp"
#include "polarlex/default_config.hpp"
#include "polarlex/embeddings.hpp"
#include "polarlex/io.hpp"
#include "polarlex/lexicon.hpp"
#include "polarlex/rng.hpp"
#include "polarlex/stats.hpp"
#include "polarlex/toxicity.hpp"

namespace polarlex {

namespace {

std::string stars_for(double p) {
  if (p < 0.001) return "***";
  if (p < 0.01) return "**";
  if (p < 0.05) return "*";
  return "";
}

std::string join_path(const std::string& dir, const std::string& name) {
  return dir + "/" + name;
}

Corpus ingest_from_config(const PipelineConfig& cfg) {
  return ingest_corpus(cfg.tweets_path, cfg.users_path, cfg.follows_path,
                       cfg.roster_path);
}

// ---- manifest -------------------------------------------------------------

std::string manifest_path(const PipelineConfig& cfg) {
  return join_path(cfg.out_dir, "manifest.json");
}

nlohmann::json load_manifest(const PipelineConfig& cfg) {
  if (!io::file_exists(manifest_path(cfg))) return nlohmann::json::object();
  auto j = nlohmann::json::parse(io::read_file(manifest_path(cfg)), nullptr,
                                 false);
  return j.is_object() ? j : nlohmann::json::object();
}

void save_manifest(const PipelineConfig& cfg, const nlohmann::json& manifest) {
  io::atomic_write_file(manifest_path(cfg), manifest.dump(2) + "\n");
}

std::vector<std::string> corpus_inputs(const PipelineConfig& cfg) {
  return {cfg.tweets_path, cfg.users_path, cfg.follows_path, cfg.roster_path};
}

std::vector<std::string> stage_inputs(Stage s, const PipelineConfig& cfg) {
  auto files = corpus_inputs(cfg);
  switch (s) {
    case Stage::Ingest:
      break;
    case Stage::InferParty:
      if (!cfg.hashtag_lexicon_path.empty())
        files.push_back(cfg.hashtag_lexicon_path);
      break;
    case Stage::Score:
      if (!cfg.toxicity_lexicon_path.empty())
        files.push_back(cfg.toxicity_lexicon_path);
      break;
    case Stage::Dpp:
    case Stage::Lexicon:
      files.push_back(join_path(cfg.out_dir, "party_labels.jsonl"));
      files.push_back(join_path(cfg.out_dir, "toxicity_scores.jsonl"));
      break;
    case Stage::Regress:
      files.push_back(join_path(cfg.out_dir, "party_labels.jsonl"));
      files.push_back(join_path(cfg.out_dir, "summary.csv"));
      break;
  }
  return files;
}

std::vector<Stage> upstream_of(Stage s) {
  switch (s) {
    case Stage::Ingest:
    case Stage::InferParty:
    case Stage::Score:
      return {};
    case Stage::Dpp:
    case Stage::Lexicon:
      return {Stage::InferParty, Stage::Score};
    case Stage::Regress:
      return {Stage::InferParty, Stage::Dpp};
  }
  return {};
}

std::string stage_config_hash(Stage s, const PipelineConfig& cfg) {
  nlohmann::json j;
  switch (s) {
    case Stage::Ingest:
      j["tier_count"] = cfg.tier_count;
      break;
    case Stage::InferParty:
      j["relatedness_threshold"] = cfg.relatedness_threshold;
      j["max_rounds"] = cfg.max_rounds;
      j["rng_seed"] = cfg.rng_seed;
      break;
    case Stage::Score:
      j["scorer"] = cfg.scorer;
      break;
    case Stage::Dpp:
      j["threshold"] = cfg.threshold;
      break;
    case Stage::Lexicon:
      j["threshold"] = cfg.threshold;
      j["vocab_min_users"] = cfg.vocab_min_users;
      j["cooc_window"] = cfg.cooc_window;
      j["embed_dim"] = cfg.embed_dim;
      j["embed_alpha"] = cfg.embed_alpha;
      j["knn_k"] = cfg.knn_k;
      j["min_interactions"] = cfg.min_interactions;
      j["runs"] = cfg.runs;
      j["seed_fraction"] = cfg.seed_fraction;
      j["beta"] = cfg.beta;
      j["walk_tol"] = cfg.walk_tol;
      j["walk_max_iters"] = cfg.walk_max_iters;
      j["top_n"] = cfg.top_n;
      j["rng_seed"] = cfg.rng_seed;
      break;
    case Stage::Regress:
      j["trim_fraction"] = cfg.trim_fraction;
      j["threshold"] = cfg.threshold;
      break;
  }
  return io::sha256_hex(j.dump());
}

// Whether the stage's manifest entry matches the current inputs and config
// and its outputs are on disk.
bool stage_fresh(Stage s, const PipelineConfig& cfg,
                 const nlohmann::json& manifest) {
  const std::string name = stage_name(s);
  if (!manifest.contains(name)) return false;
  const auto& entry = manifest[name];
  if (entry.value("config", "") != stage_config_hash(s, cfg)) return false;
  for (const auto& path : stage_inputs(s, cfg)) {
    if (!io::file_exists(path)) return false;
    if (!entry.contains("inputs") || !entry["inputs"].contains(path))
      return false;
    if (entry["inputs"][path].get<std::string>() != io::sha256_file(path))
      return false;
  }
  for (const auto& out : stage_outputs(s))
    if (!io::file_exists(join_path(cfg.out_dir, out))) return false;
  return true;
}

void record_stage(Stage s, const PipelineConfig& cfg) {
  auto manifest = load_manifest(cfg);
  nlohmann::json entry;
  entry["config"] = stage_config_hash(s, cfg);
  nlohmann::json inputs = nlohmann::json::object();
  for (const auto& path : stage_inputs(s, cfg))
    inputs[path] = io::sha256_file(path);
  entry["inputs"] = inputs;
  entry["outputs"] = stage_outputs(s);
  manifest[stage_name(s)] = entry;
  save_manifest(cfg, manifest);
}

void check_upstream(Stage s, const PipelineConfig& cfg,
                    const nlohmann::json& manifest) {
  for (Stage up : upstream_of(s)) {
    for (const auto& out : stage_outputs(up)) {
      const std::string path = join_path(cfg.out_dir, out);
      if (!io::file_exists(path))
        throw DependencyError("stage " + stage_name(s) +
                              " needs missing artifact " + path + "; run " +
                              stage_name(up) + " first");
    }
    if (cfg.force) continue;
    if (!stage_fresh(up, cfg, manifest))
      throw DependencyError(
          "artifact of stage " + stage_name(up) +
          " is stale (input or config hash mismatch); rerun it or pass "
          "--force to use it anyway");
  }
}

// ---- scoring helpers ------------------------------------------------------

ToxicityLexicon load_toxicity_lexicon(const PipelineConfig& cfg) {
  if (cfg.toxicity_lexicon_path.empty()) return default_toxicity_lexicon();
  return toxicity_lexicon_from_json(io::read_file(cfg.toxicity_lexicon_path));
}

HashtagLexicon load_hashtag_lexicon(const PipelineConfig& cfg) {
  if (cfg.hashtag_lexicon_path.empty()) return HashtagLexicon::defaults();
  return HashtagLexicon::from_json(io::read_file(cfg.hashtag_lexicon_path));
}

// ---- stage bodies ----------------------------------------------------------

void run_ingest(const PipelineConfig& cfg, StageResult& result) {
  Corpus corpus = ingest_from_config(cfg);
  int tiers = std::min<int>(cfg.tier_count,
                            std::max<int>(1, int(corpus.roster().size())));
  auto tier_map = corpus.roster().empty() ? std::map<std::string, int>{}
                                          : corpus.assign_tiers(tiers);

  std::string csv = "candidate_id,attention,tier\n";
  for (const auto& cand : corpus.roster()) {
    csv += cand.candidate_id + "," +
           std::to_string(corpus.attention(cand.candidate_id)) + "," +
           std::to_string(tier_map.at(cand.candidate_id)) + "\n";
  }
  io::atomic_write_file(join_path(cfg.out_dir, "attention.csv"), csv);

  nlohmann::json report;
  report["candidates"] = corpus.roster().size();
  report["users"] = corpus.users().size();
  report["interactions"] = corpus.interactions().size();
  report["tweet_lines"] = corpus.stats().tweet_lines;
  report["tweet_malformed"] = corpus.stats().tweet_malformed;
  report["user_lines"] = corpus.stats().user_lines;
  report["user_malformed"] = corpus.stats().user_malformed;
  report["follow_lines"] = corpus.stats().follow_lines;
  report["follow_malformed"] = corpus.stats().follow_malformed;
  report["unknown_target_refs"] = corpus.stats().unknown_target_refs;
  io::atomic_write_file(join_path(cfg.out_dir, "ingest_report.json"),
                        report.dump(2) + "\n");
  result.notes.push_back(std::to_string(corpus.interactions().size()) +
                         " interactions ingested");
}

void run_infer_party(const PipelineConfig& cfg, StageResult& result) {
  Corpus corpus = ingest_from_config(cfg);
  PartyInferenceParams params;
  params.relatedness_threshold = cfg.relatedness_threshold;
  params.max_rounds = cfg.max_rounds;
  params.rng_seed = cfg.rng_seed;
  auto outcome = infer_party(corpus, load_hashtag_lexicon(cfg), params);

  std::vector<std::uint32_t> order(corpus.users().size());
  for (std::uint32_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    return corpus.users()[a].user_id < corpus.users()[b].user_id;
  });
  std::string jsonl;
  for (auto u : order) {
    const auto& pl = outcome.labels[u];
    nlohmann::json j;
    j["user_id"] = pl.user_id;
    j["label"] = to_string(pl.label);
    j["signals"] = {{"profile", to_string(pl.profile)},
                    {"retweet", to_string(pl.retweet)},
                    {"friendship", to_string(pl.friendship)}};
    jsonl += j.dump() + "\n";
  }
  io::atomic_write_file(join_path(cfg.out_dir, "party_labels.jsonl"), jsonl);
  io::atomic_write_file(join_path(cfg.out_dir, "hashtag_lexicon_used.json"),
                        outcome.lexicon.to_json() + "\n");
  for (auto& w : outcome.warnings) result.notes.push_back(w);
}

void run_score(const PipelineConfig& cfg, StageResult& result) {
  Corpus corpus = ingest_from_config(cfg);
  std::string jsonl;
  std::uint64_t scorable = 0;

  auto emit = [&](const ToxicityScore& s) {
    nlohmann::json j;
    j["tweet_id"] = s.tweet_id;
    j["scorable"] = s.scorable;
    if (s.scorable) {
      j["score"] = *s.score;
      ++scorable;
    }
    if (!s.error.empty()) j["error"] = s.error;
    j["scorer"] = s.scorer == ScorerKind::Lexicon ? "lexicon" : "remote";
    jsonl += j.dump() + "\n";
  };

  if (cfg.scorer == "lexicon") {
    auto lexicon = load_toxicity_lexicon(cfg);
    for (const auto& rec : corpus.interactions())
      emit(score_lexicon(rec.tweet_id, rec.text, lexicon));
  } else if (cfg.scorer == "remote") {
    if (cfg.remote_port <= 0)
      throw UsageError("remote scorer needs --remote-port");
    RemoteScorerConfig rc;
    rc.host = cfg.remote_host;
    rc.port = cfg.remote_port;
    rc.path = cfg.remote_endpoint;
    rc.timeout_ms = cfg.remote_timeout_ms;
    rc.max_in_flight = cfg.max_in_flight;
    rc.cache_path = cfg.cache_path.empty()
                        ? join_path(cfg.out_dir, "scorer_cache.jsonl")
                        : cfg.cache_path;
    RemoteScorer scorer(rc);
    std::vector<std::pair<std::string, std::string>> rows;
    rows.reserve(corpus.interactions().size());
    for (const auto& rec : corpus.interactions())
      rows.push_back({rec.tweet_id, rec.text});
    for (auto& s : scorer.score_many(rows)) emit(s);
    result.notes.push_back(std::to_string(scorer.network_calls()) +
                           " network calls, " +
                           std::to_string(scorer.cache_hits()) + " cache hits");
  } else {
    throw UsageError("unknown scorer: " + cfg.scorer);
  }
  io::atomic_write_file(join_path(cfg.out_dir, "toxicity_scores.jsonl"), jsonl);
  result.notes.push_back(std::to_string(scorable) + " scorable interactions");
}

void run_dpp(const PipelineConfig& cfg, StageResult& result) {
  Corpus corpus = ingest_from_config(cfg);
  auto labels =
      load_party_labels(join_path(cfg.out_dir, "party_labels.jsonl"), corpus);
  auto scores =
      load_toxicity_scores(join_path(cfg.out_dir, "toxicity_scores.jsonl"));

  auto all = label_all(corpus, labels, scores, cfg.threshold);
  std::string jsonl;
  for (const auto& lab : all) {
    nlohmann::json j;
    j["tweet_id"] = lab.tweet_id;
    j["candidate_id"] = lab.candidate_id;
    j["verdict"] = to_string(lab.verdict);
    if (lab.reason) j["reason"] = to_string(*lab.reason);
    jsonl += j.dump() + "\n";
  }
  io::atomic_write_file(join_path(cfg.out_dir, "dpp_labels.jsonl"), jsonl);

  auto summaries = summarize_all(corpus, labels, scores, cfg.threshold);
  std::sort(summaries.begin(), summaries.end(),
            [](const auto& a, const auto& b) {
              return a.candidate_id < b.candidate_id;
            });
  std::string csv =
      "candidate_id,interactions_total,labelable,naive,directed,reduction\n";
  for (const auto& s : summaries)
    csv += s.candidate_id + "," + std::to_string(s.interactions_total) + "," +
           std::to_string(s.labelable_count) + "," +
           std::to_string(s.naive_count) + "," +
           std::to_string(s.adversarial_directed_count) + "," +
           io::format_fixed(s.reduction_fraction, 6) + "\n";
  io::atomic_write_file(join_path(cfg.out_dir, "summary.csv"), csv);
  result.notes.push_back(std::to_string(all.size()) +
                         " tweet-candidate pairs labeled");
}

void run_lexicon(const PipelineConfig& cfg, StageResult& result) {
  Corpus corpus = ingest_from_config(cfg);
  auto labels =
      load_party_labels(join_path(cfg.out_dir, "party_labels.jsonl"), corpus);
  auto scores =
      load_toxicity_scores(join_path(cfg.out_dir, "toxicity_scores.jsonl"));
  auto pools = build_seed_pools(corpus, labels, scores, cfg.threshold);

  std::vector<TermReportRow> all_rows;
  std::vector<std::string> notices;
  Rng root(cfg.rng_seed);

  for (std::uint32_t cand = 0; cand < corpus.roster().size(); ++cand) {
    const std::string& cid = corpus.roster()[cand].candidate_id;
    if (corpus.attention(cand) < cfg.min_interactions) {
      notices.push_back("candidate " + cid + " skipped: " +
                        std::to_string(corpus.attention(cand)) +
                        " interactions < " +
                        std::to_string(cfg.min_interactions));
      continue;
    }
    Vocabulary vocab;
    try {
      VocabularyParams vp;
      vp.min_users = cfg.vocab_min_users;
      vocab = build_vocabulary(corpus, cand, vp);
    } catch (const DataError& e) {
      notices.push_back("candidate " + cid + " skipped: " + e.what());
      continue;
    }
    auto counts = cooccurrence(corpus, cand, vocab, cfg.cooc_window);
    EmbedParams ep;
    ep.dim = cfg.embed_dim;
    ep.alpha = cfg.embed_alpha;
    ep.rng_seed = splitmix64(cfg.rng_seed ^ (0xe5u + cand));
    std::vector<std::string> warn;
    auto table = ppmi_svd_embed(counts, vocab.terms, ep, &warn);
    write_embeddings_tsv(table,
                         join_path(cfg.out_dir, "embeddings/" + cid + ".tsv"));
    GraphParams gp;
    gp.k = cfg.knn_k;
    gp.min_interactions = cfg.min_interactions;
    auto graph = build_graph(corpus, cand, vocab, table, gp, &notices);
    if (!graph) continue;
    auto seeds = candidate_seed_nodes(*graph, pools,
                                      corpus.roster()[cand].party);
    if (seeds.empty()) {
      notices.push_back("candidate " + cid +
                        " skipped: empty opposing toxic seed set");
      continue;
    }
    BootstrapParams bp;
    bp.runs = cfg.runs;
    bp.fraction = cfg.seed_fraction;
    bp.rng_seed = splitmix64(cfg.rng_seed ^ (0xb00u + cand));
    bp.walk.beta = cfg.beta;
    bp.walk.tol = cfg.walk_tol;
    bp.walk.max_iters = cfg.walk_max_iters;
    bp.workers = cfg.workers;
    auto boot = bootstrap_scores(*graph, seeds, bp);
    for (auto& w : boot.warnings) notices.push_back(w);
    auto rows = candidate_term_report(corpus, cand, *graph, boot, labels,
                                      scores, cfg.threshold);
    // Within a candidate, report in rank order.
    const std::size_t n_rows = rows.size();
    auto ranked = top_terms(std::move(rows), n_rows);
    all_rows.insert(all_rows.end(), ranked.begin(), ranked.end());
  }

  std::string csv =
      "candidate_id,term,score,confidence,pct_toxic,n_matching_tweets\n";
  auto append_row = [&csv](const TermReportRow& r) {
    csv += r.candidate_id + "," + r.term + "," + io::format_double(r.score) +
           "," + io::format_double(r.confidence) + "," +
           io::format_fixed(r.pct_toxic, 2) + "," +
           std::to_string(r.n_matching_tweets) + "\n";
  };
  for (const auto& r : all_rows) append_row(r);
  io::atomic_write_file(join_path(cfg.out_dir, "adversary_scores.csv"), csv);

  auto top = top_terms(all_rows, cfg.top_n);
  csv = "candidate_id,term,score,confidence,pct_toxic,n_matching_tweets\n";
  for (const auto& r : top) append_row(r);
  io::atomic_write_file(join_path(cfg.out_dir, "top_terms.csv"), csv);

  nlohmann::json report;
  report["notices"] = notices;
  report["rows"] = all_rows.size();
  io::atomic_write_file(join_path(cfg.out_dir, "lexicon_report.json"),
                        report.dump(2) + "\n");
  for (auto& n : notices) result.notes.push_back(n);
}

void run_regress(const PipelineConfig& cfg, StageResult& result) {
  Corpus corpus = ingest_from_config(cfg);
  auto labels =
      load_party_labels(join_path(cfg.out_dir, "party_labels.jsonl"), corpus);
  auto summaries =
      load_dpp_summaries(join_path(cfg.out_dir, "summary.csv"), corpus);
  DesignParams dp;
  dp.trim_fraction = cfg.trim_fraction;
  auto design = build_design(corpus, summaries, labels, dp);
  auto report = ols_fit(design);

  std::string csv = "predictor,coefficient,se,t,p,stars,vif\n";
  for (const auto& ps : report.predictors) {
    csv += ps.name + "," + io::format_double(ps.b) + "," +
           io::format_double(ps.se) + "," + io::format_double(ps.t) + "," +
           io::format_double(ps.p) + "," + stars_for(ps.p) + ",";
    csv += ps.name == "intercept" ? std::string("") : io::format_double(ps.vif);
    csv += "\n";
  }
  csv += "r_squared," + io::format_double(report.r2) + ",,,,,\n";
  csv += "n_observations," + std::to_string(report.n) + ",,,,,\n";
  io::atomic_write_file(join_path(cfg.out_dir, "regression_report.csv"), csv);
  result.notes.push_back("N=" + std::to_string(report.n) +
                         " R2=" + io::format_fixed(report.r2, 4));
}

}  // namespace

std::string stage_name(Stage s) {
  switch (s) {
    case Stage::Ingest: return "ingest";
    case Stage::InferParty: return "infer-party";
    case Stage::Score: return "score";
    case Stage::Dpp: return "dpp";
    case Stage::Lexicon: return "lexicon";
    case Stage::Regress: return "regress";
  }
  return "?";
}

std::vector<std::string> stage_outputs(Stage s) {
  switch (s) {
    case Stage::Ingest:
      return {"attention.csv", "ingest_report.json"};
    case Stage::InferParty:
      return {"party_labels.jsonl", "hashtag_lexicon_used.json"};
    case Stage::Score:
      return {"toxicity_scores.jsonl"};
    case Stage::Dpp:
      return {"dpp_labels.jsonl", "summary.csv"};
    case Stage::Lexicon:
      return {"adversary_scores.csv", "top_terms.csv", "lexicon_report.json"};
    case Stage::Regress:
      return {"regression_report.csv"};
  }
  return {};
}

StageResult run_stage(Stage s, const PipelineConfig& cfg) {
  StageResult result;
  result.stage = s;
  for (const auto& path : corpus_inputs(cfg))
    if (!io::file_exists(path))
      throw DataError("missing input file: " + path);
  std::filesystem::create_directories(cfg.out_dir);

  auto manifest = load_manifest(cfg);
  check_upstream(s, cfg, manifest);
  if (stage_fresh(s, cfg, manifest)) {
    result.skipped = true;
    return result;
  }

  switch (s) {
    case Stage::Ingest: run_ingest(cfg, result); break;
    case Stage::InferParty: run_infer_party(cfg, result); break;
    case Stage::Score: run_score(cfg, result); break;
    case Stage::Dpp: run_dpp(cfg, result); break;
    case Stage::Lexicon: run_lexicon(cfg, result); break;
    case Stage::Regress: run_regress(cfg, result); break;
  }
  record_stage(s, cfg);
  return result;
}

std::vector<StageResult> run_all(const PipelineConfig& cfg) {
  std::vector<StageResult> results;
  for (Stage s : {Stage::Ingest, Stage::InferParty, Stage::Score, Stage::Dpp,
                  Stage::Lexicon, Stage::Regress})
    results.push_back(run_stage(s, cfg));
  return results;
}

std::vector<PartyLabel> load_party_labels(const std::string& path,
                                          const Corpus& corpus) {
  std::vector<PartyLabel> labels(corpus.users().size());
  for (std::uint32_t u = 0; u < corpus.users().size(); ++u)
    labels[u].user_id = corpus.users()[u].user_id;
  io::for_each_jsonl(path, [&](const nlohmann::json& j) {
    auto idx = corpus.user_index(j.at("user_id").get<std::string>());
    if (!idx) return true;  // user absent from this corpus; harmless
    PartyLabel& pl = labels[*idx];
    pl.label = parse_leaning(j.at("label").get<std::string>());
    if (j.contains("signals")) {
      pl.profile = parse_leaning(j["signals"].value("profile", "Unknown"));
      pl.retweet = parse_leaning(j["signals"].value("retweet", "Unknown"));
      pl.friendship =
          parse_leaning(j["signals"].value("friendship", "Unknown"));
    }
    return true;
  });
  return labels;
}

ScoreIndex load_toxicity_scores(const std::string& path) {
  ScoreIndex scores;
  io::for_each_jsonl(path, [&](const nlohmann::json& j) {
    ToxicityScore s;
    s.tweet_id = j.at("tweet_id").get<std::string>();
    s.scorable = j.value("scorable", false);
    if (s.scorable) s.score = j.at("score").get<double>();
    s.scorer = j.value("scorer", "lexicon") == std::string("remote")
                   ? ScorerKind::Remote
                   : ScorerKind::Lexicon;
    s.error = j.value("error", "");
    scores[s.tweet_id] = s;
    return true;
  });
  return scores;
}

std::vector<CandidateAdversarySummary> load_dpp_summaries(
    const std::string& path, const Corpus& corpus) {
  std::vector<CandidateAdversarySummary> out(corpus.roster().size());
  for (std::uint32_t c = 0; c < corpus.roster().size(); ++c)
    out[c].candidate_id = corpus.roster()[c].candidate_id;
  std::string content = io::read_file(path);
  std::size_t pos = content.find('\n');
  if (pos == std::string::npos)
    throw DataError("dpp summary file is empty: " + path);
  while (pos + 1 < content.size()) {
    std::size_t end = content.find('\n', pos + 1);
    if (end == std::string::npos) end = content.size();
    std::string line = content.substr(pos + 1, end - pos - 1);
    pos = end;
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::string cur;
    for (char ch : line) {
      if (ch == ',') {
        fields.push_back(cur);
        cur.clear();
      } else {
        cur += ch;
      }
    }
    fields.push_back(cur);
    if (fields.size() != 6) throw DataError("bad dpp summary row: " + line);
    auto idx = corpus.candidate_index(fields[0]);
    if (!idx) continue;
    CandidateAdversarySummary& s = out[*idx];
    s.interactions_total = std::stoull(fields[1]);
    s.labelable_count = std::stoull(fields[2]);
    s.naive_count = std::stoull(fields[3]);
    s.adversarial_directed_count = std::stoull(fields[4]);
    s.reduction_fraction = std::stod(fields[5]);
  }
  return out;
}

}  // namespace polarlex
