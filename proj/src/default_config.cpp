#include "polarlex/default_config.hpp"

namespace polarlex {

HashtagLexicon HashtagLexicon::defaults() {
  HashtagLexicon lex;
  lex.dem_tags = {
      "#bluewave",      "#glovesoff",     "#wherearethechildren",
      "#lgbt",          "#liberal",       "#stillwithher",
      "#traitortrump",  "#fbrparty",      "#resister",
      "#resistance",    "#progressive",   "#flipitblue",
      "#strongertogether", "#trumprussia", "#guncontrolnow",
      "#fucktrump",     "#neveragain",    "#gunsense",
      "#nevertrump",    "#metoo",         "#gunreformnow",
      "#enough",        "#followbackresistance", "#gunreform",
      "#muellertime",   "#votethemout",   "#demforce",
      "#uniteblue",     "#pru",           "#impeach45",
      "#voteblue",      "#bluetsunami",   "#feminist",
      "#notmypresident", "#blm",          "#persist",
      "#antitrump",     "#dumptrump",     "#impeachtrump",
      "#protectmueller", "#familiesbelongtogether", "#timesup",
      "#theresistance", "#lgbtq",         "#fbr",
      "#democrat",      "#bluewave2018",  "#climatechange",
      "#takeaknee",     "#trumptreason",  "#blacklivesmatter",
      "#basta",         "#marchforourlives", "#resist",
      "#boycottnra",    "#daca",          "#impeach",
      "#guncontrol"};
  lex.rep_tags = {
      "#maga",          "#lockherup",     "#tcot",
      "#conservative",  "#nra",           "#thegreatawakening",
      "#2a",            "#draintheswamp", "#trump2020",
      "#wwg1wga",       "#1a",            "#bluelivesmatter",
      "#wethepeople",   "#kag2020",       "#prolife",
      "#buildthewall",  "#ccot",          "#fbts",
      "#americafirst",  "#trump",         "#backtheblue",
      "#defundpp",      "#winning",       "#deplorable",
      "#magaveteran",   "#redwave",       "#trumptrain",
      "#kag",           "#nodaca",        "#potus",
      "#covfefe",       "#greatawakening", "#qanon",
      "#walkaway",      "#molonlabe",     "#redwaverising",
      "#termlimits"};
  lex.blocklist = {
      // filtered from the pro-Democrat side
      "#atheist", "#science", "#equality", "#vote", "#humanrights",
      "#indivisible",
      // filtered from the pro-Republican side
      "#godblessamerica", "#constitution", "#military", "#vets", "#freedom",
      "#usmc", "#christian", "#veterans", "#veteran", "#usa", "#god",
      "#codeofvets", "#vet", "#israel", "#family", "#jesus", "#patriot",
      "#america"};
  for (const auto& t : lex.blocklist) {
    lex.dem_tags.erase(t);
    lex.rep_tags.erase(t);
  }
  return lex;
}

const std::set<std::string>& default_stopwords() {
  static const std::set<std::string> words = {
      "a",       "about",   "above",   "after",   "again",  "against",
      "all",     "am",      "an",      "and",     "any",    "are",
      "aren't",  "arent",   "as",      "at",      "be",     "because",
      "been",    "before",  "being",   "below",   "between","both",
      "but",     "by",      "can",     "cannot",  "could",  "couldn't",
      "did",     "didn't",  "didnt",   "do",      "does",   "doesn't",
      "doesnt",  "doing",   "don't",   "dont",    "down",   "during",
      "each",    "few",     "for",     "from",    "further","had",
      "has",     "hasn't",  "have",    "haven't", "having", "he",
      "her",     "here",    "hers",    "herself", "him",    "himself",
      "his",     "how",     "i",       "if",      "in",     "into",
      "is",      "isn't",   "isnt",    "it",      "its",    "it's",
      "itself",  "just",    "me",      "more",    "most",   "my",
      "myself",  "no",      "nor",     "not",     "now",    "of",
      "off",     "on",      "once",    "only",    "or",     "other",
      "our",     "ours",    "ourselves", "out",   "over",   "own",
      "same",    "she",     "should",  "so",      "some",   "such",
      "than",    "that",    "the",     "their",   "theirs", "them",
      "themselves", "then", "there",   "these",   "they",   "this",
      "those",   "through", "to",      "too",     "under",  "until",
      "up",      "very",    "was",     "wasn't",  "wasnt",  "we",
      "were",    "weren't", "what",    "when",    "where",  "which",
      "while",   "who",     "whom",    "why",     "will",   "with",
      "won't",   "wont",    "would",   "wouldn't", "you",   "your",
      "yours",   "yourself", "yourselves", "rt",  "amp",    "via"};
  return words;
}

const std::map<std::string, double>& default_toxicity_lexicon() {
  static const std::map<std::string, double> lex = {
      {"idiot", 0.92},    {"moron", 0.92},  {"stupid", 0.85},
      {"scum", 0.93},     {"trash", 0.82},  {"loser", 0.80},
      {"pathetic", 0.78}, {"disgrace", 0.76}, {"disgusting", 0.81},
      {"corrupt", 0.72},  {"liar", 0.75},   {"traitor", 0.88},
      {"crooked", 0.74},  {"fraud", 0.77},  {"clown", 0.73},
      {"garbage", 0.83},  {"shut", 0.35},   {"hate", 0.55},
      {"awful", 0.60},    {"worst", 0.58},  {"dumb", 0.79},
      {"evil", 0.71},     {"coward", 0.81}, {"sellout", 0.72}};
  return lex;
}

}  // namespace polarlex
