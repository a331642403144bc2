#include "polarlex/types.hpp"

#include <algorithm>

namespace polarlex {

namespace {
std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}
}  // namespace

std::string to_string(Party p) {
  return p == Party::Democrat ? "Democrat" : "Republican";
}

std::string to_string(Gender g) { return g == Gender::Female ? "Female" : "Male"; }

std::string to_string(Leaning l) {
  switch (l) {
    case Leaning::ProDem: return "ProDem";
    case Leaning::ProRep: return "ProRep";
    default: return "Unknown";
  }
}

std::string to_string(InteractionKind k) {
  switch (k) {
    case InteractionKind::Reply: return "reply";
    case InteractionKind::Mention: return "mention";
    case InteractionKind::Retweet: return "retweet";
    default: return "original";
  }
}

Party parse_party(const std::string& s) {
  std::string v = lower(s);
  if (v == "democrat" || v == "d" || v == "dem") return Party::Democrat;
  if (v == "republican" || v == "r" || v == "rep") return Party::Republican;
  throw DataError("unrecognized party: " + s);
}

Gender parse_gender(const std::string& s) {
  std::string v = lower(s);
  if (v == "female" || v == "f") return Gender::Female;
  if (v == "male" || v == "m") return Gender::Male;
  throw DataError("unrecognized gender: " + s);
}

Leaning parse_leaning(const std::string& s) {
  std::string v = lower(s);
  if (v == "prodem") return Leaning::ProDem;
  if (v == "prorep") return Leaning::ProRep;
  if (v == "unknown") return Leaning::Unknown;
  throw DataError("unrecognized leaning: " + s);
}

InteractionKind parse_kind(const std::string& s) {
  std::string v = lower(s);
  if (v == "reply") return InteractionKind::Reply;
  if (v == "mention") return InteractionKind::Mention;
  if (v == "retweet") return InteractionKind::Retweet;
  if (v == "original") return InteractionKind::Original;
  throw DataError("unrecognized interaction kind: " + s);
}

}  // namespace polarlex
