#pragma once

#include <stdexcept>
#include <string>

namespace polarlex {

enum class Party { Democrat, Republican };
enum class Gender { Female, Male };
enum class Leaning { ProDem, ProRep, Unknown };
enum class InteractionKind { Reply, Mention, Retweet, Original };

inline Party opposing(Party p) {
  return p == Party::Democrat ? Party::Republican : Party::Democrat;
}

// The leaning hostile to a candidate of party p.
inline Leaning opposing_leaning(Party p) {
  return p == Party::Democrat ? Leaning::ProRep : Leaning::ProDem;
}

inline Leaning leaning_for(Party p) {
  return p == Party::Democrat ? Leaning::ProDem : Leaning::ProRep;
}

inline bool opposes(Leaning l, Party p) {
  return l == opposing_leaning(p);
}

std::string to_string(Party p);
std::string to_string(Gender g);
std::string to_string(Leaning l);
std::string to_string(InteractionKind k);

Party parse_party(const std::string& s);
Gender parse_gender(const std::string& s);
Leaning parse_leaning(const std::string& s);
InteractionKind parse_kind(const std::string& s);

// Bad flags, invalid parameters, violated preconditions. CLI exit code 1.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Unusable input data (missing files, malformed beyond tolerance,
// degenerate sets). CLI exit code 2.
struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Missing or stale upstream pipeline artifact. CLI exit code 3.
struct DependencyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace polarlex
