#pragma once

#include <stdexcept>
#include <string>

namespace toric {

enum class Stage { Parse, Pair, Rank, Clustering, Recovery, Internal };

inline const char* stage_name(Stage s) {
  switch (s) {
    case Stage::Parse: return "parse";
    case Stage::Pair: return "pair";
    case Stage::Rank: return "rank";
    case Stage::Clustering: return "clustering";
    case Stage::Recovery: return "recovery";
    case Stage::Internal: return "internal";
  }
  return "internal";
}

/// Process exit code for a failing stage.
inline int exit_code(Stage s) {
  switch (s) {
    case Stage::Parse: return 2;
    case Stage::Pair: return 3;
    case Stage::Rank: return 4;
    case Stage::Clustering: return 5;
    case Stage::Recovery: return 6;
    case Stage::Internal: return 1;
  }
  return 1;
}

/// Pipeline failure tagged with the stage that raised it.
class Error : public std::runtime_error {
 public:
  Error(Stage stage, const std::string& what) : std::runtime_error(what), stage_(stage) {}
  Stage stage() const { return stage_; }

 private:
  Stage stage_;
};

}  // namespace toric
