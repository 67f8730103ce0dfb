#ifndef COPLAND_CLI_HPP
#define COPLAND_CLI_HPP

#include <optional>
#include <ostream>
#include <string>

#include "copland/dataflow.hpp"
#include "copland/tamper.hpp"

namespace copland::cli {

enum class Command { Parse, Graph, Opps, Strategies, Protect, CheckProtected };
enum class OutputFormat { Text, Json, Dot };

struct AnalysisConfig {
  std::string input_path;
  Command command = Command::Parse;
  std::optional<EventId> target_event;
  OutputFormat format = OutputFormat::Text;
  bool show_evidence = false;
  bool witness = false;
  bool diff = false;
  // check-protected: use only the evidence-based sufficient condition.
  bool sufficient_only = false;
  StrategySearch search = StrategySearch::Descent;
  bool color = false;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

// Runs one command. Returns kExitOk, or kExitFailure with a diagnostic on
// `err` for unreadable input, parse errors and unknown event ids.
int run(const AnalysisConfig& config, std::ostream& out, std::ostream& err);

// Parses the command line and runs it. Usage errors return kExitUsage.
// `color_capable` says whether `out` is a terminal; COPLAND_COLOR=never turns
// colors off regardless.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err,
            bool color_capable);

}  // namespace copland::cli

#endif  // COPLAND_CLI_HPP
