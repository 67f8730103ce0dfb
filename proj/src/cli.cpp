#include "copland/cli.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include "copland/epp.hpp"
#include "copland/report.hpp"
#include "copland/syntax.hpp"

namespace copland::cli {

using nlohmann::json;

namespace {

class Style {
 public:
  explicit Style(bool enabled) : enabled_(enabled) {}
  std::string bold(const std::string& s) const { return wrap("1", s); }
  std::string good(const std::string& s) const { return wrap("32", s); }
  std::string bad(const std::string& s) const { return wrap("31", s); }

 private:
  std::string wrap(const char* code, const std::string& s) const {
    return enabled_ ? "\x1b[" + std::string(code) + "m" + s + "\x1b[0m" : s;
  }
  bool enabled_;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string describe(const DataFlowGraph& d, EventId v) {
  const Event& e = d.event(v);
  return e.label.place.name + ':' + kind_text(e.label.kind);
}

std::string join_path(const std::vector<EventId>& ids, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i) out += sep;
    out += std::to_string(ids[i]);
  }
  return out;
}

std::string set_text(const EventSet& s) {
  return '{' + join_path(std::vector<EventId>(s.begin(), s.end()), ", ") + '}';
}

void emit_json(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

void graph_text(std::ostream& out, const DataFlowGraph& d, bool show_evidence, const Style& st) {
  out << st.bold("events") << '\n';
  for (const Event& v : d.events()) {
    out << "  " << v.id << "  " << describe(d, v.id);
    if (v.id == d.input()) out << "  [input]";
    if (v.id == d.output()) out << "  [output]";
    if (show_evidence) out << "\n      " << to_string(v.label.evidence);
    out << '\n';
  }
  out << st.bold("edges") << '\n';
  for (const auto& [a, b] : d.edges()) out << "  " << a << " -> " << b << '\n';
}

EventId require_event(const AnalysisConfig& c, const DataFlowGraph& d) {
  EventId v = *c.target_event;
  d.event(v);  // throws UnknownEvent
  return v;
}

int run_command(const AnalysisConfig& c, std::ostream& out) {
  const TopPhrase top = parse_top(read_file(c.input_path));
  const Style st(c.color && c.format == OutputFormat::Text);

  switch (c.command) {
    case Command::Parse: {
      if (c.format == OutputFormat::Json) {
        emit_json(out, {{"phrase", print_top(top)},
                        {"ast", to_json(top)},
                        {"evidence", to_json(eval_top(top))}});
      } else {
        out << print_top(top) << '\n';
      }
      return kExitOk;
    }
    case Command::Graph: {
      const DataFlowGraph d = graph_of(top);
      if (c.format == OutputFormat::Json) {
        emit_json(out, to_json(d));
      } else if (c.format == OutputFormat::Dot) {
        out << to_dot(d, c.show_evidence);
      } else {
        graph_text(out, d, c.show_evidence, st);
      }
      return kExitOk;
    }
    case Command::Opps: {
      const DataFlowGraph d = graph_of(top);
      const EventId v = require_event(c, d);
      std::map<EventId, Path> witnesses;
      EventSet opps;
      if (c.witness) {
        witnesses = tamper_witnesses(d, v);
        for (const auto& [w, p] : witnesses) opps.insert(w);
      } else {
        opps = tamper_opportunities(d, v);
      }
      if (c.format == OutputFormat::Json) {
        json j = {{"target", v}, {"opportunities", json(std::vector<EventId>(opps.begin(), opps.end()))}};
        if (c.witness) {
          json w = json::object();
          for (const auto& [e, p] : witnesses) w[std::to_string(e)] = p.events;
          j["witnesses"] = w;
        }
        emit_json(out, j);
      } else {
        out << st.bold("target") << ' ' << v << "  " << describe(d, v) << '\n';
        out << st.bold("opportunities") << ' ' << opps.size() << '\n';
        for (EventId w : opps) {
          out << "  " << w << "  " << describe(d, w) << '\n';
          if (c.witness) out << "      via " << join_path(witnesses.at(w).events, " -> ") << '\n';
        }
      }
      return kExitOk;
    }
    case Command::Strategies: {
      const DataFlowGraph d = graph_of(top);
      const EventId v = require_event(c, d);
      const auto strategies = minimal_tamper_strategies(d, v, c.search);
      if (c.format == OutputFormat::Json) {
        json list = json::array();
        for (const auto& s : strategies) {
          list.push_back(std::vector<EventId>(s.members.begin(), s.members.end()));
        }
        emit_json(out, {{"target", v}, {"minimalStrategies", list}});
      } else {
        out << st.bold("target") << ' ' << v << "  " << describe(d, v) << '\n';
        out << st.bold("minimal strategies") << ' ' << strategies.size() << '\n';
        for (const auto& s : strategies) {
          out << "  " << set_text(s.members);
          std::string sep = "  ";
          for (EventId w : s.members) {
            out << sep << describe(d, w);
            sep = ", ";
          }
          out << '\n';
        }
      }
      return kExitOk;
    }
    case Command::Protect: {
      const EppResult r = epp_top_with_diff(top);
      if (c.format == OutputFormat::Json) {
        json j = {{"phrase", print_top(r.phrase)}};
        if (c.diff) j["inserted"] = to_json(r.diff);
        emit_json(out, j);
      } else {
        out << print_top(r.phrase) << '\n';
        if (c.diff) {
          out << st.bold("inserted signatures") << ' ' << r.diff.inserted.size() << '\n';
          for (const auto& ins : r.diff.inserted) {
            std::vector<EventId> p(ins.path.begin(), ins.path.end());
            out << "  path " << (p.empty() ? std::string("<root>") : join_path(p, "."))
                << (ins.side == InsertionSide::BeforeAt ? "  before @" : "  end of @") << '\n';
          }
        }
      }
      return kExitOk;
    }
    case Command::CheckProtected: {
      const DataFlowGraph d = graph_of(top);
      bool ok;
      std::optional<Path> violation;
      if (c.sufficient_only) {
        ok = protected_sufficient(d);
      } else {
        violation = find_unprotected_path(d);
        ok = !violation;
      }
      if (c.format == OutputFormat::Json) {
        json j = {{"protected", ok}, {"exact", !c.sufficient_only}};
        if (violation) j["violatingPath"] = violation->events;
        emit_json(out, j);
      } else {
        out << st.bold("protected") << ' ' << (ok ? st.good("yes") : st.bad("no"));
        if (c.sufficient_only) {
          out << (ok ? "  (sufficient condition holds)" : "  (sufficient condition fails; inconclusive)");
        }
        out << '\n';
        if (violation) out << "  violating path " << join_path(violation->events, " -> ") << '\n';
      }
      return kExitOk;
    }
  }
  return kExitFailure;
}

}  // namespace

int run(const AnalysisConfig& config, std::ostream& out, std::ostream& err) {
  const bool needs_event =
      config.command == Command::Opps || config.command == Command::Strategies;
  if (needs_event && !config.target_event) {
    err << "usage error: an --event id is required\n";
    return kExitUsage;
  }
  try {
    return run_command(config, out);
  } catch (const ParseError& e) {
    err << config.input_path << ':' << e.what() << '\n';
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
  }
  return kExitFailure;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err,
            bool color_capable) {
  CLI::App app{"Tamper analysis and evidence protection for Copland phrases", "copland-tamper"};
  app.require_subcommand(1);

  AnalysisConfig config;
  std::string format = "text";
  std::string search = "descent";
  std::optional<EventId> event;

  struct Spec {
    const char* name;
    Command command;
    const char* help;
  };
  const Spec specs[] = {
      {"parse", Command::Parse, "Print the phrase in canonical form"},
      {"graph", Command::Graph, "Print the data flow graph"},
      {"opps", Command::Opps, "Tamper opportunities for a measurement event"},
      {"strategies", Command::Strategies, "Minimal tamper strategies for a measurement event"},
      {"protect", Command::Protect, "Insert the signatures that protect the phrase"},
      {"check-protected", Command::CheckProtected, "Check whether the data flow graph is protected"},
  };
  std::map<CLI::App*, Command> commands;
  for (const auto& s : specs) {
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    commands[sub] = s.command;
    sub->add_option("file", config.input_path, "Phrase file (.cop)")->required();
    sub->add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"text", "json", "dot"}));
    if (s.command == Command::Opps || s.command == Command::Strategies) {
      sub->add_option("--event", event, "Target event id")->required();
    }
    if (s.command == Command::Graph) {
      sub->add_flag("--show-evidence", config.show_evidence, "Include evidence in node labels");
    }
    if (s.command == Command::Opps) {
      sub->add_flag("--witness", config.witness, "Include one tamper-permitting path per event");
    }
    if (s.command == Command::Strategies) {
      sub->add_option("--search", search, "Search procedure")
          ->check(CLI::IsMember({"descent", "branch"}));
    }
    if (s.command == Command::Protect) {
      sub->add_flag("--diff", config.diff, "Report the inserted signatures");
    }
    if (s.command == Command::CheckProtected) {
      sub->add_flag("--sufficient", config.sufficient_only,
                    "Only check the evidence-based sufficient condition");
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // --help and friends surface as parse errors with a success code.
    if (e.get_exit_code() == static_cast<int>(CLI::ExitCodes::Success)) {
      app.exit(e, out, err);
      return kExitOk;
    }
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }

  for (const auto& [sub, command] : commands) {
    if (sub->parsed()) config.command = command;
  }
  config.target_event = event;
  config.format = format == "json" ? OutputFormat::Json
                  : format == "dot" ? OutputFormat::Dot
                                    : OutputFormat::Text;
  config.search = search == "branch" ? StrategySearch::PathBranching : StrategySearch::Descent;
  if (config.format == OutputFormat::Dot && config.command != Command::Graph) {
    err << "usage error: --format dot is only valid for graph\n";
    return kExitUsage;
  }
  const char* color_env = std::getenv("COPLAND_COLOR");
  const std::string color_mode = color_env ? color_env : "auto";
  if (color_mode != "auto" && color_mode != "never") {
    err << "usage error: COPLAND_COLOR must be 'never' or 'auto'\n";
    return kExitUsage;
  }
  config.color = color_capable && color_mode == "auto";
  return run(config, out, err);
}

}  // namespace copland::cli
