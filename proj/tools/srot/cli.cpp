#include "cli.hpp"

#include <algorithm>
#include <ostream>

#include "commands.hpp"
#include "srot/error.hpp"

namespace srot::cli {

namespace {

struct Subcommand {
  CLI::App* app;
  Action action;
};

// Appends "--key=value" for every entry of a --config file whose key is not
// already given on the command line, so explicit flags win.
std::vector<std::string> expand_config(std::vector<std::string> args) {
  std::string path;
  for (std::size_t k = 0; k < args.size(); ++k) {
    if (args[k] == "--config" && k + 1 < args.size()) path = args[k + 1];
    if (args[k].rfind("--config=", 0) == 0) path = args[k].substr(9);
  }
  if (path.empty()) return args;
  auto given = [&](const std::string& key) {
    return std::any_of(args.begin(), args.end(), [&](const std::string& a) {
      return a == "--" + key || a.rfind("--" + key + "=", 0) == 0;
    });
  };
  std::vector<std::string> extra;
  for (const CLI::ConfigItem& item : CLI::ConfigINI().from_file(path)) {
    if (item.name == "--" || given(item.name)) continue;
    std::string value;
    for (const std::string& v : item.inputs) value += (value.empty() ? "" : ",") + v;
    extra.push_back("--" + item.name + "=" + value);
  }
  args.insert(args.end(), extra.begin(), extra.end());
  return args;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Semi-relaxed optimal transport solvers", "srot"};
  app.require_subcommand(1);
  std::vector<Subcommand> commands;
  auto add = [&](const char* name, const char* description, auto setup) {
    CLI::App* sub = app.add_subcommand(name, description);
    sub->add_option("--config", "flat key=value file; flags override it");
    commands.push_back({sub, setup(*sub, out, err)});
  };
  add("solve", "solve one instance", setup_solve);
  add("bench", "run a sweep of lambdas x methods x seeds", setup_bench);
  add("transfer", "color transfer between two PPM images", setup_transfer);
  add("verify", "run the randomized property suite", setup_verify);
  add("report", "aggregate a runs.csv and draw SVG charts", setup_report);

  try {
    std::vector<std::string> args(argv + 1, argv + argc);
    args = expand_config(std::move(args));
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    const auto parsed = app.get_subcommands();
    out << (parsed.empty() ? app.help() : parsed.front()->help());
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    const auto parsed = app.get_subcommands();
    err << "error: " << e.what() << "\n\n" << (parsed.empty() ? app.help() : parsed.front()->help());
    return kExitError;
  }

  for (const Subcommand& c : commands) {
    if (!c.app->parsed()) continue;
    try {
      return c.action();
    } catch (const Error& e) {
      err << "error: " << e.what() << '\n';
      return kExitError;
    } catch (const std::exception& e) {
      err << "error: " << e.what() << '\n';
      return kExitError;
    }
  }
  return kExitError;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"srot"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace srot::cli
