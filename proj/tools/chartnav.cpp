// chartnav: render, navigate, serve and simulate navigable chart descriptions.

#include <pthread.h>
#include <signal.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "chartnav/chart_model.hpp"
#include "chartnav/customization.hpp"
#include "chartnav/error.hpp"
#include "chartnav/hierarchy.hpp"
#include "chartnav/renderer.hpp"
#include "chartnav/service.hpp"
#include "chartnav/session.hpp"

namespace fs = std::filesystem;
using namespace chartnav;

namespace {

struct Options {
  std::string spec;
  std::string data;
  std::string preset;
  std::string settings;
  std::string script;
  std::string out;
  int port = 7878;
};

std::shared_ptr<const HierarchyTree> load_tree(const Options& opt) {
  std::optional<fs::path> data;
  if (!opt.data.empty()) data = opt.data;
  return std::make_shared<const HierarchyTree>(build_hierarchy(load_chart(opt.spec, data)));
}

SettingsState load_state(const Options& opt) {
  SettingsState state;
  if (!opt.settings.empty() && fs::exists(opt.settings)) state = load_settings_file(opt.settings);
  if (!opt.preset.empty()) {
    for (Level level : kPresetLevels) state.apply_preset(level, opt.preset);
  }
  return state;
}

void write_output(const Options& opt, const std::string& text) {
  if (opt.out.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(opt.out, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot write '" + opt.out + "'");
  out << text;
}

int cmd_render(const Options& opt) {
  const auto tree = load_tree(opt);
  write_output(opt, render_tree(*tree, load_state(opt)));
  return 0;
}

std::string acknowledge(const Command& command) {
  if (const auto* f = std::get_if<FocusCommand>(&command)) {
    return "Focused " + std::string(token_info(f->kind).alias);
  }
  if (std::holds_alternative<ClearCommand>(command)) return "Cleared all focuses";
  if (const auto* p = std::get_if<ApplyPresetCommand>(&command)) {
    return std::string(level_title(p->level)) + " preset set to " + p->name;
  }
  return "";
}

int cmd_navigate(const Options& opt) {
  Session session(load_tree(opt), load_state(opt));
  const SettingsState initial = session.settings();
  std::cout << session.current().text << '\n' << std::flush;

  std::string line;
  std::size_t line_number = 0;
  while (std::getline(std::cin, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    if (line.substr(first) == "quit") break;
    try {
      const ScriptStep step = parse_script_line(line, line_number);
      if (const auto* key = std::get_if<NavKey>(&step)) {
        std::cout << session.navigate(*key).text << '\n';
      } else {
        const auto& command = std::get<Command>(step);
        if (auto a = session.apply(command)) {
          std::cout << a->text << '\n';
        } else {
          std::cout << acknowledge(command) << '\n';
        }
      }
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kParseError) {
        std::cerr << "warning: " << e.what() << '\n';
      } else {
        std::cout << e.what() << '\n';
      }
    }
    std::cout.flush();
  }
  if (!opt.settings.empty() && !(session.settings() == initial)) {
    save_settings_file(session.settings(), opt.settings);
  }
  return 0;
}

int cmd_serve(const Options& opt) {
  const auto tree = load_tree(opt);
  const SettingsState state = load_state(opt);

  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  if (opt.port < 0 || opt.port > 65535) throw Error(ErrorCode::kIo, "invalid port");
  TcpServer server([&] { return std::make_unique<SessionService>(tree, state); },
                   static_cast<std::uint16_t>(opt.port));
  std::cout << "listening on 127.0.0.1:" << server.port() << std::endl;

  std::thread waiter([&] {
    int sig = 0;
    sigwait(&signals, &sig);
    server.stop();
  });
  server.run();
  pthread_kill(waiter.native_handle(), SIGTERM);
  waiter.join();
  return 0;
}

int cmd_simulate(const Options& opt) {
  Session session(load_tree(opt), load_state(opt));
  const auto lines = split_lines(read_text_file(opt.script));
  const auto transcript = run_script(session, lines);
  write_output(opt, format_transcript(transcript) + "\n" +
                        format_summary(summarize_actions(session.action_log())));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Navigable, customizable text descriptions of charts"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--spec", opt.spec, "Chart spec JSON file")->required();
    sub->add_option("--data", opt.data, "CSV file replacing the spec's data");
    sub->add_option("--preset", opt.preset, "Preset applied to every level (high, medium, low, ...)");
    sub->add_option("--settings", opt.settings, "Settings JSON file");
  };

  auto* render = app.add_subcommand("render", "Print the description tree");
  add_common(render);
  render->add_option("--out", opt.out, "Write to a file instead of standard output");

  auto* navigate = app.add_subcommand("navigate", "Read keys and commands from standard input");
  add_common(navigate);

  auto* serve = app.add_subcommand("serve", "Run the newline-delimited JSON session service");
  add_common(serve);
  serve->add_option("--port", opt.port, "TCP port on 127.0.0.1 (0 picks one)");

  auto* simulate = app.add_subcommand("simulate", "Run a script and summarize the action log");
  add_common(simulate);
  simulate->add_option("--script", opt.script, "Script file, one key or command per line")->required();
  simulate->add_option("--out", opt.out, "Write to a file instead of standard output");

  CLI11_PARSE(app, argc, argv);

  try {
    if (render->parsed()) return cmd_render(opt);
    if (navigate->parsed()) return cmd_navigate(opt);
    if (serve->parsed()) return cmd_serve(opt);
    if (simulate->parsed()) return cmd_simulate(opt);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
