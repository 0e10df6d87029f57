#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "solder/examples.hpp"
#include "solder/script.hpp"

namespace {

int run_text(const std::string& text, bool json, bool verbose) {
  solder::CheckScript script;
  try {
    script = solder::parse_script(text);
  } catch (const solder::EngineError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
  solder::Report report = solder::run_script(script);
  if (json)
    std::cout << solder::report_json(report) << "\n";
  else
    std::cout << solder::report_text(report, verbose);
  return report.exit_code();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mechanical verification of Poisson and Jacobi structures on polynomial charts"};
  app.require_subcommand(0, 1);

  bool json = false;
  bool verbose = false;
  bool list = false;
  app.add_flag("--json", json, "emit the report as JSON");
  app.add_flag("--verbose", verbose, "show every identity line, not only failures");
  app.add_flag("--list-examples", list, "list the bundled example scripts");

  std::string path;
  std::string name;
  CLI::App* check = app.add_subcommand("check", "run a check script from a file");
  check->add_option("file", path, "script path")->required();
  check->fallthrough();
  CLI::App* example = app.add_subcommand("example", "run a bundled example script");
  example->add_option("name", name, "example name")->required();
  example->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (list) {
    for (const auto& [n, description] : solder::builtin_example_names())
      std::cout << n << "  " << description << "\n";
    return 0;
  }
  if (check->parsed()) {
    std::ifstream in(path);
    if (!in) {
      std::cerr << "cannot open '" << path << "'\n";
      return 2;
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return run_text(buffer.str(), json, verbose);
  }
  if (example->parsed()) {
    try {
      return run_text(solder::builtin_example(name), json, verbose);
    } catch (const solder::EngineError& e) {
      std::cerr << e.what() << "\n";
      return 2;
    }
  }
  std::cout << app.help();
  return 2;
}
