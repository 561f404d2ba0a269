#include "cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
  int status = 0;
  auto config = rwde::cli::parse_command_line(argc, argv, status);
  if (!config) return status;
  const auto outcome = rwde::cli::run(*config);
  if (config->out.empty()) {
    std::cout << outcome.report.dump(2) << "\n";
  } else {
    std::cout << config->command << ": " << (outcome.report["pass"].get<bool>() ? "pass" : "fail") << " (report in "
              << config->out << ")\n";
  }
  if (outcome.report.contains("error")) std::cerr << "error: " << outcome.report["error"]["message"].get<std::string>() << "\n";
  return outcome.status;
}
