#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include "boltzmann/runner.hpp"

int main(int argc, char** argv)
{
  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    const boltzmann::RunConfig config = boltzmann::parse_config(args);
    return boltzmann::run_experiment(config);
  } catch (const boltzmann::ConfigError& e) {
    std::cerr << "boltzsim: " << e.what() << "\n";
    std::cerr << "boltzsim: run with --help for usage\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "boltzsim: internal error: " << e.what() << "\n";
    return 1;
  }
}
