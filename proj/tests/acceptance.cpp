#include <CLI11.hpp>
#include <iostream>

#include "suite.hpp"

int main(int argc, char** argv) {
  ffg::cli::SuiteOptions opt;
  std::vector<int> only;
  CLI::App app{"acceptance criteria, one line per criterion"};
  app.add_option("--cli", opt.cli_path, "path of the ffg binary");
  app.add_flag("--slow", opt.slow, "enable criterion 10");
  app.add_flag("--quick", opt.quick, "skip the long scans");
  app.add_option("--only", only, "criteria to run")->delimiter(',');
  app.add_option("--workers", opt.workers)->check(CLI::PositiveNumber);
  CLI11_PARSE(app, argc, argv);
  opt.only.insert(only.begin(), only.end());
  const auto results = ffg::cli::run_suite(opt, std::cout, std::cerr);
  return ffg::cli::suite_passed(results) ? 0 : 1;
}
