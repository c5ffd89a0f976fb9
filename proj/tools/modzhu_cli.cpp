/// @file modzhu_cli.cpp
/// @brief Command-line driver: runs one verification suite and writes its report.

#include "modzhu/suites.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>

int main(int argc, char** argv) {
  CLI::App app{"Runs a verification suite and writes a line-delimited JSON report."};
  std::string suite, out, algebra, twist;
  unsigned prime = 0, extension = 0;
  int cutoff = -1;
  app.add_option("--suite", suite, "Suite name")->required()->check(CLI::IsMember(modzhu::suite_names()));
  auto* prime_opt = app.add_option("--prime", prime, "Characteristic p");
  auto* cutoff_opt = app.add_option("--cutoff", cutoff, "Degree cutoff or mode range of the suite");
  app.add_option("--algebra", algebra, "Builtin presentation name or presentation file (jacobi)");
  app.add_option("--twist", twist, "tau, identity, or a 3x3 matrix file (zhu-affine)");
  auto* ext_opt = app.add_option("--field-extension", extension, "Degree k of F_{p^k} (omega, ramond)");
  app.add_option("--out", out, "Report path; the report goes to standard output when omitted");
  CLI11_PARSE(app, argc, argv);

  modzhu::SuiteParameters params;
  if (*prime_opt) params.prime = prime;
  if (*cutoff_opt) params.cutoff = cutoff;
  if (*ext_opt) params.extension = extension;
  params.algebra = algebra;
  params.twist = twist;

  modzhu::Report report;
  try {
    report = modzhu::run_suite(suite, params);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  const std::string text = modzhu::to_jsonl(report);
  if (out.empty()) {
    std::cout << text;
    std::cerr << modzhu::summary(report);
  } else {
    std::ofstream file(out, std::ios::binary);
    if (!file) {
      std::cerr << "error: cannot write " << out << "\n";
      return 2;
    }
    file << text;
    std::cout << modzhu::summary(report);
  }
  return report.passed() ? 0 : 1;
}
