#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "torusfib/cli.hpp"

namespace cli = torusfib::cli;

int main(int argc, char** argv) {
  CLI::App app{"Circle fibrations of 4-manifolds glued along 3-tori"};
  app.require_subcommand(1);

  std::string format = "text";
  bool quiet = false;
  app.add_option("--format", format, "Output format: text or machine-readable (json)")
      ->check(CLI::IsMember({"text", "json", "machine-readable"}));
  app.add_flag("--quiet", quiet, "Print only the summary line");

  std::string p, q;
  std::optional<std::string> seed;
  auto* surgery = app.add_subcommand("surgery", "Torus surgery on S^1 x unknot with slope p*lambda + q*mu");
  surgery->add_option("p", p, "Coefficient of lambda")->required();
  surgery->add_option("q", q, "Coefficient of mu")->required();
  surgery->add_option("--completion-seed", seed, "Selects the unimodular completion of the gluing");

  std::string file;
  auto* fibration = app.add_subcommand("fibration", "Find a circle fibration of a glued manifold");
  fibration->add_option("file", file, "Manifold description (JSON)")->required();
  auto* homology = app.add_subcommand("homology", "Mayer-Vietoris H1 and Euler characteristic");
  homology->add_option("file", file, "Manifold description (JSON)")->required();

  int max_entry = 1;
  std::string pieces = "torus_times_disk,torus_times_disk";
  auto* enumerate = app.add_subcommand("enumerate", "Tabulate gluings with bounded matrix entries");
  enumerate->add_option("--max-entry", max_entry, "Entry bound N (at most 2)")->required();
  enumerate->add_option("--pieces", pieces, "Piece kinds <kind>,<kind>");

  std::string chi, sigma = "unknown";
  auto* obstruction = app.add_subcommand("check-obstruction", "Test chi = sigma = 0");
  obstruction->add_option("--chi", chi, "Euler characteristic")->required();
  obstruction->add_option("--sigma", sigma, "Signature, or 'unknown'");

  for (auto* sub : {surgery, fibration, homology, enumerate, obstruction}) {
    sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json", "machine-readable"}));
    sub->add_flag("--quiet", quiet, "Print only the summary line");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? cli::kOk : cli::kUsage;
  }

  cli::Options opt;
  opt.format = *cli::format_from_string(format);
  opt.quiet = quiet;

  try {
    if (*surgery) {
      std::optional<std::string_view> s;
      if (seed) s = *seed;
      return cli::cmd_surgery(p, q, s, opt, std::cout, std::cerr);
    }
    if (*fibration) return cli::cmd_fibration(file, opt, std::cout, std::cerr);
    if (*homology) return cli::cmd_homology(file, opt, std::cout, std::cerr);
    if (*enumerate) return cli::cmd_enumerate(max_entry, pieces, opt, std::cout, std::cerr);
    if (*obstruction) return cli::cmd_check_obstruction(chi, sigma, opt, std::cout, std::cerr);
  } catch (const torusfib::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::kInconsistent;
  }
  return cli::kUsage;
}
