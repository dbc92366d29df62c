// Command-line front end: parses flags into a JobSpec and prints the report.

#include <fstream>
#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "fdeligne/errors.hpp"
#include "fdeligne/jobs.hpp"

namespace {

struct Flags {
  std::string model, file, n, p, e, N, k, family = "point", context = "P1-point", scale = "1";
  std::string format = "table", out;
  int cap = 64;
};

const std::map<std::string, std::string> kHelp = {
    {"validate", "check the Dolbeault identities of a model or file"},
    {"deligne-table", "dimensions of D(A,p) and its homology"},
    {"cone-table", "cone of A^R(p) + F^p A -> A against D(A,p)"},
    {"homotopy-check", "certify psi, phi, h between D(A,p) and the cone"},
    {"duality-check", "adjointness, double dual and the Poincare maps"},
    {"pairing-signs", "sign tables of the form/current pairing (--e: action window)"},
    {"exceptional-duality", "Gram matrices of the exceptional pairing"},
    {"les-check", "long exact sequences for jet supports"},
    {"semipurity", "vanishing scan on the point family"},
    {"green-check", "is omega = scale * delta Green for the cycle"},
    {"star", "star product of the context's Green object with itself"},
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Deligne complexes of finite Dolbeault models"};
  app.require_subcommand(1);
  Flags f;
  for (const auto& name : fdeligne::job_commands()) {
    auto* sub = app.add_subcommand(name, kHelp.at(name));
    sub->add_option("--model", f.model, "point, P1, P2, P3, elliptic, jet:N, dual-jet:N");
    sub->add_option("--file", f.file, "complex description file");
    sub->add_option("--n", f.n, "degree range a..b");
    sub->add_option("--p", f.p, "weight range a..b");
    sub->add_option("--e", f.e, "codimension range a..b");
    sub->add_option("--N", f.N, "jet order range a..b");
    sub->add_option("--k", f.k, "support order range a..b");
    sub->add_option("--family", f.family, "semipurity family");
    sub->add_option("--context", f.context, "P1-point or P2-line");
    sub->add_option("--scale", f.scale, "rational multiple of delta for omega");
    sub->add_option("--format", f.format, "table or json")->check(CLI::IsMember({"table", "json"}));
    sub->add_option("--out", f.out, "output file (default stdout)");
    sub->add_option("--cap", f.cap, "longest accepted range");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return fdeligne::kExitParse;
  }

  fdeligne::JobSpec job;
  job.command = app.get_subcommands().front()->get_name();
  job.model = f.model;
  job.file = f.file;
  job.family = f.family;
  job.context = f.context;
  job.scale = f.scale;
  job.json = f.format == "json";
  job.cap = f.cap;
  try {
    auto range = [](const std::string& s) -> std::optional<fdeligne::Range> {
      if (s.empty()) return std::nullopt;
      return fdeligne::parse_range(s);
    };
    job.n = range(f.n);
    job.p = range(f.p);
    job.e = range(f.e);
    job.N = range(f.N);
    job.k = range(f.k);
  } catch (const fdeligne::Error& e) {
    std::cerr << e.what() << "\n";
    return fdeligne::kExitParse;
  }

  const fdeligne::JobResult res = fdeligne::run(job);
  if (f.out.empty()) {
    std::cout << res.text;
  } else {
    std::ofstream o(f.out);
    if (!o) {
      std::cerr << "cannot write " << f.out << "\n";
      return fdeligne::kExitParse;
    }
    o << res.text;
  }
  return res.status;
}
