#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include "fdeligne/errors.hpp"
#include "fdeligne/jobs.hpp"

using namespace fdeligne;

namespace {

std::string data(const std::string& f) { return std::string(FDELIGNE_TEST_DATA) + "/" + f; }

JobSpec job(const std::string& cmd, const std::string& model = "") {
  JobSpec j;
  j.command = cmd;
  j.model = model;
  return j;
}

// dim H^n_D(P^d, R(p)) from h^{k,k} = 1: classes in degree 2k for p <= k,
// plus R/(2 pi i)^p R in odd degree 2k+1 for k < p.
int projective_oracle(int d, int n, int p) {
  if (n % 2 == 0) {
    const int k = n / 2;
    return k >= 0 && k <= d && p <= k ? 1 : 0;
  }
  const int k = (n - 1) / 2;
  return k >= 0 && k <= d && k < p ? 1 : 0;
}

}  // namespace

TEST_CASE("ranges") {
  CHECK(parse_range("3").lo == 3);
  CHECK(parse_range("3").hi == 3);
  CHECK(parse_range("-2..4").lo == -2);
  CHECK(parse_range("-2..4").hi == 4);
  for (const char* bad : {"", "..", "1..", "a..2", "3..1", "1...2", "1.5"})
    CHECK_THROWS_AS(parse_range(bad), BadArgument);
}

TEST_CASE("every command runs and is deterministic") {
  for (const auto& cmd : job_commands()) {
    JobSpec j = job(cmd, cmd == "pairing-signs" ? "jet:2" : "P1");
    if (cmd == "les-check") j.N = Range{1, 2};
    for (bool js : {false, true}) {
      j.json = js;
      const JobResult a = run(j), b = run(j);
      INFO(cmd << " json=" << js << "\n" << a.text);
      CHECK(a.text == b.text);
      CHECK(a.status == kExitOk);
      if (js) {
        const auto doc = nlohmann::json::parse(a.text);
        CHECK(doc.at("schema") == 1);
        CHECK(doc.at("command") == cmd);
        CHECK(doc.at("exit") == 0);
        CHECK(doc.at("status") == "PASS");
      }
    }
  }
}

TEST_CASE("deligne-table against the Hodge oracle") {
  for (int d = 1; d <= 3; ++d) {
    JobSpec j = job("deligne-table", "P" + std::to_string(d));
    j.p = Range{-1, d + 1};
    j.n = Range{-1, 2 * d + 2};
    j.json = true;
    const auto doc = nlohmann::json::parse(run(j).text);
    std::map<std::pair<int, int>, int> got;
    for (const auto& row : doc.at("rows"))
      got[{std::stoi(row[0].get<std::string>()), std::stoi(row[1].get<std::string>())}] =
          std::stoi(row[3].get<std::string>());
    for (int p = -1; p <= d + 1; ++p)
      for (int n = -1; n <= 2 * d + 2; ++n) {
        INFO("P" << d << " p=" << p << " n=" << n);
        const auto it = got.find({p, n});
        CHECK((it == got.end() ? 0 : it->second) == projective_oracle(d, n, p));
      }
  }
}

TEST_CASE("exit codes") {
  CHECK(run(job("validate", "P7")).status == kExitParse);
  CHECK(run(job("validate")).status == kExitParse);
  JobSpec f = job("validate");
  f.file = data("bad_shape.cplx");
  CHECK(run(f).status == kExitParse);
  f.file = data("float_entry.cplx");
  CHECK(run(f).status == kExitParse);
  f.file = data("invalid_sigma.cplx");
  CHECK(run(f).status == kExitInvalid);
  f.command = "deligne-table";
  CHECK(run(f).status == kExitInvalid);
  f.file = data("square.cplx");
  CHECK(run(f).status == kExitOk);
  f.command = "validate";
  CHECK(run(f).status == kExitOk);

  JobSpec wide = job("deligne-table", "P1");
  wide.p = Range{0, 1000};
  CHECK(run(wide).status == kExitParse);

  JobSpec bad_order = job("les-check");
  bad_order.N = Range{2, 2};
  bad_order.k = Range{5, 5};
  CHECK(run(bad_order).status == kExitParse);

  CHECK(run(job("no-such-command", "P1")).status == kExitParse);
}

TEST_CASE("green-check verdicts") {
  for (const char* ctx : {"P1-point", "P2-line"}) {
    JobSpec j = job("green-check");
    j.context = ctx;
    j.json = true;
    for (const char* s : {"1", "2", "0", "-1", "1/2"}) {
      j.scale = s;
      const JobResult r = run(j);
      const bool one = std::string(s) == "1";
      INFO(ctx << " scale " << s);
      CHECK(r.status == (one ? kExitOk : kExitCheck));
      const auto doc = nlohmann::json::parse(r.text);
      CHECK(doc.at("exit") == r.status);
    }
    j.scale = "0.5";
    CHECK(run(j).status == kExitParse);
  }
  JobSpec unknown = job("green-check");
  unknown.context = "P9-plane";
  CHECK(run(unknown).status == kExitParse);
}

TEST_CASE("errors are reported in the chosen format") {
  JobSpec j = job("validate", "nowhere");
  j.json = true;
  const JobResult r = run(j);
  const auto doc = nlohmann::json::parse(r.text);
  CHECK(doc.at("exit") == kExitParse);
  CHECK(doc.at("status") == "FAIL");
  CHECK(doc.at("error").get<std::string>().find("UnknownModel") != std::string::npos);
}
