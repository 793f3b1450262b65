#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "corpus.hpp"
#include "doctest.h"
#include "json.hpp"
#include "uat/cli.hpp"
#include "uat/export_io.hpp"

using namespace uat;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "uat");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(int(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

/// Value after "label: " on its own line.
std::string field(const std::string& text, const std::string& label) {
  const std::string key = label + ": ";
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    if (line.rfind(key, 0) == 0) return line.substr(key.size());
  }
  FAIL("missing " << label << " in\n" << text);
  return {};
}

const std::vector<std::string> kCompositeFlags = {"--fn", corpus::kComposite, "--a", "0", "--b", "1",
                                                  "--eps", "0.01", "--lipschitz", "6.8549",
                                                  "--sup", "1.05"};

std::vector<std::string> with(std::vector<std::string> head, const std::vector<std::string>& tail) {
  head.insert(head.end(), tail.begin(), tail.end());
  return head;
}

}  // namespace

TEST_CASE("recipe subcommand") {
  const auto r = run({"recipe", "--fn", "x", "--a", "0", "--b", "1", "--eps", "0.2", "--lipschitz", "1",
                      "--sup", "1"});
  CHECK(r.code == kExitOk);
  CHECK(field(r.out, "N") == "51");
  CHECK(field(r.out, "eta") == "0.04");
  CHECK(field(r.out, "M_f") == "1 (supplied)");
  CHECK(field(r.out, "L") == "1 (supplied)");
  CHECK(std::stod(field(r.out, "w")) == doctest::Approx(51 * std::log(50.0)).epsilon(1e-15));

  const auto a = run(with({"recipe"}, kCompositeFlags));
  CHECK(a.code == kExitOk);
  const std::size_t N = std::stoul(field(a.out, "N"));
  CHECK(N >= 6921);
  CHECK(N <= 6927);
  CHECK(std::stod(field(a.out, "w")) == doctest::Approx(double(N) * std::log(double(N - 1))).epsilon(1e-6));

  const auto est = run({"recipe", "--fn", "x", "--a", "0", "--b", "1", "--eps", "0.2"});
  CHECK(est.code == kExitOk);
  CHECK(field(est.out, "M_f").find("(estimated)") != std::string::npos);
  CHECK(field(est.out, "L").find("(estimated)") != std::string::npos);

  const auto j = run({"recipe", "--fn", "x", "--a", "0", "--b", "1", "--eps", "0.2", "--lipschitz", "1",
                      "--sup", "1", "--json"});
  CHECK(j.code == kExitOk);
  const auto doc = nlohmann::json::parse(j.out);
  CHECK(doc.at("N").get<int>() == 51);
  CHECK(doc.at("eta").get<double>() == 0.04);

  const auto v = run({"recipe", "--fn", "x", "--a", "0", "--b", "1", "--eps", "0.5", "--lipschitz", "1",
                      "--sup", "1", "--verbose"});
  CHECK(v.out.find("x_0: ") != std::string::npos);
}

TEST_CASE("exit codes") {
  CHECK(run({"recipe", "--fn", "x", "--a", "0", "--b", "1", "--eps", "0"}).code == kExitUsage);
  CHECK(run({"recipe", "--fn", "x", "--a", "1", "--b", "0", "--eps", "0.1"}).code == kExitUsage);
  CHECK(run({"recipe", "--fn", "x +", "--a", "0", "--b", "1", "--eps", "0.1"}).code == kExitUsage);
  CHECK(run({"recipe", "--fn", "x", "--a", "0", "--eps", "0.1"}).code == kExitUsage);
  CHECK(run({"recipe", "--fn", "x", "--a", "0", "--b", "1", "--eps", "abc"}).code == kExitUsage);
  CHECK(run({}).code == kExitUsage);
  CHECK(run({"bogus"}).code == kExitUsage);
  CHECK(run({"derivative", "--n", "31", "--x", "0"}).code == kExitUsage);
  CHECK(run({"saturation", "--h", "1", "--n", "2"}).code == kExitUsage);
  CHECK(run({"saturation", "--h", "0", "--n", "5"}).code == kExitUsage);
  // ln(x) is undefined on the interval: numeric failure.
  CHECK(run({"recipe", "--fn", "ln(x)", "--a", "-1", "--b", "1", "--eps", "0.1"}).code == kExitNumeric);
  CHECK(run({"recipe", "--fn", "x", "--a", "0", "--b", "1", "--eps", "1e-9", "--lipschitz", "1",
             "--sup", "1"})
            .code == kExitNumeric);
  const auto bad = run({"recipe", "--fn", "x", "--a", "0", "--b", "1", "--eps", "0"});
  CHECK(bad.out.empty());
  CHECK(!bad.err.empty());
  CHECK(run({"--help"}).code == kExitOk);
  CHECK(run({"saturation", "--help"}).code == kExitOk);
}

TEST_CASE("approximate subcommand") {
  const auto dir = std::filesystem::temp_directory_path();
  const auto net = (dir / "uat_cli_net.json").string();
  const auto csv = (dir / "uat_cli_samples.csv").string();
  const auto r = run(with({"approximate"}, with(kCompositeFlags, {"--grid", "20001", "--out-network", net,
                                                                  "--out-samples", csv})));
  CHECK(r.code == kExitOk);
  CHECK(std::stod(field(r.out, "sup error")) < 0.01);
  CHECK(field(r.out, "certificate") == "PASS");

  const auto doc = read_network_document(net);
  CHECK(doc.units.size() == std::stoul(field(r.out, "N")) + 1);
  std::ifstream in(csv);
  std::string line;
  std::size_t lines = 0;
  while (std::getline(in, line)) ++lines;
  CHECK(lines == 1002);
  std::filesystem::remove(net);
  std::filesystem::remove(csv);

  const auto zero = run({"approximate", "--fn", "0", "--a", "0", "--b", "1", "--eps", "0.1"});
  CHECK(zero.code == kExitOk);
  CHECK(field(zero.out, "sup error") == "0");

  // An undersized Lipschitz constant may break the certificate; the
  // measured sup is reported either way.
  const auto low = run({"approximate", "--fn", corpus::kComposite, "--a", "0", "--b", "1", "--eps", "0.01",
                        "--lipschitz", "0.1", "--sup", "1.05"});
  CHECK((low.code == kExitOk || low.code == kExitCertificateFailed));
  CHECK(!field(low.out, "sup error").empty());
  const auto bad = run({"approximate", "--fn", "sin(40*x)", "--a", "0", "--b", "1", "--eps", "0.01",
                        "--lipschitz", "0.01", "--sup", "1"});
  CHECK(bad.code == kExitCertificateFailed);
  CHECK(field(bad.out, "certificate") == "FAIL");

  const auto j = run({"approximate", "--fn", "x", "--a", "0", "--b", "1", "--eps", "0.2", "--lipschitz",
                      "1", "--sup", "1", "--json"});
  const auto parsed = nlohmann::json::parse(j.out);
  CHECK(parsed.at("report").at("pass").get<bool>());
  CHECK(parsed.at("recipe").at("N").get<int>() == 51);
}

TEST_CASE("threads do not change the report") {
  const auto one = run(with({"approximate"}, with(kCompositeFlags, {"--threads", "1"})));
  const auto four = run(with({"approximate"}, with(kCompositeFlags, {"--threads", "4"})));
  CHECK(one.out == four.out);
}

TEST_CASE("output is deterministic") {
  const auto first = run(with({"approximate"}, kCompositeFlags));
  const auto second = run(with({"approximate"}, kCompositeFlags));
  CHECK(first.out == second.out);
  CHECK(run({"derivative", "--n", "7", "--x", "0.3", "--check"}).out ==
        run({"derivative", "--n", "7", "--x", "0.3", "--check"}).out);
}

TEST_CASE("derivative subcommand") {
  CHECK(std::stod(field(run({"derivative", "--n", "1", "--x", "0"}).out, "sigma^(1)(0)")) == 0.25);
  CHECK(std::stod(field(run({"derivative", "--n", "2", "--x", "0"}).out, "sigma^(2)(0)")) == 0.0);
  CHECK(std::stod(field(run({"derivative", "--n", "0", "--x", "0"}).out, "sigma^(0)(0)")) == 0.5);
  const auto c = run({"derivative", "--n", "3", "--x", "0.5", "--check"});
  CHECK(c.code == kExitOk);
  CHECK(std::stod(field(c.out, "relative error")) < 1e-8);
  const auto j = nlohmann::json::parse(run({"derivative", "--n", "1", "--x", "0", "--json"}).out);
  CHECK(j.at("value").get<double>() == 0.25);
}

TEST_CASE("stirling subcommand") {
  CHECK(run({"stirling", "--n", "4", "--k", "2"}).out == "7\n");
  CHECK(run({"stirling", "--n", "0", "--k", "0"}).out == "1\n");
  CHECK(run({"stirling", "--n", "5"}).out == "0,1,15,25,10,1\n");
  CHECK(run({"stirling", "--n", "30", "--k", "15"}).out == "12879868072770626040000\n");
  CHECK(run({"stirling", "--n", "3", "--k", "5"}).out == "0\n");
}

TEST_CASE("saturation subcommand") {
  const auto s = run({"saturation", "--h", "1", "--n", "3"});
  CHECK(s.code == kExitOk);
  CHECK(std::stod(field(s.out, "omega")) == std::log(2.0));
  CHECK(std::stod(field(s.out, "boundary residual 1 - sigma(omega h)")) ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  const auto t = run({"saturation", "--h", "0.5", "--n", "101"});
  CHECK(std::stod(field(t.out, "omega")) == doctest::Approx(9.2103).epsilon(1e-5));
  const auto u = run({"saturation", "--h", "0.0001444043321299639", "--n", "6925"});
  CHECK(std::stod(field(u.out, "omega")) == doctest::Approx(61237).epsilon(1e-4));
  const auto g = run({"saturation", "--h", "1", "--tol", "0.01", "--top", "5", "--bot", "-5"});
  CHECK(std::stod(field(g.out, "omega")) == 5.0);
  CHECK(run({"saturation", "--h", "1"}).code == kExitUsage);
}

TEST_CASE("grammar subcommand") {
  const auto g = run({"grammar"});
  CHECK(g.code == kExitOk);
  CHECK(g.out.find("sqrt") != std::string::npos);
}
