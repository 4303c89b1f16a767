#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "carmforms/cli.hpp"
#include "carmforms/fixtures.hpp"
#include "carmforms/format.hpp"

using namespace carmforms;
using namespace carmforms::cli;

namespace {

std::string run(auto cmd, const auto& req, const GlobalOptions& opts) {
  std::ostringstream out;
  int code = cmd(req, opts, out);
  REQUIRE(code == 0);
  return out.str();
}

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("parse_number: underscores and scientific shorthand") {
  CHECK(parse_number("1729") == 1729);
  CHECK(parse_number("1_000_000") == 1000000);
  CHECK(parse_number("1e8") == 100000000);
  CHECK(parse_number("2.5e3") == 2500);
  CHECK(parse_number("-12") == -12);
  CHECK(parse_number("37717531166520286365396946681") ==
        Natural("37717531166520286365396946681"));
  CHECK_THROWS_AS(parse_number("2.5e0"), error);
  CHECK_THROWS_AS(parse_number("abc"), error);
  CHECK_THROWS_AS(parse_number(""), error);
  CHECK_THROWS_AS(parse_number("1e"), error);
}

TEST_CASE("format helpers") {
  CHECK(format_ratio_3(9, 9) == "1.000");
  CHECK(format_ratio_3(9, 23) == "0.391");
  CHECK(format_ratio_3(2, 7) == "0.286");
  CHECK(format_ratio_3(4, 12) == "0.333");
  CHECK(format_ratio_3(48, 84) == "0.571");
  CHECK(format_ratio_3(104, 172) == "0.605");
  CHECK(format_ratio_3(19, 47) == "0.404");
  CHECK(format_ratio_3(1, 2) == "0.500");
  CHECK(format_ratio_3(1, 1600) == "0.001");  // 0.000625 rounds half-up to 0.001
  CHECK(format_ratio_3(0, 5) == "0.000");
  CHECK(format_ratio_3(1, 0) == "---");
  CHECK(format_count(0).empty());
  CHECK(format_count(43) == "43");
  CHECK(format_limit(1000000) == "10^6");
  CHECK(format_limit(10) == "10^1");
  CHECK(format_limit(120) == "120");
}

TEST_CASE("parse_limits") {
  CHECK(parse_limits("1e3..1e6") == std::vector<std::uint64_t>{1000, 10000, 100000, 1000000});
  CHECK(parse_limits("100,1e4") == std::vector<std::uint64_t>{100, 10000});
  CHECK_THROWS_AS(parse_limits("5..70"), error);
  CHECK_THROWS_AS(parse_limits(""), error);
}

TEST_CASE("classify: named values across formats") {
  GlobalOptions text;
  ClassifyRequest r1729{Natural(1729), {}};
  auto out = run(cmd_classify, r1729, text);
  CHECK(contains(out, "factorization: 7 * 13 * 19"));
  CHECK(contains(out, "CP: yes"));
  CHECK(contains(out, "SD: yes"));
  CHECK(contains(out, "decomposition: 7 * 13 * 19"));

  ClassifyRequest r561{Natural(561), {}};
  out = run(cmd_classify, r561, text);
  CHECK(contains(out, "CN: yes"));
  CHECK(contains(out, "CP: no"));
  CHECK(contains(out, "H: yes"));

  ClassifyRequest rcs{Natural(954732853), {}};
  out = run(cmd_classify, rcs, text);
  CHECK(contains(out, "CS: yes"));
  CHECK(contains(out, "SL: no"));

  GlobalOptions jsonfmt;
  jsonfmt.format = OutputFormat::json;
  out = run(cmd_classify, r1729, jsonfmt);
  CHECK(contains(out, "\"schema_version\": \"carmichael-forms/1\""));
  CHECK(contains(out, "\"cp\": true"));

  GlobalOptions csvfmt;
  csvfmt.format = OutputFormat::csv;
  out = run(cmd_classify, r1729, csvfmt);
  CHECK(contains(out, "m,factorization,sdg"));
  CHECK(contains(out, "1729,7 * 13 * 19,yes,yes"));
}

TEST_CASE("classify: supplied factorization for large values") {
  ClassifyRequest req;
  req.factors = parse_factor_list({"2^10,3^3,7,13,19,31,37,127"});
  auto out = run(cmd_classify, req, GlobalOptions{});
  CHECK(contains(out, "m: 6963472309248"));
  CHECK(contains(out, "SDG*: yes"));
  CHECK(contains(out, "SD*: no"));

  // wrong factorization is rejected with exit code 2
  ClassifyRequest bad;
  bad.m = Natural(100);
  bad.factors = parse_factor_list({"2,5"});
  std::ostringstream sink;
  CHECK_THROWS_AS(cmd_classify(bad, GlobalOptions{}, sink), error);
}

TEST_CASE("decompose") {
  DecomposeRequest all240{Natural(240), {}, DecompMode::at_least, unlimited_results};
  auto out = run(cmd_decompose, all240, GlobalOptions{});
  CHECK(out ==
        "2 * 3 * 5 * 8\n"
        "2^2 * 3 * 4 * 5\n"
        "2^4 * 3 * 5\n"
        "3 * 4^2 * 5\n");

  DecomposeRequest strict2025{Natural(2025), {}, DecompMode::strict, unlimited_results};
  CHECK(run(cmd_decompose, strict2025, GlobalOptions{}) == "5^2 * 9^2\n");

  DecomposeRequest none{Natural(7), {}, DecompMode::at_least, unlimited_results};
  CHECK(run(cmd_decompose, none, GlobalOptions{}) == "none\n");
}

TEST_CASE("enumerate") {
  EnumerateRequest req;
  req.limit = 10000;
  req.filter = CarmichaelFilter::primary;
  auto out = run(cmd_enumerate, req, GlobalOptions{});
  CHECK(contains(out, "1729"));
  CHECK(contains(out, "2821"));
  CHECK(contains(out, "2 found"));

  GlobalOptions csvfmt;
  csvfmt.format = OutputFormat::csv;
  out = run(cmd_enumerate, req, csvfmt);
  CHECK(contains(out, "m,factorization,n_factors,primary,exceptional"));
  CHECK(contains(out, "1729,7 * 13 * 19,3,yes,no"));

  EnumerateRequest big;
  big.limit = 2'000'000'000;  // beyond the default ceiling
  std::ostringstream sink;
  CHECK_THROWS_AS(cmd_enumerate(big, GlobalOptions{}, sink), error);
}

TEST_CASE("tables: known rows in all formats") {
  TablesRequest t1{1, {1000, 10000, 100000, 1000000}};
  auto out = run(cmd_tables, t1, GlobalOptions{});
  // row 1e6: 43, 23, 9, 9, blank, blank, 1.000, 0.391
  CHECK(contains(out, "10^6"));
  CHECK(contains(out, "0.391"));
  // row 1e3 has undefined ratios
  CHECK(contains(out, "---"));

  GlobalOptions csvfmt;
  csvfmt.format = OutputFormat::csv;
  out = run(cmd_tables, t1, csvfmt);
  CHECK(contains(out, "1000000,43,23,9,9,0,0,1.000,0.391"));

  TablesRequest t2{2, {10, 100, 1000, 10000}};
  out = run(cmd_tables, t2, csvfmt);
  CHECK(contains(out, "10000,2,7,13,477,34,532,1401,8050"));
  CHECK(contains(out, "10,0,0,0,0,0,0,1,1"));

  TablesRequest t4{4, {100000}};
  out = run(cmd_tables, t4, csvfmt);
  CHECK(contains(out, "100000,16,12,4,0,0,0,0,0,0,0"));

  GlobalOptions jsonfmt;
  jsonfmt.format = OutputFormat::json;
  out = run(cmd_tables, t1, jsonfmt);
  CHECK(contains(out, "\"ratio_cp3_c3\": \"0.391\""));
}

TEST_CASE("form command actions") {
  GlobalOptions text;
  FormRequest params{{1, 2, 3}, 0, "params", 3};
  auto out = run(cmd_form, params, text);
  CHECK(contains(out, "(6,11,6,0,1)"));

  FormRequest eval{{1, 2, 3}, 1, "eval", 3};
  out = run(cmd_form, eval, text);
  CHECK(contains(out, "m: 1729"));
  CHECK(contains(out, "verdict: CP3"));

  FormRequest eval225{{1, 2, 7}, 0, "eval", 3};
  out = run(cmd_form, eval225, text);
  CHECK(contains(out, "m: 225"));
  CHECK(contains(out, "factors: 3 * 5 * 15"));
  CHECK(contains(out, "decomposition in SDG: no"));
  CHECK(contains(out, "value in SD: yes, as 5^2 * 9"));

  FormRequest verify{{1, 2, 7}, 1, "verify", 3};
  out = run(cmd_form, verify, text);
  CHECK(contains(out, "factor digit sums: 33, 33, 113"));
  CHECK(contains(out, "decomposition in SDG: yes"));
  CHECK(contains(out, "decomposition in SD: no"));

  FormRequest cong{{1, 2, 5}, 0, "congruences", 3};
  out = run(cmd_form, cong, text);
  CHECK(contains(out, "U(t): 2821"));
  CHECK(contains(out, "all: hold"));

  FormRequest diag{{1, 3, 5}, 0, "diagnostics", 3};
  out = run(cmd_form, diag, text);
  CHECK(contains(out, "vartheta: 9"));

  FormRequest poly{{1, 2, 3}, 1, "polygonal", 3};
  out = run(cmd_form, poly, text);
  CHECK(contains(out, "m = 1729 is 84-gonal with index 7"));

  FormRequest bad{{1, 2, 3}, 1, "nonsense", 3};
  std::ostringstream sink;
  CHECK_THROWS_AS(cmd_form(bad, text, sink), error);
}

TEST_CASE("invert command") {
  InvertRequest req{Natural(6601), {}};
  auto out = run(cmd_invert, req, GlobalOptions{});
  CHECK(contains(out, "r: (3,11,20)"));
  CHECK(contains(out, "t: 0"));
  CHECK(contains(out, "tau: 1"));
  CHECK(contains(out, "CP: no"));

  InvertRequest req2{Natural(3057601), {}};
  out = run(cmd_invert, req2, GlobalOptions{});
  CHECK(contains(out, "r: (1,5,8)"));
  CHECK(contains(out, "t: 1"));
  CHECK(contains(out, "tau: 2"));
}

TEST_CASE("polygonal command") {
  PolygonalRequest value;
  value.h = Natural(6);
  value.n = Natural(66337);
  CHECK(run(cmd_polygonal, value, GlobalOptions{}) == "8801128801\n");

  PolygonalRequest index;
  index.m = Natural(1729);
  index.g = Natural(7);
  CHECK(contains(run(cmd_polygonal, index, GlobalOptions{}), "h = 84"));

  PolygonalRequest neither;
  std::ostringstream sink;
  CHECK_THROWS_AS(cmd_polygonal(neither, GlobalOptions{}, sink), error);
}

TEST_CASE("bernoulli-denom command") {
  std::ostringstream out;
  CHECK(cmd_bernoulli_denom(Natural(6), GlobalOptions{}, out) == 0);
  CHECK(out.str() == "2\n");
}

TEST_CASE("selftest runs the bundled fixtures clean") {
  SelftestRequest req;
  std::ostringstream out;
  int code = cmd_selftest(req, GlobalOptions{}, out);
  CHECK(code == 0);
  CHECK(contains(out.str(), "PASS"));
  CHECK_FALSE(contains(out.str(), "FAIL"));

  SelftestRequest bad;
  bad.suite = "nonsense";
  std::ostringstream sink;
  CHECK_THROWS_AS(cmd_selftest(bad, GlobalOptions{}, sink), error);
}

TEST_CASE("selftest reports failures with exit code 4") {
  // a fixture claiming 561 is primary must fail
  auto results = run_selftest("561;3,11,17;cp=true\n");
  bool found_fail = false;
  for (const auto& r : results)
    if (!r.pass) found_fail = true;
  CHECK(found_fail);

  std::string path = "bad_fixture_tmp.txt";
  {
    std::ofstream f(path);
    f << "561;3,11,17;cp=true\n";
  }
  SelftestRequest req;
  req.fixtures_path = path;
  std::ostringstream out;
  CHECK(cmd_selftest(req, GlobalOptions{}, out) == 4);
  std::remove(path.c_str());

  std::istringstream in("10;2,5;cn=false\n# comment\n561;3,11,17;cp=false,s_profile=p,2p-1,2p-1\n");
  auto recs = parse_fixtures(in);
  REQUIRE(recs.size() == 2);
  CHECK(recs[0].value == 10);
  REQUIRE(recs[1].expectations.size() == 2);
  CHECK(recs[1].expectations[1].first == "s_profile");
  CHECK(recs[1].expectations[1].second == "p,2p-1,2p-1");
}

TEST_CASE("output determinism: identical invocations, identical bytes") {
  GlobalOptions jsonfmt;
  jsonfmt.format = OutputFormat::json;
  TablesRequest req{1, {1000, 10000}};
  CHECK(run(cmd_tables, req, jsonfmt) == run(cmd_tables, req, jsonfmt));
  ClassifyRequest c{Natural(561), {}};
  CHECK(run(cmd_classify, c, jsonfmt) == run(cmd_classify, c, jsonfmt));
}
