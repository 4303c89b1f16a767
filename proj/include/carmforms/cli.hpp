#pragma once

// Command implementations behind the carmforms executable.  Each command
// takes parsed arguments, writes exactly one deterministic document (text,
// CSV or JSON) to the stream and returns the process exit code.  The
// executable itself only parses argv.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "carmforms/arith.hpp"
#include "carmforms/carmichael.hpp"
#include "carmforms/digit_sets.hpp"
#include "carmforms/forms.hpp"

namespace carmforms::cli {

enum class OutputFormat { text, csv, json };

inline constexpr const char* schema_version = "carmichael-forms/1";

struct GlobalOptions {
  OutputFormat format = OutputFormat::text;
  std::optional<std::uint64_t> limit_max;  // overrides enumeration/sieve ceilings
  unsigned threads = 0;
};

OutputFormat parse_format(const std::string& name);

// "p1,p2,p3" or "p1^e1,p2^e2" tokens.
std::vector<PrimeFactorization::Entry> parse_factor_list(const std::vector<std::string>& tokens);

// Limit lists: comma-separated values, each a number or a power-of-ten
// range like "1e3..1e8".
std::vector<std::uint64_t> parse_limits(const std::string& text);

struct ClassifyRequest {
  std::optional<Natural> m;
  std::vector<PrimeFactorization::Entry> factors;
};
int cmd_classify(const ClassifyRequest&, const GlobalOptions&, std::ostream& out);

struct DecomposeRequest {
  std::optional<Natural> m;
  std::vector<PrimeFactorization::Entry> factors;
  DecompMode mode = DecompMode::at_least;
  std::size_t max_results = 1;  // unlimited_results with --all
};
int cmd_decompose(const DecomposeRequest&, const GlobalOptions&, std::ostream& out);

struct EnumerateRequest {
  std::uint64_t limit = 0;
  CarmichaelFilter filter = CarmichaelFilter::all;
  std::optional<int> n_factors;
};
int cmd_enumerate(const EnumerateRequest&, const GlobalOptions&, std::ostream& out);

struct TablesRequest {
  int which = 1;
  std::vector<std::uint64_t> limits;
};
int cmd_tables(const TablesRequest&, const GlobalOptions&, std::ostream& out);

struct FormRequest {
  Triple r;
  Natural t = 0;
  std::string action = "params";  // params|eval|verify|congruences|diagnostics|polygonal
  int j = 3;                      // diagnostics index
};
int cmd_form(const FormRequest&, const GlobalOptions&, std::ostream& out);

struct InvertRequest {
  std::optional<Natural> m;
  std::vector<PrimeFactorization::Entry> factors;
};
int cmd_invert(const InvertRequest&, const GlobalOptions&, std::ostream& out);

struct PolygonalRequest {
  std::optional<Natural> h, n;  // value query G^h_n
  std::optional<Natural> m, g;  // index query
};
int cmd_polygonal(const PolygonalRequest&, const GlobalOptions&, std::ostream& out);

int cmd_bernoulli_denom(const Natural& n, const GlobalOptions&, std::ostream& out);

struct SelftestRequest {
  std::string suite = "paper-fixtures";
  std::optional<std::string> fixtures_path;
};
int cmd_selftest(const SelftestRequest&, const GlobalOptions&, std::ostream& out);

}  // namespace carmforms::cli
