#pragma once

// Bundled verification fixtures: published set prefixes, the form example
// tables, the inversion tables, the polygonal identities and the large
// values (taxicab numbers and friends) that ship with their stated
// factorizations because they exceed the factorization range.
//
// Fixture file format, one record per line, UTF-8:
//
//   value;p1^e1,p2^e2,...;key=value,key=value,...
//
// '#' starts a comment.  Keys: sdg, sd, slg, sl, sdg_star, sd_star, h, cn,
// cp, cs (true/false) and s_profile, a comma list with one token per prime
// factor, each "p" (digit sum equals p) or "2p-1".

#include <iosfwd>
#include <string>
#include <vector>

#include "carmforms/arith.hpp"

namespace carmforms {

struct FixtureRecord {
  int line = 0;
  Natural value;
  std::vector<PrimeFactorization::Entry> factors;
  std::vector<std::pair<std::string, std::string>> expectations;
};

std::vector<FixtureRecord> parse_fixtures(std::istream& in);

// Contents of the bundled fixture file, compiled in.
const std::string& embedded_fixtures();

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;  // non-empty on failure
};

// Verifies one parsed fixture record: the factorization itself, then every
// expectation against the computed flags.
CheckResult check_fixture(const FixtureRecord& rec);

// The full fixture suite: set prefixes, the form parameter and value
// tables, the two inversion tables, the polygonal identities, the bound
// sharpness equalities and every record of the fixture text.
std::vector<CheckResult> run_selftest(const std::string& fixtures_text);

}  // namespace carmforms
