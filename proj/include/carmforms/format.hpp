#pragma once

// Deterministic rendering helpers shared by the CLI and the table
// reproduction: exact half-up ratio rounding, the blank-cell convention
// for zero counts, and exact parsing of CLI number literals.

#include <cstdint>
#include <string>
#include <vector>

#include "carmforms/arith.hpp"
#include "carmforms/digit_sets.hpp"

namespace carmforms {

// num/den rounded half-up to three decimals ("0.391", "1.000"); "---" when
// the denominator is zero.  Exact rational arithmetic throughout.
std::string format_ratio_3(const Natural& num, const Natural& den);

// Blank-cell convention used by the distribution tables: zero renders as
// the empty cell.
std::string format_count(std::uint64_t n);

// "10^6" for powers of ten, plain decimal otherwise.
std::string format_limit(std::uint64_t x);

// Exact integer from a CLI literal: plain digits, underscores as grouping
// ("1_000_000") and scientific shorthand ("1e8", "2.5e3").  Anything not
// exactly an integer is rejected.
Natural parse_number(const std::string& text);

// "3 * 11 * 17", "2^10 * 3^3 * ..." in factor order.
std::string format_factorization(const PrimeFactorization& f);
std::string format_decomposition(const SDecomposition& d);

// Right-aligned fixed-width text table.
std::string render_table(const std::vector<std::string>& header,
                         const std::vector<std::vector<std::string>>& rows);

// One CSV line; fields containing separators are not expected and rejected.
std::string csv_line(const std::vector<std::string>& fields);

}  // namespace carmforms
