#include "carmforms/format.hpp"

#include <algorithm>
#include <sstream>

namespace carmforms {

std::string format_ratio_3(const Natural& num, const Natural& den) {
  if (den == 0) return "---";
  // round(1000 * num / den) half-up = floor((2000 num + den) / (2 den))
  Natural scaled = (2000 * num + den) / (2 * den);
  Natural whole = scaled / 1000, frac = scaled % 1000;
  std::string f = frac.get_str();
  return whole.get_str() + "." + std::string(3 - f.size(), '0') + f;
}

std::string format_count(std::uint64_t n) { return n == 0 ? "" : std::to_string(n); }

std::string format_limit(std::uint64_t x) {
  std::uint64_t v = x;
  unsigned exp = 0;
  while (v >= 10 && v % 10 == 0) {
    v /= 10;
    ++exp;
  }
  if (v == 1 && exp > 0) return "10^" + std::to_string(exp);
  return std::to_string(x);
}

Natural parse_number(const std::string& text) {
  std::string s;
  s.reserve(text.size());
  for (char c : text)
    if (c != '_') s.push_back(c);
  bool negative = false;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    negative = s.front() == '-';
    s.erase(s.begin());
  }
  if (s.empty()) raise(errc::invalid_input, "empty number literal");

  std::string mantissa = s;
  long exponent = 0;
  if (auto e = s.find_first_of("eE"); e != std::string::npos) {
    mantissa = s.substr(0, e);
    std::string es = s.substr(e + 1);
    if (!es.empty() && es.front() == '+') es.erase(es.begin());
    if (es.empty() || !std::all_of(es.begin(), es.end(), ::isdigit) || es.size() > 9)
      raise(errc::invalid_input, "bad exponent in number literal '" + text + "'");
    exponent = std::stol(es);
  }
  std::string digits_part = mantissa;
  if (auto dot = mantissa.find('.'); dot != std::string::npos) {
    digits_part = mantissa.substr(0, dot) + mantissa.substr(dot + 1);
    exponent -= long(mantissa.size() - dot - 1);
  }
  if (digits_part.empty() || !std::all_of(digits_part.begin(), digits_part.end(), ::isdigit))
    raise(errc::invalid_input, "bad number literal '" + text + "'");

  Natural value(digits_part, 10);
  if (exponent >= 0) {
    Natural pow10;
    mpz_ui_pow_ui(pow10.get_mpz_t(), 10, unsigned(exponent));
    value *= pow10;
  } else {
    Natural pow10;
    mpz_ui_pow_ui(pow10.get_mpz_t(), 10, unsigned(-exponent));
    if (!mpz_divisible_p(value.get_mpz_t(), pow10.get_mpz_t()))
      raise(errc::invalid_input, "number literal '" + text + "' is not an integer");
    value /= pow10;
  }
  return negative ? Natural(-value) : value;
}

std::string format_factorization(const PrimeFactorization& f) {
  if (f.entries.empty()) return f.value.get_str();
  std::string out;
  for (std::size_t i = 0; i < f.entries.size(); ++i) {
    if (i) out += " * ";
    out += f.entries[i].prime.get_str();
    if (f.entries[i].exponent > 1) out += "^" + std::to_string(f.entries[i].exponent);
  }
  return out;
}

std::string format_decomposition(const SDecomposition& d) {
  std::string out;
  for (std::size_t i = 0; i < d.factors.size(); ++i) {
    if (i) out += " * ";
    out += d.factors[i].base.get_str();
    if (d.factors[i].exponent > 1) out += "^" + std::to_string(d.factors[i].exponent);
  }
  return out;
}

std::string render_table(const std::vector<std::string>& header,
                         const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width(header.size());
  for (std::size_t c = 0; c < header.size(); ++c) width[c] = header[c].size();
  for (const auto& row : rows)
    for (std::size_t c = 0; c < row.size() && c < width.size(); ++c)
      width[c] = std::max(width[c], row[c].size());

  std::ostringstream out;
  auto emit = [&](const std::vector<std::string>& row) {
    for (std::size_t c = 0; c < width.size(); ++c) {
      if (c) out << "  ";
      const std::string& cell = c < row.size() ? row[c] : std::string();
      out << std::string(width[c] - cell.size(), ' ') << cell;
    }
    out << "\n";
  };
  emit(header);
  for (const auto& row : rows) emit(row);
  return out.str();
}

std::string csv_line(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (fields[i].find_first_of(",\"\n") != std::string::npos)
      raise(errc::internal_error, "csv field contains a separator");
    if (i) out += ",";
    out += fields[i];
  }
  out += "\n";
  return out;
}

}  // namespace carmforms
