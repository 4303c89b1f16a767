#include "carmforms/cli.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "carmforms/fixtures.hpp"
#include "carmforms/format.hpp"
#include "carmforms/polygonal.hpp"

namespace carmforms::cli {

namespace {

using json = nlohmann::ordered_json;
using u64 = std::uint64_t;

const char* yesno(bool b) { return b ? "yes" : "no"; }

void emit_json(std::ostream& out, json record) { out << record.dump(2) << "\n"; }

json record_for(const std::string& command, json inputs, json result) {
  json rec;
  rec["schema_version"] = schema_version;
  rec["command"] = command;
  rec["inputs"] = std::move(inputs);
  rec["result"] = std::move(result);
  return rec;
}

json factor_json(const PrimeFactorization& f) {
  json arr = json::array();
  for (const auto& e : f.entries)
    arr.push_back(json{{"prime", e.prime.get_str()}, {"exponent", e.exponent}});
  return arr;
}

// Builds the factorization from -m / --factors; values beyond the
// factorization range must come with explicit factors.
PrimeFactorization resolve_factorization(const std::optional<Natural>& m,
                                         const std::vector<PrimeFactorization::Entry>& factors) {
  if (!factors.empty()) {
    Natural value = 1;
    if (m) {
      value = *m;
    } else {
      for (const auto& e : factors) {
        Natural pe;
        mpz_pow_ui(pe.get_mpz_t(), e.prime.get_mpz_t(), e.exponent);
        value *= pe;
      }
    }
    return verified_factorization(value, factors);
  }
  if (!m) raise(errc::invalid_input, "either a value or --factors is required");
  if (*m < 2) raise(errc::invalid_input, "value must be >= 2");
  return factorize(*m);
}

std::string triple_str(const Triple& r) {
  return "(" + r.r1.get_str() + "," + r.r2.get_str() + "," + r.r3.get_str() + ")";
}

}  // namespace

OutputFormat parse_format(const std::string& name) {
  if (name == "text") return OutputFormat::text;
  if (name == "csv") return OutputFormat::csv;
  if (name == "json") return OutputFormat::json;
  raise(errc::invalid_input, "unknown format '" + name + "'");
}

std::vector<PrimeFactorization::Entry> parse_factor_list(const std::vector<std::string>& tokens) {
  std::vector<PrimeFactorization::Entry> out;
  for (const auto& whole : tokens) {
    std::stringstream ss(whole);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      if (tok.empty()) continue;
      PrimeFactorization::Entry e;
      if (auto caret = tok.find('^'); caret != std::string::npos) {
        e.prime = parse_number(tok.substr(0, caret));
        Natural exp = parse_number(tok.substr(caret + 1));
        if (exp < 1 || !fits_u64(exp) || to_u64(exp) > 1000000)
          raise(errc::invalid_input, "bad exponent in '" + tok + "'");
        e.exponent = unsigned(to_u64(exp));
      } else {
        e.prime = parse_number(tok);
        e.exponent = 1;
      }
      out.push_back(e);
    }
  }
  return out;
}

std::vector<u64> parse_limits(const std::string& text) {
  std::vector<u64> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    if (auto dots = tok.find(".."); dots != std::string::npos) {
      Natural lo = parse_number(tok.substr(0, dots));
      Natural hi = parse_number(tok.substr(dots + 2));
      if (!fits_u64(lo) || !fits_u64(hi) || lo < 1 || hi < lo)
        raise(errc::invalid_input, "bad limit range '" + tok + "'");
      u64 a = to_u64(lo), b = to_u64(hi);
      auto pow10 = [](u64 v) {
        unsigned e = 0;
        while (v >= 10 && v % 10 == 0) {
          v /= 10;
          ++e;
        }
        return v == 1 ? int(e) : -1;
      };
      int ea = pow10(a), eb = pow10(b);
      if (ea < 0 || eb < 0)
        raise(errc::invalid_input, "limit ranges expand powers of ten: '" + tok + "'");
      for (u64 v = a; ; v *= 10) {
        out.push_back(v);
        if (v >= b) break;
      }
    } else {
      Natural v = parse_number(tok);
      if (!fits_u64(v) || v < 1) raise(errc::invalid_input, "bad limit '" + tok + "'");
      out.push_back(to_u64(v));
    }
  }
  if (out.empty()) raise(errc::invalid_input, "no limits given");
  return out;
}

int cmd_classify(const ClassifyRequest& req, const GlobalOptions& opts, std::ostream& out) {
  auto f = resolve_factorization(req.m, req.factors);
  auto rec = classify_sets(f);
  bool cn = is_carmichael(f);
  bool cp = is_primary_carmichael(f);
  bool cs = is_exceptional(f);

  std::string witness = rec.witness ? rec.witness->get_str() : "";
  std::string decomp = rec.decomposition ? format_decomposition(*rec.decomposition) : "";

  switch (opts.format) {
    case OutputFormat::text:
      out << "m: " << f.value.get_str() << "\n";
      out << "factorization: " << format_factorization(f) << "\n";
      out << "SDG: " << yesno(rec.sdg) << "\n";
      out << "SD: " << yesno(rec.sd) << "\n";
      out << "SLG: " << yesno(rec.slg) << "\n";
      out << "SL: " << yesno(rec.sl) << "\n";
      out << "SDG*: " << yesno(rec.sdg_star) << "\n";
      out << "SD*: " << yesno(rec.sd_star) << "\n";
      out << "H: " << yesno(rec.h) << "\n";
      out << "CN: " << yesno(cn) << "\n";
      out << "CP: " << yesno(cp) << "\n";
      out << "CS: " << yesno(cs) << "\n";
      out << "witness: " << (witness.empty() ? "-" : witness) << "\n";
      out << "decomposition: " << (decomp.empty() ? "-" : decomp) << "\n";
      break;
    case OutputFormat::csv:
      out << csv_line({"m", "factorization", "sdg", "sd", "slg", "sl", "sdg_star", "sd_star",
                       "h", "cn", "cp", "cs", "witness", "decomposition"});
      out << csv_line({f.value.get_str(), format_factorization(f), yesno(rec.sdg),
                       yesno(rec.sd), yesno(rec.slg), yesno(rec.sl), yesno(rec.sdg_star),
                       yesno(rec.sd_star), yesno(rec.h), yesno(cn), yesno(cp), yesno(cs),
                       witness, decomp});
      break;
    case OutputFormat::json: {
      json result;
      result["m"] = f.value.get_str();
      result["factorization"] = factor_json(f);
      result["sdg"] = rec.sdg;
      result["sd"] = rec.sd;
      result["slg"] = rec.slg;
      result["sl"] = rec.sl;
      result["sdg_star"] = rec.sdg_star;
      result["sd_star"] = rec.sd_star;
      result["h"] = rec.h;
      result["cn"] = cn;
      result["cp"] = cp;
      result["cs"] = cs;
      result["witness"] = witness.empty() ? json() : json(witness);
      result["decomposition"] = decomp.empty() ? json() : json(decomp);
      emit_json(out, record_for("classify", json{{"m", f.value.get_str()}}, result));
      break;
    }
  }
  return 0;
}

int cmd_decompose(const DecomposeRequest& req, const GlobalOptions& opts, std::ostream& out) {
  auto f = resolve_factorization(req.m, req.factors);
  auto list = s_decompositions(f, req.mode, req.max_results);
  const char* mode_name = req.mode == DecompMode::strict ? "strict" : "at-least";

  switch (opts.format) {
    case OutputFormat::text:
      if (list.empty()) {
        out << "none\n";
      } else {
        for (const auto& d : list) out << format_decomposition(d) << "\n";
      }
      break;
    case OutputFormat::csv:
      out << csv_line({"index", "decomposition"});
      for (std::size_t i = 0; i < list.size(); ++i)
        out << csv_line({std::to_string(i + 1), format_decomposition(list[i])});
      break;
    case OutputFormat::json: {
      json arr = json::array();
      for (const auto& d : list) {
        json factors = json::array();
        for (const auto& factor : d.factors)
          factors.push_back(json{{"base", factor.base.get_str()}, {"exponent", factor.exponent}});
        arr.push_back(factors);
      }
      emit_json(out, record_for("decompose",
                                json{{"m", f.value.get_str()}, {"mode", mode_name}},
                                json{{"decompositions", arr}}));
      break;
    }
  }
  return 0;
}

namespace {

EnumerateOptions enum_options(u64 limit, const GlobalOptions& opts) {
  EnumerateOptions eo;
  eo.limit = limit;
  eo.threads = opts.threads;
  if (opts.limit_max) eo.max_limit = *opts.limit_max;
  return eo;
}

const char* filter_name(CarmichaelFilter f) {
  switch (f) {
    case CarmichaelFilter::all: return "all";
    case CarmichaelFilter::primary: return "primary";
    case CarmichaelFilter::exceptional: return "exceptional";
  }
  return "all";
}

}  // namespace

int cmd_enumerate(const EnumerateRequest& req, const GlobalOptions& opts, std::ostream& out) {
  EnumerateOptions eo = enum_options(req.limit, opts);
  eo.filter = req.filter;
  eo.n_factors = req.n_factors;
  auto recs = enumerate_carmichael(eo);

  switch (opts.format) {
    case OutputFormat::text: {
      std::vector<std::vector<std::string>> rows;
      for (const auto& r : recs)
        rows.push_back({r.m.get_str(), format_factorization(r.factorization),
                        std::to_string(r.n_factors), yesno(r.primary), yesno(r.exceptional)});
      out << render_table({"m", "factorization", "n", "primary", "exceptional"}, rows);
      out << recs.size() << " found\n";
      break;
    }
    case OutputFormat::csv:
      out << csv_line({"m", "factorization", "n_factors", "primary", "exceptional"});
      for (const auto& r : recs)
        out << csv_line({r.m.get_str(), format_factorization(r.factorization),
                         std::to_string(r.n_factors), yesno(r.primary), yesno(r.exceptional)});
      break;
    case OutputFormat::json: {
      json arr = json::array();
      for (const auto& r : recs) {
        arr.push_back(json{{"m", r.m.get_str()},
                           {"factorization", factor_json(r.factorization)},
                           {"n_factors", r.n_factors},
                           {"primary", r.primary},
                           {"exceptional", r.exceptional}});
      }
      emit_json(out, record_for("enumerate",
                                json{{"limit", std::to_string(req.limit)},
                                     {"filter", filter_name(req.filter)}},
                                json{{"count", recs.size()}, {"records", arr}}));
      break;
    }
  }
  return 0;
}

namespace {

struct TableDoc {
  std::vector<std::string> header;               // text/csv column names
  std::vector<std::string> keys;                 // json keys, same order
  std::vector<std::vector<std::string>> text;    // blank-cell convention
  std::vector<std::vector<std::string>> machine; // explicit zeros
};

TableDoc build_table(int which, const std::vector<u64>& limits, const GlobalOptions& opts) {
  TableDoc doc;
  u64 max_limit = *std::max_element(limits.begin(), limits.end());

  std::vector<DistributionRow> rows = distribution_table(limits, enum_options(max_limit, opts));

  auto push = [&](std::vector<std::string>& text_row, std::vector<std::string>& machine_row,
                  u64 count) {
    text_row.push_back(format_count(count));
    machine_row.push_back(std::to_string(count));
  };

  if (which == 1) {
    doc.header = {"x",      "C(x)",   "C3(x)",  "C'(x)",     "C'3(x)",
                  "C'4(x)", "C'5(x)", "C'3/C'", "C'3/C3"};
    doc.keys = {"x", "c", "c3", "cp", "cp3", "cp4", "cp5", "ratio_cp3_cp", "ratio_cp3_c3"};
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const auto& r = rows[i];
      std::vector<std::string> t{format_limit(limits[i])}, m{std::to_string(limits[i])};
      push(t, m, r.c);
      push(t, m, r.c_n[3]);
      push(t, m, r.cp);
      push(t, m, r.cp_n[3]);
      push(t, m, r.cp_n[4]);
      push(t, m, r.cp_n[5]);
      // ratio cells stay dashed until primary values appear
      std::string r1 = r.cp == 0 ? "---" : format_ratio_3(Natural(r.cp_n[3]), Natural(r.cp));
      std::string r2 = r.cp == 0 ? "---" : format_ratio_3(Natural(r.cp_n[3]), Natural(r.c_n[3]));
      t.push_back(r1);
      t.push_back(r2);
      m.push_back(r1);
      m.push_back(r2);
      doc.text.push_back(t);
      doc.machine.push_back(m);
    }
    return doc;
  }

  if (which == 3 || which == 4) {
    const bool exceptional = which == 3;
    doc.header = {"x", exceptional ? "C#(x)" : "C(x)"};
    doc.keys = {"x", exceptional ? "cs" : "c"};
    for (int n = exceptional ? 4 : 3; n <= 11; ++n) {
      doc.header.push_back((exceptional ? "C#" : "C") + std::to_string(n) + "(x)");
      doc.keys.push_back((exceptional ? "cs" : "c") + std::to_string(n));
    }
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const auto& r = rows[i];
      std::vector<std::string> t{format_limit(limits[i])}, m{std::to_string(limits[i])};
      push(t, m, exceptional ? r.cs : r.c);
      for (int n = exceptional ? 4 : 3; n <= 11; ++n)
        push(t, m, exceptional ? r.cs_n[n] : r.c_n[n]);
      doc.text.push_back(t);
      doc.machine.push_back(m);
    }
    return doc;
  }

  if (which != 2) raise(errc::invalid_input, "tables: --which must be 1, 2, 3 or 4");

  // table 2 joins the Carmichael counters with the digit-sum set counters
  SetSieve sieve(max_limit, opts.threads,
                 opts.limit_max ? *opts.limit_max : SetSieve::default_max_limit);
  doc.header = {"x", "C'(x)", "C(x)", "S*'(x)", "S*(x)", "S'(x)", "S(x)", "Sbar'(x)", "Sbar(x)"};
  doc.keys = {"x", "cp", "c", "s_star_prime", "s_star", "s_prime", "s", "s_bar_prime", "s_bar"};
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    auto counts = sieve.counts_below(limits[i]);
    std::vector<std::string> t{format_limit(limits[i])}, m{std::to_string(limits[i])};
    push(t, m, r.cp);
    push(t, m, r.c);
    push(t, m, counts.sd_star);
    push(t, m, counts.sdg_star);
    push(t, m, counts.sd);
    push(t, m, counts.sdg);
    push(t, m, counts.sl);
    push(t, m, counts.slg);
    doc.text.push_back(t);
    doc.machine.push_back(m);
  }
  return doc;
}

}  // namespace

int cmd_tables(const TablesRequest& req, const GlobalOptions& opts, std::ostream& out) {
  if (req.limits.empty()) raise(errc::invalid_input, "tables: no limits given");
  TableDoc doc = build_table(req.which, req.limits, opts);

  switch (opts.format) {
    case OutputFormat::text:
      out << render_table(doc.header, doc.text);
      break;
    case OutputFormat::csv:
      out << csv_line(doc.header);
      for (const auto& row : doc.machine) out << csv_line(row);
      break;
    case OutputFormat::json: {
      json arr = json::array();
      for (const auto& row : doc.machine) {
        json obj;
        for (std::size_t c = 0; c < doc.keys.size(); ++c) obj[doc.keys[c]] = row[c];
        arr.push_back(obj);
      }
      emit_json(out, record_for("tables", json{{"which", req.which}}, json{{"rows", arr}}));
      break;
    }
  }
  return 0;
}

namespace {

const char* verdict_name(FormVerdict v) {
  switch (v) {
    case FormVerdict::cp3: return "CP3";
    case FormVerdict::cn3_not_cp3: return "CN3 not CP3";
    case FormVerdict::not_all_prime: return "not all factors odd primes";
  }
  return "";
}

const char* case_name(StrictnessCase c) {
  switch (c) {
    case StrictnessCase::above_tau: return "t >= tau";
    case StrictnessCase::t1_below_tau: return "t = 1 < tau";
    case StrictnessCase::t0: return "t = 0";
    case StrictnessCase::degenerate: return "degenerate (m = 1)";
  }
  return "";
}

// Full factorization of the form value via its three factors, when they
// are all within the factorization range.
std::optional<PrimeFactorization> value_factorization(const FormValue& v) {
  std::vector<PrimeFactorization::Entry> entries;
  for (const auto& g : v.factors) {
    if (g < 2) return std::nullopt;
    if (!fits_u64(g)) return std::nullopt;
    auto f = factorize(g);
    entries.insert(entries.end(), f.entries.begin(), f.entries.end());
  }
  return verified_factorization(v.m, entries);
}

void kv(std::ostream& out, const std::string& key, const std::string& value) {
  out << key << ": " << value << "\n";
}

}  // namespace

int cmd_form(const FormRequest& req, const GlobalOptions& opts, std::ostream& out) {
  const std::string& action = req.action;
  json inputs{{"r", triple_str(req.r)}, {"t", req.t.get_str()}, {"action", action}};

  if (action == "params") {
    auto p = form_params(req.r);
    json result{{"sigma1", p.sigma1.get_str()}, {"sigma2", p.sigma2.get_str()},
                {"sigma3", p.sigma3.get_str()}, {"ell", p.ell.get_str()},
                {"tau", p.tau}};
    json coeffs = json::array();
    for (int nu = 1; nu <= 3; ++nu)
      coeffs.push_back(json{{"a", p.coeff_a(nu).get_str()}, {"b", p.coeff_b(nu).get_str()}});
    result["factors"] = coeffs;
    switch (opts.format) {
      case OutputFormat::text:
        kv(out, "r", triple_str(req.r));
        kv(out, "(sigma1,sigma2,sigma3,ell,tau)",
           "(" + p.sigma1.get_str() + "," + p.sigma2.get_str() + "," + p.sigma3.get_str() + "," +
               p.ell.get_str() + "," + std::to_string(p.tau) + ")");
        for (int nu = 1; nu <= 3; ++nu)
          kv(out, "factor " + std::to_string(nu),
             p.coeff_a(nu).get_str() + "*t + " + p.coeff_b(nu).get_str());
        break;
      case OutputFormat::csv:
        out << csv_line({"sigma1", "sigma2", "sigma3", "ell", "tau"});
        out << csv_line({p.sigma1.get_str(), p.sigma2.get_str(), p.sigma3.get_str(),
                         p.ell.get_str(), std::to_string(p.tau)});
        break;
      case OutputFormat::json:
        emit_json(out, record_for("form", inputs, result));
        break;
    }
    return 0;
  }

  if (action == "eval") {
    auto check = primary_form_check(req.r, req.t);
    const FormValue& v = check.value;
    auto vf = value_factorization(v);
    std::optional<bool> value_in_sd;
    std::optional<SDecomposition> strict;
    if (vf) {
      auto list = s_decompositions(*vf, DecompMode::strict, 1);
      value_in_sd = !list.empty();
      if (!list.empty()) strict = list.front();
    }
    switch (opts.format) {
      case OutputFormat::text: {
        kv(out, "m", v.m.get_str());
        kv(out, "factors",
           v.factors[0].get_str() + " * " + v.factors[1].get_str() + " * " +
               v.factors[2].get_str());
        kv(out, "all odd primes", yesno(v.all_odd_prime));
        kv(out, "verdict", verdict_name(check.verdict));
        auto rep = verify_strictness(req.r, req.t);
        if (rep.kind != StrictnessCase::degenerate) {
          kv(out, "factor digit sums",
             rep.factor_digit_sums[0].get_str() + ", " + rep.factor_digit_sums[1].get_str() +
                 ", " + rep.factor_digit_sums[2].get_str());
          kv(out, "decomposition in SDG", yesno(rep.decomposition_in_sdg));
          kv(out, "decomposition in SD", yesno(rep.decomposition_in_sd));
        } else {
          kv(out, "case", case_name(rep.kind));
        }
        if (value_in_sd)
          kv(out, "value in SD",
             *value_in_sd ? "yes, as " + format_decomposition(*strict) : std::string("no"));
        break;
      }
      case OutputFormat::csv:
        out << csv_line({"m", "g1", "g2", "g3", "all_odd_prime", "verdict"});
        out << csv_line({v.m.get_str(), v.factors[0].get_str(), v.factors[1].get_str(),
                         v.factors[2].get_str(), yesno(v.all_odd_prime),
                         verdict_name(check.verdict)});
        break;
      case OutputFormat::json: {
        json result{{"m", v.m.get_str()},
                    {"factors", json::array({v.factors[0].get_str(), v.factors[1].get_str(),
                                             v.factors[2].get_str()})},
                    {"all_odd_prime", v.all_odd_prime},
                    {"verdict", verdict_name(check.verdict)}};
        result["value_in_sd"] = value_in_sd ? json(*value_in_sd) : json();
        emit_json(out, record_for("form", inputs, result));
        break;
      }
    }
    return 0;
  }

  if (action == "verify") {
    auto rep = verify_strictness(req.r, req.t);
    json result{{"case", case_name(rep.kind)},
                {"m", rep.value.m.get_str()},
                {"tau", rep.params.tau}};
    if (rep.kind != StrictnessCase::degenerate) {
      result["digit_sums"] =
          json::array({rep.factor_digit_sums[0].get_str(), rep.factor_digit_sums[1].get_str(),
                       rep.factor_digit_sums[2].get_str()});
      result["decomposition_in_sdg"] = rep.decomposition_in_sdg;
      result["decomposition_in_sd"] = rep.decomposition_in_sd;
    }
    switch (opts.format) {
      case OutputFormat::text:
        kv(out, "case", case_name(rep.kind));
        kv(out, "m", rep.value.m.get_str());
        kv(out, "tau", std::to_string(rep.params.tau));
        if (rep.kind != StrictnessCase::degenerate) {
          kv(out, "factors",
             rep.value.factors[0].get_str() + " * " + rep.value.factors[1].get_str() + " * " +
                 rep.value.factors[2].get_str());
          kv(out, "factor digit sums",
             rep.factor_digit_sums[0].get_str() + ", " + rep.factor_digit_sums[1].get_str() +
                 ", " + rep.factor_digit_sums[2].get_str());
          kv(out, "decomposition in SDG", yesno(rep.decomposition_in_sdg));
          kv(out, "decomposition in SD", yesno(rep.decomposition_in_sd));
        }
        break;
      case OutputFormat::csv:
        out << csv_line({"case", "m", "tau", "s1", "s2", "s3", "in_sdg", "in_sd"});
        if (rep.kind == StrictnessCase::degenerate) {
          out << csv_line({case_name(rep.kind), rep.value.m.get_str(),
                           std::to_string(rep.params.tau), "", "", "", "", ""});
        } else {
          out << csv_line({case_name(rep.kind), rep.value.m.get_str(),
                           std::to_string(rep.params.tau), rep.factor_digit_sums[0].get_str(),
                           rep.factor_digit_sums[1].get_str(),
                           rep.factor_digit_sums[2].get_str(),
                           yesno(rep.decomposition_in_sdg), yesno(rep.decomposition_in_sd)});
        }
        break;
      case OutputFormat::json:
        emit_json(out, record_for("form", inputs, result));
        break;
    }
    return 0;
  }

  if (action == "congruences") {
    auto rep = congruence_checks(req.r, req.t);
    switch (opts.format) {
      case OutputFormat::text:
        kv(out, "U(t)", rep.value.get_str());
        for (const auto& c : rep.checks) kv(out, c.label, c.holds ? "holds" : "FAILS");
        kv(out, "all", rep.all_hold ? "hold" : "FAIL");
        break;
      case OutputFormat::csv:
        out << csv_line({"check", "holds"});
        for (const auto& c : rep.checks) out << csv_line({c.label, yesno(c.holds)});
        break;
      case OutputFormat::json: {
        json checks = json::array();
        for (const auto& c : rep.checks)
          checks.push_back(json{{"label", c.label}, {"holds", c.holds}});
        emit_json(out, record_for("form", inputs,
                                  json{{"value", rep.value.get_str()},
                                       {"checks", checks},
                                       {"all_hold", rep.all_hold}}));
        break;
      }
    }
    return 0;
  }

  if (action == "diagnostics") {
    auto d = form_diagnostics(req.r, req.j, req.t);
    json result{{"j", d.j},
                {"alpha", d.alpha.get_str()},
                {"beta", d.beta.get_str()},
                {"theta", d.theta.get_str()},
                {"eta", d.eta.get_str()}};
    result["vartheta"] = d.vartheta ? json(d.vartheta->get_str()) : json();
    switch (opts.format) {
      case OutputFormat::text:
        kv(out, "j", std::to_string(d.j));
        kv(out, "alpha", d.alpha.get_str());
        kv(out, "beta", d.beta.get_str());
        kv(out, "theta", d.theta.get_str());
        kv(out, "eta", d.eta.get_str());
        if (d.vartheta) kv(out, "vartheta", d.vartheta->get_str());
        break;
      case OutputFormat::csv:
        out << csv_line({"j", "alpha", "beta", "theta", "eta", "vartheta"});
        out << csv_line({std::to_string(d.j), d.alpha.get_str(), d.beta.get_str(),
                         d.theta.get_str(), d.eta.get_str(),
                         d.vartheta ? d.vartheta->get_str() : ""});
        break;
      case OutputFormat::json:
        emit_json(out, record_for("form", inputs, result));
        break;
    }
    return 0;
  }

  if (action == "polygonal") {
    switch (opts.format) {
      case OutputFormat::text:
        for (int nu = 1; nu <= 3; ++nu) {
          auto w = form_polygonal_params(req.r, req.t, nu);
          out << "nu " << nu << ": m = " << w.m.get_str() << " is " << w.h.get_str()
              << "-gonal with index " << w.g.get_str() << " (c = " << w.c.get_str()
              << ", d = " << w.d.get_str() << ")\n";
        }
        break;
      case OutputFormat::csv:
        out << csv_line({"nu", "m", "g", "h", "c", "d"});
        for (int nu = 1; nu <= 3; ++nu) {
          auto w = form_polygonal_params(req.r, req.t, nu);
          out << csv_line({std::to_string(nu), w.m.get_str(), w.g.get_str(), w.h.get_str(),
                           w.c.get_str(), w.d.get_str()});
        }
        break;
      case OutputFormat::json: {
        json arr = json::array();
        for (int nu = 1; nu <= 3; ++nu) {
          auto w = form_polygonal_params(req.r, req.t, nu);
          arr.push_back(json{{"nu", nu},
                             {"m", w.m.get_str()},
                             {"g", w.g.get_str()},
                             {"h", w.h.get_str()},
                             {"c", w.c.get_str()},
                             {"d", w.d.get_str()}});
        }
        emit_json(out, record_for("form", inputs, json{{"witnesses", arr}}));
        break;
      }
    }
    return 0;
  }

  raise(errc::invalid_input, "unknown form action '" + action + "'");
}

int cmd_invert(const InvertRequest& req, const GlobalOptions& opts, std::ostream& out) {
  auto f = resolve_factorization(req.m, req.factors);
  auto inv = invert_carmichael3(f);
  bool cp = is_primary_carmichael(f);

  switch (opts.format) {
    case OutputFormat::text:
      kv(out, "m", f.value.get_str());
      kv(out, "r", triple_str(inv.params.r));
      kv(out, "u", inv.u.get_str());
      kv(out, "t", inv.t.get_str());
      kv(out, "tau", std::to_string(inv.params.tau));
      kv(out, "CP", yesno(cp));
      break;
    case OutputFormat::csv:
      out << csv_line({"m", "r1", "r2", "r3", "u", "t", "tau", "cp"});
      out << csv_line({f.value.get_str(), inv.params.r.r1.get_str(), inv.params.r.r2.get_str(),
                       inv.params.r.r3.get_str(), inv.u.get_str(), inv.t.get_str(),
                       std::to_string(inv.params.tau), yesno(cp)});
      break;
    case OutputFormat::json:
      emit_json(out, record_for("invert", json{{"m", f.value.get_str()}},
                                json{{"r",
                                      json::array({inv.params.r.r1.get_str(),
                                                   inv.params.r.r2.get_str(),
                                                   inv.params.r.r3.get_str()})},
                                     {"u", inv.u.get_str()},
                                     {"t", inv.t.get_str()},
                                     {"tau", inv.params.tau},
                                     {"cp", cp}}));
      break;
  }
  return 0;
}

int cmd_polygonal(const PolygonalRequest& req, const GlobalOptions& opts, std::ostream& out) {
  const bool value_query = req.h && req.n;
  const bool index_query = req.m && req.g;
  if (value_query == index_query)
    raise(errc::invalid_input, "polygonal: give either --h and --n, or --m and --g");

  if (value_query) {
    mpz_class v = polygonal_number(*req.h, *req.n);
    switch (opts.format) {
      case OutputFormat::text:
        out << v.get_str() << "\n";
        break;
      case OutputFormat::csv:
        out << csv_line({"h", "n", "value"});
        out << csv_line({req.h->get_str(), req.n->get_str(), v.get_str()});
        break;
      case OutputFormat::json:
        emit_json(out, record_for("polygonal",
                                  json{{"h", req.h->get_str()}, {"n", req.n->get_str()}},
                                  json{{"value", v.get_str()}}));
        break;
    }
    return 0;
  }

  auto idx = polygonal_index(*req.m, *req.g);
  const char* kind = idx.kind == PolygonalCase::m_equals_g   ? "m = g"
                     : idx.kind == PolygonalCase::base_two   ? "g = 2"
                     : idx.kind == PolygonalCase::divides    ? "divides"
                                                             : "none";
  switch (opts.format) {
    case OutputFormat::text:
      if (idx.h)
        out << "h = " << idx.h->get_str() << " (" << kind << ")\n";
      else
        out << "not polygonal with index " << req.g->get_str() << "\n";
      break;
    case OutputFormat::csv:
      out << csv_line({"m", "g", "h", "case"});
      out << csv_line({req.m->get_str(), req.g->get_str(), idx.h ? idx.h->get_str() : "", kind});
      break;
    case OutputFormat::json:
      emit_json(out, record_for("polygonal",
                                json{{"m", req.m->get_str()}, {"g", req.g->get_str()}},
                                json{{"h", idx.h ? json(idx.h->get_str()) : json()},
                                     {"case", kind}}));
      break;
  }
  return 0;
}

int cmd_bernoulli_denom(const Natural& n, const GlobalOptions& opts, std::ostream& out) {
  Natural d = bernoulli_denominator(n);
  switch (opts.format) {
    case OutputFormat::text:
      out << d.get_str() << "\n";
      break;
    case OutputFormat::csv:
      out << csv_line({"n", "denominator"});
      out << csv_line({n.get_str(), d.get_str()});
      break;
    case OutputFormat::json:
      emit_json(out, record_for("bernoulli-denom", json{{"n", n.get_str()}},
                                json{{"denominator", d.get_str()}}));
      break;
  }
  return 0;
}

int cmd_selftest(const SelftestRequest& req, const GlobalOptions& opts, std::ostream& out) {
  if (req.suite != "paper-fixtures")
    raise(errc::invalid_input, "unknown selftest suite '" + req.suite + "'");
  std::string text;
  if (req.fixtures_path) {
    std::ifstream in(*req.fixtures_path);
    if (!in) raise(errc::invalid_input, "cannot open fixtures file '" + *req.fixtures_path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    text = buf.str();
  } else {
    text = embedded_fixtures();
  }

  auto results = run_selftest(text);
  std::size_t failed = 0;
  for (const auto& r : results)
    if (!r.pass) ++failed;

  switch (opts.format) {
    case OutputFormat::text:
      for (const auto& r : results) {
        out << (r.pass ? "PASS" : "FAIL") << "  " << r.name;
        if (!r.pass) out << ": " << r.detail;
        out << "\n";
      }
      out << results.size() - failed << "/" << results.size() << " checks passed\n";
      break;
    case OutputFormat::csv:
      out << csv_line({"check", "pass", "detail"});
      for (const auto& r : results) {
        std::string detail = r.detail;
        for (char& c : detail)
          if (c == ',' || c == '\n') c = ';';
        out << csv_line({r.name, yesno(r.pass), detail});
      }
      break;
    case OutputFormat::json: {
      json arr = json::array();
      for (const auto& r : results)
        arr.push_back(json{{"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
      emit_json(out, record_for("selftest", json{{"suite", req.suite}},
                                json{{"passed", results.size() - failed},
                                     {"total", results.size()},
                                     {"checks", arr}}));
      break;
    }
  }
  return failed == 0 ? 0 : 4;
}

}  // namespace carmforms::cli
