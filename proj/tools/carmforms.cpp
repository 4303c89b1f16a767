// carmforms: Carmichael numbers, digit-sum decompositions, universal forms
// and polygonal identities on exact integer arithmetic.

#include <iostream>

#include <CLI11.hpp>

#include "carmforms/cli.hpp"
#include "carmforms/format.hpp"

using namespace carmforms;

namespace {

// Arguments arrive as strings so that underscores and 1e8-style shorthand
// parse exactly; commands validate ranges themselves.
struct RawArgs {
  std::string format = "text";
  std::string limit_max;
  unsigned threads = 0;

  std::string m;
  std::vector<std::string> factors;
  std::string mode = "at-least";
  bool all = false;
  std::string max_results;
  std::string limit;
  std::string filter = "all";
  std::string n_factors;
  int which = 1;
  std::string limits;
  std::vector<std::string> r;
  std::string t = "0";
  std::string action;
  int j = 3;
  std::string h, n, g, index_m;
  std::string suite = "paper-fixtures";
  std::string fixtures_path;
};

Natural required_number(const std::string& text, const char* what) {
  if (text.empty()) raise(errc::invalid_input, std::string(what) + " is required");
  return parse_number(text);
}

std::uint64_t required_u64(const std::string& text, const char* what) {
  Natural v = required_number(text, what);
  if (sgn(v) < 0 || !fits_u64(v)) raise(errc::invalid_input, std::string(what) + " out of range");
  return to_u64(v);
}

cli::GlobalOptions global_options(const RawArgs& args) {
  cli::GlobalOptions opts;
  opts.format = cli::parse_format(args.format);
  opts.threads = args.threads;
  if (!args.limit_max.empty()) opts.limit_max = required_u64(args.limit_max, "--limit-max");
  return opts;
}

Triple parse_triple(const std::vector<std::string>& tokens) {
  std::vector<Natural> parts;
  for (const auto& whole : tokens) {
    std::stringstream ss(whole);
    std::string tok;
    while (std::getline(ss, tok, ','))
      if (!tok.empty()) parts.push_back(parse_number(tok));
  }
  if (parts.size() != 3) raise(errc::invalid_input, "--r expects three components a,b,c");
  return Triple{parts[0], parts[1], parts[2]};
}

CarmichaelFilter parse_filter(const std::string& name) {
  if (name == "all") return CarmichaelFilter::all;
  if (name == "primary") return CarmichaelFilter::primary;
  if (name == "exceptional") return CarmichaelFilter::exceptional;
  raise(errc::invalid_input, "unknown filter '" + name + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Carmichael numbers, digit-sum decompositions, universal forms"};
  app.require_subcommand(1);
  RawArgs args;

  app.add_option("--format", args.format, "Output format: text, csv or json")
      ->capture_default_str();
  app.add_option("--limit-max", args.limit_max, "Override the enumeration/sieve ceiling");
  app.add_option("--threads", args.threads, "Worker threads (0 = hardware)");

  auto* classify = app.add_subcommand("classify", "Set and Carmichael membership of a number");
  classify->add_option("m", args.m, "The number to classify");
  classify->add_option("--factors", args.factors, "Factorization p1^e1,p2^e2,... (verified)");

  auto* decompose = app.add_subcommand("decompose", "List s-decompositions");
  decompose->add_option("m", args.m, "The number to decompose");
  decompose->add_option("--factors", args.factors, "Factorization (verified)");
  decompose->add_option("--mode", args.mode, "at-least or strict")->capture_default_str();
  decompose->add_flag("--all", args.all, "List every decomposition");
  decompose->add_option("--max", args.max_results, "List at most this many");

  auto* enumerate = app.add_subcommand("enumerate", "Enumerate Carmichael numbers");
  enumerate->add_option("--limit", args.limit, "Upper bound (exclusive)")->required();
  enumerate->add_option("--filter", args.filter, "all, primary or exceptional")
      ->capture_default_str();
  enumerate->add_option("--factors", args.n_factors, "Keep only n-factor numbers");

  auto* tables = app.add_subcommand("tables", "Reproduce the distribution tables");
  tables->add_option("--which", args.which, "Table number 1-4")->capture_default_str();
  tables->add_option("--limits", args.limits, "Limits, e.g. 1e3..1e8 or 1e4,1e6")->required();

  auto* form = app.add_subcommand("form", "Universal-form computations for a triple");
  form->add_option("action", args.action,
                   "params, eval, verify, congruences, diagnostics or polygonal")
      ->required();
  form->add_option("--r", args.r, "Triple r1,r2,r3")->required();
  form->add_option("--t", args.t, "Argument t")->capture_default_str();
  form->add_option("--j", args.j, "Diagnostics factor index 1-3")->capture_default_str();

  auto* invert = app.add_subcommand("invert", "Recover (r, t) from a 3-factor Carmichael number");
  invert->add_option("m", args.m, "The number to invert");
  invert->add_option("--factors", args.factors, "Factorization (verified)");

  auto* polygonal = app.add_subcommand("polygonal", "Polygonal values and inverse indices");
  polygonal->set_help_flag("--help", "Print this help message and exit");
  polygonal->add_option("--h", args.h, "Gonality for a value query");
  polygonal->add_option("--n", args.n, "Index for a value query");
  polygonal->add_option("--m", args.index_m, "Value for an index query");
  polygonal->add_option("--g", args.g, "Index for an index query");

  auto* bernoulli = app.add_subcommand("bernoulli-denom", "Bernoulli polynomial denominator D_n");
  bernoulli->add_option("n", args.m, "Degree n")->required();

  auto* selftest = app.add_subcommand("selftest", "Run the bundled verification fixtures");
  selftest->add_option("--suite", args.suite, "Fixture suite name")->capture_default_str();
  selftest->add_option("--fixtures", args.fixtures_path, "Fixture file (default: bundled)");

  // global options (--format, --threads, --limit-max) may follow the subcommand
  for (auto* sub : app.get_subcommands(nullptr)) sub->fallthrough();

  CLI11_PARSE(app, argc, argv);

  try {
    cli::GlobalOptions opts = global_options(args);
    if (classify->parsed()) {
      cli::ClassifyRequest req;
      if (!args.m.empty()) req.m = parse_number(args.m);
      req.factors = cli::parse_factor_list(args.factors);
      return cli::cmd_classify(req, opts, std::cout);
    }
    if (decompose->parsed()) {
      cli::DecomposeRequest req;
      if (!args.m.empty()) req.m = parse_number(args.m);
      req.factors = cli::parse_factor_list(args.factors);
      if (args.mode == "strict")
        req.mode = DecompMode::strict;
      else if (args.mode != "at-least")
        raise(errc::invalid_input, "unknown mode '" + args.mode + "'");
      req.max_results = args.all ? unlimited_results
                                 : (args.max_results.empty()
                                        ? 1
                                        : std::size_t(required_u64(args.max_results, "--max")));
      return cli::cmd_decompose(req, opts, std::cout);
    }
    if (enumerate->parsed()) {
      cli::EnumerateRequest req;
      req.limit = required_u64(args.limit, "--limit");
      req.filter = parse_filter(args.filter);
      if (!args.n_factors.empty()) req.n_factors = int(required_u64(args.n_factors, "--factors"));
      return cli::cmd_enumerate(req, opts, std::cout);
    }
    if (tables->parsed()) {
      cli::TablesRequest req;
      req.which = args.which;
      req.limits = cli::parse_limits(args.limits);
      return cli::cmd_tables(req, opts, std::cout);
    }
    if (form->parsed()) {
      cli::FormRequest req;
      req.r = parse_triple(args.r);
      req.t = parse_number(args.t);
      req.action = args.action;
      req.j = args.j;
      return cli::cmd_form(req, opts, std::cout);
    }
    if (invert->parsed()) {
      cli::InvertRequest req;
      if (!args.m.empty()) req.m = parse_number(args.m);
      req.factors = cli::parse_factor_list(args.factors);
      return cli::cmd_invert(req, opts, std::cout);
    }
    if (polygonal->parsed()) {
      cli::PolygonalRequest req;
      if (!args.h.empty()) req.h = parse_number(args.h);
      if (!args.n.empty()) req.n = parse_number(args.n);
      if (!args.index_m.empty()) req.m = parse_number(args.index_m);
      if (!args.g.empty()) req.g = parse_number(args.g);
      return cli::cmd_polygonal(req, opts, std::cout);
    }
    if (bernoulli->parsed())
      return cli::cmd_bernoulli_denom(required_number(args.m, "n"), opts, std::cout);
    if (selftest->parsed()) {
      cli::SelftestRequest req;
      req.suite = args.suite;
      if (!args.fixtures_path.empty()) req.fixtures_path = args.fixtures_path;
      return cli::cmd_selftest(req, opts, std::cout);
    }
  } catch (const error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
