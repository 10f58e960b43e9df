#include "etameta/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "etameta/acceptance.hpp"

namespace etameta::cli {

namespace {

std::string optional_number(const std::optional<std::uint64_t>& v) {
  return v ? std::to_string(*v) : std::string();
}

std::string optional_bool(const std::optional<bool>& v) {
  return v ? (*v ? "true" : "false") : std::string();
}

nlohmann::ordered_json to_json(const EtaReport& r) {
  nlohmann::ordered_json j;
  j["p"] = r.params.p();
  j["alpha"] = r.params.alpha();
  j["beta"] = r.params.beta();
  j["epsilon"] = r.params.epsilon();
  j["delta"] = r.params.delta();
  j["sign"] = std::string(1, sign_token(r.params.sign()));
  j["order"] = r.order;
  j["eta_formula"] = r.eta_formula;
  j["case_tag"] = std::string(to_string(r.case_tag));
  j["eta_oracle"] = r.eta_oracle ? nlohmann::ordered_json(*r.eta_oracle) : nullptr;
  j["match"] = r.match ? nlohmann::ordered_json(*r.match) : nullptr;
  j["n_minus_2"] = r.n_minus_2;
  j["equality_expected"] = r.equality_expected;
  return j;
}

std::vector<Sign> parse_signs(const std::string& text) {
  std::vector<Sign> signs;
  std::stringstream ss(text);
  std::string token;
  while (std::getline(ss, token, ',')) {
    auto sign = parse_sign(token);
    if (!sign) throw Error(ErrorKind::ConstraintViolated, "unknown sign token '" + token + "'");
    signs.push_back(*sign);
  }
  if (signs.empty()) throw Error(ErrorKind::ConstraintViolated, "--signs is empty");
  return signs;
}

void print_human(std::ostream& out, const EtaReport& r) {
  out << r.params.to_string() << '\n'
      << "  order:             " << r.order << '\n'
      << "  eta_formula:       " << r.eta_formula << '\n'
      << "  case_tag:          " << to_string(r.case_tag) << '\n'
      << "  eta_oracle:        " << (r.eta_oracle ? std::to_string(*r.eta_oracle) : "(not run)") << '\n'
      << "  match:             " << (r.match ? optional_bool(r.match) : "(not run)") << '\n'
      << "  n_minus_2:         " << r.n_minus_2 << '\n'
      << "  equality_expected: " << (r.equality_expected ? "true" : "false") << '\n';
}

struct ComputeArgs {
  std::int64_t p = 0, alpha = 0, beta = 0, epsilon = 0, delta = 0;
  std::string sign;
  bool verify = false;
  bool json = false;
};

struct SweepArgs {
  int p = 2;
  int max_order_exp = 0;
  std::string signs = "+,-";
  std::uint64_t oracle_budget = kSweepOracleBudget;
  std::string format = "csv";
  std::string out_file;
};

int compute(const ComputeArgs& args, std::ostream& out, std::ostream& err) {
  const auto sign = parse_sign(args.sign);
  if (!sign) {
    err << "error: --sign must be '+' or '-'\n";
    return kExitInvalid;
  }
  const GroupParams params =
      validate(args.p, args.alpha, args.beta, args.epsilon, args.delta, *sign);
  const EtaReport report =
      verify_tuple(params, {.run_oracle = args.verify, .oracle_budget = kTargetedOracleBudget});

  bool ok = report.ok();
  std::vector<CheckResult> checks;
  if (args.verify && report.order <= kTargetedOracleBudget) checks = verify_theorems(params);
  for (const auto& c : checks) ok = ok && c.passed;

  if (args.json) {
    out << json_row(report) << '\n';
  } else {
    print_human(out, report);
    for (const auto& c : checks)
      out << "  " << (c.passed ? "ok   " : "FAIL ") << c.name << ": " << c.detail << '\n';
  }
  if (args.verify && !report.eta_oracle)
    err << "note: order " << report.order << " is above the oracle budget "
        << kTargetedOracleBudget << "; oracle skipped\n";
  for (const auto& c : checks)
    if (!c.passed) err << "check failed: " << c.name << ": " << c.detail << '\n';
  return ok ? kExitOk : kExitMismatch;
}

int sweep_command(const SweepArgs& args, std::ostream& out, std::ostream& err) {
  if (!is_prime(args.p)) throw Error(ErrorKind::NonPrimeP, "--p must be prime");
  if (args.format != "csv" && args.format != "json") {
    err << "error: --format must be csv or json\n";
    return kExitInvalid;
  }
  const SweepGrid grid{.p = args.p,
                       .max_order_exponent = args.max_order_exp,
                       .signs = parse_signs(args.signs),
                       .oracle_budget = args.oracle_budget};
  const auto reports = sweep(grid);

  std::ofstream file;
  if (!args.out_file.empty()) {
    file.open(args.out_file, std::ios::binary);
    if (!file) {
      err << "error: cannot open " << args.out_file << '\n';
      return kExitInvalid;
    }
  }
  std::ostream& sink = args.out_file.empty() ? out : file;
  if (args.format == "csv") {
    sink << csv_header() << '\n';
    for (const auto& r : reports) sink << csv_row(r) << '\n';
  } else {
    sink << json_rows(reports) << '\n';
  }

  std::size_t bad = 0;
  for (const auto& r : reports) {
    if (!r.ok()) {
      if (bad++ == 0) err << "mismatch: " << csv_row(r) << '\n';
    }
  }
  if (bad > 0) err << bad << " of " << reports.size() << " tuples failed verification\n";
  return bad == 0 ? kExitOk : kExitMismatch;
}

int check_command(int max_order_exp, std::ostream& out) {
  const auto results = run_acceptance(AcceptanceConfig::scaled(max_order_exp),
                                      [&](const CriterionResult& r) { out << r.line() << '\n' << std::flush; });
  const auto passed = std::count_if(results.begin(), results.end(),
                                    [](const CriterionResult& r) { return r.passed; });
  out << passed << '/' << results.size() << " criteria passed\n";
  return passed == static_cast<std::ptrdiff_t>(results.size()) ? kExitOk : kExitMismatch;
}

}  // namespace

std::string csv_header() {
  return "p,alpha,beta,epsilon,delta,sign,order,eta_formula,case_tag,eta_oracle,match,n_minus_2,"
         "equality_expected";
}

std::string csv_row(const EtaReport& r) {
  std::ostringstream os;
  os << r.params.p() << ',' << r.params.alpha() << ',' << r.params.beta() << ','
     << r.params.epsilon() << ',' << r.params.delta() << ',' << sign_token(r.params.sign()) << ','
     << r.order << ',' << r.eta_formula << ',' << to_string(r.case_tag) << ','
     << optional_number(r.eta_oracle) << ',' << optional_bool(r.match) << ',' << r.n_minus_2
     << ',' << (r.equality_expected ? "true" : "false");
  return os.str();
}

std::string json_row(const EtaReport& report) { return to_json(report).dump(); }

std::string json_rows(const std::vector<EtaReport>& reports) {
  nlohmann::ordered_json array = nlohmann::ordered_json::array();
  for (const auto& r : reports) array.push_back(to_json(r));
  return array.dump(2);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Counts conjugacy classes of maximal cyclic subgroups of metacyclic p-groups",
               "etameta"};
  app.require_subcommand(1);

  ComputeArgs compute_args;
  auto* compute_cmd = app.add_subcommand("compute", "Closed-form eta for one parameter tuple");
  compute_cmd->add_option("--p", compute_args.p, "Prime p")->required();
  compute_cmd->add_option("--alpha", compute_args.alpha, "alpha")->required();
  compute_cmd->add_option("--beta", compute_args.beta, "beta")->required();
  compute_cmd->add_option("--epsilon", compute_args.epsilon, "epsilon")->required();
  compute_cmd->add_option("--delta", compute_args.delta, "delta")->required();
  compute_cmd->add_option("--sign", compute_args.sign, "Type: + or -")->required();
  compute_cmd->add_flag("--verify", compute_args.verify, "Run the oracle and theorem checks");
  compute_cmd->add_flag("--json", compute_args.json, "Emit one JSON object");

  SweepArgs sweep_args;
  auto* sweep_cmd = app.add_subcommand("sweep", "Every valid tuple up to a maximal order");
  sweep_cmd->add_option("--p", sweep_args.p, "Prime p")->required();
  sweep_cmd->add_option("--max-order-exp", sweep_args.max_order_exp, "alpha + beta cap")->required();
  sweep_cmd->add_option("--signs", sweep_args.signs, "Comma-separated signs")->capture_default_str();
  sweep_cmd->add_option("--oracle-budget", sweep_args.oracle_budget, "Largest order given to the oracle")
      ->capture_default_str();
  sweep_cmd->add_option("--format", sweep_args.format, "csv or json")->capture_default_str();
  sweep_cmd->add_option("--out", sweep_args.out_file, "Write rows to FILE instead of stdout");

  int check_exp = 12;
  auto* check_cmd = app.add_subcommand("check", "Run the acceptance suite");
  check_cmd->add_option("--max-order-exp", check_exp, "Order cap 2^N")->capture_default_str();

  std::vector<const char*> argv{"etameta"};
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  }

  try {
    if (*compute_cmd) return compute(compute_args, out, err);
    if (*sweep_cmd) return sweep_command(sweep_args, out, err);
    if (*check_cmd) return check_command(check_exp, out);
  } catch (const Error& e) {
    err << "error: " << to_string(e.kind()) << ": " << e.what() << '\n';
    return e.kind() == ErrorKind::Internal ? kExitMismatch : kExitInvalid;
  }
  return kExitInvalid;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

}  // namespace etameta::cli
