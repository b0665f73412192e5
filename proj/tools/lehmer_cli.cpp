// Command-line front end for the lehmer toolkit.
//
// Exit codes: 0 success, 1 runtime failure, 2 usage error or invalid
// argument, 3 failed verification (or a composite scan hit).

#include <chrono>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "lehmer/lehmer.hpp"

namespace {

using lehmer::BigInt;
using lehmer::ExactRational;
using lehmer::OrderedJson;
using lehmer::ReportFormat;

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;
constexpr int kExitVerification = 3;

struct Globals {
  std::string format = "text";
  int precision = 10;
};

std::string approx(const ExactRational& r, int precision) { return "≈ " + r.decimal(precision); }

// Exact form unless it is too long to read; JSON always carries it exactly.
std::string shown(const ExactRational& r, int precision) {
  std::string exact = r.pretty();
  return exact.size() <= 60 ? exact : approx(r, precision);
}

const std::string& required(const std::string& value, const char* flag) {
  if (value.empty()) throw lehmer::InvalidArgument(std::string(flag) + " is required");
  return value;
}

void emit(const OrderedJson& record, ReportFormat format, std::ostream& out = std::cout) {
  lehmer::RecordWriter(out, format).write(record);
}

int run_factor(const std::string& arg, const Globals& g, const std::string& what) {
  BigInt n = lehmer::parse_bigint(arg);
  auto format = lehmer::parse_report_format(g.format);
  auto f = lehmer::factor(n);
  if (what == "factor") {
    if (format == ReportFormat::text) {
      std::cout << n << " = " << f.str() << "\n";
      return kExitOk;
    }
    OrderedJson factors = OrderedJson::array();
    for (const auto& pp : f.factors()) factors.push_back({lehmer::json_integer(pp.prime), pp.exponent});
    auto prim = lehmer::primality(n);
    emit({{"type", "factor"}, {"n", lehmer::json_integer(n)}, {"factors", factors}, {"omega", f.omega()},
          {"prime", prim.prime}, {"primality_deterministic", prim.deterministic}},
         format);
    return kExitOk;
  }
  BigInt value = what == "phi" ? lehmer::euler_phi(f) : lehmer::sigma(f);
  if (format == ReportFormat::text) {
    std::cout << value << "\n";
  } else {
    emit({{"type", what}, {"n", lehmer::json_integer(n)}, {"value", lehmer::json_integer(value)}}, format);
  }
  return kExitOk;
}

int run_carmichael(const std::vector<std::string>& args, const std::string& from, const std::string& to,
                   unsigned jobs, const Globals& g) {
  auto format = lehmer::parse_report_format(g.format);
  if (!args.empty()) {
    for (const auto& a : args) {
      auto cert = lehmer::korselt_check(lehmer::parse_bigint(a));
      OrderedJson failures = OrderedJson::array();
      for (const auto& p : cert.korselt_failures) failures.push_back(lehmer::json_integer(p));
      if (format == ReportFormat::text) {
        std::cout << cert.n << ": " << (cert.is_carmichael ? "Carmichael" : "not Carmichael")
                  << " (composite=" << (cert.composite ? "yes" : "no")
                  << ", squarefree=" << (cert.squarefree ? "yes" : "no") << ", korselt failures=" << failures.dump()
                  << ")\n";
      } else {
        emit({{"type", "carmichael"}, {"n", lehmer::json_integer(cert.n)}, {"is_carmichael", cert.is_carmichael},
              {"composite", cert.composite}, {"squarefree", cert.squarefree}, {"korselt_failures", failures}},
             format);
      }
    }
    return kExitOk;
  }
  if (from.empty() || to.empty()) throw lehmer::InvalidArgument("carmichael needs <n>... or --from/--to");
  auto lo = lehmer::to_u64(lehmer::parse_bigint(from));
  auto hi = lehmer::to_u64(lehmer::parse_bigint(to));
  auto numbers = lehmer::carmichael_in_range(lo, hi, jobs);
  lehmer::RecordWriter writer(std::cout, format);
  for (auto n : numbers) {
    if (format == ReportFormat::text) {
      std::cout << n << " = " << lehmer::factor(n).str() << "\n";
    } else {
      writer.write({{"type", "carmichael"}, {"n", n}, {"is_carmichael", true}});
    }
  }
  if (format == ReportFormat::text) std::cout << "# " << numbers.size() << " Carmichael numbers in range\n";
  return kExitOk;
}

int run_psi(const std::string& spec, const Globals& g) {
  auto format = lehmer::parse_report_format(g.format);
  auto group = lehmer::parse_group_spec(spec);
  auto spectrum = lehmer::order_spectrum(group);
  BigInt value = lehmer::psi(spectrum);
  auto ratio_cyclic = lehmer::psi_prime(group);
  auto ratio_square = lehmer::psi_double_prime(group);
  if (format == ReportFormat::text) {
    std::cout << value << "\n";
    return kExitOk;
  }
  OrderedJson spec_json = OrderedJson::object();
  for (const auto& [d, c] : spectrum.counts) spec_json[d.str()] = lehmer::json_integer(c);
  emit({{"type", "psi"}, {"group", group.str()}, {"order", lehmer::json_integer(group.order())},
        {"psi", lehmer::json_integer(value)}, {"psi_prime", ratio_cyclic.str()},
        {"psi_double_prime", ratio_square.str()}, {"spectrum", spec_json},
        {"forced_property", lehmer::to_string(lehmer::classify_by_psi_ratio(ratio_square))}},
       format);
  return kExitOk;
}

int run_bounds(const std::string& spec, const Globals& g) {
  auto format = lehmer::parse_report_format(g.format);
  auto group = lehmer::parse_group_spec(spec);
  auto reports = lehmer::check_bounds(group);
  bool all_hold = true;
  lehmer::RecordWriter writer(std::cout, format);
  if (format == ReportFormat::text) {
    std::cout << "group " << group.str() << ", order " << group.order() << "\n";
  }
  for (const auto& r : reports) {
    all_hold = all_hold && r.holds;
    if (format == ReportFormat::text) {
      std::cout << "  " << r.bound_id << ": " << r.lhs << " " << lehmer::to_string(r.relation) << " " << r.rhs
                << "  [" << (r.holds ? "holds" : "FAILS") << (r.equality ? ", equality" : "") << "]"
                << (r.detail.empty() ? "" : "  " + r.detail) << "\n";
    } else {
      writer.write(lehmer::to_json(r, group.str()));
    }
  }
  return all_hold ? kExitOk : kExitVerification;
}

int run_lehmer_check(const std::vector<std::string>& args, const Globals& g) {
  auto format = lehmer::parse_report_format(g.format);
  lehmer::RecordWriter writer(std::cout, format);
  bool counterexample = false;
  for (const auto& a : args) {
    auto v = lehmer::lehmer_check(lehmer::parse_bigint(a));
    counterexample = counterexample || v.counterexample;
    if (format != ReportFormat::text) {
      writer.write(lehmer::to_json(v));
      continue;
    }
    std::cout << "n = " << v.n << " = " << v.factorization.str() << "\n";
    std::cout << "  prime: " << (v.primality.prime ? "yes" : "no")
              << (v.primality.deterministic ? "" : " (probabilistic)") << "\n";
    if (v.is_carmichael) std::cout << "  carmichael: " << (*v.is_carmichael ? "yes" : "no") << "\n";
    std::cout << "  phi(n) = " << v.phi << ", phi | n-1: " << (v.phi_divides ? "yes" : "no");
    if (v.exact_k) std::cout << " (k = " << *v.exact_k << ")";
    std::cout << "\n  min k: " << v.min_k << "\n";
    if (v.witness) {
      std::cout << "  witness: " << v.witness->str() << ", psi'' = " << *v.witness_psi_double_prime << " "
                << approx(*v.witness_psi_double_prime, g.precision) << "\n";
    }
    if (v.abundancy) {
      std::cout << "  abundancy: I(n) = " << v.abundancy_index << " " << approx(v.abundancy_index, g.precision)
                << " > " << v.abundancy->coefficient << "/pi^2 " << approx(v.abundancy->value().lower, g.precision)
                << "\n";
    }
    for (const auto& r : v.rules) std::cout << "  - " << r << "\n";
  }
  return counterexample ? kExitVerification : kExitOk;
}

int run_min_k(const std::string& profile_text, const Globals& g) {
  auto format = lehmer::parse_report_format(g.format);
  auto profile = lehmer::LehmerProfile::parse(profile_text);
  auto result = lehmer::min_k(profile);
  auto abundancy = lehmer::abundancy_bound(profile);
  // Ladder divergence, surfaced whenever q >= 17 is known.
  std::vector<std::pair<std::string, std::string>> ladder;
  BigInt q = profile.smallest_prime_lower_bound();
  if (q >= 17 && lehmer::is_prime(q)) {
    for (auto mode : {lehmer::LadderMode::strict, lehmer::LadderMode::as_printed}) {
      auto rung = lehmer::ladder_floor(q, 4, mode);
      auto top = lehmer::ladder_floor(q, mode);
      ladder.emplace_back(lehmer::to_string(mode),
                          "R=4: " + (rung ? "k >= " + std::to_string(*rung) : std::string("no conclusion")) +
                              "; ladder: " + (top ? "k >= " + std::to_string(*top) : std::string("no conclusion")));
    }
  }
  if (format == ReportFormat::text) {
    std::cout << "profile " << profile.str() << "\n";
    for (const auto& c : result.cases) {
      std::cout << "  case " << c.label << ": k >= " << c.floor << "\n";
      for (const auto& e : c.excluded) {
        std::cout << "      k != " << e.k << " (" << e.criterion << "): " << shown(e.lhs, g.precision) << " "
                  << lehmer::to_string(e.relation) << " " << shown(e.rhs, g.precision) << "\n";
      }
    }
    std::cout << "min k: " << result.min_k << "\n";
    std::cout << "abundancy: I(n) > " << abundancy.coefficient << "/pi^2 " << approx(abundancy.value().lower, g.precision)
              << "\n";
    for (const auto& [mode, text] : ladder) std::cout << "ladder (" << mode << ") q=" << q << ": " << text << "\n";
    return kExitOk;
  }
  OrderedJson cases = OrderedJson::array();
  for (const auto& c : result.cases) {
    OrderedJson excluded = OrderedJson::array();
    for (const auto& e : c.excluded) excluded.push_back(lehmer::to_json(e));
    cases.push_back({{"case", c.label}, {"floor", c.floor}, {"excluded_k", excluded}});
  }
  OrderedJson ladder_json = OrderedJson::object();
  for (const auto& [mode, text] : ladder) ladder_json[mode] = text;
  emit({{"type", "min-k"}, {"n", nullptr}, {"exact_k", nullptr}, {"min_k", result.min_k}, {"rules", result.rules},
        {"lhs", nullptr}, {"rhs", nullptr}, {"profile", profile.str()}, {"cases", cases},
        {"abundancy_coefficient", abundancy.coefficient.str()}, {"ladder", ladder_json}},
       format);
  return kExitOk;
}

int run_scan(const std::string& from, const std::string& to, unsigned jobs, const std::string& checkpoint,
             const Globals& g) {
  auto format = lehmer::parse_report_format(g.format);
  lehmer::ScanOptions options;
  if (jobs > 0) options.jobs = jobs;
  if (!checkpoint.empty()) options.checkpoint_path = checkpoint;
  auto lo = lehmer::to_u64(lehmer::parse_bigint(from));
  auto hi = lehmer::to_u64(lehmer::parse_bigint(to));
  auto start = std::chrono::steady_clock::now();
  lehmer::ScanCheckpoint result;
  try {
    result = lehmer::scan_totient_divisibility(lo, hi, options);
  } catch (const lehmer::CompositeHitError& e) {
    std::cerr << "COMPOSITE HIT: " << e.what() << "\n";
    emit(lehmer::to_json(e.verdict()), format == ReportFormat::text ? ReportFormat::json : format, std::cerr);
    return kExitVerification;
  }
  double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (format == ReportFormat::text) {
    std::cout << "scanned [" << result.lo << ", " << result.hi << "]: " << result.hits.size()
              << " n with phi(n) | n-1, " << result.composite_hits() << " composite\n";
    std::cout << "# " << seconds << " s with " << options.jobs << " worker(s)\n";
    return kExitOk;
  }
  lehmer::RecordWriter writer(std::cout, format);
  for (const auto& h : result.hits) writer.write(lehmer::to_json(h));
  return kExitOk;
}

int run_verify(const Globals& g) {
  auto format = lehmer::parse_report_format(g.format);
  auto checks = lehmer::verify_paper_constants();
  lehmer::RecordWriter writer(std::cout, format);
  for (const auto& c : checks) {
    if (format == ReportFormat::text) {
      std::cout << (c.status == lehmer::CheckStatus::fail ? "FAIL " : c.status == lehmer::CheckStatus::pass ? "pass " : "xfail")
                << " " << c.id << ": " << c.lhs << " " << lehmer::to_string(c.relation) << " " << c.rhs << "  ("
                << c.description << ")\n";
    } else {
      writer.write(lehmer::to_json(c));
    }
  }
  return lehmer::all_checks_ok(checks) ? kExitOk : kExitVerification;
}

int run_batch(const std::string& bound, const std::string& out_path, unsigned jobs, const Globals& g) {
  auto format = lehmer::parse_report_format(g.format);
  auto b = lehmer::to_u64(lehmer::parse_bigint(bound));
  if (out_path.empty()) {
    lehmer::batch_verdicts(b, std::cout, format, std::max(1U, jobs));
    return kExitOk;
  }
  std::ofstream out(out_path);
  if (!out) throw lehmer::Error("cannot open report file " + out_path);
  auto summary = lehmer::batch_verdicts(b, out, format, std::max(1U, jobs));
  out.close();
  if (!out) throw lehmer::Error("failed writing report file " + out_path);
  std::cout << summary.count << " verdicts written to " << out_path << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact toolkit for k * phi(n) = n - 1: arithmetic, element-order sums, bounds, scans"};
  Globals g;
  app.fallthrough();
  app.add_option("--format", g.format, "Output format: text, json (JSON Lines) or csv")
      ->check(CLI::IsMember({"text", "json", "csv"}));
  app.add_option("--precision", g.precision, "Significant digits for decimal display")->check(CLI::Range(1, 200));

  std::string n_arg;
  auto* factor_cmd = app.add_subcommand("factor", "Prime factorization of n");
  factor_cmd->add_option("n", n_arg)->required();
  auto* phi_cmd = app.add_subcommand("phi", "Euler totient of n");
  phi_cmd->add_option("n", n_arg)->required();
  auto* sigma_cmd = app.add_subcommand("sigma", "Sum of divisors of n");
  sigma_cmd->add_option("n", n_arg)->required();

  std::vector<std::string> numbers;
  std::string from, to, checkpoint, profile = "generic", group, bound, out_path;
  unsigned jobs = 0;

  auto* carm_cmd = app.add_subcommand("carmichael", "Korselt certificate for n, or Carmichael numbers in a range");
  carm_cmd->add_option("n", numbers);
  carm_cmd->add_option("--from", from);
  carm_cmd->add_option("--to", to);
  carm_cmd->add_option("--jobs", jobs);

  auto* psi_cmd = app.add_subcommand("psi", "Sum of element orders of a group spec");
  psi_cmd->add_option("--group", group, "e.g. \"C2 x C2 x C15\", \"Q8 x C3\", \"D6\"");

  auto* bounds_cmd = app.add_subcommand("bounds", "Check every applicable bound for a group spec");
  bounds_cmd->add_option("--group", group);

  auto* check_cmd = app.add_subcommand("lehmer-check", "Full verdict for each n");
  check_cmd->add_option("n", numbers)->required();

  auto* mink_cmd = app.add_subcommand("min-k", "Floor on k for a constraint profile");
  mink_cmd->add_option("--profile", profile, "e.g. generic | 3|n | 5|n,7!|n | q=17,N0=10^8171 | n=561");

  auto* scan_cmd = app.add_subcommand("scan", "Scan a range for n with phi(n) | n - 1");
  scan_cmd->add_option("--from", from);
  scan_cmd->add_option("--to", to);
  scan_cmd->add_option("--jobs", jobs, "Worker threads (default: LEHMER_JOBS or 1)");
  scan_cmd->add_option("--checkpoint", checkpoint, "Checkpoint file; resumed from if present");

  auto* verify_cmd = app.add_subcommand("verify-constants", "Re-derive every published constant exactly");

  auto* batch_cmd = app.add_subcommand("batch", "Verdicts for every Carmichael number up to a bound");
  batch_cmd->add_option("--bound", bound);
  batch_cmd->add_option("--out", out_path, "Report file (default: stdout)");
  batch_cmd->add_option("--jobs", jobs);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*factor_cmd) return run_factor(n_arg, g, "factor");
    if (*phi_cmd) return run_factor(n_arg, g, "phi");
    if (*sigma_cmd) return run_factor(n_arg, g, "sigma");
    if (*carm_cmd) return run_carmichael(numbers, from, to, std::max(1U, jobs), g);
    if (*psi_cmd) return run_psi(required(group, "--group"), g);
    if (*bounds_cmd) return run_bounds(required(group, "--group"), g);
    if (*check_cmd) return run_lehmer_check(numbers, g);
    if (*mink_cmd) return run_min_k(profile, g);
    if (*scan_cmd) return run_scan(required(from, "--from"), required(to, "--to"), jobs, checkpoint, g);
    if (*verify_cmd) return run_verify(g);
    if (*batch_cmd) return run_batch(required(bound, "--bound"), out_path, jobs, g);
    std::cerr << app.help();
    return kExitUsage;
  } catch (const lehmer::InvalidArgument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitUsage;
}
