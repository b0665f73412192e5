#pragma once

#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"
#include "lehmer/bigint.hpp"
#include "lehmer/bounds.hpp"
#include "lehmer/carmichael.hpp"
#include "lehmer/constants.hpp"
#include "lehmer/errors.hpp"
#include "lehmer/lehmer_engine.hpp"
#include "lehmer/scan.hpp"

namespace lehmer {

using OrderedJson = nlohmann::ordered_json;

enum class ReportFormat { text, json, csv };

inline ReportFormat parse_report_format(const std::string& s) {
  if (s == "text") return ReportFormat::text;
  if (s == "json") return ReportFormat::json;
  if (s == "csv") return ReportFormat::csv;
  throw InvalidArgument("unknown format '" + s + "' (expected json, csv or text)");
}

// Integers that fit in 64 bits become JSON numbers, larger ones strings.
inline OrderedJson json_integer(const BigInt& x) {
  if (fits_u64(x)) return x.convert_to<u64>();
  return x.str();
}

inline OrderedJson json_rational(const ExactRational& r) { return r.str(); }

inline OrderedJson to_json(const KExclusion& e) {
  return {{"k", e.k}, {"criterion", e.criterion}, {"lhs", e.lhs.str()},
          {"relation", to_string(e.relation)}, {"rhs", e.rhs.str()}, {"note", e.note}};
}

// Leading keys follow the shared schema: type, n, exact_k, min_k, rules, lhs, rhs.
inline OrderedJson to_json(const LehmerVerdict& v) {
  OrderedJson j;
  j["type"] = "verdict";
  j["n"] = json_integer(v.n);
  j["exact_k"] = v.exact_k ? json_integer(*v.exact_k) : OrderedJson(nullptr);
  j["min_k"] = v.min_k;
  j["rules"] = v.rules;
  j["lhs"] = v.witness_psi_double_prime ? json_rational(*v.witness_psi_double_prime) : OrderedJson(nullptr);
  j["rhs"] = nullptr;
  j["factorization"] = v.factorization.str();
  j["prime"] = v.primality.prime;
  j["primality_deterministic"] = v.primality.deterministic;
  j["is_carmichael"] = v.is_carmichael ? OrderedJson(*v.is_carmichael) : OrderedJson(nullptr);
  OrderedJson failures = OrderedJson::array();
  for (const auto& p : v.korselt_failures) failures.push_back(json_integer(p));
  j["korselt_failures"] = failures;
  j["phi"] = json_integer(v.phi);
  j["phi_divides"] = v.phi_divides;
  j["counterexample"] = v.counterexample;
  OrderedJson excluded = OrderedJson::array();
  for (const auto& e : v.excluded_k) excluded.push_back(to_json(e));
  j["excluded_k"] = excluded;
  j["witness"] = v.witness ? OrderedJson(v.witness->str()) : OrderedJson(nullptr);
  j["abundancy_coefficient"] = v.abundancy ? json_rational(v.abundancy->coefficient) : OrderedJson(nullptr);
  j["abundancy_index"] = json_rational(v.abundancy_index);
  return j;
}

inline OrderedJson to_json(const ScanHit& h) {
  return {{"type", "hit"}, {"n", h.n}, {"exact_k", h.exact_k}, {"min_k", nullptr}, {"rules", OrderedJson::array()},
          {"lhs", nullptr}, {"rhs", nullptr}, {"composite", h.composite}};
}

inline OrderedJson to_json(const ConstantCheck& c) {
  return {{"type", "constant-check"}, {"n", nullptr}, {"exact_k", nullptr}, {"min_k", nullptr},
          {"rules", OrderedJson::array({c.description})}, {"lhs", c.lhs.str()}, {"rhs", c.rhs.str()},
          {"id", c.id}, {"relation", to_string(c.relation)}, {"status", to_string(c.status)}};
}

inline OrderedJson to_json(const BoundReport& r, const std::string& group) {
  return {{"type", "bound"}, {"n", nullptr}, {"exact_k", nullptr}, {"min_k", nullptr},
          {"rules", OrderedJson::array({r.detail})}, {"lhs", r.lhs.str()}, {"rhs", r.rhs.str()},
          {"group", group}, {"bound_id", r.bound_id}, {"applicable", r.applicable},
          {"relation", to_string(r.relation)}, {"holds", r.holds}, {"equality", r.equality}};
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline const char* kCsvHeader = "type,n,exact_k,min_k,rules,lhs,rhs";

// One CSV row from a record carrying the shared schema keys.
inline std::string csv_row(const OrderedJson& j) {
  auto cell = [&](const char* key) -> std::string {
    if (!j.contains(key) || j[key].is_null()) return "";
    const auto& v = j[key];
    if (v.is_string()) return csv_field(v.get<std::string>());
    if (v.is_array()) {
      std::string joined;
      for (const auto& e : v) joined += (joined.empty() ? "" : ";") + (e.is_string() ? e.get<std::string>() : e.dump());
      return csv_field(joined);
    }
    return csv_field(v.dump());
  };
  return cell("type") + "," + cell("n") + "," + cell("exact_k") + "," + cell("min_k") + "," + cell("rules") + "," +
         cell("lhs") + "," + cell("rhs");
}

// Writes records as JSON Lines or CSV (header first).
class RecordWriter {
 public:
  RecordWriter(std::ostream& out, ReportFormat format) : out_(out), format_(format) {}

  void write(const OrderedJson& record) {
    if (format_ == ReportFormat::csv) {
      if (!header_written_) {
        out_ << kCsvHeader << "\n";
        header_written_ = true;
      }
      out_ << csv_row(record) << "\n";
    } else {
      out_ << record.dump() << "\n";
    }
  }

 private:
  std::ostream& out_;
  ReportFormat format_;
  bool header_written_ = false;
};

struct BatchSummary {
  std::size_t count = 0;
  std::map<unsigned, std::size_t> min_k_histogram;
};

// A verdict for every Carmichael number <= bound, then a summary record.
// Text format prints one line per verdict.
inline BatchSummary batch_verdicts(u64 bound, std::ostream& out, ReportFormat format, unsigned jobs = 1) {
  BatchSummary summary;
  std::vector<u64> numbers;
  if (bound >= 2) numbers = carmichael_in_range(2, bound, jobs);
  RecordWriter writer(out, format);
  for (u64 n : numbers) {
    LehmerVerdict v = lehmer_check(n);
    ++summary.count;
    ++summary.min_k_histogram[v.min_k];
    if (format == ReportFormat::text) {
      out << n << " = " << v.factorization.str() << "  carmichael=" << (v.is_carmichael.value_or(false) ? "yes" : "no")
          << "  phi=" << v.phi << "  phi|n-1=" << (v.phi_divides ? "yes" : "no") << "  min_k=" << v.min_k << "\n";
    } else {
      writer.write(to_json(v));
    }
    if (!out) throw Error("failed writing batch report");
  }
  OrderedJson hist = OrderedJson::object();
  for (auto [k, c] : summary.min_k_histogram) hist[std::to_string(k)] = c;
  if (format == ReportFormat::text) {
    out << "# " << summary.count << " Carmichael numbers <= " << bound << "; min_k histogram " << hist.dump() << "\n";
  } else if (format == ReportFormat::json) {
    writer.write(OrderedJson{{"type", "summary"}, {"n", bound}, {"count", summary.count}, {"min_k_histogram", hist}});
  }
  return summary;
}

}  // namespace lehmer
