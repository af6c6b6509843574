#include "tgm/report_io.hpp"

#include <cmath>
#include <ostream>

namespace tgm {

using nlohmann::json;

namespace {

template <typename T>
json optional_to_json(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

template <typename T>
std::optional<T> optional_from_json(const json& j, const char* key) {
  if (!j.contains(key) || j[key].is_null()) return std::nullopt;
  return j[key].get<T>();
}

std::string optional_cell(const std::optional<double>& v) { return v ? format_double(*v) : std::string(); }

}  // namespace

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return json(x).dump();
}

json report_to_json(const InequalityReport& r) {
  json terms = json::array();
  for (const auto& t : r.terms) terms.push_back({{"label", t.label}, {"value", t.value}});
  json fan = json::array();
  for (const auto& f : r.fan_dominance) fan.push_back({{"holds", f.holds}, {"margin", f.margin}});
  const auto& p = r.params;
  return json{
      {"inequality-id", to_string(r.inequality_id)},
      {"params",
       {{"m", p.m},
        {"n", p.n},
        {"t", optional_to_json(p.t)},
        {"r", optional_to_json(p.r)},
        {"s", optional_to_json(p.s)},
        {"norm-spec", p.norm_spec},
        {"function-id", optional_to_json(p.function_id)},
        {"seed", optional_to_json(p.seed)}}},
      {"terms", std::move(terms)},
      {"margins", r.margins},
      {"holds", r.holds},
      {"regularization-epsilon", optional_to_json(r.regularization_epsilon)},
      {"fan-dominance", std::move(fan)},
      {"flags", r.flags},
  };
}

InequalityReport report_from_json(const json& j) {
  try {
    InequalityReport r;
    r.inequality_id = parse_inequality_id(j.at("inequality-id").get<std::string>());
    const auto& p = j.at("params");
    r.params.m = p.at("m").get<std::size_t>();
    r.params.n = p.at("n").get<std::size_t>();
    r.params.t = optional_from_json<double>(p, "t");
    r.params.r = optional_from_json<double>(p, "r");
    r.params.s = optional_from_json<double>(p, "s");
    r.params.norm_spec = p.at("norm-spec").get<std::string>();
    r.params.function_id = optional_from_json<std::string>(p, "function-id");
    r.params.seed = optional_from_json<std::uint64_t>(p, "seed");
    for (const auto& t : j.at("terms")) r.terms.push_back({t.at("label").get<std::string>(), t.at("value").get<double>()});
    r.margins = j.at("margins").get<std::vector<double>>();
    r.holds = j.at("holds").get<bool>();
    r.regularization_epsilon = optional_from_json<double>(j, "regularization-epsilon");
    if (j.contains("fan-dominance")) {
      for (const auto& f : j["fan-dominance"]) r.fan_dominance.push_back({f.at("holds").get<bool>(), f.at("margin").get<double>()});
    }
    if (j.contains("flags")) r.flags = j["flags"].get<std::vector<std::string>>();
    return r;
  } catch (const json::exception& e) {
    throw Error(std::string("malformed report JSON: ") + e.what());
  }
}

std::string report_to_csv_row(const InequalityReport& r) {
  if (r.terms.size() > kCsvMaxTerms) throw ShapeError("report has more terms than the CSV layout allows");
  const auto& p = r.params;
  std::string row = to_string(r.inequality_id);
  auto cell = [&row](const std::string& v) {
    row += ',';
    row += v;
  };
  cell(std::to_string(p.m));
  cell(std::to_string(p.n));
  cell(optional_cell(p.t));
  cell(optional_cell(p.r));
  cell(optional_cell(p.s));
  cell(p.norm_spec);
  cell(p.function_id.value_or(""));
  cell(p.seed ? std::to_string(*p.seed) : "");
  cell(r.holds ? "true" : "false");
  cell(optional_cell(r.regularization_epsilon));
  for (std::size_t k = 0; k < kCsvMaxTerms; ++k) cell(k < r.terms.size() ? format_double(r.terms[k].value) : "");
  for (std::size_t k = 0; k + 1 < kCsvMaxTerms; ++k) cell(k < r.margins.size() ? format_double(r.margins[k]) : "");
  return row;
}

OutputFormat parse_output_format(const std::string& text) {
  if (text == "json") return OutputFormat::Json;
  if (text == "csv") return OutputFormat::Csv;
  throw DomainError("unknown output format '" + text + "' (expected json or csv)");
}

std::string to_string(OutputFormat f) { return f == OutputFormat::Json ? "json" : "csv"; }

ReportWriter::ReportWriter(std::ostream& out, OutputFormat format) : out_(out), format_(format) {
  if (format_ == OutputFormat::Csv) out_ << kCsvHeader << '\n';
}

void ReportWriter::write(const InequalityReport& report) {
  if (format_ == OutputFormat::Json) {
    out_ << report_to_json(report).dump() << '\n';
  } else {
    out_ << report_to_csv_row(report) << '\n';
  }
  ++count_;
}

}  // namespace tgm
