#include "report.hpp"

#include <sstream>

namespace fockrel::tool {

namespace {

using nlohmann::json;

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

const char* sense_name(MetricSense sense) {
  switch (sense) {
    case MetricSense::at_most:
      return "at_most";
    case MetricSense::at_least:
      return "at_least";
    case MetricSense::info:
      return "info";
  }
  return "info";
}

} // namespace

json report_to_json(const CheckReport& report) {
  json j;
  j["check"] = report.check_name;
  j["claim"] = report.claim;
  json params;
  params["triple"] = {{"C", complex_json(report.triple.C)},
                      {"D", complex_json(report.triple.D)},
                      {"A", complex_json(report.triple.A)},
                      {"B", complex_json(report.triple.B)},
                      {"E", complex_json(report.triple.E)},
                      {"F", complex_json(report.triple.F)},
                      {"m", report.triple.m}};
  if (report.conjugation) {
    params["conjugation"] = {{"a", complex_json(report.conjugation->a)},
                             {"b", complex_json(report.conjugation->b)},
                             {"c", complex_json(report.conjugation->c)}};
  } else {
    params["conjugation"] = nullptr;
  }
  j["parameters"] = params;
  j["truncation"] = report.truncation;
  j["degree_budget"] = report.degree_budget;
  j["metrics"] = json::array();
  for (const auto& m : report.metrics) {
    j["metrics"].push_back(json{{"name", m.name},
                                {"value", m.value},
                                {"tolerance", m.tolerance},
                                {"sense", sense_name(m.sense)},
                                {"satisfied", m.satisfied()}});
  }
  j["notes"] = report.notes;
  j["passed"] = report.passed;
  j["tolerance_used"] = report.tolerance_used;
  return j;
}

json reports_to_json(const std::vector<CheckReport>& reports) {
  json j = json::array();
  for (const auto& r : reports) {
    j.push_back(report_to_json(r));
  }
  return j;
}

std::string render_text(const std::vector<CheckReport>& reports) {
  std::ostringstream out;
  for (const auto& r : reports) {
    out << (r.passed ? "PASS" : "FAIL") << "  " << r.check_name << "  ["
        << r.claim << "]\n";
    out << "  triple: C=" << r.triple.C << " D=" << r.triple.D
        << " A=" << r.triple.A << " B=" << r.triple.B << " E=" << r.triple.E
        << " F=" << r.triple.F << " m=" << r.triple.m << "\n";
    if (r.conjugation) {
      out << "  conjugation: a=" << r.conjugation->a
          << " b=" << r.conjugation->b << " c=" << r.conjugation->c << "\n";
    }
    out << "  truncation=" << r.truncation
        << " degree_budget=" << r.degree_budget << "\n";
    for (const auto& m : r.metrics) {
      out << "  " << (m.satisfied() ? "ok  " : "BAD ") << m.name << " = "
          << m.value;
      if (m.sense != MetricSense::info) {
        out << (m.sense == MetricSense::at_most ? " <= " : " >= ")
            << m.tolerance;
      }
      out << "\n";
    }
    for (const auto& note : r.notes) {
      out << "  note: " << note << "\n";
    }
  }
  return out.str();
}

} // namespace fockrel::tool
