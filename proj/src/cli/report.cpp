#include "report.hpp"

#include <algorithm>
#include <cstdio>

namespace semiradius::cli {

void Tally::add(const CheckOutcome& o) {
  switch (o.verdict) {
    case Verdict::Pass: ++pass; break;
    case Verdict::Skipped: ++skipped; break;
    case Verdict::Fail:
      ++fail;
      if (o.confidence == Confidence::Verified) {
        ++verified_failures;
      } else {
        ++report_only_failures;
      }
      break;
  }
}

json Tally::to_json() const {
  return {{"total", pass + fail + skipped},
          {"pass", pass},
          {"fail", fail},
          {"skipped", skipped},
          {"verified_failures", verified_failures},
          {"report_only_failures", report_only_failures}};
}

std::string Tally::line() const {
  char buf[200];
  std::snprintf(buf, sizeof buf,
                "%d outcomes: %d pass, %d fail, %d skipped (verified failures %d, report-only "
                "failures %d)",
                pass + fail + skipped, pass, fail, skipped, verified_failures,
                report_only_failures);
  return buf;
}

std::string outcome_label(const CheckOutcome& o) {
  return o.variant.empty() ? o.relation_id : o.relation_id + ":" + o.variant;
}

double normalized_margin(const CheckOutcome& o) {
  if (o.verdict == Verdict::Skipped) return 1e300;
  const double tol = std::max(o.tolerance, 1e-300);
  return o.kind == RelationKind::Equality ? (o.tolerance - o.slack) / tol
                                          : (o.slack + o.tolerance) / tol;
}

json outcome_to_json(const CheckOutcome& o) {
  json j;
  j["id"] = o.relation_id;
  j["variant"] = o.variant;
  j["confidence"] = std::string(to_string(o.confidence));
  j["verdict"] = std::string(to_string(o.verdict));
  if (o.verdict == Verdict::Skipped) {
    j["reason"] = o.skip_reason;
    return j;
  }
  j["kind"] = std::string(to_string(o.kind));
  j["lhs"] = o.lhs;
  j["rhs"] = o.rhs;
  j["slack"] = o.slack;
  j["tolerance"] = o.tolerance;
  json parts = json::array();
  for (const auto& p : o.parts) {
    parts.push_back({{"label", p.label},
                     {"kind", std::string(to_string(p.kind))},
                     {"lhs", p.lhs},
                     {"rhs", p.rhs},
                     {"slack", p.slack},
                     {"tolerance", p.tolerance},
                     {"pass", p.pass}});
  }
  j["parts"] = std::move(parts);
  return j;
}

std::string outcome_table(const std::vector<CheckOutcome>& outcomes) {
  std::string s;
  char buf[256];
  std::snprintf(buf, sizeof buf, "%-16s %-8s %-11s %-20s %-20s %-11s %-9s\n", "relation", "verdict",
                "confidence", "lhs", "rhs", "slack", "tol");
  s += buf;
  for (const auto& o : outcomes) {
    const std::string label = outcome_label(o);
    if (o.verdict == Verdict::Skipped) {
      std::snprintf(buf, sizeof buf, "%-16s %-8s %-11s %s\n", label.c_str(), "skipped",
                    std::string(to_string(o.confidence)).c_str(), o.skip_reason.c_str());
    } else {
      std::snprintf(buf, sizeof buf, "%-16s %-8s %-11s %-20.12g %-20.12g %-11.3e %-9.2e\n",
                    label.c_str(), std::string(to_string(o.verdict)).c_str(),
                    std::string(to_string(o.confidence)).c_str(), o.lhs, o.rhs, o.slack,
                    o.tolerance);
    }
    s += buf;
  }
  return s;
}

}  // namespace semiradius::cli
