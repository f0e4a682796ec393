#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "semiradius/cli.hpp"
#include "semiradius/error.hpp"

namespace semiradius::cli {

int exit_code_for(ErrorCode code);

template <class F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }
}

/// JSON to stdout under --json, the human text otherwise; the JSON also goes
/// to --out when given.
void emit(const GlobalOptions& g, const json& doc, const std::string& human, std::ostream& out);

json config_json(const GlobalOptions& g, const RelationFlags& flags);

struct Tally {
  int pass = 0;
  int fail = 0;
  int skipped = 0;
  int verified_failures = 0;
  int report_only_failures = 0;

  void add(const CheckOutcome& o);
  json to_json() const;
  std::string line() const;
};

std::string outcome_table(const std::vector<CheckOutcome>& outcomes);

/// (id, variant) label used in tables and witness names.
std::string outcome_label(const CheckOutcome& o);

/// Positive when passing, scaled by the tolerance; orders outcomes from
/// tightest to loosest.
double normalized_margin(const CheckOutcome& o);

}  // namespace semiradius::cli
