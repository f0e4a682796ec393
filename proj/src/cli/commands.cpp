#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <set>

#include "report.hpp"
#include "semiradius/cli.hpp"
#include "semiradius/error.hpp"

namespace semiradius::cli {

namespace {

std::string sig12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%#.12g", v);
  return buf;
}

std::string sig12(cplx z) {
  char buf[128];
  std::snprintf(buf, sizeof buf, "%#.12g%+#.12gi", z.real(), z.imag());
  return buf;
}

const CMat& pick_operator(const Instance& inst, const std::optional<std::string>& op,
                          std::string& name) {
  if (op) {
    name = *op;
  } else if (inst.operators.size() == 1) {
    name = inst.operators.begin()->first;
  } else {
    name = "T";
  }
  const CMat* t = inst.find(name);
  if (!t) throw Error(ErrorCode::Parse, "instance has no operator '" + name + "'");
  return *t;
}

}  // namespace

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotInBA:
    case ErrorCode::UnboundedNumericalRadius:
    case ErrorCode::RankZero: return kExitDomain;
    default: return kExitInput;
  }
}

void emit(const GlobalOptions& g, const json& doc, const std::string& human, std::ostream& out) {
  const std::string text = doc.dump(2) + "\n";
  if (g.out) write_atomic(*g.out, text);
  out << (g.json ? text : human);
}

EvalOptions eval_options(const GlobalOptions& g, const RelationFlags& flags) {
  EvalOptions o;
  o.sweep.grid_points = g.grid;
  o.sweep.validate();
  o.plain_norm_reading = flags.plain_norm;
  if (flags.m_a_reading == "a-sharp") {
    o.m_a_reading = RealPartReading::ASharp;
  } else if (flags.m_a_reading == "plain") {
    o.m_a_reading = RealPartReading::PlainAdjoint;
  } else {
    throw Error(ErrorCode::BadConfig, "m_A reading must be a-sharp or plain");
  }
  o.literal_r29_p = flags.literal_r29_p;
  if (flags.z1) o.z1 = parse_complex(*flags.z1);
  if (flags.z2) o.z2 = parse_complex(*flags.z2);
  o.negate_slack = flags.inject_fault;
  return o;
}

json config_json(const GlobalOptions& g, const RelationFlags& flags) {
  json c;
  c["seed"] = g.seed;
  c["grid"] = g.grid;
  c["tol"] = g.tol ? json(*g.tol) : json(nullptr);
  c["m_a_reading"] = flags.m_a_reading;
  c["literal_r29_p"] = flags.literal_r29_p;
  c["plain_norm"] = flags.plain_norm;
  if (flags.z1) c["z1"] = flags.z1.value();
  if (flags.z2) c["z2"] = flags.z2.value();
  if (flags.inject_fault) c["inject_fault"] = true;
  return c;
}

int cmd_compute(const GlobalOptions& g, const std::string& file, const std::string& quantity,
                const std::optional<std::string>& op, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    static const std::set<std::string> known{"seminorm", "radius", "crawford",
                                             "m_a",      "sharp",  "member"};
    if (!known.count(quantity)) {
      throw Error(ErrorCode::BadConfig, "unknown quantity '" + quantity +
                                            "' (seminorm, radius, crawford, m_a, sharp, member)");
    }
    const Instance inst = to_instance(load_instance_file(file), g.tol);
    ThetaSweepConfig sweep;
    sweep.grid_points = g.grid;
    sweep.validate();
    std::string name;
    const CMat& t = pick_operator(inst, op, name);
    const SemiSpace& sp = *inst.space;

    json doc = {{"tool", "semiradius"}, {"version", kToolVersion}, {"command", "compute"},
                {"quantity", quantity}, {"operator", name}};
    std::string human;
    if (quantity == "seminorm") {
      const double v = op_seminorm(sp, t);
      doc["value"] = v;
      human = sig12(v) + "\n";
    } else if (quantity == "radius") {
      const RadiusResult r = numerical_radius(sp, t, sweep);
      doc["value"] = r.value;
      doc["arg_theta"] = r.arg_theta;
      human = sig12(r.value) + "\n";
    } else if (quantity == "crawford") {
      const double v = crawford(sp, t, sweep);
      doc["value"] = v;
      human = sig12(v) + "\n";
    } else if (quantity == "m_a") {
      const double v = m_a(sp, t, sweep);
      doc["value"] = v;
      human = sig12(v) + "\n";
    } else if (quantity == "sharp") {
      const CMat s = sharp(sp, t);
      doc["value"] = matrix_to_json(s);
      for (Eigen::Index i = 0; i < s.rows(); ++i) {
        for (Eigen::Index k = 0; k < s.cols(); ++k) human += (k ? "  " : "") + sig12(s(i, k));
        human += "\n";
      }
    } else {
      const bool member = in_b_a(sp, t);
      doc["value"] = member;
      human = member ? "true\n" : "false\n";
    }
    emit(g, doc, human, out);
    return int{kExitOk};
  });
}

int cmd_check(const GlobalOptions& g, const std::string& file, const std::vector<std::string>& ids,
              const RelationFlags& flags, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const EvalOptions opts = eval_options(g, flags);
    std::vector<std::string> selected;
    const bool all = ids.empty() || (ids.size() == 1 && ids[0] == "all");
    if (all) {
      for (const auto& r : list_relations()) selected.push_back(r.id);
    } else {
      for (const auto& id : ids) selected.push_back(find_relation(id).id);
    }
    const Instance inst = to_instance(load_instance_file(file), g.tol);
    Evaluator ev(inst, opts);
    std::vector<CheckOutcome> outcomes;
    for (const auto& id : selected) {
      outcomes.push_back(ev.evaluate(id));
      // The plain-norm reading of R17/R18 always rides along as report-only.
      if ((id == "R17" || id == "R18") && !opts.plain_norm_reading) {
        ev.options().plain_norm_reading = true;
        outcomes.push_back(ev.evaluate(id));
        ev.options().plain_norm_reading = false;
      }
    }

    Tally tally;
    bool missing = false;
    json rows = json::array();
    json report_only = json::array();
    for (const auto& o : outcomes) {
      tally.add(o);
      json row = outcome_to_json(o);
      row["witness"] = file;
      if (o.verdict == Verdict::Fail && o.confidence == Confidence::ReportOnly) report_only.push_back(row);
      rows.push_back(std::move(row));
      if (!all && o.verdict == Verdict::Skipped && o.skip_reason.rfind("missing", 0) == 0) missing = true;
    }
    json config = config_json(g, flags);
    config["relations"] = all ? json("all") : json(selected);
    const json doc = {{"tool", "semiradius"},  {"version", kToolVersion},  {"command", "check"},
                      {"config", config},      {"instance", file},         {"outcomes", rows},
                      {"report_only", report_only}, {"summary", tally.to_json()}};
    emit(g, doc, outcome_table(outcomes) + tally.line() + "\n", out);
    for (const auto& o : outcomes) {
      if (!all && o.verdict == Verdict::Skipped) {
        err << o.relation_id << " skipped: " << o.skip_reason << "\n";
      }
    }
    if (missing) return int{kExitInput};
    return tally.verified_failures > 0 ? int{kExitFailure} : int{kExitOk};
  });
}

int cmd_range(const GlobalOptions& g, const std::string& file, const std::string& op, int npoints,
              const std::string& format, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (format != "csv" && format != "json") {
      throw Error(ErrorCode::BadConfig, "range format must be csv or json");
    }
    if (npoints < 3) throw Error(ErrorCode::BadConfig, "npoints must be at least 3");
    const Instance inst = to_instance(load_instance_file(file), g.tol);
    ThetaSweepConfig sweep;
    sweep.grid_points = g.grid;
    sweep.validate();
    std::string name;
    const CMat& t = pick_operator(inst, op, name);
    const SemiSpace& sp = *inst.space;
    if (!in_b_a(sp, t)) throw Error(ErrorCode::NotInBA, "operator " + name + " is not in B_A");
    const double w = numerical_radius(sp, t, sweep).value;
    const double c = crawford(sp, t, sweep);
    const auto points = range_boundary(sp, t, npoints);

    std::string text;
    if (format == "csv") {
      char buf[160];
      std::snprintf(buf, sizeof buf, "# w_A=%.12g c_A=%.12g\n", w, c);
      text = buf;
      text += "theta,re,im\n";
      for (const auto& p : points) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", p.theta, p.z.real(), p.z.imag());
        text += buf;
      }
    } else {
      json pts = json::array();
      for (const auto& p : points) {
        pts.push_back({{"theta", p.theta}, {"re", p.z.real()}, {"im", p.z.imag()}});
      }
      const json doc = {{"tool", "semiradius"}, {"version", kToolVersion}, {"command", "range"},
                        {"operator", name},     {"w_A", w},                {"c_A", c},
                        {"npoints", npoints},   {"points", pts}};
      text = doc.dump(2) + "\n";
    }
    if (g.out) {
      write_atomic(*g.out, text);
    } else {
      out << text;
    }
    return int{kExitOk};
  });
}

}  // namespace semiradius::cli
