#include <algorithm>
#include <atomic>
#include <cstdio>
#include <filesystem>
#include <thread>

#include "report.hpp"
#include "semiradius/cli.hpp"
#include "semiradius/error.hpp"

namespace semiradius::cli {

namespace {

constexpr int kMaxHalvings = 10;
constexpr int kWitnessesPerRelation = 10;

struct Job {
  std::string id;
  bool plain_norm = false;
};

struct InstanceResult {
  std::vector<CheckOutcome> outcomes;  // parallel to the job list
  std::string error;
};

std::vector<Job> job_list(const std::vector<std::string>& relations, bool plain_primary) {
  std::vector<std::string> ids = relations;
  if (ids.empty()) {
    for (const auto& r : list_relations()) ids.push_back(r.id);
  }
  std::vector<Job> jobs;
  for (const auto& id : ids) {
    const std::string canonical = find_relation(id).id;
    jobs.push_back({canonical, plain_primary});
    if ((canonical == "R17" || canonical == "R18") && !plain_primary) jobs.push_back({canonical, true});
  }
  return jobs;
}

InstanceResult run_instance(const Profile& profile, std::uint64_t seed, const std::vector<Job>& jobs,
                            const EvalOptions& opts) {
  InstanceResult res;
  try {
    const Instance inst = gen_instance(profile, seed);
    Evaluator ev(inst, opts);
    for (const auto& job : jobs) {
      ev.options().plain_norm_reading = job.plain_norm;
      res.outcomes.push_back(ev.evaluate(job.id));
    }
  } catch (const std::exception& e) {
    res.error = e.what();
  }
  return res;
}

bool still_fails(const Instance& inst, const std::string& relation, const EvalOptions& opts) {
  try {
    Evaluator ev(inst, opts);
    return ev.evaluate(relation).verdict == Verdict::Fail;
  } catch (const Error&) {
    return false;
  }
}

std::string witness_name(const CheckOutcome& o, std::uint64_t seed) {
  std::string name = o.relation_id;
  if (!o.variant.empty()) name += "-" + o.variant;
  std::replace(name.begin(), name.end(), '+', '_');
  return name + "-seed" + std::to_string(seed) + ".json";
}

}  // namespace

ShrinkResult shrink_failure(const Profile& profile, const Instance& failing,
                            const std::string& relation, const EvalOptions& opts, int max_steps) {
  ShrinkResult res{failing, 0};
  const auto attempt = [&](const Instance& cand) {
    ++res.steps;
    return still_fails(cand, relation, opts);
  };
  for (int d = 2; d < failing.dim && res.steps < max_steps; ++d) {
    Instance cand = gen_instance(profile, failing.seed, d);
    if (attempt(cand)) {
      res.witness = std::move(cand);
      break;
    }
  }
  std::vector<std::string> names;
  for (const auto& [name, m] : res.witness.operators) names.push_back(name);
  for (const auto& name : names) {
    if (res.steps >= max_steps) break;
    if (res.witness.operators.at(name).isZero(0.0)) continue;
    Instance cand = res.witness;
    cand.operators.at(name).setZero();
    if (attempt(cand)) res.witness = std::move(cand);
  }
  for (const auto& name : names) {
    for (int h = 0; h < kMaxHalvings && res.steps < max_steps; ++h) {
      if (res.witness.operators.at(name).isZero(0.0)) break;
      Instance cand = res.witness;
      cand.operators.at(name) *= 0.5;
      if (!attempt(cand)) break;
      res.witness = std::move(cand);
    }
  }
  return res;
}

int cmd_fuzz(const GlobalOptions& g, const FuzzOptions& f, const RelationFlags& flags,
             std::ostream& out, std::ostream& err) {
  return guarded(err, [&]() -> int {
    if (f.count < 1) throw Error(ErrorCode::BadConfig, "count must be at least 1");
    if (f.jobs < 1) throw Error(ErrorCode::BadConfig, "jobs must be at least 1");
    const Profile profile = profile_by_name(f.profile);
    const EvalOptions opts = eval_options(g, flags);
    const std::vector<Job> jobs = job_list(f.relations, flags.plain_norm);

    std::vector<InstanceResult> results(static_cast<std::size_t>(f.count));
    std::atomic<int> next{0};
    const auto worker = [&] {
      for (int i = next++; i < f.count; i = next++) {
        results[static_cast<std::size_t>(i)] =
            run_instance(profile, g.seed + static_cast<std::uint64_t>(i), jobs, opts);
      }
    };
    const int nthreads = std::min(f.jobs, f.count);
    if (nthreads == 1) {
      worker();
    } else {
      std::vector<std::thread> pool;
      for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
      for (auto& th : pool) th.join();
    }

    // Ordered merge by instance index.
    struct PerRelation {
      Tally tally;
      const CheckOutcome* worst = nullptr;
      std::uint64_t worst_seed = 0;
      int witnesses = 0;
    };
    std::vector<PerRelation> per(jobs.size());
    Tally total;
    json failures = json::array();
    json report_only = json::array();
    json errors = json::array();
    for (int i = 0; i < f.count; ++i) {
      const std::uint64_t seed = g.seed + static_cast<std::uint64_t>(i);
      const InstanceResult& r = results[static_cast<std::size_t>(i)];
      if (!r.error.empty()) {
        errors.push_back({{"seed", seed}, {"error", r.error}});
        continue;
      }
      for (std::size_t k = 0; k < jobs.size(); ++k) {
        const CheckOutcome& o = r.outcomes[k];
        PerRelation& pr = per[k];
        pr.tally.add(o);
        total.add(o);
        if (o.verdict != Verdict::Skipped &&
            (!pr.worst || normalized_margin(o) < normalized_margin(*pr.worst))) {
          pr.worst = &o;
          pr.worst_seed = seed;
        }
        if (o.verdict != Verdict::Fail) continue;

        json row = outcome_to_json(o);
        row["seed"] = seed;
        row["profile"] = profile.name;
        if (pr.witnesses < kWitnessesPerRelation) {
          ++pr.witnesses;
          EvalOptions shrink_opts = opts;
          shrink_opts.plain_norm_reading = jobs[k].plain_norm;
          const Instance original = gen_instance(profile, seed);
          const ShrinkResult s =
              shrink_failure(profile, original, o.relation_id, shrink_opts, f.max_shrink_steps);
          row["shrink"] = {{"steps", s.steps}, {"dim", s.witness.dim}};
          if (f.corpus) {
            std::filesystem::path dir(*f.corpus);
            if (o.confidence == Confidence::ReportOnly) dir /= "report-only";
            const std::filesystem::path path = dir / witness_name(o, seed);
            InstanceFile file = to_file(s.witness);
            file.provenance["relation"] = o.relation_id;
            file.provenance["variant"] = o.variant;
            write_atomic(path, to_json(file).dump(2) + "\n");
            row["witness"] = path.string();
          } else {
            row["witness"] = "profile=" + profile.name + " seed=" + std::to_string(seed);
          }
        } else {
          row["witness"] = "profile=" + profile.name + " seed=" + std::to_string(seed);
        }
        (o.confidence == Confidence::Verified ? failures : report_only).push_back(std::move(row));
      }
    }

    json relations = json::array();
    std::vector<CheckOutcome> worst_rows;
    for (std::size_t k = 0; k < jobs.size(); ++k) {
      const PerRelation& pr = per[k];
      json row = {{"id", jobs[k].id}, {"summary", pr.tally.to_json()}};
      if (pr.worst) {
        json w = outcome_to_json(*pr.worst);
        w["seed"] = pr.worst_seed;
        row["variant"] = pr.worst->variant;
        row["confidence"] = std::string(to_string(pr.worst->confidence));
        row["worst"] = std::move(w);
        worst_rows.push_back(*pr.worst);
      } else {
        row["variant"] = jobs[k].plain_norm ? "plain-norm" : "";
        row["confidence"] = jobs[k].plain_norm ? "report-only" : "verified";
      }
      relations.push_back(std::move(row));
    }

    json config = config_json(g, flags);
    config["profile"] = profile.name;
    config["count"] = f.count;
    config["max_shrink_steps"] = f.max_shrink_steps;
    config["relations"] = f.relations.empty() ? json("all") : json(f.relations);
    const json doc = {{"tool", "semiradius"},  {"version", kToolVersion}, {"command", "fuzz"},
                      {"config", config},      {"relations", relations},  {"failures", failures},
                      {"report_only", report_only}, {"errors", errors},   {"summary", total.to_json()}};

    std::string human = "tightest outcome per relation:\n" + outcome_table(worst_rows);
    char buf[256];
    for (const auto& row : failures) {
      std::snprintf(buf, sizeof buf, "FAIL %s seed %llu -> %s\n", row["id"].get<std::string>().c_str(),
                    static_cast<unsigned long long>(row["seed"].get<std::uint64_t>()),
                    row["witness"].get<std::string>().c_str());
      human += buf;
    }
    human += "report-only section: " + std::to_string(report_only.size()) + " violation(s)\n";
    for (const auto& row : report_only) {
      std::string label = row["id"].get<std::string>();
      if (!row["variant"].get<std::string>().empty()) label += ":" + row["variant"].get<std::string>();
      std::snprintf(buf, sizeof buf, "  %s seed %llu slack %.3e -> %s\n", label.c_str(),
                    static_cast<unsigned long long>(row["seed"].get<std::uint64_t>()),
                    row["slack"].get<double>(), row["witness"].get<std::string>().c_str());
      human += buf;
    }
    human += total.line() + "\n";
    emit(g, doc, human, out);
    if (!errors.empty()) {
      for (const auto& e : errors) err << "seed " << e["seed"] << ": " << e["error"].get<std::string>() << "\n";
      return int{kExitInput};
    }
    return total.verified_failures > 0 ? int{kExitFailure} : int{kExitOk};
  });
}

}  // namespace semiradius::cli
