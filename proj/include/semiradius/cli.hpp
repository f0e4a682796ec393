#pragma once

// Command implementations behind the `semiradius` tool. Each command writes
// to the given streams and returns the process exit code, so tests can drive
// them without spawning a process.
//
// Exit codes: 0 pass, 1 verified-relation failure, 2 input error,
// 3 domain error (non-member operator).

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "semiradius/catalog.hpp"
#include "semiradius/instance_gen.hpp"

namespace semiradius::cli {

using json = nlohmann::json;

inline constexpr const char* kToolVersion = "1.0.0";

enum ExitCode : int { kExitOk = 0, kExitFailure = 1, kExitInput = 2, kExitDomain = 3 };

// ---- InstanceFile -------------------------------------------------------

json cplx_to_json(cplx z);
cplx cplx_from_json(const json& j, const std::string& where);
json matrix_to_json(const CMat& m);
/// Throws Error(Parse) on shape problems and Error(NonFinite) on NaN/inf.
CMat matrix_from_json(const json& j, const std::string& where);

struct InstanceFile {
  CMat a;
  std::map<std::string, CMat> operators;
  std::optional<int> block_shape;
  std::optional<double> tol;
  std::optional<cplx> z1;
  std::optional<cplx> z2;
  std::optional<double> theta;
  /// Free-form origin record (profile, seed, relation) kept on round trips.
  json provenance;
};

InstanceFile parse_instance_file(const json& j);
InstanceFile load_instance_file(const std::filesystem::path& path);
json to_json(const InstanceFile& f);
InstanceFile to_file(const Instance& inst);
/// Builds the space (tol_override wins over the file's tol) and checks
/// every operator's dimension.
Instance to_instance(const InstanceFile& f, std::optional<double> tol_override = std::nullopt);

/// "1+2i", "-1-0.5i", "3", "2i", "-i".
cplx parse_complex(const std::string& text);

/// Writes to a sibling temporary file and renames it over `path`.
void write_atomic(const std::filesystem::path& path, const std::string& content);

// ---- commands -----------------------------------------------------------

struct GlobalOptions {
  bool json = false;
  std::uint64_t seed = 0;
  std::optional<double> tol;
  int grid = 1024;
  std::optional<std::string> out;
};

struct RelationFlags {
  std::optional<std::string> z1;
  std::optional<std::string> z2;
  bool plain_norm = false;
  std::string m_a_reading = "a-sharp";  // or "plain"
  bool literal_r29_p = false;
  /// Test fixture for the harness self-test: negates every inequality slack.
  bool inject_fault = false;
};

int cmd_compute(const GlobalOptions& g, const std::string& file, const std::string& quantity,
                const std::optional<std::string>& op, std::ostream& out, std::ostream& err);

int cmd_check(const GlobalOptions& g, const std::string& file, const std::vector<std::string>& ids,
              const RelationFlags& flags, std::ostream& out, std::ostream& err);

struct FuzzOptions {
  std::string profile = "default";
  int count = 100;
  std::optional<std::string> corpus;
  int jobs = 1;
  int max_shrink_steps = 500;
  std::vector<std::string> relations;  // empty = all
};

int cmd_fuzz(const GlobalOptions& g, const FuzzOptions& f, const RelationFlags& flags,
             std::ostream& out, std::ostream& err);

int cmd_range(const GlobalOptions& g, const std::string& file, const std::string& op, int npoints,
              const std::string& format, std::ostream& out, std::ostream& err);

// ---- pieces exposed for tests -------------------------------------------

EvalOptions eval_options(const GlobalOptions& g, const RelationFlags& flags);

json outcome_to_json(const CheckOutcome& o);

struct ShrinkResult {
  Instance witness;
  int steps = 0;
};

/// Smallest instance (by dimension, then zeroed and halved operators) on
/// which `relation` still fails. The input must fail.
ShrinkResult shrink_failure(const Profile& profile, const Instance& failing,
                            const std::string& relation, const EvalOptions& opts, int max_steps);

}  // namespace semiradius::cli
