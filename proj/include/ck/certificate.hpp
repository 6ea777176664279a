#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "ck/ci_pipeline.hpp"
#include "ck/error.hpp"
#include "ck/session.hpp"

namespace ck {

inline constexpr const char* kCertificateSchema = "ckcert/1";

/// Exit status of a command: 0 verified, 1 refuted, 2 inconclusive, 3 input
/// error.
inline constexpr int kExitInputError = 3;
/// Exit status of a replay whose recomputation disagrees with the file.
inline constexpr int kExitReplayDefect = 4;

int exit_code(Verdict v);

/// Bad input that parsed but cannot be run (e.g. a claimed generating set
/// that does not generate, or a coefficient outside the field).
class InputError : public Error {
 public:
  using Error::Error;
};

struct RunOptions {
  std::uint64_t seed = 0;
  Budget budget{};
  std::size_t trials = 200;
  std::optional<unsigned> degree_bound;
};

/// A serialized verdict. `document` is a key-sorted JSON tree; every
/// field except "timings" is a pure function of (session, command, seed,
/// budgets), and "replay_hash" digests all of them.
struct CertificateFile {
  Verdict verdict = Verdict::inconclusive;
  nlohmann::json document;

  int exit_code() const { return ck::exit_code(verdict); }
  std::string text() const { return document.dump(2) + "\n"; }
};

/// Runs the index-th check command of the session. Throws InputError.
CertificateFile run_command(const Session& session, std::size_t index, const RunOptions& options = {});

struct CommandOutcome {
  std::optional<CertificateFile> certificate;
  /// Set instead of the certificate on an input error.
  std::string error;

  int exit_code() const { return certificate ? certificate->exit_code() : kExitInputError; }
};

/// Every check command, in declaration order; up to `jobs` run at once.
std::vector<CommandOutcome> run_session(const Session& session, const RunOptions& options = {}, unsigned jobs = 1);

/// SHA-256 of the document with "timings" and "replay_hash" removed.
std::string replay_hash(const nlohmann::json& document);

struct ReplayReport {
  enum class Status { reproduced, malformed, schema_mismatch, defect };

  Status status = Status::malformed;
  Verdict verdict = Verdict::inconclusive;
  /// One line per disagreement between the file and the recomputation.
  std::vector<std::string> defects;

  bool ok() const { return status == Status::reproduced; }
  int exit_code() const;
};

/// Recomputes the command recorded in the certificate and compares every
/// field but the timings.
ReplayReport replay_certificate(const nlohmann::json& document);
/// Accepts one certificate or an array of them.
std::vector<ReplayReport> replay_text(std::string_view text);

}  // namespace ck
