#pragma once

#include <stdexcept>
#include <string>

namespace orbitframe {

// Base for all library errors. `code()` is a stable machine-readable tag,
// used verbatim by the CLI error object.
class Error : public std::runtime_error {
public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}
  const std::string& code() const noexcept { return code_; }

private:
  std::string code_;
};

struct DomainError : Error {
  explicit DomainError(const std::string& m) : Error("domain_error", m) {}
};

struct DimensionError : Error {
  explicit DimensionError(const std::string& m) : Error("dimension_error", m) {}
};

struct IndexError : Error {
  explicit IndexError(const std::string& m) : Error("index_error", m) {}
};

struct RankError : Error {
  explicit RankError(const std::string& m) : Error("rank_error", m) {}
};

struct SingularGramError : Error {
  explicit SingularGramError(const std::string& m) : Error("singular_gram", m) {}
};

struct TailError : Error {
  explicit TailError(const std::string& m) : Error("tail_error", m) {}
};

struct UnknownExampleError : Error {
  explicit UnknownExampleError(const std::string& m) : Error("unknown_example", m) {}
};

struct OverflowRiskError : Error {
  explicit OverflowRiskError(const std::string& m) : Error("overflow_risk", m) {}
};

struct ConfigError : Error {
  explicit ConfigError(const std::string& m) : Error("config_error", m) {}
};

struct IoError : Error {
  explicit IoError(const std::string& m) : Error("io_error", m) {}
};

}  // namespace orbitframe
