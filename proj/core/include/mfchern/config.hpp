#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>

#include "mfchern/chern.hpp"

namespace mfc {

// A config problem; `where` is a JSON-pointer-like location such as /mf/delta/1.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string where, const std::string& what)
      : std::runtime_error(where + ": " + what), where_(std::move(where)) {}
  const std::string& where() const { return where_; }

 private:
  std::string where_;
};

// Everything one input file describes. Optional sections are left empty.
struct JobInput {
  SchemePtr X;
  MFPtr P;
  std::optional<Connection> connection;  // default connection when absent
  std::shared_ptr<const GroupAction> group;
  std::optional<EquivariantMF> equivariant;
  std::optional<SupportSplit> support;
  std::optional<CechCochain> kappa;  // Čech-0 endomorphism of P

  Connection connection_or_default() const;
};

// Arithmetic expression over the ring's variables: integers, + - * / ^ and
// parentheses. Division only by units of the ring.
LocalFrac parse_expr(const std::string& text, const RingPtr& r);

// Parse and validate a JSON config document.
JobInput load_job(const std::string& json_text);
JobInput load_job_file(const std::string& path);

}  // namespace mfc
