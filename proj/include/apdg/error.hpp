#ifndef APDG_ERROR_HPP
#define APDG_ERROR_HPP

#include <stdexcept>
#include <string>

namespace apdg {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SolverError : public std::runtime_error {
 public:
  explicit SolverError(const std::string& what, int stage = -1)
      : std::runtime_error(what), stage_(stage) {}
  int stage() const { return stage_; }

 private:
  int stage_;
};

}  // namespace apdg

#endif
