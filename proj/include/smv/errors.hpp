#pragma once
// Error hierarchy shared by every module.

#include <stdexcept>
#include <string>
#include <vector>

namespace smv {

enum class ErrorKind { Input, Resource, Precondition, Internal };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

struct InputError : Error {
  explicit InputError(const std::string& what) : Error(ErrorKind::Input, what) {}
};

struct ResourceError : Error {
  explicit ResourceError(const std::string& what, long long progress = -1)
      : Error(ErrorKind::Resource, what), progress(progress) {}
  long long progress;  // e.g. partial closure size
};

struct PreconditionError : Error {
  explicit PreconditionError(const std::string& what) : Error(ErrorKind::Precondition, what) {}
};

struct InternalError : Error {
  explicit InternalError(const std::string& what) : Error(ErrorKind::Internal, what) {}
};

// A cycle inside a graph: vertex indices v0..v{k-1} (closed) and the labels
// of the edges v0v1, v1v2, ..., v{k-1}v0.
struct CycleWitness {
  std::vector<int> vertices;
  std::vector<int> labels;
};

struct NonMetricInput : InputError {
  NonMetricInput(const std::string& what, CycleWitness w) : InputError(what), witness(std::move(w)) {}
  CycleWitness witness;
};

struct ForbViolationInput : InputError {
  ForbViolationInput(const std::string& what, std::vector<int> cycle, std::vector<int> image)
      : InputError(what), cycle(std::move(cycle)), image(std::move(image)) {}
  std::vector<int> cycle;  // labels of the offending family member
  std::vector<int> image;  // image of its vertices
};

struct UndefinedInfimum : InputError {
  UndefinedInfimum(const std::string& what, int u, int v, std::vector<std::vector<int>> paths)
      : InputError(what), u(u), v(v), paths(std::move(paths)) {}
  int u, v;
  std::vector<std::vector<int>> paths;  // vertex sequences whose lengths have no infimum
};

struct PathBudgetExceeded : ResourceError {
  explicit PathBudgetExceeded(const std::string& what) : ResourceError(what) {}
};

struct NoMaximumElement : InputError {
  explicit NoMaximumElement(const std::string& what) : InputError(what) {}
};

}  // namespace smv
