#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace dcmap {

enum class ErrorKind {
  InvalidArgument,
  DegenerateQuad,
  SingularStep,
  ZeroEdge,
  EquiViolation,
  MissingNeighbor,
  NonFiniteRadius,
  BranchLoss,
  InsufficientData,
  Parse,
};

const char* to_string(ErrorKind kind) noexcept;

/// Position attached to an error: a lattice index (n, m), a sublattice label
/// (N, M) or a sequence index n (second component unused).
struct ErrorLocation {
  enum class Space { Lattice, Sublattice, Sequence } space = Space::Lattice;
  int first = 0;
  int second = 0;

  std::string describe() const;
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what,
        std::optional<ErrorLocation> where = std::nullopt);

  ErrorKind kind() const noexcept { return kind_; }
  const std::optional<ErrorLocation>& where() const noexcept { return where_; }

 private:
  ErrorKind kind_;
  std::optional<ErrorLocation> where_;
};

}  // namespace dcmap
