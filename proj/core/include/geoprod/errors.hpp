#pragma once

#include <stdexcept>
#include <string>

namespace geoprod {

/// Base class for all geoprod failures.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Shape mismatch (non-square input, wrong coefficient count, bad block size).
struct DimensionError : Error {
  using Error::Error;
};

/// Operands belong to different Lie algebras.
struct AlgebraMismatch : Error {
  using Error::Error;
};

/// A value that should lie in the algebra (or a subspace of it) does not.
struct ClosureError : Error {
  using Error::Error;
};

/// Principal matrix logarithm undefined (eigenvalue on the closed negative real axis).
struct BranchError : Error {
  using Error::Error;
};

/// Input expected to be symmetric is not, beyond tolerance.
struct SymmetryError : Error {
  using Error::Error;
};

/// Bilinear form fails a definiteness requirement.
struct SignatureError : Error {
  using Error::Error;
};

/// Complement is not ad(h)-invariant: [h, m] does not stay in m.
struct ReductivityError : Error {
  using Error::Error;
};

/// Invalid subalgebra chain (containment or closure violated).
struct ChainError : Error {
  using Error::Error;
};

/// Degenerate metric data (zero eigenvalue, wrong lambda count).
struct MetricError : Error {
  using Error::Error;
};

/// Argument outside the operation's domain (e.g. vector not in m).
struct DomainError : Error {
  using Error::Error;
};

/// Transport index order violated.
struct IndexError : Error {
  using Error::Error;
};

/// Invalid integrator configuration (stability guard tripped).
struct ConfigError : Error {
  using Error::Error;
};

/// Paths or curves that live in different spaces cannot be compared.
struct ComparisonError : Error {
  using Error::Error;
};

/// Requested construction is not available for this algebra.
struct UnsupportedError : Error {
  using Error::Error;
};

}  // namespace geoprod
