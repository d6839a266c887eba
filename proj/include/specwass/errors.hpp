#pragma once

#include <stdexcept>
#include <string>

namespace specwass {

// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Non-square input, mismatched dimensions between cost/weights/spaces.
struct ShapeError : Error {
  using Error::Error;
};

// Size preconditions (grid too small, support too large for exact paths).
struct SizeError : Error {
  using Error::Error;
};

// Scalar parameter out of range (norm_DI <= 0, t outside [0,1], ...).
struct ParamError : Error {
  using Error::Error;
};

// Point index out of range.
struct IndexError : Error {
  using Error::Error;
};

// Operation needs data the space does not carry (coords, 1-D layout).
struct UnsupportedSpaceError : Error {
  using Error::Error;
};

// Degenerate input (all-zero density, coincident angles, empty support).
struct DegenerateError : Error {
  using Error::Error;
};

// A stated mathematical hypothesis fails (non-Euclidean embedding, ...).
struct HypothesisError : Error {
  using Error::Error;
};

// Shape sampler does not integrate to one.
struct NormalizationError : Error {
  using Error::Error;
};

// Primal/dual results paired from different instances.
struct PairingError : Error {
  using Error::Error;
};

// Certified duality gap exceeded its tolerance.
struct GapError : Error {
  using Error::Error;
};

// State weights cannot be embedded on the requested sheet levels.
struct EmbeddingError : Error {
  using Error::Error;
};

// File parsing / serialization problems.
struct IoError : Error {
  using Error::Error;
};

}  // namespace specwass
