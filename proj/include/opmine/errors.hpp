#pragma once

#include <stdexcept>
#include <string>

namespace opmine {

// Base of every error raised by the library. The CLI maps any Error to exit
// status 1; usage problems are reported by the argument parser with status 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

// An edge or input names a node that does not exist.
class ReferenceError : public Error {
 public:
  using Error::Error;
};

class ManifestError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

// Input graph violates a structural precondition (e.g. not connected).
class StructuralError : public Error {
 public:
  using Error::Error;
};

class IndexBuildError : public Error {
 public:
  using Error::Error;
};

class QueryError : public Error {
 public:
  using Error::Error;
};

class DataError : public Error {
 public:
  using Error::Error;
};

// Input too large for an exhaustive test oracle.
class OracleScaleError : public Error {
 public:
  using Error::Error;
};

}  // namespace opmine
