#pragma once

#include <stdexcept>
#include <string>

namespace rimg {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class GeometryError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A numeric parameter outside its domain (negative weight, p outside (0,1)).
class ParameterError : public Error {
 public:
  using Error::Error;
};

class FormatError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// A proximal map or decomposition failed to converge.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

}  // namespace rimg
