#ifndef KMLAB_ERRORS_HPP
#define KMLAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace kmlab {

/// Base class for all kmlab errors.
class error : public std::runtime_error {
public:
  explicit error(const std::string& what) : std::runtime_error(what) {}
};

/// Two vectors (or a vector and an operator domain) disagree on dimension.
class dimension_error : public error {
public:
  explicit dimension_error(const std::string& what) : error(what) {}
};

/// An input contains NaN or Inf.
class input_error : public error {
public:
  explicit input_error(const std::string& what) : error(what) {}
};

/// A parameter lies outside the hypothesis range of the operation
/// (e.g. a relaxation coefficient outside its admissible interval).
class hypothesis_error : public error {
public:
  explicit hypothesis_error(const std::string& what) : error(what) {}
};

/// A stated precondition is unmet (e.g. the supplied anchor is not a
/// fixed point / zero of the operator).
class precondition_error : public error {
public:
  explicit precondition_error(const std::string& what) : error(what) {}
};

/// Unknown catalog entry, malformed spec record, or invalid configuration.
class config_error : public error {
public:
  explicit config_error(const std::string& what) : error(what) {}
};

/// The object lacks an optional capability the operation needs
/// (e.g. no zero-set descriptor, so distances cannot be evaluated).
class capability_error : public error {
public:
  explicit capability_error(const std::string& what) : error(what) {}
};

/// Output I/O failure.
class io_error : public error {
public:
  explicit io_error(const std::string& what) : error(what) {}
};

}  // namespace kmlab

#endif
