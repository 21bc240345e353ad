#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace gclink {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or out-of-range user input (non-coprime fractions, bad frames, ...).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// Input that is well formed but excluded from the theory, e.g. the fraction 1/0.
class OutOfScope : public Error {
 public:
  using Error::Error;
};

/// Two circles that were required to be disjoint intersect or coincide.
class NotDisjoint : public Error {
 public:
  NotDisjoint(const std::string& what, int first = -1, int second = -1)
      : Error(what), first_(first), second_(second) {}
  int first() const { return first_; }
  int second() const { return second_; }

 private:
  int first_;
  int second_;
};

/// A link is not mapped to itself by an isometry.
class NotInvariant : public Error {
 public:
  NotInvariant(const std::string& what, int index) : Error(what), index_(index) {}
  int index() const { return index_; }

 private:
  int index_;
};

/// A certification sub-check was falsified.
class CertificateFailed : public Error {
 public:
  CertificateFailed(std::string check, const std::string& what)
      : Error(what), check_(std::move(check)) {}
  const std::string& check() const { return check_; }

 private:
  std::string check_;
};

}  // namespace gclink
