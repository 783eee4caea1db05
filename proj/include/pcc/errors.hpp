#pragma once

#include <stdexcept>
#include <string>

namespace pcc {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidInstance : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class PreconditionViolated : public Error {
 public:
  using Error::Error;
};

class InvalidSystem : public Error {
 public:
  using Error::Error;
};

class GenerationFailure : public Error {
 public:
  using Error::Error;
};

class SideSizeTooLarge : public Error {
 public:
  using Error::Error;
};

/// An exchange whose preconditions held produced an invalid structure.
class SurgeryInvariantViolated : public Error {
 public:
  using Error::Error;
};

class NoOutsideVertex : public Error {
 public:
  using Error::Error;
};

class OverlapError : public Error {
 public:
  using Error::Error;
};

class NotAbsorbing : public Error {
 public:
  using Error::Error;
};

class NoLinkingEdge : public Error {
 public:
  using Error::Error;
};

class LinkFailure : public Error {
 public:
  LinkFailure(int step, const std::string& what)
      : Error("link failure at step " + std::to_string(step) + ": " + what), step_(step) {}
  int step() const { return step_; }

 private:
  int step_;
};

class SpliceInvariantViolated : public Error {
 public:
  using Error::Error;
};

}  // namespace pcc
