#pragma once

#include <stdexcept>
#include <string>

namespace stackamb {

// Base class for everything thrown by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Raised by the text/JSON readers when the input cannot be tokenized or
// does not follow the grammar. Line/column are 1-based; 0 means unknown.
class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& what, std::size_t line = 0, std::size_t column = 0)
      : Error(what), line(line), column(column) {}
  std::size_t line;
  std::size_t column;
};

enum class ValidationKind {
  DimensionMismatch,
  EmptyFollowerList,
  NonRationalEntry,
};

// Structural problem in a game, strategy or commitment set.
class ValidationError : public Error {
 public:
  ValidationError(ValidationKind kind, const std::string& what)
      : Error(what), kind(kind) {}
  ValidationKind kind;
};

class BudgetExceeded : public Error {
 public:
  explicit BudgetExceeded(const std::string& what) : Error(what) {}
};

class DisconnectedGraph : public Error {
 public:
  explicit DisconnectedGraph(const std::string& what) : Error(what) {}
};

class UnknownExample : public Error {
 public:
  explicit UnknownExample(const std::string& what) : Error(what) {}
};

class MissingParam : public Error {
 public:
  explicit MissingParam(const std::string& what) : Error(what) {}
};

class PreconditionViolated : public Error {
 public:
  explicit PreconditionViolated(const std::string& what) : Error(what) {}
};

class WrongLeaderActionCount : public Error {
 public:
  explicit WrongLeaderActionCount(const std::string& what) : Error(what) {}
};

// A computed result failed an internal exact re-verification.  Seeing this
// means a bug in the solver, never bad user input.
class InternalError : public Error {
 public:
  explicit InternalError(const std::string& what) : Error(what) {}
};

}  // namespace stackamb
