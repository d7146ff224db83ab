#pragma once

#include <stdexcept>
#include <string>

namespace lhc {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(int line, int col, const std::string& msg)
      : Error(std::to_string(line) + ":" + std::to_string(col) + ": " + msg), line_(line), col_(col), msg_(msg) {}

  int line() const { return line_; }
  int column() const { return col_; }
  const std::string& message() const { return msg_; }

 private:
  int line_;
  int col_;
  std::string msg_;
};

/// A definition references itself, a later definition, or is redefined.
class UndefinedName : public ParseError {
 public:
  using ParseError::ParseError;
};

enum class TypeErrorKind {
  mismatch,
  unbound,
  nonfunction,
  nonaudited,
  missing_default,
  branch_domain_mismatch,
  nonempty_gamma_under_bang,
  trail_endpoint_mismatch,
};

inline const char* kind_name(TypeErrorKind k) {
  switch (k) {
    case TypeErrorKind::mismatch: return "type mismatch";
    case TypeErrorKind::unbound: return "unbound variable";
    case TypeErrorKind::nonfunction: return "not a function";
    case TypeErrorKind::nonaudited: return "not an audited unit";
    case TypeErrorKind::missing_default: return "missing default branch";
    case TypeErrorKind::branch_domain_mismatch: return "branch domains differ";
    case TypeErrorKind::nonempty_gamma_under_bang: return "simple variable used under a bang";
    case TypeErrorKind::trail_endpoint_mismatch: return "trail endpoint mismatch";
  }
  return "type error";
}

/// `location` is the printed subexpression being checked; `expected` and
/// `actual` may be empty.
class TypeError : public Error {
 public:
  TypeError(TypeErrorKind kind, std::string location, std::string expected = {}, std::string actual = {})
      : Error(render(kind, location, expected, actual)),
        kind_(kind),
        location_(std::move(location)),
        expected_(std::move(expected)),
        actual_(std::move(actual)) {}

  TypeErrorKind kind() const { return kind_; }
  const std::string& location() const { return location_; }
  const std::string& expected() const { return expected_; }
  const std::string& actual() const { return actual_; }

 private:
  TypeErrorKind kind_;
  std::string location_, expected_, actual_;

  static std::string render(TypeErrorKind k, const std::string& loc, const std::string& exp, const std::string& act) {
    std::string s = kind_name(k);
    if (!exp.empty() || !act.empty()) s += ": expected " + exp + ", found " + act;
    if (!loc.empty()) s += " in `" + loc + "`";
    return s;
  }
};

/// Trail inspection over a branch map without a default branch.
class MissingDefault : public Error {
 public:
  MissingDefault() : Error("branch map has no default branch") {}
};

/// A trail context was requested for an evaluation context whose hole sits
/// under a bang.
class NotBoxFree : public Error {
 public:
  NotBoxFree() : Error("evaluation context has its hole under a bang") {}
};

class NotBangRooted : public Error {
 public:
  NotBangRooted() : Error("term is not rooted at a bang") {}
};

/// Graph exploration hit its node limit before completing.
class BoundExceeded : public Error {
 public:
  explicit BoundExceeded(std::size_t limit)
      : Error("reduction graph exceeded " + std::to_string(limit) + " nodes"), limit_(limit) {}
  std::size_t limit() const { return limit_; }

 private:
  std::size_t limit_;
};

}  // namespace lhc
