#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rwde {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Structurally unusable graph description (unknown vertex name, too many edges).
class GraphError : public Error {
 public:
  using Error::Error;
};

/// Malformed graph or map file. `line` is 1-based, 0 when unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line = 0, std::string field = {})
      : Error(what), line_(line), field_(std::move(field)) {}
  std::size_t line() const { return line_; }
  const std::string& field() const { return field_; }

 private:
  std::size_t line_;
  std::string field_;
};

/// An edge-indexed input does not cover every edge of the graph.
class MissingEdgeValue : public Error {
 public:
  using Error::Error;
};

/// Argument outside an operation's domain (non-positive weight, wrong tree kind, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Random walk or Wilson sampler exceeded its step cap.
class IterationCapExceeded : public Error {
 public:
  using Error::Error;
};

class QuadratureError : public Error {
 public:
  using Error::Error;
};

/// A point or path touches ker l_C for some cycle C.
class ExcludedLocusError : public Error {
 public:
  ExcludedLocusError(const std::string& what, std::size_t cycle) : Error(what), cycle_(cycle) {}
  std::size_t cycle() const { return cycle_; }

 private:
  std::size_t cycle_;
};

class TransportError : public Error {
 public:
  using Error::Error;
};

}  // namespace rwde
