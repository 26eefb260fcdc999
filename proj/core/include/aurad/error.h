/* Copyright 2026 The aurad Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#ifndef AURAD_ERROR_H_
#define AURAD_ERROR_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace aurad {

// Root of every exception thrown by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// File system and encoding failures. The CLI maps these to exit code 3.
class IoError : public Error {
 public:
  using Error::Error;
};

class UnreadableFile : public IoError {
 public:
  explicit UnreadableFile(const std::string& path, const std::string& why = "")
      : IoError("cannot read '" + path + "'" + (why.empty() ? "" : ": " + why)),
        path_(path) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

// Data that is well-formed on disk but violates a geometric or numerical
// precondition. The CLI maps these to exit code 1.
class ValidationError : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public ValidationError {
 public:
  DimensionMismatch(int w1, int h1, int w2, int h2)
      : ValidationError("dimension mismatch: " + std::to_string(w1) + "x" +
                        std::to_string(h1) + " vs " + std::to_string(w2) +
                        "x" + std::to_string(h2)) {}
  using ValidationError::ValidationError;
};

class IllegalLabelValue : public ValidationError {
 public:
  IllegalLabelValue(int label, std::size_t pixel_index)
      : ValidationError("illegal organ label " + std::to_string(label) +
                        " at pixel " + std::to_string(pixel_index)),
        label_(label),
        pixel_index_(pixel_index) {}
  int label() const { return label_; }
  std::size_t pixel_index() const { return pixel_index_; }

 private:
  int label_;
  std::size_t pixel_index_;
};

#define AURAD_DECLARE_ERROR(Name, Base) \
  class Name : public Base {            \
   public:                              \
    using Base::Base;                   \
  };

AURAD_DECLARE_ERROR(DegenerateInput, ValidationError)
AURAD_DECLARE_ERROR(MissingAnatomy, ValidationError)
AURAD_DECLARE_ERROR(MissingCtr, ValidationError)
AURAD_DECLARE_ERROR(NoOverlap, ValidationError)
AURAD_DECLARE_ERROR(UnplaceableFinding, ValidationError)
AURAD_DECLARE_ERROR(InvalidPolicy, ValidationError)
AURAD_DECLARE_ERROR(InvalidFinding, ValidationError)
AURAD_DECLARE_ERROR(TooSmallForScales, ValidationError)
AURAD_DECLARE_ERROR(NonPsdCovariance, ValidationError)
AURAD_DECLARE_ERROR(TooFewSamples, ValidationError)
AURAD_DECLARE_ERROR(DegenerateVariance, ValidationError)
AURAD_DECLARE_ERROR(DegenerateMarginals, ValidationError)
AURAD_DECLARE_ERROR(OutOfRangeRating, ValidationError)

// Structured-prompt grammar failures. The CLI maps these to exit code 2 when
// the prompt came from the command line.
class ParseError : public Error {
 public:
  using Error::Error;
};

AURAD_DECLARE_ERROR(UnrecognizedPrefix, ParseError)
AURAD_DECLARE_ERROR(MalformedClause, ParseError)
AURAD_DECLARE_ERROR(EmptyFindingList, ParseError)

class UnknownToken : public ParseError {
 public:
  enum class Kind { kSeverity, kClass, kLocation };

  UnknownToken(Kind kind, std::string token, std::size_t clause_index)
      : ParseError(std::string("unknown ") + KindName(kind) + " '" + token +
                   "' in clause " + std::to_string(clause_index)),
        kind_(kind),
        token_(std::move(token)),
        clause_index_(clause_index) {}

  Kind kind() const { return kind_; }
  const std::string& token() const { return token_; }
  std::size_t clause_index() const { return clause_index_; }

  static const char* KindName(Kind kind) {
    switch (kind) {
      case Kind::kSeverity:
        return "severity";
      case Kind::kClass:
        return "class";
      case Kind::kLocation:
        return "location";
    }
    return "token";
  }

 private:
  Kind kind_;
  std::string token_;
  std::size_t clause_index_;
};

class BackendFailure : public Error {
 public:
  BackendFailure(int attempt_index, const std::string& what)
      : Error("backend failed on attempt " + std::to_string(attempt_index) +
              ": " + what),
        attempt_index_(attempt_index) {}
  int attempt_index() const { return attempt_index_; }

 private:
  int attempt_index_;
};

// Reader-study protocol violations.
class StudyError : public Error {
 public:
  using Error::Error;
};

AURAD_DECLARE_ERROR(UnknownRater, StudyError)
AURAD_DECLARE_ERROR(UnknownItem, StudyError)
AURAD_DECLARE_ERROR(DuplicateResponse, StudyError)
AURAD_DECLARE_ERROR(OutOfRangeValue, StudyError)

#undef AURAD_DECLARE_ERROR

}  // namespace aurad

#endif  // AURAD_ERROR_H_
