// Copyright 2026 The convsql Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CONVSQL_ERRORS_H_
#define CONVSQL_ERRORS_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace convsql {

// Base class for every domain error raised by the library. The CLI maps
// these to exit code 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class LexError : public Error {
 public:
  LexError(size_t position, const std::string &detail)
      : Error("lex error at " + std::to_string(position) + ": " + detail),
        position_(position) {}
  size_t position() const { return position_; }

 private:
  size_t position_;
};

class SyntaxError : public Error {
 public:
  SyntaxError(size_t position, const std::string &expected,
              const std::string &found)
      : Error("syntax error at " + std::to_string(position) + ": expected " +
              expected + ", found '" + found + "'"),
        position_(position),
        expected_(expected) {}
  size_t position() const { return position_; }
  const std::string &expected() const { return expected_; }

 private:
  size_t position_;
  std::string expected_;
};

class UnknownIdentifier : public Error {
 public:
  explicit UnknownIdentifier(const std::string &name)
      : Error("unknown identifier '" + name + "'"), name_(name) {}
  const std::string &name() const { return name_; }

 private:
  std::string name_;
};

class UnsupportedFeature : public Error {
 public:
  explicit UnsupportedFeature(const std::string &construct)
      : Error("unsupported SQL construct: " + construct),
        construct_(construct) {}
  const std::string &construct() const { return construct_; }

 private:
  std::string construct_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class FormatError : public Error {
 public:
  FormatError(const std::string &db_id, const std::string &detail)
      : Error(db_id.empty() ? "format error: " + detail
                            : "format error in '" + db_id + "': " + detail),
        db_id_(db_id),
        detail_(detail) {}
  const std::string &db_id() const { return db_id_; }
  const std::string &detail() const { return detail_; }

 private:
  std::string db_id_;
  std::string detail_;
};

// A gold SQL in a dataset file failed to parse.
class ParseError : public Error {
 public:
  ParseError(const std::string &interaction_id, int turn,
             const std::string &cause)
      : Error("interaction '" + interaction_id + "' turn " +
              std::to_string(turn) + ": " + cause),
        interaction_id_(interaction_id),
        turn_(turn) {}
  const std::string &interaction_id() const { return interaction_id_; }
  int turn() const { return turn_; }

 private:
  std::string interaction_id_;
  int turn_;
};

class MissingPrediction : public Error {
 public:
  MissingPrediction(const std::string &interaction_id, int turn)
      : Error("missing prediction for interaction '" + interaction_id +
              "' turn " + std::to_string(turn)),
        interaction_id_(interaction_id),
        turn_(turn) {}
  const std::string &interaction_id() const { return interaction_id_; }
  int turn() const { return turn_; }

 private:
  std::string interaction_id_;
  int turn_;
};

class EndpointError : public Error {
 public:
  EndpointError(int turn, const std::string &cause)
      : Error("endpoint failure on turn " + std::to_string(turn) + ": " +
              cause),
        turn_(turn),
        cause_(cause) {}
  int turn() const { return turn_; }
  const std::string &cause() const { return cause_; }

 private:
  int turn_;
  std::string cause_;
};

}  // namespace convsql

#endif  // CONVSQL_ERRORS_H_
