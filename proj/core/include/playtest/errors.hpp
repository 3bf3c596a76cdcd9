/*
 * Copyright 2026 The Playtest Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace playtest {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// trace

class MalformedLine : public Error {
 public:
  explicit MalformedLine(std::size_t line_no)
      : Error("malformed trace line " + std::to_string(line_no)),
        line_no_(line_no) {}
  std::size_t line_no() const { return line_no_; }

 private:
  std::size_t line_no_;
};

class OutOfBounds : public Error {
 public:
  OutOfBounds(double x, double y)
      : Error("coordinate (" + std::to_string(x) + ", " + std::to_string(y) +
              ") outside screen"),
        x_(x),
        y_(y) {}
  double x() const { return x_; }
  double y() const { return y_; }

 private:
  double x_;
  double y_;
};

class EmptyAction : public Error {
 public:
  EmptyAction() : Error("action has no gestures") {}
};

// scene

class TemplateTooLarge : public Error {
 public:
  explicit TemplateTooLarge(const std::string& spec)
      : Error("template '" + spec + "' is not smaller than the frame") {}
};

class ImageError : public Error {
 public:
  using Error::Error;
};

// infer

class OrphanFile : public Error {
 public:
  explicit OrphanFile(std::int64_t t)
      : Error("demo file " + std::to_string(t) + " has no counterpart"),
        t_(t) {}
  std::int64_t timestamp() const { return t_; }

 private:
  std::int64_t t_;
};

class NoMajority : public Error {
 public:
  NoMajority() : Error("no gesture sequence holds a strict majority") {}
};

class VerticalDegenerate : public Error {
 public:
  VerticalDegenerate() : Error("swipe is vertical; no finite slope") {}
};

class HeterogeneousTouch : public Error {
 public:
  HeterogeneousTouch() : Error("touched cells hold different icon indexes") {}
};

class EmptyDemo : public Error {
 public:
  EmptyDemo() : Error("no tactic could be inferred from the demo") {}
};

class FormatError : public Error {
 public:
  using Error::Error;
};

// apply

class NoConvergence : public Error {
 public:
  NoConvergence() : Error("endpoint search did not converge") {}
};

class DegenerateTarget : public Error {
 public:
  DegenerateTarget() : Error("target shares the origin's x coordinate") {}
};

// Neither root of the endpoint equations agrees with the displacement hint.
class HintConflict : public Error {
 public:
  HintConflict() : Error("no endpoint agrees with the displacement hint") {}
};

class NoApplicablePattern : public Error {
 public:
  NoApplicablePattern() : Error("no stored pattern matches the grid") {}
};

class MissingInstance : public Error {
 public:
  explicit MissingInstance(const std::string& what)
      : Error("context lacks a required " + what + " instance") {}
};

// games / harness

class UnknownGame : public Error {
 public:
  explicit UnknownGame(const std::string& id)
      : Error("unknown game '" + id + "'") {}
};

class SourceTimeout : public Error {
 public:
  explicit SourceTimeout(std::int64_t t)
      : Error("no action arrived for snapshot " + std::to_string(t)), t_(t) {}
  std::int64_t timestamp() const { return t_; }

 private:
  std::int64_t t_;
};

}  // namespace playtest
