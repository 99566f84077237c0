// Copyright 2026 The heritage-forge Authors
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

#ifndef HERITAGE_FORGE_ERRORS_HPP
#define HERITAGE_FORGE_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace heritage {

/// Base of every error raised by the library. `kind()` is the stable error
/// class name ("SchemaError", "BadMagic", ...) used in reports and tests.
class Error : public std::runtime_error {
  public:
    Error(std::string kind, std::string const& message)
        : std::runtime_error{message}, kind_{std::move(kind)} {}

    [[nodiscard]] auto kind() const noexcept -> std::string const& {
        return kind_;
    }

  private:
    std::string kind_;
};

/// Malformed structured text. Line and column are 1-based.
class SyntaxError : public Error {
  public:
    SyntaxError(std::string const& message, std::size_t line,
                std::size_t column)
        : Error{"SyntaxError", message}, line_{line}, column_{column} {}

    [[nodiscard]] auto line() const noexcept -> std::size_t { return line_; }
    [[nodiscard]] auto column() const noexcept -> std::size_t {
        return column_;
    }

  private:
    std::size_t line_;
    std::size_t column_;
};

/// Missing or ill-typed field. `field()` is a dotted path such as
/// "layers[1].period_start".
class SchemaError : public Error {
  public:
    SchemaError(std::string field, std::string const& message)
        : Error{"SchemaError",
                field.empty() ? message : field + ": " + message},
          field_{std::move(field)} {}

    [[nodiscard]] auto field() const noexcept -> std::string const& {
        return field_;
    }

  private:
    std::string field_;
};

/// One or more identifiers (or files) that are referenced but not declared.
class ReferenceError : public Error {
  public:
    explicit ReferenceError(std::vector<std::string> missing);

    [[nodiscard]] auto missing() const noexcept
        -> std::vector<std::string> const& {
        return missing_;
    }

  private:
    std::vector<std::string> missing_;
};

class DuplicateIdError : public Error {
  public:
    explicit DuplicateIdError(std::string id)
        : Error{"DuplicateIdError", "duplicate id \"" + id + "\""},
          id_{std::move(id)} {}

    [[nodiscard]] auto id() const noexcept -> std::string const& {
        return id_;
    }

  private:
    std::string id_;
};

#define HERITAGE_SIMPLE_ERROR(Name)                                     \
    class Name : public Error {                                         \
      public:                                                           \
        explicit Name(std::string const& message) : Error{#Name, message} {} \
    }

HERITAGE_SIMPLE_ERROR(GeoJsonError);
HERITAGE_SIMPLE_ERROR(DomainError);
HERITAGE_SIMPLE_ERROR(DegenerateError);
HERITAGE_SIMPLE_ERROR(SingularError);
HERITAGE_SIMPLE_ERROR(TooCloseError);
HERITAGE_SIMPLE_ERROR(CoincidentError);
HERITAGE_SIMPLE_ERROR(EmptyInputError);
HERITAGE_SIMPLE_ERROR(DecodeError);
HERITAGE_SIMPLE_ERROR(ConfigError);

#undef HERITAGE_SIMPLE_ERROR

enum class GlbErrorKind {
    kBadMagic,
    kUnsupportedVersion,
    kTruncatedFile,
    kChunkOrderError,
    kAlignmentError,
    kJsonChunkError,
};

[[nodiscard]] auto ToString(GlbErrorKind kind) noexcept -> char const*;

/// Structural defect in a GLB container; `kind()` is e.g. "TruncatedFile".
class GlbError : public Error {
  public:
    GlbError(GlbErrorKind kind, std::string const& message)
        : Error{ToString(kind), message}, glb_kind_{kind} {}

    [[nodiscard]] auto glb_kind() const noexcept -> GlbErrorKind {
        return glb_kind_;
    }

  private:
    GlbErrorKind glb_kind_;
};

enum class ImageErrorKind { kUnknownFormat, kCorruptHeader };

[[nodiscard]] auto ToString(ImageErrorKind kind) noexcept -> char const*;

class ImageError : public Error {
  public:
    ImageError(ImageErrorKind kind, std::string const& message)
        : Error{ToString(kind), message}, image_kind_{kind} {}

    [[nodiscard]] auto image_kind() const noexcept -> ImageErrorKind {
        return image_kind_;
    }

  private:
    ImageErrorKind image_kind_;
};

}  // namespace heritage

#endif  // HERITAGE_FORGE_ERRORS_HPP
