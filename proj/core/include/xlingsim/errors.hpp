#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace xlingsim {

/// Base class for runtime failures raised by the toolkit. Precondition
/// violations use std::invalid_argument instead.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed content in a resource or dataset file.
class ParseError : public Error {
 public:
  ParseError(std::string path, std::size_t line, const std::string& message)
      : Error(path + ":" + std::to_string(line) + ": " + message),
        path_(std::move(path)),
        line_(line) {}

  const std::string& path() const noexcept { return path_; }
  std::size_t line() const noexcept { return line_; }

 private:
  std::string path_;
  std::size_t line_;
};

/// A resource file is readable but internally inconsistent, e.g. two
/// embedding files with different dimensions.
class ResourceError : public Error {
 public:
  using Error::Error;
};

/// The translation provider has no entry for a sentence.
class TranslationMissing : public Error {
 public:
  explicit TranslationMissing(std::string sentence)
      : Error("no translation for sentence: \"" + sentence + "\""),
        sentence_(std::move(sentence)) {}

  const std::string& sentence() const noexcept { return sentence_; }

 private:
  std::string sentence_;
};

}  // namespace xlingsim
