#pragma once

#include <string>

#include "munu/common.hpp"

namespace munu::cli {

// A parse error tagged with the file or argument it came from.
class SourceError : public ParseError {
 public:
  SourceError(std::string source, const ParseError& e)
      : ParseError(e.what(), e.line(), e.column()), source_(std::move(source)) {}
  const std::string& source() const { return source_; }

 private:
  std::string source_;
};

}  // namespace munu::cli
