#pragma once

#include <stdexcept>
#include <string>

namespace ctxminer {

// Base class for every recoverable engine error. The CLI maps these to
// exit code 1; usage problems are reported separately.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Unsupported tokenizer or inconsistent window parameters.
struct ConfigError : Error {
  using Error::Error;
};

// Input text is not a valid JSON / JSONL record.
struct ParseError : Error {
  using Error::Error;
};

// Structurally invalid trajectory or message (roles, alternation, fields).
struct SchemaError : Error {
  using Error::Error;
};

// Semantically invalid request: missing reward, malformed group, bad tool
// arguments, undefined composition ratio.
struct ValidationError : Error {
  using Error::Error;
};

// Alternation violated while appending to a live context window.
struct StateError : Error {
  using Error::Error;
};

// Corpus directory could not be ingested.
struct IngestError : Error {
  using Error::Error;
};

// Unknown document url.
struct NotFoundError : Error {
  using Error::Error;
};

// Requested page lies past the end of the document.
struct PageRangeError : Error {
  PageRangeError(const std::string& what, int total_pages)
      : Error(what), total_pages(total_pages) {}
  int total_pages;
};

}  // namespace ctxminer
