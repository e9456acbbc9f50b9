#ifndef LAYERLEARN_ERRORS_HPP
#define LAYERLEARN_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace layerlearn {

// Malformed input file; message carries the file name and 1-based line number.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// A computation produced non-finite values (NaN/Inf); indicates upstream corruption.
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace layerlearn

#endif
