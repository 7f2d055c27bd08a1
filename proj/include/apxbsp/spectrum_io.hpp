// Spectrum files.
//
// JSON: {"p": 2, "entries": [{"k": 1, "lambda": 1.0, "re": 3, "im": 0}, ...]}
// CSV:  header "k,lambda,re,im", p supplied by the caller.
//
// Both loaders validate the spectrum and reject on any violation.

#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "apxbsp/spectrum.hpp"

namespace apxbsp {

class LoadError : public std::runtime_error {
 public:
  LoadError(const std::string& source, int line, const std::string& what);
  int line() const { return line_; }

 private:
  int line_;
};

Spectrum parse_spectrum_json(const std::string& text, const std::string& source = "<string>");
Spectrum parse_spectrum_csv(const std::string& text, double p,
                            const std::string& source = "<string>");

/// Dispatches on the file extension (.csv, anything else is JSON).
Spectrum load_spectrum(const std::string& path, double csv_p = 2.0);

std::string spectrum_to_json(const Spectrum& s, int indent = 2);
std::string spectrum_to_csv(const Spectrum& s);

}  // namespace apxbsp
