#pragma once

#include <iosfwd>
#include <string>

#include "ffzeta/zetafn.hpp"

namespace ffzeta {

// Parses "a+bi" literals: "2", "-1.5", "0.5+1.2i", "1e-3-2.5e2i", "2i", "-i".
// ParseError (with the offending position) on anything else.
Cplx parse_complex_literal(const std::string& text);

// Full command-line front end. Writes the payload to out and diagnostics to
// err; returns the process exit code: 0 success, 1 computation failure
// (with a JSON error object on out), 2 usage error.
int cli_main(int argc, const char* const* argv, std::ostream& out,
             std::ostream& err);

}  // namespace ffzeta
