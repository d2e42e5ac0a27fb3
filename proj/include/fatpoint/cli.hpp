#pragma once

#include "fatpoint/affine.hpp"
#include "fatpoint/system.hpp"

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace fatpoint::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFalse = 1;      // verdict false, certificate rejected
inline constexpr int kExitNoProof = 2;    // prove-empty found no certificate
inline constexpr int kExitUsage = 64;     // malformed flags
inline constexpr int kExitInternal = 70;  // precondition violated inside the engine

// Raised for values that do not match the flag grammar.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// "S,I" or "I".
AffineValue parse_value(const std::string& text);
// "S,I:C;S,I:C;..." (":C" may be omitted for a single point).
std::vector<MultiplicityRun> parse_mults(const std::string& text);

// Runs one command. args excludes the program name. JSON (or CSV for sweep)
// goes to out, diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fatpoint::cli
