#ifndef SDM_CLI_HPP
#define SDM_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace sdm::cli {

inline constexpr const char* kVersion = "1.0.0";

// exit codes
inline constexpr int kOk = 0;
inline constexpr int kFailure = 1;       // verification failure / internal inconsistency
inline constexpr int kBadInput = 2;      // malformed rational or option
inline constexpr int kDomain = 3;        // parameter outside documented domain
inline constexpr int kIo = 4;            // unwritable output path

// Runs one command; args exclude the program name. Machine output goes to
// --out when given (human summary on `out`), otherwise everything to `out`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sdm::cli

#endif
