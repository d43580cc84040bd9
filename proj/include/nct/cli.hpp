#ifndef NCT_CLI_HPP
#define NCT_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace nct {

// exit codes: 0 success / feasible / pass, 1 verified negative,
// 2 inconclusive (non-convergence), 64 usage error
int runCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct CliResult {
  int exit_code;
  std::string out;
  std::string err;
};

CliResult runCliCapture(const std::vector<std::string>& args);

}  // namespace nct

#endif
