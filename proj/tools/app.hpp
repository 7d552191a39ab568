#pragma once

// Command-line driver. Every command renders into a string so that the
// golden files, the executable and the tests share one code path.

#include <map>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace hk::app {

enum Exit { kOk = 0, kInvalid = 1, kInconsistent = 2 };

// Bad flags or inputs; maps to exit code 1.
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// File name -> expected content of every golden file.
std::map<std::string, std::string> golden_files();

}  // namespace hk::app
