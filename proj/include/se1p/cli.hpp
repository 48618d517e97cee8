#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace se1p {

// Exit codes: 0 success, 2 usage or input error, 1 numerical or other failure.
int run(int argc, char** argv);

// args excludes the program name. Output that would go to stdout goes to out unless --out is given.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace se1p
