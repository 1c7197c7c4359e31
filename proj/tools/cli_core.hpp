#ifndef UNIPOT_CLI_CORE_HPP
#define UNIPOT_CLI_CORE_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace unipot::cli {

// Exit codes: 0 success, 1 test failure, 2 usage error, 3 resource guard trip.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace unipot::cli

#endif
