#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dnp {

class GameState;

// The `dnp` command line: play, simulate, solve, verify, enumerate, serve.
// args excludes the program name. Returns the process exit status.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

// Text picture of a position: dots, unit-length and unit-diagonal segments,
// owner digits in claimed cells whose centre is inside the claim; longer
// segments and the claims are listed underneath.
std::string render_board(const GameState& st);

}  // namespace dnp
