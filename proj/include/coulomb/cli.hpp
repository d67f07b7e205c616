#pragma once

#include <iosfwd>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "coulomb/abelian.hpp"
#include "coulomb/lattice.hpp"
#include "coulomb/monopole.hpp"

namespace coulomb::cli {

/// Malformed user input; `what()` names the offending field.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

using TheorySpec = std::variant<TorusTheory, QuiverData>;

/// Parses a TheorySpec document, {"kind": "torus", "rank", "matter",
/// "flavor"?} or {"kind": "quiver", "vertices", "edges", "v", "w"}.
/// Integers may be JSON numbers or strings.
TheorySpec parse_theory(const nlohmann::json& j);
/// Inline JSON, or `@path` to read it from a file.
TheorySpec parse_theory_argument(const std::string& argument);
IntMatrix parse_matrix(const nlohmann::json& j, const std::string& field);

/// Evaluates an expression such as `2*w*x - (w + hbar)*X[-1] + 1/2` in the
/// algebra of `theory`; products are taken in `mode`, left to right.
AlgebraElement parse_element(const std::shared_ptr<const TorusTheory>& theory, const std::string& text,
                             ProductMode mode);

/// Runs one subcommand. `args` excludes the program name. Returns the exit
/// code: 0 success, 1 invalid input, 2 divergence, 3 internal error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace coulomb::cli
