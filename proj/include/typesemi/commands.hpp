#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "typesemi/model_io.hpp"

namespace typesemi {

  enum ExitCode : int {
    exit_definite = 0,
    exit_internal = 1,
    exit_invalid  = 2,
    exit_unknown  = 3
  };

  struct CommandOptions {
    SearchBudget  budget;
    unsigned      coeff_bound = 4;
    unsigned      mult_bound  = 4;
    std::uint64_t seed        = 0;
    unsigned      samples     = 100;
  };

  struct CommandResult {
    int            exit_code = exit_definite;
    nlohmann::json report;

    std::string json() const;  // pretty-printed, sorted keys, trailing newline
    std::string text() const;
  };

  CommandResult run_classify(ModelFile const& m, CommandOptions const& o);
  CommandResult run_equiv(ModelFile const& m, std::string const& lhs, std::string const& rhs,
                          CommandOptions const& o);
  CommandResult run_leq(ModelFile const& m, std::string const& lhs, std::string const& rhs,
                        CommandOptions const& o);
  CommandResult run_paradox(ModelFile const& m, std::string const& target, unsigned k,
                            unsigned l, CommandOptions const& o);
  CommandResult run_state(ModelFile const& m, std::string const& target, CommandOptions const& o);
  CommandResult run_coboundary(ModelFile const& m, CommandOptions const& o);
  CommandResult run_unperforation(ModelFile const& m, CommandOptions const& o);
  CommandResult run_oracle_compare(ModelFile const& m, CommandOptions const& o);
  CommandResult run_stabilize_test(ModelFile const& m, std::size_t n, CommandOptions const& o);

}  // namespace typesemi
