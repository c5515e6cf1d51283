// Command-line front end. Talks to the engine only through the C API.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "typesemi/typesemi.h"

namespace {

  constexpr int exit_internal = 1;
  constexpr int exit_invalid  = 2;

  struct Args {
    std::string file;
    std::string lhs, rhs, target;
    unsigned    k = 2, l = 1;
    std::size_t n = 2;
    std::string format = "json";
    std::string out;
    ts_options  options = ts_options_default();
  };

  int diagnostic(std::string const& code, std::string const& message) {
    nlohmann::json j = {{"error", {{"code", code}, {"message", message}}}};
    std::cout << j.dump(2) << "\n";
    return exit_invalid;
  }

  int from_status(ts_status s) {
    if (s == TS_INTERNAL) {
      nlohmann::json j = {{"error", {{"code", ts_status_name(s)}, {"message", ts_last_error()}}}};
      std::cout << j.dump(2) << "\n";
      return exit_internal;
    }
    return diagnostic(ts_status_name(s), ts_last_error());
  }

  void add_common(CLI::App* sub, Args& a) {
    sub->add_option("file", a.file, "model file (JSON)")->required();
    sub->add_option("--budget-states", a.options.budget_states, "visited-state cap");
    sub->add_option("--budget-coord", a.options.budget_coord, "coordinate cap");
    sub->add_option("--modulus-bound", a.options.modulus_bound, "largest modulus tried");
    sub->add_option("--format", a.format, "output format")->check(CLI::IsMember({"json", "text"}));
    sub->add_option("--seed", a.options.seed, "random seed");
    sub->add_option("--out", a.out, "write the report to this path");
  }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Type semigroups of ample groupoids"};
  app.require_subcommand(1);
  Args a;

  auto classify = app.add_subcommand("classify", "classify a graph or k-graph");
  add_common(classify, a);
  classify->add_option("--coeff-bound", a.options.coeff_bound, "largest coefficient in the sweep");
  classify->add_option("--mult-bound", a.options.mult_bound, "largest multiplier in the sweep");

  auto equiv = app.add_subcommand("equiv", "decide lhs ~ rhs");
  add_common(equiv, a);
  equiv->add_option("--lhs", a.lhs)->required();
  equiv->add_option("--rhs", a.rhs)->required();

  auto leq = app.add_subcommand("leq", "decide lhs <= rhs");
  add_common(leq, a);
  leq->add_option("--lhs", a.lhs)->required();
  leq->add_option("--rhs", a.rhs)->required();

  auto paradox = app.add_subcommand("paradox", "decide k*target <= l*target");
  add_common(paradox, a);
  paradox->add_option("--target", a.target)->required();
  paradox->add_option("--k", a.k);
  paradox->add_option("--l", a.l);

  auto state = app.add_subcommand("state", "find a state normalized at target");
  add_common(state, a);
  state->add_option("--target", a.target)->required();

  auto coboundary = app.add_subcommand("coboundary", "check the coboundary condition");
  add_common(coboundary, a);

  auto unperf = app.add_subcommand("unperforation", "bounded almost-unperforation sweep");
  add_common(unperf, a);
  unperf->add_option("--coeff-bound", a.options.coeff_bound, "largest coefficient in the sweep");
  unperf->add_option("--mult-bound", a.options.mult_bound, "largest multiplier in the sweep");

  auto oracle = app.add_subcommand("oracle-compare", "engine against explicit groupoid");
  add_common(oracle, a);
  oracle->add_option("--samples", a.options.samples, "number of sampled pairs");

  auto stab = app.add_subcommand("stabilize-test", "compare G with G x R_n");
  add_common(stab, a);
  stab->add_option("--n", a.n, "size of R_n");

  try {
    app.parse(argc, argv);
  } catch (CLI::CallForHelp const& e) {
    return app.exit(e);
  } catch (CLI::ParseError const& e) {
    return diagnostic("USAGE", e.what());
  }

  std::ifstream in(a.file, std::ios::binary);
  if (!in) {
    return diagnostic("IO", "cannot read '" + a.file + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  std::string const text = buf.str();

  ts_model* model = nullptr;
  if (auto s = ts_model_parse(text.data(), text.size(), &model); s != TS_OK) {
    return from_status(s);
  }

  ts_result*        result = nullptr;
  ts_options const* o      = &a.options;
  ts_status         s      = TS_OK;
  auto const*       sub    = app.get_subcommands().front();
  if (sub == classify) {
    s = ts_classify(model, o, &result);
  } else if (sub == equiv) {
    s = ts_equiv(model, a.lhs.c_str(), a.rhs.c_str(), o, &result);
  } else if (sub == leq) {
    s = ts_leq(model, a.lhs.c_str(), a.rhs.c_str(), o, &result);
  } else if (sub == paradox) {
    s = ts_paradox(model, a.target.c_str(), a.k, a.l, o, &result);
  } else if (sub == state) {
    s = ts_state(model, a.target.c_str(), o, &result);
  } else if (sub == coboundary) {
    s = ts_coboundary(model, o, &result);
  } else if (sub == unperf) {
    s = ts_unperforation(model, o, &result);
  } else if (sub == oracle) {
    s = ts_oracle_compare(model, o, &result);
  } else {
    s = ts_stabilize_test(model, a.n, o, &result);
  }
  ts_model_free(model);
  if (s != TS_OK) {
    return from_status(s);
  }

  std::string const report = a.format == "text" ? ts_result_text(result) : ts_result_json(result);
  int const         code   = ts_result_exit_code(result);
  ts_result_free(result);

  if (a.out.empty()) {
    std::cout << report;
  } else {
    std::ofstream f(a.out, std::ios::binary);
    f << report;
    if (!f) {
      std::cerr << "cannot write '" << a.out << "'\n";
      return exit_internal;
    }
  }
  return code;
}
