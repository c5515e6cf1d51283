#include "typesemi/typesemi.h"

#include <new>
#include <string>

#include "typesemi/commands.hpp"
#include "typesemi/error.hpp"

struct ts_model {
  typesemi::ModelFile model;
};

struct ts_result {
  typesemi::CommandResult result;
  std::string             verdict;
  std::string             json;
  std::string             text;
};

namespace {

  thread_local std::string last_error;
  thread_local ts_status   last_code = TS_OK;

  ts_status fail(ts_status s, std::string msg) {
    last_error = std::move(msg);
    last_code  = s;
    return s;
  }

  ts_status status_of(typesemi::ErrorCode c) {
    using typesemi::ErrorCode;
    switch (c) {
      case ErrorCode::dimension_mismatch: return TS_DIMENSION_MISMATCH;
      case ErrorCode::step_not_applicable: return TS_STEP_NOT_APPLICABLE;
      case ErrorCode::invalid_pair: return TS_INVALID_PAIR;
      case ErrorCode::noncommuting_matrices: return TS_NONCOMMUTING_MATRICES;
      case ErrorCode::row_zero: return TS_ROW_ZERO;
      case ErrorCode::bad_reference: return TS_BAD_REFERENCE;
      case ErrorCode::overlapping_cylinders: return TS_OVERLAPPING_CYLINDERS;
      case ErrorCode::noncomposable_word: return TS_NONCOMPOSABLE_WORD;
      case ErrorCode::group_too_large: return TS_GROUP_TOO_LARGE;
      case ErrorCode::too_large: return TS_TOO_LARGE;
      case ErrorCode::zero_target: return TS_ZERO_TARGET;
      case ErrorCode::invalid_input: return TS_INVALID_INPUT;
      case ErrorCode::internal: return TS_INTERNAL;
    }
    return TS_INTERNAL;
  }

  typesemi::CommandOptions options_of(ts_options const* o) {
    ts_options const         src = o ? *o : ts_options_default();
    typesemi::CommandOptions out;
    out.budget.max_states     = src.budget_states;
    out.budget.max_coordinate = src.budget_coord;
    out.budget.modulus_bound  = src.modulus_bound;
    out.coeff_bound           = src.coeff_bound;
    out.mult_bound            = src.mult_bound;
    out.seed                  = src.seed;
    out.samples               = src.samples;
    return out;
  }

  template <typename F>
  ts_status guarded(F&& f) {
    last_error.clear();
    last_code = TS_OK;
    try {
      return f();
    } catch (typesemi::Error const& e) {
      return fail(status_of(e.code()), e.what());
    } catch (std::bad_alloc const&) {
      return fail(TS_TOO_LARGE, "out of memory");
    } catch (std::exception const& e) {
      return fail(TS_INTERNAL, e.what());
    }
  }

  template <typename F>
  ts_status run(ts_model const* m, ts_result** out, F&& f) {
    if (m == nullptr || out == nullptr) {
      return fail(TS_NULL_ARGUMENT, "null argument");
    }
    *out = nullptr;
    return guarded([&] {
      auto r     = new ts_result{f(m->model), {}, {}, {}};
      if (auto it = r->result.report.find("verdict");
          it != r->result.report.end() && it->is_string()) {
        r->verdict = it->template get<std::string>();
      }
      r->json = r->result.json();
      r->text = r->result.text();
      *out    = r;
      return TS_OK;
    });
  }

  std::string str(char const* s) {
    if (s == nullptr) {
      throw typesemi::Error(typesemi::ErrorCode::invalid_input, "missing vector argument");
    }
    return s;
  }

}  // namespace

extern "C" {

ts_options ts_options_default(void) {
  typesemi::CommandOptions d;
  ts_options               o;
  o.budget_states = d.budget.max_states;
  o.budget_coord  = d.budget.max_coordinate;
  o.modulus_bound = d.budget.modulus_bound;
  o.coeff_bound   = d.coeff_bound;
  o.mult_bound    = d.mult_bound;
  o.seed          = d.seed;
  o.samples       = d.samples;
  return o;
}

char const* ts_status_name(ts_status s) {
  switch (s) {
    case TS_OK: return "OK";
    case TS_NULL_ARGUMENT: return "NULL_ARGUMENT";
    default: break;
  }
  if (s < TS_OK || s > TS_NULL_ARGUMENT) {
    return "UNKNOWN_STATUS";
  }
  return typesemi::error_code_name(static_cast<typesemi::ErrorCode>(s - 1));
}

ts_status ts_model_parse(char const* json, size_t len, ts_model** out) {
  if (json == nullptr || out == nullptr) {
    return fail(TS_NULL_ARGUMENT, "null argument");
  }
  *out = nullptr;
  return guarded([&] {
    *out = new ts_model{typesemi::parse_model(std::string_view(json, len))};
    return TS_OK;
  });
}

void ts_model_free(ts_model* m) {
  delete m;
}

size_t ts_model_dim(ts_model const* m) {
  return m == nullptr ? 0 : m->model.labels().size();
}

ts_status ts_classify(ts_model const* m, ts_options const* o, ts_result** out) {
  return run(m, out, [&](auto const& mf) { return typesemi::run_classify(mf, options_of(o)); });
}

ts_status ts_equiv(ts_model const* m, char const* lhs, char const* rhs, ts_options const* o,
                   ts_result** out) {
  return run(m, out, [&](auto const& mf) {
    return typesemi::run_equiv(mf, str(lhs), str(rhs), options_of(o));
  });
}

ts_status ts_leq(ts_model const* m, char const* lhs, char const* rhs, ts_options const* o,
                 ts_result** out) {
  return run(m, out, [&](auto const& mf) {
    return typesemi::run_leq(mf, str(lhs), str(rhs), options_of(o));
  });
}

ts_status ts_paradox(ts_model const* m, char const* target, unsigned k, unsigned l,
                     ts_options const* o, ts_result** out) {
  return run(m, out, [&](auto const& mf) {
    return typesemi::run_paradox(mf, str(target), k, l, options_of(o));
  });
}

ts_status ts_state(ts_model const* m, char const* target, ts_options const* o, ts_result** out) {
  return run(m, out,
             [&](auto const& mf) { return typesemi::run_state(mf, str(target), options_of(o)); });
}

ts_status ts_coboundary(ts_model const* m, ts_options const* o, ts_result** out) {
  return run(m, out, [&](auto const& mf) { return typesemi::run_coboundary(mf, options_of(o)); });
}

ts_status ts_unperforation(ts_model const* m, ts_options const* o, ts_result** out) {
  return run(m, out,
             [&](auto const& mf) { return typesemi::run_unperforation(mf, options_of(o)); });
}

ts_status ts_oracle_compare(ts_model const* m, ts_options const* o, ts_result** out) {
  return run(m, out,
             [&](auto const& mf) { return typesemi::run_oracle_compare(mf, options_of(o)); });
}

ts_status ts_stabilize_test(ts_model const* m, size_t n, ts_options const* o, ts_result** out) {
  return run(m, out,
             [&](auto const& mf) { return typesemi::run_stabilize_test(mf, n, options_of(o)); });
}

int ts_result_exit_code(ts_result const* r) {
  return r == nullptr ? typesemi::exit_internal : r->result.exit_code;
}

char const* ts_result_verdict(ts_result const* r) {
  return r == nullptr ? "" : r->verdict.c_str();
}

char const* ts_result_json(ts_result const* r) {
  return r == nullptr ? "" : r->json.c_str();
}

char const* ts_result_text(ts_result const* r) {
  return r == nullptr ? "" : r->text.c_str();
}

void ts_result_free(ts_result* r) {
  delete r;
}

char const* ts_last_error(void) {
  return last_error.c_str();
}

ts_status ts_last_error_code(void) {
  return last_code;
}

}  // extern "C"
