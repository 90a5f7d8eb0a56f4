#include "ivm/ivm.h"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <new>
#include <optional>
#include <stdexcept>
#include <string>

#include "experiment.hpp"

struct ivm_algebra {
  ivm::AffineAlgebra alg;
};

struct ivm_experiment {
  ivm::Json spec;
  ivm::RunOptions options;
};

namespace {

thread_local std::string last_error;

ivm_status fail(ivm_status s, std::string msg) {
  last_error = std::move(msg);
  return s;
}

char* dup(const std::string& s) {
  auto* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

// Runs f, mapping exceptions to status codes.
template <class F>
ivm_status guard(F&& f) {
  last_error.clear();
  try {
    return f();
  } catch (const std::invalid_argument& e) {
    return fail(IVM_E_INVALID, e.what());
  } catch (const std::out_of_range& e) {
    return fail(IVM_E_INVALID, e.what());
  } catch (const std::exception& e) {
    return fail(IVM_E_INTERNAL, e.what());
  } catch (...) {
    return fail(IVM_E_INTERNAL, "unknown error");
  }
}

ivm::Mode to_mode(const ivm::AffineAlgebra& g, ivm_mode m) {
  switch (m.kind) {
    case IVM_MODE_REAL:
      if (m.index < 0 || m.index >= g.root_count()) throw std::invalid_argument("root index out of range");
      return ivm::Mode::real(m.index, m.level);
    case IVM_MODE_CARTAN:
      if (m.index < 0 || m.index >= g.rank()) throw std::invalid_argument("Cartan index out of range");
      return ivm::Mode::cartan(m.index, m.level);
    case IVM_MODE_CENTRAL:
      return ivm::Mode::central();
    case IVM_MODE_DERIVATION:
      return ivm::Mode::derivation();
    default:
      throw std::invalid_argument("unknown mode kind");
  }
}

}  // namespace

extern "C" {

const char* ivm_version(void) { return "1.0.0"; }

const char* ivm_last_error(void) { return last_error.c_str(); }

void ivm_string_free(char* s) { std::free(s); }

ivm_status ivm_algebra_create(const char* type, ivm_algebra** out) {
  if (!type || !out) return fail(IVM_E_NULL, "null argument");
  *out = nullptr;
  return guard([&] {
    *out = new ivm_algebra{ivm::AffineAlgebra(ivm::CartanType::parse(type))};
    return IVM_OK;
  });
}

void ivm_algebra_destroy(ivm_algebra* alg) { delete alg; }

ivm_status ivm_algebra_rank(const ivm_algebra* alg, int* out) {
  if (!alg || !out) return fail(IVM_E_NULL, "null argument");
  *out = alg->alg.rank();
  return IVM_OK;
}

ivm_status ivm_algebra_finite_root_count(const ivm_algebra* alg, int* out) {
  if (!alg || !out) return fail(IVM_E_NULL, "null argument");
  *out = alg->alg.root_count();
  return IVM_OK;
}

ivm_status ivm_algebra_roots_in_box(const ivm_algebra* alg, int max_level, int* out) {
  if (!alg || !out) return fail(IVM_E_NULL, "null argument");
  if (max_level < 0) return fail(IVM_E_INVALID, "max_level must be nonnegative");
  return guard([&] {
    *out = static_cast<int>(alg->alg.roots_in_box(max_level).size());
    return IVM_OK;
  });
}

ivm_status ivm_algebra_bracket(const ivm_algebra* alg, ivm_mode x, ivm_mode y, char** json_out) {
  if (!alg || !json_out) return fail(IVM_E_NULL, "null argument");
  *json_out = nullptr;
  return guard([&] {
    const auto& g = alg->alg;
    ivm::Json j = ivm::Json::array();
    for (const auto& [m, c] : g.bracket(to_mode(g, x), to_mode(g, y)))
      j.push_back({{"mode", g.mode_name(m)}, {"coeff", ivm::rational_to_string(c)}});
    *json_out = dup(j.dump());
    return IVM_OK;
  });
}

ivm_status ivm_algebra_mode_name(const ivm_algebra* alg, ivm_mode x, char** out) {
  if (!alg || !out) return fail(IVM_E_NULL, "null argument");
  *out = nullptr;
  return guard([&] {
    *out = dup(alg->alg.mode_name(to_mode(alg->alg, x)));
    return IVM_OK;
  });
}

ivm_status ivm_experiment_create(const char* spec_json, ivm_experiment** out) {
  if (!spec_json || !out) return fail(IVM_E_NULL, "null argument");
  *out = nullptr;
  return guard([&] {
    try {
      *out = new ivm_experiment{ivm::Json::parse(spec_json), {}};
    } catch (const ivm::Json::parse_error& e) {
      return fail(IVM_E_PARSE, e.what());
    }
    return IVM_OK;
  });
}

void ivm_experiment_destroy(ivm_experiment* ex) { delete ex; }

ivm_status ivm_experiment_set_jobs(ivm_experiment* ex, int jobs) {
  if (!ex) return fail(IVM_E_NULL, "null argument");
  if (jobs < 1) return fail(IVM_E_INVALID, "jobs must be at least 1");
  ex->options.jobs = jobs;
  return IVM_OK;
}

ivm_status ivm_experiment_set_seed(ivm_experiment* ex, uint64_t seed) {
  if (!ex) return fail(IVM_E_NULL, "null argument");
  ex->options.seed = seed;
  return IVM_OK;
}

ivm_status ivm_experiment_set_task(ivm_experiment* ex, const char* task) {
  if (!ex) return fail(IVM_E_NULL, "null argument");
  if (!task) {
    ex->options.task.reset();
    return IVM_OK;
  }
  const auto& names = ivm::task_names();
  if (std::find(names.begin(), names.end(), task) == names.end())
    return fail(IVM_E_INVALID, std::string("unknown task \"") + task + "\"");
  ex->options.task = task;
  return IVM_OK;
}

ivm_status ivm_experiment_run(ivm_experiment* ex, char** json_out, int* exit_code) {
  if (!ex || !json_out || !exit_code) return fail(IVM_E_NULL, "null argument");
  *json_out = nullptr;
  return guard([&] {
    const auto r = ivm::run_experiment(ex->spec, ex->options);
    *json_out = dup(r.output.dump(2) + "\n");
    *exit_code = r.exit_code;
    return IVM_OK;
  });
}

ivm_status ivm_task_names(char** json_out) {
  if (!json_out) return fail(IVM_E_NULL, "null argument");
  return guard([&] {
    *json_out = dup(ivm::Json(ivm::task_names()).dump());
    return IVM_OK;
  });
}

}  // extern "C"
