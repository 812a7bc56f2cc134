#include "igrm/igrm.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <string>
#include <vector>

#include "igrm/common.hpp"
#include "igrm/eval/experiment.hpp"

struct igrm_report {
  igrm::eval::Report report;
  std::string json;
};

namespace {

thread_local std::string g_error;

igrm_status status_of(igrm::ErrorCode code) {
  switch (code) {
    case igrm::ErrorCode::invalid_argument:
      return IGRM_ERR_INVALID_ARGUMENT;
    case igrm::ErrorCode::io:
      return IGRM_ERR_IO;
    case igrm::ErrorCode::parse:
      return IGRM_ERR_PARSE;
    case igrm::ErrorCode::numeric:
      return IGRM_ERR_NUMERIC;
    case igrm::ErrorCode::internal:
      return IGRM_ERR_INTERNAL;
  }
  return IGRM_ERR_INTERNAL;
}

// Runs `fn`, routing any exception into the thread-local error store.
template <typename Fn>
igrm_status guarded(Fn&& fn) {
  g_error.clear();
  try {
    fn();
    return IGRM_OK;
  } catch (const igrm::Error& e) {
    g_error = e.what();
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    g_error = "out of memory";
    return IGRM_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_error = e.what();
    return IGRM_ERR_INTERNAL;
  }
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) return nullptr;
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

igrm_status set_error(igrm_status code, const char* msg) {
  g_error = msg;
  return code;
}

}  // namespace

extern "C" {

char* igrm_default_config(void) {
  g_error.clear();
  try {
    return copy_string(igrm::eval::config_to_json(igrm::eval::ExperimentConfig{}));
  } catch (const std::exception& e) {
    g_error = e.what();
    return nullptr;
  }
}

igrm_status igrm_run(const char* config_json, igrm_report** out) {
  if (!config_json || !out)
    return set_error(IGRM_ERR_INVALID_ARGUMENT,
                     "igrm_run: null config or output pointer");
  *out = nullptr;
  return guarded([&] {
    auto cfg = igrm::eval::config_from_json(config_json);
    auto handle = std::make_unique<igrm_report>();
    handle->report = igrm::eval::run_experiment(cfg);
    handle->json = igrm::eval::report_to_json(handle->report);
    *out = handle.release();
  });
}

igrm_status igrm_sweep_ratio(const char* config_json, const double* ratios,
                             size_t n_ratios) {
  if (!config_json || (!ratios && n_ratios))
    return set_error(IGRM_ERR_INVALID_ARGUMENT,
                     "igrm_sweep_ratio: null argument");
  return guarded([&] {
    auto cfg = igrm::eval::config_from_json(config_json);
    igrm::eval::run_ratio_sweep(
        cfg, std::vector<igrm::real>(ratios, ratios + n_ratios));
  });
}

igrm_status igrm_sweep_frequency(const char* config_json,
                                 const int64_t* cadences, size_t n_cadences) {
  if (!config_json || (!cadences && n_cadences))
    return set_error(IGRM_ERR_INVALID_ARGUMENT,
                     "igrm_sweep_frequency: null argument");
  return guarded([&] {
    auto cfg = igrm::eval::config_from_json(config_json);
    igrm::eval::run_frequency_sweep(
        cfg, std::vector<int64_t>(cadences, cadences + n_cadences));
  });
}

const char* igrm_report_json(const igrm_report* report) {
  return report ? report->json.c_str() : nullptr;
}

igrm_status igrm_report_mae(const igrm_report* report, const char* method,
                            double* mean_x10, double* std_x10) {
  if (!report || !method || !mean_x10)
    return set_error(IGRM_ERR_INVALID_ARGUMENT,
                     "igrm_report_mae: null argument");
  return guarded([&] {
    const auto& m = igrm::eval::method_report(report->report, method);
    *mean_x10 = m.mae_x10_mean;
    if (std_x10) *std_x10 = m.mae_x10_std;
  });
}

void igrm_report_free(igrm_report* report) { delete report; }

const char* igrm_last_error(void) { return g_error.c_str(); }

void igrm_free_string(char* s) { std::free(s); }

const char* igrm_version(void) { return "0.1.0"; }

}  // extern "C"
