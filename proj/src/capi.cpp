#include "mbennett/mbennett.h"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <memory>
#include <new>
#include <string>

#include "mbennett/pipeline.hpp"

using namespace mbennett;

struct mb_session {
  Seed seed;
  Options options;
};

namespace {

thread_local std::string last_error;
thread_local std::string last_kind;

mb_status status_of(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidInput: return MB_INVALID;
    case ErrorCode::kHypothesisViolated:
    case ErrorCode::kNoUniqueSolution: return MB_HYPOTHESIS;
    case ErrorCode::kGenericityViolated:
    case ErrorCode::kFlipSingular: return MB_GENERICITY;
    case ErrorCode::kInconsistent: return MB_INCONSISTENT;
    case ErrorCode::kDegenerateDisplacement:
    case ErrorCode::kDegenerateAxis:
    case ErrorCode::kDegenerateConfiguration:
    case ErrorCode::kIdenticalLines:
    case ErrorCode::kDegeneratePair:
    case ErrorCode::kAllParallel:
    case ErrorCode::kZeroDistance: return MB_DEGENERATE;
    case ErrorCode::kNotInvertible:
    case ErrorCode::kSingularMap:
    case ErrorCode::kZeroDivisor: return MB_INTERNAL;
  }
  return MB_INTERNAL;
}

template <class F>
mb_status guarded(F&& f) {
  try {
    f();
    last_error.clear();
    last_kind.clear();
    return MB_OK;
  } catch (const Error& e) {
    last_error = e.what();
    last_kind = error_code_name(e.code());
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    last_kind = "Internal";
    return MB_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    last_kind = "Internal";
    return MB_INTERNAL;
  }
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

// Indented JSON with arrays of scalars kept on one line.
void render_into(const Json& j, int indent, std::string& out) {
  const std::string pad(indent + 2, ' ');
  auto flat = [](const Json& a) {
    return std::all_of(a.begin(), a.end(), [](const Json& x) { return x.is_primitive(); });
  };
  if (j.is_object() && !j.empty()) {
    out += "{\n";
    bool first = true;
    for (const auto& [key, value] : j.items()) {
      if (!first) out += ",\n";
      first = false;
      out += pad + Json(key).dump() + ": ";
      render_into(value, indent + 2, out);
    }
    out += "\n" + std::string(indent, ' ') + "}";
  } else if (j.is_array() && !j.empty() && !flat(j)) {
    out += "[\n";
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (i) out += ",\n";
      out += pad;
      render_into(j[i], indent + 2, out);
    }
    out += "\n" + std::string(indent, ' ') + "]";
  } else {
    out += j.dump(-1, ' ', false, Json::error_handler_t::strict);
  }
}

std::string render(const Json& j) {
  std::string out;
  render_into(j, 0, out);
  return out + "\n";
}

void require(bool cond, const char* what) {
  if (!cond) throw Error(ErrorCode::kInvalidInput, what);
}

}  // namespace

extern "C" {

const char* mb_version(void) { return kVersion; }

const char* mb_status_name(mb_status status) {
  switch (status) {
    case MB_OK: return "OK";
    case MB_INVALID: return "INVALID";
    case MB_HYPOTHESIS: return "HYPOTHESIS";
    case MB_GENERICITY: return "GENERICITY";
    case MB_INCONSISTENT: return "INCONSISTENT";
    case MB_DEGENERATE: return "DEGENERATE";
    case MB_INTERNAL: return "INTERNAL";
  }
  return "UNKNOWN";
}

const char* mb_last_error(void) { return last_error.c_str(); }
const char* mb_last_error_kind(void) { return last_kind.c_str(); }

mb_status mb_session_create(const char* seed_json, mb_session** out) {
  return guarded([&] {
    require(seed_json && out, "null argument");
    *out = nullptr;
    auto session = std::make_unique<mb_session>();
    session->seed = parse_seed(std::string(seed_json));
    *out = session.release();
  });
}

void mb_session_destroy(mb_session* session) { delete session; }

mb_status mb_session_set_arithmetic(mb_session* session, mb_arithmetic arithmetic) {
  return guarded([&] {
    require(session, "null session");
    switch (arithmetic) {
      case MB_ARITH_SEED: session->options.arithmetic.reset(); break;
      case MB_ARITH_RATIONAL: session->options.arithmetic = Arithmetic::kRational; break;
      case MB_ARITH_FLOAT: session->options.arithmetic = Arithmetic::kFloat; break;
      default: throw Error(ErrorCode::kInvalidInput, "unknown arithmetic");
    }
  });
}

mb_status mb_session_set_mode(mb_session* session, const char* mode) {
  return guarded([&] {
    require(session && mode, "null argument");
    session->options.mode = parse_seed_mode(mode);
  });
}

mb_status mb_session_set_tolerance(mb_session* session, double tol) {
  return guarded([&] {
    require(session, "null session");
    require(tol > 0.0 && tol < 1.0, "tolerance must lie in (0, 1)");
    session->options.tol = tol;
  });
}

mb_status mb_session_set_grid(mb_session* session, const char* grid) {
  return guarded([&] {
    require(session && grid, "null argument");
    parse_grid(grid);
    session->options.grid = grid;
  });
}

mb_status mb_factor(mb_session* session, char** out_json) {
  return guarded([&] {
    require(session && out_json, "null argument");
    *out_json = dup(render(run_factor(session->seed, session->options)));
  });
}

mb_status mb_mechanism(mb_session* session, char** mechanism_json, char** trajectory_json,
                       char** report_json) {
  return guarded([&] {
    require(session && mechanism_json && trajectory_json && report_json, "null argument");
    const MechanismOutput r = run_mechanism(session->seed, session->options);
    const std::string m = render(r.mechanism), t = render(r.trajectory), p = render(r.report);
    char* a = dup(m);
    char* b = nullptr;
    char* c = nullptr;
    try {
      b = dup(t);
      c = dup(p);
    } catch (...) {
      std::free(a);
      std::free(b);
      throw;
    }
    *mechanism_json = a;
    *trajectory_json = b;
    *report_json = c;
  });
}

mb_status mb_dh(mb_session* session, char** out_json) {
  return guarded([&] {
    require(session && out_json, "null argument");
    *out_json = dup(render(run_dh(session->seed, session->options)));
  });
}

void mb_string_free(char* s) { std::free(s); }

}  // extern "C"
