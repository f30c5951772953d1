// Command-line front end over the C interface.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>

#include "mbennett/mbennett.h"

namespace {

struct Args {
  std::string seed_path;
  std::string mode;
  std::string arithmetic;
  std::string grid = "-10:10:21,inf";
  double tol = 1e-9;
  std::string out;
};

int fail(mb_status status) {
  std::cerr << "error: " << mb_status_name(status) << " (" << mb_last_error_kind()
            << "): " << mb_last_error() << "\n";
  return static_cast<int>(status);
}

int fail_io(const std::string& msg) {
  std::cerr << "error: " << mb_status_name(MB_INVALID) << " (InvalidInput): " << msg << "\n";
  return MB_INVALID;
}

std::optional<std::string> read_all(const std::string& path) {
  if (path == "-") {
    return std::string(std::istreambuf_iterator<char>(std::cin), {});
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool write_file(const std::filesystem::path& path, const char* text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  return static_cast<bool>(out);
}

// Frees the C strings it owns.
struct Owned {
  char* p = nullptr;
  ~Owned() { mb_string_free(p); }
};

struct Session {
  mb_session* s = nullptr;
  ~Session() { mb_session_destroy(s); }
};

int open_session(const Args& a, Session& session) {
  const auto text = read_all(a.seed_path);
  if (!text) return fail_io("cannot read seed file '" + a.seed_path + "'");
  if (mb_status st = mb_session_create(text->c_str(), &session.s); st != MB_OK) return fail(st);
  if (!a.mode.empty()) {
    if (mb_status st = mb_session_set_mode(session.s, a.mode.c_str()); st != MB_OK) return fail(st);
  }
  if (!a.arithmetic.empty()) {
    mb_arithmetic ar;
    if (a.arithmetic == "rational") {
      ar = MB_ARITH_RATIONAL;
    } else if (a.arithmetic == "float") {
      ar = MB_ARITH_FLOAT;
    } else {
      return fail_io("--arithmetic must be 'rational' or 'float'");
    }
    if (mb_status st = mb_session_set_arithmetic(session.s, ar); st != MB_OK) return fail(st);
  }
  if (mb_status st = mb_session_set_tolerance(session.s, a.tol); st != MB_OK) return fail(st);
  if (mb_status st = mb_session_set_grid(session.s, a.grid.c_str()); st != MB_OK) return fail(st);
  return MB_OK;
}

int emit(const Args& a, const char* text) {
  if (a.out.empty()) {
    std::fputs(text, stdout);
    return MB_OK;
  }
  if (!write_file(a.out, text)) return fail_io("cannot write '" + a.out + "'");
  return MB_OK;
}

int run_single(const Args& a, mb_status (*fn)(mb_session*, char**)) {
  Session session;
  if (int rc = open_session(a, session); rc != MB_OK) return rc;
  Owned json;
  if (mb_status st = fn(session.s, &json.p); st != MB_OK) return fail(st);
  return emit(a, json.p);
}

int run_mechanism(const Args& a) {
  Session session;
  if (int rc = open_session(a, session); rc != MB_OK) return rc;
  Owned mech, traj, report;
  if (mb_status st = mb_mechanism(session.s, &mech.p, &traj.p, &report.p); st != MB_OK) {
    return fail(st);
  }
  if (!a.out.empty()) {
    const std::filesystem::path dir(a.out);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) return fail_io("cannot create directory '" + a.out + "'");
    if (!write_file(dir / "mechanism.json", mech.p) ||
        !write_file(dir / "trajectory.json", traj.p) || !write_file(dir / "report.json", report.p)) {
      return fail_io("cannot write into '" + a.out + "'");
    }
  }
  std::fputs(report.p, stdout);
  return MB_OK;
}

void add_common(CLI::App* cmd, Args& a, bool grid) {
  cmd->add_option("seed", a.seed_path, "seed JSON file, or - for stdin")->required();
  cmd->add_option("--mode", a.mode, "require the seed mode")
      ->check(CLI::IsMember({"primal", "dual", "canonical"}));
  cmd->add_option("--arithmetic", a.arithmetic, "rational (default) or float")
      ->check(CLI::IsMember({"rational", "float"}));
  cmd->add_option("--tol", a.tol, "tolerance for floating-point predicates")->capture_default_str();
  if (grid) {
    cmd->add_option("--grid", a.grid, "parameter values for s and t: list, a:b:n ranges, inf")
        ->capture_default_str();
    cmd->add_option("--out", a.out, "directory for mechanism.json, trajectory.json, report.json");
  } else {
    cmd->add_option("--out", a.out, "output file (default stdout)");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-Bennett 8R linkages from alternating factorizations"};
  app.set_version_flag("--version", std::string(mb_version()));
  app.require_subcommand(1);

  Args a;
  CLI::App* factor = app.add_subcommand("factor", "second factorization of a primal or dual seed");
  add_common(factor, a, false);
  CLI::App* mechanism = app.add_subcommand("mechanism", "mechanism, trajectory and verification");
  add_common(mechanism, a, true);
  CLI::App* dh = app.add_subcommand("dh", "Denavit-Hartenberg table in the zero configuration");
  add_common(dh, a, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : MB_INVALID;
  }

  if (factor->parsed()) return run_single(a, mb_factor);
  if (dh->parsed()) return run_single(a, mb_dh);
  return run_mechanism(a);
}
