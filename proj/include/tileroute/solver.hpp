#pragma once

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/stat.h>
#include <sys/types.h>
#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "tileroute/encoder.hpp"

namespace tileroute {

enum class SolveStatus { kSat, kUnsat, kUnknown, kTimeout };

inline const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::kSat: return "sat";
    case SolveStatus::kUnsat: return "unsat";
    case SolveStatus::kUnknown: return "unknown";
    case SolveStatus::kTimeout: return "timeout";
  }
  return "?";
}

class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class SolverTimeout : public std::runtime_error {
 public:
  SolverTimeout(std::string msg, int best_bound)
      : std::runtime_error(std::move(msg)), best_depth_bound(best_bound) {}
  int best_depth_bound;  // all depths below this are proven infeasible
};

/// Assignment extracted from a satisfiable query.
struct Model {
  SolveStatus status = SolveStatus::kUnknown;
  std::map<std::string, long long> ints;
  std::map<std::string, bool> bools;
  std::vector<long long> objective_values;  // in objective order

  [[nodiscard]] long long int_value(const std::string& name) const {
    auto it = ints.find(name);
    if (it == ints.end()) throw SolverError("model is missing integer variable " + name);
    return it->second;
  }
  [[nodiscard]] bool bool_value(const std::string& name) const {
    auto it = bools.find(name);
    if (it == bools.end()) throw SolverError("model is missing boolean variable " + name);
    return it->second;
  }
};

/// Drives one external SMT solver process per query, SMT-LIB v2 text over
/// standard streams. One live query at a time.
struct SolverSession {
  std::string command;           // e.g. "z3 -in" or "node scripts/z3-stdio.js"
  bool supports_optimization = true;
  std::chrono::milliseconds timeout{0};  // per query; 0 = unlimited
  std::string transcript_dir;            // empty = no transcripts
  std::string label = "query";
  int queries = 0;
};

inline std::string default_solver_command() {
  if (const char* env = std::getenv("TILEROUTE_SOLVER"); env && *env) return env;
  auto usable = [](const std::string& path) {
    struct stat st{};
    return ::stat(path.c_str(), &st) == 0;
  };
  if (const char* root = std::getenv("TILEROUTE_ROOT"); root && *root) {
    std::string script = std::string(root) + "/scripts/z3-stdio.js";
    if (usable(script)) return "node " + script;
  }
  for (const char* rel : {"scripts/z3-stdio.js", "../scripts/z3-stdio.js"})
    if (usable(rel)) return std::string("node ") + rel;
  return "z3 -in";
}

inline SolverSession make_session(std::string label = "query") {
  SolverSession s;
  s.command = default_solver_command();
  s.label = std::move(label);
  return s;
}

namespace detail {

inline std::vector<std::string> split_command(const std::string& cmd) {
  std::vector<std::string> out;
  std::istringstream in(cmd);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  if (out.empty()) throw SolverError("empty solver command");
  return out;
}

struct RawResult {
  bool timed_out = false;
  std::string output;
};

/// Run the solver once: feed `input` on stdin, collect stdout, kill on the
/// deadline.
inline RawResult run_solver_process(const std::string& command, const std::string& input,
                                    std::chrono::milliseconds timeout) {
  auto argv_strings = split_command(command);
  std::vector<char*> argv;
  for (auto& s : argv_strings) argv.push_back(s.data());
  argv.push_back(nullptr);

  int in_pipe[2], out_pipe[2];
  if (pipe(in_pipe) != 0 || pipe(out_pipe) != 0) throw SolverError("pipe() failed");
  pid_t pid = fork();
  if (pid < 0) throw SolverError("fork() failed");
  if (pid == 0) {
    dup2(in_pipe[0], STDIN_FILENO);
    dup2(out_pipe[1], STDOUT_FILENO);
    close(in_pipe[0]);
    close(in_pipe[1]);
    close(out_pipe[0]);
    close(out_pipe[1]);
    execvp(argv[0], argv.data());
    std::perror("tileroute: exec solver");
    _exit(127);
  }
  close(in_pipe[0]);
  close(out_pipe[1]);

  // writer: the formula can exceed the pipe buffer, so interleave write/read
  size_t written = 0;
  fcntl(in_pipe[1], F_SETFL, O_NONBLOCK);
  fcntl(out_pipe[0], F_SETFL, O_NONBLOCK);
  std::string output;
  const auto deadline = std::chrono::steady_clock::now() + timeout;
  bool timed_out = false;
  bool stdin_open = true;
  bool stdout_open = true;
  char buf[1 << 16];
  while (stdout_open) {
    if (timeout.count() > 0 && std::chrono::steady_clock::now() > deadline) {
      timed_out = true;
      kill(pid, SIGKILL);
      break;
    }
    pollfd fds[2];
    int nfds = 0;
    if (stdout_open) fds[nfds++] = {out_pipe[0], POLLIN, 0};
    if (stdin_open) fds[nfds++] = {in_pipe[1], POLLOUT, 0};
    int rc = poll(fds, nfds, 200);
    if (rc < 0 && errno != EINTR) break;
    for (int i = 0; i < nfds; ++i) {
      if (fds[i].fd == out_pipe[0] && (fds[i].revents & (POLLIN | POLLHUP))) {
        ssize_t n = read(out_pipe[0], buf, sizeof buf);
        if (n > 0)
          output.append(buf, static_cast<size_t>(n));
        else if (n == 0 || (n < 0 && errno != EAGAIN && errno != EINTR))
          stdout_open = false;
      }
      if (stdin_open && fds[i].fd == in_pipe[1] && (fds[i].revents & (POLLOUT | POLLERR))) {
        if (written < input.size()) {
          ssize_t n = write(in_pipe[1], input.data() + written, input.size() - written);
          if (n > 0)
            written += static_cast<size_t>(n);
          else if (n < 0 && errno != EAGAIN && errno != EINTR)
            stdin_open = false;
        }
        if (written >= input.size()) {
          close(in_pipe[1]);
          stdin_open = false;
        }
      }
    }
  }
  if (stdin_open) close(in_pipe[1]);
  close(out_pipe[0]);
  int status = 0;
  waitpid(pid, &status, 0);
  if (!timed_out && WIFEXITED(status) && WEXITSTATUS(status) == 127)
    throw SolverError("could not launch solver: " + command);
  return {timed_out, std::move(output)};
}

// minimal S-expression reader for (get-value ...) replies
struct SexpParser {
  const std::string& s;
  size_t pos = 0;
  explicit SexpParser(const std::string& text) : s(text) {}
  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool parse_pairs(std::map<std::string, std::string>& out) {
    skip_ws();
    if (pos >= s.size() || s[pos] != '(') return false;
    ++pos;
    while (true) {
      skip_ws();
      if (pos >= s.size()) return false;
      if (s[pos] == ')') {
        ++pos;
        return true;
      }
      if (s[pos] != '(') return false;
      ++pos;
      skip_ws();
      std::string name = token();
      skip_ws();
      std::string value = value_token();
      skip_ws();
      if (pos >= s.size() || s[pos] != ')') return false;
      ++pos;
      out[name] = value;
    }
  }
  std::string token() {
    size_t start = pos;
    while (pos < s.size() && !std::isspace(static_cast<unsigned char>(s[pos])) && s[pos] != '(' &&
           s[pos] != ')')
      ++pos;
    return s.substr(start, pos - start);
  }
  std::string value_token() {
    skip_ws();
    if (pos < s.size() && s[pos] == '(') {  // e.g. (- 3)
      size_t start = pos;
      int depth = 0;
      while (pos < s.size()) {
        if (s[pos] == '(') ++depth;
        if (s[pos] == ')' && --depth == 0) {
          ++pos;
          break;
        }
        ++pos;
      }
      return s.substr(start, pos - start);
    }
    return token();
  }
};

inline long long parse_int_value(const std::string& v) {
  if (!v.empty() && v.front() == '(') {  // (- 3)
    std::string inner = v.substr(1, v.size() - 2);
    std::istringstream in(inner);
    std::string sign, num;
    in >> sign >> num;
    return -std::stoll(num);
  }
  return std::stoll(v);
}

}  // namespace detail

/// One query: render, run, parse. Transcripts (when enabled) hold the exact
/// request and reply, so a logged session can be replayed byte for byte.
inline Model run_query(SolverSession& session, const SmtFormula& f, const RenderOptions& ropts) {
  RenderOptions opts = ropts;
  if (session.timeout.count() > 0 && !opts.timeout_ms)
    opts.timeout_ms = static_cast<int>(session.timeout.count() * 9 / 10);
  const std::string text = render_smtlib(f, opts);
  const int qid = session.queries++;
  std::string transcript_base;
  if (!session.transcript_dir.empty()) {
    transcript_base =
        session.transcript_dir + "/" + session.label + "-q" + std::to_string(qid);
    std::ofstream req(transcript_base + ".smt2");
    req << text;
  }
  auto raw = detail::run_solver_process(session.command, text, session.timeout);
  if (!transcript_base.empty()) {
    std::ofstream rep(transcript_base + ".out");
    rep << raw.output;
  }

  Model m;
  if (raw.timed_out) {
    m.status = SolveStatus::kTimeout;
    return m;
  }
  std::istringstream lines(raw.output);
  std::string status_line;
  while (std::getline(lines, status_line)) {
    if (status_line.empty()) continue;
    break;
  }
  if (status_line.rfind("sat", 0) == 0)
    m.status = SolveStatus::kSat;
  else if (status_line.rfind("unsat", 0) == 0)
    m.status = SolveStatus::kUnsat;
  else if (status_line.rfind("unknown", 0) == 0 || status_line.rfind("timeout", 0) == 0)
    m.status = SolveStatus::kUnknown;
  else
    throw SolverError("unrecognized solver reply (command: " + session.command +
                      "): " + raw.output.substr(0, 400));
  if (m.status != SolveStatus::kSat || f.variables.empty()) return m;

  const size_t paren = raw.output.find('(', status_line.size());
  if (paren == std::string::npos) throw SolverError("satisfiable but no model returned");
  std::string rest = raw.output.substr(paren);
  detail::SexpParser parser(rest);
  std::map<std::string, std::string> values;
  if (!parser.parse_pairs(values)) throw SolverError("cannot parse model: " + rest.substr(0, 400));
  for (const auto& v : f.variables) {
    auto it = values.find(v.name);
    if (it == values.end()) throw SolverError("model is missing variable " + v.name);
    if (v.is_bool)
      m.bools[v.name] = it->second == "true";
    else
      m.ints[v.name] = detail::parse_int_value(it->second);
  }
  for (const auto& obj : f.objectives) m.objective_values.push_back(m.int_value(obj));
  return m;
}

/// Solve with lexicographic SWAP objectives. Uses the solver's native
/// optimization when the session supports it; otherwise runs the decision
/// problem and tightens per-objective upper bounds until optimal.
inline Model solve(const SmtFormula& f, SolverSession& session) {
  if (f.objectives.empty() || session.supports_optimization)
    return run_query(session, f, RenderOptions{});

  RenderOptions opts;
  opts.native_objectives = false;
  Model best = run_query(session, f, opts);
  if (best.status != SolveStatus::kSat) return best;
  std::vector<std::string> pinned;  // equality pins for already-minimized objectives
  for (const auto& obj : f.objectives) {
    while (best.int_value(obj) > 0) {
      RenderOptions probe = opts;
      probe.extra_assertions = pinned;
      probe.extra_assertions.push_back(smt::lt(obj, smt::lit(static_cast<int>(best.int_value(obj)))));
      Model next = run_query(session, f, probe);
      if (next.status == SolveStatus::kSat) {
        best = next;
      } else if (next.status == SolveStatus::kUnsat) {
        break;
      } else {
        best.status = next.status;  // surface timeout/unknown, never fake an optimum
        return best;
      }
    }
    pinned.push_back(smt::eq(obj, smt::lit(static_cast<int>(best.int_value(obj)))));
  }
  best.objective_values.clear();
  for (const auto& obj : f.objectives) best.objective_values.push_back(best.int_value(obj));
  return best;
}

struct DepthSearchResult {
  Model model;
  SmtFormula formula;
  int depth = 0;
  int lower_bound = 0;
};

/// Increase the trial depth from the lower bound until satisfiable; the first
/// SAT depth is the minimal routed depth for the chosen mobility zone.
inline DepthSearchResult route_min_depth(const RoutingProblem& p, SolverSession& session,
                                         int max_depth = 0) {
  require_valid(p);
  const int lb = std::max(1, routing_lower_bound(p.logical, p.options.gate_dependencies));
  if (max_depth == 0) max_depth = lb + 64;
  for (int D = lb; D <= max_depth; ++D) {
    SmtFormula f = encode(p, D);
    Model m = solve(f, session);
    if (m.status == SolveStatus::kSat) return {std::move(m), std::move(f), D, lb};
    if (m.status != SolveStatus::kUnsat)
      throw SolverTimeout("solver gave up at depth " + std::to_string(D) +
                              " (status: " + to_string(m.status) +
                              "); depths below are proven infeasible",
                          D);
  }
  throw SolverError("no satisfiable depth up to " + std::to_string(max_depth));
}

// ---------------------------------------------------------------------------
// Model decoding

struct PlacedGate {
  int id = 0;
  std::string label;
  int time = 0;
  std::vector<QuditCoord> qudits;
};

struct SwapRecord {
  int time = 0;
  int class_idx = 0;
  Edge basis_edge;  // the representative inside the hardware basis graph
};

/// Raw routed assignment decoded from a model.
struct RawAssignment {
  int D = 0, calD = 0;
  std::vector<PlacedGate> gates;
  std::vector<SwapRecord> swap_classes_active;        // one record per (T, class)
  std::vector<std::pair<int, Edge>> swap_members;     // every in-zone translated copy
  // qudit trajectories: map_at[T][i] = position of logical_qudits[i] at time T
  std::vector<std::vector<QuditCoord>> map_at;
  std::vector<long long> objective_values;
};

inline RawAssignment extract(const Model& m, const SmtFormula& f, const BasisCircuit& logical) {
  if (m.status != SolveStatus::kSat) throw SolverError("extract requires a satisfiable model");
  RawAssignment out;
  out.D = f.D;
  out.calD = f.calD;
  out.objective_values = m.objective_values;
  for (size_t i = 0; i < logical.gates.size(); ++i) {
    PlacedGate g;
    g.id = logical.gates[i].id;
    g.label = logical.gates[i].label;
    g.time = static_cast<int>(m.int_value(f.gate_time_var(static_cast<int>(i))));
    const int slots = logical.gates[i].two_qudit() ? 2 : 1;
    for (int s = 0; s < slots; ++s)
      g.qudits.push_back(
          {static_cast<int>(m.int_value(f.gate_coord_var(static_cast<int>(i), s, 'x'))),
           static_cast<int>(m.int_value(f.gate_coord_var(static_cast<int>(i), s, 'y'))),
           static_cast<int>(m.int_value(f.gate_coord_var(static_cast<int>(i), s, 's')))});
    out.gates.push_back(std::move(g));
  }
  for (int T = 0; T < f.calD; ++T)
    for (size_t k = 0; k < f.swap_classes.size(); ++k)
      if (m.bool_value(f.swap_var(T, static_cast<int>(k)))) {
        out.swap_classes_active.push_back({T, static_cast<int>(k), f.swap_classes[k].basis_edge});
        for (const auto& member : f.swap_classes[k].members) out.swap_members.push_back({T, member});
      }
  out.map_at.resize(f.calD + 1);
  for (int T = 0; T <= f.calD; ++T)
    for (const auto& q : f.logical_qudits)
      out.map_at[T].push_back({static_cast<int>(m.int_value(f.map_var(T, q, 'x'))),
                               static_cast<int>(m.int_value(f.map_var(T, q, 'y'))),
                               static_cast<int>(m.int_value(f.map_var(T, q, 's')))});
  return out;
}

}  // namespace tileroute
