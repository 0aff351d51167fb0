#include "tcpbound/cli.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <ostream>
#include <string>

#include "CLI11.hpp"
#include "tcpbound/bounds.h"
#include "tcpbound/error.h"
#include "tcpbound/operators.h"
#include "tcpbound/problem_io.h"
#include "tcpbound/report.h"
#include "tcpbound/solve.h"

namespace tcpbound {

namespace {

struct Options {
  std::string command;
  std::string file;
  std::string u;
  std::string z;
  int grid = GridSpec{}.points_per_axis;
  int refine = GridSpec{}.refinement_steps;
  std::uint64_t seed = 0;
  double tol = 1e-9;
  int samples = 1000;
  std::string kind = "F";
  std::string format = "text";
};

struct Loaded {
  ProblemFile problem;
  TcpInstance instance;
  std::optional<Vector> z;
  std::optional<Vector> u;
};

Vector CheckedVector(const std::string& text, std::size_t dim, const char* name) {
  Vector v = ParseRealList(text);
  if (v.size() != dim) {
    throw TcpError(ErrorCode::kSizing, std::string("--") + name + " has " +
                                           std::to_string(v.size()) +
                                           " components, expected " +
                                           std::to_string(dim));
  }
  return v;
}

Loaded Load(const Options& opts) {
  ProblemFile problem = ParseProblem(opts.file);
  TcpInstance inst = ToInstance(problem);
  Loaded loaded{problem, std::move(inst), problem.z, problem.u};
  if (!opts.z.empty()) loaded.z = CheckedVector(opts.z, problem.dim, "z");
  if (!opts.u.empty()) loaded.u = CheckedVector(opts.u, problem.dim, "u");
  return loaded;
}

GridSpec Grid(const Options& opts) {
  GridSpec grid;
  grid.points_per_axis = opts.grid;
  grid.refinement_steps = opts.refine;
  return grid;
}

bool ClosedFormAvailable(const DenseTensor& a) {
  return a.order() % 2 == 0 && a.IsPositiveDiagonal();
}

AlphaEstimate AlphaForBounds(const DenseTensor& a, const Options& opts) {
  if (a.order() % 2 != 0) {
    throw TcpError(ErrorCode::kInvalidArgument,
                   "bounds need alpha(F_A), defined for even order only");
  }
  if (ClosedFormAvailable(a)) return AlphaFDiagonalEstimate(a);
  return EstimateAlpha(a, AlphaKind::kAlphaF, Grid(opts));
}

void AddAlpha(Report& r, const AlphaEstimate& alpha) {
  r.Add("alpha", alpha.value);
  r.Add("alpha_kind", std::string(ToString(alpha.kind)));
  r.Add("alpha_method", std::string(ToString(alpha.method)));
  r.Add("alpha_certified", alpha.certified);
}

// Refuses tensors that sampling shows are not P.
void RequireLikelyP(const DenseTensor& a, const Options& opts, Report& r) {
  const PCheckResult check = CheckPTensorSampled(a, opts.samples, opts.seed);
  r.Add("p_check", std::string(ToString(check.verdict)));
  if (check.verdict == PVerdict::kNotP) {
    r.Add("p_witness", std::span<const double>(*check.witness));
    throw TcpError(ErrorCode::kNotPCertificate,
                   "sampling found x with max_i x_i (A x^{m-1})_i <= 0");
  }
}

// z from --z or the file; otherwise the smallest-support solver certificate.
Vector ResolveZ(const Loaded& in, const Options& opts, std::vector<std::string>& flags,
                Report& r) {
  if (in.z) {
    r.Add("z_source", "input");
    return *in.z;
  }
  SolveOptions so;
  so.seed = opts.seed;
  so.tol = opts.tol;
  const auto sols = SolveEnumerate(in.instance, so);
  if (sols.empty()) {
    throw TcpError(ErrorCode::kNotPCertificate,
                   "the solver found no solution; cannot build bounds");
  }
  r.Add("z_source", "solver");
  r.Add("solutions_found", sols.size());
  if (sols.size() > 1) flags.emplace_back("MULTIPLE_SOLUTIONS");
  return sols.front().z;
}

Vector RequireU(const Loaded& in) {
  if (!in.u) {
    throw TcpError(ErrorCode::kInvalidArgument,
                   "this command needs a test point: pass --u or add 'u' to the file");
  }
  return *in.u;
}

std::string JoinFlags(const std::vector<std::string>& flags) {
  std::string out;
  for (const auto& f : flags) out += (out.empty() ? "" : ",") + f;
  return out.empty() ? "none" : out;
}

void AddOptional(Report& r, const std::string& key, const std::optional<double>& v) {
  if (v) {
    r.Add(key, *v);
  } else {
    r.Add(key, "n/a");
  }
}

int RunAlpha(const Options& opts, Report& r) {
  const Loaded in = Load(opts);
  const DenseTensor& a = in.instance.tensor;
  const AlphaKind kind = opts.kind == "T" ? AlphaKind::kAlphaT : AlphaKind::kAlphaF;
  const AlphaEstimate est = kind == AlphaKind::kAlphaF && ClosedFormAvailable(a)
                                ? AlphaFDiagonalEstimate(a)
                                : EstimateAlpha(a, kind, Grid(opts));
  r.Add("kind", std::string(ToString(est.kind)));
  r.Add("value", est.value);
  r.Add("method", std::string(ToString(est.method)));
  r.Add("certified", est.certified);
  r.Add("grid_points_per_axis", est.grid_points_per_axis);
  r.Add("refinement_steps", est.refinement_steps);
  r.Add("argmin", std::span<const double>(est.argmin));
  return kExitOk;
}

int RunCheckP(const Options& opts, Report& r) {
  const Loaded in = Load(opts);
  const PCheckResult check = CheckPTensorSampled(in.instance.tensor, opts.samples, opts.seed);
  r.Add("verdict", std::string(ToString(check.verdict)));
  r.Add("evaluations", check.evaluations);
  r.Add("min_objective", check.min_objective);
  if (check.witness) r.Add("witness", std::span<const double>(*check.witness));
  return check.verdict == PVerdict::kNotP ? kExitHypothesisFailure : kExitOk;
}

int RunSolve(const Options& opts, Report& r) {
  const Loaded in = Load(opts);
  SolveOptions so;
  so.seed = opts.seed;
  so.tol = opts.tol;
  const auto sols = SolveEnumerate(in.instance, so);
  r.Add("solutions_found", sols.size());
  for (std::size_t k = 0; k < sols.size(); ++k) {
    const std::string p = "solution" + std::to_string(k + 1) + ".";
    r.Add(p + "z", std::span<const double>(sols[k].z));
    r.Add(p + "w", std::span<const double>(sols[k].w));
    r.AddIndices(p + "support", sols[k].support);
    r.Add(p + "max_violation", sols[k].max_violation);
  }
  if (sols.empty()) {
    r.Add("solver_status", "NO_SOLUTION_FOUND");
    return kExitHypothesisFailure;
  }
  return kExitOk;
}

int RunVerify(const Options& opts, Report& r) {
  const Loaded in = Load(opts);
  if (!in.z) {
    throw TcpError(ErrorCode::kInvalidArgument,
                   "verify needs a candidate: pass --z or add 'z' to the file");
  }
  const SolutionCertificate cert = VerifySolution(in.instance, *in.z, opts.tol);
  r.Add("z", std::span<const double>(cert.z));
  r.Add("w", std::span<const double>(cert.w));
  r.AddIndices("support", cert.support);
  r.Add("max_violation", cert.max_violation);
  r.Add("tol", cert.tol);
  r.Add("passed", cert.passed);
  return cert.passed ? kExitOk : kExitHypothesisFailure;
}

int RunSolBounds(const Options& opts, Report& r) {
  const Loaded in = Load(opts);
  const DenseTensor& a = in.instance.tensor;
  const AlphaEstimate alpha = AlphaForBounds(a, opts);
  RequireLikelyP(a, opts, r);
  const Interval sb = SolutionNormBounds(in.instance, alpha);
  AddAlpha(r, alpha);
  r.Add("sol_lb", sb.lb);
  r.Add("sol_ub", sb.ub);
  r.Add("flags", alpha.certified ? std::string("none") : std::string(flags::kUncertifiedAlpha));
  return kExitOk;
}

struct BoundsContext {
  BoundReport report;
  Vector z;
  Vector u;
};

BoundsContext PrepareBounds(const Options& opts, Report& r,
                            std::vector<std::string>& extra_flags) {
  const Loaded in = Load(opts);
  const DenseTensor& a = in.instance.tensor;
  const Vector u = RequireU(in);
  const AlphaEstimate alpha = AlphaForBounds(a, opts);
  RequireLikelyP(a, opts, r);
  const Vector z = ResolveZ(in, opts, extra_flags, r);
  BoundReport report = ClosedFormAvailable(a) ? DiagonalBounds(in.instance, z, u)
                                              : BuildBoundReport(in.instance, z, u, alpha);
  for (auto& f : extra_flags) report.flags.push_back(f);
  return {std::move(report), z, u};
}

void AddResidual(Report& r, const BoundsContext& ctx) {
  const BoundReport& b = ctx.report;
  r.Add("z", std::span<const double>(ctx.z));
  r.Add("u", std::span<const double>(ctx.u));
  AddAlpha(r, b.alpha);
  r.Add("a_norm", b.a_norm);
  r.Add("a_norm_root", b.a_norm_root);
  r.Add("v", std::span<const double>(b.residual.v));
  r.Add("v_inf", b.residual.v_inf);
  r.Add("t", b.residual.t + 1);
  r.Add("v_t", b.residual.v_t);
  r.Add("argmax_value", b.residual.argmax_value);
  AddOptional(r, "D", b.discriminant);
}

int RunBounds(const Options& opts, Report& r) {
  std::vector<std::string> extra;
  const BoundsContext ctx = PrepareBounds(opts, r, extra);
  const BoundReport& b = ctx.report;
  AddResidual(r, ctx);
  AddOptional(r, "lb_new", b.lb_new);
  AddOptional(r, "ub_new", b.ub_new);
  r.Add("lb_base", b.lb_base);
  r.Add("ub_base", b.ub_base);
  AddOptional(r, "sol_lb", b.sol_lb);
  AddOptional(r, "sol_ub", b.sol_ub);
  r.Add("error", InfNorm(Subtract(ctx.z, ctx.u)));
  r.Add("flags", JoinFlags(b.flags));
  return kExitOk;
}

int RunRelBounds(const Options& opts, Report& r) {
  std::vector<std::string> extra;
  const BoundsContext ctx = PrepareBounds(opts, r, extra);
  const BoundReport& b = ctx.report;
  if (b.HasFlag(flags::kDegenerateQ)) {
    throw TcpError(ErrorCode::kDegenerateQ, "(-q)_+ = 0; relative bounds undefined");
  }
  if (b.HasFlag(flags::kDegenerateZ)) {
    throw TcpError(ErrorCode::kDegenerateZ, "z = 0; relative bounds undefined");
  }
  if (b.HasFlag(flags::kExactSolutionInconsistent)) {
    throw TcpError(ErrorCode::kExactSolutionInconsistent,
                   "v_t = 0 with u != z; relative bounds unavailable");
  }
  AddResidual(r, ctx);
  r.Add("neg_q_root", b.neg_q_root);
  r.Add("rel_lb", *b.rel_lb);
  r.Add("rel_ub", *b.rel_ub);
  r.Add("relative_error", InfNorm(Subtract(ctx.z, ctx.u)) / InfNorm(ctx.z));
  r.Add("flags", JoinFlags(b.flags));
  return kExitOk;
}

int RunCompare(const Options& opts, Report& r) {
  std::vector<std::string> extra;
  const BoundsContext ctx = PrepareBounds(opts, r, extra);
  const BoundReport& b = ctx.report;
  AddResidual(r, ctx);
  AddOptional(r, "lb_new", b.lb_new);
  AddOptional(r, "ub_new", b.ub_new);
  r.Add("lb_base", b.lb_base);
  r.Add("ub_base", b.ub_base);
  AddOptional(r, "rel_lb", b.rel_lb);
  AddOptional(r, "rel_ub", b.rel_ub);
  AddOptional(r, "sol_lb", b.sol_lb);
  AddOptional(r, "sol_ub", b.sol_ub);
  r.Add("error", InfNorm(Subtract(ctx.z, ctx.u)));
  if (b.ub_new) {
    r.Add("ub_ratio", CompareUpperBounds(b));
  } else {
    r.Add("ub_ratio", "n/a");
  }
  r.Add("flags", JoinFlags(b.flags));
  return kExitOk;
}

int ExitFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNotPCertificate:
    case ErrorCode::kDegenerateQ:
    case ErrorCode::kDegenerateZ:
    case ErrorCode::kExactSolutionInconsistent:
    case ErrorCode::kInvariantViolation:
    case ErrorCode::kUnverifiedSolution:
      return kExitHypothesisFailure;
    default:
      return kExitInputError;
  }
}

}  // namespace

int RunCommand(const std::vector<std::string>& args, std::ostream& out,
               std::ostream& err) {
  Options opts;
  CLI::App app{"Error bounds for tensor complementarity problems with P-tensors",
               "tcpbound"};
  app.require_subcommand(1, 1);

  const std::vector<std::pair<std::string, std::string>> commands = {
      {"alpha", "estimate alpha(F_A) or alpha(T_A)"},
      {"check-p", "sample the P-tensor condition"},
      {"solve", "enumerate solutions of TCP(q, A)"},
      {"verify", "check a candidate solution"},
      {"sol-bounds", "bounds on the norm of any solution"},
      {"bounds", "absolute error bounds at a test point u"},
      {"rel-bounds", "relative error bounds at a test point u"},
      {"compare", "all bounds side by side with the upper-bound ratio"},
  };
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--file", opts.file, "problem file")->required();
    sub->add_option("--u", opts.u, "test point, comma-separated reals");
    sub->add_option("--z", opts.z, "candidate solution, comma-separated reals");
    sub->add_option("--grid", opts.grid, "alpha grid points per axis");
    sub->add_option("--refine", opts.refine, "alpha refinement sweeps");
    sub->add_option("--seed", opts.seed, "seed for sampling and multi-starts");
    sub->add_option("--tol", opts.tol, "solver/verification tolerance");
    sub->add_option("--samples", opts.samples, "P-check sample count");
    sub->add_option("--kind", opts.kind, "alpha kind: F or T")
        ->check(CLI::IsMember({"F", "T"}));
    sub->add_option("--format", opts.format, "text or machine")
        ->check(CLI::IsMember({"text", "machine"}));
    sub->callback([&opts, name = name] { opts.command = name; });
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kExitInputError;
  }

  const ReportFormat format =
      opts.format == "machine" ? ReportFormat::kMachine : ReportFormat::kText;
  Report report;
  report.Add("command", opts.command);
  int status = kExitOk;
  try {
    if (opts.command == "alpha") {
      status = RunAlpha(opts, report);
    } else if (opts.command == "check-p") {
      status = RunCheckP(opts, report);
    } else if (opts.command == "solve") {
      status = RunSolve(opts, report);
    } else if (opts.command == "verify") {
      status = RunVerify(opts, report);
    } else if (opts.command == "sol-bounds") {
      status = RunSolBounds(opts, report);
    } else if (opts.command == "bounds") {
      status = RunBounds(opts, report);
    } else if (opts.command == "rel-bounds") {
      status = RunRelBounds(opts, report);
    } else {
      status = RunCompare(opts, report);
    }
    report.Add("status", status == kExitOk ? "ok" : "hypothesis_failure");
  } catch (const TcpError& e) {
    status = ExitFor(e.code());
    report.Add("status", status == kExitHypothesisFailure ? "hypothesis_failure"
                                                          : "error");
    report.Add("error_code", std::string(ToString(e.code())));
    report.Add("message", std::string(e.what()));
    err << e.what() << "\n";
  }
  out << report.Render(format);
  return status;
}

}  // namespace tcpbound
