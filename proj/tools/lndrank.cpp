// lndrank: command-line front end for the locally nilpotent derivation
// toolkit. One subcommand per pipeline stage; output is a single text or
// JSON document on stdout, diagnostics go to stderr.
//
// Exit codes: 0 ok, 1 internal error, 2 input error, 3 timeout,
// 4 precondition violation.

#include <CLI11.hpp>

#include <chrono>
#include <condition_variable>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include "lnd/report.hpp"

namespace {

using namespace lnd;
using report::json;

enum Exit { kOk = 0, kInternal = 1, kInput = 2, kTimeout = 3, kPrecondition = 4 };

struct Options {
  std::string format = "text";
  double budget = 0;  // seconds, 0 = unlimited
  std::vector<std::string> polys;
  std::vector<std::string> kernel;
  std::vector<std::string> jacobian;
  std::string vars;
  std::string order;
};

Ring ring_from(const std::string& vars, const std::vector<std::string>& fallback) {
  if (vars.empty()) return Ring(fallback);
  std::vector<std::string> names;
  std::stringstream ss(vars);
  for (std::string v; std::getline(ss, v, ',');) names.push_back(v);
  return Ring(names);
}

Poly parse_arg(const std::string& text, const Ring& r, const std::string& what) {
  try {
    return parse_poly(text, r);
  } catch (const ParseError& e) {
    throw ParseError(what + " \"" + text + "\": " + std::string(e.what()).substr(0, std::string(e.what()).rfind(" at position")),
                     e.position);
  }
}

Derivation parse_derivation(const std::vector<std::string>& a) {
  if (a.size() != 3) throw std::invalid_argument("a derivation needs exactly three coefficients a1 a2 a3");
  return Derivation(parse_arg(a[0], Ring::xyz(), "a1"), parse_arg(a[1], Ring::xyz(), "a2"),
                    parse_arg(a[2], Ring::xyz(), "a3"));
}

KernelPair parse_pair(const std::vector<std::string>& a, const char* flag) {
  return {parse_arg(a.at(0), Ring::xyz(), std::string(flag) + " f"), parse_arg(a.at(1), Ring::xyz(), std::string(flag) + " g")};
}

/// Output assembled by a subcommand: JSON result plus the text rendering.
struct Outcome {
  json input;
  json result;
  std::vector<std::string> lines;
  std::vector<StageTiming> timings;
};

void add_plinth_lines(const PlinthCertificate& c, std::vector<std::string>& out) {
  out.push_back("initial slice: " + c.initial.s.to_string());
  out.push_back("initial value: " + c.initial.value.to_string());
  for (const auto& r : c.trail)
    out.push_back("reduce by " + r.prime.to_string() + ": " +
                  (r.success ? "ok, a = " + r.a_abstract->to_string() : std::string("no kernel correction")));
  out.push_back("minimal slice: " + c.slice.s.to_string());
  out.push_back("plinth generator: " + c.generator.to_string());
}

void add_certificate_lines(const CoordinateCertificate& c, std::vector<std::string>& out) {
  out.push_back(std::string("coordinate: ") + (c.is_coordinate ? "true" : "false"));
  if (!c.is_coordinate) {
    out.push_back("rejected: " + c.rejection);
    return;
  }
  for (const auto& s : c.witness.steps()) out.push_back("  step: " + c.witness.describe_step(s));
  out.push_back("complement: " + c.complement->to_string());
}

std::string outer_string(const std::vector<Rational>& l) {
  Ring t({"T"});
  Poly p(t);
  for (std::size_t k = 0; k < l.size(); ++k) p += pow(Poly::variable(t, 0), static_cast<unsigned>(k)).scaled(l[k]);
  return p.to_string();
}

void add_log_lines(const std::vector<RejectedCandidate>& log, std::vector<std::string>& out) {
  for (const auto& r : log)
    out.push_back("  rejected " + r.candidate.to_string() + ": " + to_string(r.reason) + " (" + r.detail + ")");
}

Outcome run_recognize(const Options& o) {
  if (o.polys.size() != 2) throw std::invalid_argument("recognize needs exactly two polynomials f g");
  Poly f = parse_arg(o.polys[0], Ring::xyz(), "f"), g = parse_arg(o.polys[1], Ring::xyz(), "g");
  auto chk = check_locally_nilpotent_jacobian(f, g);
  Derivation d = from_jacobian(f, g);
  Outcome out;
  out.input = {{"f", report::encode(f)}, {"g", report::encode(g)}};
  out.result = {{"derivation", report::encode(d)}, {"locally_nilpotent", chk.nilpotent}, {"bound", chk.bound}};
  out.lines = {"derivation: " + d.to_string(), "iterate bound: " + std::to_string(chk.bound),
               std::string("locally nilpotent: ") + (chk.nilpotent ? "true" : "false")};
  return out;
}

Outcome run_slice(const Options& o) {
  Derivation d = parse_derivation(o.polys);
  auto s = initial_local_slice(d);
  Outcome out;
  out.input = {{"derivation", report::encode(d)}};
  out.result = report::encode(s);
  out.lines = {"derivation: " + d.to_string(), "local slice: " + s.s.to_string(), "value: " + s.value.to_string()};
  return out;
}

Outcome run_plinth(const Options& o, Deadline dl) {
  Derivation d = parse_derivation(o.polys);
  KernelPair kp = parse_pair(o.kernel, "--kernel");
  if (!verify_kernel_pair(d, kp))
    throw PreconditionViolation("kernel pair does not annihilate the derivation or is algebraically dependent");
  auto c = minimal_local_slice(d, kp, dl);
  Outcome out;
  out.input = {{"derivation", report::encode(d)}, {"kernel", {report::encode(kp.f), report::encode(kp.g)}}};
  out.result = report::encode(c);
  out.lines = {"derivation: " + d.to_string()};
  add_plinth_lines(c, out.lines);
  return out;
}

Outcome run_rank(const Options& o, Deadline dl) {
  Outcome out;
  std::optional<Derivation> d;
  KernelPair kp;
  if (!o.jacobian.empty()) {
    if (!o.polys.empty() || !o.kernel.empty())
      throw std::invalid_argument("rank --jacobian takes no derivation coefficients or --kernel");
    kp = parse_pair(o.jacobian, "--jacobian");
    auto chk = check_locally_nilpotent_jacobian(kp.f, kp.g);
    d = from_jacobian(kp.f, kp.g);
    out.input = {{"jacobian", {report::encode(kp.f), report::encode(kp.g)}}};
    out.result["recognition"] = {{"locally_nilpotent", chk.nilpotent}, {"bound", chk.bound}};
    out.lines.push_back("recognition: " + std::string(chk.nilpotent ? "locally nilpotent" : "not locally nilpotent") +
                        " (bound " + std::to_string(chk.bound) + ")");
    if (!chk.nilpotent) throw PreconditionViolation("Jac(f, g, .) is not locally nilpotent");
  } else {
    if (o.kernel.empty()) throw std::invalid_argument("rank needs --kernel f g or --jacobian f g");
    d = parse_derivation(o.polys);
    kp = parse_pair(o.kernel, "--kernel");
    out.input = {{"derivation", report::encode(*d)}, {"kernel", {report::encode(kp.f), report::encode(kp.g)}}};
  }
  auto r = compute_rank(*d, kp, dl);
  json rj = report::encode(r);
  for (auto& [k, v] : rj.items()) out.result[k] = v;
  out.timings = r.timings;
  out.lines.push_back("derivation: " + d->to_string());
  out.lines.push_back("content: " + r.content.to_string());
  add_plinth_lines(r.plinth, out.lines);
  out.lines.push_back("generator in kernel variables: " + r.generator_abstract.to_string());
  out.lines.push_back("rank: " + std::to_string(r.rank));
  if (const auto* w = std::get_if<SliceWitness>(&r.witness)) {
    out.lines.push_back("slice: " + w->s.to_string());
  } else if (const auto* w2 = std::get_if<RankTwoWitness>(&r.witness)) {
    out.lines.push_back("generator = l(u), l(T) = " + outer_string(w2->outer) + ", u = " + w2->inner_abstract.to_string());
    add_certificate_lines(w2->certificate, out.lines);
  } else {
    add_log_lines(std::get<RankThreeWitness>(r.witness).log, out.lines);
  }
  return out;
}

Outcome run_decompose(const Options& o) {
  if (o.polys.size() != 1) throw std::invalid_argument("decompose needs exactly one polynomial");
  Ring r = ring_from(o.vars, {"x", "y"});
  if (r.size() != 2) throw std::invalid_argument("decompose works in exactly two variables");
  Poly c = parse_arg(o.polys[0], r, "c");
  auto d = uni_multivariate_decompose(c);
  Outcome out;
  out.input = {{"vars", r.names()}, {"c", report::encode(c)}};
  out.result = report::encode(d);
  out.lines.push_back(std::string("decomposable: ") + (d.found ? "true" : "false"));
  if (d.found) {
    out.lines.push_back("l(T) = " + outer_string(d.outer));
    out.lines.push_back("u = " + d.inner->to_string());
    add_certificate_lines(*d.certificate, out.lines);
  }
  add_log_lines(d.candidates_tried, out.lines);
  return out;
}

Outcome run_is_coordinate(const Options& o) {
  if (o.polys.size() != 1) throw std::invalid_argument("is-coordinate needs exactly one polynomial");
  Ring r = ring_from(o.vars, {"x", "y"});
  if (r.size() != 2) throw std::invalid_argument("is-coordinate works in exactly two variables");
  Poly p = parse_arg(o.polys[0], r, "p");
  auto c = coordinate_test(p);
  Outcome out;
  out.input = {{"vars", r.names()}, {"p", report::encode(p)}};
  out.result = report::encode(c);
  add_certificate_lines(c, out.lines);
  return out;
}

Outcome run_factor(const Options& o) {
  if (o.polys.size() != 1) throw std::invalid_argument("factor needs exactly one polynomial");
  Ring r = ring_from(o.vars, {"x", "y", "z"});
  Poly p = parse_arg(o.polys[0], r, "p");
  if (p.is_zero()) throw std::invalid_argument("cannot factor the zero polynomial");
  auto f = factor_multi(p);
  Outcome out;
  out.input = {{"vars", r.names()}, {"p", report::encode(p)}};
  out.result = report::encode(f);
  out.lines.push_back("unit: " + f.unit.get_str());
  for (const auto& [q, m] : f.factors) out.lines.push_back("  (" + q.to_string() + ")^" + std::to_string(m));
  return out;
}

Outcome run_groebner(const Options& o, Deadline dl) {
  if (o.polys.empty()) throw std::invalid_argument("groebner needs at least one polynomial");
  if (o.order.empty()) throw std::invalid_argument("groebner needs --order lex:v1,v2,... (least to greatest)");
  MonomialOrder order = report::parse_order(o.order);
  std::vector<Poly> gens;
  for (std::size_t i = 0; i < o.polys.size(); ++i)
    gens.push_back(parse_arg(o.polys[i], order.ring(), "p" + std::to_string(i + 1)));
  auto g = buchberger(gens, order, dl);
  Outcome out;
  out.input = {{"order", order.to_string()}, {"generators", report::encode(gens)}};
  out.result = report::encode(g);
  out.lines.push_back("order: " + order.to_string());
  for (const auto& p : g.generators()) out.lines.push_back("  " + p.to_string());
  return out;
}

/// Hard stop for computations without cooperative cancellation points.
class Watchdog {
 public:
  explicit Watchdog(double seconds) {
    if (seconds <= 0) return;
    // Grace period lets cooperative deadlines report first.
    auto limit = std::chrono::duration<double>(seconds + 0.25);
    thread_ = std::thread([this, limit] {
      std::unique_lock lock(mu_);
      if (!cv_.wait_for(lock, limit, [this] { return done_; })) {
        std::fputs("lndrank: error: time budget exceeded\n", stderr);
        std::fflush(stdout);
        std::_Exit(kTimeout);
      }
    });
  }
  ~Watchdog() {
    if (!thread_.joinable()) return;
    {
      std::lock_guard lock(mu_);
      done_ = true;
    }
    cv_.notify_all();
    thread_.join();
  }

 private:
  std::thread thread_;
  std::mutex mu_;
  std::condition_variable cv_;
  bool done_ = false;
};

int fail(int code, const std::string& kind, const std::string& msg) {
  std::cerr << "lndrank: " << kind << ": " << msg << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rank and plinth computations for locally nilpotent derivations of Q[x,y,z]"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--budget", o.budget, "Time budget in seconds (0 = unlimited)")->check(CLI::NonNegativeNumber);

  auto* recognize = app.add_subcommand("recognize", "Is Jac(f, g, .) locally nilpotent?");
  recognize->add_option("polys", o.polys, "f g")->required();
  auto* slice = app.add_subcommand("slice", "Initial local slice of a1*Dx + a2*Dy + a3*Dz");
  slice->add_option("coeffs", o.polys, "a1 a2 a3")->required();
  auto* plinth = app.add_subcommand("plinth", "Minimal local slice and plinth generator");
  plinth->add_option("coeffs", o.polys, "a1 a2 a3")->required();
  plinth->add_option("--kernel", o.kernel, "Kernel generators f g")->expected(2)->required();
  auto* rank = app.add_subcommand("rank", "Rank of a locally nilpotent derivation");
  rank->add_option("coeffs", o.polys, "a1 a2 a3");
  auto* kopt = rank->add_option("--kernel", o.kernel, "Kernel generators f g")->expected(2);
  rank->add_option("--jacobian", o.jacobian, "Use D = Jac(f, g, .) with kernel (f, g)")->expected(2)->excludes(kopt);
  auto* decompose = app.add_subcommand("decompose", "Write c = l(u) with u a coordinate");
  decompose->add_option("c", o.polys)->required();
  decompose->add_option("--vars", o.vars, "Two comma-separated variable names (default x,y)");
  auto* iscoord = app.add_subcommand("is-coordinate", "Coordinate test in two variables");
  iscoord->add_option("p", o.polys)->required();
  iscoord->add_option("--vars", o.vars, "Two comma-separated variable names (default x,y)");
  auto* factor = app.add_subcommand("factor", "Irreducible factorization over Q");
  factor->add_option("p", o.polys)->required();
  factor->add_option("--vars", o.vars, "Comma-separated variable names (default x,y,z)");
  auto* groebner = app.add_subcommand("groebner", "Reduced lex Groebner basis");
  groebner->add_option("polys", o.polys)->required();
  groebner->add_option("--order", o.order, "lex:v1,v2,... listing variables from least to greatest")->required();

  // "-x*y" is an expression, not a short flag; a leading space hides it from
  // the option scanner and the polynomial parser skips it.
  std::vector<std::string> args;
  for (int i = argc - 1; i > 0; --i) {
    std::string a = argv[i];
    if (a.size() > 1 && a[0] == '-' && a[1] != '-' && a != "-h") a.insert(0, " ");
    args.push_back(std::move(a));
  }

  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kInput;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  auto start = Clock::now();
  Deadline dl = o.budget > 0 ? deadline_after(o.budget) : Deadline{};
  Outcome out;
  try {
    Watchdog watchdog(o.budget);
    if (command == "recognize") out = run_recognize(o);
    else if (command == "slice") out = run_slice(o);
    else if (command == "plinth") out = run_plinth(o, dl);
    else if (command == "rank") out = run_rank(o, dl);
    else if (command == "decompose") out = run_decompose(o);
    else if (command == "is-coordinate") out = run_is_coordinate(o);
    else if (command == "factor") out = run_factor(o);
    else out = run_groebner(o, dl);
  } catch (const DeadlineExceeded& e) {
    return fail(kTimeout, "timeout", e.what());
  } catch (const PreconditionViolation& e) {
    return fail(kPrecondition, "precondition violated", e.what());
  } catch (const InternalInconsistency& e) {
    return fail(kInternal, "internal error", e.what());
  } catch (const std::invalid_argument& e) {
    return fail(kInput, "input error", e.what());
  } catch (const std::exception& e) {
    return fail(kInternal, "internal error", e.what());
  }
  double total = std::chrono::duration<double>(Clock::now() - start).count();

  if (o.format == "json") {
    json doc = {{"tool", "lndrank"}, {"version", report::version()}, {"command", command}, {"input", out.input},
                {"result", out.result}};
    json t = report::encode(out.timings);
    t["total"] = total;
    doc["timings"] = std::move(t);
    std::cout << doc.dump(2) << "\n";
  } else {
    for (const auto& l : out.lines) std::cout << l << "\n";
  }
  return kOk;
}
