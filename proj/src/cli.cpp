#include "normmesh/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>

#include "normmesh/bounds.hpp"
#include "normmesh/error.hpp"
#include "normmesh/landau.hpp"
#include "normmesh/meshgen.hpp"

namespace normmesh::cli {

namespace {

const char* command_name(Command c) {
  switch (c) {
    case Command::dims: return "dims";
    case Command::bounds: return "bounds";
    case Command::mesh: return "mesh";
    case Command::embed: return "embed";
    case Command::distort: return "distort";
    case Command::entropy: return "entropy";
  }
  return "unknown";
}

std::vector<std::string> anchors(Command c) {
  switch (c) {
    case Command::dims:
      return {"dim P_d^n = C(d+n, n)", "trace dimension = numerical rank of the grid Vandermonde"};
    case Command::bounds:
      return {"N_dn = floor(e^{2n} (n+2)^{2n} d^n (2n+1+floor(n ln d))^n)",
              "distortion (e (n+2)^2)^{1/(n+2)}", "N_ds = floor(c d^k s^k (floor(ln(c d^k))+1)^k)",
              "distortion (e s^k)^{1/s}"};
    case Command::mesh:
      return {"swap-optimal nodes: |f_k| <= 1 + tol on the grid",
              "norming: ||g||_G <= Lambda ||g||_A, Lambda = max_z sum_k |f_k(z)|"};
    case Command::embed:
    case Command::distort:
      return {"power trick: ||f||_G <= Lambda^{1/p} ||f||_A with A the nodes for degree d p",
              "coarse certificate (n_{dp})^{1/p}", "schedule p = s (floor(ln(c d^k))+1), c = 1/s + k ln(s)/s"};
    case Command::entropy:
      return {"s_eps: (e s^k)^{1/s} = (1+eps)^{1/4}", "net cardinality (1 + 2/xi)^{N nbar}",
              "1/xi = nbar (1+R)/(R-1)", "closed-form bound on ln N(1+eps)"};
  }
  return {};
}

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::vector<double> center_and_radius(const RunConfig& c, double& radius) {
  const std::size_t n = c.n;
  radius = 1.0;
  std::vector<double> center(n, 0.0);
  if (c.params.empty()) return center;
  if (c.params.size() == 1) {
    radius = c.params[0];
  } else if (c.params.size() == n + 1) {
    std::copy(c.params.begin(), c.params.begin() + static_cast<std::ptrdiff_t>(n), center.begin());
    radius = c.params[n];
  } else {
    throw ValidationError("--params for ball/sphere takes a radius or n center coordinates followed by a radius");
  }
  return center;
}

Json envelope(const RunConfig& c, std::size_t grid_size) {
  Json j;
  j["command"] = command_name(c.command);
  j["tool_version"] = kToolVersion;
  j["seed"] = c.seed;
  j["grid_size"] = grid_size;
  j["anchors"] = anchors(c.command);
  return j;
}

Schedule resolve_schedule(const RunConfig& c, GrowthConstant& c_hat) {
  const ScheduleSpec& s = *c.schedule;
  c_hat = parse_growth_constant(s.c_hat);
  return schedule_p(c.d, s.k, c_hat, s.s);
}

EmbeddingCertificate run_embed(const RunConfig& c, Json& extra) {
  const CompactSet set = make_set(c);
  EmbedOptions opt;
  opt.seed = c.seed;
  std::uint64_t p = 0;
  if (c.schedule) {
    GrowthConstant c_hat = GrowthConstant::from_value(1.0);
    const Schedule sched = resolve_schedule(c, c_hat);
    p = sched.p;
    opt.schedule_c = sched.c;
    extra["schedule"] = {{"s", c.schedule->s}, {"k", c.schedule->k}, {"c_hat", c_hat.text()}};
  } else if (c.p) {
    p = *c.p;
  } else {
    throw ValidationError("embed needs --p or --schedule s,k,chat");
  }
  return embed(PolySpace(c.n, c.d), set, p, opt);
}

void merge(Json& into, const Json& from) {
  for (const auto& [k, v] : from.items()) into[k] = v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

double parse_real(const std::string& s, const char* what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) throw ValidationError(std::string("cannot parse ") + what + " '" + s + "'");
  return v;
}

}  // namespace

GrowthConstant parse_growth_constant(const std::string& text) {
  if (text.rfind("exp(", 0) == 0 && text.size() > 5 && text.back() == ')') {
    const std::string inner = text.substr(4, text.size() - 5);
    parse_real(inner, "growth constant exponent");
    return GrowthConstant::from_log(HpAudit(inner));
  }
  return GrowthConstant::from_value(parse_real(text, "growth constant"));
}

CompactSet make_set(const RunConfig& c) {
  if (c.n == 0) throw ValidationError("--n must be positive");
  const std::string kind = c.set_kind.value_or("box");
  if (kind == "cloud") {
    if (!c.cloud_path) throw ValidationError("--set cloud needs --cloud <path>");
    return load_point_cloud(*c.cloud_path, c.n);
  }
  if (c.resolution < 2) throw ValidationError("--resolution must be at least 2");
  if (kind == "box") {
    std::vector<double> lo(c.n, -1.0);
    std::vector<double> hi(c.n, 1.0);
    if (c.params.size() == 2) {
      std::fill(lo.begin(), lo.end(), c.params[0]);
      std::fill(hi.begin(), hi.end(), c.params[1]);
    } else if (c.params.size() == 2 * c.n) {
      for (std::size_t j = 0; j < c.n; ++j) {
        lo[j] = c.params[2 * j];
        hi[j] = c.params[2 * j + 1];
      }
    } else if (!c.params.empty()) {
      throw ValidationError("--params for box takes lo,hi or lo1,hi1,...,lon,hin");
    }
    return CompactSet::box(std::move(lo), std::move(hi), c.resolution);
  }
  double radius = 1.0;
  std::vector<double> center = center_and_radius(c, radius);
  if (kind == "ball") return CompactSet::ball(std::move(center), radius, c.resolution);
  if (kind == "sphere") return CompactSet::sphere(std::move(center), radius, c.resolution);
  throw ValidationError("unknown --set kind '" + kind + "'");
}

Json execute(const RunConfig& c) {
  if (c.n == 0) throw ValidationError("--n must be positive");
  switch (c.command) {
    case Command::dims: {
      Json j = envelope(c, 0);
      j["n"] = c.n;
      j["d"] = c.d;
      j["dim_full"] = dim_full(c.n, c.d);
      if (c.set_kind) {
        const CompactSet set = make_set(c);
        const TraceRank r = trace_dimension(PolySpace(c.n, c.d), set);
        j["grid_size"] = r.grid_size;
        j["trace_dimension"] = to_json(r);
      }
      return j;
    }
    case Command::bounds: {
      Json j = envelope(c, 0);
      j["dim_full"] = dim_full(c.n, c.d);
      BoundReport report = mesh_bounds_report(c.n, c.d);
      ScheduleSpec sched;
      if (c.schedule) {
        sched = *c.schedule;
      } else {
        sched.s = (c.n + 2) * (c.n + 2);
        sched.k = c.n;
        sched.c_hat = "exp(" + std::to_string(2 * c.n) + ")";
      }
      const BoundReport cor1 = cor1_report(c.d, sched.k, parse_growth_constant(sched.c_hat), sched.s);
      for (const auto& in : cor1.inputs)
        if (in.first != "d") report.inputs.push_back(in);
      for (const auto& v : cor1.values) report.values.push_back(v);
      merge(j, to_json(report));
      return j;
    }
    case Command::mesh: {
      const CompactSet set = make_set(c);
      const Points g = grid(set);
      SelectOptions opt;
      opt.seed = c.seed;
      const NodeSet nodes = select_nodes(PolySpace(c.n, c.d), g, opt);
      Json j = envelope(c, g.size());
      j["node_set"] = to_json(nodes);
      j["grid_constant"] = norming_constant(nodes, g);
      return j;
    }
    case Command::embed:
    case Command::distort: {
      Json extra = Json::object();
      EmbeddingCertificate cert = run_embed(c, extra);
      if (c.command == Command::distort) {
        if (c.trials == 0) throw ValidationError("--trials must be positive");
        estimate_distortion(cert, c.trials, c.seed);
        extra["trials"] = c.trials;
      }
      Json j = envelope(c, cert.grid.size());
      j["certificate"] = to_json(cert);
      merge(j, extra);
      return j;
    }
    case Command::entropy: {
      EntropyInputs in;
      in.d = c.d;
      in.k = c.k.value_or(c.n);
      in.c_hat = parse_growth_constant(c.c_hat.value_or("exp(" + std::to_string(2 * c.n) + ")"));
      in.nbar = c.nbar ? *c.nbar : dim_full(c.n, c.d);
      in.eps = c.eps;
      Json j = envelope(c, 0);
      merge(j, to_json(entropy_chain(in)));
      return j;
    }
  }
  throw ValidationError("unknown command");
}

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Certified polynomial norming meshes and their explicit bounds", "normmesh"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::string params;
  std::string schedule;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--n", cfg.n, "ambient dimension")->check(CLI::PositiveNumber);
    sub->add_option("--d", cfg.d, "polynomial degree");
    sub->add_option("--seed", cfg.seed, "random seed (echoed in the report)");
    sub->add_option("--out", cfg.out, "output file (default: standard output)");
    sub->add_option("--format", cfg.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    sub->add_flag("--no-timestamp", [&](std::int64_t) { cfg.timestamp = false; }, "omit generated_at");
  };
  auto add_set = [&](CLI::App* sub) {
    sub->add_option_function<std::string>("--set", [&](const std::string& s) { cfg.set_kind = s; }, "set kind")
        ->check(CLI::IsMember({"box", "ball", "sphere", "cloud"}));
    sub->add_option("--params", params, "comma separated set parameters");
    sub->add_option_function<std::string>("--cloud", [&](const std::string& s) { cfg.cloud_path = s; },
                                          "point cloud file");
    sub->add_option("--resolution", cfg.resolution, "per-axis sample count");
  };
  auto add_power = [&](CLI::App* sub) {
    sub->add_option_function<std::uint64_t>("--p", [&](const std::uint64_t& v) { cfg.p = v; }, "power p");
    sub->add_option("--schedule", schedule, "s,k,chat for the logarithmic power schedule");
  };

  struct Sub {
    Command cmd;
    CLI::App* app;
  };
  std::vector<Sub> subs;
  subs.push_back({Command::dims, app.add_subcommand("dims", "dimension and trace rank")});
  subs.push_back({Command::bounds, app.add_subcommand("bounds", "mesh sizes and distortion constants")});
  subs.push_back({Command::mesh, app.add_subcommand("mesh", "swap-optimal node set and norming constant")});
  subs.push_back({Command::embed, app.add_subcommand("embed", "embedding certificate")});
  subs.push_back({Command::distort, app.add_subcommand("distort", "embedding certificate with empirical distortion")});
  subs.push_back({Command::entropy, app.add_subcommand("entropy", "covering-number chain")});
  for (auto& s : subs) add_common(s.app);
  for (auto& s : subs)
    if (s.cmd == Command::dims || s.cmd == Command::mesh || s.cmd == Command::embed || s.cmd == Command::distort)
      add_set(s.app);
  for (auto& s : subs) {
    if (s.cmd == Command::embed || s.cmd == Command::distort || s.cmd == Command::bounds) add_power(s.app);
    if (s.cmd == Command::distort) s.app->add_option("--trials", cfg.trials, "random starts");
    if (s.cmd == Command::entropy) {
      s.app->add_option("--eps", cfg.eps, "radius parameter in (0, 1/2]");
      s.app->add_option_function<std::uint64_t>("--nbar", [&](const std::uint64_t& v) { cfg.nbar = v; },
                                                "space dimension (default C(d+n, n))");
      s.app->add_option_function<std::uint64_t>("--k", [&](const std::uint64_t& v) { cfg.k = v; },
                                                "growth exponent (default n)");
      s.app->add_option_function<std::string>("--chat", [&](const std::string& v) { cfg.c_hat = v; },
                                              "growth constant, e.g. 2.5 or exp(4) (default exp(2n))");
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "ERROR[usage]: " << e.what() << "\n";
    return 2;
  }

  try {
    for (const auto& s : subs)
      if (s.app->parsed()) cfg.command = s.cmd;
    if (!params.empty())
      for (const auto& tok : split(params, ',')) cfg.params.push_back(parse_real(tok, "--params value"));
    if (!schedule.empty()) {
      const auto parts = split(schedule, ',');
      if (parts.size() != 3) throw ValidationError("--schedule expects s,k,chat");
      ScheduleSpec spec;
      spec.s = static_cast<std::uint64_t>(parse_real(parts[0], "schedule s"));
      spec.k = static_cast<std::uint64_t>(parse_real(parts[1], "schedule k"));
      spec.c_hat = parts[2];
      if (static_cast<double>(spec.s) != parse_real(parts[0], "schedule s") ||
          static_cast<double>(spec.k) != parse_real(parts[1], "schedule k"))
        throw ValidationError("--schedule s and k must be integers");
      cfg.schedule = spec;
    }

    Json report = execute(cfg);
    if (cfg.timestamp) report["generated_at"] = utc_now();
    const std::string text = cfg.format == "csv" ? to_csv(report) : report.dump(2) + "\n";
    if (cfg.out) {
      std::ofstream f(*cfg.out, std::ios::binary);
      if (!f) throw InputError("cannot write " + *cfg.out);
      f << text;
    } else {
      out << text;
    }
    return 0;
  } catch (const InvariantViolation& e) {
    err << "ERROR[" << to_string(e.code()) << "]: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    err << "ERROR[" << to_string(e.code()) << "]: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "ERROR[internal]: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace normmesh::cli

namespace normmesh {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::input: return "input";
    case ErrorCode::validation: return "validation";
    case ErrorCode::overflow: return "overflow";
    case ErrorCode::non_determining: return "non_determining";
    case ErrorCode::singular: return "singular";
    case ErrorCode::invariant_violation: return "invariant_violation";
  }
  return "unknown";
}

}  // namespace normmesh
