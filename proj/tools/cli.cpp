#include "fairdiv/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>
#include <ostream>

#include "fairdiv/algorithms.hpp"
#include "fairdiv/ef_feasibility.hpp"
#include "fairdiv/error.hpp"
#include "fairdiv/fairness.hpp"
#include "fairdiv/geometry.hpp"
#include "fairdiv/io.hpp"
#include "fairdiv/oracle.hpp"

namespace fairdiv::cli {

namespace {

using nlohmann::ordered_json;

constexpr const char* kVersion = "0.1.0";

ordered_json rational_json(const Rational& r) {
  if (r.is_integer()) return r.num();
  return r.str();
}

ordered_json vector_json(const ItemVector& x) { return std::vector<std::int64_t>(x.counts().begin(), x.counts().end()); }

ordered_json bundles_json(const Allocation& alloc) {
  ordered_json rows = ordered_json::array();
  for (const auto& b : alloc.bundles()) rows.push_back(vector_json(b));
  return rows;
}

ordered_json allocation_json(const Allocation& alloc) { return ordered_json{{"bundles", bundles_json(alloc)}}; }

ordered_json report_json(const Allocation& alloc, const FairnessReport& report) {
  ordered_json out{{"criterion", to_string(report.criterion)}, {"satisfied", report.satisfied}, {"witness", nullptr}};
  if (report.witness) {
    const auto& w = *report.witness;
    out["witness"] = ordered_json{
        {"observer", w.observer},
        {"envied", w.envied},
        {"removed_type", w.removed_type ? ordered_json(*w.removed_type) : ordered_json(nullptr)},
        {"own_value", rational_json(w.own_value)},
        {"other_value", rational_json(w.other_value)},
        {"bundle", vector_json(witness_bundle(alloc, w))},
    };
  }
  return out;
}

ordered_json trace_json(const TwoTypeTrace& tr) {
  auto opt = [](const std::optional<TypeIndex>& a) { return a ? ordered_json(*a) : ordered_json(nullptr); };
  return ordered_json{{"p", tr.p},
                      {"steps_run", tr.steps_run},
                      {"a", opt(tr.a)},
                      {"b", opt(tr.b)},
                      {"n_a_plus", tr.n_a_plus},
                      {"q", tr.q},
                      {"step3_end", to_string(tr.step3_end)},
                      {"r", tr.r},
                      {"no_envy_lemma_violations", tr.no_envy_lemma_violations}};
}

std::string bundle_text(const ItemVector& x) {
  std::string s = "(";
  for (TypeIndex a = 0; a < x.types(); ++a) s += (a ? "," : "") + std::to_string(x[a]);
  return s + ")";
}

std::string report_text(const Allocation& alloc, const FairnessReport& r) {
  std::string s = std::string(to_string(r.criterion)) + ": " + (r.satisfied ? "satisfied" : "violated") + "\n";
  if (r.witness) {
    const auto& w = *r.witness;
    s += "  agent " + std::to_string(w.observer) + " values own bundle at " + w.own_value.str() + " but " +
         bundle_text(witness_bundle(alloc, w)) + " from agent " + std::to_string(w.envied) + " at " +
         w.other_value.str() + "\n";
  }
  return s;
}

std::string allocation_text(const Allocation& alloc) {
  std::string s;
  for (AgentIndex i = 0; i < alloc.agents(); ++i) {
    s += "  agent " + std::to_string(i) + ": " + bundle_text(alloc.bundle(i)) + "  value " + alloc.own_value(i).str() +
         "\n";
  }
  return s;
}

struct Emitter {
  std::ostream& out;
  bool pretty;

  void json(const ordered_json& doc) const { out << doc.dump() << '\n'; }
};

int fail_exit(std::ostream& err, std::string_view code, const std::string& message, int exit_code) {
  err << ordered_json{{"error", {{"code", code}, {"message", message}}}}.dump() << '\n';
  return exit_code;
}

InstancePtr load_instance(const std::string& path) { return parse_instance(read_file(path)); }

struct Options {
  std::string instance;
  std::string allocation;
  std::string method = "auto";
  std::string criterion = "efx";
  std::string radius_policy = "r";
  std::int64_t r_max = 50;
  bool trace = false;
  bool pretty = false;
  bool count_only = false;
};

int cmd_solve(const Options& o, const Emitter& em) {
  const auto inst = load_instance(o.instance);
  const auto method = parse_method(o.method);
  const AlgorithmOptions opts{true};
  std::optional<Allocation> alloc;
  std::optional<TwoTypeTrace> trace;
  Method route = method;
  switch (method) {
    case Method::auto_select: {
      auto r = allocate(inst, opts);
      alloc = std::move(r.allocation);
      trace = std::move(r.trace);
      route = r.route;
      break;
    }
    case Method::single_type: alloc = allocate_single_type(inst); break;
    case Method::identical_prefs: alloc = allocate_identical_prefs(inst, opts); break;
    case Method::two_types: {
      auto r = allocate_two_types(inst, opts);
      alloc = std::move(r.allocation);
      trace = std::move(r.trace);
      break;
    }
    case Method::geometric:
      if (inst->types() != 2) fail(ErrorCode::precondition_failed, "geometric allocation needs t = 2");
      alloc = allocate_two_types_geometric(inst, opts);
      break;
  }
  const auto report = check_efx(*alloc);
  if (!report.satisfied || !alloc->complete()) {
    fail(ErrorCode::invariant_violated, "solver output is not a complete EFX allocation");
  }
  if (em.pretty) {
    em.out << "route: " << to_string(route) << "\n" << allocation_text(*alloc) << report_text(*alloc, report);
    if (o.trace && trace) em.out << "trace: " << trace_json(*trace).dump() << "\n";
    return ok;
  }
  ordered_json doc{{"route", to_string(route)}, {"allocation", allocation_json(*alloc)}, {"report", report_json(*alloc, report)}};
  if (o.trace) doc["trace"] = trace ? trace_json(*trace) : ordered_json(nullptr);
  em.json(doc);
  return ok;
}

int cmd_check(const Options& o, const Emitter& em) {
  const auto inst = load_instance(o.instance);
  const auto alloc = parse_allocation(inst, read_file(o.allocation));
  const auto report = check(alloc, parse_criterion(o.criterion));
  if (em.pretty) {
    em.out << allocation_text(alloc) << report_text(alloc, report);
  } else {
    em.json(report_json(alloc, report));
  }
  return report.satisfied ? ok : unsatisfied;
}

int cmd_scan(const Options& o, const Emitter& em) {
  const auto inst = load_instance(o.instance);
  const auto policy = RadiusPolicy::parse(o.radius_policy);
  const auto res = scan_min_r(inst->valuations(), o.r_max, policy);
  if (em.pretty) {
    if (res.r) {
      em.out << "r = " << *res.r << " (radius " << res.radius << ", policy " << policy.str()
             << "): a complete EF allocation exists for every m >= " << *res.r << " per type\n";
    } else {
      em.out << "no cube found for r <= " << o.r_max << " (policy " << policy.str() << "); this does not rule out EF\n";
    }
    return res.r ? ok : unsatisfied;
  }
  ordered_json doc{{"r", res.r ? ordered_json(*res.r) : ordered_json(nullptr)},
                   {"xi_star", res.xi_star},
                   {"radius", res.r ? ordered_json(res.radius) : ordered_json(nullptr)},
                   {"radius_policy", policy.str()},
                   {"r_max", o.r_max},
                   {"certified_for", res.r ? ordered_json("all m >= r") : ordered_json(nullptr)}};
  em.json(doc);
  return res.r ? ok : unsatisfied;
}

int cmd_oracle(const Options& o, const Emitter& em) {
  const auto inst = load_instance(o.instance);
  const auto crit = parse_criterion(o.criterion);
  const auto cap = enumeration_cap_from_env();
  const auto plan = plan_enumeration(*inst, cap);
  if (o.count_only) {
    const auto c = count_fair(inst, crit, cap);
    if (em.pretty) {
      em.out << c.satisfying << " of " << c.total << " complete allocations are " << to_string(crit) << "\n";
    } else {
      em.json(ordered_json{{"criterion", to_string(crit)}, {"total", c.total}, {"satisfying", c.satisfying}});
    }
    return c.satisfying > 0 ? ok : unsatisfied;
  }
  const auto found = exists_fair(inst, crit, cap);
  if (em.pretty) {
    if (found) {
      em.out << "first " << to_string(crit) << " allocation of " << plan.total << ":\n" << allocation_text(*found);
    } else {
      em.out << "none of the " << plan.total << " complete allocations is " << to_string(crit) << "\n";
    }
  } else {
    em.json(ordered_json{{"criterion", to_string(crit)},
                         {"exists", found.has_value()},
                         {"allocation", found ? allocation_json(*found) : ordered_json(nullptr)},
                         {"enumerated_space", plan.total}});
  }
  return found ? ok : unsatisfied;
}

int cmd_counterexample(const Emitter& em) {
  const auto report = counterexample_t3();
  if (em.pretty) {
    for (const auto& c : report.checks) {
      em.out << "[" << (c.passed ? "pass" : "FAIL") << "] " << c.group << ". " << c.name;
      if (!c.detail.empty()) em.out << "  (" << c.detail << ")";
      em.out << "\n";
    }
    em.out << (report.passed() ? "all assertion groups pass\n" : "some assertions failed\n");
  } else {
    ordered_json groups = ordered_json::array();
    for (int g = 1; g <= 6; ++g) groups.push_back({{"group", g}, {"passed", report.group_passed(g)}});
    ordered_json checks = ordered_json::array();
    for (const auto& c : report.checks) {
      checks.push_back({{"group", c.group}, {"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    }
    em.json(ordered_json{{"passed", report.passed()}, {"groups", groups}, {"checks", checks}});
  }
  return report.passed() ? ok : unsatisfied;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fair division of typed indivisible goods: EFX/EF allocators, checkers and oracles", "fairdiv"};
  app.require_subcommand(1);
  Options o;

  auto* solve = app.add_subcommand("solve", "Compute a complete EFX allocation");
  solve->add_option("--instance", o.instance, "Instance JSON file")->required();
  solve->add_option("--method", o.method, "auto | t1 | alg1 | alg2 | geometric")
      ->check(CLI::IsMember({"auto", "t1", "alg1", "alg2", "geometric"}));
  solve->add_flag("--trace", o.trace, "Include the two-type allocator trace");

  auto* check = app.add_subcommand("check", "Check an allocation against a fairness criterion");
  check->add_option("--instance", o.instance, "Instance JSON file")->required();
  check->add_option("--allocation", o.allocation, "Allocation JSON file")->required();
  check->add_option("--criterion", o.criterion, "ef | ef1 | efx")->check(CLI::IsMember({"ef", "ef1", "efx"}));

  auto* scan = app.add_subcommand("scan-r", "Search the smallest r certifying EF for all m >= r");
  scan->add_option("--instance", o.instance, "Instance JSON file (valuations are used)")->required();
  scan->add_option("--r-max", o.r_max, "Largest r to try")->check(CLI::PositiveNumber);
  scan->add_option("--radius-policy", o.radius_policy, "Search radius: r, <k>r or <k>");

  auto* oracle = app.add_subcommand("oracle", "Brute-force existence of a fair complete allocation");
  oracle->add_option("--instance", o.instance, "Instance JSON file")->required();
  oracle->add_option("--criterion", o.criterion, "ef | ef1 | efx")->check(CLI::IsMember({"ef", "ef1", "efx"}));
  oracle->add_flag("--count-only", o.count_only, "Only count allocations and how many satisfy the criterion");

  auto* counter = app.add_subcommand("counterexample", "Replay the three-type stuck allocation");
  auto* version = app.add_subcommand("version", "Print the version");

  for (auto* sub : {solve, check, scan, oracle, counter}) sub->add_flag("--pretty", o.pretty, "Human-readable output");

  std::vector<std::string> rest(args.size() > 1 ? args.begin() + 1 : args.end(), args.end());
  std::reverse(rest.begin(), rest.end());
  try {
    app.parse(rest);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return ok;
  } catch (const CLI::ParseError& e) {
    return fail_exit(err, "usage", e.what(), usage);
  }

  const Emitter em{out, o.pretty};
  try {
    if (solve->parsed()) return cmd_solve(o, em);
    if (check->parsed()) return cmd_check(o, em);
    if (scan->parsed()) return cmd_scan(o, em);
    if (oracle->parsed()) return cmd_oracle(o, em);
    if (counter->parsed()) return cmd_counterexample(em);
    if (version->parsed()) {
      em.json(ordered_json{{"name", "fairdiv"}, {"version", kVersion}});
      return ok;
    }
  } catch (const Error& e) {
    const int code = e.code() == ErrorCode::invariant_violated ? internal : usage;
    return fail_exit(err, to_string(e.code()), e.what(), code);
  } catch (const std::exception& e) {
    return fail_exit(err, "internal", e.what(), internal);
  }
  return fail_exit(err, "usage", "no command given", usage);
}

}  // namespace fairdiv::cli
