#include <CLI11.hpp>
#include <cstdio>
#include <iostream>

#include "ramp1/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"exact ramification analysis for rational self-maps of P^1 "
               "over finite fields"};
  app.require_subcommand(1);

  ramp1::RunConfig cfg;
  std::vector<std::string> modulus_ints;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--p", cfg.p, "prime characteristic")->required();
    sub->add_option("--k", cfg.k, "extension degree (default 1)");
    sub->add_option("--modulus", modulus_ints,
                    "modulus coefficients c0 c1 ... (degree k, monic)");
    sub->add_option("--tower", cfg.tower, "tower height for counts");
    sub->add_option("--budget", cfg.budget, "enumeration budget");
    sub->add_option("--seed", cfg.seed, "random seed (echoed in reports)");
    sub->add_option("--format", cfg.format, "table or json");
    sub->add_option("--workers", cfg.workers, "worker threads");
    return sub;
  };

  auto* analyze = add_common(app.add_subcommand(
      "analyze", "ramification profile and the degree identity"));
  analyze->add_option("--map", cfg.maps, "map expression")->required();

  auto* deform = add_common(app.add_subcommand(
      "deform", "first-order deformation space against the formula"));
  deform->add_option("--map", cfg.maps, "map expression")->required();
  deform->add_option("--cond", cfg.conds, "condition point:e (repeatable)");

  auto* expected = add_common(app.add_subcommand(
      "expected-dim", "closed-form dimension calculators"));
  expected->add_option("--d", cfg.d, "map degree")->required();
  expected->add_option("--e", cfg.e_list, "ramification orders");
  expected->add_option("--delta", cfg.delta_list, "delta indicators (0/1)");
  expected->add_option("--g", cfg.genus, "curve genus");
  expected->add_option("--gc", cfg.g_source, "source genus");
  expected->add_option("--gd", cfg.g_target, "target genus");
  expected->add_option("--m", cfg.wild_count, "number of wild indices");

  auto* count = add_common(app.add_subcommand(
      "count", "enumerate maps over the tower and estimate the dimension"));
  count->add_option("--d", cfg.d, "map degree")->required();
  count->add_option("--cond", cfg.conds, "condition point:e (repeatable)");
  count->add_option("--branch", cfg.branches,
                    "fixed branch condition point:e->value (repeatable)");
  count->add_option("--filter", cfg.filter,
                    "at-least | exact | nowhere-else");
  count->add_option("--m", cfg.wild_count, "wild count for the comparison");

  auto* reduce = add_common(app.add_subcommand(
      "reduce", "peel a wild map at infinity down to a tame one"));
  reduce->add_option("--map", cfg.maps, "map expression")->required();

  auto* lift = add_common(
      app.add_subcommand("lift", "add c x^p to a tame map fixing infinity"));
  lift->add_option("--map", cfg.maps, "map expression")->required();
  lift->add_option("--c", cfg.c_value, "multiplier (default 1)");

  auto* construct = add_common(app.add_subcommand(
      "construct", "degree-p polynomial with prescribed tame ramification"));
  construct->add_option("--cond", cfg.conds, "condition point:e (repeatable)");
  construct->add_option("--c", cfg.c_value, "derivative scale (default 1)");
  construct->add_option("--cp", cfg.cp_value, "x^p coefficient (default 1)");

  auto* verify = add_common(app.add_subcommand(
      "verify-paper", "golden example suite for the given characteristic"));
  (void)verify;

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) ? 2 : 2;
  }

  for (const auto& s : modulus_ints)
    cfg.modulus.push_back((uint32_t)std::stoul(s));
  cfg.command = app.get_subcommands().front()->get_name();

  ramp1::RunResult res = ramp1::run(cfg);
  if (cfg.format == "json")
    std::cout << res.doc.dump(2) << "\n";
  else
    std::cout << res.table;
  if (res.exit_code != 0 && cfg.format != "json")
    std::cerr << "exit code " << res.exit_code << "\n";
  return res.exit_code;
}
