// profitrec: profit-aware recommendation adjustment under a trust constraint.
//
//   profitrec solve --input cust.csv --format csv --tau 0.9 --model linear
//   profitrec verify --seed 7

#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "profitrec/catalog.hpp"
#include "profitrec/error.hpp"
#include "profitrec/report.hpp"
#include "profitrec/verify.hpp"


int main(int argc, char** argv) {
  using namespace profitrec;

  CLI::App app{"Profit-maximizing recommendations under a similarity constraint"};
  app.require_subcommand(1);

  RunConfig config;
  std::vector<std::string> inputs;
  std::string format_name = "csv";
  std::string output;
  auto* solve = app.add_subcommand("solve", "Solve one or more customer catalogs");
  solve->add_option("--input", inputs, "Catalog file (repeat for a batch)")
      ->required();
  solve->add_option("--format", format_name, "Catalog format")
      ->check(CLI::IsMember({"csv", "json"}));
  solve->add_option("--tau", config.tau, "Similarity threshold in (0, 1]")
      ->required();
  std::string model_name = "linear";
  std::string measure_name = "dice";
  std::string rule_name = "nonnegative";
  solve->add_option("--model", model_name, "Purchase model")
      ->check(CLI::IsMember({"linear", "multinomial"}));
  solve->add_option("--measure", measure_name, "Trust measure")
      ->check(CLI::IsMember({"dice", "jaccard"}));
  solve->add_option("--max-rating", config.max_rating, "Top of the rating scale");
  solve->add_option("--epsilon", config.epsilon,
                    "Absolute profit tolerance for the multinomial search");
  solve->add_option("--decision-rule", rule_name, "Multinomial decision rule")
      ->check(CLI::IsMember({"nonnegative", "closed-form"}));
  solve->add_flag("--clamp", config.clamp,
                  "Also report the recommendation projected onto [0, m]");
  solve->add_option("--seed", config.seed, "Recorded in the report");
  solve->add_option("--output", output, "Report path (default: stdout)");

  VerifyConfig verify_config;
  auto* verify = app.add_subcommand("verify", "Run the oracle and property checks");
  verify->add_option("--resolution", verify_config.resolution,
                     "Grid oracle surface points")
      ->check(CLI::Range(std::size_t{1000}, std::size_t{100'000'000}));
  verify->add_option("--trials", verify_config.trials, "Monte Carlo trials")
      ->check(CLI::PositiveNumber);
  verify->add_option("--seed", verify_config.seed, "Random seed");
  verify->add_flag("--inject-fault", verify_config.inject_linear_fault)
      ->group("");  // test hook

  CLI11_PARSE(app, argc, argv);

  try {
    if (*solve) {
      const CatalogFormat format = *parse_format(format_name);
      config.model = *parse_model(model_name);
      config.measure = *parse_measure(measure_name);
      config.decision_rule = *parse_decision_rule(rule_name);
      std::vector<nlohmann::ordered_json> reports;
      for (const auto& path : inputs) {
        reports.push_back(run(ingest(path, format, config.max_rating), config));
      }
      const std::string text = render(
          reports.size() == 1 ? reports.front() : batch_report(std::move(reports)));
      if (output.empty()) {
        std::cout << text;
      } else {
        std::ofstream out(output, std::ios::binary);
        out << text;
        if (!out) {
          std::cerr << "error: cannot write " << output << '\n';
          return 1;
        }
      }
      return 0;
    }
    const auto results = run_verification(verify_config);
    print_table(results, std::cout);
    return all_passed(results) ? 0 : 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
