#include "profitrec/report.hpp"

#include <cmath>

#include "profitrec/error.hpp"
#include "profitrec/solver_linear.hpp"
#include "profitrec/solver_multinomial.hpp"

namespace profitrec {
namespace {

nlohmann::ordered_json to_json(const RatingVector& r) {
  return nlohmann::ordered_json(std::vector<double>(r.values().begin(),
                                                    r.values().end()));
}

}  // namespace

void RunConfig::validate() const {
  validate_tau(tau);
  if (!(max_rating > 0.0) || !std::isfinite(max_rating)) {
    throw Error(ErrorCode::kInvalidConfig, "max rating must be positive");
  }
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw Error(ErrorCode::kInvalidConfig, "epsilon must be positive");
  }
  equivalent_dice_threshold(measure, tau);
}

std::string_view to_string(DecisionRule rule) {
  return rule == DecisionRule::kClosedForm ? "closed-form" : "nonnegative";
}

std::optional<DecisionRule> parse_decision_rule(std::string_view name) {
  if (name == "closed-form") return DecisionRule::kClosedForm;
  if (name == "nonnegative") return DecisionRule::kNonnegative;
  return std::nullopt;
}

nlohmann::ordered_json run(const std::vector<CatalogRecord>& records,
                           const RunConfig& config) {
  config.validate();
  if (records.empty()) {
    throw Error(ErrorCode::kEmptyInput, "no records to solve");
  }
  std::vector<double> ratings;
  std::vector<double> profits;
  std::vector<std::string> ids;
  for (const auto& r : records) {
    ids.push_back(r.item_id);
    ratings.push_back(r.rating);
    profits.push_back(r.profit);
  }
  const RatingVector c(ratings, config.max_rating);
  const ProfitVector p(profits);

  SolveReport solved = [&] {
    if (config.model == PurchaseModel::kLinear) {
      return solve_linear(c, p, config.tau,
                          {.measure = config.measure, .clamp = config.clamp});
    }
    return solve_multinomial(c, p, config.tau,
                             {.epsilon = config.epsilon,
                              .rule = config.decision_rule,
                              .measure = config.measure,
                              .clamp = config.clamp});
  }();
  const GainBound bound =
      gain_lower_bound(equivalent_dice_threshold(config.measure, config.tau));

  nlohmann::ordered_json cfg;
  cfg["tau"] = config.tau;
  cfg["measure"] = to_string(config.measure);
  cfg["model"] = to_string(config.model);
  cfg["max_rating"] = config.max_rating;
  if (config.model == PurchaseModel::kMultinomial) {
    cfg["epsilon"] = config.epsilon;
    cfg["decision_rule"] = to_string(config.decision_rule);
  }
  cfg["clamp"] = config.clamp;
  cfg["seed"] = config.seed;

  nlohmann::ordered_json doc;
  doc["schema_version"] = kReportSchemaVersion;
  doc["config"] = std::move(cfg);
  doc["item_ids"] = ids;
  doc["ratings"] = ratings;
  doc["profits"] = profits;
  doc["recommendation"] = to_json(solved.recommendation);
  doc["achieved_similarity"] = solved.achieved_similarity;
  doc["expected_profit"] = solved.expected_profit;
  doc["baseline_profit"] = solved.baseline_profit;
  doc["gain_ratio"] = solved.gain_ratio;
  doc["gain_lower_bound"] = {{"tight", bound.tight}, {"weak", bound.weak}};
  doc["lambda"] = solved.lambda ? nlohmann::ordered_json(*solved.lambda)
                                : nlohmann::ordered_json(nullptr);
  doc["cap_violations"] = solved.cap_violations;
  doc["clamped"] = solved.clamped;
  if (solved.clamped_result) {
    const auto& cl = *solved.clamped_result;
    doc["clamped_recommendation"] = to_json(cl.recommendation);
    doc["clamped_similarity"] = cl.achieved_similarity;
    doc["clamped_expected_profit"] = cl.expected_profit;
    doc["clamped_gain_ratio"] = cl.gain_ratio;
  }
  if (solved.search) {
    doc["search"] = {{"steps", solved.search->steps},
                     {"step_bound", solved.search->step_bound},
                     {"lower", solved.search->lower},
                     {"upper", solved.search->upper}};
  }
  return doc;
}

nlohmann::ordered_json batch_report(
    std::vector<nlohmann::ordered_json> reports) {
  nlohmann::ordered_json doc;
  doc["schema_version"] = kReportSchemaVersion;
  doc["reports"] = std::move(reports);
  return doc;
}

std::string render(const nlohmann::ordered_json& report) {
  return report.dump(2) + "\n";
}

}  // namespace profitrec
