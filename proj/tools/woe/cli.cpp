#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <thread>

#include "woe/baseline.hpp"
#include "woe/dataset.hpp"
#include "woe/error.hpp"
#include "woe/fuzzy_event.hpp"
#include "woe/inference.hpp"
#include "woe/miner.hpp"

namespace woe::cli {
namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write '" + path + "'");
  out << content;
  if (!out.flush()) throw Error("failed writing '" + path + "'");
}

std::string num(double x, int decimals = 3) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, x);
  return buf;
}

std::string percent(const std::optional<double>& rate) { return rate ? num(100.0 * *rate, 1) + "%" : "n/a"; }

std::string_view name_of(Subcommand s) {
  switch (s) {
    case Subcommand::mine: return "mine";
    case Subcommand::predict: return "predict";
    case Subcommand::evaluate: return "evaluate";
    case Subcommand::inspect: return "inspect";
  }
  return "?";
}

std::string weights_text(const ScoreWeights& w) {
  std::ostringstream s;
  s << w.size << "," << w.weight << "," << w.error;
  return s.str();
}

// Reproducibility header: every run states its effective configuration.
void print_header(const RunConfig& c, std::ostream& out, const KnowledgeBase* kb = nullptr) {
  out << "# woe " << name_of(c.subcommand) << "\n";
  auto kv = [&](const char* key, const std::string& value) {
    if (!value.empty()) out << "# " << key << " = " << value << "\n";
  };
  kv("schema", c.schema_path);
  kv("data", c.data_path);
  kv("kb", c.kb_path);
  kv("case", c.case_path);
  kv("out", c.out_path);
  if (c.subcommand == Subcommand::mine) {
    auto real = [](double x) {
      std::ostringstream s;
      s << x;
      return s.str();
    };
    kv("hypothesis", c.hypothesis);
    kv("max_size", std::to_string(c.mining.max_size));
    kv("min_support", std::to_string(c.mining.min_support));
    kv("z_crit", real(c.mining.z_crit));
    kv("smoothing", real(c.mining.smoothing));
    kv("alpha_step", real(c.mining.alpha_step));
    kv("score_weights", weights_text(c.mining.score_weights));
    kv("prior", c.mining.prior_prevalence ? real(*c.mining.prior_prevalence) : "training prevalence");
    kv("shards", std::to_string(c.shards));
  }
  if (kb != nullptr) {
    kv("hypothesis", std::string(to_string(kb->hypothesis)));
    kv("schema_digest", kb->schema_digest);
    kv("rules", std::to_string(kb->rules.size()));
    kv("score_weights", weights_text(c.score_weights.value_or(kb->config.score_weights)));
  }
  if (c.subcommand == Subcommand::predict) {
    kv("probability_mode", c.compat_odds ? "compat-odds" : "canonical");
    kv("format", c.json ? "json" : "text");
  }
  if (c.subcommand == Subcommand::evaluate) {
    kv("threshold", num(c.threshold, 3));
    kv("predictions", c.predictions_path);
  }
  if (c.subcommand == Subcommand::inspect) {
    kv("top", c.top ? std::to_string(*c.top) : "");
    kv("fuzzy", c.fuzzy.value_or(""));
  }
}

// Schema for case files: the knowledge base's own, or an explicit one that
// must carry the same digest.
Schema case_schema(const RunConfig& c, const KnowledgeBase& kb) {
  if (c.schema_path.empty()) return kb.schema;
  Schema schema = parse_schema(read_file(c.schema_path));
  kb.require_schema(schema);
  return schema;
}

std::vector<const MinedRule*> by_abs_weight(const KnowledgeBase& kb) {
  std::vector<const MinedRule*> rules;
  for (const auto& r : kb.rules) rules.push_back(&r);
  std::stable_sort(rules.begin(), rules.end(), [](const MinedRule* x, const MinedRule* y) {
    return std::abs(x->estimate.w) > std::abs(y->estimate.w);
  });
  return rules;
}

void print_rules(std::ostream& out, const std::vector<const MinedRule*>& rules, std::size_t limit) {
  out << std::left << std::setw(8) << "w" << std::setw(8) << "se" << std::setw(9) << "z" << std::setw(7) << "a"
      << std::setw(7) << "b" << std::setw(7) << "c" << std::setw(7) << "d"
      << "group\n";
  for (std::size_t i = 0; i < rules.size() && i < limit; ++i) {
    const MinedRule& r = *rules[i];
    out << std::left << std::setw(8) << num(r.estimate.w) << std::setw(8) << num(r.estimate.se) << std::setw(9)
        << num(r.estimate.z) << std::setw(7) << r.table.a << std::setw(7) << r.table.b << std::setw(7) << r.table.c
        << std::setw(7) << r.table.d << r.group.describe() << "\n";
  }
}

template <typename Fn>
int guarded(std::ostream& err, Fn&& fn) {
  try {
    return fn();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace

int run_mine(const RunConfig& c, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (c.out_path.empty()) throw Error("mine needs --out");
    print_header(c, out);
    Schema schema = parse_schema(read_file(c.schema_path));
    Dataset data = parse_cases(read_file(c.data_path), schema);
    MiningRun run = mine(data, parse_hypothesis(c.hypothesis), c.mining, c.shards);
    for (const auto& w : run.warnings) err << "warning: " << w << "\n";
    write_file(c.out_path, save_kb(run.kb));

    out << "cases: " << data.size() << "\n";
    out << "descriptors: " << run.descriptor_count << "\n";
    out << "candidate groups: " << run.candidate_count << "\n";
    out << "significant rules: " << run.kb.rules.size() << "\n";
    out << "prior: prevalence " << num(run.kb.prior.prevalence, 4) << ", log odds " << num(run.kb.prior.log_odds)
        << "\n";
    if (!run.kb.rules.empty()) {
      out << "top rules by |w|:\n";
      print_rules(out, by_abs_weight(run.kb), 10);
    }
    out << "wrote " << c.out_path << "\n";
    return 0;
  });
}

int run_predict(const RunConfig& c, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    KnowledgeBase kb = load_kb(read_file(c.kb_path));
    Schema schema = case_schema(c, kb);
    Dataset cases = parse_cases(read_file(c.case_path), schema);
    InferenceOptions options;
    options.score_weights = c.score_weights.value_or(kb.config.score_weights);
    options.mode = c.compat_odds ? ProbabilityMode::compat_odds : ProbabilityMode::canonical;

    std::vector<EvidenceReport> reports;
    for (const Case& cs : cases.cases()) reports.push_back(infer(schema, cs, kb, options));

    if (c.json) {
      out << "[";
      for (std::size_t i = 0; i < reports.size(); ++i) {
        std::string doc = report_to_json(reports[i]);
        doc.pop_back();
        out << (i ? ",\n" : "\n") << doc;
      }
      out << "\n]\n";
      return 0;
    }
    print_header(c, out, &kb);
    for (const auto& r : reports) out << "\n" << render_report(r);
    return 0;
  });
}

int run_evaluate(const RunConfig& c, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    KnowledgeBase kb = load_kb(read_file(c.kb_path));
    Schema schema = case_schema(c, kb);
    Dataset data = parse_cases(read_file(c.data_path), schema);
    print_header(c, out, &kb);

    InferenceOptions options;
    options.score_weights = c.score_weights.value_or(kb.config.score_weights);
    Predictor woe_predictor = [&](const Case& cs) -> std::optional<double> {
      return infer(schema, cs, kb, options).probability;
    };
    std::optional<Predictor> logistic;
    try {
      logistic = logistic_predictor(schema);
    } catch (const ValidationError& e) {
      err << "note: logistic baseline unavailable: " << e.what() << "\n";
    }

    struct Row {
      std::string method;
      Metrics metrics;
    };
    std::vector<Row> rows;
    rows.push_back({"Weight of Evidence", evaluate(woe_predictor, data, c.threshold, kb.hypothesis)});
    if (logistic) rows.push_back({"Logistic Regression", evaluate(*logistic, data, c.threshold, kb.hypothesis)});

    out << "\nComparison of Predictive Power (" << data.size() << " Cases)\n";
    out << std::left << std::setw(22) << "Method" << std::setw(28) << "Negative Predictive Value" << std::setw(28)
        << "Positive Predictive Value" << std::setw(13) << "Sensitivity" << std::setw(13) << "Specificity"
        << std::setw(6) << "TP" << std::setw(6) << "FP" << std::setw(6) << "TN" << std::setw(6) << "FN"
        << "Unscored\n";
    for (const auto& row : rows) {
      const Metrics& m = row.metrics;
      out << std::left << std::setw(22) << row.method << std::setw(28) << percent(m.npv) << std::setw(28)
          << percent(m.ppv) << std::setw(13) << percent(m.sensitivity) << std::setw(13) << percent(m.specificity)
          << std::setw(6) << m.tp << std::setw(6) << m.fp << std::setw(6) << m.tn << std::setw(6) << m.fn
          << m.n_unscored << "\n";
    }

    if (!c.predictions_path.empty()) {
      std::ostringstream csv;
      csv << "id,label,woe_p,woe_positive,logistic_p,logistic_positive\n";
      for (const Case& cs : data.cases()) {
        auto label = cs.label(kb.hypothesis);
        double p = *woe_predictor(cs);
        csv << cs.id << "," << (label ? (*label ? "yes" : "no") : "?") << "," << num(p, 6) << ","
            << (p >= c.threshold ? "yes" : "no") << ",";
        std::optional<double> lp = logistic ? (*logistic)(cs) : std::nullopt;
        if (lp) csv << num(*lp, 6) << "," << (*lp >= c.threshold ? "yes" : "no") << "\n";
        else csv << "?,?\n";
      }
      write_file(c.predictions_path, csv.str());
      out << "wrote " << c.predictions_path << "\n";
    }
    return 0;
  });
}

int run_inspect(const RunConfig& c, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    KnowledgeBase kb = load_kb(read_file(c.kb_path));
    if (c.top && c.fuzzy) throw Error("--top and --fuzzy are exclusive");
    print_header(c, out, &kb);

    if (!c.fuzzy) {
      if (c.top && *c.top < 0) throw Error("--top must be >= 0");
      auto rules = by_abs_weight(kb);
      print_rules(out, rules, c.top ? static_cast<std::size_t>(*c.top) : rules.size());
      return 0;
    }

    auto colon = c.fuzzy->find(':');
    if (colon == std::string::npos) throw Error("--fuzzy expects ATTR:LABEL");
    if (c.data_path.empty()) throw Error("--fuzzy needs --data to grade cases");
    Schema schema = case_schema(c, kb);
    Dataset data = parse_cases(read_file(c.data_path), schema);
    FuzzyEvent event = FuzzyEvent::from_dataset(data, c.fuzzy->substr(0, colon), c.fuzzy->substr(colon + 1));
    LabelMap labels = labels_of(data, kb.hypothesis);
    auto grid = alpha_grid(kb.config.alpha_step);
    if (event.size() > 0) {
      out << "# zadeh_probability = " << num(zadeh_probability(event, uniform_probabilities(event)), 6) << "\n";
    }
    try {
      AlphaChoice best = optimal_alpha(event, labels, grid, kb.config.smoothing);
      out << "# optimal_alpha = " << best.alpha << " (W = " << num(best.weight_at_alpha, 6) << ")\n";
    } catch (const EstimationError& e) {
      out << "# optimal_alpha = none (" << e.what() << ")\n";
    }
    out << "alpha,p_alpha,w,subset_size\n";
    for (const auto& row : alpha_profile(event, labels, grid, kb.config.smoothing)) {
      out << row.alpha << "," << num(row.probability, 6) << "," << (row.weight ? num(*row.weight, 6) : "") << ","
          << row.subset_size << "\n";
    }
    return 0;
  });
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Weight-of-evidence diagnosis: mine symptom groups, predict, evaluate, inspect"};
  app.require_subcommand(1);
  RunConfig c;
  std::string score_weights;

  auto* mine_cmd = app.add_subcommand("mine", "Mine significant symptom groups into a knowledge base");
  mine_cmd->add_option("--schema", c.schema_path, "Schema file (JSON)")->required();
  mine_cmd->add_option("--data", c.data_path, "Training cases (CSV)")->required();
  mine_cmd->add_option("--hypothesis", c.hypothesis, "Boolean outcome to predict")->capture_default_str();
  mine_cmd->add_option("--max-size", c.mining.max_size, "Largest symptom group")->capture_default_str();
  mine_cmd->add_option("--min-support", c.mining.min_support, "Minimum supporting cases")->capture_default_str();
  mine_cmd->add_option("--z-crit", c.mining.z_crit, "Significance threshold on |z|")->capture_default_str();
  mine_cmd->add_option("--smoothing", c.mining.smoothing, "Additive smoothing per cell")->capture_default_str();
  mine_cmd->add_option("--alpha-step", c.mining.alpha_step, "Alpha grid step")->capture_default_str();
  mine_cmd->add_option("--score-weights", score_weights, "Selection score weights ws,ww,we");
  mine_cmd->add_option("--prior", c.mining.prior_prevalence, "Prior prevalence override");
  mine_cmd->add_option("--shards", c.shards, "Parallel candidate shards")->capture_default_str();
  mine_cmd->add_option("--out", c.out_path, "Knowledge base output file")->required();

  auto* predict_cmd = app.add_subcommand("predict", "Print the evidence ledger for each case");
  predict_cmd->add_option("--kb", c.kb_path, "Knowledge base")->required();
  predict_cmd->add_option("--case", c.case_path, "Case file (CSV)")->required();
  predict_cmd->add_option("--schema", c.schema_path, "Schema to check against the knowledge base");
  predict_cmd->add_flag("--compat-odds", c.compat_odds, "Probability as L/(1+L) instead of logistic");
  predict_cmd->add_option("--score-weights", score_weights, "Selection score weights ws,ww,we");
  predict_cmd->add_flag("--json", c.json, "Machine-readable reports");

  auto* evaluate_cmd = app.add_subcommand("evaluate", "Predictive values of the knowledge base and logistic baseline");
  evaluate_cmd->add_option("--kb", c.kb_path, "Knowledge base")->required();
  evaluate_cmd->add_option("--data", c.data_path, "Labelled cases (CSV)")->required();
  evaluate_cmd->add_option("--schema", c.schema_path, "Schema to check against the knowledge base");
  evaluate_cmd->add_option("--threshold", c.threshold, "Positive iff p >= threshold")->capture_default_str();
  evaluate_cmd->add_option("--score-weights", score_weights, "Selection score weights ws,ww,we");
  evaluate_cmd->add_option("--predictions", c.predictions_path, "Per-case predictions CSV output");

  auto* inspect_cmd = app.add_subcommand("inspect", "Dump rules or a fuzzy label's alpha profile");
  inspect_cmd->add_option("--kb", c.kb_path, "Knowledge base")->required();
  inspect_cmd->add_option("--top", c.top, "Rules with the largest |w|");
  inspect_cmd->add_option("--fuzzy", c.fuzzy, "ATTR:LABEL alpha profile (needs --data)");
  inspect_cmd->add_option("--data", c.data_path, "Cases to grade for --fuzzy");
  inspect_cmd->add_option("--schema", c.schema_path, "Schema to check against the knowledge base");

  std::vector<std::string> argv_store{"woe"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  if (!score_weights.empty()) {
    ScoreWeights w;
    char extra = 0;
    if (std::sscanf(score_weights.c_str(), "%lf,%lf,%lf%c", &w.size, &w.weight, &w.error, &extra) != 3) {
      err << "error: --score-weights expects three comma-separated numbers\n";
      return 2;
    }
    c.score_weights = w;
    c.mining.score_weights = w;
  }

  if (mine_cmd->parsed()) {
    c.subcommand = Subcommand::mine;
    if (c.shards == 0) c.shards = std::max(1u, std::thread::hardware_concurrency());
    return run_mine(c, out, err);
  }
  if (predict_cmd->parsed()) {
    c.subcommand = Subcommand::predict;
    return run_predict(c, out, err);
  }
  if (evaluate_cmd->parsed()) {
    c.subcommand = Subcommand::evaluate;
    return run_evaluate(c, out, err);
  }
  c.subcommand = Subcommand::inspect;
  return run_inspect(c, out, err);
}

}  // namespace woe::cli
