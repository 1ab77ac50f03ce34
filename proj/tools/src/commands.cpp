#include "commands.hpp"

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <vector>

#include <json.hpp>

#include "minsum/dual.hpp"
#include "minsum/engine.hpp"
#include "minsum/generate.hpp"
#include "minsum/io.hpp"
#include "minsum/model.hpp"
#include "minsum/schedule.hpp"
#include "minsum/updates.hpp"

namespace minsum::cli {

namespace {

using json = nlohmann::ordered_json;

std::vector<std::string> split_list(const std::string& csv) {
  std::vector<std::string> out;
  std::string item;
  for (char c : csv) {
    if (c == ',') {
      out.push_back(item);
      item.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      item += c;
    }
  }
  out.push_back(item);
  return out;
}

// nullopt after printing a usage message
std::optional<std::vector<update_rule>> parse_rules(const std::string& csv) {
  std::vector<update_rule> rules;
  for (const std::string& tok : split_list(csv)) {
    if (tok.size() != 1) {
      std::cerr << "error: bad rule '" << tok << "' (expected u, m or h)\n";
      return std::nullopt;
    }
    update_rule r;
    try {
      r = rule_from_letter(tok[0]);
    } catch (const std::invalid_argument&) {
      std::cerr << "error: bad rule '" << tok << "' (expected u, m or h)\n";
      return std::nullopt;
    }
    if (std::find(rules.begin(), rules.end(), r) != rules.end()) {
      std::cerr << "error: duplicate rule '" << tok << "'\n";
      return std::nullopt;
    }
    rules.push_back(r);
  }
  if (rules.empty()) {
    std::cerr << "error: empty rule list\n";
    return std::nullopt;
  }
  return rules;
}

std::optional<std::vector<double>> parse_fractions(const std::string& csv) {
  std::vector<double> fractions;
  for (const std::string& tok : split_list(csv)) {
    double f = 0;
    const auto [ptr, ec] =
        std::from_chars(tok.data(), tok.data() + tok.size(), f);
    if (ec != std::errc() || ptr != tok.data() + tok.size() || !(f > 0.0) ||
        f > 1.0) {
      std::cerr << "error: bad keep fraction '" << tok
                << "' (expected a number in (0, 1])\n";
      return std::nullopt;
    }
    fractions.push_back(f);
  }
  if (fractions.empty()) {
    std::cerr << "error: empty fraction list\n";
    return std::nullopt;
  }
  return fractions;
}

std::optional<solve_mode> parse_mode(const std::string& name) {
  try {
    return mode_from_name(name);
  } catch (const std::invalid_argument&) {
    std::cerr << "error: bad mode '" << name << "' (expected seq or par)\n";
    return std::nullopt;
  }
}

std::optional<graphical_model> load_model(const std::string& path) {
  try {
    return read_model_file(path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << path << ": " << e.what() << "\n";
    return std::nullopt;
  }
}

json make_summary(update_rule rule, const solve_config& cfg,
                  const solve_trace& trace, const schedule_summary& stats) {
  json j;
  j["rule"] = std::string(1, rule_letter(rule));
  j["mode"] = mode_name(cfg.mode);
  j["workers"] = cfg.num_workers;
  j["seed"] = cfg.seed;
  j["final_dual"] = trace.final_dual;
  j["final_energy"] = trace.final_energy;
  j["gap"] = trace.final_energy - trace.final_dual;
  j["rounds_in_schedule"] = stats.rounds;
  j["max_matching_width"] = stats.max_width;
  return j;
}

bool write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (out)
    out << text;
  if (!out) {
    std::cerr << "error: cannot write " << path << "\n";
    return false;
  }
  return true;
}

struct common_solve_params {
  solve_mode mode;
  int workers;
  double max_iters;
  double tol;
  double checkpoint_every;
  std::uint64_t seed;
};

std::optional<common_solve_params> check_common(const std::string& mode,
                                                int workers, double max_iters,
                                                double tol,
                                                double checkpoint_every,
                                                std::uint64_t seed) {
  const auto m = parse_mode(mode);
  if (!m)
    return std::nullopt;
  if (workers < 1) {
    std::cerr << "error: --workers must be >= 1\n";
    return std::nullopt;
  }
  if (max_iters < 0 || tol < 0 || checkpoint_every <= 0) {
    std::cerr << "error: --max-iters and --tol must be >= 0, "
                 "--checkpoint-every > 0\n";
    return std::nullopt;
  }
  return common_solve_params{*m, workers, max_iters, tol, checkpoint_every,
                             seed};
}

solve_config make_config(update_rule rule, const common_solve_params& p) {
  solve_config cfg;
  cfg.rule = rule;
  cfg.mode = p.mode;
  cfg.num_workers = p.workers;
  cfg.max_normalized_iterations = p.max_iters;
  cfg.rel_improvement_threshold = p.tol;
  cfg.checkpoint_every = p.checkpoint_every;
  cfg.seed = p.seed;
  return cfg;
}

std::string format_fraction(double f) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", f);
  return buf;
}

// Step-interpolated merge of several traces: one row per distinct
// normalized-iteration value, each rule column holding the dual of its
// latest checkpoint at or before that point.
std::string merged_csv(const std::vector<update_rule>& rules,
                       const std::vector<solve_trace>& traces) {
  std::vector<double> keys;
  for (const auto& t : traces)
    for (const auto& c : t.checkpoints)
      keys.push_back(c.normalized_iterations);
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());

  std::string out = "normalized_iterations";
  for (update_rule r : rules)
    out += std::string(",dual_") + rule_letter(r);
  out += "\n";

  std::vector<std::size_t> cursor(traces.size(), 0);
  for (double key : keys) {
    out += format_double(key);
    for (std::size_t i = 0; i < traces.size(); ++i) {
      const auto& cps = traces[i].checkpoints;
      while (cursor[i] + 1 < cps.size() &&
             cps[cursor[i] + 1].normalized_iterations <= key)
        ++cursor[i];
      out += "," + format_double(cps[cursor[i]].dual);
    }
    out += "\n";
  }
  return out;
}

}  // namespace

int cmd_solve(const solve_options& opt) {
  update_rule rule;
  try {
    if (opt.rule.size() != 1)
      throw std::invalid_argument(opt.rule);
    rule = rule_from_letter(opt.rule[0]);
  } catch (const std::invalid_argument&) {
    std::cerr << "error: bad rule '" << opt.rule << "' (expected u, m or h)\n";
    return exit_usage;
  }
  const auto params = check_common(opt.mode, opt.workers, opt.max_iters,
                                   opt.tol, opt.checkpoint_every, opt.seed);
  if (!params)
    return exit_usage;

  const auto model = load_model(opt.model_path);
  if (!model)
    return exit_data;

  const solve_config cfg = make_config(rule, *params);
  const solve_result result = solve(*model, cfg);
  const schedule_summary stats =
      schedule_stats(compute_schedule(*model), model->num_nodes());
  const json summary = make_summary(rule, cfg, result.trace, stats);

  if (!opt.trace_path.empty()) {
    try {
      write_trace_csv_file(opt.trace_path, result.trace);
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return exit_data;
    }
  }
  if (!opt.summary_path.empty() &&
      !write_text_file(opt.summary_path, summary.dump(2) + "\n"))
    return exit_data;

  std::cout << summary.dump() << "\n";
  return exit_ok;
}

int cmd_compare(const compare_options& opt) {
  const auto rules = parse_rules(opt.rules);
  if (!rules)
    return exit_usage;
  const auto params = check_common(opt.mode, opt.workers, opt.max_iters,
                                   opt.tol, opt.checkpoint_every, opt.seed);
  if (!params)
    return exit_usage;

  const auto model = load_model(opt.model_path);
  if (!model)
    return exit_data;

  std::error_code ec;
  std::filesystem::create_directories(opt.out_dir, ec);
  if (ec) {
    std::cerr << "error: cannot create " << opt.out_dir << ": " << ec.message()
              << "\n";
    return exit_data;
  }

  const schedule_summary stats =
      schedule_stats(compute_schedule(*model), model->num_nodes());
  std::vector<solve_trace> traces;
  for (update_rule rule : *rules) {
    const solve_config cfg = make_config(rule, *params);
    solve_result result = solve(*model, cfg);
    try {
      write_trace_csv_file(opt.out_dir + "/trace_" +
                               std::string(1, rule_letter(rule)) + ".csv",
                           result.trace);
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return exit_data;
    }
    const json summary = make_summary(rule, cfg, result.trace, stats);
    if (!write_text_file(opt.out_dir + "/summary_" +
                             std::string(1, rule_letter(rule)) + ".json",
                         summary.dump(2) + "\n"))
      return exit_data;
    std::cout << summary.dump() << "\n";
    traces.push_back(std::move(result.trace));
  }

  if (!write_text_file(opt.out_dir + "/compare.csv",
                       merged_csv(*rules, traces)))
    return exit_data;
  return exit_ok;
}

int cmd_ablate(const ablate_options& opt) {
  const auto rules = parse_rules(opt.rules);
  if (!rules)
    return exit_usage;
  const auto fractions = parse_fractions(opt.fractions);
  if (!fractions)
    return exit_usage;
  const auto params = check_common(opt.mode, opt.workers, opt.max_iters,
                                   opt.tol, opt.checkpoint_every, opt.seed);
  if (!params)
    return exit_usage;

  const auto model = load_model(opt.model_path);
  if (!model)
    return exit_data;

  std::error_code ec;
  std::filesystem::create_directories(opt.out_dir, ec);
  if (ec) {
    std::cerr << "error: cannot create " << opt.out_dir << ": " << ec.message()
              << "\n";
    return exit_data;
  }

  std::string table =
      "fraction,rule,edges,final_dual,final_energy,normalized_iterations,"
      "oracle_calls\n";
  for (double fraction : *fractions) {
    const graphical_model sparse = sparsify(*model, fraction, opt.seed);
    for (update_rule rule : *rules) {
      const solve_config cfg = make_config(rule, *params);
      const solve_result result = solve(sparse, cfg);
      const std::string name = "trace_f" + format_fraction(fraction) + "_" +
                               std::string(1, rule_letter(rule)) + ".csv";
      try {
        write_trace_csv_file(opt.out_dir + "/" + name, result.trace);
      } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_data;
      }
      const checkpoint& last = result.trace.checkpoints.back();
      table += format_fraction(fraction);
      table += ",";
      table += rule_letter(rule);
      table += "," + std::to_string(sparse.num_edges());
      table += "," + format_double(result.trace.final_dual);
      table += "," + format_double(result.trace.final_energy);
      table += "," + format_double(last.normalized_iterations);
      table += "," + std::to_string(last.oracle_calls);
      table += "\n";
      std::cout << "fraction " << format_fraction(fraction) << " rule "
                << rule_letter(rule) << ": edges " << sparse.num_edges()
                << " dual " << format_double(result.trace.final_dual) << "\n";
    }
  }
  if (!write_text_file(opt.out_dir + "/ablation.csv", table))
    return exit_data;
  return exit_ok;
}

int cmd_generate(const generate_options& opt) {
  if (opt.type != "complete" && opt.type != "grid") {
    std::cerr << "error: bad --type '" << opt.type
              << "' (expected complete or grid)\n";
    return exit_usage;
  }
  if (opt.labels < 1) {
    std::cerr << "error: --labels must be >= 1\n";
    return exit_usage;
  }
  if (opt.type == "complete" && opt.nodes < 1) {
    std::cerr << "error: --nodes must be >= 1\n";
    return exit_usage;
  }
  if (opt.type == "grid" && (opt.rows < 1 || opt.cols < 1 || opt.lambda < 0)) {
    std::cerr << "error: --rows and --cols must be >= 1, --lambda >= 0\n";
    return exit_usage;
  }

  const graphical_model model =
      opt.type == "complete"
          ? gen_complete(opt.nodes, opt.labels, opt.seed)
          : gen_potts_grid(opt.rows, opt.cols, opt.labels, opt.lambda,
                           opt.seed);

  try {
    write_model_file(opt.out_path, model);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_data;
  }
  std::cout << "wrote " << model.num_nodes() << " nodes, " << model.num_edges()
            << " edges to " << opt.out_path << "\n";
  return exit_ok;
}

int cmd_check(const std::string& model_path) {
  const auto model = load_model(model_path);
  if (!model)
    return exit_data;
  int max_labels = 0;
  for (int u = 0; u < model->num_nodes(); ++u)
    max_labels = std::max(max_labels, model->labels(u));
  std::cout << "ok: " << model->num_nodes() << " nodes, " << model->num_edges()
            << " edges, max " << max_labels << " labels\n";
  return exit_ok;
}

int cmd_schedule(const std::string& model_path) {
  const auto model = load_model(model_path);
  if (!model)
    return exit_data;
  const schedule_summary stats =
      schedule_stats(compute_schedule(*model), model->num_nodes());
  json j;
  j["rounds"] = stats.rounds;
  j["max_width"] = stats.max_width;
  j["mean_width"] = stats.mean_width;
  std::cout << j.dump() << "\n";
  return exit_ok;
}

}  // namespace minsum::cli
