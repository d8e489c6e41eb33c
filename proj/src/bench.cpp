#include "coverpack/bench.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace coverpack {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

long long parse_int(const std::string& tok, int line, const std::string& what) {
  long long value = 0;
  auto [end, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || end != tok.data() + tok.size())
    throw ParseError(line, what + " expects an integer, got '" + tok + "'");
  return value;
}

double parse_real(const std::string& tok, int line, const std::string& what) {
  double value = 0.0;
  auto [end, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || end != tok.data() + tok.size())
    throw ParseError(line, what + " expects a number, got '" + tok + "'");
  return value;
}

ProblemKind parse_kind(const std::string& value, int line) {
  if (value == "cover") return ProblemKind::cover;
  if (value == "pack" || value == "packing") return ProblemKind::packing;
  throw ParseError(line, "kind must be cover or pack, got '" + value + "'");
}

AlgorithmSpec parse_algorithm(const std::string& value, int line) {
  std::istringstream words(value);
  AlgorithmSpec alg;
  if (!(words >> alg.name)) throw ParseError(line, "algorithm line needs a name");
  bool have_family = false;
  std::string word;
  while (words >> word) {
    const auto eq = word.find('=');
    if (eq == std::string::npos)
      throw ParseError(line, "algorithm option '" + word + "' must be key=value");
    const std::string key = word.substr(0, eq);
    const std::string val = word.substr(eq + 1);
    if (key == "alg") {
      try {
        alg.config = default_engine_config(family_from_name(val));
      } catch (const ParseError&) {
        throw ParseError(line, "unknown algorithm '" + val + "'");
      }
      have_family = true;
    } else if (key == "runs") {
      alg.runs = static_cast<int>(parse_int(val, line, "runs"));
      if (alg.runs < 1) throw ParseError(line, "runs must be at least 1");
    } else if (key == "gamma") {
      alg.config.valuation.gamma = parse_real(val, line, "gamma");
    } else if (key == "epsilon") {
      alg.config.valuation.epsilon = parse_real(val, line, "epsilon");
    } else if (key == "seed") {
      alg.config.rng_seed = static_cast<std::uint64_t>(parse_int(val, line, "seed"));
    } else if (key == "tie") {
      alg.config.tie_threshold = parse_real(val, line, "tie");
    } else if (key == "preprocess") {
      if (val == "basic")
        alg.config.preprocessing = PreprocessLevel::basic;
      else if (val == "subsume")
        alg.config.preprocessing = PreprocessLevel::subsume;
      else if (val == "none")
        alg.config.preprocessing = PreprocessLevel::none;
      else
        throw ParseError(line, "preprocess must be basic, subsume, or none");
    } else if (key == "minimize") {
      if (val == "none")
        alg.config.minimize_result = MinimizeMode::none;
      else if (val == "wg")
        alg.config.minimize_result = MinimizeMode::wool_grossman;
      else if (val == "recursive")
        alg.config.minimize_result = MinimizeMode::recursive;
      else
        throw ParseError(line, "minimize must be none, wg, or recursive");
    } else {
      throw ParseError(line, "unknown algorithm option '" + key + "'");
    }
  }
  if (!have_family) throw ParseError(line, "algorithm line needs alg=...");
  return alg;
}

}  // namespace

ValuationFamily family_from_name(const std::string& name) {
  if (name == "std") return ValuationFamily::std_cover;
  if (name == "newc") return ValuationFamily::new_cover;
  if (name == "stdp") return ValuationFamily::std_pack;
  if (name == "root") return ValuationFamily::root_pack;
  if (name == "mis") return ValuationFamily::mis_pack;
  if (name == "newp") return ValuationFamily::new_pack;
  throw ParseError(0, "unknown algorithm name '" + name + "'");
}

ExperimentSpec parse_experiment_spec(std::istream& in) {
  ExperimentSpec spec;
  bool have_kind = false, have_m = false, have_n = false, have_rho = false;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    const std::string text = trim(raw);
    if (text.empty()) continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos)
      throw ParseError(line, "expected key = value, got '" + text + "'");
    const std::string key = trim(text.substr(0, eq));
    const std::string value = trim(text.substr(eq + 1));
    if (key == "kind") {
      spec.kind = parse_kind(value, line);
      have_kind = true;
    } else if (key == "m") {
      spec.distribution.m = static_cast<int>(parse_int(value, line, "m"));
      have_m = true;
    } else if (key == "n") {
      spec.distribution.n = static_cast<int>(parse_int(value, line, "n"));
      have_n = true;
    } else if (key == "rho") {
      spec.distribution.rho = parse_real(value, line, "rho");
      have_rho = true;
    } else if (key == "costs") {
      try {
        spec.distribution.cost_model = parse_cost_model(value);
      } catch (const ParseError& ex) {
        throw ParseError(line, ex.what());
      }
    } else if (key == "seed") {
      spec.distribution.seed = static_cast<std::uint64_t>(parse_int(value, line, "seed"));
    } else if (key == "instances") {
      spec.instances = static_cast<int>(parse_int(value, line, "instances"));
    } else if (key == "algorithm") {
      spec.algorithms.push_back(parse_algorithm(value, line));
    } else {
      throw ParseError(line, "unknown key '" + key + "'");
    }
  }
  if (!have_kind || !have_m || !have_n || !have_rho)
    throw ParseError(line, "spec needs kind, m, n, and rho");
  if (spec.instances < 1) throw ParseError(line, "instances must be at least 1");
  if (spec.algorithms.empty()) throw ParseError(line, "spec needs at least one algorithm");
  for (std::size_t a = 0; a < spec.algorithms.size(); ++a) {
    if (is_cover_family(spec.algorithms[a].config.valuation.family) !=
        (spec.kind == ProblemKind::cover))
      throw ParseError(line, "algorithm '" + spec.algorithms[a].name +
                                 "' does not match the experiment kind");
    for (std::size_t b = a + 1; b < spec.algorithms.size(); ++b)
      if (spec.algorithms[a].name == spec.algorithms[b].name)
        throw ParseError(line, "duplicate algorithm name '" + spec.algorithms[a].name + "'");
  }
  return spec;
}

ExperimentResult run_experiment(const ExperimentSpec& spec) {
  ExperimentResult res;
  res.kind = spec.kind;
  const bool cover = spec.kind == ProblemKind::cover;
  const int algs = static_cast<int>(spec.algorithms.size());
  for (const auto& alg : spec.algorithms) res.algorithm_names.push_back(alg.name);
  res.summary.resize(algs);
  for (int a = 0; a < algs; ++a) {
    res.summary[a].name = spec.algorithms[a].name;
    res.summary[a].runs = spec.algorithms[a].runs;
  }
  long long total_steps_denom = 0;
  std::vector<long long> total_steps(algs, 0);

  for (int i = 0; i < spec.instances; ++i) {
    DistributionSpec draw = spec.distribution;
    draw.seed += static_cast<std::uint64_t>(i);
    const Instance inst = generate(draw);
    std::vector<double> row_pre(algs), row_post(algs);
    for (int a = 0; a < algs; ++a) {
      const AlgorithmSpec& alg = spec.algorithms[a];
      double best_pre = cover ? std::numeric_limits<double>::infinity()
                              : -std::numeric_limits<double>::infinity();
      double best_post = best_pre;
      for (int r = 0; r < alg.runs; ++r) {
        EngineConfig cfg = alg.config;
        cfg.rng_seed = alg.config.rng_seed + static_cast<std::uint64_t>(r);
        const RunReport run = run_greedy(inst, cfg);
        if (cover) {
          best_pre = std::min(best_pre, run.objective_before_minimize);
          best_post = std::min(best_post, run.solution.objective);
        } else {
          best_pre = std::max(best_pre, run.objective_before_minimize);
          best_post = std::max(best_post, run.solution.objective);
        }
        total_steps[a] += run.steps;
        res.summary[a].total_seconds += run.wall_seconds;
      }
      row_pre[a] = best_pre;
      row_post[a] = best_post;
    }
    res.pre.push_back(std::move(row_pre));
    res.post.push_back(std::move(row_post));
    ++total_steps_denom;
  }

  auto score = [&](const std::vector<std::vector<double>>& table, bool pre) {
    for (int a = 0; a < algs; ++a) {
      double wins = 0.0;
      double ratio_sum = 0.0;
      for (int i = 0; i < spec.instances; ++i) {
        const auto& row = table[i];
        const double best = cover ? *std::min_element(row.begin(), row.end())
                                  : *std::max_element(row.begin(), row.end());
        if (row[a] == best) wins += 1.0;
        double ratio = 1.0;
        if (row[a] != best) ratio = cover ? row[a] / best : best / row[a];
        ratio_sum += ratio;
      }
      const double share = wins / spec.instances;
      const double quality = ratio_sum / spec.instances;
      if (pre) {
        res.summary[a].best_share_pre = share;
        res.summary[a].quality_pre = quality;
      } else {
        res.summary[a].best_share_post = share;
        res.summary[a].quality_post = quality;
      }
    }
  };
  score(res.pre, true);
  score(res.post, false);
  for (int a = 0; a < algs; ++a)
    res.summary[a].mean_steps =
        static_cast<double>(total_steps[a]) /
        (static_cast<double>(total_steps_denom) * spec.algorithms[a].runs);
  return res;
}

void write_summary_csv(const ExperimentResult& res, std::ostream& out) {
  out << "algorithm,runs,best_share_pre,quality_pre,best_share_post,quality_post,mean_steps\n";
  for (const auto& s : res.summary) {
    out << s.name << ',' << s.runs << ',' << format_exact(s.best_share_pre) << ','
        << format_exact(s.quality_pre) << ',' << format_exact(s.best_share_post) << ','
        << format_exact(s.quality_post) << ',' << format_exact(s.mean_steps) << '\n';
  }
}

void write_per_instance_csv(const ExperimentResult& res, std::ostream& out) {
  out << "instance";
  for (const auto& name : res.algorithm_names) out << ',' << name << "_pre," << name << "_post";
  out << '\n';
  for (std::size_t i = 0; i < res.pre.size(); ++i) {
    out << i;
    for (std::size_t a = 0; a < res.algorithm_names.size(); ++a)
      out << ',' << format_exact(res.pre[i][a]) << ',' << format_exact(res.post[i][a]);
    out << '\n';
  }
}

}  // namespace coverpack
