// Copyright 2026 The sage-forge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "sageforge/rl/rl.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>

#include <json.hpp>

namespace sageforge::rl {

LossGrad sft_loss(const Policy& policy,
                  const std::vector<synth::TrainingSample>& corpus) {
  LossGrad out;
  out.grad.assign(policy.parameters().size(), 0.0);
  for (const auto& sample : corpus) {
    Trajectory traj = policy.render_sample(sample);
    std::vector<double> lps = policy.logprob(sample.problem_id, traj);
    for (double lp : lps) out.loss -= lp;
    std::vector<double> weights(lps.size(), -1.0);
    policy.accumulate(sample.problem_id, traj, weights, out.grad);
  }
  return out;
}

Group sample_group(const Policy& policy_old, const std::string& prompt,
                   int g, Rng& rng) {
  if (g < 2)
    throw std::invalid_argument("group size must be at least 2");
  Group out;
  out.prompt = prompt;
  for (int i = 0; i < g; ++i) {
    Rollout r;
    r.traj = policy_old.sample(prompt, rng);
    r.logp_old = policy_old.logprob(prompt, r.traj);
    r.logp_new = r.logp_old;
    r.logp_ref = r.logp_old;
    out.rollouts.push_back(std::move(r));
  }
  return out;
}

std::vector<double> advantages(const std::vector<double>& rewards,
                               double eps) {
  if (rewards.size() < 2)
    throw std::invalid_argument("advantages need at least two rewards");
  bool all_equal = std::all_of(rewards.begin(), rewards.end(),
                               [&](double r) { return r == rewards[0]; });
  if (all_equal) return std::vector<double>(rewards.size(), 0.0);
  double mean = std::accumulate(rewards.begin(), rewards.end(), 0.0) /
                (double)rewards.size();
  double var = 0.0;
  for (double r : rewards) var += (r - mean) * (r - mean);
  double std_dev = std::sqrt(var / (double)rewards.size());
  std::vector<double> out(rewards.size());
  for (size_t i = 0; i < rewards.size(); ++i)
    out[i] = (rewards[i] - mean) / (std_dev + eps);
  return out;
}

std::vector<double> mean_only_advantages(
    const std::vector<double>& rewards) {
  if (rewards.size() < 2)
    throw std::invalid_argument("advantages need at least two rewards");
  double mean = std::accumulate(rewards.begin(), rewards.end(), 0.0) /
                (double)rewards.size();
  std::vector<double> out(rewards.size());
  for (size_t i = 0; i < rewards.size(); ++i) out[i] = rewards[i] - mean;
  return out;
}

GrpoValue sw_grpo_loss(const Group& group, const GrpoConfig& cfg) {
  GrpoValue out;
  for (size_t i = 0; i < group.rollouts.size(); ++i) {
    const Rollout& r = group.rollouts[i];
    size_t n = r.traj.tokens.size();
    if (r.logp_new.size() != n || r.logp_old.size() != n ||
        r.logp_ref.size() != n)
      throw std::invalid_argument(
          "rollout log-probability arrays must match the token count");
    double a = i < group.advantages.size() ? group.advantages[i] : 0.0;
    std::vector<double> weights(n, 0.0);
    for (size_t t = 0; t < n; ++t) {
      double alpha = cfg.segment_weight(r.traj.tokens[t].segment);
      double rho = std::exp(r.logp_new[t] - r.logp_old[t]);
      double clipped =
          std::clamp(rho, 1.0 - cfg.clip, 1.0 + cfg.clip);
      double unclipped_term = rho * a;
      double clipped_term = clipped * a;
      if (unclipped_term <= clipped_term) {
        out.loss -= alpha * unclipped_term;
        weights[t] -= alpha * unclipped_term;  // d(rho*a)/dlogp = rho*a
      } else {
        out.loss -= alpha * clipped_term;
      }
      double delta = r.logp_ref[t] - r.logp_new[t];
      out.loss += cfg.kl_coeff * k3_divergence(delta);
      weights[t] += cfg.kl_coeff * (1.0 - std::exp(delta));
    }
    out.token_weights.push_back(std::move(weights));
  }
  return out;
}

LossGrad sw_grpo_loss(const Group& group, const GrpoConfig& cfg,
                      const Policy& policy) {
  Group refreshed = group;
  for (auto& r : refreshed.rollouts)
    r.logp_new = policy.logprob(refreshed.prompt, r.traj);
  GrpoValue value = sw_grpo_loss(refreshed, cfg);
  LossGrad out;
  out.loss = value.loss;
  out.grad.assign(policy.parameters().size(), 0.0);
  for (size_t i = 0; i < refreshed.rollouts.size(); ++i)
    policy.accumulate(refreshed.prompt, refreshed.rollouts[i].traj,
                      value.token_weights[i], out.grad);
  return out;
}

double grad_check(Policy& policy,
                  const std::function<std::pair<double,
                                                std::vector<double>>()>&
                      loss_fn,
                  double h) {
  std::vector<double> params = policy.parameters();
  auto center = loss_fn();
  const std::vector<double>& analytic = center.second;
  if (analytic.size() != params.size())
    throw std::invalid_argument("gradient size does not match parameters");

  double max_err = 0.0;
  for (size_t i = 0; i < params.size(); ++i) {
    std::vector<double> p = params;
    p[i] = params[i] + h;
    policy.set_parameters(p);
    double plus = loss_fn().first;
    p[i] = params[i] - h;
    policy.set_parameters(p);
    double minus = loss_fn().first;
    double numeric = (plus - minus) / (2.0 * h);
    double err = std::abs(analytic[i] - numeric) /
                 std::max(1.0, std::abs(numeric));
    max_err = std::max(max_err, err);
  }
  policy.set_parameters(params);
  return max_err;
}

TrainLog train_grpo(Policy& policy,
                    const std::vector<synth::ProblemInstance>& problems,
                    const solver::SolveConfig& solver_cfg,
                    const reward::RewardConfig& reward_cfg,
                    const GrpoConfig& cfg, int steps, Rng& rng) {
  TrainLog log;
  std::unique_ptr<Policy> ref = policy.clone();

  for (int step = 1; step <= steps; ++step) {
    std::unique_ptr<Policy> old = policy.clone();
    TrainStep entry;
    entry.step = step;
    double reward_sum = 0.0;
    int reward_count = 0;
    std::map<std::string, double> norm_sq = {{"strategy", 0.0},
                                             {"modeling", 0.0},
                                             {"check", 0.0},
                                             {"other", 0.0}};

    auto apply_update = [&](const Group& g) {
      LossGrad lg = sw_grpo_loss(g, cfg, policy);
      std::vector<SegmentLabel> segments = policy.parameter_segments();
      for (size_t i = 0; i < lg.grad.size(); ++i)
        norm_sq[response::to_string(segments[i])] +=
            lg.grad[i] * lg.grad[i];
      std::vector<double> params = policy.parameters();
      for (size_t i = 0; i < params.size(); ++i)
        params[i] -= cfg.learning_rate * lg.grad[i];
      policy.set_parameters(params);
    };

    for (const auto& problem : problems) {
      Group group =
          sample_group(*old, problem.id, cfg.group_size, rng);
      reward::ScoringInstance inst{problem.data, problem.ground_truth,
                                   problem.problem_class};
      for (auto& r : group.rollouts) {
        r.reward = reward::composite_reward(r.traj.text, inst, solver_cfg,
                                            reward_cfg)
                       .total;
        group.rewards.push_back(r.reward);
        r.logp_ref = ref->logprob(problem.id, r.traj);
      }
      group.advantages = cfg.mean_only_advantages
                             ? mean_only_advantages(group.rewards)
                             : advantages(group.rewards, cfg.adv_epsilon);
      reward_sum += std::accumulate(group.rewards.begin(),
                                    group.rewards.end(), 0.0);
      reward_count += (int)group.rewards.size();

      if (cfg.minibatch_size > 0 &&
          cfg.minibatch_size < (int)group.rollouts.size()) {
        for (size_t start = 0; start < group.rollouts.size();
             start += (size_t)cfg.minibatch_size) {
          Group chunk;
          chunk.prompt = group.prompt;
          size_t stop = std::min(group.rollouts.size(),
                                 start + (size_t)cfg.minibatch_size);
          for (size_t i = start; i < stop; ++i) {
            chunk.rollouts.push_back(group.rollouts[i]);
            chunk.rewards.push_back(group.rewards[i]);
            chunk.advantages.push_back(group.advantages[i]);
          }
          apply_update(chunk);
        }
      } else {
        apply_update(group);
      }
    }

    entry.mean_reward =
        reward_count > 0 ? reward_sum / reward_count : 0.0;
    for (const auto& problem : problems)
      for (const auto& [label, p] :
           policy.strategy_probabilities(problem.id))
        entry.p_strategy[problem.id + ":" + label] = p;
    for (const auto& [name, sq] : norm_sq)
      entry.grad_norm[name] = std::sqrt(sq);
    log.steps.push_back(std::move(entry));
  }
  return log;
}

void write_train_log(const TrainLog& log, const std::string& path) {
  std::ofstream out(path);
  if (!out)
    throw std::runtime_error("cannot write training log: " + path);
  for (const auto& step : log.steps) {
    nlohmann::json j;
    j["step"] = step.step;
    j["mean_reward"] = step.mean_reward;
    j["p_strategy"] = step.p_strategy;
    j["grad_norm"] = step.grad_norm;
    out << j.dump() << "\n";
  }
}

}  // namespace sageforge::rl
