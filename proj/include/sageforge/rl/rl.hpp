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

#ifndef SAGEFORGE_RL_RL_HPP
#define SAGEFORGE_RL_RL_HPP

#include <cmath>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "sageforge/reward/reward.hpp"
#include "sageforge/rl/policy.hpp"
#include "sageforge/solver/solver.hpp"
#include "sageforge/synth/synth.hpp"

namespace sageforge::rl {

struct GrpoConfig {
  int group_size = 8;
  double clip = 0.2;       // ratio clip half-width, in (0, 1)
  double kl_coeff = 0.001;
  double w_strategy = 2.0;
  double w_modeling = 1.5;
  double w_check = 1.0;
  double w_other = 1.0;
  double learning_rate = 0.1;  // scale-free rate for the toy policy
  double adv_epsilon = 1e-8;
  bool mean_only_advantages = false;  // skip the std normalization
  int minibatch_size = 0;  // >0: split each group into update chunks

  double segment_weight(SegmentLabel s) const {
    switch (s) {
      case SegmentLabel::Strategy: return w_strategy;
      case SegmentLabel::Modeling: return w_modeling;
      case SegmentLabel::Check: return w_check;
      case SegmentLabel::Other: return w_other;
    }
    return w_other;
  }
};

/// Low-variance KL estimate of one token: exp(d) - d - 1 with
/// d = logp_ref - logp_new. Nonnegative, zero iff d = 0.
inline double k3_divergence(double delta) {
  return std::exp(delta) - delta - 1.0;
}

struct Rollout {
  Trajectory traj;
  std::vector<double> logp_new;
  std::vector<double> logp_old;
  std::vector<double> logp_ref;
  double reward = 0.0;
};

struct Group {
  std::string prompt;
  std::vector<Rollout> rollouts;
  std::vector<double> rewards;
  std::vector<double> advantages;
};

struct LossGrad {
  double loss = 0.0;
  std::vector<double> grad;
};

/// Negative log-likelihood of the corpus decisions plus its analytic
/// gradient under the current parameters. Throws UnrenderableSample.
LossGrad sft_loss(const Policy& policy,
                  const std::vector<synth::TrainingSample>& corpus);

/// G independent rollouts under policy_old with logp_old filled in;
/// logp_new and logp_ref start as copies of logp_old for the trainer to
/// refresh. Throws std::invalid_argument when g < 2.
Group sample_group(const Policy& policy_old, const std::string& prompt,
                   int g, Rng& rng);

/// Group-standardized advantages: (R - mean) / (std + eps) with the
/// population std; all-equal rewards map to exact zeros. Throws
/// std::invalid_argument on fewer than two rewards.
std::vector<double> advantages(const std::vector<double>& rewards,
                               double eps);

/// The mean-only baseline variant: R - mean.
std::vector<double> mean_only_advantages(const std::vector<double>& rewards);

/// Loss value from the stored per-token log-probabilities, along with
/// dLoss/dlogp_new per token (zero on clipped branches, KL included).
struct GrpoValue {
  double loss = 0.0;
  std::vector<std::vector<double>> token_weights;  // [rollout][token]
};

GrpoValue sw_grpo_loss(const Group& group, const GrpoConfig& cfg);

/// Same loss with logp_new refreshed from the policy and the gradient
/// chained to its parameters.
LossGrad sw_grpo_loss(const Group& group, const GrpoConfig& cfg,
                      const Policy& policy);

/// Central-difference verification of loss_fn's gradient over every
/// policy parameter; returns max |analytic - numeric| / max(1, |numeric|).
/// loss_fn must evaluate against the policy's current parameters.
double grad_check(Policy& policy,
                  const std::function<std::pair<double,
                                                std::vector<double>>()>&
                      loss_fn,
                  double h = 1e-6);

struct TrainStep {
  int step = 0;
  double mean_reward = 0.0;
  std::map<std::string, double> p_strategy;  // "<problem>:<option>" keys
  std::map<std::string, double> grad_norm;   // per segment name
};

struct TrainLog {
  std::vector<TrainStep> steps;
};

/// On-policy training: per step snapshot the policy, sample a group per
/// problem, score with the composite reward, standardize advantages, and
/// take one gradient step per group (or per minibatch when configured).
/// The reference policy for the KL term is frozen at entry.
TrainLog train_grpo(Policy& policy,
                    const std::vector<synth::ProblemInstance>& problems,
                    const solver::SolveConfig& solver_cfg,
                    const reward::RewardConfig& reward_cfg,
                    const GrpoConfig& cfg, int steps, Rng& rng);

/// One JSON object per step: {"step", "mean_reward", "p_strategy",
/// "grad_norm"}.
void write_train_log(const TrainLog& log, const std::string& path);

}  // namespace sageforge::rl

#endif  // SAGEFORGE_RL_RL_HPP
