// Copyright 2026 The GroundPilot Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <vector>

namespace groundpilot {

// Sufficient statistics of one disjoint-model LinUCB arm:
// A = I + sum of x xT (symmetric positive definite), b = sum of r x.
struct BanditArmState {
  std::string arm_id;
  int dimension = 0;
  std::vector<double> a_matrix;  // row-major d*d
  std::vector<double> b_vector;  // d
  std::uint64_t pull_count = 0;

  static BanditArmState fresh(const std::string& arm_id, int dimension);
};

// Arm bank with per-arm serialized updates. Scores follow the disjoint
// LinUCB form: theta = A^-1 b, p = thetaT x + alpha * sqrt(xT A^-1 x).
class LinUcbBank {
 public:
  LinUcbBank(int dimension, double alpha);

  int dimension() const { return dimension_; }
  double alpha() const { return alpha_; }

  void ensure_arm(const std::string& arm_id);
  bool has_arm(const std::string& arm_id) const;
  std::vector<std::string> arm_ids() const;

  double ucb(const std::string& arm_id,
             const std::vector<double>& context) const;

  // Argmax of ucb over per-arm contexts; ties broken by ascending arm_id.
  // Also returns every arm's score.
  std::pair<std::string, std::map<std::string, double>> select(
      const std::map<std::string, std::vector<double>>& contexts) const;

  // A += x xT, b += reward * x, pull_count += 1. Reward must lie in [0, 1];
  // contexts must be finite and of the bank dimension.
  void update(const std::string& arm_id, const std::vector<double>& context,
              double reward);

  BanditArmState arm_state(const std::string& arm_id) const;
  std::uint64_t pull_count(const std::string& arm_id) const;

  // Versioned snapshot; matrices row-major (docs/formats.md). Round-trips
  // doubles exactly.
  std::string snapshot_json() const;
  void save_snapshot(const std::string& path) const;
  static std::unique_ptr<LinUcbBank> from_snapshot_json(const std::string& text,
                                                        double alpha);
  static std::unique_ptr<LinUcbBank> load_snapshot(const std::string& path,
                                                   double alpha);

 private:
  struct Arm {
    mutable std::mutex mutex;
    BanditArmState state;
  };

  const Arm& arm_ref(const std::string& arm_id) const;
  void check_context(const std::vector<double>& context) const;

  int dimension_;
  double alpha_;
  mutable std::shared_mutex arms_mutex_;  // guards the map, not the arms
  std::map<std::string, std::unique_ptr<Arm>> arms_;
};

}  // namespace groundpilot
