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

#include "core/linucb.hpp"

#include <cmath>
#include <fstream>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "core/error.hpp"

namespace groundpilot {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

Eigen::MatrixXd to_matrix(const std::vector<double>& a, int d) {
  Eigen::MatrixXd m(d, d);
  for (int r = 0; r < d; ++r) {
    for (int c = 0; c < d; ++c) m(r, c) = a[std::size_t(r) * d + c];
  }
  return m;
}

Eigen::VectorXd to_vector(const std::vector<double>& v) {
  Eigen::VectorXd out(Eigen::Index(v.size()));
  for (Eigen::Index i = 0; i < out.size(); ++i) out[i] = v[std::size_t(i)];
  return out;
}

double ucb_score(const BanditArmState& state, const std::vector<double>& x,
                 double alpha) {
  const int d = state.dimension;
  Eigen::MatrixXd a = to_matrix(state.a_matrix, d);
  Eigen::VectorXd xv = to_vector(x);
  Eigen::LDLT<Eigen::MatrixXd> solver(a);
  Eigen::VectorXd theta = solver.solve(to_vector(state.b_vector));
  double exploration_sq = xv.dot(solver.solve(xv));
  if (exploration_sq < 0.0) exploration_sq = 0.0;  // numeric guard
  return theta.dot(xv) + alpha * std::sqrt(exploration_sq);
}

}  // namespace

BanditArmState BanditArmState::fresh(const std::string& arm_id, int dimension) {
  BanditArmState s;
  s.arm_id = arm_id;
  s.dimension = dimension;
  s.a_matrix.assign(std::size_t(dimension) * dimension, 0.0);
  for (int i = 0; i < dimension; ++i) {
    s.a_matrix[std::size_t(i) * dimension + i] = 1.0;
  }
  s.b_vector.assign(dimension, 0.0);
  return s;
}

LinUcbBank::LinUcbBank(int dimension, double alpha)
    : dimension_(dimension), alpha_(alpha) {
  if (dimension <= 0) {
    throw_error(ErrorCode::kInvalidArgument, "bandit dimension must be positive");
  }
  if (alpha < 0.0 || !std::isfinite(alpha)) {
    throw_error(ErrorCode::kInvalidArgument, "alpha_ucb must be finite and >= 0");
  }
}

void LinUcbBank::ensure_arm(const std::string& arm_id) {
  {
    std::shared_lock lock(arms_mutex_);
    if (arms_.count(arm_id)) return;
  }
  std::unique_lock lock(arms_mutex_);
  if (arms_.count(arm_id)) return;
  auto arm = std::make_unique<Arm>();
  arm->state = BanditArmState::fresh(arm_id, dimension_);
  arms_.emplace(arm_id, std::move(arm));
}

bool LinUcbBank::has_arm(const std::string& arm_id) const {
  std::shared_lock lock(arms_mutex_);
  return arms_.count(arm_id) != 0;
}

std::vector<std::string> LinUcbBank::arm_ids() const {
  std::shared_lock lock(arms_mutex_);
  std::vector<std::string> ids;
  ids.reserve(arms_.size());
  for (const auto& [id, arm] : arms_) ids.push_back(id);
  return ids;
}

const LinUcbBank::Arm& LinUcbBank::arm_ref(const std::string& arm_id) const {
  std::shared_lock lock(arms_mutex_);
  auto it = arms_.find(arm_id);
  if (it == arms_.end()) {
    throw_error(ErrorCode::kNotFound, "unknown bandit arm '" + arm_id + "'");
  }
  return *it->second;
}

void LinUcbBank::check_context(const std::vector<double>& context) const {
  if (int(context.size()) != dimension_) {
    throw_error(ErrorCode::kInvalidArgument,
                "context dimension " + std::to_string(context.size()) +
                    " does not match bank dimension " +
                    std::to_string(dimension_));
  }
  for (double v : context) {
    if (!std::isfinite(v)) {
      throw_error(ErrorCode::kInvalidArgument, "context must be finite");
    }
  }
}

double LinUcbBank::ucb(const std::string& arm_id,
                       const std::vector<double>& context) const {
  check_context(context);
  const Arm& arm = arm_ref(arm_id);
  std::lock_guard lock(arm.mutex);
  return ucb_score(arm.state, context, alpha_);
}

std::pair<std::string, std::map<std::string, double>> LinUcbBank::select(
    const std::map<std::string, std::vector<double>>& contexts) const {
  if (contexts.empty()) {
    throw_error(ErrorCode::kInvalidArgument, "select requires at least one arm");
  }
  std::map<std::string, double> scores;
  std::string best;
  double best_score = 0.0;
  for (const auto& [arm_id, context] : contexts) {
    double score = ucb(arm_id, context);
    scores[arm_id] = score;
    // Map iteration is ascending by arm_id, so strict > keeps the smallest
    // id among ties.
    if (best.empty() || score > best_score) {
      best = arm_id;
      best_score = score;
    }
  }
  return {best, scores};
}

void LinUcbBank::update(const std::string& arm_id,
                        const std::vector<double>& context, double reward) {
  check_context(context);
  if (!(reward >= 0.0 && reward <= 1.0)) {
    throw_error(ErrorCode::kInvalidArgument,
                "reward must lie in [0, 1], got " + std::to_string(reward));
  }
  const Arm& arm = arm_ref(arm_id);
  std::lock_guard lock(arm.mutex);
  BanditArmState& s = const_cast<BanditArmState&>(arm.state);
  for (int r = 0; r < dimension_; ++r) {
    for (int c = 0; c < dimension_; ++c) {
      s.a_matrix[std::size_t(r) * dimension_ + c] += context[r] * context[c];
    }
    s.b_vector[r] += reward * context[r];
  }
  s.pull_count += 1;
}

BanditArmState LinUcbBank::arm_state(const std::string& arm_id) const {
  const Arm& arm = arm_ref(arm_id);
  std::lock_guard lock(arm.mutex);
  return arm.state;
}

std::uint64_t LinUcbBank::pull_count(const std::string& arm_id) const {
  return arm_state(arm_id).pull_count;
}

std::string LinUcbBank::snapshot_json() const {
  ordered_json doc;
  doc["version"] = 1;
  doc["dimension"] = dimension_;
  doc["arms"] = ordered_json::array();
  for (const std::string& id : arm_ids()) {
    BanditArmState s = arm_state(id);
    ordered_json arm;
    arm["arm_id"] = s.arm_id;
    arm["pull_count"] = s.pull_count;
    arm["A"] = s.a_matrix;
    arm["b"] = s.b_vector;
    doc["arms"].push_back(std::move(arm));
  }
  return doc.dump();
}

void LinUcbBank::save_snapshot(const std::string& path) const {
  std::ofstream out(path, std::ios::trunc);
  if (!out) {
    throw_error(ErrorCode::kIo, "cannot write arm snapshot '" + path + "'");
  }
  out << snapshot_json() << "\n";
}

std::unique_ptr<LinUcbBank> LinUcbBank::from_snapshot_json(
    const std::string& text, double alpha) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw_error(ErrorCode::kParse,
                std::string("bad arm snapshot: ") + e.what());
  }
  if (doc.value("version", 0) != 1) {
    throw_error(ErrorCode::kValidation, "unsupported arm snapshot version");
  }
  int d = doc.value("dimension", 0);
  auto bank = std::make_unique<LinUcbBank>(d, alpha);
  for (const json& arm : doc["arms"]) {
    std::string id = arm.value("arm_id", "");
    bank->ensure_arm(id);
    const Arm& ref = bank->arm_ref(id);
    BanditArmState& s = const_cast<BanditArmState&>(ref.state);
    s.pull_count = arm.value("pull_count", std::uint64_t{0});
    s.a_matrix = arm["A"].get<std::vector<double>>();
    s.b_vector = arm["b"].get<std::vector<double>>();
    if (int(s.b_vector.size()) != d ||
        s.a_matrix.size() != std::size_t(d) * std::size_t(d)) {
      throw_error(ErrorCode::kValidation,
                  "arm snapshot '" + id + "' has wrong dimensions");
    }
  }
  return bank;
}

std::unique_ptr<LinUcbBank> LinUcbBank::load_snapshot(const std::string& path,
                                                      double alpha) {
  std::ifstream in(path);
  if (!in) {
    throw_error(ErrorCode::kIo, "cannot open arm snapshot '" + path + "'");
  }
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return from_snapshot_json(text, alpha);
}

}  // namespace groundpilot
