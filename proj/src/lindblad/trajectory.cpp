// Copyright 2026 The eitcool authors
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

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <random>
#include <thread>

#include "lindblad/model.hpp"

namespace eitcool::lindblad {

namespace {

struct TrajectoryWorkspace {
  SparseMatrix drift;  // -i H - (1/2) sum_k rate_k A_k^dag A_k
  std::vector<SparseMatrix> jump_ops;
  std::vector<double> jump_rates;
  std::vector<SparseMatrix> number_ops;
  int dim = 0;
};

TrajectoryWorkspace make_workspace(const ModelSpec& spec) {
  const ModelOperators ops = build_operators(spec);
  TrajectoryWorkspace ws;
  ws.dim = spec.hilbert_dim();
  SparseMatrix damping(ws.dim, ws.dim);
  for (const auto& jump : ops.jumps) {
    SparseMatrix a = jump.op.sparse();
    damping = damping + SparseMatrix(jump.rate * (SparseMatrix(a.adjoint()) * a));
    ws.jump_ops.push_back(std::move(a));
    ws.jump_rates.push_back(jump.rate);
  }
  ws.drift = SparseMatrix((-kI) * ops.hamiltonian.sparse()) - SparseMatrix(0.5 * damping);
  ws.drift.makeCompressed();
  for (const auto& num : ops.mode_number) ws.number_ops.push_back(num.sparse());
  return ws;
}

// Per-trajectory, per-grid-point records; reduced in trajectory order so the
// ensemble averages do not depend on the thread count.
struct TrajectoryRecord {
  std::vector<std::vector<double>> mean_n;  // [time][mode]
  std::vector<double> pop_g, pop_e, pop_a;
};

int sample_thermal_occupation(double n_bar, int n_max, std::mt19937_64& rng) {
  if (n_bar <= 0.0) return 0;
  const RealVector& p = thermal_state(n_bar, n_max).populations;
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  double u = uni(rng);
  for (int n = 0; n <= n_max; ++n) {
    u -= p[n];
    if (u <= 0.0) return n;
  }
  return n_max;
}

class SingleTrajectory {
 public:
  SingleTrajectory(const ModelSpec& spec, const TrajectoryWorkspace& ws,
                   const TrajectoryOptions& opts, std::uint64_t seed)
      : spec_(spec),
        ws_(ws),
        opts_(opts),
        rng_(seed),
        uni_(0.0, 1.0),
        stepper_([this](double, const Vector& y) { return Vector(ws_.drift * y); },
                 opts.integrator) {}

  TrajectoryRecord run(const std::vector<double>& times) {
    init_state();
    TrajectoryRecord rec;
    for (double t : times) {
      advance_to(t);
      record(rec);
    }
    return rec;
  }

 private:
  void init_state() {
    const int n_modes = static_cast<int>(spec_.modes.size());
    std::vector<int> occ(n_modes);
    for (int k = 0; k < n_modes; ++k)
      occ[k] = sample_thermal_occupation(spec_.modes[k].n_initial,
                                         spec_.modes[k].resolved_n_max(), rng_);
    int idx = kLevelG;
    for (int k = 0; k < n_modes; ++k) idx = idx * (spec_.modes[k].resolved_n_max() + 1) + occ[k];
    Vector psi = Vector::Zero(ws_.dim);
    psi[idx] = 1.0;
    stepper_.reset(0.0, std::move(psi));
    threshold_ = draw_threshold();
  }

  double draw_threshold() {
    double r = uni_(rng_);
    // Guard against a zero draw, which would demand an infinite wait.
    return r > 1e-300 ? r : 1e-300;
  }

  void advance_to(double t_target) {
    while (stepper_.time() < t_target) {
      const double t0 = stepper_.time();
      const Vector psi0 = stepper_.state();
      const double n2_before = psi0.squaredNorm();

      double h = stepper_.step(t_target);
      if (h == 0.0) break;
      double n2_after = stepper_.state().squaredNorm();

      // Cap on jump probability accumulated in a single step.
      while (n2_after > threshold_ &&
             1.0 - n2_after / n2_before > opts_.max_jump_probability) {
        stepper_.reset(t0, psi0);
        stepper_.set_max_step(0.5 * h);
        h = stepper_.step(t_target);
        n2_after = stepper_.state().squaredNorm();
      }
      stepper_.set_max_step(opts_.integrator.max_step);

      if (n2_after <= threshold_) {
        locate_crossing(t0, psi0);
        apply_jump();
      }
    }
  }

  // Bisection on the squared norm between (t_lo, psi_lo) where it exceeds the
  // threshold and stepper_.time() where it does not. Re-integrates from the
  // bracket start; the bracket shrinks below 1e-3 of the original step.
  void locate_crossing(double t_lo, Vector psi_lo) {
    double t_hi = stepper_.time();
    Vector psi_hi = stepper_.state();
    const double width0 = t_hi - t_lo;
    for (int iter = 0; iter < 40 && (t_hi - t_lo) > 1e-3 * width0; ++iter) {
      const double t_mid = 0.5 * (t_lo + t_hi);
      Vector psi_mid = integrate_to(
          [this](double, const Vector& y) { return Vector(ws_.drift * y); }, t_lo, psi_lo, t_mid,
          opts_.integrator);
      if (psi_mid.squaredNorm() > threshold_) {
        t_lo = t_mid;
        psi_lo = std::move(psi_mid);
      } else {
        t_hi = t_mid;
        psi_hi = std::move(psi_mid);
      }
    }
    stepper_.reset(t_hi, std::move(psi_hi));
  }

  void apply_jump() {
    const Vector& psi = stepper_.state();
    const std::size_t n_ch = ws_.jump_ops.size();
    std::vector<Vector> candidates(n_ch);
    std::vector<double> weights(n_ch);
    double total = 0.0;
    for (std::size_t k = 0; k < n_ch; ++k) {
      candidates[k] = ws_.jump_ops[k] * psi;
      weights[k] = ws_.jump_rates[k] * candidates[k].squaredNorm();
      total += weights[k];
    }
    if (total <= 0.0) throw NumericalError("trajectory: no jump channel available at crossing");
    double u = uni_(rng_) * total;
    std::size_t chosen = n_ch - 1;
    for (std::size_t k = 0; k < n_ch; ++k) {
      u -= weights[k];
      if (u <= 0.0) {
        chosen = k;
        break;
      }
    }
    Vector post = std::move(candidates[chosen]);
    post /= post.norm();
    stepper_.reset(stepper_.time(), std::move(post));
    threshold_ = draw_threshold();
  }

  void record(TrajectoryRecord& rec) {
    const Vector& psi = stepper_.state();
    const double n2 = psi.squaredNorm();
    std::vector<double> occ;
    occ.reserve(ws_.number_ops.size());
    for (const auto& num : ws_.number_ops)
      occ.push_back(psi.dot(num * psi).real() / n2);
    rec.mean_n.push_back(std::move(occ));

    double pg = 0.0, pe = 0.0, pa = 0.0;
    const int qubit_stride = ws_.dim / kQubitDim;
    for (int q = 0; q < kQubitDim; ++q) {
      const double p = psi.segment(q * qubit_stride, qubit_stride).squaredNorm() / n2;
      if (q == kLevelG) pg = p;
      else if (q == kLevelE) pe = p;
      else pa = p;
    }
    rec.pop_g.push_back(pg);
    rec.pop_e.push_back(pe);
    rec.pop_a.push_back(pa);
  }

  const ModelSpec& spec_;
  const TrajectoryWorkspace& ws_;
  const TrajectoryOptions& opts_;
  std::mt19937_64 rng_;
  std::uniform_real_distribution<double> uni_;
  DormandPrince stepper_;
  double threshold_ = 1.0;
};

}  // namespace

CoolingTrace trajectory_evolve(const ModelSpec& spec, const std::vector<double>& times,
                               const TrajectoryOptions& opts) {
  spec.validate();
  if (times.empty()) throw ConfigError("trajectory_evolve requires a non-empty time grid");
  if (!std::is_sorted(times.begin(), times.end()))
    throw ConfigError("trajectory_evolve requires an ascending time grid");
  if (opts.n_trajectories < 100)
    throw ConfigError("trajectory_evolve requires n_trajectories >= 100");

  const TrajectoryWorkspace ws = make_workspace(spec);

  // Per-trajectory seeds are pre-drawn from the master seed, so results are
  // independent of thread scheduling.
  std::vector<std::uint64_t> seeds(opts.n_trajectories);
  {
    std::mt19937_64 master(opts.seed);
    for (auto& s : seeds) s = master();
  }

  std::vector<TrajectoryRecord> records(opts.n_trajectories);
  std::atomic<int> next{0};
  std::atomic<bool> failed{false};
  std::string failure_message;
  std::mutex failure_mutex;

  auto worker = [&] {
    while (true) {
      const int i = next.fetch_add(1);
      if (i >= opts.n_trajectories || failed.load()) break;
      try {
        SingleTrajectory traj(spec, ws, opts, seeds[i]);
        records[i] = traj.run(times);
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        failed.store(true);
        failure_message = e.what();
        break;
      }
    }
  };

  const int n_workers = std::min(worker_thread_count(), opts.n_trajectories);
  if (n_workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_workers);
    for (int w = 0; w < n_workers; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failed.load()) throw NumericalError("trajectory_evolve: " + failure_message);

  const std::size_t n_times = times.size();
  const std::size_t n_modes = spec.modes.size();
  CoolingTrace trace;
  trace.times = times;
  trace.n_trajectories = opts.n_trajectories;
  trace.mean_n.assign(n_times, std::vector<double>(n_modes, 0.0));
  trace.mean_n_stderr.assign(n_times, std::vector<double>(n_modes, 0.0));
  trace.pop_g.assign(n_times, 0.0);
  trace.pop_e.assign(n_times, 0.0);
  trace.pop_a.assign(n_times, 0.0);
  trace.trace_defect.assign(n_times, 0.0);

  const double inv_n = 1.0 / opts.n_trajectories;
  for (std::size_t t = 0; t < n_times; ++t) {
    for (std::size_t k = 0; k < n_modes; ++k) {
      double sum = 0.0, sum_sq = 0.0;
      for (const auto& rec : records) {
        const double v = rec.mean_n[t][k];
        sum += v;
        sum_sq += v * v;
      }
      const double mean = sum * inv_n;
      trace.mean_n[t][k] = mean;
      if (opts.n_trajectories > 1) {
        const double var =
            std::max(0.0, (sum_sq - sum * sum * inv_n) / (opts.n_trajectories - 1));
        trace.mean_n_stderr[t][k] = std::sqrt(var * inv_n);
      }
    }
    for (const auto& rec : records) {
      trace.pop_g[t] += rec.pop_g[t] * inv_n;
      trace.pop_e[t] += rec.pop_e[t] * inv_n;
      trace.pop_a[t] += rec.pop_a[t] * inv_n;
    }
  }
  return trace;
}

}  // namespace eitcool::lindblad
