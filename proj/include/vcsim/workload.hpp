#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "vcsim/config.hpp"
#include "vcsim/rng.hpp"
#include "vcsim/task.hpp"

namespace vcsim {

// Request generation. Each user emits floor(duration / period) tasks at a
// fixed cadence, phase-shifted by a seeded offset in [0, period) so that
// users do not fire in lockstep. Task ids are assigned in emission order.
//
// Per-user jitter streams are derived by user id, so adding users never
// perturbs the emission times of existing ones.
inline std::vector<Task> generate_tasks(const SimConfig& cfg, RngSet& rng) {
  if (cfg.n_users < 1) throw std::invalid_argument("generate_tasks: need at least one user");
  if (cfg.duration_s <= 0.0) throw std::invalid_argument("generate_tasks: duration must be > 0");

  const double period = cfg.request_period_s;
  // Small epsilon so that an integral duration/period ratio is not floored
  // away by division error.
  const auto per_user = static_cast<long>(std::floor(cfg.duration_s / period + 1e-9));

  std::vector<Task> tasks;
  tasks.reserve(static_cast<std::size_t>(per_user) * cfg.n_users);
  for (int u = 0; u < cfg.n_users; ++u) {
    RngStream& jitter = rng.create("arrival-jitter/u" + std::to_string(u));
    if (cfg.poisson_arrivals) {
      // Poisson option used by queueing sanity studies; the fixed cadence
      // stays the default.
      double rate = 1.0 / period;
      double t = jitter.exponential(rate);
      while (t < cfg.duration_s) {
        Task task;
        task.origin_user = u;
        task.workload_mi = cfg.task_workload_mi;
        task.input_size_bytes = cfg.task_size_bytes;
        task.result_size_bytes = cfg.result_size_bytes;
        task.created_at = t;
        tasks.push_back(task);
        t += jitter.exponential(rate);
      }
    } else {
      double phase = jitter.uniform(0.0, period);
      for (long k = 0; k < per_user; ++k) {
        Task task;
        task.origin_user = u;
        task.workload_mi = cfg.task_workload_mi;
        task.input_size_bytes = cfg.task_size_bytes;
        task.result_size_bytes = cfg.result_size_bytes;
        task.created_at = phase + static_cast<double>(k) * period;
        tasks.push_back(task);
      }
    }
  }
  std::sort(tasks.begin(), tasks.end(), [](const Task& a, const Task& b) {
    if (a.created_at != b.created_at) return a.created_at < b.created_at;
    return a.origin_user < b.origin_user;
  });
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    tasks[i].task_id = static_cast<std::int64_t>(i);
    tasks[i].validate();
  }
  return tasks;
}

}  // namespace vcsim
