// Job execution: every subcommand renders one deterministic CSV table.
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

#include "huygens/config.hpp"
#include "huygens/csv.hpp"
#include "huygens/dalembert.hpp"
#include "huygens/udw.hpp"

namespace huygens::cli {

namespace {

// Runs fn(i) for i in [0, n) on up to `threads` workers. Tasks write into
// preallocated slots, so output order never depends on scheduling.
template <typename Fn>
void parallel_for(std::size_t n, int threads, Fn&& fn) {
    const int workers = std::min<int>(threads, static_cast<int>(n));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= n) break;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                    break;
                }
            }
        });
    }
    for (std::thread& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

void emit_notes(std::ostream& out, const RunConfig& cfg) {
    for (const std::string& note : cfg.notes) out << "# " << note << "\n";
}

void run_commutator(const CommutatorJob& job, std::ostream& out, const RunOptions& options) {
    const CavitySpec cavity(job.length, job.n_modes);
    const std::vector<double> ts = job.t_grid.values();
    const std::vector<double> xs = job.x_grid.values();
    const bool closed = job.form == "closed";
    const Smoothing smoothing = job.smoothing == "fejer" ? Smoothing::fejer : Smoothing::none;

    std::vector<std::vector<double>> rows(ts.size());
    parallel_for(ts.size(), options.threads, [&](std::size_t i) {
        rows[i].reserve(xs.size());
        for (double x : xs) {
            rows[i].push_back(closed
                                  ? cavity_commutator_closed(cavity, job.t1, job.x1, ts[i], x)
                                  : cavity_commutator_modesum(cavity, job.t1, job.x1, ts[i], x,
                                                              smoothing));
        }
    });

    CsvWriter csv(out, {"t", "x", "value"});
    for (std::size_t i = 0; i < ts.size(); ++i) {
        for (std::size_t k = 0; k < xs.size(); ++k) {
            csv.row({ts[i], xs[k], rows[i][k]});
        }
    }
}

void run_energy_density(const EnergyDensityJob& job, std::ostream& out) {
    const UdwParams params(job.gap, job.coupling, job.duration, job.excited_weight);
    const EnergyProfile profile = energy_profile(params, job.t_slice, job.x_grid.values());
    CsvWriter csv(out, {"x", "density"});
    for (std::size_t i = 0; i < profile.x.size(); ++i) {
        csv.row({profile.x[i], profile.density[i]});
    }
}

void run_total_energy(const TotalEnergyJob& job, std::ostream& out) {
    CsvWriter csv(out, {"omega_T", "energy"});
    for (double omega_t : job.omega_t_grid.values()) {
        const UdwParams params(job.gap, job.coupling, omega_t / job.gap, job.excited_weight);
        csv.row({omega_t, total_energy(params)});
    }
}

void run_classical(const ClassicalJob& job, std::ostream& out) {
    const int n = static_cast<int>(std::lround((job.grid_max - job.grid_min) / job.dx)) + 1;
    std::vector<double> phi0(static_cast<std::size_t>(n));
    std::vector<double> pi0(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < n; ++i) {
        const double x = job.grid_min + job.dx * static_cast<double>(i);
        const double arg = (x - job.bump_center) / job.bump_width;
        phi0[static_cast<std::size_t>(i)] = job.bump_amplitude * std::exp(-0.5 * arg * arg);
    }
    const InitialData data(job.grid_min, job.dx, std::move(phi0), std::move(pi0));

    CsvWriter csv(out, {"t", "x", "phi", "T00"});
    for (double t : job.t_grid.values()) {
        for (double x : job.x_grid.values()) {
            csv.row({t, x, evolve_phi(data, t, x), energy_density_boundary(data, t, x)});
        }
    }
}

const std::vector<std::string> kScenarioHeader = {
    "T2",       "q_B_mean",  "p_B_mean",  "r",   "sigma_qq", "sigma_pp",
    "sigma_qp", "Pe_signal", "Pe_vacuum", "dPe", "timelike"};

void write_row(CsvWriter& csv, const SweepRow& row) {
    const ScenarioResult& res = row.result;
    csv.row({row.t2, res.receiver_mean(0), res.receiver_mean(1), res.displacement,
             res.receiver_cov(0, 0), res.receiver_cov(1, 1), res.receiver_cov(0, 1),
             res.pe_signal, res.pe_vacuum, res.dpe, res.timelike ? 1.0 : 0.0});
}

void run_scenario_job(const ScenarioJob& job, std::ostream& out) {
    SweepRow row;
    row.t2 = job.config.receiver.t_off;
    row.result = run_scenario(job.config);
    CsvWriter csv(out, kScenarioHeader);
    write_row(csv, row);
}

void run_sweep_job(const SweepJob& job, std::ostream& out, const RunOptions& options) {
    std::vector<SweepRow> rows;
    switch (job.parameter) {
        case SweepParameter::t2:
            rows = sweep_t2(job.config, job.values);
            break;
        case SweepParameter::sender_init:
            rows = sweep_sender_init(job.config, job.init_values);
            break;
        default: {
            rows.resize(job.values.size());
            parallel_for(job.values.size(), options.threads, [&](std::size_t i) {
                const std::vector<double> one{job.values[i]};
                rows[i] = sweep_values(job.config, job.parameter, one).front();
            });
            break;
        }
    }
    CsvWriter csv(out, kScenarioHeader);
    for (const SweepRow& row : rows) write_row(csv, row);
}

void run_oracle(const OracleJob& job, std::ostream& out) {
    const FockResult res = evolve_fock(job.config, job.detector_mean);
    CsvWriter csv(out, {"q_d", "q_mode", "p_d", "p_mode", "cov_qd_qd", "cov_qd_qm", "cov_qd_pd",
                        "cov_qd_pm", "cov_qm_qm", "cov_qm_pd", "cov_qm_pm", "cov_pd_pd",
                        "cov_pd_pm", "cov_pm_pm", "norm_drift", "max_tail_occupation"});
    csv.row({res.mean(0), res.mean(1), res.mean(2), res.mean(3), res.cov(0, 0), res.cov(0, 1),
             res.cov(0, 2), res.cov(0, 3), res.cov(1, 1), res.cov(1, 2), res.cov(1, 3),
             res.cov(2, 2), res.cov(2, 3), res.cov(3, 3), res.norm_drift,
             res.max_tail_occupation});
}

}  // namespace

void run(const RunConfig& cfg, std::ostream& out, const RunOptions& options) {
    emit_notes(out, cfg);
    if (const auto* job = std::get_if<CommutatorJob>(&cfg.job)) {
        run_commutator(*job, out, options);
    } else if (const auto* job = std::get_if<EnergyDensityJob>(&cfg.job)) {
        run_energy_density(*job, out);
    } else if (const auto* job = std::get_if<TotalEnergyJob>(&cfg.job)) {
        run_total_energy(*job, out);
    } else if (const auto* job = std::get_if<ClassicalJob>(&cfg.job)) {
        run_classical(*job, out);
    } else if (const auto* job = std::get_if<ScenarioJob>(&cfg.job)) {
        run_scenario_job(*job, out);
    } else if (const auto* job = std::get_if<SweepJob>(&cfg.job)) {
        run_sweep_job(*job, out, options);
    } else if (const auto* job = std::get_if<OracleJob>(&cfg.job)) {
        run_oracle(*job, out);
    } else {
        throw std::logic_error("run: unhandled job type");
    }
    out.flush();
}

}  // namespace huygens::cli
