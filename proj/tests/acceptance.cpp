// Copyright 2026 The qthermo Authors
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


// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria (capped at 1).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "oracle.hpp"
#include "qthermo/experiment.hpp"
#include "qthermo/sweep.hpp"
#include "qthermo/thermo.hpp"

using namespace qthermo;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kLn2 = std::numbers::ln2;
const double kInf = std::numeric_limits<double>::infinity();

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

int failures = 0;

void report(int id, const char *title, bool ok, const std::string &detail) {
    std::printf("%s [%d] %s: %s\n", ok ? "PASS" : "FAIL", id, title, detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

std::string fmt(const char *format, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, format, args...);
    return buf;
}

double theta_at(int i, int n) { return MeasurementStrength::kMax * i / (n - 1); }

InverseTemperature beta_of(double b) {
    return std::isinf(b) ? InverseTemperature::zero_temperature() : InverseTemperature::from_beta(b);
}

std::vector<double> twenty_betas() {
    std::vector<double> out{kInf, 0.0};
    for (int i = 0; i < 18; ++i) out.push_back(std::pow(10.0, -2.0 + 4.0 * i / 17.0));
    return out;
}

void criterion_1() {
    const auto start = Clock::now();
    const ResultTable t = cmd_fig3(SweepConfig{});
    const double elapsed = seconds_since(start);
    double worst = 0.0;
    const std::size_t col = t.column_index("go_info_nats");
    for (const auto &row : t.rows) worst = std::max(worst, std::abs(row.values[col]));
    const bool ok = t.rows.size() == 33 && t.failed_rows() == 0 && worst <= 1e-9 && elapsed < 1.0;
    report(1, "zero-temperature GO information for |D>", ok,
           fmt("%zu points, max |I| = %.3g (tol 1e-9), %.3f s (limit 1 s)", t.rows.size(), worst, elapsed));
}

void criterion_2() {
    const SignalState d = SignalState::named("D");
    const KrausSet proj = build_kraus(MeasurementStrength(kPi / 8));
    const KrausSet weak = build_kraus(MeasurementStrength(0.0));
    const double f_v = fidelity_pure(kets::v(), post_measurement_state(proj.m[0], d).normalized());
    const double f_h = fidelity_pure(kets::h(), post_measurement_state(proj.m[1], d).normalized());
    const double f_d0 = fidelity_pure(kets::d(), post_measurement_state(weak.m[0], d).normalized());
    const double f_d1 = fidelity_pure(kets::d(), post_measurement_state(weak.m[1], d).normalized());
    const double worst = std::max({std::abs(1 - f_v), std::abs(1 - f_h), std::abs(1 - f_d0), std::abs(1 - f_d1)});
    report(2, "projective and weak limits", worst <= 1e-12,
           fmt("F(psi0,V)=%.15f F(psi1,H)=%.15f F(psi_k,D at theta=0)=%.15f,%.15f; max dev %.3g (tol 1e-12)", f_v,
               f_h, f_d0, f_d1, worst));
}

void criterion_3() {
    double completeness = 0.0, effects = 0.0, circuit = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const MeasurementStrength t(theta_at(i, 1000));
        const KrausSet k = build_kraus(t);
        completeness = std::max(completeness, max_abs_diff(k.e[0] + k.e[1], ComplexMatrix::identity(2)));
        for (int j = 0; j < 2; ++j) {
            effects = std::max(effects, max_abs_diff(k.m[j].dagger() * k.m[j], k.e[j]));
            effects = std::max(effects, max_abs_diff(k.n[j].dagger() * k.n[j], k.e[j]));
        }
        for (MeterPrep prep : {MeterPrep::horizontal, MeterPrep::vertical}) {
            const auto c = kraus_from_circuit(t, prep);
            for (int j = 0; j < 2; ++j) circuit = std::max(circuit, max_abs_diff(c[j].dagger() * c[j], k.e[j]));
        }
    }
    const bool ok = completeness <= 1e-12 && effects <= 1e-12 && circuit <= 1e-12;
    report(3, "completeness and branch consistency", ok,
           fmt("1000 theta points: |E0+E1-I|=%.3g, |M'M-E|,|N'N-E|=%.3g, circuit effects=%.3g (tol 1e-12)",
               completeness, effects, circuit));
}

void criterion_4() {
    const SignalState d = SignalState::named("D");
    double spread = 0.0, routes = 0.0;
    for (double b : twenty_betas()) {
        double lo = kInf, hi = -kInf;
        for (int i = 0; i < 100; ++i) {
            const double s = evaluate(MeasurementStrength(theta_at(i, 100)), beta_of(b), d).s_irr;
            lo = std::min(lo, s);
            hi = std::max(hi, s);
        }
        spread = std::max(spread, hi - lo);
        if (b == 0.0) continue;
        const ThermalMeter m = gibbs(beta_of(b));
        for (int q = 0; q <= 20; ++q) {
            const double p1 = q / 20.0;
            routes = std::max(routes, std::abs(irreversible_entropy(m) - irreversible_entropy_via_work(p1, m)));
        }
    }
    const double at_zero_t = irreversible_entropy(gibbs(InverseTemperature::zero_temperature()));
    const double at_one = irreversible_entropy(gibbs(InverseTemperature::from_beta(1.0)));
    const double reference = oracle::s_irr_definition(1.0, 0.5);
    const bool ok = spread <= 1e-12 && routes <= 1e-12 && at_zero_t == 0.0 && std::abs(at_one - reference) <= 1e-6;
    report(4, "irreversible entropy", ok,
           fmt("theta spread %.3g over 20 betas, route diff %.3g (tol 1e-12); S_irr(T=0)=%g; "
               "S_irr(beta=1)=%.9f vs oracle %.9f (tol 1e-6)",
               spread, routes, at_zero_t, at_one, reference));
}

void criterion_5() {
    const SignalState d = SignalState::named("D");
    const oracle::Mat rho_d = oracle::bloch_state(1, 0, 0);
    const double ref_one = oracle::tilde_information(rho_d, kPi / 8, 1.0).value;
    const double ref_hot = oracle::tilde_information(rho_d, kPi / 8, 0.0).value;
    const KrausSet proj = build_kraus(MeasurementStrength(kPi / 8));
    const double at_one = tilde_information(d, proj, gibbs(InverseTemperature::from_beta(1.0))).value;
    const double at_hot = tilde_information(d, proj, gibbs(InverseTemperature::from_beta(0.0))).value;

    double spread = 0.0, gap_dev = 0.0;
    std::size_t points = 0;
    for (int t = 0; t <= 20; ++t) {
        const double b = t == 0 ? kInf : 1.0 / (0.25 * t);
        double lo = kInf, hi = -kInf;
        for (int i = 0; i < 33; ++i) {
            const ThermoReport r = evaluate(MeasurementStrength(theta_at(i, 33)), beta_of(b), d);
            lo = std::min(lo, r.tilde_info);
            hi = std::max(hi, r.tilde_info);
            gap_dev = std::max(gap_dev, std::abs(r.bound_gap - kLn2));
            ++points;
        }
        spread = std::max(spread, hi - lo);
    }
    const bool ok = std::abs(at_one - ref_one) <= 1e-6 && std::abs(at_hot + kLn2) <= 1e-6 &&
                    std::abs(ref_hot + kLn2) <= 1e-12 && spread <= 1e-9 && gap_dev <= 1e-9;
    report(5, "tilde information oracle values", ok,
           fmt("I~(beta=1)=%.9f vs oracle %.9f, I~(beta=0)=%.9f vs -ln2 (tol 1e-6); theta spread %.3g (tol 1e-9); "
               "max |gap-ln2|=%.3g over %zu points (tol 1e-9)",
               at_one, ref_one, at_hot, spread, gap_dev, points));
}

void criterion_6() {
    const ResultTable t = cmd_fig4(SweepConfig{});
    const std::size_t col = t.column_index("bound_gap_nats");
    double min_gap = kInf;
    std::size_t violations = 0;
    for (const auto &row : t.rows) {
        const double g = row.values[col];
        min_gap = std::min(min_gap, g);
        if (!(g >= 0.0)) ++violations;
    }
    const bool ok = t.rows.size() == 21 * 33 && t.failed_rows() == 0 && violations == 0;
    report(6, "revised balance inequality", ok,
           fmt("%zu grid points (21 temperatures x 33 theta), %zu violations, min gap %.12f", t.rows.size(),
               violations, min_gap));
}

void criterion_7() {
    const GateReport g = cmd_gate_check();
    double table_dev = 0.0, success = 0.0, unitarity = 0.0;
    for (const auto &c : g.checks) {
        if (c.name.rfind("ppbs_table_", 0) == 0) table_dev = std::max(table_dev, c.value);
        if (c.name == "ppbs_success_probability") success = c.value;
        if (c.name == "ppbs_scaled_unitarity") unitarity = c.value;
    }
    const bool ok = table_dev == 0.0 && success <= 1e-12 && unitarity <= 1e-12;
    report(7, "PPBS gate model", ok,
           fmt("table deviation %g (exact), |P-1/9|=%.3g, |(3A)'(3A)-I|=%.3g (tol 1e-12)", table_dev, success,
               unitarity));
}

double shannon_of_counts(const CoincidenceCounts &c) {
    const MeterProbabilities p = probs_from_counts(c);
    return shannon_entropy({p.p_d, p.p_a});
}

void criterion_8() {
    const auto start = Clock::now();
    const SignalState d = SignalState::named("D");

    const ExpectedCounts big = expected_counts(MeasurementStrength(kPi / 16), {1.0, 0.0}, d, 1e6);
    int within = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed)
        if (std::abs(probs_from_counts(sample_counts(big, seed)).p_d - 0.5) <= 0.005) ++within;

    // conditional state of outcome 0 at beta = 1, theta = pi/8
    const ConditionalOutputState cond = conditional_output_state(d, build_kraus(MeasurementStrength(kPi / 8)),
                                                                 gibbs(InverseTemperature::from_beta(1.0)));
    const DensityOperator truth = DensityOperator::state(cond.rho_tilde[0] * (1.0 / cond.probability[0]));
    const EigenSystem eig = hermitian_eigensystem(truth.matrix());
    std::vector<double> fid_mixed, fid_pure;
    const DensityOperator d_state = DensityOperator::state(ComplexMatrix::projector(kets::d()));
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        // Uhlmann fidelity for a qubit: Tr(rho sigma) + 2 sqrt(det rho det sigma)
        const DensityOperator est = reconstruct(simulate_tomography(truth, 100000, seed));
        const double overlap = (est.matrix() * truth.matrix()).trace().real();
        const double det_est = est.spectrum()[0] * est.spectrum()[1];
        const double det_true = eig.values[0] * eig.values[1];
        fid_mixed.push_back(overlap + 2.0 * std::sqrt(std::max(0.0, det_est * det_true)));
        fid_pure.push_back(fidelity_pure(kets::d(), reconstruct(simulate_tomography(d_state, 100000, seed))));
    }
    auto median = [](std::vector<double> v) {
        std::sort(v.begin(), v.end());
        return 0.5 * (v[v.size() / 2 - 1] + v[v.size() / 2]);
    };
    const double med_mixed = median(fid_mixed), med_pure = median(fid_pure);

    const SignalState h = SignalState::named("H");
    const MeasurementStrength theta(kPi / 16);
    const auto small = monte_carlo(shannon_of_counts, expected_counts(theta, {1.0, 0.0}, h, 1e4), 1000, 8);
    const auto large = monte_carlo(shannon_of_counts, expected_counts(theta, {1.0, 0.0}, h, 1e6), 1000, 8);
    const double ratio = small.std_error / large.std_error;

    const double elapsed = seconds_since(start);
    const bool ok = within >= 99 && med_mixed >= 0.999 && med_pure >= 0.999 && ratio >= 10.0 / 1.5 &&
                    ratio <= 10.0 * 1.5 && elapsed < 120.0;
    report(8, "estimators", ok,
           fmt("%d/100 seeds with |p_D-1/2|<=0.005 at n0=1e6; median tomography fidelity %.6f (conditional state) "
               "and %.6f (|D>) at 1e5 shots over 50 seeds; MC std ratio n0=1e4/1e6 = %.3f (want 10 within x1.5); "
               "%.2f s (limit 120 s)",
               within, med_mixed, med_pure, ratio, elapsed));
}

void criterion_9() {
    SweepConfig base;
    for (const auto &[k, v] : std::vector<std::pair<const char *, const char *>>{
             {"mode", "sampled"}, {"theta-steps", "5"}, {"beta-inv", "zero,0.5,2"}, {"resamples", "40"},
             {"n0", "20000"}, {"shots", "2000"}, {"seed", "20260101"}})
        apply_setting(base, k, v);
    std::size_t compared = 0;
    bool identical = true;
    for (auto command : {&cmd_sweep, &cmd_fig3, &cmd_fig4}) {
        for (OutputFormat format : {OutputFormat::csv, OutputFormat::json}) {
            SweepConfig one = base, many = base;
            one.threads = 1;
            many.threads = 4;
            const std::string first = serialize(command(one), format);
            const std::string second = serialize(command(one), format);
            const std::string parallel = serialize(command(many), format);
            identical = identical && first == second && first == parallel;
            compared += 3;
        }
    }
    report(9, "determinism", identical,
           fmt("%zu outputs (sweep/fig3/fig4 x csv/json x {run 1, run 2, 4 threads}) byte-identical: %s", compared,
               identical ? "yes" : "no"));
}

} // namespace

int main() {
    const auto start = Clock::now();
    const std::vector<void (*)()> criteria{criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
                                           criterion_6, criterion_7, criterion_8, criterion_9};
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        try {
            criteria[i]();
        } catch (const std::exception &e) {
            report(static_cast<int>(i + 1), "criterion raised", false, e.what());
        }
    }
    std::printf("%d of %zu criteria failed (%.2f s)\n", failures, criteria.size(), seconds_since(start));
    return failures == 0 ? 0 : 1;
}
