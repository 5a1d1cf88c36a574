#include "weylspec/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "weylspec/sampling.hpp"

namespace weylspec {

namespace {

std::string brief(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

double nudge_off_atoms(double x, double direction, const MatrixMeasure& omega) {
  for (int guard = 0; guard < 100; ++guard) {
    const bool near = std::any_of(omega.atoms().begin(), omega.atoms().end(),
                                  [x](const Atom& a) { return std::abs(a.x - x) < 1e-4; });
    if (!near) return x;
    x += direction * 1e-3;
  }
  return x;
}

class Trial {
 public:
  Trial(int index, const HerglotzMatrix& m, const VerifyOptions& opt, Rng& rng)
      : index_(index), m_(m), opt_(opt), rng_(rng) {}

  json run(json& mismatches) {
    const auto& omega = m_.measure();
    const auto [lo, hi] = omega.support_hull();
    const double x0 = random_point_off_atoms(rng_, omega, lo - 1.0, hi + 1.0, 0.02);
    std::uniform_real_distribution<double> reach(0.5, 3.0);
    const double a = nudge_off_atoms(x0 - reach(rng_), -1.0, omega);
    const double b = nudge_off_atoms(x0 + reach(rng_), 1.0, omega);

    json rec;
    rec["trial"] = index_;
    rec["n"] = m_.dim();
    rec["atoms"] = omega.atoms().size();
    rec["x0"] = x0;
    rec["window"] = {a, b};

    instance_ = {{"measure", herglotz_to_json(m_)}, {"x0", x0}, {"window", {a, b}}};
    mismatches_ = &mismatches;

    const auto d = extension_for_point(m_, x0, opt_.tol);
    if (!d) {
      fail("extension_for_point", "T(x0) diverged off the atoms", x0);
      return rec;
    }
    instance_["D"] = matrix_to_json(d->matrix());
    const auto report = classify(m_, *d, a, b, opt_.tol);
    const auto& th = opt_.thresholds;

    json poles = json::array();
    bool found_x0 = false;
    for (const auto& pole : report.poles) {
      poles.push_back({{"x", pole.x}, {"rank", pole.rank}, {"is_max_mult", pole.is_max_mult}});
      if (pole.is_max_mult && std::abs(pole.x - x0) <= th.x_agreement) found_x0 = true;

      const auto ev = max_mult_test(m_, *d, pole.x, opt_.tol);
      if (ev.verdict != pole.is_max_mult) {
        fail("criterion_vs_oracle", "max_mult_test verdict " + std::to_string(ev.verdict) + " but oracle rank " +
                                        std::to_string(pole.rank), pole.x);
      }
      check_limit_mass(*d, pole);
      if (!pole.is_max_mult) continue;
      if (ev.verdict) {
        const Matrix via_t = mass_at_max_mult(m_, *d, pole.x, opt_.tol);
        const double gap = (via_t - pole.mass).norm();
        if (gap > th.mass_agreement) fail("mass_vs_residue", "|T^-1 - residue| = " + brief(gap), pole.x);
      }
      for (int s = 0; s < opt_.d_prime_samples; ++s) {
        const auto dp = random_admissible_d_prime(rng_, *d, th.d_prime_gap);
        const auto via = max_mult_test_via(m_, *d, dp, pole.x, opt_.tol);
        if (!via.verdict) {
          fail("d_prime_criterion", "D' sample " + std::to_string(s) + " rejected: t_finite " +
                                        std::to_string(via.t_finite()) + ", residual " + brief(via.residual),
               pole.x);
        }
      }
    }
    if (!found_x0) fail("x0_not_found", "oracle has no max-multiplicity pole within tolerance of x0", x0);
    rec["poles"] = std::move(poles);
    rec["unresolved"] = report.unresolved;
    rec["ok"] = failures_ == 0;
    return rec;
  }

  int failures() const { return failures_; }

 private:
  void check_limit_mass(const ExtensionParameter& d, const SpectralPole& pole) {
    try {
      const Matrix eps_mass = atom_mass(weyl_function(m_, d, opt_.tol), pole.x, opt_.tol);
      const double gap = (eps_mass - pole.mass).norm();
      if (gap > opt_.thresholds.residue_vs_limit * scale_of(pole.mass)) {
        fail("residue_vs_limit", "|residue - eps mass| = " + brief(gap), pole.x);
      }
    } catch (const NotConvergedError& e) {
      fail("residue_vs_limit", e.what(), pole.x);
    }
  }

  void fail(const std::string& check, const std::string& detail, double x) {
    ++failures_;
    mismatches_->push_back(
        {{"trial", index_}, {"check", check}, {"x", x}, {"detail", detail}, {"instance", instance_}});
  }

  int index_;
  const HerglotzMatrix& m_;
  const VerifyOptions& opt_;
  Rng& rng_;
  json instance_;
  json* mismatches_ = nullptr;
  int failures_ = 0;
};

}  // namespace

VerifyOutcome run_verify(const VerifyOptions& options) {
  if (options.trials < 1) throw ValidationError("verify needs at least one trial");
  if (options.instance && !options.instance->measure().purely_atomic()) {
    throw ValidationError("verify requires a purely atomic measure");
  }
  Rng rng(options.seed);
  json trials = json::array();
  json mismatches = json::array();
  int failures = 0;
  for (int t = 0; t < options.trials; ++t) {
    std::optional<HerglotzMatrix> generated;
    if (!options.instance) {
      std::uniform_int_distribution<int> dim(1, 3);
      std::uniform_int_distribution<int> count(3, 8);
      const int n = dim(rng);
      generated = random_atomic_instance(rng, n, count(rng));
    }
    const HerglotzMatrix& m = options.instance ? *options.instance : *generated;
    Trial trial(t, m, options, rng);
    try {
      trials.push_back(trial.run(mismatches));
      failures += trial.failures();
    } catch (const Error& e) {
      ++failures;
      mismatches.push_back({{"trial", t}, {"check", "exception"}, {"detail", e.what()},
                            {"instance", herglotz_to_json(m)}});
    }
  }
  VerifyOutcome out;
  out.mismatches = failures;
  out.report = {{"seed", options.seed},
                {"trials", options.trials},
                {"mismatch_count", failures},
                {"ok", failures == 0},
                {"results", std::move(trials)},
                {"mismatches", std::move(mismatches)}};
  return out;
}

}  // namespace weylspec
