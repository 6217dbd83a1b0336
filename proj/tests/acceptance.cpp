// Acceptance suite: one check per criterion, one pass/fail line each.
// Exit code is the number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "malfare/aggregate.hpp"
#include "malfare/dataset.hpp"
#include "malfare/emm.hpp"
#include "malfare/estimation.hpp"
#include "malfare/inequality.hpp"
#include "malfare/losses.hpp"
#include "malfare/rng.hpp"

using namespace malfare;

namespace {

struct Checker {
    bool ok = true;
    std::string why;

    void require(bool cond, const std::string& msg) {
        if (!cond && ok) {
            ok = false;
            why = msg;
        }
    }
};

SentimentProfile random_profile(Rng& rng, std::size_t max_groups, double lo, double hi) {
    const std::size_t g = 1 + std::size_t(rng.below(max_groups));
    std::vector<double> values(g), weights(g);
    double wsum = 0.0;
    for (std::size_t i = 0; i < g; ++i) {
        values[i] = rng.uniform(lo, hi);
        weights[i] = rng.uniform(0.05, 1.0);
        wsum += weights[i];
    }
    for (double& w : weights) w /= wsum;
    return SentimentProfile(values, weights);
}

// ---- criterion 1: power-mean theorem suite --------------------------------

void criterion_power_mean_theorems(Checker& c) {
    Rng rng(101);
    const std::vector<Power> grid{Power::neg_infinity(), Power(-4.0), Power(-3.0), Power(-2.0),
                                  Power(-1.0), Power(0.0),  Power(1.0),  Power(2.0),
                                  Power(3.0),  Power(4.0),  Power::pos_infinity()};
    const std::vector<Power> convex{Power(1.0), Power(2.0), Power(4.0), Power::pos_infinity()};
    for (int rep = 0; rep < 1000; ++rep) {
        SentimentProfile a = random_profile(rng, 8, 0.0, 5.0);
        std::vector<double> bv(a.size());
        for (double& v : bv) v = rng.uniform(0.0, 5.0);
        SentimentProfile b(bv, a.weights());

        const bool constant = std::all_of(a.values().begin(), a.values().end(),
                                          [&](double v) { return v == a.values()[0]; });
        double prev = -std::numeric_limits<double>::infinity();
        for (const Power& p : grid) {
            const double cur = power_mean(a, p);
            c.require(cur >= prev - 1e-12 * std::max(1.0, std::abs(prev)), "monotonicity");
            if (!constant && prev > 0.0 && std::isfinite(prev))
                c.require(cur - prev > 1e-9 * prev, "strict monotonicity gap");
            prev = cur;
        }

        const double lam = rng.uniform(0.0, 1.0);
        std::vector<double> sum_v(a.size()), diff_v(a.size()), mix_v(a.size());
        double linf = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) {
            sum_v[i] = a.values()[i] + b.values()[i];
            diff_v[i] = std::abs(a.values()[i] - b.values()[i]);
            mix_v[i] = lam * a.values()[i] + (1.0 - lam) * b.values()[i];
            linf = std::max(linf, diff_v[i]);
        }
        SentimentProfile sum_p(sum_v, a.weights()), diff_p(diff_v, a.weights()),
            mix_p(mix_v, a.weights());
        for (const Power& p : convex) {
            const double ma = power_mean(a, p), mb = power_mean(b, p);
            c.require(power_mean(sum_p, p) <= ma + mb + 1e-12, "subadditivity");
            const double mdiff = power_mean(diff_p, p);
            c.require(std::abs(ma - mb) <= mdiff + 1e-12, "contraction (inner)");
            c.require(mdiff <= linf + 1e-12, "contraction (outer)");
            c.require(power_mean(mix_p, p) <= lam * ma + (1.0 - lam) * mb + 1e-12,
                      "convexity for p >= 1");
        }
        for (const Power& p : {Power::neg_infinity(), Power(-2.0), Power(0.0), Power(0.5), Power(1.0)})
            c.require(power_mean(mix_p, p) >=
                          lam * power_mean(a, p) + (1.0 - lam) * power_mean(b, p) - 1e-12,
                      "concavity for p <= 1");
    }
}

// ---- criterion 2: axiom suite ---------------------------------------------

void criterion_axioms(Checker& c) {
    Rng rng(202);
    const std::vector<Power> grid{Power::neg_infinity(), Power(-2.0), Power(0.0), Power(0.5),
                                  Power(1.0), Power(2.0), Power(5.0), Power::pos_infinity()};
    for (int rep = 0; rep < 500; ++rep) {
        SentimentProfile a = random_profile(rng, 6, 0.05, 5.0);
        const std::size_t g = a.size();

        std::vector<std::size_t> perm(g);
        for (std::size_t i = 0; i < g; ++i) perm[i] = i;
        rng.shuffle(perm);
        const double alpha = rng.uniform(0.1, 10.0);

        for (const Power& p : grid) {
            const double base = power_mean(a, p);
            std::vector<double> pv(g), pw(g), scaled(g);
            for (std::size_t i = 0; i < g; ++i) {
                pv[i] = a.values()[perm[i]];
                pw[i] = a.weights()[perm[i]];
                scaled[i] = alpha * a.values()[i];
            }
            c.require(std::abs(power_mean(SentimentProfile(pv, pw), p) - base) <=
                          1e-12 * std::max(1.0, base),
                      "symmetry");
            c.require(std::abs(power_mean(SentimentProfile(scaled, a.weights()), p) -
                               alpha * base) <= 1e-12 * std::max(1.0, alpha * base),
                      "multiplicative linearity");
            c.require(std::abs(power_mean(SentimentProfile(std::vector<double>(g, 1.0),
                                                           a.weights()), p) - 1.0) <= 1e-12,
                      "unit scale");
        }

        // IOUA spot-check on 3-group profiles
        {
            std::vector<double> w{rng.uniform(0.1, 1.0), rng.uniform(0.1, 1.0), rng.uniform(0.1, 1.0)};
            const double wsum = w[0] + w[1] + w[2];
            for (double& x : w) x /= wsum;
            const double s0 = rng.uniform(0.1, 5.0), s1 = rng.uniform(0.1, 5.0);
            const double t0 = rng.uniform(0.1, 5.0), t1 = rng.uniform(0.1, 5.0);
            const double av = rng.uniform(0.1, 5.0), bv = rng.uniform(0.1, 5.0);
            for (const Power& p : grid) {
                const double ma = power_mean(SentimentProfile({s0, s1, av}, w), p);
                const double mb = power_mean(SentimentProfile({t0, t1, av}, w), p);
                const double na = power_mean(SentimentProfile({s0, s1, bv}, w), p);
                const double nb = power_mean(SentimentProfile({t0, t1, bv}, w), p);
                if (ma < mb - 1e-9) c.require(na <= nb + 1e-9, "IOUA");
                if (mb < ma - 1e-9) c.require(nb <= na + 1e-9, "IOUA");
            }
        }

        // Pigou-Dalton directions under a mean-preserving contraction
        {
            double mu = 0.0;
            for (std::size_t i = 0; i < g; ++i) mu += a.weights()[i] * a.values()[i];
            const double t = rng.uniform(0.0, 1.0);
            std::vector<double> cv(g);
            for (std::size_t i = 0; i < g; ++i) cv[i] = a.values()[i] + t * (mu - a.values()[i]);
            SentimentProfile contracted(cv, a.weights());
            for (const Power& p : {Power::neg_infinity(), Power(-1.0), Power(0.0), Power(0.5), Power(1.0)})
                c.require(power_mean(contracted, p) >= power_mean(a, p) - 1e-12,
                          "Pigou-Dalton (welfare, p <= 1)");
            for (const Power& p : {Power(1.0), Power(2.0), Power(8.0), Power::pos_infinity()})
                c.require(power_mean(contracted, p) <= power_mean(a, p) + 1e-12,
                          "anti-Pigou-Dalton (malfare, p >= 1)");
        }
    }
}

// ---- criterion 3: Atkinson identity ----------------------------------------

void criterion_atkinson(Checker& c) {
    Rng rng(303);
    for (int rep = 0; rep < 500; ++rep) {
        SentimentProfile prof = random_profile(rng, 8, 0.05, 5.0);
        const double p = rng.uniform(-3.0, 1.0);
        const double direct = power_mean(prof, Power(p));
        const double via = welfare_via_atkinson(prof, p);
        const double m1 = power_mean(prof, Power(1.0));
        c.require(std::abs(via - direct) <= 1e-10 * std::max(1.0, m1), "identity tolerance");
    }
}

// ---- criterion 4: bound formulas -------------------------------------------

void criterion_bound_formulas(Checker& c) {
    c.require(std::abs(hoeffding_epsilon(1.0, 2, 0.05, 1000) - 0.046808) <= 1e-6,
              "hoeffding value");
    const std::vector<double> eps = bennett_epsilon(1.0, 1, 0.1, 100, {0.25});
    c.require(std::abs(eps[0] - 0.132372) <= 1e-5, "bennett value");
}

// ---- criterion 5: bracket coverage ------------------------------------------

void criterion_bracket_coverage(Checker& c) {
    const std::vector<double> means{0.2, 0.5, 0.8};
    const std::vector<double> weights{1.0 / 3, 1.0 / 3, 1.0 / 3};
    const long long m = 500;
    const int trials = 2000;
    for (const Power& p : {Power(1.0), Power(2.0), Power::pos_infinity()}) {
        const PowerSpec spec{p, Sense::malfare, true};
        const double truth = ::malfare::malfare(SentimentProfile(means, weights), spec);
        int covered = 0;
        for (int t = 0; t < trials; ++t) {
            Rng rng(mix_seed(505, std::uint64_t(t)));
            std::vector<std::vector<double>> samples(3);
            for (std::size_t i = 0; i < 3; ++i) {
                samples[i].reserve(std::size_t(m));
                for (long long k = 0; k < m; ++k)
                    samples[i].push_back(rng.bernoulli(means[i]) ? 1.0 : 0.0);
            }
            BoundReport rep =
                malfare_bracket(samples, weights, spec, BoundMethod::hoeffding, 0.1, 1.0);
            if (rep.lower <= truth && truth <= rep.upper) ++covered;
        }
        c.require(covered >= 1900,
                  "coverage " + std::to_string(covered) + "/2000 at p=" + p.str());
    }
}

// ---- criterion 6: NSW hardness ----------------------------------------------

void criterion_nsw(Checker& c) {
    c.require(nsw_hardness_bound(0.04, 0.05) == 74, "bound value");
    const double freq = nsw_hardness_simulate(0.04, 74, 100000, 606);
    c.require(freq >= 0.0437 && freq <= 0.0537,
              "simulated frequency " + std::to_string(freq));
}

// ---- criterion 7: subgradient correctness -----------------------------------

void criterion_subgradient(Checker& c) {
    Rng rng(707);
    GroupedDataset ds = make_synthetic("two-gaussians-2group", 80, 7070);
    const std::vector<double> w{0.5, 0.5};
    const double h = 1e-6;
    int accepted = 0;
    while (accepted < 100) {
        std::vector<double> theta(ds.dim);
        for (double& t : theta) t = rng.uniform(-1.5, 1.5);
        bool positive = true;
        for (double r :
             group_risks(std::span<const double>(theta), ds, LossKind::logistic_ce).per_group)
            if (r <= 0.01) positive = false;
        if (!positive) continue;
        for (double pf : {1.0, 2.0, 5.0}) {
            const Power p(pf);
            const std::vector<double> grad =
                emm_subgradient(theta, ds, LossKind::logistic_ce, p, w);
            for (std::size_t j = 0; j < ds.dim; ++j) {
                std::vector<double> tp = theta, tm = theta;
                tp[j] += h;
                tm[j] -= h;
                const double fd = (emm_objective(tp, ds, LossKind::logistic_ce, p, w) -
                                   emm_objective(tm, ds, LossKind::logistic_ce, p, w)) /
                                  (2.0 * h);
                c.require(std::abs(grad[j] - fd) <= 1e-4 * std::max(1.0, std::abs(fd)),
                          "finite-difference mismatch");
            }
        }
        ++accepted;
    }
}

// ---- criterion 8: optimizer gap against the grid oracle ----------------------

void criterion_optimizer_gap(Checker& c) {
    GroupedDataset ds = make_synthetic("two-gaussians-2group", 400, 808);
    const std::vector<double> w{0.5, 0.5};
    const double lambda = 2.0, eps = 0.05;
    const double lambda_h = max_row_norm(ds);
    const double pitch = eps / (4.0 * 1.0 * lambda_h);

    // one sweep over the ball computes hinge risks once, tracking the minimum
    // separately for each p
    const std::vector<Power> ps{Power(1.0), Power(2.0), Power::pos_infinity()};
    std::vector<double> oracle(ps.size(), std::numeric_limits<double>::infinity());
    const long long steps = (long long)std::floor(lambda / pitch);
    for (long long i = -steps; i <= steps; ++i) {
        for (long long j = -steps; j <= steps; ++j) {
            const double a = double(i) * pitch, b = double(j) * pitch;
            if (a * a + b * b > lambda * lambda) continue;
            double acc0 = 0.0, acc1 = 0.0;
            for (std::size_t r = 0; r < ds.rows; ++r) {
                const double margin = ds.features[r * 2] * a + ds.features[r * 2 + 1] * b;
                const double t = 1.0 - ds.labels[r] * margin;
                const double loss = t > 0.0 ? t : 0.0;
                if (ds.group_ids[r] == 0)
                    acc0 += loss;
                else
                    acc1 += loss;
            }
            const double r0 = acc0 / double(ds.group_rows[0].size());
            const double r1 = acc1 / double(ds.group_rows[1].size());
            oracle[0] = std::min(oracle[0], 0.5 * r0 + 0.5 * r1);
            oracle[1] = std::min(oracle[1], std::sqrt(0.5 * r0 * r0 + 0.5 * r1 * r1));
            oracle[2] = std::min(oracle[2], std::max(r0, r1));
        }
    }

    for (std::size_t k = 0; k < ps.size(); ++k) {
        TrainConfig cfg;
        cfg.p = ps[k];
        cfg.weights = w;
        cfg.epsilon = eps;
        cfg.lambda = lambda;
        TrainResult result = train_psg(ds, LossKind::hinge, cfg);
        c.require(result.best_objective <= oracle[k] + eps,
                  "gap " + std::to_string(result.best_objective - oracle[k]) +
                      " at p=" + ps[k].str());
    }
}

// ---- criterion 9: Alg-1 constants --------------------------------------------

void criterion_psg_constants(Checker& c) {
    GroupedDataset ds = make_synthetic("jointly-separable", 40, 909);
    TrainConfig cfg;
    cfg.p = Power(1.0);
    cfg.epsilon = 0.1;
    cfg.lambda = 1.0;  // diam = 2
    cfg.lambda_ell = 1.0;
    cfg.lambda_h = 1.0;
    TrainResult result = train_psg(ds, LossKind::hinge, cfg);
    c.require(result.iterations == 3600, "n = " + std::to_string(result.iterations));
    c.require(result.step_size == 1.0 / 30.0, "alpha != 1/30 exactly");
}

// ---- criterion 10: cover-EMM oracle equivalence ------------------------------

// independent behavior enumeration and risk counting; aggregation reuses
// power_mean so the zero-tolerance comparison is between enumerations
double stump_bruteforce_min(const GroupedDataset& ds, Power p, const std::vector<double>& w) {
    auto pmean = [&](const std::vector<double>& risks) {
        return power_mean(SentimentProfile(risks, w), p);
    };
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < ds.dim; ++j) {
        std::vector<std::size_t> order(ds.rows);
        for (std::size_t i = 0; i < ds.rows; ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return ds.features[a * ds.dim + j] < ds.features[b * ds.dim + j];
        });
        for (std::size_t k = 0; k <= ds.rows; ++k) {
            if (k > 0 && k < ds.rows &&
                ds.features[order[k - 1] * ds.dim + j] == ds.features[order[k] * ds.dim + j])
                continue;
            for (int dir : {+1, -1}) {
                std::vector<double> miss(std::size_t(ds.groups), 0.0);
                for (std::size_t rank = 0; rank < ds.rows; ++rank) {
                    const std::size_t row = order[rank];
                    const double pred = rank < k ? double(-dir) : double(dir);
                    if (ds.labels[row] * pred <= 0.0) miss[std::size_t(ds.group_ids[row])] += 1.0;
                }
                std::vector<double> risks(std::size_t(ds.groups));
                for (std::size_t g = 0; g < risks.size(); ++g)
                    risks[g] = miss[g] / double(ds.group_rows[g].size());
                best = std::min(best, pmean(risks));
            }
        }
    }
    return best;
}

void criterion_cover_oracle(Checker& c) {
    for (int rep = 0; rep < 20; ++rep) {
        Rng rng(mix_seed(1010, std::uint64_t(rep)));
        const std::size_t rows = 40 + rng.below(161);  // <= 200
        const std::size_t dim = 1 + rng.below(3);      // <= 3
        const int groups = 2 + int(rng.below(2));
        std::vector<double> features(rows * dim);
        std::vector<double> labels(rows);
        std::vector<int> gids(rows);
        for (std::size_t i = 0; i < rows; ++i) {
            for (std::size_t j = 0; j < dim; ++j)
                features[i * dim + j] = rng.uniform(-2.0, 2.0);
            labels[i] = rng.bernoulli(0.5) ? 1.0 : -1.0;
            gids[i] = int(i) % groups;  // every group nonempty
        }
        GroupedDataset ds = make_grouped_dataset(features, dim, labels, gids, groups);
        const double eps = 0.3;
        for (const Power& p : {Power(1.0), Power(2.0), Power::pos_infinity()}) {
            CoverTrainResult result = train_cover(ds, p, ds.group_weights, eps, 0.1);
            const double oracle = stump_bruteforce_min(ds, p, ds.group_weights);
            c.require(result.objective == oracle, "objective mismatch (rep " +
                                                      std::to_string(rep) + ", p=" + p.str() + ")");
            c.require(result.gamma == eps / (3.0 * std::sqrt(double(ds.groups))),
                      "gamma formula");
        }
    }
}

// ---- criterion 11: reductions -------------------------------------------------

void criterion_reductions(Checker& c) {
    // (a) g = 1 train_psg matches an independent single-group ERM descent
    {
        GroupedDataset full = make_synthetic("jointly-separable", 120, 1111);
        GroupedDataset pooled = make_grouped_dataset(full.features, full.dim, full.labels,
                                                     std::vector<int>(full.rows, 0), 1);
        TrainConfig cfg;
        cfg.p = Power(1.0);
        cfg.weights = {1.0};
        cfg.epsilon = 0.1;
        cfg.lambda = 1.0;
        TrainResult via_emm = train_psg(pooled, LossKind::hinge, cfg);

        // plain projected subgradient on the pooled hinge risk, direct loops
        const double lambda_h = max_row_norm(pooled);
        const long long n = (long long)std::ceil(std::pow(3.0 * 2.0 * lambda_h / 0.1, 2.0));
        const double alpha = 2.0 / (lambda_h * std::sqrt(double(n)));
        std::vector<double> theta(pooled.dim, 0.0);
        double best = std::numeric_limits<double>::infinity();
        for (long long t = 0; t <= n; ++t) {
            std::vector<double> grad(pooled.dim, 0.0);
            double risk = 0.0;
            for (std::size_t r = 0; r < pooled.rows; ++r) {
                double margin = 0.0;
                for (std::size_t j = 0; j < pooled.dim; ++j)
                    margin += pooled.features[r * pooled.dim + j] * theta[j];
                const double ym = pooled.labels[r] * margin;
                if (1.0 - ym > 0.0) risk += 1.0 - ym;
                if (ym < 1.0)
                    for (std::size_t j = 0; j < pooled.dim; ++j)
                        grad[j] -= pooled.labels[r] * pooled.features[r * pooled.dim + j];
            }
            risk /= double(pooled.rows);
            best = std::min(best, risk);
            if (t == n) break;
            double norm = 0.0;
            for (std::size_t j = 0; j < pooled.dim; ++j) {
                theta[j] -= alpha * grad[j] / double(pooled.rows);
                norm += theta[j] * theta[j];
            }
            norm = std::sqrt(norm);
            if (norm > 1.0)
                for (double& v : theta) v /= norm;
        }
        c.require(std::abs(via_emm.best_objective - best) <= 2.0 * via_emm.eps_opt,
                  "g=1 EMM vs plain ERM gap " + std::to_string(via_emm.best_objective - best));
    }

    // (b) realizable mixture: max group hinge risk <= eps on jointly separable data
    {
        GroupedDataset sep = make_synthetic("jointly-separable", 200, 1112);
        TrainConfig base;
        base.lambda = 2.0;
        MixTrainResult mix = realizable_mix_train(sep, LossKind::hinge, 0.1, 0.05, base);
        const double worst = *std::max_element(mix.group_risks.begin(), mix.group_risks.end());
        c.require(mix.guarantee_met && worst <= 0.1,
                  "max group risk " + std::to_string(worst));
    }

    // (c) conflict-1d: p=1 is one-sided, p=inf balances, confirmed by brute force
    {
        GroupedDataset ds = make_synthetic("conflict-1d", 200, 1113);
        const std::vector<double>& w = ds.group_weights;
        CoverTrainResult util = train_cover(ds, Power(1.0), w, 0.1, 0.1);
        c.require(util.objective == stump_bruteforce_min(ds, Power(1.0), w),
                  "p=1 brute-force mismatch");
        const double lo = *std::min_element(util.group_risks.begin(), util.group_risks.end());
        const double hi = *std::max_element(util.group_risks.begin(), util.group_risks.end());
        c.require(lo == 0.0 && hi == 1.0, "p=1 optimum not one-sided");

        CoverTrainResult egal = train_cover(ds, Power::pos_infinity(), w, 0.1, 0.1);
        c.require(egal.objective == stump_bruteforce_min(ds, Power::pos_infinity(), w),
                  "p=inf brute-force mismatch");
        c.require(egal.objective < 0.7, "p=inf objective not below the one-sided value");
        c.require(std::abs(egal.group_risks[0] - egal.group_risks[1]) < 0.2,
                  "p=inf errors not balanced");
    }
}

// ---- criterion 12: protocol replication ---------------------------------------

void criterion_protocol(Checker& c) {
    GroupedDataset full = make_synthetic("hetero-5group", 600, 1212);
    auto [train, test] = split(full, 0.1, 1212);
    TrainConfig base;
    base.lambda = 2.0;
    base.epsilon = 0.1;
    base.seed = 1212;
    const std::vector<Power> grid{Power(1.0), Power(2.0), Power(4.0),
                                  Power(8.0), Power(16.0), Power(32.0)};
    const std::vector<SweepRow> rows = sweep_p(train, test, LossKind::hinge, grid, base);
    for (std::size_t i = 1; i < rows.size(); ++i)
        c.require(rows[i].train_malfare >= rows[i - 1].train_malfare - 2.0 * rows[i].eps_opt,
                  "train malfare decreased at p=" + rows[i].p.str());
    const double max_at_1 =
        *std::max_element(rows.front().train_risks.begin(), rows.front().train_risks.end());
    const double max_at_32 =
        *std::max_element(rows.back().train_risks.begin(), rows.back().train_risks.end());
    c.require(max_at_32 <= max_at_1, "worst-group risk did not improve: " +
                                         std::to_string(max_at_1) + " -> " +
                                         std::to_string(max_at_32));
}

// ---- criterion 13: determinism -------------------------------------------------

void criterion_determinism(Checker& c) {
    GroupedDataset ds = make_synthetic("two-gaussians-2group", 100, 1313);
    GroupedDataset ds2 = make_synthetic("two-gaussians-2group", 100, 1313);
    c.require(ds.features == ds2.features && ds.labels == ds2.labels, "generator determinism");

    auto [tr1, te1] = split(ds, 0.2, 5);
    auto [tr2, te2] = split(ds2, 0.2, 5);
    c.require(tr1.features == tr2.features && te1.features == te2.features, "split determinism");

    TrainConfig cfg;
    cfg.p = Power(2.0);
    cfg.epsilon = 0.2;
    cfg.lambda = 1.0;
    cfg.seed = 77;
    TrainResult a = train_psg(tr1, LossKind::hinge, cfg);
    TrainResult b = train_psg(tr2, LossKind::hinge, cfg);
    bool traces_equal = a.trace.size() == b.trace.size();
    if (traces_equal)
        for (std::size_t i = 0; i < a.trace.size(); ++i)
            traces_equal = traces_equal && a.trace[i].objective == b.trace[i].objective &&
                           a.trace[i].iter == b.trace[i].iter;
    c.require(traces_equal, "trace not bitwise identical");
    c.require(a.model.theta == b.model.theta, "model not bitwise identical");

    c.require(nsw_hardness_simulate(0.04, 74, 20000, 9) ==
                  nsw_hardness_simulate(0.04, 74, 20000, 9),
              "simulation determinism");

    CoverTrainResult c1 = train_cover(ds, Power::pos_infinity(), ds.group_weights, 0.2, 0.1);
    CoverTrainResult c2 = train_cover(ds2, Power::pos_infinity(), ds2.group_weights, 0.2, 0.1);
    c.require(c1.objective == c2.objective && c1.best.threshold == c2.best.threshold &&
                  c1.best.feature == c2.best.feature && c1.best.direction == c2.best.direction,
              "cover training determinism");
}

struct Criterion {
    int id;
    const char* name;
    std::function<void(Checker&)> fn;
    double budget_seconds;  // 0 = no stated budget
};

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "power-mean theorem suite (1000 profiles)", criterion_power_mean_theorems, 5.0},
        {2, "axiom suite (500 cases)", criterion_axioms, 5.0},
        {3, "Atkinson identity (500 cases)", criterion_atkinson, 0.0},
        {4, "Hoeffding/Bennett formula values", criterion_bound_formulas, 0.0},
        {5, "bracket coverage Monte-Carlo", criterion_bracket_coverage, 30.0},
        {6, "NSW hardness bound + simulation", criterion_nsw, 0.0},
        {7, "subgradient vs central finite differences", criterion_subgradient, 0.0},
        {8, "optimizer gap vs grid oracle", criterion_optimizer_gap, 60.0},
        {9, "Alg-1 constants n=3600, alpha=1/30", criterion_psg_constants, 0.0},
        {10, "cover-EMM oracle equivalence (20 datasets)", criterion_cover_oracle, 0.0},
        {11, "reductions: g=1, realizable mixture, conflict-1d", criterion_reductions, 0.0},
        {12, "protocol replication: sweep p in [1,32]", criterion_protocol, 300.0},
        {13, "determinism under fixed seeds", criterion_determinism, 0.0},
    };

    int failures = 0;
    for (const Criterion& crit : criteria) {
        Checker check;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            crit.fn(check);
        } catch (const std::exception& e) {
            check.require(false, std::string("exception: ") + e.what());
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (crit.budget_seconds > 0.0 && secs > crit.budget_seconds)
            check.require(false, "runtime " + std::to_string(secs) + "s over budget");
        if (check.ok) {
            std::printf("[PASS] %2d. %s (%.2fs)\n", crit.id, crit.name, secs);
        } else {
            std::printf("[FAIL] %2d. %s (%.2fs): %s\n", crit.id, crit.name, secs,
                        check.why.c_str());
            ++failures;
        }
        std::fflush(stdout);
    }
    if (failures == 0)
        std::printf("all %zu criteria passed\n", criteria.size());
    else
        std::printf("%d criteria FAILED\n", failures);
    return failures;
}
