#include "irsa/harness.hpp"

#include "irsa/decoder.hpp"
#include "irsa/errors.hpp"
#include "irsa/frame_graph.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <thread>

namespace irsa {

void DistributionSpec::validate() const
{
    if (name == "ideal_soliton") {
        if (y && *y < 2)
            throw InvalidParameter("ideal_soliton: Y must be >= 2");
    } else if (name == "modified_soliton") {
        if (!y)
            throw InvalidParameter("modified_soliton: Y is required");
        if (*y < 2)
            throw InvalidParameter("modified_soliton: Y must be >= 2");
    } else if (name == "l3") {
        if (y)
            throw InvalidParameter("l3 takes no Y");
    } else {
        throw InvalidParameter("unknown distribution '" + name + "'");
    }
}

DegreeDistribution DistributionSpec::make(int slots) const
{
    validate();
    if (name == "ideal_soliton")
        return ideal_soliton(y.value_or(slots));
    if (name == "modified_soliton")
        return modified_soliton(*y);
    return fixed_l3();
}

std::string DistributionSpec::label() const
{
    if (name == "l3")
        return name;
    return name + "_Y" + (y ? std::to_string(*y) : std::string("M"));
}

int slots_for_load(int messages, double load)
{
    if (!(load > 0.0) || !std::isfinite(load))
        throw ConfigurationError("load G must be positive");
    const double m = std::round(messages / load);
    if (m < 1.0 || m > 1e9)
        throw ConfigurationError("load G gives an unusable slot count");
    return static_cast<int>(m);
}

SweepPoint make_point(const SweepSpec& spec, std::size_t index)
{
    SweepPoint p;
    p.index = index;
    p.load = spec.loads.at(index);
    p.channel.messages = spec.messages;
    p.channel.slots = slots_for_load(spec.messages, p.load);
    p.channel.channel_uses = spec.channel_uses;
    p.channel.n0 = spec.n0;
    p.channel.tilde_es_over_n0 = spec.tilde_es_over_n0;
    p.channel.es_over_n0 = spec.es_over_n0;
    p.channel.hat_rate_bits = spec.hat_rate_bits;
    p.channel.validate();
    p.scheme = spec.scheme;
    p.scheme.validate();
    p.dist = spec.distribution.make(p.channel.slots);
    if (p.dist.max_degree() > p.channel.slots)
        throw ConfigurationError("G = " + std::to_string(p.load) + ": M = " +
                                 std::to_string(p.channel.slots) + " is below the max degree " +
                                 std::to_string(p.dist.max_degree()));
    p.l_avg = p.dist.mean();
    p.r_avg = p.channel.load() * p.l_avg;
    if (spec.trials < 1)
        throw ConfigurationError("trials must be >= 1");
    p.trials = spec.trials;
    p.seed = spec.seed;
    p.threads = spec.threads;
    return p;
}

TrialMetrics run_trial(const SweepPoint& point, int trial)
{
    Rng rng(trial_seed(point.seed, point.index, static_cast<std::uint64_t>(trial)));
    const FrameGraph graph = build_frame(point.channel.messages, point.channel.slots, point.dist, rng);
    const TransmitProfile profile = make_profile(graph, point.scheme, point.channel, point.l_avg);
    const DecodeResult result = decode_frame(graph, profile, point.scheme, point.channel);
    return trial_metrics(result, profile, graph, point.channel);
}

void PointStats::add(const TrialMetrics& t)
{
    throughput.add(t.throughput);
    decoded_fraction.add(t.decoded_fraction);
    eta.add(t.eta);
    eta_max.add(t.eta_max);
    gamma.add(t.gamma);
    gamma_max.add(t.gamma_max);
    energy.add(t.energy_per_user);
    mean_rate.add(t.mean_rate);
}

static int worker_count(int requested, int trials)
{
    int n = requested > 0 ? requested : static_cast<int>(std::thread::hardware_concurrency());
    return std::clamp(n, 1, std::max(1, trials));
}

PointStats run_point(const SweepPoint& point)
{
    // operating-point errors surface here rather than inside a worker
    const double r_avg = point.r_avg;
    if (point.scheme.variant == Scheme::rs)
        rs_assumed_sinr(1, uniform_es(point.channel, point.l_avg), point.channel.n0, *point.scheme.alpha,
                        *point.scheme.beta, r_avg);
    if (point.scheme.variant == Scheme::pa) {
        if (!point.channel.hat_rate_bits)
            throw InvalidParameter("PA requires hat_R_bits");
        pa_bar_es(hat_es_from_rate(*point.channel.hat_rate_bits, point.channel.channel_uses, point.channel.n0),
                  point.channel.n0, point.l_avg, r_avg);
    }

    std::vector<TrialMetrics> trials(static_cast<std::size_t>(point.trials));
    const int workers = worker_count(point.threads, point.trials);
    if (workers == 1) {
        for (int t = 0; t < point.trials; ++t)
            trials[t] = run_trial(point, t);
    } else {
        std::vector<std::thread> pool;
        std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                try {
                    for (int t = w; t < point.trials; t += workers)
                        trials[t] = run_trial(point, t);
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
        for (auto& th : pool)
            th.join();
        for (auto& e : errors)
            if (e)
                std::rethrow_exception(e);
    }

    PointStats stats;
    for (const auto& t : trials)
        stats.add(t);
    return stats;
}

static SweepRecord blank_record(const SweepSpec& spec, std::size_t index)
{
    SweepRecord r;
    r.scheme = std::string(to_string(spec.scheme.variant));
    r.distribution = spec.distribution.label();
    r.messages = spec.messages;
    r.load = spec.loads.at(index);
    r.trials = spec.trials;
    r.seed = spec.seed;
    r.alpha = spec.scheme.alpha;
    r.beta = spec.scheme.beta;
    r.mu = spec.scheme.mu;
    try {
        r.slots = slots_for_load(spec.messages, r.load);
    } catch (const std::exception&) {
        r.slots = 0;
    }
    return r;
}

static void fill_references(SweepRecord& r, const SweepPoint& p)
{
    r.l_avg = p.l_avg;
    if (p.channel.hat_rate_bits) {
        const double hat_es = hat_es_from_rate(*p.channel.hat_rate_bits, p.channel.channel_uses, p.channel.n0);
        const auto refs = gamma_irsa_min(hat_es, p.channel.n0, p.l_avg);
        r.gamma_irsa = refs.gamma_irsa;
        r.gamma_min = refs.gamma_min;
    }
}

std::vector<SweepRecord> run_sweep(const SweepSpec& spec)
{
    std::vector<SweepRecord> out;
    for (std::size_t i = 0; i < spec.loads.size(); ++i) {
        SweepRecord r = blank_record(spec, i);
        try {
            const SweepPoint p = make_point(spec, i);
            fill_references(r, p);
            r.stats = run_point(p);
        } catch (const std::exception& e) {
            r.error = e.what();
        }
        out.push_back(std::move(r));
    }
    return out;
}

static std::vector<double> log_space(double lo, double hi, int n)
{
    std::vector<double> v;
    for (int i = 0; i < n; ++i)
        v.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1)));
    return v;
}

RsTuneOptions RsTuneOptions::defaults()
{
    RsTuneOptions o;
    o.alpha_grid.push_back(0.0);
    for (double a : log_space(0.05, 2.0, 12))
        o.alpha_grid.push_back(a);
    o.beta_grid = log_space(0.5, 2.0, 5);
    return o;
}

namespace {

struct Candidate {
    double alpha;
    double beta;
    PointStats stats;
};

// Larger objective wins; ties go to larger T, then smaller alpha.
bool better(double objective, const Candidate& c, double best_objective, const Candidate& best)
{
    if (objective != best_objective)
        return objective > best_objective;
    const double t = c.stats.throughput.mean();
    const double bt = best.stats.throughput.mean();
    if (t != bt)
        return t > bt;
    return c.alpha < best.alpha;
}

// Grid search over (alpha, beta) at one point. For fixed beta the mean
// throughput cannot increase with alpha (rates only grow, the frames are
// shared), so the alpha scan stops at the first infeasible value.
template <class Objective>
std::optional<Candidate> search_rs(SweepPoint point, const RsTuneOptions& options, double min_throughput,
                                   Objective objective)
{
    std::vector<double> alphas = options.alpha_grid;
    std::sort(alphas.begin(), alphas.end());
    std::optional<Candidate> best;
    double best_objective = 0.0;
    std::optional<PointStats> alpha_zero; // identical for every beta

    for (double beta : options.beta_grid) {
        for (double alpha : alphas) {
            point.scheme.variant = Scheme::rs;
            point.scheme.alpha = alpha;
            point.scheme.beta = beta;
            point.scheme.mu.reset();
            PointStats stats;
            try {
                if (alpha == 0.0 && alpha_zero) {
                    stats = *alpha_zero;
                } else {
                    stats = run_point(point);
                    if (alpha == 0.0)
                        alpha_zero = stats;
                }
            } catch (const TuningParameterError&) {
                break; // this beta is infeasible for every alpha
            }
            if (stats.throughput.mean() < min_throughput)
                break;
            Candidate c{alpha, beta, stats};
            const double obj = objective(stats);
            if (!best || better(obj, c, best_objective, *best)) {
                best = c;
                best_objective = obj;
            }
        }
    }
    return best;
}

} // namespace

std::vector<SweepRecord> tune_rs(const SweepSpec& spec, const RsTuneOptions& options)
{
    if (options.alpha_grid.empty() || options.beta_grid.empty())
        throw InvalidParameter("tuning grids must be nonempty");
    SweepSpec rs_spec = spec;
    rs_spec.scheme.variant = Scheme::rs;
    rs_spec.scheme.alpha = options.alpha_grid.front();
    rs_spec.scheme.beta = options.beta_grid.front();
    rs_spec.scheme.mu.reset();

    std::vector<SweepRecord> out;
    for (std::size_t i = 0; i < spec.loads.size(); ++i) {
        SweepRecord r = blank_record(rs_spec, i);
        r.alpha.reset();
        r.beta.reset();
        try {
            const SweepPoint p = make_point(rs_spec, i);
            fill_references(r, p);
            const double target =
                options.throughput_fraction * std::min(p.load, options.throughput_cap.value_or(p.load));
            auto best = search_rs(p, options, target, [](const PointStats& s) { return s.eta.mean(); });
            if (!best) {
                r.error = "no feasible (alpha, beta) reaches mean T >= " + std::to_string(target);
            } else {
                r.alpha = best->alpha;
                r.beta = best->beta;
                r.stats = best->stats;
            }
        } catch (const std::exception& e) {
            r.error = e.what();
        }
        out.push_back(std::move(r));
    }
    return out;
}

MuTuneResult tune_mu(const SweepPoint& point, const MuTuneOptions& options)
{
    if (!(options.resolution > 0.0) || !(options.mu_max >= 1.0))
        throw InvalidParameter("mu tuning needs resolution > 0 and mu_max >= 1");
    SweepPoint p = point;
    p.scheme.variant = Scheme::pa;
    p.scheme.alpha.reset();
    p.scheme.beta.reset();

    const auto steps = static_cast<long>(std::floor((options.mu_max - 1.0) / options.resolution + 1e-9));
    auto mu_at = [&](long k) { return 1.0 + static_cast<double>(k) * options.resolution; };
    auto evaluate = [&](long k) {
        p.scheme.mu = mu_at(k);
        return run_point(p);
    };
    auto meets = [&](const PointStats& s) {
        return s.decoded_fraction.mean() >= options.target_fraction;
    };

    MuTuneResult result;
    PointStats top = evaluate(steps);
    if (!meets(top)) {
        result.mu = mu_at(steps);
        result.stats = top;
        return result;
    }
    result.feasible = true;
    PointStats low = evaluate(0);
    if (meets(low)) {
        result.mu = mu_at(0);
        result.stats = low;
        return result;
    }
    long lo = 0;       // fails
    long hi = steps;   // meets
    PointStats hi_stats = top;
    while (hi - lo > 1) {
        const long mid = lo + (hi - lo) / 2;
        PointStats s = evaluate(mid);
        if (meets(s)) {
            hi = mid;
            hi_stats = s;
        } else {
            lo = mid;
        }
    }
    result.mu = mu_at(hi);
    result.stats = hi_stats;
    return result;
}

std::vector<SweepRecord> tune_mu_sweep(const SweepSpec& spec, const MuTuneOptions& options)
{
    SweepSpec pa_spec = spec;
    pa_spec.scheme.variant = Scheme::pa;
    pa_spec.scheme.alpha.reset();
    pa_spec.scheme.beta.reset();
    pa_spec.scheme.mu = 1.0;

    std::vector<SweepRecord> out;
    for (std::size_t i = 0; i < spec.loads.size(); ++i) {
        SweepRecord r = blank_record(pa_spec, i);
        r.mu.reset();
        try {
            const SweepPoint p = make_point(pa_spec, i);
            fill_references(r, p);
            const MuTuneResult t = tune_mu(p, options);
            r.mu = t.mu;
            r.stats = t.stats;
            if (!t.feasible)
                r.error = "no mu <= " + std::to_string(options.mu_max) + " decodes a fraction >= " +
                          std::to_string(options.target_fraction);
        } catch (const std::exception& e) {
            r.error = e.what();
        }
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<CompareRow> compare_rs_pa(const SweepSpec& spec, const CompareOptions& options)
{
    std::vector<CompareRow> rows;
    for (std::size_t e = 0; e < options.energy_grid_db.size(); ++e) {
        CompareRow row;
        row.energy_db = options.energy_grid_db[e];
        try {
            SweepSpec base = spec;
            base.loads = {options.load};
            base.tilde_es_over_n0.reset();
            base.hat_rate_bits.reset();
            base.scheme = SchemeConfig{Scheme::rs, 0.0, 1.0, std::nullopt, spec.scheme.rmax_includes_one};
            // l_avg does not depend on the energy, so resolve once for it
            base.es_over_n0 = 1.0;
            SweepPoint p = make_point(base, 0);
            p.index = e;
            row.es_over_n0 = from_db(row.energy_db) / p.l_avg;
            p.channel.es_over_n0 = row.es_over_n0;

            auto best = search_rs(p, options.rs, options.min_throughput,
                                  [](const PointStats& s) { return s.mean_rate.mean(); });
            if (!best) {
                row.error = "RS: no feasible (alpha, beta)";
                rows.push_back(row);
                continue;
            }
            row.rs_feasible = true;
            row.alpha = best->alpha;
            row.beta = best->beta;
            row.rs_rate = best->stats.mean_rate.mean();
            row.rs_throughput = best->stats.throughput.mean();

            const double hat_es = hat_es_from_rate(row.rs_rate, p.channel.channel_uses, p.channel.n0);
            row.irsa_energy_db = to_db(gamma_irsa_min(hat_es, p.channel.n0, p.l_avg).gamma_irsa);

            SweepPoint pa = p;
            pa.channel.es_over_n0.reset();
            pa.channel.hat_rate_bits = row.rs_rate;
            MuTuneOptions mu_opts = options.pa;
            mu_opts.target_fraction = options.min_throughput * p.channel.slots / p.channel.messages;
            if (mu_opts.target_fraction > 1.0) {
                row.error = "PA: throughput target exceeds K/M";
            } else {
                const MuTuneResult t = tune_mu(pa, mu_opts);
                row.pa_feasible = t.feasible;
                row.mu = t.mu;
                row.pa_throughput = t.stats.throughput.mean();
                row.pa_energy_db = to_db(gamma_pa_analytic(t.mu, hat_es, p.channel.n0, p.l_avg, p.r_avg));
                if (!t.feasible)
                    row.error = "PA: no mu <= " + std::to_string(mu_opts.mu_max) + " reaches the throughput target";
            }
        } catch (const std::exception& ex) {
            row.error = ex.what();
        }
        rows.push_back(row);
    }
    return rows;
}

} // namespace irsa
