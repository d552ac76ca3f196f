#include "commsim/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <memory>
#include <thread>

#include <json.hpp>

#include "commsim/errors.hpp"

namespace commsim {

using nlohmann::json;

namespace {

constexpr const char* kSchemaReport = "commsim.report.v1";
constexpr const char* kSchemaCompare = "commsim.compare.v1";
constexpr const char* kSchemaSubproto = "commsim.subproto.v1";

int thread_count(int requested) {
    if (requested > 0) return requested;
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : (int)hw;
}

struct Agg {
    std::uint64_t trials = 0, errors = 0, violations = 0;
    std::uint64_t bits_min = UINT64_MAX, bits_max = 0, bits_sum = 0;
    std::uint64_t good_sum = 0, bad_sum = 0, mistakes_sum = 0;

    void add_bits(std::uint64_t b) {
        bits_min = std::min(bits_min, b);
        bits_max = std::max(bits_max, b);
        bits_sum += b;
    }
    void merge(const Agg& o) {
        trials += o.trials;
        errors += o.errors;
        violations += o.violations;
        bits_min = std::min(bits_min, o.bits_min);
        bits_max = std::max(bits_max, o.bits_max);
        bits_sum += o.bits_sum;
        good_sum += o.good_sum;
        bad_sum += o.bad_sum;
        mistakes_sum += o.mistakes_sum;
    }
};

FamilyStats to_stats(const std::string& name, const Agg& a) {
    FamilyStats f;
    f.name = name;
    f.trials = a.trials;
    f.errors = a.errors;
    f.violations = a.violations;
    f.error_rate = a.trials ? (double)a.errors / (double)a.trials : 0.0;
    f.wilson99 = wilson_interval(a.errors, a.trials);
    f.bits_min = a.trials ? a.bits_min : 0;
    f.bits_max = a.bits_max;
    f.bits_mean = a.trials ? (double)a.bits_sum / (double)a.trials : 0.0;
    f.good_mean = a.trials ? (double)a.good_sum / (double)a.trials : 0.0;
    f.bad_mean = a.trials ? (double)a.bad_sum / (double)a.trials : 0.0;
    f.mistakes_mean = a.trials ? (double)a.mistakes_sum / (double)a.trials : 0.0;
    return f;
}

// Input generator: fills (x, y) for the given family index.
using PairGen = std::function<void(std::size_t family, BitString& x, BitString& y,
                                   SharedRandomness& rng)>;

struct Workload {
    ProtocolTree tree;
    std::vector<std::string> families;
    PairGen gen;
    std::function<Label(const BitString&, const BitString&)> exact;
};

void flip_distinct(BitString& y, std::size_t lo, std::size_t hi, std::size_t d,
                   SharedRandomness& rng) {
    // d distinct positions in [lo, hi)
    std::vector<std::size_t> picked;
    picked.reserve(d);
    while (picked.size() < d) {
        std::size_t p = lo + rng.below((std::uint32_t)(hi - lo));
        if (std::find(picked.begin(), picked.end(), p) == picked.end()) {
            picked.push_back(p);
            y.flip(p);
        }
    }
}

}  // namespace

void random_pair_at_distance(BitString& x, BitString& y, std::size_t n, std::size_t d,
                             SharedRandomness& rng) {
    if (d > n) throw std::invalid_argument("random_pair_at_distance: d > n");
    x = BitString::random(n, rng);
    y = x;
    flip_distinct(y, 0, n, d, rng);
}

void ExperimentConfig::validate() const {
    if (trials < 1) throw ConfigError("config: trials >= 1 required");
    if (!(delta > 0.0 && delta < 0.5)) throw ConfigError("config: delta in (0, 1/2) required");
    if (n < 1) throw ConfigError("config: n >= 1 required");
    if (k < 1) throw ConfigError("config: k >= 1 required");
    if (variant != "noisy" && variant != "naive" && variant != "hdreduce") {
        throw ConfigError("config: unknown variant '" + variant + "'");
    }
    if (mode != "rand" && mode != "oracle") throw ConfigError("config: mode is rand|oracle");
    if (schedule != "t2" && schedule != "t5") throw ConfigError("config: schedule is t2|t5");
}

TreeGraph workload_graph(const ExperimentConfig& config) {
    SharedRandomness rng(SharedRandomness::mix(config.seed, 0x6772617068ull));  // graph stream
    return TreeGraph::random((std::uint32_t)config.n, rng);
}

ProtocolTree build_workload_tree(const ExperimentConfig& config) {
    if (config.workload == "adj-tree") return adjacency_tree(workload_graph(config));
    if (config.workload == "gt") return greater_than_tree(config.n);
    if (config.workload == "hd1-bsearch") return hd1_bsearch_tree(config.n);
    if (config.workload == "hd1-tensor") return hd1_tensor_tree(config.n, config.k);
    throw ConfigError("unknown workload '" + config.workload + "'");
}

namespace {

Workload make_tree_workload(const ExperimentConfig& config) {
    Workload w;
    const std::size_t n = (std::size_t)config.n;
    bool fixed_dist = config.distribution.rfind("dist:", 0) == 0;
    std::size_t fixed_d = fixed_dist ? (std::size_t)std::stoul(config.distribution.substr(5)) : 0;

    if (config.workload == "hd1-bsearch") {
        w.tree = hd1_bsearch_tree(config.n);
        w.exact = [n](const BitString& x, const BitString& y) {
            return Label::scalar(exact_hamming(x, y) == 1);
        };
        if (fixed_dist) {
            w.families = {config.distribution};
            w.gen = [n, fixed_d](std::size_t, BitString& x, BitString& y, SharedRandomness& rng) {
                random_pair_at_distance(x, y, n, fixed_d, rng);
            };
        } else if (config.distribution == "uniform") {
            w.families = {"uniform"};
            w.gen = [n](std::size_t, BitString& x, BitString& y, SharedRandomness& rng) {
                x = BitString::random(n, rng);
                y = BitString::random(n, rng);
            };
        } else {
            w.families = {"dist0", "dist1", "dist1-edge", "dist2-split", "dist3", "uniform"};
            w.gen = [n](std::size_t f, BitString& x, BitString& y, SharedRandomness& rng) {
                switch (f) {
                    case 0: random_pair_at_distance(x, y, n, 0, rng); break;
                    case 1: random_pair_at_distance(x, y, n, 1, rng); break;
                    case 2:
                        x = BitString::random(n, rng);
                        y = x;
                        y.flip(0);
                        break;
                    case 3:
                        x = BitString::random(n, rng);
                        y = x;
                        flip_distinct(y, 0, n / 2, 1, rng);
                        flip_distinct(y, n / 2, n, 1, rng);
                        break;
                    case 4: random_pair_at_distance(x, y, n, std::min<std::size_t>(3, n), rng); break;
                    default:
                        x = BitString::random(n, rng);
                        y = BitString::random(n, rng);
                }
            };
        }
        return w;
    }

    if (config.workload == "hd1-tensor") {
        w.tree = hd1_tensor_tree(config.n, config.k);
        const std::size_t k = (std::size_t)config.k;
        w.exact = [n, k](const BitString& x, const BitString& y) {
            Label out;
            for (std::size_t c = 0; c < k; ++c) {
                std::size_t diff = 0;
                for (std::size_t i = c * n; i < (c + 1) * n; ++i) {
                    diff += x.get(i) != y.get(i);
                }
                out.append(Label::scalar(diff == 1));
            }
            return out;
        };
        if (config.distribution == "uniform") {
            w.families = {"uniform"};
        } else {
            w.families = {"all-dist1-edge", "cycle-dists", "all-dist0", "uniform"};
        }
        bool uniform_only = config.distribution == "uniform";
        w.gen = [n, k, uniform_only](std::size_t f, BitString& x, BitString& y,
                                     SharedRandomness& rng) {
            if (uniform_only) f = 3;
            x = BitString::random(n * k, rng);
            y = x;
            switch (f) {
                case 0:
                    for (std::size_t c = 0; c < k; ++c) y.flip(c * n);
                    break;
                case 1:
                    for (std::size_t c = 0; c < k; ++c) {
                        flip_distinct(y, c * n, (c + 1) * n, std::min<std::size_t>(c % 4, n), rng);
                    }
                    break;
                case 2: break;  // equal blocks
                default: y = BitString::random(n * k, rng);
            }
        };
        return w;
    }

    if (config.workload == "gt") {
        w.tree = greater_than_tree(config.n);
        w.exact = [](const BitString& x, const BitString& y) {
            return Label::scalar(greater_than_exact(x, y));
        };
        w.families = {"equal", "lsb-diff", "msb-diff", "uniform"};
        w.gen = [n](std::size_t f, BitString& x, BitString& y, SharedRandomness& rng) {
            x = BitString::random(n, rng);
            y = x;
            switch (f) {
                case 0: break;
                case 1: y.flip(n - 1); break;
                case 2: y.flip(0); break;
                default: y = BitString::random(n, rng);
            }
        };
        return w;
    }

    if (config.workload == "adj-tree") {
        TreeGraph g = workload_graph(config);
        w.tree = adjacency_tree(g);
        const std::size_t width = w.tree.input_bits();
        const std::uint32_t nv = g.size();
        w.exact = [g, width](const BitString& x, const BitString& y) {
            return Label::scalar(
                g.adjacent((std::uint32_t)x.value(0, width), (std::uint32_t)y.value(0, width)));
        };
        w.families = {"parent-child", "self", "uniform"};
        w.gen = [g, nv, width](std::size_t f, BitString& x, BitString& y, SharedRandomness& rng) {
            std::uint32_t u, v;
            if (f == 0 && nv > 1) {
                v = rng.below(nv);
                if (v == g.root()) v = (v + 1) % nv;
                u = g.parent[v];
                if (rng.bit()) std::swap(u, v);
            } else if (f == 1) {
                u = v = rng.below(nv);
            } else {
                u = rng.below(nv);
                v = rng.below(nv);
            }
            x = encode_index(u, width);
            y = encode_index(v, width);
        };
        return w;
    }

    throw ConfigError("unknown workload '" + config.workload + "'");
}

struct HdkFamilies {
    std::vector<std::string> names;
    std::vector<std::size_t> dists;
};

HdkFamilies hdk_families(const ExperimentConfig& config) {
    HdkFamilies f;
    std::size_t n = (std::size_t)config.n, k = (std::size_t)config.k;
    if (config.distribution.rfind("dist:", 0) == 0) {
        std::size_t d = (std::size_t)std::stoul(config.distribution.substr(5));
        f.names = {config.distribution};
        f.dists = {d};
        return f;
    }
    if (config.distribution == "uniform") {
        f.names = {"uniform"};
        f.dists = {SIZE_MAX};
        return f;
    }
    f.names = {"dist0", "dist-k", "dist-k+1", "dist-k+2", "uniform"};
    f.dists = {0, k, std::min(n, k + 1), std::min(n, k + 2), SIZE_MAX};
    return f;
}

}  // namespace

ExperimentReport estimate_error(const ExperimentConfig& config) {
    config.validate();
    auto t0 = std::chrono::steady_clock::now();

    ExperimentReport report;
    report.config = config;

    std::vector<std::string> family_names;
    std::size_t n_families = 0;

    // Per-trial worker, dispatched below by variant.
    std::function<void(std::uint64_t trial, std::size_t family, Agg& agg)> work;

    Workload wl;
    AugmentedTree* aug = nullptr;
    std::unique_ptr<AugmentedTree> aug_storage;
    HdkFamilies hdk;
    Schedule schedule;

    if (config.variant == "hdreduce") {
        hdk = hdk_families(config);
        family_names = hdk.names;
        schedule = default_schedule(std::max(config.k, 2),
                                    config.schedule == "t2" ? ScheduleFlavor::geometric
                                                            : ScheduleFlavor::uniform);
        schedule.base_cutoff = config.base_cutoff;
        schedule.base_delta = config.base_delta;
        ReductionMode mode =
            config.mode == "oracle" ? ReductionMode::oracle : ReductionMode::randomized;
        work = [&, mode](std::uint64_t trial, std::size_t family, Agg& agg) {
            SharedRandomness rng(SharedRandomness::mix(config.seed, trial));
            std::size_t n = (std::size_t)config.n;
            std::size_t d = hdk.dists[family];
            BitString x, y;
            if (d == SIZE_MAX) {
                x = BitString::random(n, rng);
                y = BitString::random(n, rng);
            } else {
                random_pair_at_distance(x, y, n, d, rng);
            }
            CostMeter meter;
            auto res = reduce_hdk(x, y, config.k, schedule, mode, config.subcfg, rng, meter);
            bool truth = exact_hamming(x, y) <= (std::size_t)config.k;
            agg.trials++;
            agg.errors += res.accepted != truth;
            agg.add_bits(meter.bits());
            if (res.trace.loop_count > iteration_bound(config.k)) agg.violations++;
        };
    } else {
        wl = make_tree_workload(config);
        family_names = wl.families;
        if (config.variant == "noisy") {
            NoisyConfig ncfg{config.c_const, config.delta, 0};
            aug_storage = std::make_unique<AugmentedTree>(wl.tree, ncfg);
            aug = aug_storage.get();
            report.formula_bits = noisy_cost(aug->base_depth(), ncfg);
            report.formula_applicable = true;
            int d = aug->base_depth();
            work = [&, d](std::uint64_t trial, std::size_t family, Agg& agg) {
                SharedRandomness rng(SharedRandomness::mix(config.seed, trial));
                BitString x, y;
                wl.gen(family, x, y, rng);
                CostMeter meter;
                NoisyRunStats st = run_noisy(*aug, x, y, rng, meter);
                agg.trials++;
                agg.errors += !st.correct;
                agg.add_bits(meter.bits());
                agg.good_sum += st.good;
                agg.bad_sum += st.bad;
                agg.mistakes_sum += st.mistakes;
                bool viol = st.good + st.bad != st.rounds || st.bad > 2 * st.mistakes ||
                            (st.good > (std::uint64_t)d && !st.correct) ||
                            st.up_move_on_correct_path;
                agg.violations += viol;
            };
        } else {  // naive
            int q = wl.tree.depth();
            int reps = eq_repetitions_for(config.delta / std::max(1, q));
            report.formula_bits = (std::uint64_t)q * (2ull * (std::uint64_t)reps + 1ull);
            report.formula_applicable = true;
            work = [&, reps](std::uint64_t trial, std::size_t family, Agg& agg) {
                SharedRandomness rng(SharedRandomness::mix(config.seed, trial));
                BitString x, y;
                wl.gen(family, x, y, rng);
                CostMeter meter;
                QueryOracle oracle = [&](const QueryDesc& qd, const BitString& xx,
                                         const BitString& yy, std::size_t off, std::size_t width) {
                    const auto& eq = std::get<EqQueryLabeling>(qd);
                    Label a = eq.row.eval(xx, off, width), b = eq.col.eval(yy, off, width);
                    return eq_repeated(a.words(), b.words(), reps, config.subcfg, rng, meter)
                        .accepted;
                };
                Label out = wl.tree.evaluate(x, y, oracle).output;
                agg.trials++;
                agg.errors += !(out == wl.exact(x, y));
                agg.add_bits(meter.bits());
            };
        }
    }
    n_families = family_names.size();

    int threads = thread_count(config.threads);
    std::vector<std::vector<Agg>> partial((std::size_t)threads,
                                          std::vector<Agg>(n_families));
    std::vector<std::exception_ptr> errors((std::size_t)threads);
    std::vector<std::thread> pool;
    std::uint64_t per = (config.trials + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
        std::uint64_t lo = (std::uint64_t)t * per;
        std::uint64_t hi = std::min(config.trials, lo + per);
        pool.emplace_back([&, t, lo, hi]() {
            try {
                for (std::uint64_t trial = lo; trial < hi; ++trial) {
                    std::size_t family = (std::size_t)(trial % n_families);
                    work(trial, family, partial[(std::size_t)t][family]);
                }
            } catch (...) {
                errors[(std::size_t)t] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }

    Agg total;
    for (std::size_t f = 0; f < n_families; ++f) {
        Agg fam;
        for (int t = 0; t < threads; ++t) fam.merge(partial[(std::size_t)t][f]);
        report.families.push_back(to_stats(family_names[f], fam));
        total.merge(fam);
    }
    report.totals = to_stats("total", total);
    report.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                               t0)
                         .count();
    return report;
}

BoostingComparison compare_boosting(const ExperimentConfig& config) {
    config.validate();
    auto t0 = std::chrono::steady_clock::now();

    BoostingComparison cmp;
    cmp.config = config;
    ProtocolTree tree = build_workload_tree(config);
    if (!tree.equality_only()) throw ConfigError("compare: workload must be an Equality tree");
    cmp.depth = tree.depth();
    cmp.naive_reps = eq_repetitions_for(config.delta / std::max(1, cmp.depth));
    cmp.naive_formula_bits =
        (std::uint64_t)cmp.depth * (2ull * (std::uint64_t)cmp.naive_reps + 1ull);
    NoisyConfig ncfg{config.c_const, config.delta, 0};
    cmp.noisy_formula_bits = noisy_cost(cmp.depth, ncfg);
    cmp.ratio = (double)cmp.noisy_formula_bits / (double)cmp.naive_formula_bits;

    ExperimentConfig run = config;
    run.variant = "noisy";
    ExperimentReport noisy = estimate_error(run);
    cmp.noisy_measured_max = noisy.totals.bits_max;
    cmp.noisy_error = noisy.totals.error_rate;
    run.variant = "naive";
    ExperimentReport naive = estimate_error(run);
    cmp.naive_measured_max = naive.totals.bits_max;
    cmp.naive_error = naive.totals.error_rate;

    // Tensor-power crossover: smallest k where the walk's bits beat naive
    // boosting on k stacked copies of the single-copy tree.
    ExperimentConfig single = config;
    single.workload = config.workload == "hd1-tensor" ? "hd1-bsearch" : config.workload;
    single.k = 1;
    int d1 = build_workload_tree(single).depth();
    for (int kk = 1; kk <= (1 << 20); ++kk) {
        int d = d1 * kk;
        std::uint64_t noisy_bits = noisy_cost(d, ncfg);
        int reps = eq_repetitions_for(config.delta / d);
        std::uint64_t naive_bits = (std::uint64_t)d * (2ull * (std::uint64_t)reps + 1ull);
        if (noisy_bits < naive_bits) {
            cmp.crossover_k = kk;
            break;
        }
    }
    cmp.wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return cmp;
}

SubprotoReport run_subproto(const std::string& proto, int n, int dist, int ell, double delta,
                            const SubprotocolConfig& cfg, std::uint64_t trials,
                            std::uint64_t seed) {
    if (n < 0 || dist < 0 || dist > n) throw ConfigError("subproto: need 0 <= dist <= n");
    if (trials < 1) throw ConfigError("subproto: trials >= 1 required");
    cfg.validate();
    SubprotoReport rep;
    rep.proto = proto;
    rep.n = n;
    rep.dist = dist;
    rep.ell = ell;
    rep.delta = delta;
    rep.trials = trials;

    std::uint64_t bits = 0;
    for (std::uint64_t t = 0; t < trials; ++t) {
        SharedRandomness rng(SharedRandomness::mix(seed, t));
        BitString x, y;
        random_pair_at_distance(x, y, (std::size_t)n, (std::size_t)dist, rng);
        CostMeter meter;
        bool acc;
        if (proto == "eq") {
            acc = eq_once(x, y, cfg, rng, meter).accepted;
        } else if (proto == "eq-batch") {
            acc = eq_batch(x.words(), y.words(), cfg, rng, meter).accepted;
        } else if (proto == "hd1-once") {
            acc = hd1_once(x, y, cfg.hd1_buckets, rng, meter).accepted;
        } else if (proto == "hd1") {
            acc = hd1(x, y, delta, cfg, rng, meter).accepted;
        } else if (proto == "hd-small") {
            acc = hd_small(x, y, ell, delta, cfg, rng, meter);
        } else {
            throw ConfigError("subproto: unknown protocol '" + proto + "'");
        }
        rep.accepts += acc;
        bits = meter.bits();  // oblivious: identical across runs
    }
    rep.bits_per_run = bits;
    rep.accept_rate = (double)rep.accepts / (double)rep.trials;
    rep.wilson99 = wilson_interval(rep.accepts, rep.trials);
    return rep;
}

// --- serialization ---

namespace {

json config_json(const ExperimentConfig& c) {
    return json{{"workload", c.workload}, {"variant", c.variant},   {"n", c.n},
                {"k", c.k},               {"delta", c.delta},       {"c_const", c.c_const},
                {"trials", c.trials},     {"seed", c.seed},         {"mode", c.mode},
                {"schedule", c.schedule}, {"distribution", c.distribution}};
}

json family_json(const FamilyStats& f) {
    return json{{"family", f.name},
                {"trials", f.trials},
                {"errors", f.errors},
                {"error_rate", f.error_rate},
                {"wilson99_lo", f.wilson99.lo},
                {"wilson99_hi", f.wilson99.hi},
                {"bits_min", f.bits_min},
                {"bits_mean", f.bits_mean},
                {"bits_max", f.bits_max},
                {"good_mean", f.good_mean},
                {"bad_mean", f.bad_mean},
                {"mistakes_mean", f.mistakes_mean},
                {"violations", f.violations}};
}

void family_csv(std::string& out, const ExperimentConfig& c, const FamilyStats& f,
                std::uint64_t formula_bits, bool applicable) {
    char buf[512];
    std::snprintf(buf, sizeof buf,
                  "%s,%s,%s,%d,%d,%.17g,%.17g,%llu,%llu,%s,%llu,%llu,%.17g,%.17g,%.17g,%llu,%.17g,"
                  "%llu,%s,%.17g,%.17g,%.17g,%llu\n",
                  kSchemaReport, c.workload.c_str(), c.variant.c_str(), c.n, c.k, c.delta,
                  c.c_const, (unsigned long long)c.trials, (unsigned long long)c.seed,
                  f.name.c_str(), (unsigned long long)f.trials, (unsigned long long)f.errors,
                  f.error_rate, f.wilson99.lo, f.wilson99.hi, (unsigned long long)f.bits_min,
                  f.bits_mean, (unsigned long long)f.bits_max,
                  applicable ? std::to_string(formula_bits).c_str() : "",
                  f.good_mean, f.bad_mean, f.mistakes_mean, (unsigned long long)f.violations);
    out += buf;
}

}  // namespace

std::string ExperimentReport::to_json() const {
    json j{{"schema", kSchemaReport},
           {"config", config_json(config)},
           {"totals", family_json(totals)},
           {"families", json::array()}};
    if (formula_applicable) j["formula_bits"] = formula_bits;
    for (const auto& f : families) j["families"].push_back(family_json(f));
    return j.dump(2) + "\n";
}

std::string ExperimentReport::to_csv() const {
    std::string out =
        "schema,workload,variant,n,k,delta,c_const,trials,seed,family,family_trials,errors,"
        "error_rate,wilson99_lo,wilson99_hi,bits_min,bits_mean,bits_max,formula_bits,good_mean,"
        "bad_mean,mistakes_mean,violations\n";
    for (const auto& f : families) family_csv(out, config, f, formula_bits, formula_applicable);
    family_csv(out, config, totals, formula_bits, formula_applicable);
    return out;
}

std::string BoostingComparison::to_json() const {
    json j{{"schema", kSchemaCompare},
           {"config", config_json(config)},
           {"depth", depth},
           {"naive_reps", naive_reps},
           {"naive_formula_bits", naive_formula_bits},
           {"noisy_formula_bits", noisy_formula_bits},
           {"naive_measured_max", naive_measured_max},
           {"noisy_measured_max", noisy_measured_max},
           {"naive_error", naive_error},
           {"noisy_error", noisy_error},
           {"ratio", ratio},
           {"crossover_k", crossover_k}};
    return j.dump(2) + "\n";
}

std::string BoostingComparison::to_csv() const {
    std::string out =
        "schema,workload,n,k,delta,trials,seed,depth,naive_reps,naive_formula_bits,"
        "noisy_formula_bits,naive_measured_max,noisy_measured_max,naive_error,noisy_error,ratio,"
        "crossover_k\n";
    char buf[512];
    std::snprintf(buf, sizeof buf, "%s,%s,%d,%d,%.17g,%llu,%llu,%d,%d,%llu,%llu,%llu,%llu,%.17g,"
                  "%.17g,%.17g,%d\n",
                  kSchemaCompare, config.workload.c_str(), config.n, config.k, config.delta,
                  (unsigned long long)config.trials, (unsigned long long)config.seed, depth,
                  naive_reps, (unsigned long long)naive_formula_bits,
                  (unsigned long long)noisy_formula_bits, (unsigned long long)naive_measured_max,
                  (unsigned long long)noisy_measured_max, naive_error, noisy_error, ratio,
                  crossover_k);
    out += buf;
    return out;
}

std::string SubprotoReport::to_json() const {
    json j{{"schema", kSchemaSubproto},
           {"proto", proto},
           {"n", n},
           {"dist", dist},
           {"ell", ell},
           {"delta", delta},
           {"trials", trials},
           {"accepts", accepts},
           {"accept_rate", accept_rate},
           {"wilson99_lo", wilson99.lo},
           {"wilson99_hi", wilson99.hi},
           {"bits_per_run", bits_per_run}};
    return j.dump(2) + "\n";
}

std::string SubprotoReport::to_csv() const {
    std::string out =
        "schema,proto,n,dist,ell,delta,trials,accepts,accept_rate,wilson99_lo,wilson99_hi,"
        "bits_per_run\n";
    char buf[384];
    std::snprintf(buf, sizeof buf, "%s,%s,%d,%d,%d,%.17g,%llu,%llu,%.17g,%.17g,%.17g,%llu\n",
                  kSchemaSubproto, proto.c_str(), n, dist, ell, delta,
                  (unsigned long long)trials, (unsigned long long)accepts, accept_rate,
                  wilson99.lo, wilson99.hi, (unsigned long long)bits_per_run);
    out += buf;
    return out;
}

}  // namespace commsim
