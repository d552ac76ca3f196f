#include "commsim/hd_reduction.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "commsim/errors.hpp"

namespace commsim {

double Schedule::sum() const {
    double s = 0.0;
    for (double d : deltas) s += d;
    return s;
}

void Schedule::validate() const {
    if (!(shrink > 0.0 && shrink < 1.0)) throw InvariantError("Schedule: shrink in (0,1)");
    if (base_cutoff < 1) throw InvariantError("Schedule: base cutoff >= 1");
    for (double d : deltas) {
        if (!(d > 0.0 && d < 1.0)) throw InvariantError("Schedule: every delta in (0,1)");
    }
    if (sum() > 0.1 + 1e-12) throw InvariantError("Schedule: sum of deltas exceeds 1/10");
}

int iteration_bound(int k) {
    if (k < 1) throw std::invalid_argument("iteration_bound: k >= 1 required");
    if (k == 1) return 0;
    return (int)std::ceil(std::log((double)k) / std::log(10.0 / 9.0));
}

Schedule default_schedule(int k, ScheduleFlavor flavor) {
    if (k < 1) throw std::invalid_argument("default_schedule: k >= 1 required");
    Schedule s;
    s.rounds = iteration_bound(k);
    int count = s.rounds + 1;
    s.deltas.resize((std::size_t)count);
    if (flavor == ScheduleFlavor::geometric) {
        for (int i = 0; i < count; ++i) s.deltas[(std::size_t)i] = std::pow(s.shrink, i) / 200.0;
    } else {
        // Uniform budget; widen the denominator when R+1 equal shares of
        // 1/(11R) overshoot the 1/10 cap.
        int den = 11 * std::max(1, s.rounds);
        if ((double)count / den > 0.1) den = 11 * count;
        for (int i = 0; i < count; ++i) s.deltas[(std::size_t)i] = 1.0 / den;
    }
    s.validate();
    return s;
}

std::vector<std::vector<std::uint32_t>> random_partition(std::span<const std::uint32_t> indices,
                                                         int parts, SharedRandomness& rng) {
    if (parts < 1) throw std::invalid_argument("random_partition: parts >= 1 required");
    std::vector<std::vector<std::uint32_t>> cells((std::size_t)parts);
    for (auto idx : indices) {
        cells[rng.below((std::uint32_t)parts)].push_back(idx);
    }
    return cells;
}

std::string ReductionTrace::to_json_lines() const {
    std::string out;
    char buf[256];
    for (const auto& it : iterations) {
        std::snprintf(buf, sizeof buf,
                      "{\"ell_before\":%d,\"ell_after\":%d,\"active\":%llu,\"singles\":%d,"
                      "\"weight_sum\":%d,\"halt\":\"%c\",\"outside_diffs\":%llu,\"delta\":%.17g}\n",
                      it.ell_before, it.ell_after, (unsigned long long)it.active_size, it.singles,
                      it.weight_sum, it.halt, (unsigned long long)it.outside_diffs, it.delta);
        out += buf;
    }
    std::snprintf(buf, sizeof buf,
                  "{\"loop_count\":%d,\"outcome\":\"%c\",\"final_ell\":%d,\"final_active\":%llu}\n",
                  loop_count, outcome, final_ell, (unsigned long long)final_active);
    out += buf;
    return out;
}

namespace {

BitString gather(const BitString& x, std::span<const std::uint32_t> idx) {
    BitString out(idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i) out.set(i, x.get(idx[i]));
    return out;
}

}  // namespace

ReductionResult reduce_hdk(const BitString& x, const BitString& y, int k,
                           const Schedule& schedule, ReductionMode mode,
                           const SubprotocolConfig& cfg, SharedRandomness& rng, CostMeter& meter) {
    if (k < 1) throw std::invalid_argument("reduce_hdk: k >= 1 required");
    if (x.size() != y.size()) throw std::invalid_argument("reduce_hdk: length mismatch");
    schedule.validate();
    cfg.validate();

    const std::size_t total_dist = exact_hamming(x, y);  // instrumentation only
    const int max_loops = iteration_bound(k);

    ReductionResult res;
    std::vector<std::uint32_t> active(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) active[i] = (std::uint32_t)i;
    int ell = k;
    std::size_t j = 0;

    while (ell > schedule.base_cutoff) {
        if (j >= schedule.deltas.size()) {
            throw ConfigError("reduce_hdk: schedule too short for the iterations performed");
        }
        double delta_j = schedule.deltas[j];
        IterationRecord rec;
        rec.ell_before = ell;
        rec.active_size = active.size();
        rec.delta = delta_j;

        int cells_n = 4 * ell;
        auto cells = random_partition(active, cells_n, rng);
        std::vector<BitString> us((std::size_t)cells_n), vs((std::size_t)cells_n);
        for (int i = 0; i < cells_n; ++i) {
            us[(std::size_t)i] = gather(x, cells[(std::size_t)i]);
            vs[(std::size_t)i] = gather(y, cells[(std::size_t)i]);
        }

        // w_i in {0, 1, 2}: the cell's distance, exact when it is 0 or 1.
        std::vector<int> w((std::size_t)cells_n, 2);
        if (mode == ReductionMode::oracle) {
            for (int i = 0; i < cells_n; ++i) {
                w[(std::size_t)i] =
                    (int)std::min<std::size_t>(2, exact_hamming(us[(std::size_t)i],
                                                                vs[(std::size_t)i]));
            }
        } else {
            auto eqf = eq_tensor(us, vs, delta_j, cfg, rng, meter);
            auto hdf = hd1_tensor(us, vs, delta_j, cfg, rng, meter);
            for (int i = 0; i < cells_n; ++i) {
                if (eqf[(std::size_t)i]) {
                    w[(std::size_t)i] = 0;
                } else if (hdf[(std::size_t)i]) {
                    w[(std::size_t)i] = 1;
                }
            }
        }

        int wsum = 0, singles = 0;
        for (int v : w) {
            wsum += v;
            singles += v == 1;
        }
        rec.weight_sum = wsum;
        rec.singles = singles;
        ++res.trace.loop_count;
        if (res.trace.loop_count > max_loops) {
            throw InvariantError("reduce_hdk: loop count exceeded ceil(log_{10/9} k)");
        }

        if (wsum > ell) {  // more differences than the remaining budget
            rec.halt = '0';
            rec.ell_after = ell;
            rec.outside_diffs = total_dist - exact_hamming(gather(x, active), gather(y, active));
            res.trace.iterations.push_back(rec);
            res.trace.outcome = '0';
            res.trace.final_ell = ell;
            res.trace.final_active = active.size();
            res.accepted = false;
            return res;
        }
        if (10 * singles < ell) {  // exact rational comparison of s < ell/10
            rec.halt = '1';
            rec.ell_after = ell;
            rec.outside_diffs = total_dist - exact_hamming(gather(x, active), gather(y, active));
            res.trace.iterations.push_back(rec);
            res.trace.outcome = '1';
            res.trace.final_ell = ell;
            res.trace.final_active = active.size();
            res.accepted = true;
            return res;
        }

        std::vector<std::uint32_t> next;
        for (int i = 0; i < cells_n; ++i) {
            if (w[(std::size_t)i] == 2) {
                next.insert(next.end(), cells[(std::size_t)i].begin(), cells[(std::size_t)i].end());
            }
        }
        active = std::move(next);
        if (singles > ell) throw InvariantError("reduce_hdk: measured singles exceed ell");
        ell -= singles;
        ++j;

        rec.ell_after = ell;
        rec.outside_diffs = total_dist - exact_hamming(gather(x, active), gather(y, active));
        res.trace.iterations.push_back(rec);
    }

    BitString xt = gather(x, active), yt = gather(y, active);
    res.accepted = mode == ReductionMode::oracle
                       ? exact_hamming(xt, yt) <= (std::size_t)ell
                       : hd_small(xt, yt, ell, schedule.base_delta, cfg, rng, meter);
    res.trace.outcome = 'b';
    res.trace.final_ell = ell;
    res.trace.final_active = active.size();
    return res;
}

double haltone_tail(int ell, std::uint64_t trials, SharedRandomness& rng) {
    if (ell < 1) throw std::invalid_argument("haltone_tail: ell >= 1 required");
    if (trials < 1) throw std::invalid_argument("haltone_tail: trials >= 1 required");
    const int buckets = 4 * ell;
    std::vector<std::uint8_t> seen((std::size_t)buckets);
    std::uint64_t hits = 0;
    for (std::uint64_t t = 0; t < trials; ++t) {
        std::fill(seen.begin(), seen.end(), 0);
        int unique = 0;
        for (int i = 0; i < ell; ++i) {
            auto c = rng.below((std::uint32_t)buckets);
            unique += !seen[c];
            seen[c] = 1;
        }
        hits += 10 * unique <= 6 * ell;  // unique <= 0.6 ell, exactly
    }
    return (double)hits / (double)trials;
}

}  // namespace commsim
