#include "cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "commsim/errors.hpp"
#include "commsim/harness.hpp"
#include "commsim/query_sets.hpp"
#include "commsim/tree_io.hpp"

namespace commsim {

namespace {

void write_out(const std::string& path, const std::string& payload) {
    if (path.empty() || path == "-") {
        std::cout << payload;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot open output file '" + path + "'");
    f << payload;
}

QueryMatrix read_grid(const std::string& path) {
    if (path.empty() || path == "-") return QueryMatrix::from_text(std::cin);
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot open matrix file '" + path + "'");
    return QueryMatrix::from_text(f);
}

struct CommonOpts {
    ExperimentConfig cfg;
    std::string format = "csv";
    std::string out;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool need_n) {
    auto* n = cmd->add_option("--n", o.cfg.n, "input size");
    if (need_n) n->required();
    cmd->add_option("--k", o.cfg.k, "copies / distance bound");
    cmd->add_option("--delta", o.cfg.delta, "target error");
    cmd->add_option("--c-const", o.cfg.c_const, "walk constant C");
    cmd->add_option("--trials", o.cfg.trials, "Monte Carlo trials");
    cmd->add_option("--seed", o.cfg.seed, "base seed");
    cmd->add_option("--mode", o.cfg.mode, "rand|oracle")
        ->check(CLI::IsMember({"rand", "oracle"}));
    cmd->add_option("--threads", o.cfg.threads, "worker threads (0 = auto)");
    cmd->add_option("--dist", o.cfg.distribution, "input family: worst|uniform|dist:<d>");
    cmd->add_option("--format", o.format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--out", o.out, "output path (default stdout)");
}

int finish_report(const ExperimentReport& rep, const CommonOpts& o) {
    write_out(o.out, o.format == "json" ? rep.to_json() : rep.to_csv());
    std::cerr << "wall_ms=" << rep.wall_ms << "\n";
    return rep.totals.violations == 0 ? 0 : 1;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"two-party oracle-protocol simulator"};
    app.require_subcommand(1);

    CommonOpts noisy_o;
    auto* noisy = app.add_subcommand("noisytree", "boosted-walk error/cost estimation");
    noisy->add_option("--workload", noisy_o.cfg.workload,
                      "adj-tree|gt|hd1-bsearch|hd1-tensor");
    add_common(noisy, noisy_o, true);
    std::string per_run_path;
    noisy->add_option("--per-run", per_run_path, "write per-run stats CSV to this path");

    CommonOpts naive_o;
    auto* naive = app.add_subcommand("naive", "per-query boosted simulation");
    naive->add_option("--workload", naive_o.cfg.workload,
                      "adj-tree|gt|hd1-bsearch|hd1-tensor");
    add_common(naive, naive_o, true);

    CommonOpts hdr_o;
    auto* hdr = app.add_subcommand("hdreduce", "distance-k reduction runs");
    hdr->add_option("--schedule", hdr_o.cfg.schedule, "t2|t5")
        ->check(CLI::IsMember({"t2", "t5"}));
    hdr->add_option("--base-cutoff", hdr_o.cfg.base_cutoff, "loop cutoff");
    hdr->add_option("--base-delta", hdr_o.cfg.base_delta, "final check error");
    add_common(hdr, hdr_o, true);
    std::string trace_path;
    hdr->add_option("--trace", trace_path, "write one sample run's trace (JSON lines)");

    CommonOpts cmp_o;
    auto* cmp = app.add_subcommand("compare", "boosted walk vs naive boosting");
    cmp->add_option("--workload", cmp_o.cfg.workload, "Equality-tree workload");
    add_common(cmp, cmp_o, true);

    auto* blocky_cmd = app.add_subcommand("blocky", "Equality-matrix recognition");
    std::string blocky_in;
    blocky_cmd->add_option("--in", blocky_in, "0/1 grid file (default stdin)");

    auto* vc_cmd = app.add_subcommand("vc", "brute-force VC dimension");
    std::string vc_in;
    vc_cmd->add_option("--in", vc_in, "0/1 grid file (default stdin)");

    auto* embed_cmd = app.add_subcommand("embed", "conjunction embedding check");
    std::string embed_in;
    embed_cmd->add_option("--in", embed_in, "0/1 grid file (default stdin)");

    auto* sub = app.add_subcommand("subproto", "single subprotocol accept-rate run");
    std::string proto = "eq";
    int sub_n = 16, sub_dist = 0, sub_ell = 0;
    CommonOpts sub_o;
    sub->add_option("--proto", proto, "eq|eq-batch|hd1-once|hd1|hd-small")->required();
    sub->add_option("--n", sub_n, "input length")->required();
    sub->add_option("--dist", sub_dist, "exact input distance");
    sub->add_option("--ell", sub_ell, "hd-small threshold");
    sub->add_option("--delta", sub_o.cfg.delta, "target error");
    sub->add_option("--trials", sub_o.cfg.trials, "trials");
    sub->add_option("--seed", sub_o.cfg.seed, "seed");
    sub->add_option("--buckets", sub_o.cfg.subcfg.hd1_buckets, "hd1 bucket count");
    sub->add_option("--format", sub_o.format, "csv|json")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--out", sub_o.out, "output path");

    auto* dump = app.add_subcommand("dump-tree", "serialize a workload tree");
    CommonOpts dump_o;
    dump->add_option("--workload", dump_o.cfg.workload, "workload name");
    add_common(dump, dump_o, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;  // --help exits 0, anything malformed is a config error
    }

    try {
        if (noisy->parsed()) {
            noisy_o.cfg.variant = "noisy";
            ExperimentReport rep = estimate_error(noisy_o.cfg);
            if (!per_run_path.empty()) {
                // Re-run a small instrumented sample with the same seeds.
                std::ostringstream rows;
                rows << NoisyRunStats::csv_header() << "\n";
                NoisyConfig ncfg{noisy_o.cfg.c_const, noisy_o.cfg.delta};
                ProtocolTree tree = build_workload_tree(noisy_o.cfg);
                AugmentedTree aug(tree, ncfg);
                bool vertex_domain = noisy_o.cfg.workload == "adj-tree";
                TreeGraph graph;
                if (vertex_domain) graph = workload_graph(noisy_o.cfg);
                std::uint64_t sample = std::min<std::uint64_t>(noisy_o.cfg.trials, 1000);
                for (std::uint64_t t = 0; t < sample; ++t) {
                    SharedRandomness rng(SharedRandomness::mix(noisy_o.cfg.seed, t));
                    BitString x, y;
                    if (vertex_domain) {
                        x = encode_index(rng.below(graph.size()), tree.input_bits());
                        y = encode_index(rng.below(graph.size()), tree.input_bits());
                    } else {
                        x = BitString::random(tree.input_bits(), rng);
                        y = BitString::random(tree.input_bits(), rng);
                    }
                    CostMeter meter;
                    NoisyRunStats st = run_noisy(aug, x, y, rng, meter);
                    rows << st.csv_row(noisy_o.cfg.seed, aug.base_depth(), ncfg) << "\n";
                }
                write_out(per_run_path, rows.str());
            }
            return finish_report(rep, noisy_o);
        }
        if (naive->parsed()) {
            naive_o.cfg.variant = "naive";
            return finish_report(estimate_error(naive_o.cfg), naive_o);
        }
        if (hdr->parsed()) {
            hdr_o.cfg.variant = "hdreduce";
            hdr_o.cfg.workload = "hdk";
            ExperimentReport rep = estimate_error(hdr_o.cfg);
            if (!trace_path.empty()) {
                SharedRandomness rng(SharedRandomness::mix(hdr_o.cfg.seed, 0));
                BitString x, y;
                random_pair_at_distance(x, y, (std::size_t)hdr_o.cfg.n,
                                        (std::size_t)std::min(hdr_o.cfg.k, hdr_o.cfg.n), rng);
                Schedule s = default_schedule(std::max(hdr_o.cfg.k, 2),
                                              hdr_o.cfg.schedule == "t2"
                                                  ? ScheduleFlavor::geometric
                                                  : ScheduleFlavor::uniform);
                s.base_cutoff = hdr_o.cfg.base_cutoff;
                s.base_delta = hdr_o.cfg.base_delta;
                CostMeter meter;
                auto res = reduce_hdk(x, y, hdr_o.cfg.k, s,
                                      hdr_o.cfg.mode == "oracle" ? ReductionMode::oracle
                                                                 : ReductionMode::randomized,
                                      hdr_o.cfg.subcfg, rng, meter);
                write_out(trace_path, res.trace.to_json_lines());
            }
            return finish_report(rep, hdr_o);
        }
        if (cmp->parsed()) {
            BoostingComparison c = compare_boosting(cmp_o.cfg);
            write_out(cmp_o.out, cmp_o.format == "json" ? c.to_json() : c.to_csv());
            std::cerr << "wall_ms=" << c.wall_ms << "\n";
            return 0;
        }
        if (blocky_cmd->parsed()) {
            QueryMatrix m = read_grid(blocky_in);
            auto w = is_blocky(m);
            std::ostringstream os;
            if (w) {
                os << "blocky: yes\nrow-labels:";
                for (auto v : w->row_labels) os << ' ' << v;
                os << "\ncol-labels:";
                for (auto v : w->col_labels) os << ' ' << v;
                os << "\n";
            } else {
                os << "blocky: no\n";
            }
            std::cout << os.str();
            return 0;
        }
        if (vc_cmd->parsed()) {
            std::cout << "vc-dimension: " << vc_dimension(read_grid(vc_in)) << "\n";
            return 0;
        }
        if (embed_cmd->parsed()) {
            QueryMatrix m = read_grid(embed_in);
            if (m.rows() != m.cols()) throw ConfigError("embed: matrix must be square");
            bool ok = nand_embed_verify(m);
            NandEmbedding e = nand_embed(m);
            std::ostringstream os;
            os << "embed-verified: " << (ok ? "yes" : "no") << "\n";
            for (std::size_t i = 0; i < e.row_vectors.size(); ++i) {
                os << "v(" << i << "):";
                for (auto c : e.row_vectors[i]) os << ' ' << (int)c;
                os << "\n";
            }
            for (std::size_t j = 0; j < e.col_vectors.size(); ++j) {
                os << "w(" << j << "):";
                for (auto c : e.col_vectors[j]) os << ' ' << (int)c;
                os << "\n";
            }
            std::cout << os.str();
            return ok ? 0 : 1;
        }
        if (sub->parsed()) {
            SubprotoReport rep = run_subproto(proto, sub_n, sub_dist, sub_ell, sub_o.cfg.delta,
                                              sub_o.cfg.subcfg, sub_o.cfg.trials, sub_o.cfg.seed);
            write_out(sub_o.out, sub_o.format == "json" ? rep.to_json() : rep.to_csv());
            return 0;
        }
        if (dump->parsed()) {
            write_out(dump_o.out, serialize_tree(build_workload_tree(dump_o.cfg)));
            return 0;
        }
    } catch (const ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const std::out_of_range& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const std::logic_error& e) {
        std::cerr << "invariant failure: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

}  // namespace commsim
