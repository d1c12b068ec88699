#include "irsa/cli.hpp"

#include "irsa/config.hpp"
#include "irsa/decoder.hpp"
#include "irsa/errors.hpp"
#include "irsa/frame_graph.hpp"
#include "irsa/output.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace irsa {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitInfeasible = 2;

struct RunOptions {
    std::string config_path;
    std::optional<std::string> out_dir;
    std::optional<int> trials;
    std::optional<std::uint64_t> seed;
    std::optional<int> threads;
    bool plot = false;
};

struct DecodeOptions {
    std::string edges;
    std::string scheme;
    std::optional<double> es_over_n0;
    std::optional<double> tilde_es_over_n0;
    std::optional<double> hat_rate_bits;
    std::optional<double> alpha;
    std::optional<double> beta;
    std::optional<double> mu;
    std::optional<double> l_avg;
    int channel_uses = 100;
    double n0 = 1.0;
    bool literal_rmax = false;
};

struct ExportOptions {
    int messages = 300;
    int slots = 375;
    std::string dist = "modified_soliton";
    std::optional<int> y;
    std::uint64_t seed = 0;
    std::string out;
};

ExperimentConfig load_config(const RunOptions& opts, Command command)
{
    std::ifstream in(opts.config_path, std::ios::binary);
    if (!in)
        throw ConfigurationError("cannot read config file " + opts.config_path);
    std::ostringstream text;
    text << in.rdbuf();

    ParseResult parsed = parse_config(text.str());
    std::vector<std::string> errors = parsed.errors;
    ExperimentConfig config;
    if (parsed.config) {
        config = *parsed.config;
        // flags override the file
        config.command = command;
        if (opts.out_dir)
            config.output_dir = *opts.out_dir;
        if (opts.trials)
            config.spec.trials = *opts.trials;
        if (opts.seed)
            config.spec.seed = *opts.seed;
        if (opts.threads)
            config.spec.threads = *opts.threads;
        if (opts.plot)
            config.emit_plot_data = true;
        errors = check_config(config);
    }
    if (!errors.empty()) {
        std::string msg = opts.config_path + ":";
        for (const auto& e : errors)
            msg += "\n  " + e;
        throw ConfigurationError(msg);
    }
    return config;
}

// Flagged points are reported; the run only fails when nothing succeeded.
int report_records(const std::vector<SweepRecord>& records, std::ostream& err)
{
    std::size_t failed = 0;
    for (const auto& r : records) {
        if (!r.error.empty()) {
            ++failed;
            err << "warning: G=" << format_number(r.load) << ": " << r.error << '\n';
        }
    }
    return failed == records.size() ? kExitInfeasible : kExitOk;
}

int write_records(const ExperimentConfig& config, const std::vector<SweepRecord>& records, std::ostream& out,
                  std::ostream& err)
{
    const std::filesystem::path dir = config.output_dir;
    emit_csv(dir / "results.csv", records);
    emit_sidecar(dir / "results.json", config, records);
    out << "wrote " << (dir / "results.csv").string() << '\n';
    if (config.emit_plot_data) {
        std::vector<std::string> warnings;
        const auto files = emit_plot_data(dir / "plot", records, warnings);
        for (const auto& w : warnings)
            err << "warning: " << w << '\n';
        out << "wrote " << files.size() << " plot series to " << (dir / "plot").string() << '\n';
    }
    return report_records(records, err);
}

int cmd_sweep(const RunOptions& opts, std::ostream& out, std::ostream& err)
{
    const ExperimentConfig config = load_config(opts, Command::sweep);
    return write_records(config, run_sweep(config.spec), out, err);
}

int cmd_tune(const RunOptions& opts, std::ostream& out, std::ostream& err)
{
    const ExperimentConfig config = load_config(opts, Command::tune);
    const auto records = config.spec.scheme.variant == Scheme::rs ? tune_rs(config.spec, config.rs_tuning)
                                                                  : tune_mu_sweep(config.spec, config.mu_tuning);
    return write_records(config, records, out, err);
}

int cmd_compare(const RunOptions& opts, std::ostream& out, std::ostream& err)
{
    const ExperimentConfig config = load_config(opts, Command::compare);
    CompareOptions options = config.compare;
    options.rs = config.rs_tuning;
    options.pa = config.mu_tuning;
    const auto rows = compare_rs_pa(config.spec, options);

    const std::filesystem::path dir = config.output_dir;
    emit_compare_csv(dir / "compare.csv", rows);
    out << "wrote " << (dir / "compare.csv").string() << '\n';
    std::size_t failed = 0;
    for (const auto& r : rows) {
        if (!r.error.empty()) {
            ++failed;
            err << "warning: energy " << format_number(r.energy_db) << " dB: " << r.error << '\n';
        }
    }
    return failed == rows.size() ? kExitInfeasible : kExitOk;
}

int cmd_decode_one(const DecodeOptions& opts, std::ostream& out)
{
    std::ifstream in(opts.edges, std::ios::binary);
    if (!in)
        throw ConfigurationError("cannot read edge list " + opts.edges);
    const FrameGraph graph = read_edge_list(in);

    SchemeConfig scheme;
    if (auto v = parse_scheme(opts.scheme))
        scheme.variant = *v;
    else
        throw InvalidParameter("unknown scheme '" + opts.scheme + "'");
    scheme.alpha = opts.alpha;
    scheme.beta = opts.beta;
    scheme.mu = opts.mu;
    scheme.rmax_includes_one = !opts.literal_rmax;
    scheme.validate();

    ChannelConfig cfg;
    cfg.messages = graph.messages();
    cfg.slots = graph.slots();
    cfg.channel_uses = opts.channel_uses;
    cfg.n0 = opts.n0;
    cfg.es_over_n0 = opts.es_over_n0;
    cfg.tilde_es_over_n0 = opts.tilde_es_over_n0;
    cfg.hat_rate_bits = opts.hat_rate_bits;
    cfg.validate();
    if (scheme.variant == Scheme::pa && !cfg.hat_rate_bits)
        throw InvalidParameter("PA requires --hat-r-bits");
    if (scheme.variant != Scheme::pa && !cfg.es_over_n0 && !cfg.tilde_es_over_n0 && !cfg.hat_rate_bits)
        throw InvalidParameter("one of --es-over-n0, --tilde-es-over-n0, --hat-r-bits is required");

    // the graph's own mean degree unless the nominal one is given
    const double l_avg = opts.l_avg.value_or(static_cast<double>(graph.edges()) / graph.messages());
    if (!(l_avg >= 1.0))
        throw InvalidParameter("l_avg must be >= 1");

    const TransmitProfile profile = make_profile(graph, scheme, cfg, l_avg);
    std::vector<DecodeStep> trace;
    const DecodeResult result = decode_frame(graph, profile, scheme, cfg, &trace);

    out << "step\tphase\tmessage\tslot\tsinr\trate\tgenie_rate\n";
    for (const auto& s : trace)
        out << s.step << '\t' << to_string(s.phase) << '\t' << s.message << '\t' << s.slot << '\t'
            << format_number(s.sinr) << '\t' << format_number(s.rate) << '\t' << format_number(s.genie_rate)
            << '\n';
    out << "# decoded " << result.count() << " of " << graph.messages() << '\n';
    return kExitOk;
}

int cmd_export_frame(const ExportOptions& opts, std::ostream& out)
{
    DistributionSpec spec{opts.dist, opts.y};
    if (opts.dist == "modified_soliton" && !opts.y)
        spec.y = 10;
    if (opts.messages < 1 || opts.slots < 1)
        throw InvalidParameter("--messages and --slots must be >= 1");
    const DegreeDistribution dist = spec.make(opts.slots);
    Rng rng(trial_seed(opts.seed, 0, 0));
    const FrameGraph graph = build_frame(opts.messages, opts.slots, dist, rng);
    if (opts.out.empty() || opts.out == "-") {
        write_edge_list(out, graph);
        return kExitOk;
    }
    std::ofstream file(opts.out, std::ios::binary | std::ios::trunc);
    if (!file)
        throw ConfigurationError("cannot write " + opts.out);
    write_edge_list(file, graph);
    return kExitOk;
}

void add_run_options(CLI::App* cmd, RunOptions& opts, bool sweep_flags)
{
    cmd->add_option("--config", opts.config_path, "JSON experiment file")->required();
    cmd->add_option("--out", opts.out_dir, "output directory (overrides output_dir)");
    cmd->add_option("--threads", opts.threads, "worker threads, 0 for all cores")->check(CLI::NonNegativeNumber);
    cmd->add_flag("--plot-data", opts.plot, "also write per-series .dat files");
    if (sweep_flags) {
        cmd->add_option("--trials", opts.trials, "trials per G point")->check(CLI::PositiveNumber);
        cmd->add_option("--seed", opts.seed, "master seed");
    }
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"IRSA / RS-IRSA / PA-IRSA Monte Carlo simulator"};
    app.require_subcommand(1);

    RunOptions sweep_opts, tune_opts, compare_opts;
    auto* sweep = app.add_subcommand("sweep", "Monte Carlo sweep over the G grid");
    add_run_options(sweep, sweep_opts, true);
    auto* tune = app.add_subcommand("tune", "tune alpha/beta (RS) or mu (PA) at every G point");
    add_run_options(tune, tune_opts, true);
    auto* compare = app.add_subcommand("compare", "RS/PA/IRSA energy comparison");
    add_run_options(compare, compare_opts, true);

    DecodeOptions dec;
    auto* decode = app.add_subcommand("decode-one", "decode one frame from an edge list and print the trace");
    decode->add_option("--edges", dec.edges, "edge list file")->required();
    decode->add_option("--scheme", dec.scheme, "IRSA, RS or PA")->required();
    decode->add_option("--es-over-n0", dec.es_over_n0, "E_s/N0 per replica (linear)");
    decode->add_option("--tilde-es-over-n0", dec.tilde_es_over_n0, "reference energy tilde_E_s/N0 (linear)");
    decode->add_option("--hat-r-bits", dec.hat_rate_bits, "target rate hat_R in bits");
    decode->add_option("--alpha", dec.alpha);
    decode->add_option("--beta", dec.beta);
    decode->add_option("--mu", dec.mu);
    decode->add_option("--l-avg", dec.l_avg, "nominal mean degree (default: the frame's)");
    decode->add_option("--l-cu", dec.channel_uses, "channel uses per slot")->check(CLI::PositiveNumber);
    decode->add_option("--n0", dec.n0, "noise power")->check(CLI::PositiveNumber);
    decode->add_flag("--literal-rmax", dec.literal_rmax, "threshold (L/2) log2(SINR) instead of log2(1 + SINR)");

    ExportOptions exp;
    auto* export_frame = app.add_subcommand("export-frame", "sample one frame and write its edge list");
    export_frame->add_option("--messages", exp.messages, "K")->check(CLI::PositiveNumber);
    export_frame->add_option("--slots", exp.slots, "M")->check(CLI::PositiveNumber);
    export_frame->add_option("--dist", exp.dist, "ideal_soliton, modified_soliton or l3");
    export_frame->add_option("--y", exp.y, "Y parameter");
    export_frame->add_option("--seed", exp.seed);
    export_frame->add_option("--out", exp.out, "output file, '-' for stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitValidation;
    }

    try {
        if (*sweep)
            return cmd_sweep(sweep_opts, out, err);
        if (*tune)
            return cmd_tune(tune_opts, out, err);
        if (*compare)
            return cmd_compare(compare_opts, out, err);
        if (*decode)
            return cmd_decode_one(dec, out);
        if (*export_frame)
            return cmd_export_frame(exp, out);
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const InfeasibleError& e) {
        err << "infeasible: " << e.what() << '\n';
        return kExitInfeasible;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitValidation;
    }
    return kExitValidation;
}

} // namespace irsa
