#include "irsa/output.hpp"

#include <json.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <locale>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace irsa {

const char* const kCsvHeader =
    "scheme,distribution,K,M,G,trials,seed,alpha,beta,mu,T_mean,T_se,eta_mean,eta_se,eta_max_mean,"
    "gamma_mean,gamma_se,energy_per_user_db";

std::string format_number(double x)
{
    if (!std::isfinite(x))
        return "NA";
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 6);
    if (ec != std::errc())
        return "NA";
    return std::string(buf, end);
}

static std::string optional_field(const std::optional<double>& x)
{
    return x ? format_number(*x) : std::string();
}

static double energy_db(const SweepRecord& r)
{
    const double e = r.stats.energy.mean();
    return e > 0.0 ? 10.0 * std::log10(e) : std::nan("");
}

void write_csv(std::ostream& out, const std::vector<SweepRecord>& records)
{
    out << kCsvHeader << '\n';
    for (const auto& r : records) {
        const PointStats& s = r.stats;
        out << r.scheme << ',' << r.distribution << ',' << r.messages << ',' << r.slots << ','
            << format_number(r.load) << ',' << r.trials << ',' << r.seed << ',' << optional_field(r.alpha) << ','
            << optional_field(r.beta) << ',' << optional_field(r.mu) << ',' << format_number(s.throughput.mean())
            << ',' << format_number(s.throughput.standard_error()) << ',' << format_number(s.eta.mean()) << ','
            << format_number(s.eta.standard_error()) << ',' << format_number(s.eta_max.mean()) << ','
            << format_number(s.gamma.mean()) << ',' << format_number(s.gamma.standard_error()) << ','
            << format_number(energy_db(r)) << '\n';
    }
}

static std::ofstream open_for_write(const std::filesystem::path& path)
{
    if (path.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(path.parent_path(), ec);
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::runtime_error("cannot write " + path.string());
    out.imbue(std::locale::classic());
    return out;
}

static void finish(std::ofstream& out, const std::filesystem::path& path)
{
    out.flush();
    if (!out)
        throw std::runtime_error("error writing " + path.string());
}

void emit_csv(const std::filesystem::path& path, const std::vector<SweepRecord>& records)
{
    auto out = open_for_write(path);
    write_csv(out, records);
    finish(out, path);
}

static nlohmann::json nullable(double x)
{
    return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(nullptr);
}

void emit_sidecar(const std::filesystem::path& path, const ExperimentConfig& config,
                  const std::vector<SweepRecord>& records)
{
    nlohmann::json doc;
    doc["config"] = nlohmann::json::parse(to_json(config));
    doc["seed"] = config.spec.seed;
    auto& points = doc["points"] = nlohmann::json::array();
    for (const auto& r : records) {
        nlohmann::json p;
        p["scheme"] = r.scheme;
        p["distribution"] = r.distribution;
        p["G"] = r.load;
        p["M"] = r.slots;
        p["l_avg"] = r.l_avg;
        if (r.alpha)
            p["alpha"] = *r.alpha;
        if (r.beta)
            p["beta"] = *r.beta;
        if (r.mu)
            p["mu"] = *r.mu;
        p["trials"] = r.stats.throughput.count();
        p["decoded_fraction_mean"] = nullable(r.stats.decoded_fraction.mean());
        if (r.gamma_irsa)
            p["Gamma_IRSA_db"] = 10.0 * std::log10(*r.gamma_irsa);
        if (r.gamma_min)
            p["Gamma_min_db"] = 10.0 * std::log10(*r.gamma_min);
        if (!r.error.empty())
            p["error"] = r.error;
        points.push_back(p);
    }
    auto out = open_for_write(path);
    out << doc.dump(2) << '\n';
    finish(out, path);
}

std::vector<std::filesystem::path> emit_plot_data(const std::filesystem::path& dir,
                                                  const std::vector<SweepRecord>& records,
                                                  std::vector<std::string>& warnings)
{
    using Getter = std::function<double(const SweepRecord&)>;
    const std::vector<std::pair<std::string, Getter>> metrics = {
        {"T", [](const SweepRecord& r) { return r.stats.throughput.mean(); }},
        {"eta", [](const SweepRecord& r) { return r.stats.eta.mean(); }},
        {"eta_max", [](const SweepRecord& r) { return r.stats.eta_max.mean(); }},
        {"gamma", [](const SweepRecord& r) { return r.stats.gamma.mean(); }},
        {"gamma_max", [](const SweepRecord& r) { return r.stats.gamma_max.mean(); }},
        {"energy", energy_db},
    };

    // series keyed by (scheme, distribution), in order of first appearance
    std::vector<std::pair<std::string, std::string>> keys;
    std::map<std::pair<std::string, std::string>, std::vector<const SweepRecord*>> series;
    for (const auto& r : records) {
        auto key = std::make_pair(r.scheme, r.distribution);
        if (!series.count(key))
            keys.push_back(key);
        series[key].push_back(&r);
    }

    std::vector<std::filesystem::path> written;
    auto write_series = [&](const std::string& name, const std::vector<std::pair<double, double>>& rows) {
        bool any = false;
        for (const auto& row : rows)
            any = any || std::isfinite(row.second);
        if (!any) {
            warnings.push_back("no defined values for " + name + "; file not written");
            return;
        }
        const auto path = dir / name;
        auto out = open_for_write(path);
        for (const auto& [g, v] : rows)
            out << format_number(g) << ' ' << format_number(v) << '\n';
        finish(out, path);
        written.push_back(path);
    };

    for (const auto& key : keys) {
        const auto& recs = series[key];
        for (const auto& [metric, get] : metrics) {
            std::vector<std::pair<double, double>> rows;
            for (const SweepRecord* r : recs)
                rows.emplace_back(r->load, get(*r));
            write_series(metric + "__" + key.first + "__" + key.second + ".dat", rows);
        }
        if (key.first == "PA") {
            std::vector<std::pair<double, double>> irsa_ref;
            std::vector<std::pair<double, double>> min_ref;
            for (const SweepRecord* r : recs) {
                irsa_ref.emplace_back(r->load, r->gamma_irsa ? 10.0 * std::log10(*r->gamma_irsa) : std::nan(""));
                min_ref.emplace_back(r->load, r->gamma_min ? 10.0 * std::log10(*r->gamma_min) : std::nan(""));
            }
            write_series("energy__Gamma_IRSA__" + key.second + ".dat", irsa_ref);
            write_series("energy__Gamma_min__" + key.second + ".dat", min_ref);
        }
    }
    return written;
}

void write_compare_csv(std::ostream& out, const std::vector<CompareRow>& rows)
{
    out << "energy_db,Es_over_N0,rs_feasible,alpha,beta,rs_rate,rs_T,pa_feasible,mu,pa_energy_db,pa_T,"
           "irsa_energy_db,error\n";
    for (const auto& r : rows) {
        auto rs = [&](double x) { return r.rs_feasible ? format_number(x) : std::string(); };
        auto pa = [&](double x) { return r.pa_feasible ? format_number(x) : std::string(); };
        std::string error = r.error;
        for (char& ch : error)
            if (ch == ',' || ch == '\n')
                ch = ';';
        out << format_number(r.energy_db) << ',' << format_number(r.es_over_n0) << ',' << r.rs_feasible << ','
            << rs(r.alpha) << ',' << rs(r.beta) << ',' << rs(r.rs_rate) << ',' << rs(r.rs_throughput) << ','
            << r.pa_feasible << ',' << pa(r.mu) << ',' << pa(r.pa_energy_db) << ',' << pa(r.pa_throughput) << ','
            << rs(r.irsa_energy_db) << ',' << error << '\n';
    }
}

void emit_compare_csv(const std::filesystem::path& path, const std::vector<CompareRow>& rows)
{
    auto out = open_for_write(path);
    write_compare_csv(out, rows);
    finish(out, path);
}

} // namespace irsa
