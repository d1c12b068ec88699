#include "irsa/config.hpp"

#include "irsa/errors.hpp"

#include <json.hpp>

#include <cmath>
#include <set>

namespace irsa {

using nlohmann::json;

std::string_view to_string(Command command)
{
    switch (command) {
    case Command::sweep: return "sweep";
    case Command::tune: return "tune";
    case Command::compare: return "compare";
    case Command::decode_one: return "decode-one";
    }
    return "?";
}

std::optional<Command> parse_command(std::string_view name)
{
    if (name == "sweep")
        return Command::sweep;
    if (name == "tune")
        return Command::tune;
    if (name == "compare")
        return Command::compare;
    if (name == "decode-one" || name == "decode_one")
        return Command::decode_one;
    return std::nullopt;
}

namespace {

// Reads typed fields out of one JSON object, recording every problem.
class Reader {
public:
    Reader(const json& obj, std::string path, std::vector<std::string>& errors)
        : obj_(obj), path_(std::move(path)), errors_(errors)
    {
    }

    std::string key_path(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

    void error(const std::string& key, const std::string& what) { errors_.push_back(key_path(key) + ": " + what); }

    const json* find(const std::string& key)
    {
        seen_.insert(key);
        auto it = obj_.find(key);
        return it == obj_.end() ? nullptr : &*it;
    }

    bool has(const std::string& key) { return find(key) != nullptr; }

    template <class T>
    void get(const std::string& key, T& out, bool required = false)
    {
        const json* v = find(key);
        if (!v) {
            if (required)
                error(key, "missing required key");
            return;
        }
        read_value(key, *v, out);
    }

    template <class T>
    void get(const std::string& key, std::optional<T>& out)
    {
        const json* v = find(key);
        if (!v)
            return;
        T value{};
        if (read_value(key, *v, value))
            out = value;
    }

    void reject_unknown()
    {
        for (auto it = obj_.begin(); it != obj_.end(); ++it)
            if (!seen_.count(it.key()))
                error(it.key(), "unknown key");
    }

private:
    bool read_value(const std::string& key, const json& v, double& out)
    {
        if (!v.is_number()) {
            error(key, "expected a number");
            return false;
        }
        out = v.get<double>();
        if (!std::isfinite(out)) {
            error(key, "must be finite");
            return false;
        }
        return true;
    }
    bool read_value(const std::string& key, const json& v, int& out)
    {
        if (!v.is_number_integer()) {
            error(key, "expected an integer");
            return false;
        }
        const auto x = v.get<std::int64_t>();
        if (x < -2147483647 || x > 2147483647) {
            error(key, "integer out of range");
            return false;
        }
        out = static_cast<int>(x);
        return true;
    }
    bool read_value(const std::string& key, const json& v, std::uint64_t& out)
    {
        if (!v.is_number_unsigned()) {
            error(key, "expected a non-negative integer");
            return false;
        }
        out = v.get<std::uint64_t>();
        return true;
    }
    bool read_value(const std::string& key, const json& v, bool& out)
    {
        if (!v.is_boolean()) {
            error(key, "expected true or false");
            return false;
        }
        out = v.get<bool>();
        return true;
    }
    bool read_value(const std::string& key, const json& v, std::string& out)
    {
        if (!v.is_string()) {
            error(key, "expected a string");
            return false;
        }
        out = v.get<std::string>();
        return true;
    }
    bool read_value(const std::string& key, const json& v, std::vector<double>& out)
    {
        if (!v.is_array()) {
            error(key, "expected an array of numbers");
            return false;
        }
        std::vector<double> values;
        bool ok = true;
        for (std::size_t i = 0; i < v.size(); ++i) {
            double x = 0.0;
            if (read_value(key + "[" + std::to_string(i) + "]", v[i], x))
                values.push_back(x);
            else
                ok = false;
        }
        if (ok)
            out = std::move(values);
        return ok;
    }

    const json& obj_;
    std::string path_;
    std::vector<std::string>& errors_;
    std::set<std::string> seen_;
};

void check_positive(std::vector<std::string>& errors, const char* key, double x)
{
    if (!(x > 0.0))
        errors.push_back(std::string(key) + ": must be > 0");
}

void check_fraction(std::vector<std::string>& errors, const char* key, double x)
{
    if (!(x > 0.0 && x <= 1.0))
        errors.push_back(std::string(key) + ": must be in (0, 1]");
}

} // namespace

std::vector<std::string> check_config(const ExperimentConfig& c)
{
    std::vector<std::string> errors;
    const SweepSpec& s = c.spec;

    if (s.messages < 1)
        errors.push_back("K: must be >= 1");
    if (s.trials < 1)
        errors.push_back("trials: must be >= 1");
    if (s.channel_uses < 1)
        errors.push_back("L_cu: must be >= 1");
    if (s.threads < 0)
        errors.push_back("threads: must be >= 0");
    check_positive(errors, "N0", s.n0);
    if (s.tilde_es_over_n0)
        check_positive(errors, "tilde_Es_over_N0", *s.tilde_es_over_n0);
    if (s.es_over_n0)
        check_positive(errors, "Es_over_N0", *s.es_over_n0);
    if (s.hat_rate_bits)
        check_positive(errors, "hat_R_bits", *s.hat_rate_bits);

    bool dist_ok = true;
    try {
        s.distribution.validate();
    } catch (const ValidationError& e) {
        errors.push_back(std::string("distribution: ") + e.what());
        dist_ok = false;
    }

    const bool uses_grid = c.command == Command::sweep || c.command == Command::tune;
    if (uses_grid) {
        if (s.loads.empty())
            errors.push_back("G_grid: must be nonempty");
        for (std::size_t i = 0; i < s.loads.size(); ++i) {
            const std::string key = "G_grid[" + std::to_string(i) + "]";
            const double g = s.loads[i];
            if (!(g > 0.0)) {
                errors.push_back(key + ": must be > 0 (M = round(K/G) is undefined otherwise)");
                continue;
            }
            if (!dist_ok || s.messages < 1)
                continue;
            try {
                const int m = slots_for_load(s.messages, g);
                const int dmax = s.distribution.make(m).max_degree();
                if (dmax > m)
                    errors.push_back(key + ": M = " + std::to_string(m) + " is below the max degree " +
                                     std::to_string(dmax));
            } catch (const ValidationError& e) {
                errors.push_back(key + ": " + e.what());
            }
        }
    }

    const bool has_energy = s.tilde_es_over_n0 || s.es_over_n0 || s.hat_rate_bits;
    switch (c.command) {
    case Command::sweep:
        try {
            s.scheme.validate();
        } catch (const ValidationError& e) {
            errors.push_back(std::string("scheme: ") + e.what());
        }
        if (s.scheme.variant == Scheme::pa && !s.hat_rate_bits)
            errors.push_back("hat_R_bits: required for PA");
        else if (!has_energy)
            errors.push_back("tilde_Es_over_N0: one of tilde_Es_over_N0, Es_over_N0, hat_R_bits is required");
        break;
    case Command::tune:
        if (s.scheme.variant == Scheme::irsa)
            errors.push_back("scheme: tune needs RS or PA");
        if (s.scheme.variant == Scheme::pa && !s.hat_rate_bits)
            errors.push_back("hat_R_bits: required for PA");
        if (s.scheme.variant == Scheme::rs && !has_energy)
            errors.push_back("tilde_Es_over_N0: one of tilde_Es_over_N0, Es_over_N0, hat_R_bits is required");
        break;
    case Command::compare:
        check_positive(errors, "compare.G", c.compare.load);
        if (c.compare.energy_grid_db.empty())
            errors.push_back("compare.energy_grid_db: must be nonempty");
        check_positive(errors, "compare.min_throughput", c.compare.min_throughput);
        if (dist_ok && s.messages >= 1 && c.compare.load > 0.0) {
            const int m = slots_for_load(s.messages, c.compare.load);
            if (s.distribution.make(m).max_degree() > m)
                errors.push_back("compare.G: M is below the max degree");
        }
        break;
    case Command::decode_one:
        break;
    }

    const RsTuneOptions& rs = c.rs_tuning;
    if (rs.alpha_grid.empty())
        errors.push_back("tune.alpha_grid: must be nonempty");
    for (double a : rs.alpha_grid)
        if (!(a >= 0.0)) {
            errors.push_back("tune.alpha_grid: values must be >= 0");
            break;
        }
    if (rs.beta_grid.empty())
        errors.push_back("tune.beta_grid: must be nonempty");
    for (double b : rs.beta_grid)
        if (!(b > 0.0)) {
            errors.push_back("tune.beta_grid: values must be > 0");
            break;
        }
    check_fraction(errors, "tune.throughput_fraction", rs.throughput_fraction);
    if (rs.throughput_cap)
        check_positive(errors, "tune.throughput_cap", *rs.throughput_cap);
    if (!(c.mu_tuning.mu_max >= 1.0))
        errors.push_back("tune.mu_max: must be >= 1");
    check_fraction(errors, "tune.decoded_fraction", c.mu_tuning.target_fraction);
    check_positive(errors, "tune.mu_resolution", c.mu_tuning.resolution);
    if (c.output_dir.empty())
        errors.push_back("output_dir: must be nonempty");
    return errors;
}

ParseResult parse_config(std::string_view text)
{
    ParseResult result;
    auto& errors = result.errors;
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        errors.push_back(std::string("<document>: ") + e.what());
        return result;
    }
    if (!doc.is_object()) {
        errors.push_back("<document>: expected a JSON object");
        return result;
    }

    ExperimentConfig c;
    SweepSpec& s = c.spec;
    Reader top(doc, "", errors);

    std::string command = "sweep";
    top.get("command", command, true);
    if (auto cmd = parse_command(command))
        c.command = *cmd;
    else if (top.has("command"))
        top.error("command", "unknown command '" + command + "'");

    std::string scheme;
    top.get("scheme", scheme, c.command != Command::compare && c.command != Command::decode_one);
    if (!scheme.empty()) {
        if (auto v = parse_scheme(scheme))
            s.scheme.variant = *v;
        else
            top.error("scheme", "unknown scheme '" + scheme + "'");
    }
    top.get("alpha", s.scheme.alpha);
    top.get("beta", s.scheme.beta);
    top.get("mu", s.scheme.mu);
    top.get("rmax_includes_one", s.scheme.rmax_includes_one);

    if (const json* d = top.find("distribution")) {
        if (!d->is_object()) {
            top.error("distribution", "expected an object");
        } else {
            Reader dr(*d, "distribution", errors);
            dr.get("name", s.distribution.name, true);
            s.distribution.y.reset();
            dr.get("Y", s.distribution.y);
            if (s.distribution.name == "modified_soliton" && !dr.has("Y"))
                dr.error("Y", "missing required key for modified_soliton");
            dr.reject_unknown();
        }
    } else if (c.command != Command::decode_one) {
        top.error("distribution", "missing required key");
    }

    top.get("K", s.messages);
    top.get("G_grid", s.loads, c.command == Command::sweep || c.command == Command::tune);
    top.get("trials", s.trials);
    top.get("seed", s.seed);
    top.get("tilde_Es_over_N0", s.tilde_es_over_n0);
    top.get("Es_over_N0", s.es_over_n0);
    top.get("hat_R_bits", s.hat_rate_bits);
    top.get("L_cu", s.channel_uses);
    top.get("N0", s.n0);
    top.get("threads", s.threads);
    top.get("output_dir", c.output_dir);
    top.get("emit_plot_data", c.emit_plot_data);

    if (const json* t = top.find("tune")) {
        if (!t->is_object()) {
            top.error("tune", "expected an object");
        } else {
            Reader tr(*t, "tune", errors);
            tr.get("alpha_grid", c.rs_tuning.alpha_grid);
            tr.get("beta_grid", c.rs_tuning.beta_grid);
            tr.get("throughput_fraction", c.rs_tuning.throughput_fraction);
            tr.get("throughput_cap", c.rs_tuning.throughput_cap);
            tr.get("mu_max", c.mu_tuning.mu_max);
            tr.get("decoded_fraction", c.mu_tuning.target_fraction);
            tr.get("mu_resolution", c.mu_tuning.resolution);
            tr.reject_unknown();
        }
    }
    if (const json* cm = top.find("compare")) {
        if (!cm->is_object()) {
            top.error("compare", "expected an object");
        } else {
            Reader cr(*cm, "compare", errors);
            cr.get("G", c.compare.load);
            cr.get("energy_grid_db", c.compare.energy_grid_db, c.command == Command::compare);
            cr.get("min_throughput", c.compare.min_throughput);
            cr.reject_unknown();
        }
    } else if (c.command == Command::compare) {
        top.error("compare", "missing required key");
    }
    top.reject_unknown();

    if (errors.empty()) {
        errors = check_config(c);
        if (errors.empty())
            result.config = std::move(c);
    }
    return result;
}

std::string to_json(const ExperimentConfig& c)
{
    const SweepSpec& s = c.spec;
    json doc;
    doc["command"] = std::string(to_string(c.command));
    doc["scheme"] = std::string(to_string(s.scheme.variant));
    if (s.scheme.alpha)
        doc["alpha"] = *s.scheme.alpha;
    if (s.scheme.beta)
        doc["beta"] = *s.scheme.beta;
    if (s.scheme.mu)
        doc["mu"] = *s.scheme.mu;
    doc["rmax_includes_one"] = s.scheme.rmax_includes_one;
    json dist;
    dist["name"] = s.distribution.name;
    if (s.distribution.y)
        dist["Y"] = *s.distribution.y;
    doc["distribution"] = dist;
    doc["K"] = s.messages;
    doc["G_grid"] = s.loads;
    doc["trials"] = s.trials;
    doc["seed"] = s.seed;
    if (s.tilde_es_over_n0)
        doc["tilde_Es_over_N0"] = *s.tilde_es_over_n0;
    if (s.es_over_n0)
        doc["Es_over_N0"] = *s.es_over_n0;
    if (s.hat_rate_bits)
        doc["hat_R_bits"] = *s.hat_rate_bits;
    doc["L_cu"] = s.channel_uses;
    doc["N0"] = s.n0;
    doc["threads"] = s.threads;
    doc["output_dir"] = c.output_dir;
    doc["emit_plot_data"] = c.emit_plot_data;

    json tune;
    tune["alpha_grid"] = c.rs_tuning.alpha_grid;
    tune["beta_grid"] = c.rs_tuning.beta_grid;
    tune["throughput_fraction"] = c.rs_tuning.throughput_fraction;
    if (c.rs_tuning.throughput_cap)
        tune["throughput_cap"] = *c.rs_tuning.throughput_cap;
    tune["mu_max"] = c.mu_tuning.mu_max;
    tune["decoded_fraction"] = c.mu_tuning.target_fraction;
    tune["mu_resolution"] = c.mu_tuning.resolution;
    doc["tune"] = tune;

    json cmp;
    cmp["G"] = c.compare.load;
    cmp["energy_grid_db"] = c.compare.energy_grid_db;
    cmp["min_throughput"] = c.compare.min_throughput;
    doc["compare"] = cmp;
    return doc.dump(2) + "\n";
}

} // namespace irsa
