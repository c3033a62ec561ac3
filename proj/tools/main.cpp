// invwalk: exact spectra, mixing profiles, and bound curves for the random
// inversion walk on labelled tournaments, plus the subgroup structure of the
// k-restricted walk. Every command writes a self-describing JSON or CSV
// artifact; identical invocations are byte-identical regardless of --threads.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "invwalk/encoding.hpp"
#include "invwalk/rank_stats.hpp"
#include "invwalk/restricted.hpp"
#include "invwalk/spectral.hpp"
#include "invwalk/walk_sim.hpp"

using ordered_json = nlohmann::ordered_json;
using namespace invwalk;

namespace {

constexpr const char* kTool = "invwalk";
constexpr const char* kVersion = "1.0.0";

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitCapacity = 3;
constexpr int kExitVerification = 4;

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

using Flags = std::vector<std::pair<std::string, std::string>>;

void write_csv_header(std::ostream& os, const std::string& command, const Flags& flags) {
    os << "# " << kTool << ' ' << kVersion << '\n';
    os << "# command: " << command << '\n';
    os << "#";
    for (const auto& [key, value] : flags) os << ' ' << key << '=' << value;
    os << '\n';
}

ordered_json json_meta(const std::string& command, const Flags& flags) {
    ordered_json meta;
    meta["tool"] = kTool;
    meta["version"] = kVersion;
    meta["command"] = command;
    ordered_json jf;
    for (const auto& [key, value] : flags) jf[key] = value;
    meta["flags"] = jf;
    return meta;
}

ordered_json dyadic_json(const Dyadic& d) {
    ordered_json j;
    j["num"] = d.num;
    j["den_log2"] = d.den_log2;
    return j;
}

// Streams to --out (or stdout); contents identical either way.
class Output {
public:
    explicit Output(const std::string& path) {
        if (!path.empty() && path != "-") {
            file_.open(path, std::ios::binary);
            if (!file_) throw std::invalid_argument("cannot open output file: " + path);
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

void write_json(std::ostream& os, const ordered_json& doc) { os << doc.dump(2) << '\n'; }

enum class Format { json, csv };

Format resolve_format(const std::string& requested, Format natural) {
    if (requested.empty()) return natural;
    if (requested == "json") return Format::json;
    if (requested == "csv") return Format::csv;
    throw std::invalid_argument("--format must be json or csv");
}

struct GlobalOpts {
    int threads = 0;
    std::string out;
    std::string format;
};

// ---------------------------------------------------------------- spectrum

int run_spectrum(const GlobalOpts& g, int n, const std::string& csv_path) {
    Flags flags{{"n", std::to_string(n)}};
    SpectrumTable spec = full_spectrum(n, g.threads);

    auto write_csv = [&](std::ostream& os) {
        write_csv_header(os, "spectrum", flags);
        os << "A,rank,S_A,lambda\n";
        char hexbuf[32];
        for (std::size_t a = 0; a < spec.gauss_sums.size(); ++a) {
            std::snprintf(hexbuf, sizeof hexbuf, "%llx", static_cast<unsigned long long>(a));
            os << hexbuf << ',' << static_cast<int>(spec.ranks[a]) << ',' << spec.gauss_sums[a]
               << ',' << fmt_double(spec.lambda(a)) << '\n';
        }
    };

    Output out(g.out);
    if (resolve_format(g.format, Format::csv) == Format::csv) {
        write_csv(out.stream());
    } else {
        ordered_json doc;
        doc["meta"] = json_meta("spectrum", flags);
        doc["n"] = spec.n;
        doc["m"] = spec.m;
        ordered_json rows = ordered_json::array();
        char hexbuf[32];
        for (std::size_t a = 0; a < spec.gauss_sums.size(); ++a) {
            std::snprintf(hexbuf, sizeof hexbuf, "%llx", static_cast<unsigned long long>(a));
            ordered_json row;
            row["A"] = hexbuf;
            row["rank"] = spec.ranks[a];
            row["S_A"] = spec.gauss_sums[a];
            row["lambda"] = spec.lambda(a);
            rows.push_back(std::move(row));
        }
        doc["rows"] = std::move(rows);
        write_json(out.stream(), doc);
    }
    if (!csv_path.empty()) {
        std::ofstream extra(csv_path, std::ios::binary);
        if (!extra) throw std::invalid_argument("cannot open csv file: " + csv_path);
        write_csv(extra);
    }
    return kExitOk;
}

// ---------------------------------------------------------------------- tv

int run_tv(const GlobalOpts& g, int n, std::int64_t t_min, std::int64_t t_max,
           const std::string& csv_path) {
    if (t_min < 1)
        throw std::invalid_argument("--t-min must be >= 1 (mu_t is expanded for t >= 1)");
    if (t_max < t_min) throw std::invalid_argument("--t-max must be >= --t-min");
    Flags flags{{"n", std::to_string(n)},
                {"t-min", std::to_string(t_min)},
                {"t-max", std::to_string(t_max)}};

    SpectrumTable spec = full_spectrum(n, g.threads);
    struct Row {
        std::int64_t t;
        TvValue tv;
        double l2;
        std::optional<double> upper, lower;
    };
    std::vector<Row> rows;
    for (std::int64_t t = t_min; t <= t_max; ++t) {
        Row row{t, exact_tv(spec, t, g.threads), l2_tv_upper(spec, t), {}, {}};
        if (t >= n) row.upper = uppertail_bound(static_cast<int>(t - n));
        if (t <= n) row.lower = lowertail_bound(n, static_cast<int>(n - t));
        rows.push_back(row);
    }

    auto write_csv = [&](std::ostream& os) {
        write_csv_header(os, "tv", flags);
        os << "t,d_exact,l2_upper,paper_upper,paper_lower\n";
        for (const auto& row : rows) {
            os << row.t << ',' << fmt_double(row.tv.value) << ',' << fmt_double(row.l2) << ',';
            if (row.upper) os << fmt_double(*row.upper);
            os << ',';
            if (row.lower) os << fmt_double(*row.lower);
            os << '\n';
        }
    };

    Output out(g.out);
    if (resolve_format(g.format, Format::csv) == Format::csv) {
        write_csv(out.stream());
    } else {
        ordered_json doc;
        doc["meta"] = json_meta("tv", flags);
        ordered_json jrows = ordered_json::array();
        for (const auto& row : rows) {
            ordered_json jr;
            jr["t"] = row.t;
            jr["d_exact"] = row.tv.value;
            if (row.tv.exact) jr["d_exact_rational"] = dyadic_json(*row.tv.exact);
            jr["l2_upper"] = row.l2;
            jr["paper_upper"] = row.upper ? ordered_json(*row.upper) : ordered_json(nullptr);
            jr["paper_lower"] = row.lower ? ordered_json(*row.lower) : ordered_json(nullptr);
            jrows.push_back(std::move(jr));
        }
        doc["rows"] = std::move(jrows);
        write_json(out.stream(), doc);
    }
    if (!csv_path.empty()) {
        std::ofstream extra(csv_path, std::ios::binary);
        if (!extra) throw std::invalid_argument("cannot open csv file: " + csv_path);
        write_csv(extra);
    }
    return kExitOk;
}

// ----------------------------------------------------------------- profile

int run_profile(const GlobalOpts& g, int n, std::int64_t t_max, const std::string& csv_path) {
    Flags flags{{"n", std::to_string(n)}, {"t-max", std::to_string(t_max)}};
    auto rows = cutoff_profile(n, t_max, g.threads);

    auto write_csv = [&](std::ostream& os) {
        write_csv_header(os, "profile", flags);
        os << "t,d_exact,d_l2_upper,d_paper_upper,d_paper_lower,d_mc_estimate\n";
        for (const auto& row : rows) {
            os << row.t << ',';
            if (row.d_exact) os << fmt_double(*row.d_exact);
            os << ',' << fmt_double(row.d_l2_upper) << ',';
            if (row.d_paper_upper) os << fmt_double(*row.d_paper_upper);
            os << ',';
            if (row.d_paper_lower) os << fmt_double(*row.d_paper_lower);
            os << ',';
            if (row.d_mc_estimate) os << fmt_double(*row.d_mc_estimate);
            os << '\n';
        }
    };

    Output out(g.out);
    if (resolve_format(g.format, Format::csv) == Format::csv) {
        write_csv(out.stream());
    } else {
        ordered_json doc;
        doc["meta"] = json_meta("profile", flags);
        ordered_json jrows = ordered_json::array();
        auto opt = [](const std::optional<double>& v) {
            return v ? ordered_json(*v) : ordered_json(nullptr);
        };
        for (const auto& row : rows) {
            ordered_json jr;
            jr["t"] = row.t;
            jr["d_exact"] = opt(row.d_exact);
            jr["d_l2_upper"] = row.d_l2_upper;
            jr["d_paper_upper"] = opt(row.d_paper_upper);
            jr["d_paper_lower"] = opt(row.d_paper_lower);
            jr["d_mc_estimate"] = opt(row.d_mc_estimate);
            jrows.push_back(std::move(jr));
        }
        doc["rows"] = std::move(jrows);
        write_json(out.stream(), doc);
    }
    if (!csv_path.empty()) {
        std::ofstream extra(csv_path, std::ios::binary);
        if (!extra) throw std::invalid_argument("cannot open csv file: " + csv_path);
        write_csv(extra);
    }
    return kExitOk;
}

// ---------------------------------------------------------------------- hk

ordered_json hk_report_json(const HkReport& r) {
    ordered_json j;
    j["n"] = r.n;
    j["k"] = r.k;
    j["k_mod_4"] = r.k_mod_4;
    j["wilson_rank"] = r.wilson_rank;
    j["elimination_rank"] = r.elimination_rank;
    j["vk_dim"] = r.vk_dim;
    j["generators_in_vk"] = r.generators_in_vk;
    j["membership_checked"] = r.membership_checked;
    j["pass"] = r.pass;
    if (!r.pass) j["failure"] = r.failure;
    return j;
}

int run_hk(const GlobalOpts& g, int n, int k, bool membership) {
    const int samples = membership ? 100 : 0;
    Flags flags{{"n", std::to_string(n)},
                {"k", std::to_string(k)},
                {"membership", std::to_string(samples)}};
    HkReport report = verify_hk_equals_vk(n, k, samples);

    Output out(g.out);
    if (resolve_format(g.format, Format::json) == Format::json) {
        ordered_json doc;
        doc["meta"] = json_meta("hk", flags);
        doc.update(hk_report_json(report));
        write_json(out.stream(), doc);
    } else {
        write_csv_header(out.stream(), "hk", flags);
        out.stream() << "n,k,k_mod_4,wilson_rank,elimination_rank,vk_dim,generators_in_vk,"
                        "membership_checked,pass\n";
        out.stream() << report.n << ',' << report.k << ',' << report.k_mod_4 << ','
                     << report.wilson_rank << ',' << report.elimination_rank << ','
                     << report.vk_dim << ',' << (report.generators_in_vk ? 1 : 0) << ','
                     << report.membership_checked << ',' << (report.pass ? 1 : 0) << '\n';
    }
    return report.pass ? kExitOk : kExitVerification;
}

int run_hk_sweep(const GlobalOpts& g, int n_max, int membership) {
    if (n_max < 4) throw std::invalid_argument("--n-max must be >= 4");
    Flags flags{{"n-max", std::to_string(n_max)}, {"membership", std::to_string(membership)}};
    std::vector<HkReport> reports;
    bool all_pass = true;
    for (int n = 4; n <= n_max; ++n)
        for (int k = 2; k <= n - 2; ++k) {
            reports.push_back(verify_hk_equals_vk(n, k, membership));
            all_pass = all_pass && reports.back().pass;
        }

    Output out(g.out);
    if (resolve_format(g.format, Format::csv) == Format::csv) {
        write_csv_header(out.stream(), "hk-sweep", flags);
        out.stream() << "n,k,k_mod_4,wilson_rank,elimination_rank,vk_dim,generators_in_vk,"
                        "membership_checked,pass\n";
        for (const auto& r : reports)
            out.stream() << r.n << ',' << r.k << ',' << r.k_mod_4 << ',' << r.wilson_rank << ','
                         << r.elimination_rank << ',' << r.vk_dim << ','
                         << (r.generators_in_vk ? 1 : 0) << ',' << r.membership_checked << ','
                         << (r.pass ? 1 : 0) << '\n';
    } else {
        ordered_json doc;
        doc["meta"] = json_meta("hk-sweep", flags);
        ordered_json rows = ordered_json::array();
        for (const auto& r : reports) rows.push_back(hk_report_json(r));
        doc["rows"] = std::move(rows);
        doc["pass"] = all_pass;
        write_json(out.stream(), doc);
    }
    return all_pass ? kExitOk : kExitVerification;
}

// ---------------------------------------------------------------- altcount

int run_altcount(const GlobalOpts& g, int n) {
    Flags flags{{"n", std::to_string(n)}};
    RankCensus census = alternating_census(n, g.threads);
    const bool total_ok = census.total() == (std::uint64_t{1} << census.m);

    struct Row {
        int r;
        std::uint64_t count;
        long bound_log2;
        bool ok;
    };
    std::vector<Row> rows;
    bool bounds_ok = true;
    for (int r = 0; r <= n; r += 2) {
        Pow2 bound = alt_count_bound(n, r);
        bool ok = bound.dominates(census.count[static_cast<std::size_t>(r)]);
        bounds_ok = bounds_ok && ok;
        rows.push_back({r, census.count[static_cast<std::size_t>(r)], bound.exponent, ok});
    }
    const bool pass = total_ok && bounds_ok;

    Output out(g.out);
    if (resolve_format(g.format, Format::json) == Format::json) {
        ordered_json doc;
        doc["meta"] = json_meta("altcount", flags);
        doc["n"] = census.n;
        doc["m"] = census.m;
        doc["total"] = census.total();
        doc["total_expected_log2"] = census.m;
        doc["total_ok"] = total_ok;
        ordered_json jrows = ordered_json::array();
        for (const auto& row : rows) {
            ordered_json jr;
            jr["r"] = row.r;
            jr["count"] = row.count;
            jr["bound_log2"] = row.bound_log2;
            jr["ok"] = row.ok;
            jrows.push_back(std::move(jr));
        }
        doc["census"] = std::move(jrows);
        doc["pass"] = pass;
        write_json(out.stream(), doc);
    } else {
        write_csv_header(out.stream(), "altcount", flags);
        out.stream() << "r,count,bound_log2,ok\n";
        for (const auto& row : rows)
            out.stream() << row.r << ',' << row.count << ',' << row.bound_log2 << ','
                         << (row.ok ? 1 : 0) << '\n';
    }
    return pass ? kExitOk : kExitVerification;
}

// ---------------------------------------------------------------- ranktail

int run_ranktail(const GlobalOpts& g, int n, std::uint64_t trials, std::uint64_t seed) {
    Flags flags{{"n", std::to_string(n)},
                {"trials", std::to_string(trials)},
                {"seed", std::to_string(seed)}};
    TailEstimate est = sample_symmetric_rank_tail(n, trials, seed, g.threads);

    Output out(g.out);
    if (resolve_format(g.format, Format::csv) == Format::csv) {
        write_csv_header(out.stream(), "ranktail", flags);
        out.stream() << "s,hits,estimate,ci_low,ci_high,bound\n";
        for (const auto& row : est.rows)
            out.stream() << row.s << ',' << row.hits << ',' << fmt_double(row.estimate) << ','
                         << fmt_double(row.ci_low) << ',' << fmt_double(row.ci_high) << ','
                         << fmt_double(row.bound) << '\n';
    } else {
        ordered_json doc;
        doc["meta"] = json_meta("ranktail", flags);
        ordered_json jrows = ordered_json::array();
        for (const auto& row : est.rows) {
            ordered_json jr;
            jr["s"] = row.s;
            jr["hits"] = row.hits;
            jr["estimate"] = row.estimate;
            jr["ci_low"] = row.ci_low;
            jr["ci_high"] = row.ci_high;
            jr["bound"] = row.bound;
            jrows.push_back(std::move(jr));
        }
        doc["rows"] = std::move(jrows);
        write_json(out.stream(), doc);
    }
    return kExitOk;
}

// -------------------------------------------------------------------- ball

ordered_json ratio_json(const ExactRatio& ratio) {
    ordered_json j;
    if (ratio.num <= BigInt(UINT64_MAX))
        j["num"] = ratio.num.convert_to<std::uint64_t>();
    else
        j["num"] = ratio.num.str();
    j["den_log2"] = ratio.den_log2;
    return j;
}

int run_ball(const GlobalOpts& g, int n, int t, const std::string& csv_path) {
    if (t < 0) throw std::invalid_argument("--t must be >= 0");
    Flags flags{{"n", std::to_string(n)}, {"t", std::to_string(t)}};
    BallCurve curve = ball_curve(n);
    const std::uint64_t size = curve.size_at(t);
    const int s = std::max(0, n - t);
    ExactRatio bound = ball_volume_bound(n, s);

    auto write_csv = [&](std::ostream& os) {
        write_csv_header(os, "ball", flags);
        os << "t,ball_size,bound\n";
        for (int tt = 0; tt <= curve.diameter; ++tt) {
            ExactRatio b = ball_volume_bound(n, std::max(0, n - tt));
            os << tt << ',' << curve.size_at(tt) << ',' << fmt_double(b.to_double()) << '\n';
        }
    };

    Output out(g.out);
    if (resolve_format(g.format, Format::json) == Format::json) {
        ordered_json doc;
        doc["meta"] = json_meta("ball", flags);
        doc["n"] = n;
        doc["m"] = curve.m;
        doc["t"] = t;
        doc["ball_size"] = size;
        doc["bound"] = ratio_json(bound);
        doc["bound_double"] = bound.to_double();
        doc["diameter"] = curve.diameter;
        write_json(out.stream(), doc);
    } else {
        write_csv(out.stream());
    }
    if (!csv_path.empty()) {
        std::ofstream extra(csv_path, std::ios::binary);
        if (!extra) throw std::invalid_argument("cannot open csv file: " + csv_path);
        write_csv(extra);
    }
    return kExitOk;
}

// ---------------------------------------------------------------- simulate

int run_simulate(const GlobalOpts& g, const std::string& variant, int n, int k, int m,
                 std::int64_t t, std::uint64_t trials, std::uint64_t seed,
                 const std::string& json_path) {
    Flags flags{{"variant", variant}};
    ordered_json doc;
    ordered_json result;

    if (variant == "full" || variant == "k") {
        WalkConfig cfg;
        cfg.variant = variant == "full" ? WalkVariant::full : WalkVariant::k_restricted;
        cfg.n = n;
        cfg.k = k;
        cfg.horizon = t;
        cfg.trials = trials;
        cfg.seed = seed;
        flags.emplace_back("n", std::to_string(n));
        if (variant == "k") flags.emplace_back("k", std::to_string(k));
        flags.emplace_back("t", std::to_string(t));
        flags.emplace_back("trials", std::to_string(trials));
        flags.emplace_back("seed", std::to_string(seed));

        McTvEstimate freq = mc_tv_frequency(cfg, t, g.threads);
        result["variant"] = variant;
        result["n"] = n;
        if (variant == "k") result["k"] = k;
        result["t"] = t;
        result["trials"] = trials;
        result["seed"] = seed;
        result["support_size"] = freq.support_size;
        result["frequency_tv"] = freq.estimate;
        result["bias_bound"] = freq.bias_bound;
        if (variant == "full") {
            McTvEstimate support = mc_tv_support(n, t);
            result["support_lower_bound"] = support.estimate;
            result["ball_size"] = support.support_size;
        }
    } else if (variant == "hypercube") {
        if (m <= 0) throw std::invalid_argument("--m is required for the hypercube variant");
        flags.emplace_back("m", std::to_string(m));
        flags.emplace_back("t", std::to_string(t));
        flags.emplace_back("trials", std::to_string(trials));
        flags.emplace_back("seed", std::to_string(seed));
        std::int64_t pts[1] = {t};
        auto rows = hypercube_profile(m, trials, pts, seed, g.threads);
        result["variant"] = variant;
        result["m"] = m;
        result["t"] = t;
        result["trials"] = trials;
        result["seed"] = seed;
        result["statistic"] = rows[0].statistic;
    } else {
        throw std::invalid_argument("--variant must be full, k, or hypercube");
    }

    doc["meta"] = json_meta("simulate", flags);
    doc.update(result);

    Output out(g.out);
    if (resolve_format(g.format, Format::json) == Format::json) {
        write_json(out.stream(), doc);
    } else {
        write_csv_header(out.stream(), "simulate", flags);
        std::string header, values;
        for (auto it = result.begin(); it != result.end(); ++it) {
            if (!header.empty()) {
                header += ',';
                values += ',';
            }
            header += it.key();
            values += it.value().is_number_float() ? fmt_double(it.value().get<double>())
                                                   : it.value().dump();
        }
        out.stream() << header << '\n' << values << '\n';
    }
    if (!json_path.empty()) {
        std::ofstream extra(json_path, std::ios::binary);
        if (!extra) throw std::invalid_argument("cannot open json file: " + json_path);
        write_json(extra, doc);
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact spectra, TV mixing profiles, and bound curves for the tournament "
                 "inversion walk; subgroup structure of the k-restricted walk"};
    app.set_version_flag("--version", std::string(kTool) + " " + kVersion);
    app.require_subcommand(1);
    app.fallthrough(); // global flags may follow the subcommand

    GlobalOpts g;
    app.add_option("--threads", g.threads, "worker thread cap (0 = all cores)");
    app.add_option("--out", g.out, "output path (default: stdout)");
    app.add_option("--format", g.format, "output format: json or csv");

    auto* sc_spectrum =
        app.add_subcommand("spectrum", "exact eigenvalue table over all characters");
    int spectrum_n = 0;
    std::string spectrum_csv;
    sc_spectrum->add_option("--n", spectrum_n, "vertex count")->required();
    sc_spectrum->add_option("--csv", spectrum_csv, "also write the CSV table to this path");

    auto* sc_tv = app.add_subcommand("tv", "exact TV distance curve with bound columns");
    int tv_n = 0;
    std::int64_t tv_tmin = 1, tv_tmax = 1;
    std::string tv_csv;
    sc_tv->add_option("--n", tv_n, "vertex count")->required();
    sc_tv->add_option("--t-min", tv_tmin, "first time step (>= 1)")->required();
    sc_tv->add_option("--t-max", tv_tmax, "last time step")->required();
    sc_tv->add_option("--csv", tv_csv, "also write the CSV table to this path");

    auto* sc_profile =
        app.add_subcommand("profile", "cutoff profile: exact curve plus all bounds");
    int profile_n = 0;
    std::int64_t profile_tmax = 0;
    std::string profile_csv;
    sc_profile->add_option("--n", profile_n, "vertex count")->required();
    sc_profile->add_option("--t-max", profile_tmax, "last time step")->required();
    sc_profile->add_option("--csv", profile_csv, "also write the CSV table to this path");

    auto* sc_hk =
        app.add_subcommand("hk", "verify the k-restricted subgroup structure at (n, k)");
    int hk_n = 0, hk_k = 0;
    bool hk_membership = false;
    sc_hk->add_option("--n", hk_n, "vertex count")->required();
    sc_hk->add_option("--k", hk_k, "subset size")->required();
    sc_hk->add_flag("--membership", hk_membership, "also check 100 random V_k members");

    auto* sc_sweep = app.add_subcommand("hk-sweep", "verify every (n, k) with 4 <= n <= n-max, 2 <= k <= n-2");
    int sweep_nmax = 0, sweep_membership = 100;
    sc_sweep->add_option("--n-max", sweep_nmax, "largest n")->required();
    sc_sweep->add_option("--membership", sweep_membership, "V_k samples per pair (default 100)");

    auto* sc_alt = app.add_subcommand("altcount", "alternating-form rank census vs. its bound");
    int alt_n = 0;
    sc_alt->add_option("--n", alt_n, "matrix dimension")->required();

    auto* sc_tail =
        app.add_subcommand("ranktail", "Monte-Carlo rank tail of random symmetric matrices");
    int tail_n = 0;
    std::uint64_t tail_trials = 100000, tail_seed = 0;
    sc_tail->add_option("--n", tail_n, "matrix dimension")->required();
    sc_tail->add_option("--trials", tail_trials, "sample count")->required();
    sc_tail->add_option("--seed", tail_seed, "rng seed")->required();

    auto* sc_ball = app.add_subcommand("ball", "inversion ball size and its volume bound");
    int ball_n = 0, ball_t = 0;
    std::string ball_csv;
    sc_ball->add_option("--n", ball_n, "vertex count")->required();
    sc_ball->add_option("--t", ball_t, "radius")->required();
    sc_ball->add_option("--csv", ball_csv, "also write the whole curve as CSV to this path");

    auto* sc_sim = app.add_subcommand("simulate", "Monte-Carlo walk simulation");
    std::string sim_variant;
    int sim_n = 0, sim_k = 0, sim_m = 0;
    std::int64_t sim_t = 0;
    std::uint64_t sim_trials = 100000, sim_seed = 0;
    std::string sim_json;
    sc_sim->add_option("--variant", sim_variant, "full, k, or hypercube")->required();
    sc_sim->add_option("--n", sim_n, "vertex count (full / k)");
    sc_sim->add_option("--k", sim_k, "subset size (k variant)");
    sc_sim->add_option("--m", sim_m, "coordinate count (hypercube variant)");
    sc_sim->add_option("--t", sim_t, "time step")->required();
    sc_sim->add_option("--trials", sim_trials, "trial count")->required();
    sc_sim->add_option("--seed", sim_seed, "rng seed")->required();
    sc_sim->add_option("--json", sim_json, "also write the JSON report to this path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInput;
    }

    try {
        if (!g.format.empty() && g.format != "json" && g.format != "csv")
            throw std::invalid_argument("--format must be json or csv");
        if (sc_spectrum->parsed()) return run_spectrum(g, spectrum_n, spectrum_csv);
        if (sc_tv->parsed()) return run_tv(g, tv_n, tv_tmin, tv_tmax, tv_csv);
        if (sc_profile->parsed()) return run_profile(g, profile_n, profile_tmax, profile_csv);
        if (sc_hk->parsed()) return run_hk(g, hk_n, hk_k, hk_membership);
        if (sc_sweep->parsed()) return run_hk_sweep(g, sweep_nmax, sweep_membership);
        if (sc_alt->parsed()) return run_altcount(g, alt_n);
        if (sc_tail->parsed()) return run_ranktail(g, tail_n, tail_trials, tail_seed);
        if (sc_ball->parsed()) return run_ball(g, ball_n, ball_t, ball_csv);
        if (sc_sim->parsed())
            return run_simulate(g, sim_variant, sim_n, sim_k, sim_m, sim_t, sim_trials, sim_seed,
                                sim_json);
        std::cerr << "no subcommand given\n";
        return kExitInput;
    } catch (const CapacityError& e) {
        std::cerr << kTool << ": capacity error: " << e.what() << '\n';
        return kExitCapacity;
    } catch (const std::overflow_error& e) {
        std::cerr << kTool << ": arithmetic overflow: " << e.what() << '\n';
        return kExitCapacity;
    } catch (const VerificationError& e) {
        std::cerr << kTool << ": verification failure: " << e.what() << '\n';
        return kExitVerification;
    } catch (const std::invalid_argument& e) {
        std::cerr << kTool << ": input error: " << e.what() << '\n';
        return kExitInput;
    }
}
