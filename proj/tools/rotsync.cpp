// Experiment driver: rotsync <command> --config <file.json> --seed <u64> --out <dir> [--workers <n>]

#include "rotsync/classifier.hpp"
#include "rotsync/errors.hpp"
#include "rotsync/io.hpp"
#include "rotsync/random_dynamics.hpp"
#include "rotsync/reconstruct.hpp"
#include "rotsync/rng.hpp"
#include "rotsync/rotnum.hpp"

#include <CLI11.hpp>
#include <omp.h>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>

using namespace rotsync;
using io::ConfigError;
using io::json;
namespace fs = std::filesystem;

namespace {

struct Context {
    std::string command;
    json config;
    std::uint64_t seed = 0;
    fs::path out;
};

// Typed config lookups with defaults and range checks.
std::size_t get_size(const json& c, const char* key, std::size_t fallback, std::size_t lo, std::size_t hi)
{
    if (!c.contains(key))
        return fallback;
    const json& v = c.at(key);
    if (!v.is_number_unsigned() || v.get<std::size_t>() < lo || v.get<std::size_t>() > hi)
        throw ConfigError(std::string(key) + " must be an integer in [" + std::to_string(lo) + ", " +
                          std::to_string(hi) + "]");
    return v.get<std::size_t>();
}

double get_double(const json& c, const char* key, double fallback, double lo, double hi)
{
    if (!c.contains(key))
        return fallback;
    const json& v = c.at(key);
    if (!v.is_number() || !(v.get<double>() >= lo && v.get<double>() <= hi))
        throw ConfigError(std::string(key) + " must be a number in [" + std::to_string(lo) + ", " +
                          std::to_string(hi) + "]");
    return v.get<double>();
}

bool get_bool(const json& c, const char* key, bool fallback)
{
    if (!c.contains(key))
        return fallback;
    if (!c.at(key).is_boolean())
        throw ConfigError(std::string(key) + " must be true or false");
    return c.at(key).get<bool>();
}

GeneratorSystem get_system(const json& c, const char* key)
{
    if (!c.contains(key))
        throw ConfigError(std::string("missing field \"") + key + "\"");
    return io::system_from_json(c.at(key));
}

std::string word_string(const Word& w)
{
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i)
            s += ' ';
        s += std::to_string(w[i]);
    }
    return s;
}

std::string fmt(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::ofstream open_csv(const Context& ctx, const char* name, const char* header)
{
    std::ofstream out(ctx.out / name);
    if (!out)
        throw std::runtime_error("cannot write " + (ctx.out / name).string());
    out << header << '\n';
    return out;
}

const char* kind_name(TranslationKind k)
{
    switch (k) {
    case TranslationKind::IntegerExact: return "IntegerExact";
    case TranslationKind::RationalExact: return "RationalExact";
    case TranslationKind::Approximate: return "Approximate";
    }
    return "?";
}

json translation_json(const TranslationResult& t)
{
    json j = {{"kind", kind_name(t.kind)}, {"value", t.value}, {"error_bound", t.error_bound}};
    if (t.exact()) {
        j["p"] = t.p;
        j["q"] = t.q;
    }
    return j;
}

json cmd_rotnum(const Context& ctx)
{
    const json& c = ctx.config;
    GeneratorSystem system = get_system(c, "system");
    double tol = get_double(c, "tol", 1e-6, 1e-12, 0.5);
    std::size_t random_words = get_size(c, "random_words", 20, 0, 1000000);
    std::size_t max_length = get_size(c, "max_length", 8, 1, 100000);

    std::vector<Word> words;
    for (std::size_t i = 0; i < system.size(); ++i)
        words.push_back(Word{static_cast<Letter>(i)});
    if (c.contains("words")) {
        for (const auto& w : c.at("words")) {
            std::vector<Letter> letters;
            for (const auto& l : w) {
                if (!l.is_number_unsigned() || l.get<std::size_t>() >= system.size())
                    throw ConfigError("word letters must index the generators");
                letters.push_back(l.get<Letter>());
            }
            words.emplace_back(std::move(letters));
        }
    }
    LetterSampler sampler(system.nu());
    Rng rng(derive_seed(ctx.seed, 0));
    for (std::size_t t = 0; t < random_words; ++t)
        words.push_back(sample_word(sampler, 1 + static_cast<std::size_t>(rng.below(max_length)), rng));

    auto csv = open_csv(ctx, "translation.csv", "word,kind,value,error_bound,p,q");
    json rows = json::array();
    std::size_t exact = 0;
    for (const auto& w : words) {
        TranslationResult t = translation_number(compose(system, w), tol);
        exact += t.exact();
        csv << word_string(w) << ',' << kind_name(t.kind) << ',' << fmt(t.value) << ',' << fmt(t.error_bound) << ','
            << t.p << ',' << t.q << '\n';
        if (rows.size() < system.size())
            rows.push_back(translation_json(t));
    }
    return {{"generators", rows}, {"words", words.size()}, {"exact", exact}};
}

json cmd_arar(const Context& ctx)
{
    const json& c = ctx.config;
    GeneratorSystem system = get_system(c, "system");
    double tol = get_double(c, "tol", 1e-6, 1e-12, 0.5);
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    if (c.contains("pairs")) {
        for (const auto& p : c.at("pairs")) {
            if (!p.is_array() || p.size() != 2 || !p[0].is_number_unsigned() || !p[1].is_number_unsigned() ||
                p[0].get<std::size_t>() >= system.size() || p[1].get<std::size_t>() >= system.size())
                throw ConfigError("pairs are [i, j] generator indices");
            pairs.emplace_back(p[0].get<std::size_t>(), p[1].get<std::size_t>());
        }
    } else {
        for (std::size_t i = 0; i < system.size(); ++i)
            for (std::size_t j = i + 1; j < system.size(); ++j)
                pairs.emplace_back(i, j);
    }
    json rows = json::array();
    for (auto [i, j] : pairs) {
        CocycleValue v = c_value(system.generator(i), system.generator(j), tol);
        json row = {{"f", i}, {"g", j}, {"exact", v.exact}, {"error_bound", v.error_bound}};
        if (v.exact)
            row["c"] = std::lround(v.value);
        else
            row["c"] = v.value;
        rows.push_back(row);
    }
    return {{"pairs", rows}};
}

double percentile(std::vector<double> v, double q)
{
    std::sort(v.begin(), v.end());
    std::size_t k = static_cast<std::size_t>(std::ceil(q * static_cast<double>(v.size()))) - 1;
    return v[std::min(k, v.size() - 1)];
}

json cmd_sync(const Context& ctx)
{
    const json& c = ctx.config;
    GeneratorSystem system = get_system(c, "system");
    std::size_t length = get_size(c, "length", 200, 1, 1000000);
    int m = static_cast<int>(get_size(c, "m", 16, 2, 100000));
    std::size_t trials = get_size(c, "trials", 100, 1, 1000000);

    std::vector<double> spreads(trials);
    std::vector<double> centers(trials);
    auto n = static_cast<std::ptrdiff_t>(trials);
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t t = 0; t < n; ++t) {
        Word w = sample_word(system.nu(), length, derive_seed(ctx.seed, static_cast<std::uint64_t>(t)));
        SyncReport r = sync_statistic(system, w, m);
        spreads[t] = r.spread;
        centers[t] = r.cluster_center.value();
    }
    auto csv = open_csv(ctx, "spreads.csv", "trial,spread,center");
    for (std::size_t t = 0; t < trials; ++t)
        csv << t << ',' << fmt(spreads[t]) << ',' << fmt(centers[t]) << '\n';
    return {{"median_spread", percentile(spreads, 0.5)},
            {"p95_spread", percentile(spreads, 0.95)},
            {"max_spread", *std::max_element(spreads.begin(), spreads.end())}};
}

json cmd_measure(const Context& ctx)
{
    const json& c = ctx.config;
    GeneratorSystem system = get_system(c, "system");
    std::string dir = c.value("direction", std::string("inverse"));
    if (dir != "inverse" && dir != "forward")
        throw ConfigError("direction must be \"inverse\" or \"forward\"");
    Direction direction = dir == "inverse" ? Direction::Inverse : Direction::Forward;
    std::size_t n_burn = get_size(c, "n_burn", 1000, 0, 100000000);
    std::size_t M = get_size(c, "M", 100000, 1, 100000000);
    std::size_t bins = get_size(c, "bins", 64, 1, 1000000);
    std::size_t arcs = get_size(c, "martingale_arcs", 100, 0, 1000000);

    EmpiricalMeasure mu = estimate_stationary(system, direction, n_burn, M, derive_seed(ctx.seed, 0));
    Histogram hist = Histogram::from_measure(mu, bins);
    // The inverse-walk measure is stationary for the inverted generators.
    GeneratorSystem stepping = direction == Direction::Inverse ? system.inverted() : system;
    Histogram pushed = transfer_apply(stepping, hist);
    {
        std::ofstream out(ctx.out / "samples.csv");
        mu.write_csv(out);
        std::ofstream h(ctx.out / "histogram.csv");
        hist.write_csv(h);
    }
    json results = {{"samples", M},
                    {"ks_to_uniform", mu.ks_to_uniform()},
                    {"stationarity_defect", stationarity_defect(stepping, mu)},
                    {"transfer_l1", l1_distance(hist, pushed)}};
    if (direction == Direction::Inverse && arcs > 0) {
        // The martingale identity concerns the inverse-walk measure.
        Rng rng(derive_seed(ctx.seed, 1));
        double worst = 0.0;
        for (std::size_t t = 0; t < arcs; ++t) {
            CirclePoint x(rng.uniform()), y(rng.uniform());
            worst = std::max(worst, martingale_residual(system, mu, x, y));
        }
        results["martingale_max_residual"] = worst;
        results["martingale_arcs"] = arcs;
    }
    return results;
}

json classification_json(const ClassificationReport& r)
{
    json atoms = json::array();
    for (const auto& a : r.atom_masses)
        atoms.push_back({{"j", a.j}, {"l", a.l}, {"mass", a.mass}});
    return {{"verdict", to_string(r.verdict)}, {"l", r.l},
            {"zero_fraction", r.zero_fraction}, {"ks_to_uniform", r.ks_to_uniform},
            {"atom_masses", atoms}, {"N", r.N_used}, {"M", r.M_used}};
}

json cmd_classify(const Context& ctx)
{
    const json& c = ctx.config;
    GeneratorSystem system = get_system(c, "system");
    std::size_t N = get_size(c, "N", 200, 1, 100000000);
    std::size_t M = get_size(c, "M", 10000, 1, 100000000);
    ClassifierThresholds th;
    th.atom_total = get_double(c, "atom_total", th.atom_total, 0, 1);
    th.atom_share = get_double(c, "atom_share", th.atom_share, 0, 1);
    th.sync_mass = get_double(c, "sync_mass", th.sync_mass, 0, 1);
    th.ks_max = get_double(c, "ks_max", th.ks_max, 0, 1);
    th.l_max = static_cast<int>(get_size(c, "l_max", static_cast<std::size_t>(th.l_max), 2, 64));

    EmpiricalMeasure spectrum = rotation_spectrum(system, N, M, derive_seed(ctx.seed, 0), Execution::Parallel,
                                                  static_cast<long>(th.l_max));
    {
        std::ofstream out(ctx.out / "spectrum.csv");
        spectrum.write_csv(out);
    }
    return classification_json(classify_spectrum(spectrum, N, th));
}

json cmd_reconstruct(const Context& ctx)
{
    const json& c = ctx.config;
    ActionPair pair(get_system(c, "first"), get_system(c, "second"));
    ReconstructParams p;
    p.eps_a = get_double(c, "eps_a", p.eps_a, 1e-9, 0.1);
    p.eps_r = get_double(c, "eps_r", p.eps_r, 1e-9, 0.1);
    p.grid = get_size(c, "grid", p.grid, 8, 1000000);
    p.m_good = get_size(c, "m_good", p.m_good, 2, 100000);
    p.good_length = get_size(c, "good_length", p.good_length, 1, 100000);
    p.good_budget = get_size(c, "good_budget", p.good_budget, 1, 100000000);
    p.delta_samples = get_size(c, "delta_samples", p.delta_samples, 1, 100000000);
    p.delta_length = get_size(c, "delta_length", p.delta_length, 1, 100000);
    p.mu_samples = get_size(c, "mu_samples", p.mu_samples, 10, 100000000);
    p.mu_burn = get_size(c, "mu_burn", p.mu_burn, 0, 100000000);
    p.spot_words = get_size(c, "spot_words", p.spot_words, 0, 1000000);
    bool with_b = get_bool(c, "route_b", true);
    std::string type = c.value("type", std::string("auto"));

    Reconstruction rec;
    if (type == "auto") {
        rec = reconstruct(pair, ctx.seed, p, get_size(c, "N", 200, 1, 100000000), get_size(c, "M", 10000, 1, 100000000),
                          with_b);
    } else if (type == "synchronizing") {
        rec = build_conjugacy(pair, ctx.seed, p, with_b);
    } else if (type == "invariant") {
        rec = build_conjugacy_invariant(pair, ctx.seed, p);
    } else if (type == "factorizable") {
        rec = build_conjugacy_factor(pair, static_cast<int>(get_size(c, "l", 2, 2, 64)), ctx.seed, p, with_b);
    } else {
        throw ConfigError("type must be auto, synchronizing, invariant or factorizable");
    }

    io::write_table_csv(ctx.out / "psi.csv", rec.psi);
    json results = {{"type", to_string(rec.type)},
                    {"l", rec.l},
                    {"residual", rec.residual},
                    {"monotone_degree_one", rec.psi.monotone_degree_one()},
                    {"anchor", {rec.psi.anchor_from.value(), rec.psi.anchor_to.value()}}};
    if (rec.type != Verdict::InvariantMeasure) {
        const MSFamily& ms = rec.family;
        results["family"] = {{"prefix_length", ms.prefix_length},
                             {"base_length", ms.base.size()},
                             {"separating_word", ms.separating.letters()},
                             {"checkpoints", ms.checkpoints},
                             {"a", {ms.a[0].value(), ms.a[1].value()}},
                             {"r", {ms.r[0].value(), ms.r[1].value()}},
                             {"contraction_log", ms.contraction_log},
                             {"centers", ms.centers}};
    }
    const RouteBStats& b = rec.route_b;
    if (!b.words.empty()) {
        results["route_b"] = {{"good_words", b.words.size()},
                              {"excluded_words", b.excluded_words},
                              {"delta_samples", b.delta_samples},
                              {"degenerate_samples", b.degenerate_samples},
                              {"tolerance", b.tolerance},
                              {"agreement_fraction", b.agreement_fraction},
                              {"max_difference", b.max_difference},
                              {"concordance", b.concordance}};
        auto csv = open_csv(ctx, "route_b.csv", "word,s1,s2,direct1,direct2,image1,image2");
        for (std::size_t i = 0; i < b.words.size(); ++i)
            csv << word_string(b.words[i]) << ',' << fmt(b.positions[0][i]) << ',' << fmt(b.positions[1][i]) << ','
                << fmt(b.direct_positions[0][i]) << ',' << fmt(b.direct_positions[1][i]) << ','
                << fmt(b.images[0][i]) << ',' << fmt(b.images[1][i]) << '\n';
    }
    return results;
}

json cmd_fixtures(const Context& ctx)
{
    return {{"files", io::emit_fixtures(ctx.out)}};
}

std::string error_kind(const Error& e)
{
    if (dynamic_cast<const Inconclusive*>(&e)) return "Inconclusive";
    if (dynamic_cast<const NestingViolation*>(&e)) return "NestingViolation";
    if (dynamic_cast<const NotEquivariant*>(&e)) return "NotEquivariant";
    if (dynamic_cast<const AtomDetected*>(&e)) return "AtomDetected";
    if (dynamic_cast<const NoConvergentSubsequence*>(&e)) return "NoConvergentSubsequence";
    if (dynamic_cast<const NoSeparatingWord*>(&e)) return "NoSeparatingWord";
    if (dynamic_cast<const TranslationMismatch*>(&e)) return "TranslationMismatch";
    if (dynamic_cast<const InsufficientGoodWords*>(&e)) return "InsufficientGoodWords";
    if (dynamic_cast<const DegenerateSampling*>(&e)) return "DegenerateSampling";
    if (dynamic_cast<const PreconditionViolation*>(&e)) return "PreconditionViolation";
    return "Error";
}

json envelope(const Context& ctx)
{
    return {{"command", ctx.command}, {"seed", ctx.seed}, {"config", ctx.config}};
}

} // namespace

int main(int argc, char** argv)
{
    const std::vector<std::string> commands = {"rotnum", "arar", "sync", "measure", "classify", "reconstruct", "fixtures"};
    CLI::App app{"Rotation numbers, random circle dynamics and conjugacy reconstruction"};
    Context ctx;
    std::string config_path;
    int workers = 0;
    app.add_option("command", ctx.command, "Experiment to run")->required()->check(CLI::IsMember(commands));
    app.add_option("--config", config_path, "JSON configuration file");
    app.add_option("--seed", ctx.seed, "Root seed")->required();
    app.add_option("--out", ctx.out, "Output directory")->required();
    app.add_option("--workers", workers, "Thread cap")->check(CLI::PositiveNumber);
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }
    if (workers > 0)
        omp_set_num_threads(workers);

    try {
        if (!config_path.empty())
            ctx.config = io::read_json(config_path);
        else if (ctx.command != "fixtures")
            throw ConfigError("--config is required for " + ctx.command);
        else
            ctx.config = json::object();
        if (!ctx.config.is_object())
            throw ConfigError("config must be a JSON object");
        fs::create_directories(ctx.out);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 1;
    } catch (const fs::filesystem_error& e) {
        std::cerr << "cannot create output directory: " << e.what() << '\n';
        return 1;
    }

    json report = envelope(ctx);
    try {
        if (ctx.command == "rotnum") report["results"] = cmd_rotnum(ctx);
        else if (ctx.command == "arar") report["results"] = cmd_arar(ctx);
        else if (ctx.command == "sync") report["results"] = cmd_sync(ctx);
        else if (ctx.command == "measure") report["results"] = cmd_measure(ctx);
        else if (ctx.command == "classify") report["results"] = cmd_classify(ctx);
        else if (ctx.command == "reconstruct") report["results"] = cmd_reconstruct(ctx);
        else report["results"] = cmd_fixtures(ctx);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 1;
    } catch (const Inconclusive& e) {
        report["error"] = {{"kind", error_kind(e)}, {"message", e.what()}};
        report["results"] = classification_json(e.report());
        io::write_json(ctx.out / "report.json", report);
        std::cerr << "inconclusive: " << e.what() << '\n';
        return 2;
    } catch (const Error& e) {
        report["error"] = {{"kind", error_kind(e)}, {"message", e.what()}};
        io::write_json(ctx.out / "report.json", report);
        std::cerr << error_kind(e) << ": " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return 1;
    }
    io::write_json(ctx.out / "report.json", report);
    std::cout << (ctx.out / "report.json").string() << '\n';
    return 0;
}
