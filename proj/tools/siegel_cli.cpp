// Command-line frontend: fundamental-domain reduction, invariant distances,
// stabilizing embeddings, boundary strata, hyperelliptic periods,
// degeneration probes, and stratified Monte Carlo integration, all with JSON
// input/output. Exit codes: 0 success, 1 input/output failure, 2 domain
// error (structured JSON on stdout), 64 usage error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "siegel/siegel.hpp"

namespace {

using nlohmann::json;
using namespace siegel;

// Fixed default seed: published numbers stay reproducible, never wall-clock.
constexpr uint64_t kDefaultSeed = 271828;

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Inline JSON, or @path to read it from a file.
json parse_arg(const std::string& arg) {
    if (!arg.empty() && arg[0] == '@') return json::parse(read_file(arg.substr(1)));
    return json::parse(arg);
}

// key = value lines; '#' starts a comment.
std::map<std::string, std::string> parse_config_file(const std::string& path) {
    std::map<std::string, std::string> kv;
    std::istringstream in(read_file(path));
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            const auto a = s.find_first_not_of(" \t\r");
            const auto b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (!key.empty()) kv[key] = val;
    }
    return kv;
}

void emit(const json& j, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << j.dump() << "\n";
    } else {
        std::ofstream out(out_path);
        if (!out) throw std::runtime_error("cannot write file: " + out_path);
        out << j.dump() << "\n";
    }
}

struct McOptions {
    double alpha = 1.0;
    int gmax = 2;
    long long n_samples = 100000;
    uint64_t seed = kDefaultSeed;
    int workers = 1;
    int dimension_N = 26;  // accepted from config for forward compatibility
    bool include_genus0 = false;
};

// Registers the shared MC flags and returns the CLI options so the config
// file can fill in whatever was not given explicitly on the command line.
struct McFlags {
    CLI::Option *alpha, *gmax, *n, *seed, *workers;
};

McFlags add_mc_flags(CLI::App* cmd, McOptions& o) {
    McFlags f;
    f.alpha = cmd->add_option("--alpha", o.alpha, "string weight parameter");
    f.gmax = cmd->add_option("--gmax", o.gmax, "truncation genus (<= 2)");
    f.n = cmd->add_option("--n", o.n_samples, "samples per stratum");
    f.seed = cmd->add_option("--seed", o.seed, "RNG seed");
    f.workers = cmd->add_option("--workers", o.workers, "worker thread count");
    cmd->add_flag("--include-genus0", o.include_genus0,
                  "include the genus-0 point stratum as a unit atom");
    return f;
}

void merge_config(const std::string& path, McOptions& o, const McFlags& f) {
    if (path.empty()) return;
    const auto kv = parse_config_file(path);
    auto get = [&](const char* key) -> const std::string* {
        auto it = kv.find(key);
        return it == kv.end() ? nullptr : &it->second;
    };
    if (const auto* v = get("alpha"); v && f.alpha->count() == 0) o.alpha = std::stod(*v);
    if (const auto* v = get("gmax"); v && f.gmax->count() == 0) o.gmax = std::stoi(*v);
    if (const auto* v = get("G"); v && f.gmax->count() == 0) o.gmax = std::stoi(*v);
    if (const auto* v = get("n_samples"); v && f.n->count() == 0) o.n_samples = std::stoll(*v);
    if (const auto* v = get("seed"); v && f.seed->count() == 0) o.seed = std::stoull(*v);
    if (const auto* v = get("workers"); v && f.workers->count() == 0) o.workers = std::stoi(*v);
    if (const auto* v = get("N")) o.dimension_N = std::stoi(*v);
}

StratifiedMeasureConfig to_measure_config(const McOptions& o) {
    StratifiedMeasureConfig cfg;
    cfg.mode = WeightMode::String;
    cfg.alpha = o.alpha;
    cfg.truncation_genus = o.gmax;
    cfg.rng_seed = o.seed;
    cfg.n_samples = o.n_samples;
    cfg.workers = o.workers;
    cfg.include_genus0 = o.include_genus0;
    return cfg;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Siegel upper half space toolkit"};
    app.require_subcommand(1);
    std::string out_path;
    app.add_option("--out", out_path, "write the result JSON to a file")
        ->capture_default_str();

    // reduce
    auto* reduce_cmd = app.add_subcommand("reduce", "reduce a point to the fundamental domain");
    std::string reduce_point;
    reduce_cmd->add_option("--point", reduce_point, "SiegelPoint JSON (or @file)")->required();

    // distance
    auto* dist_cmd = app.add_subcommand("distance", "invariant distance between two points");
    std::string dist_a, dist_b;
    dist_cmd->add_option("--a", dist_a, "first SiegelPoint JSON (or @file)")->required();
    dist_cmd->add_option("--b", dist_b, "second SiegelPoint JSON (or @file)")->required();

    // embed
    auto* embed_cmd = app.add_subcommand("embed", "stabilizing embedding / canonical representative");
    std::string embed_point_json;
    int embed_target = 0;
    bool embed_stabilize = false;
    embed_cmd->add_option("--point", embed_point_json, "SiegelPoint JSON (or @file)")->required();
    embed_cmd->add_option("--target-genus", embed_target, "pad up to this genus");
    embed_cmd->add_flag("--stabilize", embed_stabilize, "strip trailing padding instead");

    // strata
    auto* strata_cmd = app.add_subcommand("strata", "enumerate boundary strata");
    int strata_genus = 2;
    bool strata_interior = false;
    strata_cmd->add_option("--genus", strata_genus, "ambient genus")->required();
    strata_cmd->add_flag("--include-interior", strata_interior, "also list the interior stratum");

    // period
    auto* period_cmd = app.add_subcommand("period", "period matrix of a hyperelliptic curve");
    std::string period_curve;
    period_cmd->add_option("--curve", period_curve,
                           "{\"branch_points\": [..], \"normalize\": bool} (or @file)")
        ->required();

    // degenerate
    auto* degen_cmd = app.add_subcommand("degenerate", "probe a degeneration family");
    std::string degen_family;
    degen_cmd->add_option("--family", degen_family,
                          "{\"kind\": \"sep\"|\"nonsep\", \"epsilons\": [..]} (or @file)")
        ->required();

    // volume
    auto* vol_cmd = app.add_subcommand("volume", "fundamental-domain volume");
    int vol_genus = 1;
    bool vol_quadrature = false;
    McOptions vol_opts;
    vol_cmd->add_option("--genus", vol_genus, "stratum genus (1 or 2)")->required();
    vol_cmd->add_flag("--quadrature", vol_quadrature, "deterministic quadrature (genus 1)");
    McFlags vol_flags = add_mc_flags(vol_cmd, vol_opts);

    // integrate
    auto* int_cmd = app.add_subcommand("integrate", "stratified Monte Carlo integral");
    McOptions int_opts;
    std::string int_f = "one";
    McFlags int_flags = add_mc_flags(int_cmd, int_opts);
    int_cmd->add_option("--integrand", int_f, "per-stratum integrand")
        ->check(CLI::IsMember({"one", "inv-trace-y"}));

    // partition
    auto* part_cmd = app.add_subcommand("partition", "truncated string partition function");
    McOptions part_opts;
    McFlags part_flags = add_mc_flags(part_cmd, part_opts);

    std::string config_path;
    for (auto* cmd : {vol_cmd, int_cmd, part_cmd})
        cmd->add_option("--config", config_path, "key = value config file, merged under flags");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 64;
    }

    try {
        json result;
        if (*reduce_cmd) {
            const SiegelPoint Z = io::point_from_json(parse_arg(reduce_point));
            const SiegelReductionResult r = siegel_reduce(Z);
            result = {{"reduced", io::to_json(r.reduced)},
                      {"transform", io::to_json(r.transform)},
                      {"word_length", r.word_length}};
        } else if (*dist_cmd) {
            const SiegelPoint a = io::point_from_json(parse_arg(dist_a));
            const SiegelPoint b = io::point_from_json(parse_arg(dist_b));
            const double d = a.genus() == b.genus()
                                 ? siegel_distance(a, b)
                                 : universal_distance(UniversalPoint(a), UniversalPoint(b));
            result = {{"distance", io::round15(d)}};
        } else if (*embed_cmd) {
            const SiegelPoint Z = io::point_from_json(parse_arg(embed_point_json));
            if (embed_stabilize) {
                result = io::to_json(stabilize(Z));
            } else {
                if (embed_target <= 0)
                    throw invalid_config("embed: --target-genus or --stabilize required");
                result = io::to_json(UniversalPoint(embed_point(Z, embed_target)));
            }
        } else if (*strata_cmd) {
            json list = json::array();
            for (const auto& d : enumerate_boundary_strata(strata_genus, strata_interior))
                list.push_back(io::to_json(d));
            result = {{"strata", list}};
        } else if (*period_cmd) {
            const json in = parse_arg(period_curve);
            const auto pts = in.at("branch_points").get<std::vector<double>>();
            const bool normalize = in.value("normalize", true);
            const HyperellipticCurve curve =
                pts.size() % 2 == 1 ? HyperellipticCurve::from_odd_model(pts)
                                    : HyperellipticCurve(pts);
            const SiegelPoint Z = period_matrix(curve);
            result = {{"period", io::to_json(Z)}};
            if (normalize) {
                const SiegelReductionResult r = siegel_reduce(Z);
                result["reduced"] = io::to_json(r.reduced);
                result["transform"] = io::to_json(r.transform);
                result["word_length"] = r.word_length;
            }
        } else if (*degen_cmd) {
            const json in = parse_arg(degen_family);
            const std::string kind = in.at("kind").get<std::string>();
            if (kind != "sep" && kind != "nonsep")
                throw invalid_family("degenerate: kind must be \"sep\" or \"nonsep\"");
            const auto fam = make_family(kind == "sep" ? DegenerationKind::Separating
                                                       : DegenerationKind::NonSeparating,
                                         in.at("epsilons").get<std::vector<double>>());
            result = io::to_json(neck_limit_probe(fam));
        } else if (*vol_cmd) {
            merge_config(config_path, vol_opts, vol_flags);
            const MCResult r = stratum_volume(vol_genus, vol_opts.n_samples, vol_opts.seed,
                                              vol_quadrature, vol_opts.workers);
            result = io::to_json(r);
        } else if (*int_cmd) {
            merge_config(config_path, int_opts, int_flags);
            StratifiedIntegrand f;
            if (int_f == "one")
                f = [](int, const SiegelPoint*) { return 1.0; };
            else
                f = [](int g, const SiegelPoint* z) {
                    return g == 0 ? 1.0 : 1.0 / z->Y().trace();
                };
            result = io::to_json(integrate_stratified(f, to_measure_config(int_opts)));
        } else if (*part_cmd) {
            merge_config(config_path, part_opts, part_flags);
            const PartitionResult r = partition_function(to_measure_config(part_opts));
            result = {{"estimate", io::round15(r.value)},
                      {"stderr", io::round15(r.std_error)},
                      {"n", r.n_samples},
                      {"seed", r.seed},
                      {"tail_bound", io::round15(r.tail_bound)}};
        }
        emit(result, out_path);
        return 0;
    } catch (const domain_error& e) {
        emit(json{{"error_kind", e.kind()}, {"message", e.what()}}, out_path);
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
