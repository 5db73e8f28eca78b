// cutsel — batch experiment driver for the cut-selection pipeline.
//
// Subcommands: adversarial, grid-search, train, evaluate, rerun. Each command
// writes a JSON run manifest before any other output; `rerun <manifest>`
// replays a recorded invocation and reproduces its outputs bit-exactly (the
// whole pipeline is single-threaded and deterministic).
//
// Exit codes: 0 success, 1 violated run expectation, 2 usage/input error.

#include "cutsel/encode.hpp"
#include "cutsel/family.hpp"
#include "cutsel/format.hpp"
#include "cutsel/milp.hpp"
#include "cutsel/policy.hpp"
#include "cutsel/rng.hpp"
#include "cutsel/scoring.hpp"
#include "cutsel/trainer.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace {

using cutsel::fmt17;
using ordered_json = nlohmann::ordered_json;

// Raised for anything that makes the invocation itself unusable (bad flag
// values, unreadable inputs, unwritable outputs) -> exit code 2. Failures of
// a run's declared expectations return 1 instead.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

template <typename F>
auto as_input(F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const UsageError&) {
        throw;
    } catch (const std::exception& e) {
        throw UsageError(e.what());
    }
}

struct GlobalOpts {
    std::uint64_t seed = 0;
    bool deterministic = true;
};

double parse_double(const std::string& s) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &pos);
    } catch (const std::exception&) {
        throw UsageError("malformed grid value: '" + s + "'");
    }
    if (pos != s.size()) throw UsageError("malformed grid value: '" + s + "'");
    return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    for (char ch : s) {
        if (ch == sep) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    parts.push_back(cur);
    return parts;
}

// Grid syntax: "start:step:end" (inclusive arithmetic progression), a comma
// list "v1,v2,...", or a single value. Values are sorted and deduplicated.
std::vector<double> parse_grid(const std::string& spec) {
    std::vector<double> values;
    if (spec.find(':') != std::string::npos) {
        const auto parts = split(spec, ':');
        if (parts.size() != 3) throw UsageError("grid range must be start:step:end, got '" + spec + "'");
        const double start = parse_double(parts[0]);
        const double step = parse_double(parts[1]);
        const double end = parse_double(parts[2]);
        if (!(step > 0.0)) throw UsageError("grid step must be positive");
        if (end < start) throw UsageError("grid end must be >= start");
        const long count = std::lround(std::floor((end - start) / step + 1e-9));
        if (count > 1000000) throw UsageError("grid has too many points");
        for (long i = 0; i <= count; ++i) values.push_back(start + static_cast<double>(i) * step);
    } else {
        for (const auto& part : split(spec, ',')) {
            if (part.empty()) throw UsageError("empty grid value in '" + spec + "'");
            values.push_back(parse_double(part));
        }
    }
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    if (values.empty()) throw UsageError("grid is empty");
    return values;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw UsageError("cannot open output file: " + path);
    return f;
}

void finish_out(std::ofstream& f, const std::string& path) {
    f.flush();
    if (!f) throw UsageError("write failed: " + path);
}

// RFC-4180 quoting for fields that carry separators or quotes.
std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += "\"\"";
        out.push_back(ch);
    }
    out += "\"";
    return out;
}

void write_manifest(const std::string& path, const std::string& command,
                    const ordered_json& parameters, const GlobalOpts& g,
                    const std::vector<std::string>& outputs) {
    ordered_json j;
    j["command"] = command;
    j["parameters"] = parameters;
    j["seed"] = g.seed;
    j["deterministic"] = g.deterministic;
    j["artifact_version"] = "1.0.0";
    j["outputs"] = outputs;
    auto f = open_out(path);
    f << j.dump(2) << "\n";
    finish_out(f, path);
}

// ---------------------------------------------------------------------------
// adversarial
// ---------------------------------------------------------------------------

struct AdvOpts {
    std::string grid = "0:0.1:1";
    int max_rounds = 1000;
    std::string out = "outcomes.csv";
    std::string certificate = "certificate.json";
};

int run_adversarial(const GlobalOpts& g, const AdvOpts& o) {
    const std::vector<double> grid = parse_grid(o.grid);
    const cutsel::AdversarialResult res =
        as_input([&] { return cutsel::construct_adversarial(grid); });
    const double midpoint = 0.5 * (res.interval.lb + res.interval.ub);

    ordered_json params;
    params["grid"] = o.grid;
    params["grid_values"] = grid;
    params["max_rounds"] = o.max_rounds;
    params["out"] = o.out;
    params["certificate"] = o.certificate;
    write_manifest(o.out + ".manifest.json", "adversarial", params, g, {o.out, o.certificate});

    const double ref = -9.0 - res.params.d; // objective of the integer optimum (1, 1, 0)
    auto csv = open_out(o.out);
    csv << "lambda,status,rounds,final_gap,chosen_type_round1\n";

    int grid_not_solved = 0;
    auto emit = [&](double lambda, const cutsel::SimOutcome& sim) {
        const double bound = sim.lp_objectives.back();
        const double gap = (ref - bound) / std::max(std::abs(ref), 1e-8);
        csv << fmt17(lambda) << "," << to_string(sim.status) << "," << sim.rounds_run << ","
            << fmt17(gap) << ","
            << (sim.chosen_types.empty() ? "" : to_string(sim.chosen_types.front())) << "\n";
    };

    for (double lambda : grid) {
        const auto sim = cutsel::simulate_pure_cutting(res.params, lambda, o.max_rounds);
        if (sim.status == cutsel::SimStatus::NotSolved) ++grid_not_solved;
        emit(lambda, sim);
    }
    const auto mid_sim = cutsel::simulate_pure_cutting(res.params, midpoint, o.max_rounds);
    emit(midpoint, mid_sim);
    finish_out(csv, o.out);

    ordered_json cert;
    cert["d"] = res.params.d;
    cert["a"] = res.params.a;
    cert["eps_hat"] = res.eps_hat;
    cert["lambda_lb"] = res.interval.lb;
    cert["lambda_ub"] = res.interval.ub;
    cert["midpoint"] = midpoint;
    cert["gap_lo"] = res.gap_lo;
    cert["gap_hi"] = res.gap_hi;
    cert["grid"] = grid;
    {
        auto f = open_out(o.certificate);
        f << cert.dump(2) << "\n";
        finish_out(f, o.certificate);
    }

    const bool mid_ok = mid_sim.status == cutsel::SimStatus::SolvedByGC && mid_sim.solved_round == 1;
    const bool grid_ok = grid_not_solved == static_cast<int>(grid.size());
    if (!grid_ok) {
        std::cerr << "expectation violated: " << (grid.size() - grid_not_solved) << " of "
                  << grid.size() << " grid values were solved\n";
        return 1;
    }
    if (!mid_ok) {
        std::cerr << "expectation violated: interval midpoint " << fmt17(midpoint)
                  << " was not solved at round 1 (status " << to_string(mid_sim.status)
                  << ", round " << mid_sim.solved_round << ")\n";
        return 1;
    }
    std::cout << "adversarial family a=" << fmt17(res.params.a) << " d=" << fmt17(res.params.d)
              << ": all " << grid.size() << " grid values NotSolved after " << o.max_rounds
              << " rounds, midpoint " << fmt17(midpoint) << " solved at round 1\n";
    return 0;
}

// ---------------------------------------------------------------------------
// grid-search
// ---------------------------------------------------------------------------

struct GridOpts {
    std::string instance;
    int resolution = 10;
    int rounds = 5;
    int cuts_per_round = 5;
    std::string out = "grid.csv";
    std::string best = "best_weights.json";
};

int run_grid_search(const GlobalOpts& g, const GridOpts& o) {
    const cutsel::MilpInstance inst = as_input([&] { return cutsel::load_instance(o.instance); });

    ordered_json params;
    params["instance"] = o.instance;
    params["resolution"] = o.resolution;
    params["rounds"] = o.rounds;
    params["cuts_per_round"] = o.cuts_per_round;
    params["out"] = o.out;
    params["best"] = o.best;
    write_manifest(o.out + ".manifest.json", "grid-search", params, g, {o.out, o.best});

    cutsel::RolloutConfig cfg;
    cfg.n_rounds = o.rounds;
    cfg.cuts_per_round = o.cuts_per_round;
    const cutsel::GridResult res = cutsel::grid_search(inst, o.resolution, cfg);

    auto csv = open_out(o.out);
    csv << "l1,l2,l3,l4,gap,improvement\n";
    for (const auto& row : res.table) {
        csv << fmt17(row.w[0]) << "," << fmt17(row.w[1]) << "," << fmt17(row.w[2]) << ","
            << fmt17(row.w[3]) << "," << fmt17(row.gap) << "," << fmt17(row.improvement) << "\n";
    }
    finish_out(csv, o.out);

    ordered_json best;
    best["instance"] = inst.name;
    best["resolution"] = o.resolution;
    best["best_weights"] = res.best_weights;
    best["best_gap"] = res.best_gap;
    best["baseline_gap"] = res.baseline_gap;
    best["improvement"] = cutsel::relative_improvement(res.baseline_gap, res.best_gap);
    {
        auto f = open_out(o.best);
        f << best.dump(2) << "\n";
        finish_out(f, o.best);
    }

    std::cout << "grid search over " << res.table.size() << " scenarios: best gap "
              << fmt17(res.best_gap) << " vs baseline " << fmt17(res.baseline_gap) << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// train
// ---------------------------------------------------------------------------

struct TrainOpts {
    std::string corpus;
    int epochs = 200;
    int samples = 20;
    int seeds = 16;
    int width = 32;
    std::string out_prefix = "train";
};

int run_train(const GlobalOpts& g, const TrainOpts& o) {
    std::vector<std::string> files = as_input([&] {
        namespace fs = std::filesystem;
        std::vector<std::string> found;
        for (const auto& entry : fs::directory_iterator(o.corpus)) {
            if (entry.is_regular_file() && entry.path().extension() == ".json") {
                found.push_back(entry.path().string());
            }
        }
        std::sort(found.begin(), found.end());
        if (found.empty()) throw UsageError("empty corpus: no *.json instances in " + o.corpus);
        return found;
    });
    std::vector<cutsel::MilpInstance> batch;
    for (const auto& f : files) {
        batch.push_back(as_input([&] { return cutsel::load_instance(f); }));
    }

    const std::string ckpt_path = o.out_prefix + ".ckpt";
    const std::string log_path = o.out_prefix + ".log.csv";
    ordered_json params;
    params["corpus"] = o.corpus;
    params["corpus_files"] = files;
    params["epochs"] = o.epochs;
    params["samples"] = o.samples;
    params["seeds"] = o.seeds;
    params["width"] = o.width;
    params["out_prefix"] = o.out_prefix;
    write_manifest(o.out_prefix + ".manifest.json", "train", params, g, {ckpt_path, log_path});

    std::vector<cutsel::BipartiteGraph> graphs;
    graphs.reserve(batch.size());
    for (const auto& inst : batch) graphs.push_back(cutsel::encode(inst));
    const std::uint64_t init_seed =
        cutsel::seed_search(graphs, o.seeds, static_cast<std::size_t>(o.width));
    cutsel::PolicyParams theta =
        cutsel::PolicyParams::init(init_seed, static_cast<std::size_t>(o.width));
    cutsel::AdamState adam(theta.count());
    cutsel::SplitMix64 rng(g.seed);
    cutsel::RolloutConfig cfg;

    auto log = open_out(log_path);
    log << "epoch,mean_reward,mean_logprob,gamma,wallclock_ms\n";
    for (int e = 1; e <= o.epochs; ++e) {
        const auto t0 = std::chrono::steady_clock::now();
        const double gamma = cutsel::gamma_schedule(e - 1, o.epochs);
        const cutsel::EpochStats stats =
            cutsel::reinforce_batch(theta, adam, batch, o.samples, gamma, cfg, rng);
        const double ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                .count();
        log << e << "," << fmt17(stats.mean_reward) << "," << fmt17(stats.mean_logprob) << ","
            << fmt17(stats.gamma) << "," << fmt17(ms) << "\n";
        log.flush();
    }
    finish_out(log, log_path);
    as_input([&] {
        cutsel::save_checkpoint(theta, ckpt_path);
        return 0;
    });

    std::cout << "seed search over " << o.seeds << " candidates picked seed " << init_seed
              << "; trained " << o.epochs << " epochs on " << batch.size()
              << " instances; checkpoint " << ckpt_path << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// evaluate
// ---------------------------------------------------------------------------

struct EvalOpts {
    std::string checkpoint;
    std::vector<std::string> instances;
    int rounds = 5;
    int cuts_per_round = 5;
    std::string out = "eval.csv";
};

int run_evaluate(const GlobalOpts& g, const EvalOpts& o) {
    const cutsel::PolicyParams theta =
        as_input([&] { return cutsel::load_checkpoint(o.checkpoint); });

    ordered_json params;
    params["checkpoint"] = o.checkpoint;
    params["instances"] = o.instances;
    params["rounds"] = o.rounds;
    params["cuts_per_round"] = o.cuts_per_round;
    params["out"] = o.out;
    write_manifest(o.out + ".manifest.json", "evaluate", params, g, {o.out});

    cutsel::RolloutConfig cfg;
    cfg.n_rounds = o.rounds;
    cfg.cuts_per_round = o.cuts_per_round;

    auto csv = open_out(o.out);
    csv << "instance,mu1,mu2,mu3,mu4,gap,improvement\n";
    for (const auto& path : o.instances) {
        const cutsel::MilpInstance inst = as_input([&] { return cutsel::load_instance(path); });
        const cutsel::BipartiteGraph graph = cutsel::encode(inst);
        const std::array<double, 4> mu = cutsel::forward(graph, theta);
        // Greedy readout: the mean action is used directly as raw weights.
        const double gap =
            cutsel::rollout(inst, cutsel::ScoringWeights::weighted(mu, false), cfg);
        const double baseline_gap = cutsel::rollout(inst, cfg.baseline_weights, cfg);
        const double improvement = cutsel::relative_improvement(baseline_gap, gap);
        csv << csv_field(path) << "," << fmt17(mu[0]) << "," << fmt17(mu[1]) << ","
            << fmt17(mu[2]) << "," << fmt17(mu[3]) << "," << fmt17(gap) << ","
            << fmt17(improvement) << "\n";
    }
    finish_out(csv, o.out);
    std::cout << "evaluated " << o.instances.size() << " instances -> " << o.out << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// rerun
// ---------------------------------------------------------------------------

int run_rerun(const std::string& manifest_path) {
    const ordered_json m = as_input([&] {
        std::ifstream f(manifest_path, std::ios::binary);
        if (!f) throw UsageError("cannot open manifest: " + manifest_path);
        return ordered_json::parse(f);
    });
    return as_input([&] {
        const std::string cmd = m.at("command").get<std::string>();
        GlobalOpts g;
        g.seed = m.at("seed").get<std::uint64_t>();
        g.deterministic = m.value("deterministic", true);
        const ordered_json& p = m.at("parameters");
        std::function<int()> runner;
        if (cmd == "adversarial") {
            AdvOpts o;
            o.grid = p.at("grid").get<std::string>();
            o.max_rounds = p.at("max_rounds").get<int>();
            o.out = p.at("out").get<std::string>();
            o.certificate = p.at("certificate").get<std::string>();
            runner = [g, o] { return run_adversarial(g, o); };
        } else if (cmd == "grid-search") {
            GridOpts o;
            o.instance = p.at("instance").get<std::string>();
            o.resolution = p.at("resolution").get<int>();
            o.rounds = p.at("rounds").get<int>();
            o.cuts_per_round = p.at("cuts_per_round").get<int>();
            o.out = p.at("out").get<std::string>();
            o.best = p.at("best").get<std::string>();
            runner = [g, o] { return run_grid_search(g, o); };
        } else if (cmd == "train") {
            TrainOpts o;
            o.corpus = p.at("corpus").get<std::string>();
            o.epochs = p.at("epochs").get<int>();
            o.samples = p.at("samples").get<int>();
            o.seeds = p.at("seeds").get<int>();
            o.width = p.at("width").get<int>();
            o.out_prefix = p.at("out_prefix").get<std::string>();
            runner = [g, o] { return run_train(g, o); };
        } else if (cmd == "evaluate") {
            EvalOpts o;
            o.checkpoint = p.at("checkpoint").get<std::string>();
            o.instances = p.at("instances").get<std::vector<std::string>>();
            o.rounds = p.at("rounds").get<int>();
            o.cuts_per_round = p.at("cuts_per_round").get<int>();
            o.out = p.at("out").get<std::string>();
            runner = [g, o] { return run_evaluate(g, o); };
        } else {
            throw UsageError("unknown command in manifest: " + cmd);
        }
        return runner;
    })();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "cutsel — adversarial cut-selection experiments, grid search, and policy training.\n"
        "Grid syntax for --grid: 'start:step:end' (inclusive), a comma list 'v1,v2,...',\n"
        "or a single value. Every command writes '<output>.manifest.json' first;\n"
        "'cutsel rerun <manifest>' reproduces a recorded run bit-exactly."};
    app.require_subcommand(1);

    GlobalOpts g;
    app.add_option("--seed", g.seed, "Global RNG seed for sampling streams")
        ->envname("CUTSEL_SEED")
        ->capture_default_str();
    app.add_flag("--deterministic,!--no-deterministic", g.deterministic,
                 "Deterministic reduction order (this build is single-threaded, so runs are "
                 "reproducible either way; recorded in the manifest)");

    AdvOpts adv;
    CLI::App* c_adv = app.add_subcommand(
        "adversarial", "Construct a family instance whose certified lambda window avoids a "
                       "grid, simulate the pure cutting loop on grid and window midpoint, and "
                       "verify the expected outcomes");
    c_adv->add_option("--grid", adv.grid, "Lambda grid spec")->capture_default_str();
    c_adv->add_option("--max-rounds", adv.max_rounds, "Cutting rounds before giving up")
        ->check(CLI::Range(1, 1000000))
        ->capture_default_str();
    c_adv->add_option("--out", adv.out, "Per-lambda outcome CSV")->capture_default_str();
    c_adv->add_option("--certificate", adv.certificate, "Interval certificate JSON")
        ->capture_default_str();

    GridOpts grid;
    CLI::App* c_grid = app.add_subcommand(
        "grid-search", "Enumerate all weight compositions at a resolution and report the "
                       "rollout gap of each");
    c_grid->add_option("instance", grid.instance, "Instance JSON file")
        ->required()
        ->check(CLI::ExistingFile);
    c_grid->add_option("--resolution", grid.resolution, "Composition resolution")
        ->check(CLI::Range(1, 100))
        ->capture_default_str();
    c_grid->add_option("--rounds", grid.rounds, "Cutting rounds per rollout")
        ->check(CLI::Range(0, 1000))
        ->capture_default_str();
    c_grid->add_option("--cuts-per-round", grid.cuts_per_round, "Selected cuts per round")
        ->check(CLI::Range(1, 1000))
        ->capture_default_str();
    c_grid->add_option("--out", grid.out, "Grid table CSV")->capture_default_str();
    c_grid->add_option("--best", grid.best, "Best-weights JSON")->capture_default_str();

    TrainOpts train;
    CLI::App* c_train = app.add_subcommand(
        "train", "Seed-search an initialization, then train the selection policy by "
                 "sampled-action rollouts on a corpus of instance files");
    c_train->add_option("--corpus", train.corpus, "Directory of instance *.json files")
        ->required()
        ->check(CLI::ExistingDirectory);
    c_train->add_option("--epochs", train.epochs, "Training epochs")
        ->check(CLI::Range(0, 1000000))
        ->capture_default_str();
    c_train->add_option("--samples", train.samples, "Sampled actions per instance per epoch")
        ->check(CLI::Range(1, 1000000))
        ->capture_default_str();
    c_train->add_option("--seeds", train.seeds, "Seed-search candidates")
        ->check(CLI::Range(1, 1000000))
        ->capture_default_str();
    c_train->add_option("--width", train.width, "Hidden width of the network")
        ->check(CLI::Range(1, 4096))
        ->capture_default_str();
    c_train->add_option("--out-prefix", train.out_prefix,
                        "Prefix for .ckpt / .log.csv / .manifest.json outputs")
        ->capture_default_str();

    EvalOpts eval;
    CLI::App* c_eval = app.add_subcommand(
        "evaluate", "Run a trained policy deterministically (mean action as weights) on "
                    "instances and report gap and improvement vs the equal-weight baseline");
    c_eval->add_option("checkpoint", eval.checkpoint, "Policy checkpoint file")
        ->required()
        ->check(CLI::ExistingFile);
    c_eval->add_option("instances", eval.instances, "Instance JSON files");
    c_eval->add_option("--rounds", eval.rounds, "Cutting rounds per rollout")
        ->check(CLI::Range(0, 1000))
        ->capture_default_str();
    c_eval->add_option("--cuts-per-round", eval.cuts_per_round, "Selected cuts per round")
        ->check(CLI::Range(1, 1000))
        ->capture_default_str();
    c_eval->add_option("--out", eval.out, "Evaluation CSV")->capture_default_str();

    std::string manifest_path;
    CLI::App* c_rerun =
        app.add_subcommand("rerun", "Replay a recorded run from its manifest file");
    c_rerun->add_option("manifest", manifest_path, "Run manifest JSON")
        ->required()
        ->check(CLI::ExistingFile);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (c_adv->parsed()) return run_adversarial(g, adv);
        if (c_grid->parsed()) return run_grid_search(g, grid);
        if (c_train->parsed()) return run_train(g, train);
        if (c_eval->parsed()) return run_evaluate(g, eval);
        if (c_rerun->parsed()) return run_rerun(manifest_path);
        std::cerr << "error: no subcommand\n";
        return 2;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
