#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "ctxlab/contextuality.hpp"
#include "ctxlab/families.hpp"
#include "ctxlab/json_io.hpp"

namespace {

using nlohmann::json;

std::size_t resolve_size_cap(const std::optional<std::size_t>& flag) {
    if (flag) return *flag;
    if (const char* env = std::getenv("CTXLAB_SIZE_CAP")) {
        std::string text(env);
        if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos ||
            text == "0") {
            throw ctxlab::Error(ctxlab::ErrorCode::ParseError,
                                "CTXLAB_SIZE_CAP must be a positive integer, got '" + text + "'");
        }
        return static_cast<std::size_t>(std::stoull(text));
    }
    return ctxlab::kDefaultSizeCap;
}

void emit(const json& j, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << j.dump(2) << '\n';
    } else {
        ctxlab::save_json(j, out_path);
    }
}

int run_validate(const std::vector<std::string>& paths) {
    for (const auto& path : paths) {
        json j = ctxlab::load_json(path);
        if (j.is_object() && j.contains("tables")) {
            ctxlab::behaviour_from_json(j, std::filesystem::path(path).parent_path());
            std::cout << "ok: " << path << " (behaviour)\n";
        } else {
            ctxlab::scenario_from_json(j);
            std::cout << "ok: " << path << " (scenario)\n";
        }
    }
    return 0;
}

std::filesystem::path report_path(const std::filesystem::path& input,
                                  const std::string& out_dir) {
    std::filesystem::path name = input.stem();
    name += ".report.json";
    if (out_dir.empty()) {
        return input.parent_path() / name;
    }
    return std::filesystem::path(out_dir) / name;
}

int run_classify(const std::vector<std::string>& paths, bool summary, const std::string& out,
                 std::size_t size_cap, std::size_t jobs) {
    if (paths.size() == 1) {
        ctxlab::Behaviour b = ctxlab::load_behaviour(paths.front());
        ctxlab::ClassificationReport report = ctxlab::classify(b, size_cap);
        emit(ctxlab::report_to_json(report), out);
        if (summary) std::cout << ctxlab::report_summary(report) << '\n';
        return 0;
    }

    if (!out.empty()) std::filesystem::create_directories(out);

    struct Slot {
        std::string line;
        int code = 0;
    };
    std::vector<Slot> slots(paths.size());
    std::atomic<std::size_t> cursor{0};

    auto worker = [&] {
        for (std::size_t i = cursor++; i < paths.size(); i = cursor++) {
            try {
                ctxlab::Behaviour b = ctxlab::load_behaviour(paths[i]);
                ctxlab::ClassificationReport report = ctxlab::classify(b, size_cap);
                ctxlab::save_json(ctxlab::report_to_json(report), report_path(paths[i], out));
                slots[i].line = paths[i] + ": " + ctxlab::report_summary(report);
            } catch (const ctxlab::Error& e) {
                slots[i].line = paths[i] + ": error: " + e.what();
                slots[i].code = e.is_size_limit() ? 3 : 2;
            }
        }
    };

    std::vector<std::thread> pool;
    const std::size_t workers = std::min(jobs, paths.size());
    for (std::size_t t = 1; t < workers; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    int exit_code = 0;
    for (const auto& slot : slots) {
        std::cout << slot.line << '\n';
        if (slot.code == 3) exit_code = 3;
        if (slot.code == 2 && exit_code != 3) exit_code = 2;
    }
    return exit_code;
}

int run_extend(const std::string& path, const std::string& out) {
    ctxlab::Behaviour b = ctxlab::load_behaviour(path);
    ctxlab::NondegeneracyVerdict ndeg = ctxlab::is_nondegenerate(b);
    if (!ndeg.nondegenerate) {
        ctxlab::ExtendedScenario ext = ctxlab::extend_scenario(b.scenario());
        json witness{{"measurement", ndeg.witness->measurement},
                     {"first_context", ndeg.witness->first_context},
                     {"second_context", ndeg.witness->second_context},
                     {"lhs", ctxlab::distribution_to_json(ndeg.witness->lhs)},
                     {"rhs", ctxlab::distribution_to_json(ndeg.witness->rhs)}};
        emit(json{{"extended_scenario", ctxlab::scenario_to_json(ext.full())},
                  {"degenerate", true},
                  {"witness", std::move(witness)}},
             out);
        return 0;
    }
    ctxlab::BehaviourExtension extension = ctxlab::unique_extension_nondegenerate(b);
    emit(ctxlab::extension_to_json(extension), out);
    return 0;
}

int run_polytope(const std::string& path, const std::string& out, std::size_t size_cap) {
    ctxlab::Scenario scenario = ctxlab::load_scenario(path);
    json vertices = json::array();
    for (const auto& v : ctxlab::nc_vertices(scenario, size_cap)) {
        json row = json::array();
        for (const auto& value : v.entries) row.push_back(ctxlab::to_fraction(value));
        vertices.push_back(std::move(row));
    }
    emit(json{{"scenario", ctxlab::scenario_to_json(scenario)},
              {"vector_length", ctxlab::vector_length(scenario)},
              {"nd_equalities", ctxlab::equalities_to_json(ctxlab::nd_equalities(scenario))},
              {"ndeg_equalities", ctxlab::equalities_to_json(ctxlab::ndeg_equalities(scenario))},
              {"nc_vertices", std::move(vertices)}},
         out);
    return 0;
}

int run_generate(const std::string& family, std::size_t n, std::uint64_t seed,
                 std::uint64_t weight_bound, const std::string& out) {
    if (family == "ncycle") {
        emit(ctxlab::scenario_to_json(ctxlab::ncycle_scenario(n)), out);
    } else if (family == "prbox") {
        emit(ctxlab::behaviour_to_json(ctxlab::prbox_behaviour(n)), out);
    } else if (family == "counterexample") {
        emit(ctxlab::behaviour_to_json(ctxlab::counterexample_behaviour()), out);
    } else {
        emit(ctxlab::behaviour_to_json(ctxlab::random_cycle_behaviour(n, seed, weight_bound)),
             out);
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"compatibility scenarios, behaviours, and contextuality verdicts"};
    app.require_subcommand(1);

    std::vector<std::string> validate_paths;
    auto* validate = app.add_subcommand("validate", "check scenario or behaviour files");
    validate->add_option("paths", validate_paths, "files to check")->required();

    std::vector<std::string> classify_paths;
    bool summary = false;
    std::string classify_out;
    std::optional<std::size_t> classify_cap;
    std::size_t jobs = 1;
    auto* classify = app.add_subcommand("classify", "run all four verdicts on behaviour files");
    classify->add_option("behaviours", classify_paths, "behaviour files")->required();
    classify->add_flag("--summary", summary, "also print a one-line verdict");
    classify->add_option("--out", classify_out,
                         "report file (single input) or directory (multiple inputs)");
    classify->add_option("--size-cap", classify_cap, "solver variable cap")
        ->check(CLI::PositiveNumber);
    classify->add_option("--jobs", jobs, "concurrent classifications")
        ->check(CLI::PositiveNumber);

    std::string extend_path, extend_out;
    auto* extend = app.add_subcommand("extend", "write the extended scenario and the unique "
                                                "extension of a non-degenerate behaviour");
    extend->add_option("behaviour", extend_path, "behaviour file")->required();
    extend->add_option("--out", extend_out, "output file");

    std::string polytope_path, polytope_out;
    std::optional<std::size_t> polytope_cap;
    auto* polytope = app.add_subcommand(
        "polytope", "write equality descriptions and deterministic vertices for a scenario");
    polytope->add_option("scenario", polytope_path, "scenario file")->required();
    polytope->add_option("--out", polytope_out, "output file");
    polytope->add_option("--size-cap", polytope_cap, "vertex enumeration cap")
        ->check(CLI::PositiveNumber);

    std::string family, generate_out;
    std::size_t cycle_n = 4;
    std::uint64_t seed = 0;
    std::uint64_t weight_bound = 10;
    auto* generate = app.add_subcommand("generate", "write a named example family");
    generate->add_option("family", family, "ncycle | prbox | counterexample | random")
        ->required()
        ->check(CLI::IsMember({"ncycle", "prbox", "counterexample", "random"}));
    generate->add_option("--n", cycle_n, "cycle length");
    generate->add_option("--seed", seed, "random family seed");
    generate->add_option("--weight-bound", weight_bound, "random family weight bound")
        ->check(CLI::PositiveNumber);
    generate->add_option("--out", generate_out, "output file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (validate->parsed()) return run_validate(validate_paths);
        if (classify->parsed()) {
            return run_classify(classify_paths, summary, classify_out,
                                resolve_size_cap(classify_cap), jobs);
        }
        if (extend->parsed()) return run_extend(extend_path, extend_out);
        if (polytope->parsed()) {
            return run_polytope(polytope_path, polytope_out, resolve_size_cap(polytope_cap));
        }
        if (generate->parsed()) {
            return run_generate(family, cycle_n, seed, weight_bound, generate_out);
        }
        return 2;
    } catch (const ctxlab::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return e.is_size_limit() ? 3 : 2;
    }
}
