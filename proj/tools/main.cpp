// Command-line front end: run provisioning experiments and inspect the
// bundled scenario descriptions.

#include <cstdio>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <sfcsim/experiment.hpp>
#include <sfcsim/scenario_config.hpp>

namespace {

int run_command(const std::string& scenario_name, const std::string& agent_name,
                int episodes, const std::vector<unsigned long>& seeds,
                const std::string& out_dir, const std::vector<std::string>& overrides,
                const sfcsim::AgentConfig& agent_config) {
    sfcsim::ExperimentConfig config;
    config.scenario = sfcsim::resolve_scenario(scenario_name, overrides);
    config.agent = sfcsim::agent_kind_from_string(agent_name);
    config.episodes = episodes;
    config.seeds = seeds;
    config.agent_config = agent_config;
    config.out_dir = out_dir;

    const sfcsim::ExperimentResult result = sfcsim::run_experiment(config);

    std::printf("scenario          %s\n", config.scenario.name.c_str());
    std::printf("agent             %s\n", sfcsim::to_string(config.agent).c_str());
    if (sfcsim::agent_trains(config.agent)) {
        std::printf("episodes          %d\n", episodes);
        if (result.episodes_to_threshold)
            std::printf("threshold hit at  episode %d\n", *result.episodes_to_threshold);
        else
            std::printf("threshold hit at  never\n");
    }
    std::printf("seeds             ");
    for (std::size_t i = 0; i < seeds.size(); ++i)
        std::printf("%s%lu", i ? "," : "", seeds[i]);
    std::printf("\n");
    for (std::size_t i = 0; i < result.seed_returns.size(); ++i)
        std::printf("return[%lu]         %.3f\n", seeds[i], result.seed_returns[i]);
    std::printf("total placements  %zu\n", result.total_placements);
    std::printf("violations        %zu\n", result.violations);
    std::printf("mean overhead     %.3f ms\n", result.mean_overhead_ms);
    if (!result.trace_path.empty()) {
        std::printf("trace             %s\n", result.trace_path.c_str());
        std::printf("summary           %s\n", result.summary_path.c_str());
        if (!result.curve_path.empty())
            std::printf("curve             %s\n", result.curve_path.c_str());
    }
    return 0;
}

int scenario_command(const std::string& name) {
    if (name.empty()) {
        for (const std::string& builtin : sfcsim::builtin_scenario_names())
            std::printf("%s\n", builtin.c_str());
        return 0;
    }
    std::fputs(sfcsim::builtin_scenario_text(name).c_str(), stdout);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Service-chain provisioning simulator"};
    app.require_subcommand(1);

    // --- run ---------------------------------------------------------------
    std::string scenario_name;
    std::string agent_name = "heuristic";
    int episodes = 300;
    std::vector<unsigned long> seeds{1, 2, 3, 4, 5};
    std::string out_dir;
    std::vector<std::string> overrides;
    sfcsim::AgentConfig agent_config;

    CLI::App* run = app.add_subcommand("run", "Run one experiment and write its reports");
    run->add_option("--scenario", scenario_name, "Builtin name (ehr, ml-share, streaming) or JSON path")
        ->required();
    run->add_option("--agent", agent_name, "heuristic, dql, hdql or oracle")
        ->check(CLI::IsMember({"heuristic", "dql", "hdql", "oracle"}));
    run->add_option("--episodes", episodes, "Training episodes (dql/hdql)")
        ->check(CLI::PositiveNumber);
    run->add_option("--seeds", seeds, "Evaluation seeds")->delimiter(',');
    run->add_option("--out", out_dir, "Directory for trace.csv / summary.json / curve.csv");
    run->add_option("--override", overrides,
                    "Scenario override as dot.path=json (repeatable)");
    run->add_option("--train-seed", agent_config.seed, "Seed for training and the probe rollout");
    run->add_option("--hidden", agent_config.hidden, "Hidden layer widths")->delimiter(',');
    run->add_option("--learning-rate", agent_config.learning_rate, "SGD step size");
    run->add_option("--gamma", agent_config.gamma, "Return discount per tick");
    run->add_option("--boost-margin", agent_config.boost_margin, "Advice bonus margin (hdql)");

    // --- scenario ----------------------------------------------------------
    std::string dump_name;
    CLI::App* scenario =
        app.add_subcommand("scenario", "Print a builtin scenario's JSON (or list names)");
    scenario->add_option("name", dump_name, "Builtin scenario name");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed())
            return run_command(scenario_name, agent_name, episodes, seeds, out_dir,
                               overrides, agent_config);
        return scenario_command(dump_name);
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << '\n';
        return 1;
    }
}
