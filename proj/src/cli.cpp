/*
 * Copyright 2026 The illposed-gd Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <CLI11.hpp>

#include "illposed/config.hpp"
#include "illposed/errors.hpp"
#include "illposed/experiment.hpp"

namespace illposed
{

namespace
{

constexpr int kExitCheckFailed = 1;
constexpr int kExitBadConfig = 2;

struct Arguments
{
    std::string config;
    std::string out_dir;
    std::size_t workers = 0;
    bool gnuplot = false;
};

CLI::App* add_command(CLI::App& app, const char* name, const char* help, Arguments& args)
{
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config", args.config, "experiment configuration (JSON)")
        ->required();
    sub->add_option("--out", args.out_dir, "output directory (overrides output_dir)");
    sub->add_option("--workers", args.workers, "worker threads (overrides workers)")
        ->check(CLI::PositiveNumber);
    sub->add_flag("--gnuplot", args.gnuplot, "also write a gnuplot script");
    return sub;
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Gradient iteration for ill-posed problems: runs, noise studies, "
                 "condition diagnostics and trace verification."};
    app.name("illposed-gd");
    app.require_subcommand(1);
    Arguments args;
    CLI::App* run = add_command(app, "run", "exact and noisy runs with trace export", args);
    CLI::App* study = add_command(app, "study", "convergence study over a noise ladder", args);
    CLI::App* diagnose = add_command(app, "diagnose", "estimate condition constants", args);
    CLI::App* verify = add_command(app, "verify", "check the convergence inequalities", args);

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp&)
    {
        out << app.help();
        return 0;
    }
    catch (const CLI::ParseError& e)
    {
        err << "error: " << e.what() << "\n";
        return kExitBadConfig;
    }

    CommandOptions options;
    if (!args.out_dir.empty())
    {
        options.out_dir = args.out_dir;
    }
    if (args.workers > 0)
    {
        options.workers = args.workers;
    }
    options.gnuplot = args.gnuplot;

    try
    {
        const ExperimentConfig config = load_config(args.config);
        if (run->parsed())
        {
            return cmd_run(config, options, out);
        }
        if (study->parsed())
        {
            return cmd_study(config, options, out);
        }
        if (diagnose->parsed())
        {
            return cmd_diagnose(config, options, out);
        }
        if (verify->parsed())
        {
            return cmd_verify(config, options, out);
        }
    }
    catch (const ConfigError& e)
    {
        err << "invalid config: " << e.what() << "\n";
        return kExitBadConfig;
    }
    catch (const std::exception& e)
    {
        err << "error: " << e.what() << "\n";
        return kExitCheckFailed;
    }
    return kExitBadConfig;
}

}  // namespace illposed
