// Copyright 2026 The ctxsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// ctxsim: run impersonation scenarios, reproduce the operator matrix and
// persist card images.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "ctxsim/attack.hpp"
#include "ctxsim/card_io.hpp"
#include "ctxsim/error.hpp"
#include "ctxsim/profile.hpp"
#include "ctxsim/scenario_config.hpp"

using namespace ctxsim;

namespace
{

void write_text(const std::string &path, const std::string &text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        fail(Errc::InvalidArgument, "cannot write " + path);
    out << text;
}

struct RunArgs
{
    std::string config;
    std::string attack;
    std::string base;
    std::string profile;
    std::optional<std::uint64_t> seed;
    std::vector<std::string> countermeasures;
    std::string trace_out;
    std::string report_out;
    std::string events_out;
};

int cmd_run(const RunArgs &a)
{
    auto cfg = a.config.empty() ? scenario::ScenarioConfig{} : scenario::read_config(a.config);
    if (a.seed)
        cfg.seed = *a.seed;
    if (!a.profile.empty())
    {
        cfg.profile_name = a.profile;
        cfg.profile_overrides.clear();
    }
    if (!a.attack.empty())
    {
        auto id = attack::parse_scenario(a.attack);
        if (!id)
            fail(Errc::ConfigError, "--attack: expected s1, s2, one-tap or location");
        cfg.attack = *id;
    }
    if (!a.base.empty())
    {
        auto id = attack::parse_scenario(a.base);
        if (!id || (*id != attack::ScenarioId::UsimImpersonation && *id != attack::ScenarioId::BasebandImpersonation))
            fail(Errc::ConfigError, "--base: expected s1 or s2");
        cfg.base = *id;
    }
    for (const auto &cm : a.countermeasures)
        cfg.countermeasures.apply(cm);

    auto result = attack::run(scenario::to_run_spec(cfg));
    auto report = result.report.format();

    if (!a.trace_out.empty())
        write_text(a.trace_out, result.trace);
    if (!a.events_out.empty())
        write_text(a.events_out, result.events);
    if (!a.report_out.empty())
        write_text(a.report_out, report);
    else
        std::cout << report;
    if (a.trace_out.empty() && a.report_out.empty())
        std::cout << "\n" << result.trace;
    std::cerr << to_string(result.report.scenario) << " on " << result.report.profile << ": "
              << (result.report.succeeded ? "attack succeeded" : "attack failed") << "\n";
    return 0;
}

int cmd_matrix(std::optional<std::uint64_t> seed, const std::vector<std::string> &names,
               const std::vector<std::string> &countermeasures, const std::string &report_out)
{
    std::vector<profile::OperatorProfile> profiles;
    if (names.empty())
        profiles = profile::builtin_profiles();
    for (const auto &n : names)
        profiles.push_back(profile::find_profile(n));
    profile::Countermeasures cm;
    for (const auto &c : countermeasures)
        cm.apply(c);

    auto table = attack::format_matrix(attack::run_matrix(profiles, cm, seed.value_or(1)));
    if (!report_out.empty())
        write_text(report_out, table);
    std::cout << table;
    return 0;
}

int cmd_card_save(const std::string &out, const std::string &supi, const std::string &profile_name,
                  std::uint64_t seed)
{
    const auto &p = profile::find_profile(profile_name);
    Rng rng(seed);
    auto key = crypto::Key::from(rng.bytes(crypto::kKeyLength), crypto::KeyKind::Permanent);
    auto card = usim::CardImage::issue("8986" + rng.digits(15), supi, key,
                                       usim::PinState(p.default_pin, p.pin_enabled_by_default, p.pin_retry_limit),
                                       p.usim_supports_5g_context, p.usim_hardened);
    usim::write_card_image(out, card);
    std::cout << "wrote " << out << " iccid=" << card.iccid() << " supi=" << card.supi() << "\n";
    return 0;
}

int cmd_card_load(const std::string &path)
{
    auto card = usim::read_card_image(path);
    std::cout << "iccid=" << card.iccid() << "\n"
              << "supi=" << card.supi() << "\n"
              << "pin_enabled=" << (card.pin().enabled() ? "true" : "false") << "\n"
              << "pin_retries=" << card.pin().retries_left() << "/" << card.pin().retry_limit() << "\n"
              << "seq=" << card.seq() << "\n"
              << "supports_5g_context=" << (card.supports_5g_context() ? "true" : "false") << "\n"
              << "programmable=" << (card.programmable() ? "true" : "false") << "\n";
    for (const auto &[id, f] : card.files())
        std::cout << "file " << id.to_string() << " read=" << to_string(f.access.read)
                  << " update=" << to_string(f.access.update) << " bytes=" << f.body.size() << "\n";
    return 0;
}

int cmd_card_read(const std::string &path, const std::string &file, const std::string &pin)
{
    auto card = usim::read_card_image(path);
    auto id = usim::FileId::parse(file);
    if (!id)
        fail(Errc::InvalidArgument, "bad file id " + file);
    usim::CardSession session(usim::Origin::Reader, "card-reader");
    if (!pin.empty())
    {
        auto v = card.verify_pin(session, pin);
        std::cout << "VERIFY_PIN " << to_string(v.status) << "\n";
    }
    auto r = card.execute(session, usim::Apdu::read(*id));
    std::cout << "READ " << id->to_string() << " " << to_string(r.status);
    if (r.ok())
        std::cout << " " << (r.payload.empty() ? "-" : to_hex(r.payload));
    std::cout << "\n";
    // retry counters moved; keep the image in step with the card
    usim::write_card_image(path, card);
    return r.ok() ? 0 : 3;
}

int cmd_profiles_list()
{
    for (const auto &p : profile::builtin_profiles())
    {
        std::cout << "[" << p.name << "]\n";
        for (const auto &[k, v] : profile::profile_fields(p))
            if (k != "name")
                std::cout << k << " = " << v << "\n";
        std::cout << "\n";
    }
    std::cout << "countermeasures:";
    for (auto n : profile::countermeasure_names())
        std::cout << " " << n;
    std::cout << "\n";
    return 0;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Security-context impersonation simulator"};
    app.require_subcommand(1);

    RunArgs run;
    auto *run_cmd = app.add_subcommand("run", "Run one scenario");
    run_cmd->add_option("--config", run.config, "Scenario config file")->check(CLI::ExistingFile);
    run_cmd->add_option("--attack", run.attack, "s1, s2, one-tap or location");
    run_cmd->add_option("--base", run.base, "Impersonation under one-tap/location: s1 or s2");
    run_cmd->add_option("--profile", run.profile, "Operator profile (drops inline overrides)");
    run_cmd->add_option("--seed", run.seed, "Run seed");
    run_cmd->add_option("--countermeasure", run.countermeasures, "name=on|off, periodic-aka=<steps>");
    run_cmd->add_option("--trace-out", run.trace_out, "Signaling trace file");
    run_cmd->add_option("--report-out", run.report_out, "Report file");
    run_cmd->add_option("--events-out", run.events_out, "Event log file");

    std::optional<std::uint64_t> matrix_seed;
    std::vector<std::string> matrix_profiles;
    std::vector<std::string> matrix_cm;
    std::string matrix_out;
    auto *matrix_cmd = app.add_subcommand("matrix", "Scenario x operator verdicts");
    matrix_cmd->add_option("--seed", matrix_seed, "Run seed");
    matrix_cmd->add_option("--profile", matrix_profiles, "Restrict to these profiles");
    matrix_cmd->add_option("--countermeasure", matrix_cm, "name=on|off, periodic-aka=<steps>");
    matrix_cmd->add_option("--report-out", matrix_out, "Write the table here too");

    auto *card_cmd = app.add_subcommand("card", "Card images");
    card_cmd->require_subcommand(1);
    std::string save_out, save_supi = "001010123456789", save_profile = "OP-I";
    std::uint64_t save_seed = 1;
    auto *save_cmd = card_cmd->add_subcommand("save", "Issue an operator card and save its image");
    save_cmd->add_option("--out", save_out, "Image path")->required();
    save_cmd->add_option("--supi", save_supi, "Subscriber identity");
    save_cmd->add_option("--profile", save_profile, "Operator profile");
    save_cmd->add_option("--seed", save_seed, "Key and ICCID seed");
    std::string load_path;
    auto *load_cmd = card_cmd->add_subcommand("load", "Load an image and describe it");
    load_cmd->add_option("path", load_path, "Image path")->required()->check(CLI::ExistingFile);
    std::string read_path, read_file, read_pin;
    auto *read_cmd = card_cmd->add_subcommand("read", "READ one file through a card reader");
    read_cmd->add_option("path", read_path, "Image path")->required()->check(CLI::ExistingFile);
    read_cmd->add_option("--file", read_file, "File id, e.g. 6FE4")->required();
    read_cmd->add_option("--pin", read_pin, "PIN to verify first");

    auto *profiles_cmd = app.add_subcommand("profiles", "Operator profiles");
    profiles_cmd->require_subcommand(1);
    auto *list_cmd = profiles_cmd->add_subcommand("list", "List built-in profiles");

    CLI11_PARSE(app, argc, argv);

    try
    {
        if (*run_cmd)
            return cmd_run(run);
        if (*matrix_cmd)
            return cmd_matrix(matrix_seed, matrix_profiles, matrix_cm, matrix_out);
        if (*save_cmd)
            return cmd_card_save(save_out, save_supi, save_profile, save_seed);
        if (*load_cmd)
            return cmd_card_load(load_path);
        if (*read_cmd)
            return cmd_card_read(read_path, read_file, read_pin);
        if (*list_cmd)
            return cmd_profiles_list();
    }
    catch (const Error &e)
    {
        std::cerr << "ctxsim: " << e.what() << "\n";
        return e.code() == Errc::ConfigError ? 2 : 1;
    }
    return 0;
}
