#pragma once

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "opplod/config.hpp"
#include "opplod/io.hpp"
#include "opplod/pipeline.hpp"
#include "opplod/rmo.hpp"
#include "opplod/stimuli.hpp"

namespace opplod::cli {

namespace detail {

inline std::vector<double> parse_angle_list_deg(const std::string& list) {
    std::vector<double> angles;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        char* end = nullptr;
        const double deg = std::strtod(item.c_str(), &end);
        if (end == item.c_str() || *end != '\0')
            throw CLI::ValidationError("--angles", "bad angle '" + item + "'");
        angles.push_back(deg);
    }
    if (angles.empty()) throw CLI::ValidationError("--angles", "empty angle list");
    return angles;
}

inline void normalize_responses(std::vector<ResponseRecord>& records) {
    double peak = 0.0;
    for (const ResponseRecord& r : records) peak = std::max(peak, r.response);
    if (peak > 0.0)
        for (ResponseRecord& r : records) r.response /= peak;
}

inline int run_command(const io::RunConfig& cfg, bool normalize, std::ostream& out) {
    if (cfg.input.empty()) raise(ErrorCode::ConfigError, "no input path given");
    if (cfg.output.empty()) raise(ErrorCode::ConfigError, "no output path given");
    const FrameSequence seq = io::load_sequence(cfg.input);
    const UnitGrid grid = UnitGrid::tile(seq.front().width, seq.front().height, cfg.unit_rows,
                                         cfg.unit_cols, cfg.unit_overlap);
    std::vector<ResponseRecord> opp;
    std::vector<ResponseRecord> dlg;
    if (cfg.model != io::ModelSelect::DLgmd)
        opp = run_opplod(seq, cfg.dpc, MdeParams(), cfg.omj, cfg.enh, grid);
    if (cfg.model != io::ModelSelect::OppLoD)
        dlg = run_dlgmd(seq, cfg.dpc);
    if (normalize) {
        normalize_responses(opp);
        normalize_responses(dlg);
    }
    io::save_csv(opp, dlg, cfg.output);
    out << "run: " << seq.size() << " frames, model " << io::model_name(cfg.model) << " -> "
        << cfg.output << "\n";
    return 0;
}

inline int tuning_command(const StimulusSpec& base, std::vector<double> angles_deg,
                          const io::RunConfig& cfg, const std::string& out_path,
                          std::ostream& out) {
    std::sort(angles_deg.begin(), angles_deg.end());
    std::ofstream csv(out_path, std::ios::binary);
    if (!csv) raise(ErrorCode::IoError, "cannot write '" + out_path + "'");
    csv << "angle_deg,peak_response,peak_frame\n";
    for (const double deg : angles_deg) {
        StimulusSpec spec = base;
        spec.bar_angle = deg * kPi / 180.0;
        const FrameSequence seq = render(spec);
        const UnitGrid grid = UnitGrid::tile(spec.width, spec.height, cfg.unit_rows,
                                             cfg.unit_cols, cfg.unit_overlap);
        const std::vector<ResponseRecord> records =
            run_opplod(seq, cfg.dpc, MdeParams(), cfg.omj, cfg.enh, grid);
        double peak = 0.0;
        int peak_frame = 0;
        for (const ResponseRecord& r : records) {
            if (r.warm_up) continue;
            if (r.response > peak) {
                peak = r.response;
                peak_frame = r.t;
            }
        }
        csv << io::format_double(deg) << ',' << io::format_double(peak) << ',' << peak_frame
            << '\n';
    }
    out << "tuning: " << angles_deg.size() << " angles -> " << out_path << "\n";
    return 0;
}

inline int rmo_command(const std::string& pairs_path, const std::string& out_path,
                       std::ostream& out) {
    std::ifstream in(pairs_path);
    if (!in) raise(ErrorCode::InvalidInput, "cannot open '" + pairs_path + "'");
    std::ofstream csv(out_path, std::ios::binary);
    if (!csv) raise(ErrorCode::IoError, "cannot write '" + out_path + "'");
    csv << "pair_index,qualifies,rmo\n";
    std::string line;
    int line_no = 0;
    int index = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        double x1, y1, th1, m1, x2, y2, th2, m2;
        if (!(ls >> x1)) continue; // blank line
        if (!(ls >> y1 >> th1 >> m1 >> x2 >> y2 >> th2 >> m2))
            raise(ErrorCode::FormatError, pairs_path + ":" + std::to_string(line_no) +
                                              ": expected 8 numbers per pair");
        std::string extra;
        if (ls >> extra)
            raise(ErrorCode::FormatError, pairs_path + ":" + std::to_string(line_no) +
                                              ": trailing tokens after 8 numbers");
        const VectorPair pair(MotionVector({x1, y1}, th1 * kPi / 180.0, m1),
                              MotionVector({x2, y2}, th2 * kPi / 180.0, m2));
        const RmoResult res = rmo(pair);
        csv << index << ',' << (res.qualifies ? 1 : 0) << ',' << io::format_double(res.rmo)
            << '\n';
        ++index;
    }
    out << "rmo: " << index << " pairs -> " << out_path << "\n";
    return 0;
}

} // namespace detail

// Entry point shared by the binary and the tests. Exit codes: 0 success,
// 1 usage error, 2 data/format error. Errors go to `err` with a
// machine-parsable "ERROR <code>:" prefix.
inline int cli_main(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"OppLoD looming detector"};
    app.require_subcommand(1);

    // synth
    auto* synth = app.add_subcommand("synth", "render a synthetic stimulus to PGM frames");
    std::string synth_spec, synth_out;
    synth->add_option("--spec", synth_spec, "stimulus spec file")->required();
    synth->add_option("--out", synth_out, "output directory")->required();

    // run
    auto* run = app.add_subcommand("run", "run the detector over an image sequence");
    std::string run_config, run_in, run_model, run_out;
    bool run_normalize = false;
    run->add_option("--config", run_config, "run config file")->required();
    run->add_option("--in", run_in, "input sequence (PGM directory or .raw)");
    run->add_option("--model", run_model, "opplod | dlgmd | both")
        ->check(CLI::IsMember({"opplod", "dlgmd", "both"}));
    run->add_option("--out", run_out, "output CSV path");
    run->add_flag("--normalize", run_normalize, "divide responses by the sequence peak");

    // tuning
    auto* tuning = app.add_subcommand("tuning", "directional tuning sweep over bar angles");
    std::string tuning_spec, tuning_angles, tuning_out, tuning_config;
    tuning->add_option("--spec", tuning_spec, "stimulus spec file")->required();
    tuning->add_option("--angles", tuning_angles, "comma-separated angles in degrees")->required();
    tuning->add_option("--out", tuning_out, "output CSV path")->required();
    tuning->add_option("--config", tuning_config, "optional run config for model parameters");

    // rmo
    auto* rmo_cmd = app.add_subcommand("rmo", "score vector pairs for radial motion opponency");
    std::string rmo_pairs, rmo_out;
    rmo_cmd->add_option("--pairs", rmo_pairs, "pair file: x1 y1 theta1 mag1 x2 y2 theta2 mag2")
        ->required();
    rmo_cmd->add_option("--out", rmo_out, "output CSV path")->required();

    try {
        // CLI11 consumes a reversed argv without the program name.
        std::reverse(args.begin(), args.end());
        app.parse(args);

        if (synth->parsed()) {
            const StimulusSpec spec = io::load_stimulus_spec(synth_spec);
            const FrameSequence seq = render(spec);
            io::save_sequence(seq, synth_out);
            out << "synth: " << seq.size() << " frames (" << stimulus_kind_name(spec.kind)
                << ") -> " << synth_out << "\n";
            return 0;
        }
        if (run->parsed()) {
            io::RunConfig cfg = io::RunConfig::load(run_config);
            if (!run_in.empty()) cfg.input = run_in;
            if (!run_model.empty()) cfg.model = io::model_from_name(run_model);
            if (!run_out.empty()) cfg.output = run_out;
            return detail::run_command(cfg, run_normalize, out);
        }
        if (tuning->parsed()) {
            const std::vector<double> angles = detail::parse_angle_list_deg(tuning_angles);
            const StimulusSpec spec = io::load_stimulus_spec(tuning_spec);
            const io::RunConfig cfg =
                tuning_config.empty() ? io::RunConfig() : io::RunConfig::load(tuning_config);
            return detail::tuning_command(spec, angles, cfg, tuning_out, out);
        }
        if (rmo_cmd->parsed()) return detail::rmo_command(rmo_pairs, rmo_out, out);
        err << "ERROR E_USAGE: no subcommand given\n";
        return 1;
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "ERROR E_USAGE: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        err << "ERROR " << error_code_name(e.code()) << ": " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "ERROR E_INTERNAL: " << e.what() << "\n";
        return 2;
    }
}

} // namespace opplod::cli
