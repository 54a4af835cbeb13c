#pragma once

#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "opplod/error.hpp"
#include "opplod/params.hpp"
#include "opplod/stimuli.hpp"

namespace opplod::io {

// ---------------------------------------------------------------------------
// `key = value` files: one pair per line, '#' starts a comment, unknown or
// repeated keys are errors.
// ---------------------------------------------------------------------------

class KeyValueFile {
public:
    static KeyValueFile parse(const std::string& path) {
        std::ifstream in(path);
        if (!in) raise(ErrorCode::InvalidInput, "cannot open config '" + path + "'");
        std::stringstream ss;
        ss << in.rdbuf();
        return parse_text(ss.str(), path);
    }

    static KeyValueFile parse_text(const std::string& text, const std::string& origin = "<text>") {
        KeyValueFile kv;
        kv.origin_ = origin;
        std::istringstream in(text);
        std::string line;
        int line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            const std::size_t hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            const std::string trimmed = trim(line);
            if (trimmed.empty()) continue;
            const std::size_t eq = trimmed.find('=');
            if (eq == std::string::npos)
                raise(ErrorCode::ConfigError, origin + ":" + std::to_string(line_no) +
                                                  ": expected 'key = value'");
            const std::string key = trim(trimmed.substr(0, eq));
            const std::string value = trim(trimmed.substr(eq + 1));
            if (key.empty())
                raise(ErrorCode::ConfigError,
                      origin + ":" + std::to_string(line_no) + ": empty key");
            if (kv.values_.count(key))
                raise(ErrorCode::ConfigError,
                      origin + ":" + std::to_string(line_no) + ": repeated key '" + key + "'");
            kv.values_[key] = value;
        }
        return kv;
    }

    bool has(const std::string& key) const { return values_.count(key) != 0; }

    std::string get_string(const std::string& key, const std::string& fallback) {
        auto it = values_.find(key);
        if (it == values_.end()) return fallback;
        used_.insert(*it);
        return it->second;
    }

    double get_double(const std::string& key, double fallback) {
        auto it = values_.find(key);
        if (it == values_.end()) return fallback;
        used_.insert(*it);
        char* end = nullptr;
        const double v = std::strtod(it->second.c_str(), &end);
        if (end == it->second.c_str() || *end != '\0')
            raise(ErrorCode::ConfigError,
                  origin_ + ": key '" + key + "' is not a number: '" + it->second + "'");
        return v;
    }

    int get_int(const std::string& key, int fallback) {
        auto it = values_.find(key);
        if (it == values_.end()) return fallback;
        const double v = get_double(key, 0.0);
        const int i = static_cast<int>(v);
        if (static_cast<double>(i) != v)
            raise(ErrorCode::ConfigError,
                  origin_ + ": key '" + key + "' must be an integer: '" + it->second + "'");
        return i;
    }

    // Call after reading every supported key; leftovers are user mistakes.
    void reject_unknown_keys() const {
        for (const auto& kv : values_)
            if (!used_.count(kv.first))
                raise(ErrorCode::ConfigError, origin_ + ": unknown key '" + kv.first + "'");
    }

private:
    static std::string trim(const std::string& s) {
        const std::size_t b = s.find_first_not_of(" \t\r");
        if (b == std::string::npos) return "";
        const std::size_t e = s.find_last_not_of(" \t\r");
        return s.substr(b, e - b + 1);
    }

    std::string origin_;
    std::map<std::string, std::string> values_;
    mutable std::map<std::string, std::string> used_;
};

// ---------------------------------------------------------------------------
// RunConfig: every pipeline constant plus input/model/output.
// ---------------------------------------------------------------------------

enum class ModelSelect { OppLoD, DLgmd, Both };

inline const char* model_name(ModelSelect m) {
    switch (m) {
        case ModelSelect::OppLoD: return "opplod";
        case ModelSelect::DLgmd:  return "dlgmd";
        case ModelSelect::Both:   return "both";
    }
    return "both";
}

inline ModelSelect model_from_name(const std::string& s) {
    if (s == "opplod") return ModelSelect::OppLoD;
    if (s == "dlgmd") return ModelSelect::DLgmd;
    if (s == "both") return ModelSelect::Both;
    raise(ErrorCode::ConfigError, "model must be opplod, dlgmd or both, got '" + s + "'");
}

struct RunConfig {
    DpcParams dpc;
    OmjParams omj;
    EnhanceParams enh;
    int unit_rows = 5;
    int unit_cols = 5;
    double unit_overlap = 0.0;
    std::string input;
    std::string output;
    ModelSelect model = ModelSelect::Both;

    void validate() const {
        dpc.validate();
        omj.validate();
        enh.validate();
        if (unit_rows < 1 || unit_cols < 1)
            raise(ErrorCode::ConfigError, "unit_rows and unit_cols must be >= 1");
        if (!(unit_overlap >= 0.0 && unit_overlap < 1.0))
            raise(ErrorCode::ConfigError, "unit_overlap must lie in [0,1)");
    }

    static RunConfig load(const std::string& path) {
        KeyValueFile kv = KeyValueFile::parse(path);
        return from_kv(kv);
    }

    static RunConfig from_kv(KeyValueFile& kv) {
        RunConfig cfg;
        cfg.dpc.sigma_e = kv.get_double("sigma_e", cfg.dpc.sigma_e);
        cfg.dpc.sigma_i = kv.get_double("sigma_i", cfg.dpc.sigma_i);
        cfg.dpc.kernel_radius = kv.get_int("kernel_radius", cfg.dpc.kernel_radius);
        cfg.dpc.tau_alpha = kv.get_double("tau_alpha", cfg.dpc.tau_alpha);
        cfg.dpc.tau_beta = kv.get_double("tau_beta", cfg.dpc.tau_beta);
        cfg.dpc.tau_lambda = kv.get_double("tau_lambda", cfg.dpc.tau_lambda);
        cfg.dpc.inhibition_gain = kv.get_double("inhibition_gain", cfg.dpc.inhibition_gain);
        cfg.omj.screen_threshold = kv.get_double("screen_threshold", cfg.omj.screen_threshold);
        cfg.omj.periphery_strength =
            kv.get_double("periphery_strength", cfg.omj.periphery_strength);
        cfg.enh.c2 = kv.get_double("c2", cfg.enh.c2);
        cfg.unit_rows = kv.get_int("unit_rows", cfg.unit_rows);
        cfg.unit_cols = kv.get_int("unit_cols", cfg.unit_cols);
        cfg.unit_overlap = kv.get_double("unit_overlap", cfg.unit_overlap);
        cfg.input = kv.get_string("input", cfg.input);
        cfg.output = kv.get_string("output", cfg.output);
        cfg.model = model_from_name(kv.get_string("model", model_name(cfg.model)));
        kv.reject_unknown_keys();
        cfg.validate();
        return cfg;
    }

    std::string serialize() const {
        std::ostringstream out;
        out << "sigma_e = " << dpc.sigma_e << "\n";
        out << "sigma_i = " << dpc.sigma_i << "\n";
        out << "kernel_radius = " << dpc.kernel_radius << "\n";
        out << "tau_alpha = " << dpc.tau_alpha << "\n";
        out << "tau_beta = " << dpc.tau_beta << "\n";
        out << "tau_lambda = " << dpc.tau_lambda << "\n";
        out << "inhibition_gain = " << dpc.inhibition_gain << "\n";
        out << "screen_threshold = " << omj.screen_threshold << "\n";
        out << "periphery_strength = " << omj.periphery_strength << "\n";
        out << "c2 = " << enh.c2 << "\n";
        out << "unit_rows = " << unit_rows << "\n";
        out << "unit_cols = " << unit_cols << "\n";
        out << "unit_overlap = " << unit_overlap << "\n";
        if (!input.empty()) out << "input = " << input << "\n";
        if (!output.empty()) out << "output = " << output << "\n";
        out << "model = " << model_name(model) << "\n";
        return out.str();
    }

    void save(const std::string& path) const {
        std::ofstream out(path, std::ios::binary);
        if (!out) raise(ErrorCode::IoError, "cannot write '" + path + "'");
        out << serialize();
    }
};

// ---------------------------------------------------------------------------
// StimulusSpec in the same grammar. Angles are given in degrees.
// ---------------------------------------------------------------------------

inline StimulusSpec stimulus_from_kv(KeyValueFile& kv) {
    StimulusSpec spec;
    spec.kind = stimulus_kind_from_name(kv.get_string("kind", stimulus_kind_name(spec.kind)));
    spec.width = kv.get_int("width", spec.width);
    spec.height = kv.get_int("height", spec.height);
    spec.frames = kv.get_int("frames", spec.frames);
    spec.center.x = kv.get_double("center_x", spec.center.x);
    spec.center.y = kv.get_double("center_y", spec.center.y);
    spec.rate = kv.get_double("rate", spec.rate);
    spec.initial_size = kv.get_double("initial_size", spec.initial_size);
    spec.foreground = kv.get_double("foreground", spec.foreground);
    spec.background = kv.get_double("background", spec.background);
    spec.bar_angle = kv.get_double("bar_angle_deg", spec.bar_angle * 180.0 / kPi) * kPi / 180.0;
    spec.bar_extent_deg = kv.get_double("bar_extent_deg", spec.bar_extent_deg);
    kv.reject_unknown_keys();
    spec.validate();
    return spec;
}

inline StimulusSpec load_stimulus_spec(const std::string& path) {
    KeyValueFile kv = KeyValueFile::parse(path);
    return stimulus_from_kv(kv);
}

} // namespace opplod::io
