/*
 * Copyright 2026 the mrsnn authors
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

#include "mrsnn/io.hpp"

#include <cstdio>
#include <fstream>

#include "mrsnn/errors.hpp"

namespace mrsnn {

namespace {

std::string scheme_to_string(Scheme s) {
    return s == Scheme::DifferentialPair ? "differential-pair"
                                         : "reference-device";
}

Scheme scheme_from_string(const std::string& s) {
    if (s == "differential-pair") return Scheme::DifferentialPair;
    if (s == "reference-device") return Scheme::ReferenceDevice;
    throw ConfigError("unknown scheme: " + s);
}

std::string surrogate_to_string(SurrogateKind k) {
    return k == SurrogateKind::Boxcar ? "boxcar" : "sigmoid-derivative";
}

SurrogateKind surrogate_from_string(const std::string& s) {
    if (s == "boxcar") return SurrogateKind::Boxcar;
    if (s == "sigmoid-derivative") return SurrogateKind::SigmoidDerivative;
    throw ConfigError("unknown surrogate kind: " + s);
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open for writing: " + path);
    return out;
}

}  // namespace

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void to_json(nlohmann::json& j, const DeviceParams& p) {
    j = nlohmann::json{{"g_max", p.g_max},     {"g_min", p.g_min},
                       {"alpha_p", p.alpha_p}, {"alpha_d", p.alpha_d},
                       {"beta_p", p.beta_p},   {"beta_d", p.beta_d},
                       {"v_p", p.v_p}};
}

void from_json(const nlohmann::json& j, DeviceParams& p) {
    j.at("g_max").get_to(p.g_max);
    j.at("g_min").get_to(p.g_min);
    j.at("alpha_p").get_to(p.alpha_p);
    j.at("alpha_d").get_to(p.alpha_d);
    j.at("beta_p").get_to(p.beta_p);
    j.at("beta_d").get_to(p.beta_d);
    p.v_p = j.value("v_p", 0.0);
}

void to_json(nlohmann::json& j, const VariationSpec& s) {
    j = nlohmann::json{{"alpha_tolerance", s.alpha_tolerance},
                       {"gmax_tolerance", s.gmax_tolerance},
                       {"gmin_tolerance", s.gmin_tolerance},
                       {"write_verify", s.write_verify},
                       {"verify_tolerance", s.verify_tolerance}};
}

void from_json(const nlohmann::json& j, VariationSpec& s) {
    VariationSpec d;
    s.alpha_tolerance = j.value("alpha_tolerance", d.alpha_tolerance);
    s.gmax_tolerance = j.value("gmax_tolerance", d.gmax_tolerance);
    s.gmin_tolerance = j.value("gmin_tolerance", d.gmin_tolerance);
    s.write_verify = j.value("write_verify", d.write_verify);
    s.verify_tolerance = j.value("verify_tolerance", d.verify_tolerance);
}

void to_json(nlohmann::json& j, const LIFParams& p) {
    j = nlohmann::json{{"mem_decay", p.mem_decay},
                       {"syn_decay", p.syn_decay},
                       {"v_th", p.v_th},
                       {"u_rest", p.u_rest},
                       {"dt", p.dt}};
}

void from_json(const nlohmann::json& j, LIFParams& p) {
    LIFParams d;
    p.mem_decay = j.value("mem_decay", d.mem_decay);
    p.syn_decay = j.value("syn_decay", d.syn_decay);
    p.v_th = j.value("v_th", d.v_th);
    p.u_rest = j.value("u_rest", d.u_rest);
    p.dt = j.value("dt", d.dt);
}

void to_json(nlohmann::json& j, const CrossbarGeometry& g) {
    j = nlohmann::json{{"rows", g.rows},
                       {"cols", g.cols},
                       {"r_wire", g.r_wire},
                       {"partition_rows", g.partition_rows},
                       {"partition_cols", g.partition_cols},
                       {"driver_capacitance", g.driver_capacitance},
                       {"driver_delay", g.driver_delay}};
}

void from_json(const nlohmann::json& j, CrossbarGeometry& g) {
    CrossbarGeometry d;
    g.rows = j.value("rows", d.rows);
    g.cols = j.value("cols", d.cols);
    g.r_wire = j.value("r_wire", d.r_wire);
    g.partition_rows = j.value("partition_rows", d.partition_rows);
    g.partition_cols = j.value("partition_cols", d.partition_cols);
    g.driver_capacitance = j.value("driver_capacitance", d.driver_capacitance);
    g.driver_delay = j.value("driver_delay", d.driver_delay);
}

void to_json(nlohmann::json& j, const RuleConfig& c) {
    j = nlohmann::json{{"rule", to_string(c.rule)},
                       {"learning_rate", c.learning_rate},
                       {"a_plus", c.a_plus},
                       {"a_minus", c.a_minus},
                       {"pre_decay", c.pre_decay},
                       {"post_decay", c.post_decay},
                       {"boxcar_width", c.boxcar_width},
                       {"boxcar_center", c.boxcar_center},
                       {"surrogate", surrogate_to_string(c.surrogate)},
                       {"surrogate_width", c.surrogate_width},
                       {"surrogate_center", c.surrogate_center},
                       {"outer_decay", c.outer_decay},
                       {"e0", c.e0},
                       {"feedback_seed", c.feedback_seed}};
}

void from_json(const nlohmann::json& j, RuleConfig& c) {
    RuleConfig d;
    c.rule = rule_kind_from_string(j.value("rule", to_string(d.rule)));
    c.learning_rate = j.value("learning_rate", d.learning_rate);
    c.a_plus = j.value("a_plus", d.a_plus);
    c.a_minus = j.value("a_minus", d.a_minus);
    c.pre_decay = j.value("pre_decay", d.pre_decay);
    c.post_decay = j.value("post_decay", d.post_decay);
    c.boxcar_width = j.value("boxcar_width", d.boxcar_width);
    c.boxcar_center = j.value("boxcar_center", d.boxcar_center);
    c.surrogate = surrogate_from_string(
        j.value("surrogate", surrogate_to_string(d.surrogate)));
    c.surrogate_width = j.value("surrogate_width", d.surrogate_width);
    c.surrogate_center = j.value("surrogate_center", d.surrogate_center);
    c.outer_decay = j.value("outer_decay", d.outer_decay);
    c.e0 = j.value("e0", d.e0);
    c.feedback_seed = j.value("feedback_seed", d.feedback_seed);
}

nlohmann::json crossbar_to_json(const CrossbarState& state) {
    std::vector<double> pos, neg;
    pos.reserve(static_cast<std::size_t>(state.rows()) * state.cols());
    neg.reserve(pos.capacity());
    for (int i = 0; i < state.rows(); ++i)
        for (int j = 0; j < state.cols(); ++j) {
            pos.push_back(state.g_pos(i, j));
            neg.push_back(state.g_neg(i, j));
        }
    return nlohmann::json{{"rows", state.rows()},
                          {"cols", state.cols()},
                          {"scheme", scheme_to_string(state.scheme)},
                          {"g_pos", pos},
                          {"g_neg", neg}};
}

CrossbarState crossbar_from_json(const nlohmann::json& j) {
    const int rows = j.at("rows").get<int>();
    const int cols = j.at("cols").get<int>();
    const auto pos = j.at("g_pos").get<std::vector<double>>();
    const auto neg = j.at("g_neg").get<std::vector<double>>();
    if (pos.size() != static_cast<std::size_t>(rows) * cols ||
        neg.size() != pos.size())
        throw DimensionMismatch("crossbar_from_json: array size mismatch");
    Eigen::MatrixXd g_pos(rows, cols), g_neg(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int jj = 0; jj < cols; ++jj) {
            g_pos(i, jj) = pos[static_cast<std::size_t>(i) * cols + jj];
            g_neg(i, jj) = neg[static_cast<std::size_t>(i) * cols + jj];
        }
    return make_crossbar(std::move(g_pos), std::move(g_neg),
                         scheme_from_string(j.at("scheme").get<std::string>()));
}

nlohmann::json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    nlohmann::json j;
    in >> j;
    return j;
}

void save_json_file(const std::string& path, const nlohmann::json& j) {
    auto out = open_out(path);
    out << j.dump(2) << "\n";
}

void write_metrics_csv(const std::string& path,
                       const std::vector<ResultRecord>& records) {
    auto out = open_out(path);
    out << "metric,step,value,seed\n";
    for (const auto& r : records)
        out << r.metric << ',' << r.step << ',' << format_double(r.value)
            << ',' << r.seed << '\n';
}

void write_effective_map_csv(const std::string& path,
                             const Eigen::MatrixXd& programmed,
                             const Eigen::MatrixXd& effective) {
    if (programmed.rows() != effective.rows() ||
        programmed.cols() != effective.cols())
        throw DimensionMismatch("write_effective_map_csv: shape mismatch");
    auto out = open_out(path);
    out << "row,col,programmed_nS,effective_nS,rel_error\n";
    for (Eigen::Index i = 0; i < programmed.rows(); ++i)
        for (Eigen::Index j = 0; j < programmed.cols(); ++j) {
            const double p = programmed(i, j);
            const double e = effective(i, j);
            const double rel = p != 0.0 ? std::abs(e - p) / std::abs(p) : 0.0;
            out << (i + 1) << ',' << (j + 1) << ',' << format_double(p) << ','
                << format_double(e) << ',' << format_double(rel) << '\n';
        }
}

void write_pulse_program_csv(const std::string& path,
                             const PulseProgram& program) {
    auto out = open_out(path);
    out << "row,col,device,pulses\n";
    for (Eigen::Index i = 0; i < program.pulses_pos.rows(); ++i)
        for (Eigen::Index j = 0; j < program.pulses_pos.cols(); ++j) {
            if (program.pulses_pos(i, j) != 0.0)
                out << (i + 1) << ',' << (j + 1) << ",+,"
                    << format_double(program.pulses_pos(i, j)) << '\n';
            if (program.pulses_neg(i, j) != 0.0)
                out << (i + 1) << ',' << (j + 1) << ",-,"
                    << format_double(program.pulses_neg(i, j)) << '\n';
        }
}

void write_spike_events_csv(const std::string& path,
                            const Eigen::MatrixXd& train) {
    auto out = open_out(path);
    out << "t_step,neuron_id\n";
    for (Eigen::Index t = 0; t < train.rows(); ++t)
        for (Eigen::Index i = 0; i < train.cols(); ++i)
            if (train(t, i) != 0.0) out << t << ',' << i << '\n';
}

}  // namespace mrsnn
